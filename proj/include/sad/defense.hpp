#ifndef SAD_DEFENSE_HPP
#define SAD_DEFENSE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "sad/codec.hpp"
#include "sad/image.hpp"

namespace sad {

enum class DefenseMethod { bitdepth, jpeg, shield, sad };

struct DefenseConfig {
    DefenseMethod method = DefenseMethod::jpeg;
    int bits = 3;                          // bitdepth
    int quality = 80;                      // jpeg
    QualityList shield_qualities{20, 40, 60, 80};
    QualityList sad_qualities{50, 70, 90};
    std::uint64_t rng_seed = 0;            // shield
};

// Cleaned image plus the per-window qualities actually applied (empty for
// bitdepth/jpeg).
struct CleanResult {
    RasterImage image;
    QualityGrid quality_grid;
};

// Uniform quantization to 2^bits levels per channel; 0 and 255 preserved.
RasterImage bit_depth_reduce(const RasterImage& img, int bits);

// Every window compressed at a quality drawn uniformly from `qualities`,
// keyed by (seed, window row, window col).
CleanResult shield_clean(const RasterImage& img, const QualityList& qualities,
                         std::uint64_t seed);

// min(floor(sal * q_len / 255), q_len - 1)
int sad_quality_index(int sal, int q_len);

// Per-window quality = qualities[sad_quality_index(Sal_ij, |Q|)].
CleanResult sad_clean(const RasterImage& img, const SaliencyMap& sal_map,
                      const QualityList& qualities);

CleanResult clean(const RasterImage& img, const DefenseConfig& cfg,
                  const SaliencyMap* sal_map = nullptr);

std::string defense_method_name(DefenseMethod m);

} // namespace sad

#endif
