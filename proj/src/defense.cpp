#include "sad/defense.hpp"

#include <cmath>
#include <stdexcept>

#include "sad/rng.hpp"

namespace sad {

RasterImage bit_depth_reduce(const RasterImage& img, int bits) {
    if (bits < 1 || bits > 8) throw std::invalid_argument("bits out of range [1,8]");
    int levels = (1 << bits) - 1;
    std::uint8_t lut[256];
    for (int v = 0; v < 256; ++v) {
        int q = int(std::floor(v / 255.0 * levels + 0.5));
        lut[v] = std::uint8_t(std::floor(q / double(levels) * 255.0 + 0.5));
    }
    RasterImage out = img;
    for (auto& s : out.data) s = lut[s];
    return out;
}

CleanResult shield_clean(const RasterImage& img, const QualityList& qualities,
                         std::uint64_t seed) {
    int rows = (img.height + 7) / 8, cols = (img.width + 7) / 8;
    QualityGrid grid;
    grid.rows = rows;
    grid.cols = cols;
    grid.qualities.resize(std::size_t(rows) * cols);
    auto n = std::uint64_t(qualities.size());
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::uint64_t h = hash_combine(seed, std::uint64_t(i), std::uint64_t(j));
            auto pick = std::uint64_t(double(h >> 11) * 0x1.0p-53 * double(n));
            grid.at(i, j) = qualities[int(pick)];
        }
    return CleanResult{compress_image_map(img, grid), std::move(grid)};
}

int sad_quality_index(int sal, int q_len) {
    int idx = sal * q_len / 255;
    return idx < q_len ? idx : q_len - 1;
}

CleanResult sad_clean(const RasterImage& img, const SaliencyMap& sal_map,
                      const QualityList& qualities) {
    if (sal_map.width != img.width || sal_map.height != img.height)
        throw std::invalid_argument("saliency map dimensions do not match the image");
    WindowGrid sal = window_average_saliency(sal_map);
    QualityGrid grid;
    grid.rows = sal.rows;
    grid.cols = sal.cols;
    grid.qualities.resize(std::size_t(sal.rows) * sal.cols);
    for (int i = 0; i < sal.rows; ++i)
        for (int j = 0; j < sal.cols; ++j)
            grid.at(i, j) = qualities[sad_quality_index(sal.at(i, j), qualities.size())];
    return CleanResult{compress_image_map(img, grid), std::move(grid)};
}

CleanResult clean(const RasterImage& img, const DefenseConfig& cfg, const SaliencyMap* sal_map) {
    switch (cfg.method) {
        case DefenseMethod::bitdepth:
            return CleanResult{bit_depth_reduce(img, cfg.bits), {}};
        case DefenseMethod::jpeg:
            return CleanResult{compress_image_uniform(img, cfg.quality), {}};
        case DefenseMethod::shield:
            return shield_clean(img, cfg.shield_qualities, cfg.rng_seed);
        case DefenseMethod::sad:
            if (!sal_map)
                throw std::invalid_argument("sad defense requires a saliency map");
            return sad_clean(img, *sal_map, cfg.sad_qualities);
    }
    throw std::invalid_argument("unknown defense method");
}

std::string defense_method_name(DefenseMethod m) {
    switch (m) {
        case DefenseMethod::bitdepth: return "bitdepth";
        case DefenseMethod::jpeg: return "jpeg";
        case DefenseMethod::shield: return "shield";
        case DefenseMethod::sad: return "sad";
    }
    return "?";
}

} // namespace sad
