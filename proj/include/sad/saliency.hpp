#ifndef SAD_SALIENCY_HPP
#define SAD_SALIENCY_HPP

#include <string>

#include "sad/image.hpp"

namespace sad {

// Where saliency maps come from: precomputed files (stand-ins for deep
// model outputs) or the built-in spectral-residual estimator.
struct SaliencySource {
    enum class Kind { file, spectral_residual };
    Kind kind = Kind::spectral_residual;
    std::string path_template; // literal with one {id} placeholder, file kind only
};

// Resolves `{id}` in the template.
std::string resolve_template(const std::string& path_template, const std::string& image_id);

// File kind: bit-exact pass-through of the stored map; dimensions must
// equal the image's. Spectral kind: runs the estimator on `img`.
SaliencyMap get_saliency(const RasterImage& img, const SaliencySource& source,
                         const std::string& image_id);

// Classical spectral-residual saliency: BT.601 luma, FFT on a zero-padded
// power-of-two grid, residual of the log amplitude against its 3x3 box
// filter, phase-preserving reconstruction, Gaussian blur (sigma 2.5),
// linear stretch to [0,255]. All-equal responses map to 0.
SaliencyMap spectral_residual(const RasterImage& img);

// pixels > threshold -> 255, else 0
SaliencyMap binarize_map(const SaliencyMap& map, int threshold);

} // namespace sad

#endif
