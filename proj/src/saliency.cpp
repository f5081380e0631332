#include "sad/saliency.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "sad/fft.hpp"

namespace sad {

std::string resolve_template(const std::string& path_template, const std::string& image_id) {
    const std::string key = "{id}";
    std::size_t pos = path_template.find(key);
    if (pos == std::string::npos)
        throw std::runtime_error("path template has no {id} placeholder: " + path_template);
    std::string out = path_template;
    do {
        out.replace(pos, key.size(), image_id);
        pos = out.find(key, pos + image_id.size());
    } while (pos != std::string::npos);
    return out;
}

SaliencyMap get_saliency(const RasterImage& img, const SaliencySource& source,
                         const std::string& image_id) {
    if (source.kind == SaliencySource::Kind::spectral_residual) return spectral_residual(img);
    SaliencyMap map = load_saliency_map(resolve_template(source.path_template, image_id));
    if (map.width != img.width || map.height != img.height)
        throw std::runtime_error("saliency map dimensions do not match image for id " + image_id);
    return map;
}

namespace {

// 3x3 box filter, replicated borders
std::vector<double> box3(const std::vector<double>& in, int rows, int cols) {
    std::vector<double> out(in.size());
    auto clampr = [&](int r) { return r < 0 ? 0 : (r >= rows ? rows - 1 : r); };
    auto clampc = [&](int c) { return c < 0 ? 0 : (c >= cols ? cols - 1 : c); };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            double s = 0;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc)
                    s += in[std::size_t(clampr(r + dr)) * cols + clampc(c + dc)];
            out[std::size_t(r) * cols + c] = s / 9.0;
        }
    return out;
}

// separable Gaussian, replicated borders
std::vector<double> gauss_blur(const std::vector<double>& in, int rows, int cols, double sigma) {
    int radius = int(std::ceil(3.0 * sigma));
    std::vector<double> kernel(std::size_t(radius) * 2 + 1);
    double sum = 0;
    for (int k = -radius; k <= radius; ++k) {
        kernel[std::size_t(k + radius)] = std::exp(-0.5 * k * k / (sigma * sigma));
        sum += kernel[std::size_t(k + radius)];
    }
    for (auto& v : kernel) v /= sum;

    std::vector<double> tmp(in.size()), out(in.size());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            double s = 0;
            for (int k = -radius; k <= radius; ++k) {
                int cc = c + k;
                cc = cc < 0 ? 0 : (cc >= cols ? cols - 1 : cc);
                s += kernel[std::size_t(k + radius)] * in[std::size_t(r) * cols + cc];
            }
            tmp[std::size_t(r) * cols + c] = s;
        }
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            double s = 0;
            for (int k = -radius; k <= radius; ++k) {
                int rr = r + k;
                rr = rr < 0 ? 0 : (rr >= rows ? rows - 1 : rr);
                s += kernel[std::size_t(k + radius)] * tmp[std::size_t(rr) * cols + c];
            }
            out[std::size_t(r) * cols + c] = s;
        }
    return out;
}

} // namespace

SaliencyMap spectral_residual(const RasterImage& img) {
    const int rows = next_pow2(img.height), cols = next_pow2(img.width);
    std::vector<std::complex<double>> freq(std::size_t(rows) * cols, {0.0, 0.0});
    bool constant = true;
    double first = 0;
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            double luma = 0.299 * img.at(r, c, 0) + 0.587 * img.at(r, c, 1) +
                          0.114 * img.at(r, c, 2);
            if (r == 0 && c == 0) first = luma;
            constant = constant && luma == first;
            freq[std::size_t(r) * cols + c] = {luma, 0.0};
        }
    if (constant) return SaliencyMap(img.width, img.height);
    fft_2d(freq, rows, cols, false);

    const std::size_t n = freq.size();
    std::vector<double> log_amp(n), phase(n);
    for (std::size_t i = 0; i < n; ++i) {
        log_amp[i] = std::log(std::abs(freq[i]) + 1e-12);
        phase[i] = std::arg(freq[i]);
    }
    std::vector<double> smoothed = box3(log_amp, rows, cols);
    for (std::size_t i = 0; i < n; ++i) {
        double residual = log_amp[i] - smoothed[i];
        double amp = std::exp(residual);
        freq[i] = {amp * std::cos(phase[i]), amp * std::sin(phase[i])};
    }
    fft_2d(freq, rows, cols, true);

    std::vector<double> sal(n);
    for (std::size_t i = 0; i < n; ++i) sal[i] = std::norm(freq[i]);
    sal = gauss_blur(sal, rows, cols, 2.5);

    // crop, then stretch to [0,255]; flat responses count as empty
    SaliencyMap map(img.width, img.height);
    double lo = sal[0], hi = sal[0];
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            double v = sal[std::size_t(r) * cols + c];
            lo = v < lo ? v : lo;
            hi = v > hi ? v : hi;
        }
    double span = hi - lo;
    if (span <= 1e-12 * std::max(std::abs(hi), 1.0)) return map; // all zero
    for (int r = 0; r < img.height; ++r)
        for (int c = 0; c < img.width; ++c) {
            double v = (sal[std::size_t(r) * cols + c] - lo) / span * 255.0;
            map.at(r, c) = std::uint8_t(v + 0.5);
        }
    return map;
}

SaliencyMap binarize_map(const SaliencyMap& map, int threshold) {
    if (threshold < 0 || threshold > 255)
        throw std::invalid_argument("threshold out of range [0,255]");
    SaliencyMap out = map;
    for (auto& v : out.data) v = v > threshold ? 255 : 0;
    return out;
}

} // namespace sad
