#ifndef SAD_CODEC_HPP
#define SAD_CODEC_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "sad/image.hpp"

namespace sad {

// Scaled luma/chroma quantization tables for one quality factor.
struct QuantTables {
    std::array<int, 64> luma;
    std::array<int, 64> chroma;
    int quality = 0;
};

// Ordered compression qualities, each in [1,100]. Duplicates allowed.
struct QualityList {
    std::vector<int> qualities;

    QualityList() = default;
    QualityList(std::initializer_list<int> qs);
    explicit QualityList(std::vector<int> qs);

    int size() const { return int(qualities.size()); }
    int operator[](int i) const { return qualities[std::size_t(i)]; }
};

// Per-window quality assignment; dimensions match the padded window grid.
struct QualityGrid {
    int rows = 0;
    int cols = 0;
    std::vector<int> qualities; // rows * cols

    static QualityGrid constant(int rows, int cols, int quality);
    int at(int i, int j) const { return qualities[std::size_t(i) * cols + j]; }
    int& at(int i, int j) { return qualities[std::size_t(i) * cols + j]; }
};

// Base tables scaled by S = (q < 50 ? 5000/q : 200 - 2q),
// entry = clamp(floor((S*base + 50)/100), 1, 255).
QuantTables build_quant_tables(int quality);

// One 8x8x3 block through the transform-coding round trip:
// RGB -> YCbCr (BT.601 full range), -128, DCT, quantize (half away from
// zero), dequantize, inverse DCT, +128, YCbCr -> RGB, clamp.
// `block` is 192 interleaved RGB samples, row major.
void compress_window(const std::uint8_t* block, std::uint8_t* out, const QuantTables& tables);

RasterImage compress_image_uniform(const RasterImage& img, int quality);

// Window (i,j) compressed at grid(i,j); windows are independent.
RasterImage compress_image_map(const RasterImage& img, const QualityGrid& grid);

namespace detail {
// Orthonormal 2-D DCT-II on an 8x8 block, and its inverse.
void dct_8x8(const double* in, double* out);
void idct_8x8(const double* in, double* out);
} // namespace detail

} // namespace sad

#endif
