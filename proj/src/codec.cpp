#include "sad/codec.hpp"

#include <cmath>
#include <stdexcept>

namespace sad {

namespace {

// ITU-T T.81 Annex K example tables, natural (row-major) order.
constexpr int kBaseLuma[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,  //
    12, 12, 14, 19, 26,  58,  60,  55,  //
    14, 13, 16, 24, 40,  57,  69,  56,  //
    14, 17, 22, 29, 51,  87,  80,  62,  //
    18, 22, 37, 56, 68,  109, 103, 77,  //
    24, 35, 55, 64, 81,  104, 113, 92,  //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99};

constexpr int kBaseChroma[64] = {
    17, 18, 24, 47, 99, 99, 99, 99, //
    18, 21, 26, 66, 99, 99, 99, 99, //
    24, 26, 56, 99, 99, 99, 99, 99, //
    47, 66, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99, //
    99, 99, 99, 99, 99, 99, 99, 99};

struct DctBasis {
    double m[8][8]; // m[u][x] = c(u) cos((2x+1) u pi / 16)
    DctBasis() {
        const double pi = 3.14159265358979323846;
        for (int u = 0; u < 8; ++u) {
            double cu = u == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
            for (int x = 0; x < 8; ++x)
                m[u][x] = cu * std::cos((2 * x + 1) * u * pi / 16.0);
        }
    }
};

const DctBasis& basis() {
    static const DctBasis b;
    return b;
}

double round_half_away(double v) {
    return v >= 0.0 ? std::floor(v + 0.5) : std::ceil(v - 0.5);
}

std::uint8_t to_u8(double v) {
    if (v < 0.0) return 0;
    if (v > 255.0) return 255;
    return std::uint8_t(v + 0.5);
}

void rgb_to_ycbcr(const double r, const double g, const double b, double& y, double& cb,
                  double& cr) {
    y = 0.299 * r + 0.587 * g + 0.114 * b;
    cb = -0.168735892 * r - 0.331264108 * g + 0.5 * b + 128.0;
    cr = 0.5 * r - 0.418687589 * g - 0.081312411 * b + 128.0;
}

void ycbcr_to_rgb(const double y, const double cb, const double cr, double& r, double& g,
                  double& b) {
    r = y + 1.402 * (cr - 128.0);
    g = y - 0.344136286 * (cb - 128.0) - 0.714136286 * (cr - 128.0);
    b = y + 1.772 * (cb - 128.0);
}

} // namespace

QualityList::QualityList(std::initializer_list<int> qs) : QualityList(std::vector<int>(qs)) {}

QualityList::QualityList(std::vector<int> qs) : qualities(std::move(qs)) {
    if (qualities.empty()) throw std::invalid_argument("quality list must be non-empty");
    for (int q : qualities)
        if (q < 1 || q > 100) throw std::invalid_argument("quality out of range [1,100]");
}

QualityGrid QualityGrid::constant(int rows, int cols, int quality) {
    QualityGrid g;
    g.rows = rows;
    g.cols = cols;
    g.qualities.assign(std::size_t(rows) * cols, quality);
    return g;
}

QuantTables build_quant_tables(int quality) {
    if (quality < 1 || quality > 100)
        throw std::invalid_argument("quality out of range [1,100]");
    int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    QuantTables t;
    t.quality = quality;
    for (int i = 0; i < 64; ++i) {
        int l = (scale * kBaseLuma[i] + 50) / 100;
        int c = (scale * kBaseChroma[i] + 50) / 100;
        t.luma[i] = l < 1 ? 1 : (l > 255 ? 255 : l);
        t.chroma[i] = c < 1 ? 1 : (c > 255 ? 255 : c);
    }
    return t;
}

namespace detail {

void dct_8x8(const double* in, double* out) {
    const DctBasis& b = basis();
    double tmp[64];
    // rows
    for (int y = 0; y < 8; ++y)
        for (int u = 0; u < 8; ++u) {
            double s = 0;
            for (int x = 0; x < 8; ++x) s += b.m[u][x] * in[y * 8 + x];
            tmp[y * 8 + u] = s;
        }
    // columns
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            double s = 0;
            for (int y = 0; y < 8; ++y) s += b.m[v][y] * tmp[y * 8 + u];
            out[v * 8 + u] = s;
        }
}

void idct_8x8(const double* in, double* out) {
    const DctBasis& b = basis();
    double tmp[64];
    for (int u = 0; u < 8; ++u)
        for (int y = 0; y < 8; ++y) {
            double s = 0;
            for (int v = 0; v < 8; ++v) s += b.m[v][y] * in[v * 8 + u];
            tmp[y * 8 + u] = s;
        }
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) {
            double s = 0;
            for (int u = 0; u < 8; ++u) s += b.m[u][x] * tmp[y * 8 + u];
            out[y * 8 + x] = s;
        }
}

} // namespace detail

void compress_window(const std::uint8_t* block, std::uint8_t* out, const QuantTables& tables) {
    double ch[3][64]; // Y, Cb, Cr
    for (int i = 0; i < 64; ++i) {
        double y, cb, cr;
        rgb_to_ycbcr(block[i * 3], block[i * 3 + 1], block[i * 3 + 2], y, cb, cr);
        ch[0][i] = y - 128.0;
        ch[1][i] = cb - 128.0;
        ch[2][i] = cr - 128.0;
    }
    double coef[64], recon[64];
    for (int c = 0; c < 3; ++c) {
        const auto& q = c == 0 ? tables.luma : tables.chroma;
        detail::dct_8x8(ch[c], coef);
        for (int i = 0; i < 64; ++i) coef[i] = round_half_away(coef[i] / q[i]) * q[i];
        detail::idct_8x8(coef, recon);
        for (int i = 0; i < 64; ++i) ch[c][i] = recon[i] + 128.0;
    }
    for (int i = 0; i < 64; ++i) {
        double r, g, b;
        ycbcr_to_rgb(ch[0][i], ch[1][i], ch[2][i], r, g, b);
        out[i * 3] = to_u8(r);
        out[i * 3 + 1] = to_u8(g);
        out[i * 3 + 2] = to_u8(b);
    }
}

namespace {

RasterImage compress_padded(const RasterImage& img, const QualityGrid& grid) {
    RasterImage padded = pad_to_windows(img);
    int rows = padded.height / 8, cols = padded.width / 8;
    if (grid.rows != rows || grid.cols != cols)
        throw std::invalid_argument("quality grid does not match the padded window grid");

    // Tables for each distinct quality in the grid.
    std::vector<QuantTables> cache(101);
    std::vector<bool> have(101, false);

    RasterImage out = padded;
    std::uint8_t in_block[192], out_block[192];
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            int q = grid.at(i, j);
            if (q < 1 || q > 100) throw std::invalid_argument("quality out of range [1,100]");
            if (!have[q]) {
                cache[q] = build_quant_tables(q);
                have[q] = true;
            }
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    for (int ch = 0; ch < 3; ++ch)
                        in_block[(r * 8 + c) * 3 + ch] = padded.at(i * 8 + r, j * 8 + c, ch);
            compress_window(in_block, out_block, cache[std::size_t(q)]);
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c)
                    for (int ch = 0; ch < 3; ++ch)
                        out.at(i * 8 + r, j * 8 + c, ch) = out_block[(r * 8 + c) * 3 + ch];
        }
    }
    return crop_from_windows(out, img.width, img.height);
}

} // namespace

RasterImage compress_image_uniform(const RasterImage& img, int quality) {
    int rows = (img.height + 7) / 8, cols = (img.width + 7) / 8;
    return compress_padded(img, QualityGrid::constant(rows, cols, quality));
}

RasterImage compress_image_map(const RasterImage& img, const QualityGrid& grid) {
    return compress_padded(img, grid);
}

} // namespace sad
