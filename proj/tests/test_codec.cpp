#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "sad/codec.hpp"
#include "sad/rng.hpp"

using namespace sad;

namespace {

// ITU-T T.81 Annex K example tables, duplicated here as the oracle.
constexpr std::array<int, 64> kLuma = {
    16, 11, 10, 16, 24,  40,  51,  61,  12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,  14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,  24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101, 72, 92, 95, 98, 112, 100, 103, 99};
constexpr std::array<int, 64> kChroma = {
    17, 18, 24, 47, 99, 99, 99, 99, 18, 21, 26, 66, 99, 99, 99, 99,
    24, 26, 56, 99, 99, 99, 99, 99, 47, 66, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99,
    99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99, 99};

int scale_entry(int base, int quality) {
    int s = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    int v = (s * base + 50) / 100;
    return v < 1 ? 1 : v > 255 ? 255 : v;
}

std::vector<std::uint8_t> random_block(std::uint64_t seed) {
    std::vector<std::uint8_t> block(192);
    Rng rng(seed);
    for (auto& v : block) v = std::uint8_t(rng.next_below(256));
    return block;
}

double block_mse(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = double(a[i]) - double(b[i]);
        s += d * d;
    }
    return s / double(a.size());
}

RasterImage random_image(int w, int h, std::uint64_t seed) {
    RasterImage img;
    img.width = w;
    img.height = h;
    img.data.resize(std::size_t(w) * h * 3);
    Rng rng(seed);
    for (auto& v : img.data) v = std::uint8_t(rng.next_below(256));
    return img;
}

} // namespace

TEST_CASE("quality 50 reproduces the base tables") {
    QuantTables t = build_quant_tables(50);
    for (int i = 0; i < 64; ++i) {
        CHECK(t.luma[std::size_t(i)] == kLuma[std::size_t(i)]);
        CHECK(t.chroma[std::size_t(i)] == kChroma[std::size_t(i)]);
    }
}

TEST_CASE("quality 100 clamps every entry to 1") {
    QuantTables t = build_quant_tables(100);
    for (int i = 0; i < 64; ++i) {
        CHECK(t.luma[std::size_t(i)] == 1);
        CHECK(t.chroma[std::size_t(i)] == 1);
    }
}

TEST_CASE("quality 80 scales the luma DC entry to 6") {
    CHECK(build_quant_tables(80).luma[0] == 6);
}

TEST_CASE("tables match the scaling formula for every quality") {
    for (int q = 1; q <= 100; ++q) {
        QuantTables t = build_quant_tables(q);
        CHECK(t.quality == q);
        for (int i = 0; i < 64; ++i) {
            CHECK(t.luma[std::size_t(i)] == scale_entry(kLuma[std::size_t(i)], q));
            CHECK(t.chroma[std::size_t(i)] == scale_entry(kChroma[std::size_t(i)], q));
        }
    }
    CHECK_THROWS(build_quant_tables(0));
    CHECK_THROWS(build_quant_tables(101));
}

TEST_CASE("table entries stay in range and shrink as quality grows") {
    QuantTables prev = build_quant_tables(1);
    for (int q = 2; q <= 100; ++q) {
        QuantTables t = build_quant_tables(q);
        for (int i = 0; i < 64; ++i) {
            CHECK(t.luma[std::size_t(i)] >= 1);
            CHECK(t.luma[std::size_t(i)] <= 255);
            CHECK(t.luma[std::size_t(i)] <= prev.luma[std::size_t(i)]);
            CHECK(t.chroma[std::size_t(i)] <= prev.chroma[std::size_t(i)]);
        }
        prev = t;
    }
}

TEST_CASE("dct and idct invert each other within 1e-9") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        double in[64], mid[64], out[64];
        for (double& v : in) v = rng.next_range(-128, 128);
        detail::dct_8x8(in, mid);
        detail::idct_8x8(mid, out);
        for (int i = 0; i < 64; ++i) CHECK(std::abs(in[i] - out[i]) <= 1e-9);
    }
}

TEST_CASE("constant gray blocks survive any quality untouched") {
    std::vector<std::uint8_t> block(192, 128), out(192);
    for (int q : {1, 10, 50, 80, 100}) {
        compress_window(block.data(), out.data(), build_quant_tables(q));
        CHECK(out == block);
    }
}

TEST_CASE("quality 100 is near lossless") {
    QuantTables t = build_quant_tables(100);
    std::vector<std::uint8_t> out(192);
    int worst = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        std::vector<std::uint8_t> block = random_block(seed);
        compress_window(block.data(), out.data(), t);
        for (int i = 0; i < 192; ++i)
            worst = std::max(worst, std::abs(int(out[std::size_t(i)]) - int(block[std::size_t(i)])));
    }
    CHECK(worst <= 3);
}

TEST_CASE("lower quality means more distortion in aggregate") {
    QuantTables q10 = build_quant_tables(10), q90 = build_quant_tables(90);
    std::vector<std::uint8_t> out(192);
    double mse10 = 0, mse90 = 0;
    for (std::uint64_t seed = 100; seed < 220; ++seed) {
        std::vector<std::uint8_t> block = random_block(seed);
        compress_window(block.data(), out.data(), q10);
        mse10 += block_mse(block, out);
        compress_window(block.data(), out.data(), q90);
        mse90 += block_mse(block, out);
    }
    CHECK(mse10 >= mse90);
}

TEST_CASE("uniform compression equals a constant quality grid") {
    RasterImage img = random_image(24, 17, 21);
    RasterImage uniform = compress_image_uniform(img, 35);
    QualityGrid grid = QualityGrid::constant(3, 3, 35);
    CHECK(uniform == compress_image_map(img, grid));
}

TEST_CASE("constant-color images barely move at any quality") {
    int worst = 0;
    for (int v = 0; v < 256; ++v) {
        RasterImage img;
        img.width = 8;
        img.height = 8;
        img.data.assign(192, std::uint8_t(v));
        RasterImage out = compress_image_uniform(img, 50);
        for (std::size_t i = 0; i < img.data.size(); ++i)
            worst = std::max(worst, std::abs(int(out.data[i]) - int(img.data[i])));
    }
    CHECK(worst <= 2);
}

TEST_CASE("pad and crop keep odd dimensions intact") {
    RasterImage img = random_image(9, 9, 31);
    RasterImage out = compress_image_uniform(img, 80);
    CHECK(out.width == 9);
    CHECK(out.height == 9);
}

TEST_CASE("a high-quality window stays clean next to a crushed one") {
    RasterImage img = random_image(16, 8, 41);
    QualityGrid grid;
    grid.rows = 1;
    grid.cols = 2;
    grid.qualities = {100, 1};
    RasterImage out = compress_image_map(img, grid);
    int left_worst = 0;
    double left_mse = 0, right_mse = 0;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 16; ++c)
            for (int ch = 0; ch < 3; ++ch) {
                double d = double(out.at(r, c, ch)) - double(img.at(r, c, ch));
                if (c < 8) {
                    left_worst = std::max(left_worst, int(std::abs(d)));
                    left_mse += d * d;
                } else {
                    right_mse += d * d;
                }
            }
    CHECK(left_worst <= 3);
    CHECK(right_mse > left_mse);
}

TEST_CASE("changing one grid cell touches only that window") {
    RasterImage img = random_image(32, 24, 51);
    QualityGrid base = QualityGrid::constant(3, 4, 60);
    RasterImage ref = compress_image_map(img, base);
    Rng rng(52);
    for (int trial = 0; trial < 30; ++trial) {
        int i = int(rng.next_below(3)), j = int(rng.next_below(4));
        QualityGrid g = base;
        g.at(i, j) = 5;
        RasterImage out = compress_image_map(img, g);
        for (int r = 0; r < 24; ++r)
            for (int c = 0; c < 32; ++c) {
                bool inside = r / 8 == i && c / 8 == j;
                if (!inside)
                    for (int ch = 0; ch < 3; ++ch) {
                        if (out.at(r, c, ch) != ref.at(r, c, ch))
                            FAIL("pixel outside window ", i, ",", j, " changed at ", r, ",", c);
                    }
            }
    }
}

TEST_CASE("grid dimension mismatches are rejected") {
    RasterImage img = random_image(16, 16, 61);
    QualityGrid grid = QualityGrid::constant(1, 1, 50);
    CHECK_THROWS(compress_image_map(img, grid));
}

TEST_CASE("quality lists validate their entries") {
    CHECK_THROWS(QualityList(std::vector<int>{}));
    CHECK_THROWS(QualityList({50, 0}));
    CHECK_THROWS(QualityList({50, 101}));
    QualityList q{20, 50, 70, 70, 80, 90};
    CHECK(q.size() == 6);
    CHECK(q[3] == 70);
}

TEST_CASE("compression is deterministic") {
    RasterImage img = random_image(40, 40, 71);
    CHECK(compress_image_uniform(img, 33) == compress_image_uniform(img, 33));
}
