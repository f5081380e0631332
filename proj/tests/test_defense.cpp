#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "sad/defense.hpp"
#include "sad/rng.hpp"

using namespace sad;

namespace {

RasterImage random_image(int w, int h, std::uint64_t seed) {
    RasterImage img(w, h);
    Rng rng(seed);
    for (auto& v : img.data) v = std::uint8_t(rng.next_below(256));
    return img;
}

SaliencyMap constant_map(int w, int h, std::uint8_t v) {
    SaliencyMap map(w, h);
    for (auto& p : map.data) p = v;
    return map;
}

int reduce_one(int v, int bits) {
    RasterImage img(1, 1);
    img.data = {std::uint8_t(v), std::uint8_t(v), std::uint8_t(v)};
    return bit_depth_reduce(img, bits).data[0];
}

} // namespace

TEST_CASE("bit depth reduction matches the two-step rounding") {
    CHECK(reduce_one(100, 3) == 109);
    CHECK(reduce_one(0, 3) == 0);
    CHECK(reduce_one(255, 3) == 255);
    for (int bits = 1; bits <= 8; ++bits) {
        CHECK(reduce_one(0, bits) == 0);
        CHECK(reduce_one(255, bits) == 255);
    }
}

TEST_CASE("eight bits is the identity") {
    RasterImage img = random_image(19, 7, 3);
    CHECK(bit_depth_reduce(img, 8) == img);
}

TEST_CASE("output uses at most 2^bits distinct values per channel") {
    for (int bits = 1; bits <= 7; ++bits) {
        std::set<int> seen;
        for (int v = 0; v < 256; ++v) seen.insert(reduce_one(v, bits));
        CHECK(int(seen.size()) <= (1 << bits));
        CHECK(seen.count(0) == 1);
        CHECK(seen.count(255) == 1);
    }
}

TEST_CASE("bit depth reduction is idempotent") {
    RasterImage img = random_image(24, 24, 5);
    for (int bits = 1; bits <= 8; ++bits) {
        RasterImage once = bit_depth_reduce(img, bits);
        CHECK(bit_depth_reduce(once, bits) == once);
    }
}

TEST_CASE("bit depth reduction never moves a value past a neighbor level") {
    for (int bits = 1; bits <= 8; ++bits) {
        int levels = (1 << bits) - 1;
        for (int v = 0; v < 256; ++v) {
            int out = reduce_one(v, bits);
            double step = 255.0 / levels;
            CHECK(std::abs(out - v) <= step / 2 + 1);
        }
    }
}

TEST_CASE("bits outside 1..8 are rejected") {
    RasterImage img = random_image(8, 8, 7);
    CHECK_THROWS(bit_depth_reduce(img, 0));
    CHECK_THROWS(bit_depth_reduce(img, 9));
}

TEST_CASE("shield with one quality equals uniform compression") {
    RasterImage img = random_image(40, 24, 9);
    CleanResult r = shield_clean(img, QualityList{65}, 123);
    CHECK(r.image == compress_image_uniform(img, 65));
    for (int q : r.quality_grid.qualities) CHECK(q == 65);
}

TEST_CASE("shield is deterministic in its seed") {
    RasterImage img = random_image(48, 32, 11);
    QualityList qs{20, 40, 60, 80};
    CleanResult a = shield_clean(img, qs, 7);
    CleanResult b = shield_clean(img, qs, 7);
    CHECK(a.image == b.image);
    CHECK(a.quality_grid.qualities == b.quality_grid.qualities);
    CleanResult c = shield_clean(img, qs, 8);
    CHECK(c.quality_grid.qualities != a.quality_grid.qualities);
}

TEST_CASE("shield draws each quality with near equal frequency") {
    // 100 x 100 windows = 10^4 draws.
    RasterImage img = random_image(800, 800, 13);
    QualityList qs{20, 40, 60, 80};
    CleanResult r = shield_clean(img, qs, 1);
    REQUIRE(r.quality_grid.rows == 100);
    REQUIRE(r.quality_grid.cols == 100);
    std::map<int, int> counts;
    for (int q : r.quality_grid.qualities) ++counts[q];
    CHECK(counts.size() == 4);
    for (auto& [q, n] : counts) {
        double f = double(n) / 10000.0;
        INFO("quality ", q, " frequency ", f);
        CHECK(f >= 0.225);
        CHECK(f <= 0.275);
    }
}

TEST_CASE("the quality index follows the closed form") {
    CHECK(sad_quality_index(0, 4) == 0);
    CHECK(sad_quality_index(255, 3) == 2);
    CHECK(sad_quality_index(127, 6) == 2);
    CHECK(sad_quality_index(128, 2) == 1);
    for (int sal = 0; sal < 256; ++sal)
        for (int len = 1; len <= 8; ++len) {
            int want = std::min(int(std::floor(double(sal) * len / 255.0)), len - 1);
            CHECK(sad_quality_index(sal, len) == want);
        }
}

TEST_CASE("the quality index is monotone in saliency") {
    for (int len = 1; len <= 8; ++len)
        for (int sal = 1; sal < 256; ++sal)
            CHECK(sad_quality_index(sal, len) >= sad_quality_index(sal - 1, len));
}

TEST_CASE("constant saliency maps collapse to uniform compression") {
    RasterImage img = random_image(32, 24, 15);
    QualityList qs{20, 50, 70, 70, 80, 90};
    SUBCASE("all zero") {
        CleanResult r = sad_clean(img, constant_map(32, 24, 0), qs);
        CHECK(r.image == compress_image_uniform(img, 20));
    }
    SUBCASE("all 255") {
        CleanResult r = sad_clean(img, constant_map(32, 24, 255), qs);
        CHECK(r.image == compress_image_uniform(img, 90));
    }
    SUBCASE("arbitrary constant") {
        int v = 141;
        CleanResult r = sad_clean(img, constant_map(32, 24, std::uint8_t(v)), qs);
        CHECK(r.image == compress_image_uniform(img, qs[sad_quality_index(v, qs.size())]));
    }
}

TEST_CASE("a bimodal map splits the image into two quality regions") {
    // Left half dark, right half bright; two qualities means a clean split.
    RasterImage img = random_image(32, 16, 17);
    SaliencyMap map(32, 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 32; ++c) map.at(r, c) = c < 16 ? 10 : 240;
    CleanResult res = sad_clean(img, map, QualityList{20, 90});
    REQUIRE(res.quality_grid.rows == 2);
    REQUIRE(res.quality_grid.cols == 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(res.quality_grid.at(i, j) == (j < 2 ? 20 : 90));
}

TEST_CASE("windows with higher saliency never get a lower quality index") {
    RasterImage img = random_image(64, 64, 19);
    SaliencyMap map(64, 64);
    Rng rng(20);
    for (auto& v : map.data) v = std::uint8_t(rng.next_below(256));
    QualityList qs{20, 50, 70, 70, 80, 90};
    CleanResult res = sad_clean(img, map, qs);
    WindowGrid grid = window_average_saliency(map);
    for (int i = 0; i < grid.rows; ++i)
        for (int j = 0; j < grid.cols; ++j)
            CHECK(res.quality_grid.at(i, j) == qs[sad_quality_index(grid.at(i, j), qs.size())]);
}

TEST_CASE("saliency map dimensions must match the image") {
    RasterImage img = random_image(16, 16, 21);
    CHECK_THROWS(sad_clean(img, constant_map(8, 16, 100), QualityList{50, 90}));
}

TEST_CASE("clean dispatches to each method") {
    RasterImage img = random_image(24, 16, 23);
    SaliencyMap map = constant_map(24, 16, 200);
    DefenseConfig cfg;

    cfg.method = DefenseMethod::bitdepth;
    cfg.bits = 3;
    CHECK(clean(img, cfg).image == bit_depth_reduce(img, 3));

    cfg.method = DefenseMethod::jpeg;
    cfg.quality = 75;
    CHECK(clean(img, cfg).image == compress_image_uniform(img, 75));

    cfg.method = DefenseMethod::shield;
    cfg.rng_seed = 99;
    CHECK(clean(img, cfg).image == shield_clean(img, cfg.shield_qualities, 99).image);

    cfg.method = DefenseMethod::sad;
    CHECK(clean(img, cfg, &map).image == sad_clean(img, map, cfg.sad_qualities).image);
}

TEST_CASE("sad without a saliency map is an error") {
    RasterImage img = random_image(8, 8, 25);
    DefenseConfig cfg;
    cfg.method = DefenseMethod::sad;
    CHECK_THROWS(clean(img, cfg));
}

TEST_CASE("defenses preserve image dimensions") {
    RasterImage img = random_image(37, 21, 27);
    SaliencyMap map = constant_map(37, 21, 90);
    DefenseConfig cfg;
    for (DefenseMethod m : {DefenseMethod::bitdepth, DefenseMethod::jpeg,
                            DefenseMethod::shield, DefenseMethod::sad}) {
        cfg.method = m;
        CleanResult r = clean(img, cfg, &map);
        CHECK(r.image.width == 37);
        CHECK(r.image.height == 21);
    }
}

TEST_CASE("method names match the config vocabulary") {
    CHECK(defense_method_name(DefenseMethod::bitdepth) == "bitdepth");
    CHECK(defense_method_name(DefenseMethod::jpeg) == "jpeg");
    CHECK(defense_method_name(DefenseMethod::shield) == "shield");
    CHECK(defense_method_name(DefenseMethod::sad) == "sad");
}
