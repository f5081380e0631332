#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sad/image.hpp"
#include "sad/rng.hpp"

namespace fs = std::filesystem;
using namespace sad;

namespace {

fs::path scratch_dir() {
    fs::path p = fs::temp_directory_path() / "sad_test_image";
    fs::create_directories(p);
    return p;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
    std::ofstream f(p, std::ios::binary);
    f.write(bytes.data(), std::streamsize(bytes.size()));
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

SaliencyMap random_map(int w, int h, std::uint64_t seed) {
    SaliencyMap m;
    m.width = w;
    m.height = h;
    m.data.resize(std::size_t(w) * h);
    Rng rng(seed);
    for (auto& v : m.data) v = std::uint8_t(rng.next_below(256));
    return m;
}

} // namespace

TEST_CASE("1x1 ppm decodes to a black pixel") {
    fs::path p = scratch_dir() / "one.ppm";
    write_bytes(p, std::string("P6\n1 1\n255\n") + std::string(3, '\0'));
    RasterImage img = load_image(p.string());
    CHECK(img.width == 1);
    CHECK(img.height == 1);
    CHECK(img.data == std::vector<std::uint8_t>{0, 0, 0});
}

TEST_CASE("pgm values are replicated across channels") {
    fs::path p = scratch_dir() / "ramp.pgm";
    std::string payload;
    for (int v : {0, 85, 170, 255}) payload.push_back(char(v));
    write_bytes(p, "P5\n2 2\n255\n" + payload);
    RasterImage img = load_image(p.string());
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    int expect[] = {0, 85, 170, 255};
    for (int i = 0; i < 4; ++i)
        for (int ch = 0; ch < 3; ++ch) CHECK(img.data[std::size_t(i) * 3 + ch] == expect[i]);
}

TEST_CASE("pnm headers tolerate comments and whitespace") {
    fs::path p = scratch_dir() / "comment.ppm";
    write_bytes(p, std::string("P6 # a comment\n# another\n 1\t1 # w h\n255\n") + "\x10\x20\x30");
    RasterImage img = load_image(p.string());
    CHECK(img.width == 1);
    CHECK(img.at(0, 0, 0) == 0x10);
    CHECK(img.at(0, 0, 2) == 0x30);
}

TEST_CASE("save/load round trip is bit exact for png and ppm") {
    RasterImage img = random_image(16, 16, 1);
    for (const char* name : {"rt.png", "rt.ppm"}) {
        fs::path p = scratch_dir() / name;
        save_image(img, p.string());
        CHECK(load_image(p.string()) == img);
    }
}

TEST_CASE("ppm payload is exactly w*h*3 bytes after the header") {
    RasterImage img = random_image(3, 5, 2);
    fs::path p = scratch_dir() / "payload.ppm";
    save_image(img, p.string());
    std::ifstream f(p, std::ios::binary);
    std::string contents((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    std::string header = "P6\n3 5\n255\n";
    REQUIRE(contents.size() == header.size() + 3u * 5u * 3u);
    CHECK(contents.compare(0, header.size(), header) == 0);
}

TEST_CASE("saving to an unwritable path reports an error") {
    RasterImage img = random_image(2, 2, 3);
    CHECK_THROWS(save_image(img, "/nonexistent_dir_sad/x.png"));
}

TEST_CASE("unsupported or corrupt files are rejected") {
    fs::path p = scratch_dir() / "garbage.png";
    write_bytes(p, "this is not an image at all, not even close");
    CHECK_THROWS(load_image(p.string()));
    CHECK_THROWS(load_image((scratch_dir() / "missing.png").string()));
}

TEST_CASE("png decoding matches an independent encoder") {
    std::string data = SAD_TEST_DATA_DIR;
    CHECK(load_image(data + "/rgb_grad.png") == load_image(data + "/rgb_grad.ppm"));
    CHECK(load_image(data + "/gray_ramp.png") == load_image(data + "/gray_ramp.pgm"));
    // alpha channels are dropped on load
    CHECK(load_image(data + "/rgba.png") == load_image(data + "/rgba_rgb.ppm"));
    CHECK(load_image(data + "/graya.png") == load_image(data + "/graya_gray.pgm"));
}

TEST_CASE("saliency maps require gray content") {
    SaliencyMap m = random_map(6, 4, 4);
    fs::path p = scratch_dir() / "map.png";
    save_saliency_map(m, p.string());
    CHECK(load_saliency_map(p.string()) == m);

    fs::path q = scratch_dir() / "map.pgm";
    save_saliency_map(m, q.string());
    CHECK(load_saliency_map(q.string()) == m);

    RasterImage color = random_image(6, 4, 5);
    color.at(0, 0, 0) = 0;
    color.at(0, 0, 1) = 255;
    fs::path c = scratch_dir() / "color.ppm";
    save_image(color, c.string());
    CHECK_THROWS(load_saliency_map(c.string()));
}

TEST_CASE("fixations are the nonzero pixels") {
    SaliencyMap m;
    m.width = 3;
    m.height = 2;
    m.data = {0, 9, 0, 0, 0, 255};
    fs::path p = scratch_dir() / "fix.pgm";
    save_saliency_map(m, p.string());
    FixationMap fix = load_fixation_map(p.string());
    CHECK(fix.width == 3);
    CHECK(fix.height == 2);
    REQUIRE(fix.fixations.size() == 2);
    CHECK(fix.fixations[0] == std::pair<int, int>{0, 1});
    CHECK(fix.fixations[1] == std::pair<int, int>{1, 2});
}

TEST_CASE("aligned images pass through pad_to_windows untouched") {
    RasterImage img = random_image(16, 8, 6);
    CHECK(pad_to_windows(img) == img);
}

TEST_CASE("padding replicates the last row and column") {
    RasterImage img = random_image(9, 9, 7);
    RasterImage padded = pad_to_windows(img);
    REQUIRE(padded.width == 16);
    REQUIRE(padded.height == 16);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            for (int ch = 0; ch < 3; ++ch) {
                int sr = r < 9 ? r : 8, sc = c < 9 ? c : 8;
                CHECK(padded.at(r, c, ch) == img.at(sr, sc, ch));
            }
}

TEST_CASE("crop returns the top-left block") {
    RasterImage img = random_image(16, 16, 8);
    CHECK(crop_from_windows(img, 16, 16) == img);
    RasterImage sub = crop_from_windows(img, 9, 9);
    REQUIRE(sub.width == 9);
    REQUIRE(sub.height == 9);
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c)
            for (int ch = 0; ch < 3; ++ch) CHECK(sub.at(r, c, ch) == img.at(r, c, ch));
    CHECK_THROWS(crop_from_windows(img, 17, 4));
}

TEST_CASE("crop undoes pad for every size up to 64") {
    for (int w = 1; w <= 64; ++w)
        for (int h = 1; h <= 64; h += (h < 8 ? 1 : 7)) {
            RasterImage img = random_image(w, h, std::uint64_t(w) * 1000 + h);
            RasterImage padded = pad_to_windows(img);
            CHECK(padded.width == (w + 7) / 8 * 8);
            CHECK(padded.height == (h + 7) / 8 * 8);
            if (!(crop_from_windows(padded, w, h) == img)) {
                FAIL("pad/crop mismatch at ", w, "x", h);
            }
        }
}

TEST_CASE("window means use half-up rounding") {
    SaliencyMap m;
    m.width = 8;
    m.height = 8;
    m.data.assign(64, 200);
    WindowGrid g = window_average_saliency(m);
    REQUIRE(g.rows == 1);
    REQUIRE(g.cols == 1);
    CHECK(g.at(0, 0) == 200);

    for (int i = 0; i < 64; ++i) m.data[std::size_t(i)] = i < 32 ? 0 : 255;
    CHECK(window_average_saliency(m).at(0, 0) == 128); // mean 127.5 rounds up
}

TEST_CASE("windows are averaged independently") {
    SaliencyMap m;
    m.width = 16;
    m.height = 8;
    m.data.assign(16 * 8, 0);
    for (int r = 0; r < 8; ++r)
        for (int c = 8; c < 16; ++c) m.at(r, c) = 255;
    WindowGrid g = window_average_saliency(m);
    REQUIRE(g.rows == 1);
    REQUIRE(g.cols == 2);
    CHECK(g.at(0, 0) == 0);
    CHECK(g.at(0, 1) == 255);
}

TEST_CASE("window means stay between the window extremes") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        SaliencyMap m = random_map(21, 13, 100 + seed);
        SaliencyMap padded = pad_to_windows(m);
        WindowGrid g = window_average_saliency(m);
        REQUIRE(g.rows == 2);
        REQUIRE(g.cols == 3);
        for (int i = 0; i < g.rows; ++i)
            for (int j = 0; j < g.cols; ++j) {
                int lo = 255, hi = 0;
                for (int r = 0; r < 8; ++r)
                    for (int c = 0; c < 8; ++c) {
                        int v = padded.at(i * 8 + r, j * 8 + c);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                CHECK(g.at(i, j) >= lo);
                CHECK(g.at(i, j) <= hi);
            }
    }
}

TEST_CASE("constant maps average to the constant") {
    SaliencyMap m;
    m.width = 19;
    m.height = 10;
    m.data.assign(190, 77);
    WindowGrid g = window_average_saliency(m);
    for (std::uint8_t v : g.window_saliency) CHECK(v == 77);
}
