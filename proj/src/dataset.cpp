#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "sad/classifier.hpp"
#include "sad/rng.hpp"

namespace sad {

namespace {

constexpr int kSize = 32;

struct Shape {
    int cx, cy, half;
};

bool inside_square(const Shape& s, int x, int y) {
    return std::abs(x - s.cx) <= s.half && std::abs(y - s.cy) <= s.half;
}

bool inside_circle(const Shape& s, int x, int y) {
    int dx = x - s.cx, dy = y - s.cy;
    return dx * dx + dy * dy <= s.half * s.half;
}

// Upward-pointing triangle: apex at cy-half, base at cy+half.
bool inside_triangle(const Shape& s, int x, int y) {
    int dy = y - (s.cy - s.half);
    if (dy < 0 || dy > 2 * s.half) return false;
    return 2 * std::abs(x - s.cx) <= dy;
}

} // namespace

std::vector<LabeledImage> synthetic_shapes(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample count must be positive");
    Rng rng(seed);
    std::vector<LabeledImage> out;
    out.reserve(count);
    for (int n = 0; n < count; ++n) {
        LabeledImage sample;
        sample.label = int(rng.next_below(3));

        std::uint8_t bg[3], fg[3];
        for (int ch = 0; ch < 3; ++ch) bg[ch] = std::uint8_t(rng.next_below(64));
        for (int ch = 0; ch < 3; ++ch) fg[ch] = std::uint8_t(128 + rng.next_below(128));

        Shape s;
        s.half = int(6 + rng.next_below(5));
        s.cx = int(s.half + 1 + rng.next_below(std::uint64_t(kSize - 2 * s.half - 2)));
        s.cy = int(s.half + 1 + rng.next_below(std::uint64_t(kSize - 2 * s.half - 2)));

        RasterImage& img = sample.image;
        img.width = kSize;
        img.height = kSize;
        img.data.resize(std::size_t(kSize) * kSize * 3);
        SaliencyMap& mask = sample.mask;
        mask.width = kSize;
        mask.height = kSize;
        mask.data.assign(std::size_t(kSize) * kSize, 0);
        for (int y = 0; y < kSize; ++y)
            for (int x = 0; x < kSize; ++x) {
                bool in = sample.label == 0   ? inside_square(s, x, y)
                          : sample.label == 1 ? inside_circle(s, x, y)
                                              : inside_triangle(s, x, y);
                const std::uint8_t* color = in ? fg : bg;
                for (int ch = 0; ch < 3; ++ch)
                    img.data[(std::size_t(y) * kSize + x) * 3 + ch] = color[ch];
                if (in) mask.data[std::size_t(y) * kSize + x] = 255;
            }
        out.push_back(std::move(sample));
    }
    return out;
}

} // namespace sad
