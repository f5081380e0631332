#ifndef SAD_PNG_IO_HPP
#define SAD_PNG_IO_HPP

#include <cstdint>
#include <vector>

namespace sad::detail {

struct PngPixels {
    int width = 0;
    int height = 0;
    int channels = 0; // 1 (gray) or 3 (rgb); alpha is dropped on decode
    std::vector<std::uint8_t> data;
};

bool is_png(const std::vector<std::uint8_t>& file);

// 8-bit, non-interlaced PNG only. Color types 0/2/4/6; palette rejected.
PngPixels png_decode(const std::vector<std::uint8_t>& file);

// channels: 1 -> color type 0, 3 -> color type 2
std::vector<std::uint8_t> png_encode(const std::uint8_t* pixels, int width, int height,
                                     int channels);

} // namespace sad::detail

#endif
