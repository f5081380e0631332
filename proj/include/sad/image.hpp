#ifndef SAD_IMAGE_HPP
#define SAD_IMAGE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sad {

// H x W x 3 interleaved 8-bit color image, row major.
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // width * height * 3

    RasterImage() = default;
    RasterImage(int w, int h);

    std::uint8_t& at(int row, int col, int ch) {
        return data[static_cast<std::size_t>(row * width + col) * 3 + ch];
    }
    std::uint8_t at(int row, int col, int ch) const {
        return data[static_cast<std::size_t>(row * width + col) * 3 + ch];
    }

    bool operator==(const RasterImage&) const = default;
};

// H x W 8-bit grayscale saliency map: 0 = non-salient, 255 = fully salient.
struct SaliencyMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // width * height

    SaliencyMap() = default;
    SaliencyMap(int w, int h);

    std::uint8_t& at(int row, int col) {
        return data[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t at(int row, int col) const {
        return data[static_cast<std::size_t>(row) * width + col];
    }

    bool operator==(const SaliencyMap&) const = default;
};

// Eye-fixation locations; ground truth for NSS only.
struct FixationMap {
    int width = 0;
    int height = 0;
    std::vector<std::pair<int, int>> fixations; // (row, col)
};

// Per 8x8 window scalar saliency; rows = ceil(H/8), cols = ceil(W/8).
struct WindowGrid {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> window_saliency; // rows * cols

    std::uint8_t at(int i, int j) const {
        return window_saliency[static_cast<std::size_t>(i) * cols + j];
    }
};

// File I/O. Formats: PNG (8-bit gray/RGB), binary PPM (P6), binary PGM (P5).
// Gray inputs are replicated across the three channels.
RasterImage load_image(const std::string& path);

// Writes PNG or PPM depending on the file extension (.png / .ppm).
// load_image(save_image(x)) is bit exact.
void save_image(const RasterImage& img, const std::string& path);

// Maps must be grayscale files (PGM, gray PNG, or RGB with R==G==B).
SaliencyMap load_saliency_map(const std::string& path);
void save_saliency_map(const SaliencyMap& map, const std::string& path);

// Any nonzero pixel of a grayscale file is a fixation.
FixationMap load_fixation_map(const std::string& path);

// Rounds dimensions up to the next multiple of 8 by edge replication;
// original content in the top-left corner.
RasterImage pad_to_windows(const RasterImage& img);
SaliencyMap pad_to_windows(const SaliencyMap& map);

RasterImage crop_from_windows(const RasterImage& img, int orig_w, int orig_h);

// Mean of the 64 padded pixels per window, rounded half-up.
WindowGrid window_average_saliency(const SaliencyMap& map);

} // namespace sad

#endif
