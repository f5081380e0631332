#include "sad/image.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "png_io.hpp"

namespace sad {

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, const std::uint8_t* data, std::size_t len) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open file for writing: " + path);
    f.write(reinterpret_cast<const char*>(data), std::streamsize(len));
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    if (s.size() < suffix.size()) return false;
    for (std::size_t i = 0; i < suffix.size(); ++i) {
        char a = s[s.size() - suffix.size() + i];
        if (a >= 'A' && a <= 'Z') a = char(a - 'A' + 'a');
        if (a != suffix[i]) return false;
    }
    return true;
}

// Binary PPM (P6) / PGM (P5) with maxval 255. Whitespace and '#' comments
// allowed in the header.
struct PnmPixels {
    int width = 0, height = 0, channels = 0;
    std::vector<std::uint8_t> data;
};

int pnm_next_int(const std::vector<std::uint8_t>& file, std::size_t& pos) {
    while (pos < file.size()) {
        char c = char(file[pos]);
        if (c == '#') {
            while (pos < file.size() && file[pos] != '\n') ++pos;
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++pos;
        } else {
            break;
        }
    }
    if (pos >= file.size() || file[pos] < '0' || file[pos] > '9')
        throw std::runtime_error("pnm: malformed header");
    int v = 0;
    while (pos < file.size() && file[pos] >= '0' && file[pos] <= '9') {
        v = v * 10 + (file[pos] - '0');
        ++pos;
    }
    return v;
}

PnmPixels pnm_decode(const std::vector<std::uint8_t>& file) {
    if (file.size() < 2 || file[0] != 'P' || (file[1] != '5' && file[1] != '6'))
        throw std::runtime_error("pnm: bad magic");
    PnmPixels out;
    out.channels = file[1] == '6' ? 3 : 1;
    std::size_t pos = 2;
    out.width = pnm_next_int(file, pos);
    out.height = pnm_next_int(file, pos);
    int maxval = pnm_next_int(file, pos);
    if (out.width <= 0 || out.height <= 0)
        throw std::runtime_error("pnm: zero-dimension image");
    if (maxval != 255) throw std::runtime_error("pnm: only maxval 255 supported");
    ++pos; // single whitespace byte after maxval
    std::size_t need = std::size_t(out.width) * out.height * out.channels;
    if (pos + need > file.size()) throw std::runtime_error("pnm: truncated payload");
    out.data.assign(file.begin() + pos, file.begin() + pos + need);
    return out;
}

std::vector<std::uint8_t> pnm_encode(const std::uint8_t* pixels, int width, int height,
                                     int channels) {
    char header[64];
    int n = std::snprintf(header, sizeof(header), "P%c\n%d %d\n255\n",
                          channels == 3 ? '6' : '5', width, height);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), pixels, pixels + std::size_t(width) * height * channels);
    return out;
}

// Decodes any supported file into 1- or 3-channel pixels.
PnmPixels decode_any(const std::string& path) {
    std::vector<std::uint8_t> bytes = read_file(path);
    if (detail::is_png(bytes)) {
        detail::PngPixels png = detail::png_decode(bytes);
        return PnmPixels{png.width, png.height, png.channels, std::move(png.data)};
    }
    return pnm_decode(bytes);
}

} // namespace

RasterImage::RasterImage(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("image dimensions must be >= 1");
    data.assign(std::size_t(w) * h * 3, 0);
}

SaliencyMap::SaliencyMap(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw std::invalid_argument("map dimensions must be >= 1");
    data.assign(std::size_t(w) * h, 0);
}

RasterImage load_image(const std::string& path) {
    PnmPixels px = decode_any(path);
    RasterImage img(px.width, px.height);
    std::size_t n = std::size_t(px.width) * px.height;
    if (px.channels == 3) {
        img.data = std::move(px.data);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            img.data[i * 3 + 0] = px.data[i];
            img.data[i * 3 + 1] = px.data[i];
            img.data[i * 3 + 2] = px.data[i];
        }
    }
    return img;
}

void save_image(const RasterImage& img, const std::string& path) {
    std::vector<std::uint8_t> bytes;
    if (has_suffix(path, ".png"))
        bytes = detail::png_encode(img.data.data(), img.width, img.height, 3);
    else if (has_suffix(path, ".ppm"))
        bytes = pnm_encode(img.data.data(), img.width, img.height, 3);
    else
        throw std::runtime_error("save_image: unsupported extension (use .png or .ppm): " + path);
    write_file(path, bytes.data(), bytes.size());
}

SaliencyMap load_saliency_map(const std::string& path) {
    PnmPixels px = decode_any(path);
    SaliencyMap map(px.width, px.height);
    std::size_t n = std::size_t(px.width) * px.height;
    if (px.channels == 1) {
        map.data = std::move(px.data);
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t r = px.data[i * 3], g = px.data[i * 3 + 1], b = px.data[i * 3 + 2];
            if (r != g || g != b)
                throw std::runtime_error("saliency map is not grayscale: " + path);
            map.data[i] = r;
        }
    }
    return map;
}

void save_saliency_map(const SaliencyMap& map, const std::string& path) {
    std::vector<std::uint8_t> bytes;
    if (has_suffix(path, ".png"))
        bytes = detail::png_encode(map.data.data(), map.width, map.height, 1);
    else if (has_suffix(path, ".pgm"))
        bytes = pnm_encode(map.data.data(), map.width, map.height, 1);
    else
        throw std::runtime_error("save_saliency_map: unsupported extension (use .png or .pgm): " +
                                 path);
    write_file(path, bytes.data(), bytes.size());
}

FixationMap load_fixation_map(const std::string& path) {
    SaliencyMap map = load_saliency_map(path);
    FixationMap fix;
    fix.width = map.width;
    fix.height = map.height;
    for (int r = 0; r < map.height; ++r)
        for (int c = 0; c < map.width; ++c)
            if (map.at(r, c) != 0) fix.fixations.emplace_back(r, c);
    return fix;
}

namespace {
int round_up8(int v) { return (v + 7) / 8 * 8; }
} // namespace

RasterImage pad_to_windows(const RasterImage& img) {
    int pw = round_up8(img.width), ph = round_up8(img.height);
    if (pw == img.width && ph == img.height) return img;
    RasterImage out(pw, ph);
    for (int r = 0; r < ph; ++r) {
        int sr = r < img.height ? r : img.height - 1;
        for (int c = 0; c < pw; ++c) {
            int sc = c < img.width ? c : img.width - 1;
            for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = img.at(sr, sc, ch);
        }
    }
    return out;
}

SaliencyMap pad_to_windows(const SaliencyMap& map) {
    int pw = round_up8(map.width), ph = round_up8(map.height);
    if (pw == map.width && ph == map.height) return map;
    SaliencyMap out(pw, ph);
    for (int r = 0; r < ph; ++r) {
        int sr = r < map.height ? r : map.height - 1;
        for (int c = 0; c < pw; ++c) {
            int sc = c < map.width ? c : map.width - 1;
            out.at(r, c) = map.at(sr, sc);
        }
    }
    return out;
}

RasterImage crop_from_windows(const RasterImage& img, int orig_w, int orig_h) {
    if (orig_w < 1 || orig_h < 1 || orig_w > img.width || orig_h > img.height)
        throw std::invalid_argument("crop exceeds image bounds");
    if (orig_w == img.width && orig_h == img.height) return img;
    RasterImage out(orig_w, orig_h);
    for (int r = 0; r < orig_h; ++r)
        for (int c = 0; c < orig_w; ++c)
            for (int ch = 0; ch < 3; ++ch) out.at(r, c, ch) = img.at(r, c, ch);
    return out;
}

WindowGrid window_average_saliency(const SaliencyMap& map) {
    SaliencyMap padded = pad_to_windows(map);
    WindowGrid grid;
    grid.rows = padded.height / 8;
    grid.cols = padded.width / 8;
    grid.window_saliency.resize(std::size_t(grid.rows) * grid.cols);
    for (int i = 0; i < grid.rows; ++i) {
        for (int j = 0; j < grid.cols; ++j) {
            int sum = 0;
            for (int r = 0; r < 8; ++r)
                for (int c = 0; c < 8; ++c) sum += padded.at(i * 8 + r, j * 8 + c);
            int mean = (sum * 2 + 64) / 128; // round half-up of sum/64
            if (mean > 255) mean = 255;
            grid.window_saliency[std::size_t(i) * grid.cols + j] = std::uint8_t(mean);
        }
    }
    return grid;
}

} // namespace sad
