#include "png_io.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include <zlib.h>

namespace sad::detail {

namespace {

const std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};

std::uint32_t read_u32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void write_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::uint8_t* payload, std::size_t len) {
    write_u32(out, std::uint32_t(len));
    std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    if (len > 0) out.insert(out.end(), payload, payload + len);
    uLong crc = crc32(0L, out.data() + start, uInt(4 + len));
    write_u32(out, std::uint32_t(crc));
}

int paeth(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

std::vector<std::uint8_t> zlib_inflate(const std::vector<std::uint8_t>& in,
                                       std::size_t expected) {
    std::vector<std::uint8_t> out(expected);
    uLongf dest_len = uLongf(expected);
    int rc = uncompress(out.data(), &dest_len, in.data(), uLong(in.size()));
    if (rc != Z_OK || dest_len != expected)
        throw std::runtime_error("png: corrupt compressed stream");
    return out;
}

} // namespace

bool is_png(const std::vector<std::uint8_t>& file) {
    return file.size() >= 8 && std::memcmp(file.data(), kSignature, 8) == 0;
}

PngPixels png_decode(const std::vector<std::uint8_t>& file) {
    if (!is_png(file)) throw std::runtime_error("png: bad signature");

    int width = 0, height = 0, color_type = -1;
    std::vector<std::uint8_t> idat;
    bool saw_ihdr = false, saw_iend = false;

    std::size_t pos = 8;
    while (pos + 8 <= file.size() && !saw_iend) {
        std::uint32_t len = read_u32(&file[pos]);
        if (pos + 12 + len > file.size()) throw std::runtime_error("png: truncated chunk");
        const char* type = reinterpret_cast<const char*>(&file[pos + 4]);
        const std::uint8_t* payload = &file[pos + 8];

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw std::runtime_error("png: bad IHDR");
            width = int(read_u32(payload));
            height = int(read_u32(payload + 4));
            int bit_depth = payload[8];
            color_type = payload[9];
            int interlace = payload[12];
            if (width <= 0 || height <= 0)
                throw std::runtime_error("png: zero-dimension image");
            if (bit_depth != 8)
                throw std::runtime_error("png: only 8-bit images supported");
            if (color_type != 0 && color_type != 2 && color_type != 4 && color_type != 6)
                throw std::runtime_error("png: unsupported color type");
            if (interlace != 0)
                throw std::runtime_error("png: interlaced images unsupported");
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            idat.insert(idat.end(), payload, payload + len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + len;
    }
    if (!saw_ihdr || idat.empty()) throw std::runtime_error("png: missing image data");

    static const int kChannels[7] = {1, 0, 3, 0, 2, 0, 4};
    int src_ch = kChannels[color_type];
    std::size_t stride = std::size_t(width) * src_ch;
    std::vector<std::uint8_t> raw = zlib_inflate(idat, (stride + 1) * height);

    // undo per-scanline filtering
    std::vector<std::uint8_t> pix(stride * height);
    for (int y = 0; y < height; ++y) {
        int filter = raw[(stride + 1) * y];
        const std::uint8_t* src = &raw[(stride + 1) * y + 1];
        std::uint8_t* cur = &pix[stride * y];
        const std::uint8_t* up = y > 0 ? &pix[stride * (y - 1)] : nullptr;
        for (std::size_t x = 0; x < stride; ++x) {
            int a = x >= std::size_t(src_ch) ? cur[x - src_ch] : 0;
            int b = up ? up[x] : 0;
            int c = (up && x >= std::size_t(src_ch)) ? up[x - src_ch] : 0;
            int v = src[x];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: throw std::runtime_error("png: bad filter type");
            }
            cur[x] = std::uint8_t(v & 0xff);
        }
    }

    PngPixels out;
    out.width = width;
    out.height = height;
    out.channels = src_ch >= 3 ? 3 : 1;
    out.data.resize(std::size_t(width) * height * out.channels);
    std::size_t n = std::size_t(width) * height;
    for (std::size_t i = 0; i < n; ++i)
        for (int ch = 0; ch < out.channels; ++ch)
            out.data[i * out.channels + ch] = pix[i * src_ch + ch];
    return out;
}

std::vector<std::uint8_t> png_encode(const std::uint8_t* pixels, int width, int height,
                                     int channels) {
    if (channels != 1 && channels != 3)
        throw std::runtime_error("png: encoder supports gray or rgb only");

    std::size_t stride = std::size_t(width) * channels;
    std::vector<std::uint8_t> raw((stride + 1) * height);
    for (int y = 0; y < height; ++y) {
        raw[(stride + 1) * y] = 0; // filter: none
        std::memcpy(&raw[(stride + 1) * y + 1], pixels + stride * y, stride);
    }

    uLongf bound = compressBound(uLong(raw.size()));
    std::vector<std::uint8_t> compressed(bound);
    if (compress2(compressed.data(), &bound, raw.data(), uLong(raw.size()), 6) != Z_OK)
        throw std::runtime_error("png: compression failed");
    compressed.resize(bound);

    std::vector<std::uint8_t> out(kSignature, kSignature + 8);
    std::uint8_t ihdr[13];
    ihdr[0] = std::uint8_t(std::uint32_t(width) >> 24);
    ihdr[1] = std::uint8_t(std::uint32_t(width) >> 16);
    ihdr[2] = std::uint8_t(std::uint32_t(width) >> 8);
    ihdr[3] = std::uint8_t(width);
    ihdr[4] = std::uint8_t(std::uint32_t(height) >> 24);
    ihdr[5] = std::uint8_t(std::uint32_t(height) >> 16);
    ihdr[6] = std::uint8_t(std::uint32_t(height) >> 8);
    ihdr[7] = std::uint8_t(height);
    ihdr[8] = 8;                                  // bit depth
    ihdr[9] = channels == 3 ? 2 : 0;              // color type
    ihdr[10] = ihdr[11] = ihdr[12] = 0;           // deflate, adaptive, no interlace
    append_chunk(out, "IHDR", ihdr, 13);
    append_chunk(out, "IDAT", compressed.data(), compressed.size());
    append_chunk(out, "IEND", nullptr, 0);
    return out;
}

} // namespace sad::detail
