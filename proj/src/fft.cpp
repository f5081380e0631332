#include "sad/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sad {

int next_pow2(int v) {
    int p = 1;
    while (p < v) p <<= 1;
    return p;
}

void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft size must be a power of two");
    if (n == 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * pi / double(len) * (inverse ? 1.0 : -1.0);
        std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

void fft_2d(std::vector<std::complex<double>>& grid, int rows, int cols, bool inverse) {
    if (std::size_t(rows) * cols != grid.size())
        throw std::invalid_argument("fft_2d: grid size mismatch");
    std::vector<std::complex<double>> line;
    line.resize(std::size_t(cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) line[std::size_t(c)] = grid[std::size_t(r) * cols + c];
        fft(line, inverse);
        for (int c = 0; c < cols; ++c) grid[std::size_t(r) * cols + c] = line[std::size_t(c)];
    }
    line.resize(std::size_t(rows));
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) line[std::size_t(r)] = grid[std::size_t(r) * cols + c];
        fft(line, inverse);
        for (int r = 0; r < rows; ++r) grid[std::size_t(r) * cols + c] = line[std::size_t(r)];
    }
}

} // namespace sad
