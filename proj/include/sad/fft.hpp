#ifndef SAD_FFT_HPP
#define SAD_FFT_HPP

#include <complex>
#include <vector>

namespace sad {

// In-place iterative radix-2 FFT; a.size() must be a power of two.
// The inverse applies the 1/N scaling.
void fft(std::vector<std::complex<double>>& a, bool inverse);

// Row-column 2-D FFT on a rows x cols grid (both powers of two), row major.
void fft_2d(std::vector<std::complex<double>>& grid, int rows, int cols, bool inverse);

int next_pow2(int v);

} // namespace sad

#endif
