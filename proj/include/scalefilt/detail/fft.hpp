#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace scalefilt::detail {

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

constexpr std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// In-place radix-2 transform. Forward kernel is e^{-2*pi*i*k*m/N}; the
// inverse kernel is conjugate and carries no 1/N factor (callers scale by
// the physical dt/df weights). Length must be a power of two.
void fft_inplace(std::span<std::complex<double>> data, bool inverse);

} // namespace scalefilt::detail
