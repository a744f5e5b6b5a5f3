#include "scalefilt/detail/special.hpp"

#include <cmath>
#include <numbers>

namespace scalefilt::detail {

namespace {

// Lanczos approximation, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

std::complex<double> gamma_positive(std::complex<double> z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

} // namespace

std::complex<double> gamma(std::complex<double> z) {
    if (z.real() < 0.5) {
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        const std::complex<double> s = std::sin(std::numbers::pi * z);
        return std::numbers::pi / (s * gamma_positive(1.0 - z));
    }
    return gamma_positive(z);
}

} // namespace scalefilt::detail
