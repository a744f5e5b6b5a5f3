#pragma once

#include <complex>

namespace scalefilt::detail {

// Gamma function for complex argument (Lanczos, g=7, 9 terms; reflection
// formula for Re z < 0.5). Relative accuracy ~1e-13 away from poles.
std::complex<double> gamma(std::complex<double> z);

} // namespace scalefilt::detail
