#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace scalefilt::detail {

// Piecewise-cubic Hermite interpolation of complex samples on a strictly
// increasing abscissa grid. Slopes are three-point finite differences, so
// the interpolant is local and C^1. Evaluates to zero outside the grid.
class CubicInterp {
public:
    CubicInterp() = default;
    CubicInterp(std::span<const double> x, std::span<const std::complex<double>> y);

    std::complex<double> operator()(double x) const;

    double x_min() const { return x_.empty() ? 0.0 : x_.front(); }
    double x_max() const { return x_.empty() ? 0.0 : x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_;
    std::vector<std::complex<double>> y_;
    std::vector<std::complex<double>> slope_;
};

} // namespace scalefilt::detail
