#include "scalefilt/detail/interp.hpp"

#include "scalefilt/errors.hpp"

#include <algorithm>

namespace scalefilt::detail {

CubicInterp::CubicInterp(std::span<const double> x, std::span<const std::complex<double>> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
    if (x_.size() != y_.size() || x_.size() < 2)
        throw validation_error("interpolation needs matching arrays with at least 2 points");
    for (std::size_t i = 1; i < x_.size(); ++i)
        if (!(x_[i] > x_[i - 1]))
            throw validation_error("interpolation abscissae must be strictly increasing");

    const std::size_t n = x_.size();
    slope_.resize(n);
    auto secant = [&](std::size_t i) { return (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]); };
    slope_[0] = secant(0);
    slope_[n - 1] = secant(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = x_[i] - x_[i - 1];
        const double hr = x_[i + 1] - x_[i];
        slope_[i] = (secant(i - 1) * hr + secant(i) * hl) / (hl + hr);
    }
}

std::complex<double> CubicInterp::operator()(double x) const {
    if (x_.empty() || x < x_.front() || x > x_.back()) return {0.0, 0.0};
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    if (i + 1 >= x_.size()) i = x_.size() - 2;

    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

} // namespace scalefilt::detail
