#pragma once

#include "scalefilt/mellin.hpp"
#include "scalefilt/signal.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace scalefilt {

/// Symbolic tags for filters with known closed forms. Polynomial filters
/// are evaluated from their coefficients at application time rather than
/// sampled, which avoids cancellation in high-order moments.
struct SampledForm {};
struct IdentityForm {};
struct PowerForm {
    double exponent = 0.0;
    double coefficient = 1.0; ///< W(f) = coefficient * |f|^exponent
};
struct PolynomialForm {
    std::vector<cplx> coefficients; ///< a_0..a_N of sum a_n (2*pi*i*x)^n
};
struct HilbertForm {};
using FilterForm = std::variant<SampledForm, IdentityForm, PowerForm, PolynomialForm, HilbertForm>;

std::string describe(const FilterForm& form);

namespace detail_filters {

template <typename Tag>
struct SignSplit {
    /// Branch evaluators over the positive half-line: value at +x and the
    /// value at -x read through the mirrored branch.
    std::function<cplx(double)> positive; ///< x > 0 -> value at +x
    std::function<cplx(double)> negative; ///< x > 0 -> value at -x

    FilterForm form = SampledForm{};
    cplx dc_gain{0.0, 0.0}; ///< gain applied to the excluded x = 0 bin
    std::optional<Strip> strip_positive;
    std::optional<Strip> strip_negative;
    std::optional<std::pair<double, double>> sample_band; ///< support of sampled branches
    std::string description;

    /// Two-sided evaluation; x = 0 returns dc_gain.
    cplx eval(double x) const {
        if (x > 0.0) return positive ? positive(x) : cplx{0.0, 0.0};
        if (x < 0.0) return negative ? negative(-x) : cplx{0.0, 0.0};
        return dc_gain;
    }
};

} // namespace detail_filters

/// Scale-domain multiplier w(sigma), sign-split into branches over
/// sigma > 0 with w(-s) read from the negative branch at +s.
struct ScaleFilter : detail_filters::SignSplit<struct ScaleTag> {};

/// Frequency-domain multiplier (system function) W(f), sign-split the same
/// way: W(f) = W+(f) for f > 0 and W(-f) = W-(f) for f > 0.
struct FrequencyFilter : detail_filters::SignSplit<struct FrequencyTag> {};

/// Matched pair representing one convolution operator in both domains.
struct FilterPair {
    ScaleFilter scale;
    FrequencyFilter frequency;
};

/// True when the two-sided filter maps real signals to real signals on the
/// sampled probe points: W(-x) == conj(W(x)).
bool real_symmetric(const FrequencyFilter& filter, std::span<const double> probe);
bool real_symmetric(const ScaleFilter& filter, std::span<const double> probe);

} // namespace scalefilt
