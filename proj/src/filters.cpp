#include "scalefilt/filters.hpp"

#include <cmath>
#include <sstream>

namespace scalefilt {

std::string describe(const FilterForm& form) {
    struct Visitor {
        std::string operator()(const SampledForm&) const { return "sampled"; }
        std::string operator()(const IdentityForm&) const { return "identity"; }
        std::string operator()(const PowerForm& p) const {
            std::ostringstream os;
            os << "power(" << p.exponent << ")";
            return os.str();
        }
        std::string operator()(const PolynomialForm& p) const {
            std::ostringstream os;
            os << "polynomial(order " << (p.coefficients.empty() ? 0 : p.coefficients.size() - 1)
               << ")";
            return os.str();
        }
        std::string operator()(const HilbertForm&) const { return "hilbert"; }
    };
    return std::visit(Visitor{}, form);
}

namespace {

template <typename Filter>
bool real_symmetric_impl(const Filter& filter, std::span<const double> probe) {
    for (double x : probe) {
        const double ax = std::abs(x);
        if (ax == 0.0) continue;
        const cplx plus = filter.eval(ax);
        const cplx minus = filter.eval(-ax);
        const double ref = std::max({std::abs(plus), std::abs(minus), 1e-300});
        if (std::abs(minus - std::conj(plus)) > 1e-9 * ref) return false;
    }
    return true;
}

} // namespace

bool real_symmetric(const FrequencyFilter& filter, std::span<const double> probe) {
    return real_symmetric_impl(filter, probe);
}

bool real_symmetric(const ScaleFilter& filter, std::span<const double> probe) {
    return real_symmetric_impl(filter, probe);
}

} // namespace scalefilt
