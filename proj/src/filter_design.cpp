#include "scalefilt/filter_design.hpp"

#include "scalefilt/detail/interp.hpp"
#include "scalefilt/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace scalefilt {

namespace {

constexpr double kPsiZeroFloor = 1e-12;   // |Psi~| below this share of its contour max counts as a zero
constexpr double kNumeratorFloor = 1e-12; // numerator nodes below this share of max are quadrature noise

cplx polynomial_symbol(std::span<const cplx> coeffs, double x) {
    // sum a_n (2 pi i x)^n by Horner in the complex variable
    const cplx z{0.0, 2.0 * std::numbers::pi * x};
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double moment_or_throw(const Wavelet& wavelet, double p, const std::string& what) {
    cplx m;
    try {
        m = wavelet.density_mellin(cplx{p, 0.0});
    } catch (const divergence_error& e) {
        throw admissibility_error(what + " requires the density moment at p = " + std::to_string(p) +
                                  ", which diverges: " + e.what());
    }
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
        throw admissibility_error(what + ": density moment at p = " + std::to_string(p) +
                                  " is not finite");
    if (std::abs(m) == 0.0)
        throw admissibility_error(what + ": density moment at p = " + std::to_string(p) + " vanishes");
    return m.real();
}

std::vector<double> interior_band_points(double lo, double hi, std::size_t count) {
    // interior two-thirds in log f
    const double span = std::log(hi / lo);
    const double a = std::log(lo) + span / 6.0;
    const double b = std::log(hi) - span / 6.0;
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    return pts;
}

double roundtrip_residual(const ScaleFilter& w, const FrequencyFilter& W, const Wavelet& wavelet,
                          double sigma_lo, double sigma_hi) {
    const double f_lo = sigma_lo * wavelet.peak_frequency;
    const double f_hi = sigma_hi * wavelet.peak_frequency;
    const auto pts = interior_band_points(f_lo, f_hi, 48);
    MellinLogGrid quad = MellinLogGrid::wide();
    if (w.sample_band) {
        // restrict the quadrature to where the sampled filter is defined
        quad.sigma_min = std::max(quad.sigma_min, pts.front() / w.sample_band->second);
        quad.sigma_max = std::min(quad.sigma_max, pts.back() / w.sample_band->first);
    }
    const auto conv = scaling_convolve([&w](double s) { return w.positive(s); },
                                       wavelet.spectral_density, pts, quad);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const cplx want = W.positive(pts[i]);
        num = std::max(num, std::abs(conv.values[i] - want));
        den = std::max(den, std::abs(want));
    }
    return den > 0.0 ? num / den : num;
}

// Quadrature of one convolution integral in the scaling-convolve sense is
// unnecessary for tagged forms; the inverse is written down directly.
ScaleFilter closed_form_inverse(const FrequencyFilter& W, const Wavelet& wavelet) {
    ScaleFilter w;
    w.dc_gain = W.dc_gain;
    if (std::holds_alternative<IdentityForm>(W.form)) {
        const double c = 1.0 / moment_or_throw(wavelet, 0.0, "identity filter");
        w.positive = [c](double) { return cplx{c, 0.0}; };
        w.negative = [c](double) { return cplx{c, 0.0}; };
        w.form = IdentityForm{};
        w.description = "1/Psi~(0)";
        return w;
    }
    if (const auto* pw = std::get_if<PowerForm>(&W.form)) {
        const double p = pw->exponent;
        const double m = moment_or_throw(wavelet, p, "power filter");
        w.positive = [p, m](double s) { return cplx{std::pow(s, p) / m, 0.0}; };
        w.negative = w.positive;
        w.form = PowerForm{p};
        w.description = "|sigma|^" + std::to_string(p) + " / Psi~(p)";
        return w;
    }
    if (const auto* poly = std::get_if<PolynomialForm>(&W.form)) {
        std::vector<cplx> scaled = poly->coefficients;
        for (std::size_t n = 0; n < scaled.size(); ++n) {
            if (scaled[n] == cplx{0.0, 0.0}) continue;
            scaled[n] /= moment_or_throw(wavelet, static_cast<double>(n),
                                         "polynomial term n = " + std::to_string(n));
        }
        w.positive = [scaled](double s) { return polynomial_symbol(scaled, s); };
        w.negative = [scaled](double s) { return polynomial_symbol(scaled, -s); };
        w.form = PolynomialForm{scaled};
        w.description = "polynomial with moment-normalized coefficients";
        return w;
    }
    if (std::holds_alternative<HilbertForm>(W.form)) {
        const double c = 1.0 / moment_or_throw(wavelet, 0.0, "Hilbert filter");
        w.positive = [c](double) { return cplx{0.0, -c}; };
        w.negative = [c](double) { return cplx{0.0, c}; };
        w.form = HilbertForm{};
        w.description = "-i sgn(sigma) / Psi~(0)";
        return w;
    }
    throw validation_error("no closed form for this filter");
}

struct BranchSamples {
    std::vector<double> s;   // log-spaced abscissae
    std::vector<cplx> v;
    bool empty() const { return s.empty(); }
};

BranchSamples resample_branch(const std::function<cplx(double)>& branch, double lo, double hi,
                              int per_octave) {
    BranchSamples out;
    if (!branch) return out;
    const double du = std::numbers::ln2 / per_octave;
    const auto n = static_cast<std::size_t>(std::ceil(std::log(hi / lo) / du)) + 1;
    out.s.resize(n);
    out.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.s[i] = lo * std::exp(static_cast<double>(i) * du);
        out.v[i] = branch(out.s[i]);
    }
    return out;
}

// Local log-log slopes of |v| over the first/last octave give the strip of
// Mellin convergence: c must lie below the low-end slope and above the
// high-end slope.
Strip infer_strip(const BranchSamples& b, const std::string& branch_name) {
    auto slope_over = [&](bool low_end) -> double {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        const double edge = low_end ? b.s.front() * 2.0 : b.s.back() / 2.0;
        for (std::size_t i = 0; i < b.s.size(); ++i) {
            if (low_end ? (b.s[i] > edge) : (b.s[i] < edge)) continue;
            const double a = std::abs(b.v[i]);
            if (a <= 0.0) continue;
            const double x = std::log(b.s[i]);
            const double y = std::log(a);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
            ++n;
        }
        if (n < 2) return low_end ? 1e3 : -1e3; // end holds (near-)zeros: decayed hard
        const double det = static_cast<double>(n) * sxx - sx * sx;
        if (det == 0.0) return low_end ? 1e3 : -1e3;
        return (static_cast<double>(n) * sxy - sx * sy) / det;
    };
    const double lo_slope = slope_over(true);
    const double hi_slope = slope_over(false);
    if (hi_slope >= lo_slope)
        throw admissibility_error("Mellin transform of the " + branch_name +
                                  " branch has no strip of convergence (end slopes " +
                                  std::to_string(lo_slope) + " / " + std::to_string(hi_slope) +
                                  "); the sampled symbol does not decay");
    return Strip{hi_slope, lo_slope};
}

double default_abscissa(const Strip& strip) {
    if (strip.bounded()) return 0.5 * (strip.lo + strip.hi);
    if (std::isfinite(strip.hi)) return std::min(0.0, strip.hi - 1.0);
    if (std::isfinite(strip.lo)) return std::max(0.0, strip.lo + 1.0);
    return 0.0;
}

} // namespace

void DifferentialOperatorSpec::validate() const {
    if (coefficients.empty())
        throw validation_error("operator needs at least one coefficient");
    if (coefficients.size() > 1 && coefficients.back() == cplx{0.0, 0.0})
        throw validation_error("leading coefficient a_N must be nonzero");
}

FrequencyFilter split_signs(std::span<const double> frequencies, std::span<const cplx> values,
                            std::vector<std::string>* notices) {
    if (frequencies.size() != values.size() || frequencies.size() < 4)
        throw validation_error("split_signs needs matching arrays with at least 4 samples");

    std::vector<std::pair<double, cplx>> pos, neg;
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        const double f = frequencies[i];
        if (f > 0.0)
            pos.emplace_back(f, values[i]);
        else if (f < 0.0)
            neg.emplace_back(-f, values[i]);
        else if (notices)
            notices->push_back("sample at f = 0 ignored (DC is excluded from the correspondence)");
    }
    auto sort_key = [](const auto& a, const auto& b) { return a.first < b.first; };
    std::sort(pos.begin(), pos.end(), sort_key);
    std::sort(neg.begin(), neg.end(), sort_key);
    if (pos.size() < 2 && neg.size() < 2)
        throw validation_error("split_signs: too few nonzero-frequency samples");

    FrequencyFilter out;
    out.form = SampledForm{};
    out.dc_gain = {0.0, 0.0};
    auto make_branch = [](const std::vector<std::pair<double, cplx>>& samples)
        -> std::function<cplx(double)> {
        if (samples.size() < 2) return [](double) { return cplx{0.0, 0.0}; };
        std::vector<double> x(samples.size());
        std::vector<cplx> y(samples.size());
        for (std::size_t i = 0; i < samples.size(); ++i) {
            x[i] = std::log(samples[i].first);
            y[i] = samples[i].second;
        }
        detail::CubicInterp interp(x, y);
        return [interp](double f) { return f > 0.0 ? interp(std::log(f)) : cplx{0.0, 0.0}; };
    };
    out.positive = make_branch(pos);
    out.negative = make_branch(neg);
    if (!pos.empty())
        out.sample_band = std::make_pair(pos.front().first, pos.back().first);
    out.description = "sampled symbol (" + std::to_string(pos.size()) + "+/" +
                      std::to_string(neg.size()) + "- samples)";
    return out;
}

DesignResult derive_scale_filter(const FrequencyFilter& W, const Wavelet& wavelet,
                                 std::optional<MellinContour> contour,
                                 std::span<const double> sigma_grid) {
    if (sigma_grid.size() < 2)
        throw validation_error("derive_scale_filter needs a sigma grid with at least 2 points");
    for (std::size_t i = 1; i < sigma_grid.size(); ++i)
        if (!(sigma_grid[i] > sigma_grid[i - 1]) || !(sigma_grid[0] > 0.0))
            throw validation_error("sigma grid must be positive and increasing");

    DesignResult result;

    if (!std::holds_alternative<SampledForm>(W.form)) {
        result.filter = closed_form_inverse(W, wavelet);
        result.contour_abscissa = contour ? contour->c : 0.0;
        result.roundtrip_residual =
            roundtrip_residual(result.filter, W, wavelet, sigma_grid.front(), sigma_grid.back());
        return result;
    }

    // --- numerical route: Mellin division along a vertical contour ---
    if (!W.sample_band && !W.positive)
        throw validation_error("sampled filter carries no samples");
    const double band_lo = W.sample_band ? W.sample_band->first : 1e-6;
    const double band_hi = W.sample_band ? W.sample_band->second : 1e6;

    const BranchSamples pos = resample_branch(W.positive, band_lo, band_hi, 64);
    const BranchSamples neg = resample_branch(W.negative, band_lo, band_hi, 64);

    const Strip strip_pos = infer_strip(pos, "positive");
    result.numerator_strip_positive = strip_pos;
    Strip strip = strip_pos;
    const bool has_neg = std::any_of(neg.v.begin(), neg.v.end(),
                                     [](const cplx& v) { return std::abs(v) != 0.0; });
    if (has_neg) {
        const Strip strip_neg = infer_strip(neg, "negative");
        result.numerator_strip_negative = strip_neg;
        if (auto both = strip.intersect(strip_neg))
            strip = *both;
        else
            throw admissibility_error("branch strips do not intersect");
    }
    const auto denom_strip = strip.intersect(wavelet.mellin_strip);
    if (!denom_strip)
        throw admissibility_error(
            "no contour is available: the symbol's strip (" + std::to_string(strip.lo) + ", " +
            std::to_string(strip.hi) + ") does not meet the density strip (Re p < " +
            std::to_string(wavelet.mellin_strip.hi) + ")");

    MellinContour ct = contour.value_or(MellinContour{default_abscissa(*denom_strip), 40.0, 4097});
    ct.validate();
    if (!denom_strip->contains(ct.c))
        throw contour_error("contour abscissa " + std::to_string(ct.c) +
                            " lies outside the admissible strip (" +
                            std::to_string(denom_strip->lo) + ", " +
                            std::to_string(denom_strip->hi) + ")");
    result.contour_abscissa = ct.c;

    const int n = ct.n_points;
    const double du = 2.0 * ct.u_max / static_cast<double>(n - 1);

    auto transform_on_contour = [&](const BranchSamples& b, const char* name) {
        std::vector<cplx> vals(static_cast<std::size_t>(n), cplx{0.0, 0.0});
        if (b.empty()) return vals;
        for (int i = 0; i < n; ++i) {
            const cplx p{ct.c, -ct.u_max + du * static_cast<double>(i)};
            try {
                vals[static_cast<std::size_t>(i)] = mellin_forward_sampled(b.s, b.v, p).value;
            } catch (const divergence_error& e) {
                throw admissibility_error(std::string("Mellin transform of the ") + name +
                                          " branch diverges on the contour: " + e.what());
            }
        }
        return vals;
    };
    std::vector<cplx> num_pos = transform_on_contour(pos, "positive");
    std::vector<cplx> num_neg = transform_on_contour(neg, "negative");

    // density transform along the contour; the no-zero condition is tested
    // where the numerator is numerically alive
    std::vector<cplx> denom(static_cast<std::size_t>(n));
    double num_max = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx p{ct.c, -ct.u_max + du * static_cast<double>(i)};
        denom[static_cast<std::size_t>(i)] = wavelet.density_mellin(p);
        num_max = std::max({num_max, std::abs(num_pos[static_cast<std::size_t>(i)]),
                            std::abs(num_neg[static_cast<std::size_t>(i)])});
    }
    const double num_floor = num_max * kNumeratorFloor;
    double denom_max = 0.0, denom_min_active = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double d = std::abs(denom[idx]);
        const bool active = std::abs(num_pos[idx]) >= num_floor || std::abs(num_neg[idx]) >= num_floor;
        if (active) {
            denom_max = std::max(denom_max, d);
            denom_min_active = std::min(denom_min_active, d);
        }
    }
    if (!(denom_min_active > kPsiZeroFloor * denom_max))
        throw admissibility_error(
            "the density's Mellin transform has a (numerical) zero along the contour; "
            "the operator is not representable in this wavelet's scale domain");

    auto invert = [&](const std::vector<cplx>& num) {
        std::vector<cplx> ratio(static_cast<std::size_t>(n), cplx{0.0, 0.0});
        for (int i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            if (std::abs(num[idx]) >= num_floor) ratio[idx] = num[idx] / denom[idx];
        }
        std::vector<cplx> w(sigma_grid.size(), cplx{0.0, 0.0});
        for (std::size_t k = 0; k < sigma_grid.size(); ++k) {
            const double ls = std::log(sigma_grid[k]);
            cplx acc{0.0, 0.0};
            for (int i = 0; i < n; ++i) {
                const auto idx = static_cast<std::size_t>(i);
                if (ratio[idx] == cplx{0.0, 0.0}) continue;
                const double u = -ct.u_max + du * static_cast<double>(i);
                const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
                acc += ratio[idx] * cplx{std::cos(u * ls), std::sin(u * ls)} * wt;
            }
            w[k] = acc * (du / (2.0 * std::numbers::pi)) * std::pow(sigma_grid[k], ct.c);
        }
        return w;
    };

    const std::vector<cplx> w_pos = invert(num_pos);
    const std::vector<cplx> w_neg = invert(num_neg);

    std::vector<double> log_sigma(sigma_grid.size());
    for (std::size_t k = 0; k < sigma_grid.size(); ++k) log_sigma[k] = std::log(sigma_grid[k]);
    detail::CubicInterp interp_pos(log_sigma, w_pos);
    detail::CubicInterp interp_neg(log_sigma, w_neg);

    ScaleFilter& w = result.filter;
    w.positive = [interp_pos](double s) { return s > 0.0 ? interp_pos(std::log(s)) : cplx{0.0, 0.0}; };
    w.negative = [interp_neg](double s) { return s > 0.0 ? interp_neg(std::log(s)) : cplx{0.0, 0.0}; };
    w.form = SampledForm{};
    w.dc_gain = {0.0, 0.0};
    w.sample_band = std::make_pair(sigma_grid.front(), sigma_grid.back());
    w.description = "numerically derived scale filter";
    result.roundtrip_residual =
        roundtrip_residual(w, W, wavelet, sigma_grid.front(), sigma_grid.back());
    return result;
}

FilterPair power_filter(double p, const Wavelet& wavelet) {
    const double m = moment_or_throw(wavelet, p, "power filter");

    FilterPair pair;
    pair.scale.positive = [p](double s) { return cplx{std::pow(s, p), 0.0}; };
    pair.scale.negative = pair.scale.positive;
    pair.scale.form = PowerForm{p};
    pair.scale.description = "|sigma|^" + std::to_string(p);

    pair.frequency.positive = [p, m](double f) { return cplx{m * std::pow(f, p), 0.0}; };
    pair.frequency.negative = pair.frequency.positive;
    pair.frequency.form = PowerForm{p};
    pair.frequency.description = "Psi~(p) |f|^" + std::to_string(p);

    const cplx dc = p == 0.0 ? cplx{m, 0.0} : cplx{0.0, 0.0};
    pair.scale.dc_gain = dc;
    pair.frequency.dc_gain = dc;
    return pair;
}

FilterPair differential_filter(const DifferentialOperatorSpec& spec, const Wavelet& wavelet) {
    spec.validate();
    std::vector<cplx> scaled = spec.coefficients;
    for (std::size_t n = 0; n < scaled.size(); ++n) {
        if (scaled[n] == cplx{0.0, 0.0}) continue;
        scaled[n] /= moment_or_throw(wavelet, static_cast<double>(n),
                                     "differential operator term n = " + std::to_string(n));
    }

    FilterPair pair;
    const std::vector<cplx> coeffs = spec.coefficients;
    pair.frequency.positive = [coeffs](double f) { return polynomial_symbol(coeffs, f); };
    pair.frequency.negative = [coeffs](double f) { return polynomial_symbol(coeffs, -f); };
    pair.frequency.form = PolynomialForm{coeffs};
    pair.frequency.dc_gain = coeffs[0];
    pair.frequency.description = "polynomial symbol, order " + std::to_string(spec.order());

    pair.scale.positive = [scaled](double s) { return polynomial_symbol(scaled, s); };
    pair.scale.negative = [scaled](double s) { return polynomial_symbol(scaled, -s); };
    pair.scale.form = PolynomialForm{scaled};
    pair.scale.dc_gain = coeffs[0];
    pair.scale.description = "moment-normalized polynomial, order " + std::to_string(spec.order());
    return pair;
}

FilterPair hilbert_filter(const Wavelet& wavelet) {
    const double c = 1.0 / moment_or_throw(wavelet, 0.0, "Hilbert filter");

    FilterPair pair;
    pair.scale.positive = [c](double) { return cplx{0.0, -c}; };
    pair.scale.negative = [c](double) { return cplx{0.0, c}; };
    pair.scale.form = HilbertForm{};
    pair.scale.dc_gain = {0.0, 0.0};
    pair.scale.description = "-i sgn(sigma) / Psi~(0)";

    pair.frequency.positive = [](double) { return cplx{0.0, -1.0}; };
    pair.frequency.negative = [](double) { return cplx{0.0, 1.0}; };
    pair.frequency.form = HilbertForm{};
    pair.frequency.dc_gain = {0.0, 0.0};
    pair.frequency.description = "-i sgn(f)";
    return pair;
}

FilterPair identity_filter(const Wavelet& wavelet) {
    const double c = 1.0 / moment_or_throw(wavelet, 0.0, "identity filter");

    FilterPair pair;
    pair.scale.positive = [c](double) { return cplx{c, 0.0}; };
    pair.scale.negative = [c](double) { return cplx{c, 0.0}; };
    pair.scale.form = IdentityForm{};
    pair.scale.dc_gain = {1.0, 0.0};
    pair.scale.description = "1 / Psi~(0)";

    pair.frequency.positive = [](double) { return cplx{1.0, 0.0}; };
    pair.frequency.negative = [](double) { return cplx{1.0, 0.0}; };
    pair.frequency.form = IdentityForm{};
    pair.frequency.dc_gain = {1.0, 0.0};
    pair.frequency.description = "1";
    return pair;
}

namespace {

AdmissibilityCheck moment_check(const Wavelet& wavelet, double p, const std::string& label) {
    AdmissibilityCheck c;
    c.clause = label + ": the density moment at p = " + std::to_string(p) +
               " must be finite and positive";
    try {
        const cplx m = wavelet.density_mellin(cplx{p, 0.0});
        if (std::isfinite(m.real()) && m.real() > 0.0 && std::abs(m.imag()) < 1e-10 * m.real()) {
            c.ok = true;
            std::ostringstream os;
            os.precision(17);
            os << "moment = " << m.real();
            c.detail = os.str();
        } else {
            c.detail = "moment is not finite and positive";
        }
    } catch (const numeric_error& e) {
        c.detail = e.what();
    }
    return c;
}

} // namespace

AdmissibilityReport check_admissibility(const AdmissibilityTarget& target, const Wavelet& wavelet,
                                        const MellinContour& contour) {
    AdmissibilityReport report;
    report.checks.push_back(
        moment_check(wavelet, 0.0, "wavelet admissibility (reconstruction exists)"));

    if (const auto* spec = std::get_if<DifferentialOperatorSpec>(&target)) {
        for (std::size_t n = 0; n < spec->coefficients.size(); ++n) {
            if (spec->coefficients[n] == cplx{0.0, 0.0}) continue;
            report.checks.push_back(moment_check(
                wavelet, static_cast<double>(n),
                "operator term n = " + std::to_string(n)));
        }
    } else {
        const auto& W = std::get<FrequencyFilter>(target);
        if (const auto* pw = std::get_if<PowerForm>(&W.form)) {
            report.checks.push_back(
                moment_check(wavelet, pw->exponent, "power filter"));
        } else if (const auto* poly = std::get_if<PolynomialForm>(&W.form)) {
            for (std::size_t n = 0; n < poly->coefficients.size(); ++n) {
                if (poly->coefficients[n] == cplx{0.0, 0.0}) continue;
                report.checks.push_back(moment_check(
                    wavelet, static_cast<double>(n),
                    "polynomial term n = " + std::to_string(n)));
            }
        } else if (std::holds_alternative<SampledForm>(W.form)) {
            AdmissibilityCheck strips;
            strips.clause = "the symbol's Mellin transforms must converge on a strip meeting the "
                            "density strip";
            AdmissibilityCheck zeros;
            zeros.clause = "the density transform must be analytic with no zeros along the contour";
            try {
                const double lo = W.sample_band ? W.sample_band->first : 1e-6;
                const double hi = W.sample_band ? W.sample_band->second : 1e6;
                const BranchSamples pos = resample_branch(W.positive, lo, hi, 32);
                const Strip s = infer_strip(pos, "positive");
                const auto meet = s.intersect(wavelet.mellin_strip);
                if (!meet) {
                    strips.detail = "no intersection with the density strip";
                } else {
                    strips.ok = true;
                    strips.detail = "strip (" + std::to_string(meet->lo) + ", " +
                                    std::to_string(meet->hi) + ")";
                    const double c = meet->contains(contour.c) ? contour.c : default_abscissa(*meet);
                    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
                    const int samples = 65;
                    for (int i = 0; i < samples; ++i) {
                        const double u =
                            -contour.u_max +
                            2.0 * contour.u_max * static_cast<double>(i) / (samples - 1);
                        const double d = std::abs(wavelet.density_mellin(cplx{c, u}));
                        dmin = std::min(dmin, d);
                        dmax = std::max(dmax, d);
                    }
                    // report the raw profile; the design path floors this on
                    // the numerically active span
                    zeros.ok = dmin > 0.0;
                    zeros.detail = "min/max |density transform| along Re p = " + std::to_string(c) +
                                   ": " + std::to_string(dmin) + " / " + std::to_string(dmax);
                }
            } catch (const numeric_error& e) {
                strips.detail = e.what();
            }
            report.checks.push_back(strips);
            report.checks.push_back(zeros);
        } else {
            // identity / hilbert need only the zeroth moment, checked above
        }
    }

    report.admissible = true;
    for (const auto& c : report.checks) {
        if (!c.ok) {
            report.admissible = false;
            report.failing_clause = c.clause + " -- " + c.detail;
            break;
        }
    }
    return report;
}

namespace {

cplx json_to_cplx(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw validation_error("coefficient entries must be numbers or [re, im] pairs");
}

} // namespace

FilterSpec parse_filter_spec(const std::string& json_text, const std::filesystem::path& base_dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("filter spec is not valid JSON: ") + e.what(), "parse");
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw validation_error("filter spec needs a string \"type\" field");

    const std::string type = j["type"].get<std::string>();
    FilterSpec spec;
    if (type == "identity") {
        spec.form = IdentityForm{};
    } else if (type == "power") {
        if (!j.contains("p") || !j["p"].is_number())
            throw validation_error("power spec needs a numeric \"p\" field");
        spec.form = PowerForm{j["p"].get<double>()};
    } else if (type == "polynomial") {
        if (!j.contains("coefficients") || !j["coefficients"].is_array() ||
            j["coefficients"].empty())
            throw validation_error("polynomial spec needs a nonempty \"coefficients\" array");
        PolynomialForm poly;
        for (const auto& c : j["coefficients"]) poly.coefficients.push_back(json_to_cplx(c));
        spec.form = std::move(poly);
    } else if (type == "hilbert") {
        spec.form = HilbertForm{};
    } else if (type == "sampled") {
        if (!j.contains("csv") || !j["csv"].is_string())
            throw validation_error("sampled spec needs a \"csv\" path field");
        std::filesystem::path p = j["csv"].get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        spec.form = SampledForm{};
        spec.csv_path = p;
    } else {
        throw validation_error("unknown filter type '" + type + "'");
    }
    return spec;
}

std::pair<std::vector<double>, std::vector<cplx>> load_filter_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open " + path.string(), "io");
    std::vector<double> f;
    std::vector<cplx> v;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        double a, b, c = 0.0;
        const int got = std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c);
        if (got < 2)
            throw parse_error("expected rows f,re[,im]", lineno);
        f.push_back(a);
        v.emplace_back(b, c);
    }
    return {std::move(f), std::move(v)};
}

FilterPair make_filter_pair(const FilterSpec& spec, const Wavelet& wavelet,
                            std::optional<MellinContour> contour,
                            std::span<const double> sigma_grid) {
    if (std::holds_alternative<IdentityForm>(spec.form)) return identity_filter(wavelet);
    if (const auto* p = std::get_if<PowerForm>(&spec.form)) return power_filter(p->exponent, wavelet);
    if (const auto* poly = std::get_if<PolynomialForm>(&spec.form))
        return differential_filter(DifferentialOperatorSpec{poly->coefficients}, wavelet);
    if (std::holds_alternative<HilbertForm>(spec.form)) return hilbert_filter(wavelet);

    auto [f, v] = load_filter_csv(spec.csv_path);
    FilterPair pair;
    pair.frequency = split_signs(f, v);
    std::vector<double> grid(sigma_grid.begin(), sigma_grid.end());
    if (grid.empty()) {
        const int per_oct = 16;
        const double lo = 0x1p-10, hi = 0x1p10;
        const double du = std::numbers::ln2 / per_oct;
        for (double u = std::log(lo); u <= std::log(hi) + 1e-12; u += du) grid.push_back(std::exp(u));
    }
    pair.scale = derive_scale_filter(pair.frequency, wavelet, contour, grid).filter;
    return pair;
}

} // namespace scalefilt
