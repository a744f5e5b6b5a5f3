#include "scalefilt/mellin.hpp"
#include <cstdio>

#include "scalefilt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scalefilt {

bool Strip::bounded() const {
    return std::isfinite(lo) && std::isfinite(hi);
}

std::optional<Strip> Strip::intersect(const Strip& other) const {
    Strip s{std::max(lo, other.lo), std::min(hi, other.hi)};
    if (s.lo >= s.hi) return std::nullopt;
    return s;
}

std::size_t MellinLogGrid::size() const {
    const double octaves = std::log2(sigma_max / sigma_min);
    return static_cast<std::size_t>(std::lround(octaves * points_per_octave)) + 1;
}

double MellinLogGrid::log_step() const {
    return std::numbers::ln2 / points_per_octave;
}

double MellinLogGrid::node(std::size_t i) const {
    return sigma_min * std::exp(static_cast<double>(i) * log_step());
}

MellinLogGrid MellinLogGrid::wide() {
    return MellinLogGrid{0x1p-40, 0x1p24, 32};
}

void MellinContour::validate() const {
    if (n_points < 16)
        throw validation_error("contour needs at least 16 points");
    if (n_points % 2 == 0)
        throw validation_error("contour n_points must be odd so u = 0 is a node");
    if (!(u_max > 0.0))
        throw validation_error("contour u_max must be positive");
}

namespace {

struct TrapezoidResult {
    cplx value;
    double tail_low;
    double tail_high;
    double abs_mass;
};

// Trapezoid in u = ln s of s^{-p} F(s) over precomputed samples, tracking
// the absolute mass contributed by the first and last octave.
TrapezoidResult mellin_trapezoid(std::span<const double> u, std::span<const cplx> integrand,
                                 double du) {
    const std::size_t n = u.size();
    cplx acc{0.0, 0.0};
    double mass = 0.0;
    double mass_low = 0.0;
    double mass_high = 0.0;
    const double u_lo_edge = u.front() + std::numbers::ln2;
    const double u_hi_edge = u.back() - std::numbers::ln2;
    for (std::size_t i = 0; i < n; ++i) {
        const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const cplx term = integrand[i] * (wt * du);
        acc += term;
        const double a = std::abs(term);
        mass += a;
        if (u[i] <= u_lo_edge) mass_low += a;
        if (u[i] >= u_hi_edge) mass_high += a;
    }
    TrapezoidResult r;
    r.value = acc;
    r.abs_mass = mass;
    r.tail_low = mass > 0.0 ? mass_low / mass : 0.0;
    r.tail_high = mass > 0.0 ? mass_high / mass : 0.0;
    return r;
}

MellinValue finish_forward(const TrapezoidResult& t, cplx p, double tail_tol) {
    const auto fail = [&](const char* which, double share, divergence_error::End end) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "Mellin integral not converged at the %s for Re p = %.6g; "
                      "last-octave share %.3e (tolerance %.1e); widen the grid or taper",
                      which, p.real(), share, tail_tol);
        throw divergence_error(buf, end);
    };
    if (t.abs_mass > 0.0) {
        if (t.tail_low > tail_tol) fail("low end (sigma -> 0)", t.tail_low, divergence_error::End::low);
        if (t.tail_high > tail_tol)
            fail("high end (sigma -> inf)", t.tail_high, divergence_error::End::high);
    }
    return MellinValue{t.value, t.tail_low, t.tail_high};
}

} // namespace

MellinValue mellin_forward(const std::function<cplx(double)>& F, const MellinLogGrid& grid,
                           cplx p, double tail_tol) {
    const std::size_t n = grid.size();
    const double du = grid.log_step();
    std::vector<double> u(n);
    std::vector<cplx> integrand(n);
    const double u0 = std::log(grid.sigma_min);
    for (std::size_t i = 0; i < n; ++i) {
        u[i] = u0 + static_cast<double>(i) * du;
        const double s = std::exp(u[i]);
        integrand[i] = std::exp(-p * u[i]) * F(s);
    }
    return finish_forward(mellin_trapezoid(u, integrand, du), p, tail_tol);
}

MellinValue mellin_forward_sampled(std::span<const double> s, std::span<const cplx> values,
                                   cplx p, double tail_tol) {
    if (s.size() != values.size() || s.size() < 2)
        throw validation_error("mellin_forward_sampled needs matching sample arrays");
    std::vector<double> u(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) u[i] = std::log(s[i]);
    const double du = (u.back() - u.front()) / static_cast<double>(s.size() - 1);
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (std::abs((u[i] - u[i - 1]) - du) > 1e-9 * du)
            throw validation_error("samples must be uniform in log sigma");
    }
    std::vector<cplx> integrand(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        integrand[i] = std::exp(-p * u[i]) * values[i];
    return finish_forward(mellin_trapezoid(u, integrand, du), p, tail_tol);
}

MellinInverseResult mellin_inverse(const MellinFunction& F, const MellinContour& contour,
                                   double sigma, double decay_tol) {
    contour.validate();
    if (!(sigma > 0.0))
        throw validation_error("mellin_inverse requires sigma > 0");
    if (!F.strip.contains(contour.c))
        throw contour_error("contour abscissa c = " + std::to_string(contour.c) +
                            " lies outside the declared strip (" + std::to_string(F.strip.lo) +
                            ", " + std::to_string(F.strip.hi) + ")");

    const int n = contour.n_points;
    const double du = 2.0 * contour.u_max / static_cast<double>(n - 1);
    std::vector<cplx> vals(static_cast<std::size_t>(n));
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = -contour.u_max + du * static_cast<double>(i);
        vals[static_cast<std::size_t>(i)] = F.evaluator(cplx{contour.c, u});
        max_abs = std::max(max_abs, std::abs(vals[static_cast<std::size_t>(i)]));
    }
    const double end_abs = std::max(std::abs(vals.front()), std::abs(vals.back()));
    if (max_abs > 0.0 && end_abs > decay_tol * max_abs)
        throw truncation_error("transform has not decayed at |Im p| = " +
                               std::to_string(contour.u_max) + " (end/max = " +
                               std::to_string(end_abs / max_abs) + "); enlarge u_max");

    const double ls = std::log(sigma);
    cplx acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const double u = -contour.u_max + du * static_cast<double>(i);
        const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        // s^{c+iu} = s^c e^{i u ln s}
        const cplx phase{std::cos(u * ls), std::sin(u * ls)};
        acc += vals[static_cast<std::size_t>(i)] * phase * wt;
    }
    acc *= du / (2.0 * std::numbers::pi) * std::pow(sigma, contour.c);

    MellinInverseResult r;
    r.value = acc;
    r.truncation_estimate = end_abs * contour.u_max / (2.0 * std::numbers::pi) *
                            std::pow(sigma, contour.c);
    return r;
}

ScalingConvolveResult scaling_convolve(const std::function<cplx(double)>& w_branch,
                                       const std::function<double(double)>& spectral_density,
                                       std::span<const double> f_grid,
                                       const MellinLogGrid& quad) {
    ScalingConvolveResult out;
    out.frequencies.assign(f_grid.begin(), f_grid.end());
    out.values.resize(f_grid.size());

    const std::size_t n = quad.size();
    const double du = quad.log_step();
    std::vector<double> s(n), psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = quad.node(i);
        psi[i] = spectral_density(s[i]);
    }

    const double edge = std::numbers::ln2;
    for (std::size_t k = 0; k < f_grid.size(); ++k) {
        const double f = f_grid[k];
        if (!(f > 0.0))
            throw validation_error("scaling_convolve requires f > 0 on the grid");
        cplx acc{0.0, 0.0};
        double mass = 0.0, mass_low = 0.0, mass_high = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            const cplx term = psi[i] * w_branch(f / s[i]) * (wt * du);
            acc += term;
            const double a = std::abs(term);
            mass += a;
            if (i * du <= edge) mass_low += a;
            if ((n - 1 - i) * du <= edge) mass_high += a;
        }
        out.values[k] = acc;
        if (mass > 0.0)
            out.max_tail_bound = std::max(out.max_tail_bound, std::max(mass_low, mass_high) / mass);
    }
    if (out.max_tail_bound > 1e-6)
        out.warning = "band truncation visible: worst end-octave share " +
                      std::to_string(out.max_tail_bound);
    return out;
}

ProductCheckReport mellin_product_check(const std::function<cplx(double)>& w_branch,
                                        double band_lo, double band_hi,
                                        const std::function<double(double)>& spectral_density,
                                        const MellinContour& contour,
                                        std::span<const double> u_samples,
                                        int points_per_octave) {
    if (!(band_lo > 0.0) || !(band_hi > band_lo))
        throw validation_error("product check needs 0 < band_lo < band_hi");

    // Shared log lattice: nodes at exp(k*du). The filter lives on
    // [band_lo, band_hi]; the density on a wide span; the convolution lands
    // on the index-sum lattice, which keeps the discrete product identity
    // exact apart from rounding.
    const double du = std::numbers::ln2 / points_per_octave;
    const auto index_of = [du](double x) { return std::llround(std::log(x) / du); };

    const long long kw0 = index_of(band_lo);
    const long long kw1 = index_of(band_hi);
    const MellinLogGrid wide = MellinLogGrid::wide();
    const long long kp0 = index_of(wide.sigma_min);
    const long long kp1 = index_of(wide.sigma_max);

    const std::size_t nw = static_cast<std::size_t>(kw1 - kw0 + 1);
    const std::size_t np = static_cast<std::size_t>(kp1 - kp0 + 1);
    std::vector<double> sw(nw), wq(nw), sp(np), pq(np);
    std::vector<cplx> wv(nw);
    std::vector<double> pv(np);
    for (std::size_t i = 0; i < nw; ++i) {
        sw[i] = std::exp(static_cast<double>(kw0 + static_cast<long long>(i)) * du);
        wv[i] = w_branch(sw[i]);
        wq[i] = (i == 0 || i == nw - 1) ? 0.5 : 1.0;
    }
    for (std::size_t i = 0; i < np; ++i) {
        sp[i] = std::exp(static_cast<double>(kp0 + static_cast<long long>(i)) * du);
        pv[i] = spectral_density(sp[i]);
        pq[i] = (i == 0 || i == np - 1) ? 0.5 : 1.0;
    }

    // discrete scaling convolution on the sum lattice
    const long long kf0 = kw0 + kp0;
    const long long kf1 = kw1 + kp1;
    const std::size_t nf = static_cast<std::size_t>(kf1 - kf0 + 1);
    std::vector<cplx> conv(nf, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < np; ++i) {
        if (pv[i] == 0.0) continue;
        const double a = pv[i] * pq[i] * du;
        for (std::size_t j = 0; j < nw; ++j) {
            conv[i + j] += a * (wv[j] * wq[j]);
        }
    }

    ProductCheckReport report;
    for (double u : u_samples) {
        const cplx p{contour.c, u};
        cplx lhs{0.0, 0.0};
        for (std::size_t k = 0; k < nf; ++k) {
            const double uu = static_cast<double>(kf0 + static_cast<long long>(k)) * du;
            lhs += std::exp(-p * uu) * conv[k];
        }
        lhs *= du;
        cplx wb{0.0, 0.0}, pb{0.0, 0.0};
        for (std::size_t j = 0; j < nw; ++j)
            wb += std::exp(-p * std::log(sw[j])) * wv[j] * wq[j];
        wb *= du;
        for (std::size_t i = 0; i < np; ++i)
            pb += std::exp(-p * std::log(sp[i])) * pv[i] * pq[i];
        pb *= du;
        const cplx rhs = wb * pb;
        const double denom = std::abs(rhs);
        const double dev = denom > 0.0 ? std::abs(lhs - rhs) / denom
                                       : (std::abs(lhs) > 0.0 ? 1.0 : 0.0);
        report.samples.push_back({p, lhs, rhs, dev});
        report.max_rel_deviation = std::max(report.max_rel_deviation, dev);
    }
    return report;
}

} // namespace scalefilt
