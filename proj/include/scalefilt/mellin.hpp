#pragma once

#include "scalefilt/signal.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scalefilt {

/// Convention used throughout: the forward transform of F(s), s > 0, is
///     F~(p) = integral_0^inf ds/s s^{-p} F(s),
/// and the inverse runs along the vertical contour Re p = c:
///     F(s)  = (1/2*pi*i) integral_C dp s^{+p} F~(p).
/// Both are evaluated by uniform trapezoid rules in u = ln s (respectively
/// along the contour), which converge spectrally for smooth decaying
/// integrands.

/// Vertical analyticity strip lo < Re p < hi.
struct Strip {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double c) const { return c > lo && c < hi; }
    bool bounded() const;
    std::optional<Strip> intersect(const Strip& other) const;
};

/// Log-spaced quadrature grid for the forward transform. The default span
/// [2^-20, 2^20] at 16 points per octave suits fast-decaying integrands;
/// widen it (e.g. with `wide()`) when the integrand decays slowly toward
/// one end.
struct MellinLogGrid {
    double sigma_min = 0x1p-20;
    double sigma_max = 0x1p20;
    int points_per_octave = 16;

    std::size_t size() const;
    double log_step() const;
    double node(std::size_t i) const;

    /// Wide grid used internally for wavelet moments and filter design:
    /// [2^-40, 2^24] at 32 points per octave.
    static MellinLogGrid wide();
};

/// Contour p = c + i*u, u in [-u_max, u_max], sampled at n_points trapezoid
/// nodes. n_points must be odd and at least 17 so u = 0 is a node.
struct MellinContour {
    double c = 0.0;
    double u_max = 40.0;
    int n_points = 4097;

    void validate() const;
};

struct MellinValue {
    cplx value;
    double tail_low = 0.0;  ///< last-octave share of the accumulated magnitude, low end
    double tail_high = 0.0; ///< same, high end
};

enum class MellinProvenance { closed_form, quadrature };

/// A Mellin-domain function with its declared strip of analyticity.
struct MellinFunction {
    std::function<cplx(cplx)> evaluator;
    Strip strip{};
    MellinProvenance provenance = MellinProvenance::quadrature;
    std::optional<MellinLogGrid> grid; ///< set when provenance is quadrature

    cplx operator()(cplx p) const { return evaluator(p); }
};

/// Forward transform by trapezoid quadrature in ln s. Throws
/// divergence_error naming the failing end when the last-octave
/// contribution at either end exceeds `tail_tol` of the accumulated
/// magnitude.
MellinValue mellin_forward(const std::function<cplx(double)>& F, const MellinLogGrid& grid,
                           cplx p, double tail_tol = 1e-10);

/// Same quadrature on explicit log-spaced samples (uniform in ln s).
MellinValue mellin_forward_sampled(std::span<const double> s, std::span<const cplx> values,
                                   cplx p, double tail_tol = 1e-10);

struct MellinInverseResult {
    cplx value;
    double truncation_estimate = 0.0;
};

/// Contour inversion at a single s > 0. The contour abscissa must lie in
/// the declared strip; |F~| must have decayed at the contour ends to below
/// `decay_tol` of its maximum along the contour, otherwise a
/// truncation_error is raised.
MellinInverseResult mellin_inverse(const MellinFunction& F, const MellinContour& contour,
                                   double sigma, double decay_tol = 1e-6);

struct ScalingConvolveResult {
    std::vector<double> frequencies;
    std::vector<cplx> values;
    double max_tail_bound = 0.0;
    std::optional<std::string> warning;

    cplx at(std::size_t i) const { return values[i]; }
};

/// One-branch scaling convolution W(f) = integral_0^inf ds/s Psi(s) w(f/s)
/// for f > 0, evaluated on `f_grid` by trapezoid quadrature over `quad`.
/// `w_branch` is read as zero outside (band_lo, band_hi) when a band is
/// given. A warning is attached when end-of-band truncation is visible.
ScalingConvolveResult scaling_convolve(const std::function<cplx(double)>& w_branch,
                                       const std::function<double(double)>& spectral_density,
                                       std::span<const double> f_grid,
                                       const MellinLogGrid& quad = {});

struct ProductCheckSample {
    cplx p;
    cplx convolved_transform; ///< M[Psi (.) w](p)
    cplx transform_product;   ///< Psi~(p) * w~(p)
    double rel_deviation;
};

struct ProductCheckReport {
    double max_rel_deviation = 0.0;
    std::vector<ProductCheckSample> samples;
};

/// Checks the product identity M[Psi (.) w](p) = Psi~(p) w~(p) on the
/// given contour offsets u (p = c + i*u). The filter branch is truncated
/// to [band_lo, band_hi]; the convolution and both transforms run on one
/// aligned log lattice so the discrete identity is exact up to round-off
/// for a correct implementation.
ProductCheckReport mellin_product_check(const std::function<cplx(double)>& w_branch,
                                        double band_lo, double band_hi,
                                        const std::function<double(double)>& spectral_density,
                                        const MellinContour& contour,
                                        std::span<const double> u_samples,
                                        int points_per_octave = 32);

} // namespace scalefilt
