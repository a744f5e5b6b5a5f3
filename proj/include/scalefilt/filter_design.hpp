#pragma once

#include "scalefilt/filters.hpp"
#include "scalefilt/wavelet.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace scalefilt {

/// Polynomial differential operator sum a_n D^n with D = d/dt.
struct DifferentialOperatorSpec {
    std::vector<cplx> coefficients; ///< a_0..a_N

    void validate() const;
    std::size_t order() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

/// Splits two-sided samples of W(f) into the positive/negative branch pair
/// W(f) = W+(f) + W-(-f). A sample at f = 0 is skipped with a notice (the
/// DC bin is excluded from scale-domain representations).
FrequencyFilter split_signs(std::span<const double> frequencies, std::span<const cplx> values,
                            std::vector<std::string>* notices = nullptr);

struct DesignResult {
    ScaleFilter filter;
    /// sup-norm residual of scaling_convolve(w, Psi) against the requested
    /// W over the interior two-thirds (in log f) of the covered band.
    double roundtrip_residual = 0.0;
    double contour_abscissa = 0.0;
    Strip numerator_strip_positive{};
    Strip numerator_strip_negative{};
    std::vector<std::string> notes;
};

/// Solves the scaling-convolution equation W = Psi (.) w for w. Filters
/// carrying a closed-form tag are inverted symbolically (powers,
/// polynomials, the Hilbert symbol, the identity); sampled filters go
/// through Mellin division along the contour. When no contour is given the
/// abscissa defaults to the midpoint of the intersected strips (clamped
/// toward 0 for unbounded strips).
DesignResult derive_scale_filter(const FrequencyFilter& W, const Wavelet& wavelet,
                                 std::optional<MellinContour> contour,
                                 std::span<const double> sigma_grid);

/// The invariant pair w = |sigma|^p, W = Psi~(p) |f|^p. Requires the
/// density moment at p to be finite and nonzero.
FilterPair power_filter(double p, const Wavelet& wavelet);

/// W(f) = sum a_n (2 pi i f)^n and w(sigma) = sum a_n (2 pi i sigma)^n /
/// Psi~(n). Every moment with a_n != 0 must be finite and positive.
FilterPair differential_filter(const DifferentialOperatorSpec& spec, const Wavelet& wavelet);

/// Hilbert transform pair: w = -i/Psi~(0) on sigma > 0 and +i/Psi~(0) on
/// sigma < 0; W = -i sgn(f).
FilterPair hilbert_filter(const Wavelet& wavelet);

/// Identity pair: w = 1/Psi~(0), W = 1.
FilterPair identity_filter(const Wavelet& wavelet);

struct AdmissibilityCheck {
    std::string clause;  ///< the condition being tested, in plain words
    bool ok = false;
    std::string detail;
};

struct AdmissibilityReport {
    bool admissible = false;
    std::string failing_clause; ///< empty when admissible
    std::vector<AdmissibilityCheck> checks;
};

using AdmissibilityTarget = std::variant<FrequencyFilter, DifferentialOperatorSpec>;

/// Non-throwing admissibility audit: wavelet admissibility (finite zeroth
/// moment), per-moment checks for polynomial operators, and strip/contour
/// diagnostics (Mellin convergence of the branches, minimum |Psi~| along
/// the contour) for general filters.
AdmissibilityReport check_admissibility(const AdmissibilityTarget& target, const Wavelet& wavelet,
                                        const MellinContour& contour);

/// JSON filter description:
///   {"type": "power", "p": 0.5}
///   {"type": "polynomial", "coefficients": [a0, a1, ...]}   (reals or [re, im] pairs)
///   {"type": "hilbert"} | {"type": "identity"}
///   {"type": "sampled", "csv": "path"}                      (rows f, re, im)
struct FilterSpec {
    FilterForm form;
    std::filesystem::path csv_path; ///< for sampled specs
};

FilterSpec parse_filter_spec(const std::string& json_text,
                             const std::filesystem::path& base_dir = {});

/// Builds the operator pair for a parsed spec. Sampled specs derive the
/// scale side numerically with the given contour (or the default).
FilterPair make_filter_pair(const FilterSpec& spec, const Wavelet& wavelet,
                            std::optional<MellinContour> contour = std::nullopt,
                            std::span<const double> sigma_grid = {});

/// Sampled-filter CSV: rows "f,re,im" ('#' comments allowed).
std::pair<std::vector<double>, std::vector<cplx>> load_filter_csv(const std::filesystem::path& path);

} // namespace scalefilt
