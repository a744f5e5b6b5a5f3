#pragma once

#include "scalefilt/filter_design.hpp"
#include "scalefilt/signal.hpp"
#include "scalefilt/wavelet.hpp"

#include <optional>
#include <string>

namespace scalefilt {

/// Bin-wise multiplication in the frequency domain. The DC bin is written
/// as dc_gain * X(0); everything else evaluates the two-sided symbol at the
/// bin frequency. Pads internally and trims back to the input length.
Signal apply_frequency_filter(const Signal& signal, const FrequencyFilter& W);

struct CompareOptions {
    /// Fraction of the window trimmed from each end before error metrics
    /// (excludes circular wrap-around).
    double edge_trim = 0.05;
    /// Force the positive-scale analysis with 2*Re synthesis. Defaults to
    /// on for real inputs with real-to-real filters.
    std::optional<bool> real_output;
    /// Include stage timings in the report (off keeps reports byte-stable).
    bool timings = false;
};

struct ComparisonReport {
    std::string filter_description;
    std::string grid_description;
    double relative_l2_error = 0.0;     ///< wavelet path vs frequency-domain reference
    double max_pointwise_error = 0.0;   ///< absolute, over the trimmed window
    double effective_symbol_deviation = 0.0; ///< sup|W_eff - W|/sup|W| on the covered band
    double wavelet_vs_effective = 0.0;  ///< wavelet path vs direct W_eff multiply (algebraic check)
    double band_lo = 0.0;               ///< covered band used for the symbol metric
    double band_hi = 0.0;
    double forward_ms = -1.0;           ///< timings, -1 when not recorded
    double synthesis_ms = -1.0;
    double reference_ms = -1.0;
    std::vector<std::string> warnings;
};

/// Runs the operator both ways -- wavelet-domain synthesis with w against
/// bin-wise multiplication by W -- and reports the error metrics.
ComparisonReport compare_paths(const Signal& signal, const FilterPair& pair,
                               const Wavelet& wavelet, const ScaleTimeGrid& grid,
                               const CompareOptions& options = {});

struct ExponentEstimate {
    double slope = 0.0;
    double half_width = 0.0; ///< 1.96 * standard error of the slope
    double band_lo = 0.0;
    double band_hi = 0.0;
    bool power_law_ok = true; ///< false when the per-scale energies do not
                              ///< follow a power law (regression residual
                              ///< too large)
};

/// Least-squares slope of log per-scale energy against log sigma over
/// scales inside [sigma_lo, sigma_hi]. The band must span at least two
/// octaves. Energies proportional to sigma^p yield slope p.
ExponentEstimate estimate_spectral_exponent(const Scaleogram& scaleogram, double sigma_lo,
                                            double sigma_hi);

struct DenoiseOptions {
    /// Explicit power-law amplitudes; estimated from the scaleogram when
    /// absent (see denoise_power_law).
    std::optional<double> signal_amplitude;
    std::optional<double> noise_amplitude;
};

/// Wiener-style scale-domain shrinkage: weights S/(S+N) with power-law
/// models S = As * sigma^ps and N = An * sigma^pn, applied through the
/// wavelet-domain synthesis with reconstruction normalization. When the
/// amplitudes are not given, An is the lower-quartile level of the
/// per-scale energies against sigma^pn and As the maximal excess over that
/// floor against sigma^ps. A noise exponent of -infinity means no noise:
/// the weights collapse to plain reconstruction.
Signal denoise_power_law(const Signal& signal, double signal_exponent, double noise_exponent,
                         const Wavelet& wavelet, const ScaleTimeGrid& grid,
                         const DenoiseOptions& options = {});

std::string to_json(const ComparisonReport& report);
std::string to_json(const ExponentEstimate& estimate);
std::string to_json(const AdmissibilityReport& report);

/// Relative L2 distance over the trimmed interior of the window.
double relative_l2(const Signal& a, const Signal& b, double edge_trim = 0.0);

} // namespace scalefilt
