#pragma once

#include "scalefilt/filters.hpp"
#include "scalefilt/mellin.hpp"
#include "scalefilt/signal.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace scalefilt {

/// Analytic wavelet described in the frequency domain: the spectrum
/// vanishes for f <= 0. `spectral_density` is |spectral_fn|^2; the Mellin
/// transform of the density is available in closed form for the shipped
/// families and by quadrature otherwise.
struct Wavelet {
    std::string name;
    std::function<cplx(double)> spectral_fn;        ///< psi_hat(f)
    std::function<double(double)> spectral_density; ///< Psi(f) = |psi_hat(f)|^2
    std::optional<std::function<cplx(cplx)>> mellin_closed_form;
    Strip mellin_strip{};
    MellinLogGrid moment_grid = MellinLogGrid::wide();
    double peak_frequency = 0.0; ///< argmax of the spectral density

    /// Mellin transform of the spectral density at p: closed form when
    /// declared, quadrature over `moment_grid` otherwise. Throws
    /// divergence_error/contour_error when p is outside the strip.
    cplx density_mellin(cplx p) const;

    MellinFunction density_mellin_function() const;
};

/// Cauchy (Paul-type) analytic wavelet of order alpha > 0:
/// psi_hat(f) = f^alpha e^{-2 pi f} for f > 0. Its spectral density has
/// Mellin transform (4 pi)^{p - 2 alpha} Gamma(2 alpha - p) on Re p < 2 alpha.
Wavelet cauchy_wavelet(double alpha);

/// Wavelet from spectrum samples. Values must vanish for f <= 0 and the
/// zeroth density moment must converge; otherwise an admissibility_error
/// is raised. The spectrum is interpolated with a local cubic.
Wavelet sampled_wavelet(std::span<const double> frequencies, std::span<const cplx> values);

/// Geometric scale ladder sigma_j = sigma_min * 2^{j/V}, j = 0..O*V-1, with
/// plain-measure quadrature weights sigma_j * ln2 / V (midpoint rule in
/// log sigma). Large sigma passes high frequencies.
struct ScaleTimeGrid {
    std::vector<double> scales;
    std::vector<double> scale_weights;
    int voices_per_octave = 8;
    int octaves = 8;
    bool include_negative_scales = false;

    static ScaleTimeGrid geometric(double sigma_min, int octaves, int voices_per_octave,
                                   bool include_negative_scales = false);

    std::size_t scale_count() const { return scales.size(); }
    bool same_scales(const ScaleTimeGrid& other, double tol = 1e-12) const;
};

/// Wavelet coefficients on a scale ladder. Each row j holds the transform
/// at scale sigma_j sampled on the shared native time grid t_m = m/rate;
/// the row's own time-shift variable is tau = sigma_j * t_m (shift in
/// scaled time). When negative scales are enabled the rows for -sigma_j
/// follow the positive block.
struct Scaleogram {
    ScaleTimeGrid grid;
    std::size_t padded_length = 0;
    std::size_t source_length = 0;
    double sample_rate = 1.0;
    double start_time = 0.0;
    cplx source_dc{0.0, 0.0}; ///< DC bin of the padded source spectrum
    std::vector<cplx> data;
    std::vector<std::string> warnings;

    std::size_t row_count() const {
        return grid.scale_count() * (grid.include_negative_scales ? 2 : 1);
    }
    std::span<const cplx> row(std::size_t j) const {
        return {data.data() + j * padded_length, padded_length};
    }
    std::span<cplx> row(std::size_t j) {
        return {data.data() + j * padded_length, padded_length};
    }
    /// Row for scale -sigma_j (only when include_negative_scales).
    std::span<const cplx> negative_row(std::size_t j) const {
        return row(grid.scale_count() + j);
    }
    std::vector<double> time_axis() const;

    bool compatible(const Scaleogram& other) const;
};

/// Forward transform: per scale, the wavelet spectrum is evaluated at the
/// signal's native bins (never the other way around) and the row is the
/// inverse transform of conj(psi_hat(nu/sigma)) * x_hat(nu) / sigma.
Scaleogram cwt_forward(const Signal& signal, const Wavelet& wavelet, const ScaleTimeGrid& grid);

struct SynthesisOptions {
    /// Return 2*Re(output): recovers a real signal from a positive-scale
    /// analysis when the filter satisfies w(-s) = conj(w(s)).
    bool real_output = false;
};

struct SynthesisResult {
    Signal output;
    /// Effective two-sided symbol accumulated on the padded bin grid:
    /// W_eff(nu_k) = sum_j weight_j w(sigma_j) Psi(nu_k/sigma_j) / sigma_j.
    std::vector<cplx> effective_symbol;
    std::vector<double> bin_frequencies;
};

/// Wavelet-domain synthesis of the operator with scale multiplier w:
/// out(t) = sum_j weight_j w(sigma_j) * integral dtau psi(sigma_j t - tau)
/// x~(sigma_j, tau), computed per scale as a frequency-domain convolution.
/// The excluded DC bin is written as dc_gain * source DC. Output is trimmed
/// to the source length.
SynthesisResult apply_scale_filter(const Scaleogram& scaleogram, const ScaleFilter& w,
                                   const Wavelet& wavelet, const ScaleTimeGrid& grid,
                                   const SynthesisOptions& options = {});

/// Synthesis with the constant multiplier 1/Psi~(0): inverts the forward
/// transform on the covered band.
Signal reconstruct(const Scaleogram& scaleogram, const Wavelet& wavelet,
                   const ScaleTimeGrid& grid, const SynthesisOptions& options = {});

/// Scale-weighted energy: double integral of w(sigma) |x~(sigma,tau)|^2
/// over the grid. Requires w real and nonnegative on the grid scales.
double weighted_energy(const Scaleogram& scaleogram, const ScaleFilter& w_nonneg);

/// Scale-weighted pairing of two scaleograms on the same grid (sesquilinear,
/// conjugate on the first argument).
cplx weighted_inner_product(const Scaleogram& a, const Scaleogram& b, const ScaleFilter& w);

/// Per-scale energies integral dtau |x~(sigma_j, tau)|^2 (tau measure, so
/// a spectrum proportional to |f|^p yields energies proportional to
/// sigma^p).
std::vector<double> scale_energies(const Scaleogram& scaleogram);

/// Binary scaleogram container: fixed header with the grid parameters
/// followed by the row-major coefficient matrix as float32 re/im pairs
/// (numpy complex64 layout).
void save_scaleogram(const Scaleogram& scaleogram, const std::filesystem::path& path);
Scaleogram load_scaleogram(const std::filesystem::path& path);

/// Plot-ready CSV export with columns sigma, tau, re, im.
void export_scaleogram_csv(const Scaleogram& scaleogram, const std::filesystem::path& path);

} // namespace scalefilt
