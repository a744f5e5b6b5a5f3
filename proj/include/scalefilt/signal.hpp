#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace scalefilt {

using cplx = std::complex<double>;

/// Uniformly sampled time series. Immutable by convention: operations
/// return new signals.
struct Signal {
    std::vector<cplx> samples;
    double sample_rate = 1.0; ///< samples per unit time, > 0
    double start_time = 0.0;

    std::size_t size() const { return samples.size(); }
    double dt() const { return 1.0 / sample_rate; }
    double duration() const { return static_cast<double>(samples.size()) / sample_rate; }

    /// True when every imaginary part is at or below `tol` in magnitude.
    bool is_real(double tol = 0.0) const;

    /// Largest |imag| over all samples.
    double max_imag() const;
};

/// Discrete Fourier representation with a two-sided frequency axis in
/// cycles per unit time. Bins follow DFT order: k = 0..N-1 maps to
/// frequency k/(N*dt) for k < N/2 and (k-N)/(N*dt) otherwise.
struct Spectrum {
    std::vector<cplx> bins;
    double sample_rate = 1.0;
    double start_time = 0.0;
    std::size_t source_length = 0; ///< always equals bins.size()

    std::size_t size() const { return bins.size(); }
    double bin_spacing() const { return sample_rate / static_cast<double>(bins.size()); }
    double frequency(std::size_t k) const {
        const auto n = bins.size();
        const double f = static_cast<double>(k) * bin_spacing();
        return k < (n + 1) / 2 ? f : f - sample_rate;
    }
    std::vector<double> frequency_axis() const;
};

/// Forward transform, unitary in the measure sense: bin values approximate
/// the continuum integral with dt weights, so sum(|x|^2)*dt equals
/// sum(|X|^2)*df. Kernel e^{-2*pi*i*f*t}, length must be a power of two.
Spectrum fft(const Signal& signal);

/// Exact inverse of fft up to round-off. Kernel e^{+2*pi*i*f*t}.
Signal ifft(const Spectrum& spectrum);

/// Zero-pads at the end to the next power of two. Returns the input
/// unchanged when the length is already a power of two.
Signal pad_to_pow2(const Signal& signal);

/// Discrete analytic part of a real signal: negative-frequency bins are
/// zeroed, strictly positive bins doubled, and the DC and Nyquist bins
/// kept at unit gain, so Re(result) == input exactly. Rejects complex
/// input. Non power-of-two inputs are padded internally and trimmed back.
Signal analytic_part(const Signal& signal);

enum class TestSignalKind { chirp, multitone, power_law_noise, impulse };

struct TestSignalSpec {
    TestSignalKind kind = TestSignalKind::impulse;
    std::size_t length = 1024;
    double sample_rate = 1024.0;
    double amplitude = 1.0;

    // chirp: instantaneous frequency sweeps chirp_f0 -> chirp_f1 across the
    // window, with a raised-cosine taper over `taper` of each end.
    double chirp_f0 = 32.0;
    double chirp_f1 = 192.0;
    double taper = 0.1;

    // multitone: unit-amplitude cosines at these frequencies.
    std::vector<double> tones;

    // power_law_noise: Gaussian spectral amplitudes shaped so the one-sided
    // mean spectral density is proportional to |f|^exponent on
    // [band_lo, band_hi], zero outside. Deterministic in `seed`.
    double exponent = -5.0 / 3.0;
    double band_lo = 8.0;
    double band_hi = 512.0;
    std::uint64_t seed = 1;

    // impulse: single unit sample.
    std::size_t impulse_index = 0;
};

Signal generate_test_signal(const TestSignalSpec& spec);

enum class SignalFormat { csv, f64le };

/// CSV: two columns (time, value), optional third column for the imaginary
/// part; or one column (value) with the rate passed explicitly. '#' lines
/// and blanks are skipped. The time column must be uniform.
/// f64le: raw little-endian float64 samples, real signals only; the rate
/// must be passed explicitly.
Signal load_signal(const std::filesystem::path& path, SignalFormat format,
                   std::optional<double> rate = std::nullopt);

void save_signal(const Signal& signal, const std::filesystem::path& path, SignalFormat format);

} // namespace scalefilt
