#include "scalefilt/harness.hpp"

#include "scalefilt/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace scalefilt {

Signal apply_frequency_filter(const Signal& signal, const FrequencyFilter& W) {
    const std::size_t n = signal.size();
    Spectrum spec = fft(pad_to_pow2(signal));
    const std::size_t m = spec.size();
    for (std::size_t k = 1; k < m; ++k)
        spec.bins[k] *= W.eval(spec.frequency(k));
    spec.bins[0] *= W.dc_gain;
    Signal out = ifft(spec);
    out.samples.resize(n);
    return out;
}

double relative_l2(const Signal& a, const Signal& b, double edge_trim) {
    if (a.size() != b.size())
        throw validation_error("relative_l2 needs signals of equal length");
    const std::size_t n = a.size();
    const auto lo = static_cast<std::size_t>(edge_trim * static_cast<double>(n));
    const std::size_t hi = n - lo;
    double num = 0.0, den = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        num += std::norm(a.samples[i] - b.samples[i]);
        den += std::norm(b.samples[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

namespace {

double max_pointwise(const Signal& a, const Signal& b, double edge_trim) {
    const std::size_t n = a.size();
    const auto lo = static_cast<std::size_t>(edge_trim * static_cast<double>(n));
    double m = 0.0;
    for (std::size_t i = lo; i < n - lo; ++i)
        m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
    return m;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

} // namespace

ComparisonReport compare_paths(const Signal& signal, const FilterPair& pair,
                               const Wavelet& wavelet, const ScaleTimeGrid& grid,
                               const CompareOptions& options) {
    ComparisonReport report;
    report.filter_description =
        pair.frequency.description.empty() ? describe(pair.frequency.form)
                                           : pair.frequency.description;
    report.grid_description = std::to_string(grid.octaves) + " octaves x " +
                              std::to_string(grid.voices_per_octave) + " voices from sigma = " +
                              std::to_string(grid.scales.front());

    std::vector<double> probe;
    for (double s = grid.scales.front(); s <= grid.scales.back(); s *= 4.0) probe.push_back(s);
    const bool filter_real_to_real = real_symmetric(pair.scale, probe);
    const bool input_real = signal.max_imag() == 0.0;
    const bool real_output = options.real_output.value_or(input_real && filter_real_to_real);
    if (real_output && !filter_real_to_real)
        report.warnings.push_back("real_output requested for a filter that does not map real "
                                  "signals to real signals");

    // wavelet-domain path
    auto t0 = Clock::now();
    const Scaleogram sg = cwt_forward(signal, wavelet, grid);
    const double forward_ms = ms_since(t0);
    for (const auto& w : sg.warnings) report.warnings.push_back(w);

    t0 = Clock::now();
    SynthesisOptions sopt;
    sopt.real_output = real_output;
    SynthesisResult syn = apply_scale_filter(sg, pair.scale, wavelet, grid, sopt);
    const double synthesis_ms = ms_since(t0);

    // frequency-domain reference
    t0 = Clock::now();
    Signal reference = apply_frequency_filter(signal, pair.frequency);
    if (real_output) {
        // the positive-scale path synthesizes the positive-frequency half;
        // 2 Re recovers the real filtered signal, so the complex reference
        // just drops its (round-off) imaginary part
        for (auto& s : reference.samples) s = cplx{s.real(), 0.0};
    }
    const double reference_ms = ms_since(t0);

    report.relative_l2_error = relative_l2(syn.output, reference, options.edge_trim);
    report.max_pointwise_error = max_pointwise(syn.output, reference, options.edge_trim);

    // algebraic cross-check: bin-wise multiply by the accumulated effective
    // symbol must reproduce the wavelet path to round-off
    {
        Spectrum spec = fft(pad_to_pow2(signal));
        for (std::size_t k = 0; k < spec.bins.size(); ++k)
            spec.bins[k] *= syn.effective_symbol[k];
        Signal direct = ifft(spec);
        if (real_output)
            for (auto& s : direct.samples) s = cplx{2.0 * s.real(), 0.0};
        direct.samples.resize(signal.size());
        report.wavelet_vs_effective = relative_l2(syn.output, direct, 0.0);
    }

    // effective-symbol deviation on the covered band (positive side)
    {
        const double f_lo = grid.scales.front() * wavelet.peak_frequency;
        const double f_hi = grid.scales.back() * wavelet.peak_frequency;
        const double span = std::log(f_hi / f_lo);
        const double band_lo = std::exp(std::log(f_lo) + span / 6.0);
        const double band_hi = std::min(std::exp(std::log(f_hi) - span / 6.0),
                                        0.45 * signal.sample_rate);
        report.band_lo = band_lo;
        report.band_hi = band_hi;
        double num = 0.0, den = 0.0;
        const std::size_t m = syn.effective_symbol.size();
        for (std::size_t k = 1; k < m / 2; ++k) {
            const double f = syn.bin_frequencies[k];
            if (f < band_lo || f > band_hi) continue;
            const cplx want = pair.frequency.positive ? pair.frequency.positive(f) : cplx{0.0, 0.0};
            num = std::max(num, std::abs(syn.effective_symbol[k] - want));
            den = std::max(den, std::abs(want));
        }
        report.effective_symbol_deviation = den > 0.0 ? num / den : num;
    }

    if (options.timings) {
        report.forward_ms = forward_ms;
        report.synthesis_ms = synthesis_ms;
        report.reference_ms = reference_ms;
    }
    return report;
}

ExponentEstimate estimate_spectral_exponent(const Scaleogram& sg, double sigma_lo,
                                            double sigma_hi) {
    if (!(sigma_hi > sigma_lo) || sigma_hi / sigma_lo < 4.0)
        throw validation_error("exponent band must span at least two octaves");
    if (sigma_lo < sg.grid.scales.front() / 1.0001 || sigma_hi > sg.grid.scales.back() * 1.0001)
        throw validation_error("exponent band must lie inside the grid's scale range");

    const auto energies = scale_energies(sg);
    std::vector<double> lx, ly;
    for (std::size_t j = 0; j < energies.size(); ++j) {
        const double s = sg.grid.scales[j];
        if (s < sigma_lo || s > sigma_hi) continue;
        if (energies[j] <= 0.0) continue;
        lx.push_back(std::log(s));
        ly.push_back(std::log(energies[j]));
    }
    if (lx.size() < 4)
        throw validation_error("too few scales with energy in the requested band");

    const auto n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    const double slope = (n * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / n;

    double rss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - slope * lx[i] - intercept;
        rss += r * r;
    }
    const double dof = std::max(n - 2.0, 1.0);
    const double var_slope = (rss / dof) / (sxx - sx * sx / n);

    ExponentEstimate est;
    est.slope = slope;
    est.half_width = 1.96 * std::sqrt(std::max(var_slope, 0.0));
    est.band_lo = sigma_lo;
    est.band_hi = sigma_hi;
    // a clean power law has small residuals in log-log; pure tones and
    // other concentrated inputs do not
    est.power_law_ok = std::sqrt(rss / dof) < 1.0;
    return est;
}

Signal denoise_power_law(const Signal& signal, double signal_exponent, double noise_exponent,
                         const Wavelet& wavelet, const ScaleTimeGrid& grid,
                         const DenoiseOptions& options) {
    if (!std::isfinite(signal_exponent))
        throw validation_error("signal exponent must be finite");
    const bool no_noise = std::isinf(noise_exponent) && noise_exponent < 0.0;
    if (!no_noise && !std::isfinite(noise_exponent))
        throw validation_error("noise exponent must be finite (or -inf for the no-noise case)");

    const Scaleogram sg = cwt_forward(signal, wavelet, grid);

    double amp_signal = options.signal_amplitude.value_or(-1.0);
    double amp_noise = options.noise_amplitude.value_or(-1.0);
    if (no_noise) amp_noise = 0.0;
    if (amp_signal < 0.0 || amp_noise < 0.0) {
        const auto energies = scale_energies(sg);
        if (amp_noise < 0.0) {
            // lower-quartile level of E_j / sigma^pn is a robust noise floor
            std::vector<double> level;
            for (std::size_t j = 0; j < energies.size(); ++j)
                level.push_back(energies[j] / std::pow(sg.grid.scales[j], noise_exponent));
            std::sort(level.begin(), level.end());
            amp_noise = level[level.size() / 4];
        }
        if (amp_signal < 0.0) {
            // largest excess over the noise floor, read against sigma^ps
            amp_signal = 0.0;
            for (std::size_t j = 0; j < energies.size(); ++j) {
                const double s = sg.grid.scales[j];
                const double excess = energies[j] - amp_noise * (no_noise ? 0.0 : std::pow(s, noise_exponent));
                amp_signal = std::max(amp_signal, excess / std::pow(s, signal_exponent));
            }
        }
    }

    const double norm = 1.0 / wavelet.density_mellin(cplx{0.0, 0.0}).real();
    auto weight = [=](double s) -> cplx {
        const double S = amp_signal * std::pow(s, signal_exponent);
        const double N = no_noise ? 0.0 : amp_noise * std::pow(s, noise_exponent);
        const double g = (S + N) > 0.0 ? S / (S + N) : (no_noise ? 1.0 : 0.0);
        return cplx{g * norm, 0.0};
    };
    ScaleFilter w;
    w.positive = weight;
    w.negative = weight;
    w.form = SampledForm{};
    w.dc_gain = {1.0, 0.0};
    w.description = "wiener shrinkage";

    SynthesisOptions sopt;
    sopt.real_output = signal.max_imag() == 0.0 && !grid.include_negative_scales;
    return apply_scale_filter(sg, w, wavelet, grid, sopt).output;
}

namespace {

nlohmann::json base_report_json(const ComparisonReport& r) {
    nlohmann::json j;
    j["filter"] = r.filter_description;
    j["grid"] = r.grid_description;
    j["relative_l2_error"] = r.relative_l2_error;
    j["max_pointwise_error"] = r.max_pointwise_error;
    j["effective_symbol_deviation"] = r.effective_symbol_deviation;
    j["wavelet_vs_effective"] = r.wavelet_vs_effective;
    j["band"] = {r.band_lo, r.band_hi};
    if (r.forward_ms >= 0.0) {
        j["timings_ms"] = {{"forward", r.forward_ms},
                           {"synthesis", r.synthesis_ms},
                           {"reference", r.reference_ms}};
    }
    if (!r.warnings.empty()) j["warnings"] = r.warnings;
    return j;
}

} // namespace

std::string to_json(const ComparisonReport& report) {
    return base_report_json(report).dump(2);
}

std::string to_json(const ExponentEstimate& e) {
    nlohmann::json j;
    j["slope"] = e.slope;
    j["half_width"] = e.half_width;
    j["band"] = {e.band_lo, e.band_hi};
    j["power_law_ok"] = e.power_law_ok;
    return j.dump(2);
}

std::string to_json(const AdmissibilityReport& report) {
    nlohmann::json j;
    j["admissible"] = report.admissible;
    if (!report.failing_clause.empty()) j["failing_clause"] = report.failing_clause;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : report.checks) {
        j["checks"].push_back({{"clause", c.clause}, {"ok", c.ok}, {"detail", c.detail}});
    }
    return j.dump(2);
}

} // namespace scalefilt
