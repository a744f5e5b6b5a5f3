#include "scalefilt/wavelet.hpp"

#include "scalefilt/detail/fft.hpp"
#include "scalefilt/detail/interp.hpp"
#include "scalefilt/detail/special.hpp"
#include "scalefilt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

namespace scalefilt {

cplx Wavelet::density_mellin(cplx p) const {
    if (mellin_closed_form) {
        if (p.real() >= mellin_strip.hi)
            throw divergence_error("density moment diverges at sigma -> 0 for Re p = " +
                                       std::to_string(p.real()) + " (strip requires Re p < " +
                                       std::to_string(mellin_strip.hi) + ")",
                                   divergence_error::End::low);
        if (p.real() <= mellin_strip.lo)
            throw divergence_error("density moment diverges at sigma -> inf for Re p = " +
                                       std::to_string(p.real()),
                                   divergence_error::End::high);
        return (*mellin_closed_form)(p);
    }
    return mellin_forward([this](double s) { return cplx{spectral_density(s), 0.0}; },
                          moment_grid, p)
        .value;
}

MellinFunction Wavelet::density_mellin_function() const {
    MellinFunction f;
    f.strip = mellin_strip;
    if (mellin_closed_form) {
        f.provenance = MellinProvenance::closed_form;
        f.evaluator = *mellin_closed_form;
    } else {
        f.provenance = MellinProvenance::quadrature;
        f.grid = moment_grid;
        f.evaluator = [density = spectral_density, grid = moment_grid](cplx p) {
            return mellin_forward([&density](double s) { return cplx{density(s), 0.0}; }, grid, p)
                .value;
        };
    }
    return f;
}

namespace {

void validate_wavelet(const Wavelet& w) {
    // support contract
    for (double f : {-2.0, -1.0, -0.25, 0.0}) {
        if (std::abs(w.spectral_fn(f)) != 0.0)
            throw admissibility_error(w.name + ": spectrum must vanish for f <= 0");
    }
    // density consistency on a sampled grid
    for (double f : {0.05, 0.2, 0.5, 1.0, 2.5}) {
        const double lhs = w.spectral_density(f);
        const double rhs = std::norm(w.spectral_fn(f));
        const double ref = std::max({lhs, rhs, 1e-300});
        if (std::abs(lhs - rhs) > 1e-12 * ref)
            throw admissibility_error(w.name + ": spectral density disagrees with |spectrum|^2");
    }
    // zeroth moment must be finite (the usual wavelet admissibility)
    try {
        const cplx m0 =
            mellin_forward([&w](double s) { return cplx{w.spectral_density(s), 0.0}; },
                           w.moment_grid, cplx{0.0, 0.0})
                .value;
        if (!std::isfinite(m0.real()) || m0.real() <= 0.0)
            throw admissibility_error(w.name + ": zeroth density moment is not finite and positive");
    } catch (const divergence_error&) {
        throw admissibility_error(w.name + ": zeroth density moment diverges; wavelet inadmissible");
    }
    // closed form (when declared) must agree with quadrature inside the strip
    if (w.mellin_closed_form) {
        const double hi = w.mellin_strip.hi;
        for (double gap : {1.0, 1.5, 2.0, 3.0, 4.0}) {
            const cplx p{hi - gap, 0.0};
            const cplx closed = (*w.mellin_closed_form)(p);
            const cplx quad = mellin_forward(
                                  [&w](double s) { return cplx{w.spectral_density(s), 0.0}; },
                                  w.moment_grid, p)
                                  .value;
            if (std::abs(closed - quad) > 1e-8 * std::abs(closed))
                throw admissibility_error(w.name +
                                          ": closed-form Mellin transform disagrees with quadrature at Re p = " +
                                          std::to_string(p.real()));
        }
    }
}

} // namespace

Wavelet cauchy_wavelet(double alpha) {
    if (!(alpha > 0.0))
        throw validation_error("cauchy_wavelet requires alpha > 0");

    Wavelet w;
    w.name = "cauchy(" + std::to_string(alpha) + ")";
    w.spectral_fn = [alpha](double f) -> cplx {
        if (f <= 0.0) return {0.0, 0.0};
        return {std::exp(alpha * std::log(f) - 2.0 * std::numbers::pi * f), 0.0};
    };
    w.spectral_density = [alpha](double f) -> double {
        if (f <= 0.0) return 0.0;
        return std::exp(2.0 * alpha * std::log(f) - 4.0 * std::numbers::pi * f);
    };
    const double log4pi = std::log(4.0 * std::numbers::pi);
    w.mellin_closed_form = [alpha, log4pi](cplx p) -> cplx {
        return std::exp((p - 2.0 * alpha) * log4pi) * detail::gamma(2.0 * alpha - p);
    };
    w.mellin_strip = Strip{-std::numeric_limits<double>::infinity(), 2.0 * alpha};
    w.peak_frequency = alpha / (2.0 * std::numbers::pi);
    validate_wavelet(w);
    return w;
}

Wavelet sampled_wavelet(std::span<const double> frequencies, std::span<const cplx> values) {
    if (frequencies.size() != values.size() || frequencies.size() < 4)
        throw validation_error("sampled_wavelet needs matching arrays with at least 4 points");

    std::vector<double> fs;
    std::vector<cplx> vs;
    bool have_zero = false;
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        if (frequencies[i] <= 0.0) {
            if (std::abs(values[i]) != 0.0)
                throw admissibility_error("sampled wavelet has support on f <= 0 (sample at f = " +
                                          std::to_string(frequencies[i]) + ")");
            if (frequencies[i] == 0.0) have_zero = true;
            if (frequencies[i] < 0.0) continue;
        }
        fs.push_back(frequencies[i]);
        vs.push_back(values[i]);
    }
    if (!have_zero && (fs.empty() || fs.front() > 0.0)) {
        fs.insert(fs.begin(), 0.0);
        vs.insert(vs.begin(), cplx{0.0, 0.0});
    }
    detail::CubicInterp interp(fs, vs);

    Wavelet w;
    w.name = "sampled";
    w.spectral_fn = [interp](double f) -> cplx {
        if (f <= 0.0) return {0.0, 0.0};
        return interp(f);
    };
    w.spectral_density = [interp](double f) -> double {
        if (f <= 0.0) return 0.0;
        return std::norm(interp(f));
    };

    // Divergence probe for the zeroth moment: per-octave masses of the
    // density against dsigma/sigma over the sampled band must not pile up
    // at the low end.
    {
        double f_lo = fs.front() > 0.0 ? fs.front() : fs[1];
        const double f_hi = fs.back();
        const int per_oct = 32;
        const double du = std::numbers::ln2 / per_oct;
        std::vector<double> octave_mass;
        double u = std::log(f_lo);
        const double u_end = std::log(f_hi);
        while (u < u_end) {
            double m = 0.0;
            for (int i = 0; i < per_oct && u < u_end; ++i, u += du)
                m += w.spectral_density(std::exp(u)) * du;
            octave_mass.push_back(m);
        }
        if (octave_mass.size() >= 3) {
            const double max_mass = *std::max_element(octave_mass.begin(), octave_mass.end());
            if (max_mass > 0.0 && octave_mass[0] >= 0.5 * max_mass &&
                octave_mass[0] >= octave_mass[1] && octave_mass[1] >= octave_mass[2])
                throw admissibility_error(
                    "sampled wavelet: zeroth density moment diverges toward f -> 0 "
                    "(per-octave mass grows at the low end)");
        }
    }

    double peak = 0.0, peak_f = fs.front() > 0.0 ? fs.front() : fs[1];
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const double d = std::norm(vs[i]);
        if (d > peak) {
            peak = d;
            peak_f = fs[i];
        }
    }
    w.peak_frequency = peak_f;
    validate_wavelet(w);
    return w;
}

ScaleTimeGrid ScaleTimeGrid::geometric(double sigma_min, int octaves, int voices_per_octave,
                                       bool include_negative_scales) {
    if (!(sigma_min > 0.0))
        throw validation_error("sigma_min must be positive");
    if (octaves < 1 || voices_per_octave < 1)
        throw validation_error("octaves and voices_per_octave must be at least 1");

    ScaleTimeGrid g;
    g.voices_per_octave = voices_per_octave;
    g.octaves = octaves;
    g.include_negative_scales = include_negative_scales;
    const std::size_t count = static_cast<std::size_t>(octaves) * voices_per_octave;
    g.scales.resize(count);
    g.scale_weights.resize(count);
    const double step = std::numbers::ln2 / voices_per_octave;
    for (std::size_t j = 0; j < count; ++j) {
        g.scales[j] = sigma_min * std::exp(static_cast<double>(j) * step);
        g.scale_weights[j] = g.scales[j] * step;
    }
    return g;
}

bool ScaleTimeGrid::same_scales(const ScaleTimeGrid& other, double tol) const {
    if (scales.size() != other.scales.size()) return false;
    if (include_negative_scales != other.include_negative_scales) return false;
    for (std::size_t j = 0; j < scales.size(); ++j)
        if (std::abs(scales[j] - other.scales[j]) > tol * scales[j]) return false;
    return true;
}

std::vector<double> Scaleogram::time_axis() const {
    std::vector<double> t(padded_length);
    for (std::size_t m = 0; m < padded_length; ++m)
        t[m] = start_time + static_cast<double>(m) / sample_rate;
    return t;
}

bool Scaleogram::compatible(const Scaleogram& other) const {
    return grid.same_scales(other.grid) && padded_length == other.padded_length &&
           sample_rate == other.sample_rate;
}

Scaleogram cwt_forward(const Signal& signal, const Wavelet& wavelet, const ScaleTimeGrid& grid) {
    if (grid.scales.empty())
        throw validation_error("scale grid is empty");

    const Signal padded = pad_to_pow2(signal);
    const Spectrum spec = fft(padded);
    const std::size_t m = spec.size();

    Scaleogram out;
    out.grid = grid;
    out.padded_length = m;
    out.source_length = signal.size();
    out.sample_rate = signal.sample_rate;
    out.start_time = signal.start_time;
    out.source_dc = spec.bins[0];
    out.data.assign(out.row_count() * m, cplx{0.0, 0.0});

    // coverage report: the grid's passband against the resolvable band
    const double f_min = spec.bin_spacing();
    const double f_nyq = 0.5 * signal.sample_rate;
    const double pass_lo = grid.scales.front() * wavelet.peak_frequency;
    const double pass_hi = grid.scales.back() * wavelet.peak_frequency;
    if (pass_hi < f_min || pass_lo > f_nyq)
        out.warnings.push_back("scale grid passband [" + std::to_string(pass_lo) + ", " +
                               std::to_string(pass_hi) +
                               "] does not overlap the signal band [" + std::to_string(f_min) +
                               ", " + std::to_string(f_nyq) + "]");

    const std::size_t half = m / 2;
    std::vector<cplx> buf(m);
    const std::size_t scale_count = grid.scale_count();
    for (std::size_t j = 0; j < scale_count; ++j) {
        const double sigma = grid.scales[j];
        std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
        for (std::size_t k = 1; k < half; ++k) {
            const double nu = static_cast<double>(k) * spec.bin_spacing();
            buf[k] = std::conj(wavelet.spectral_fn(nu / sigma)) * spec.bins[k] / sigma;
        }
        detail::fft_inplace(buf, true);
        auto row = out.row(j);
        const double df = spec.bin_spacing();
        for (std::size_t k = 0; k < m; ++k) row[k] = buf[k] * df;
    }
    if (grid.include_negative_scales) {
        for (std::size_t j = 0; j < scale_count; ++j) {
            const double sigma = grid.scales[j];
            std::fill(buf.begin(), buf.end(), cplx{0.0, 0.0});
            for (std::size_t k = 1; k < half; ++k) {
                const double nu = static_cast<double>(k) * spec.bin_spacing();
                buf[k] = std::conj(wavelet.spectral_fn(nu / sigma)) * spec.bins[m - k] / sigma;
            }
            detail::fft_inplace(buf, true);
            auto row = out.row(scale_count + j);
            const double df = spec.bin_spacing();
            for (std::size_t k = 0; k < m; ++k) row[k] = buf[k] * df;
        }
    }
    return out;
}

namespace {

void check_filter_band(const ScaleFilter& w, const ScaleTimeGrid& grid) {
    if (!w.sample_band) return;
    const double tol = std::exp2(0.5 / grid.voices_per_octave);
    if (w.sample_band->first > grid.scales.front() * tol ||
        w.sample_band->second < grid.scales.back() / tol)
        throw numeric_error("filter_band",
                            "scale filter band [" + std::to_string(w.sample_band->first) + ", " +
                                std::to_string(w.sample_band->second) +
                                "] does not cover the grid scales [" +
                                std::to_string(grid.scales.front()) + ", " +
                                std::to_string(grid.scales.back()) + "]");
}

} // namespace

SynthesisResult apply_scale_filter(const Scaleogram& scaleogram, const ScaleFilter& w,
                                   const Wavelet& wavelet, const ScaleTimeGrid& grid,
                                   const SynthesisOptions& options) {
    if (!scaleogram.grid.same_scales(grid))
        throw validation_error("grid does not match the scaleogram's grid (scales or sign blocks differ)");
    if (options.real_output && grid.include_negative_scales)
        throw validation_error("real_output applies to positive-scale analyses only; "
                               "negative scales already carry the mirror image");
    check_filter_band(w, grid);

    const std::size_t m = scaleogram.padded_length;
    const double rate = scaleogram.sample_rate;
    const double df = rate / static_cast<double>(m);
    const double dt = 1.0 / rate;
    const std::size_t half = m / 2;

    std::vector<cplx> out_bins(m, cplx{0.0, 0.0});
    std::vector<cplx> symbol(m, cplx{0.0, 0.0});
    std::vector<cplx> buf(m);

    const std::size_t scale_count = grid.scale_count();
    for (std::size_t j = 0; j < scale_count; ++j) {
        const double sigma = grid.scales[j];
        const double weight = grid.scale_weights[j];
        const cplx wj = w.positive ? w.positive(sigma) : cplx{0.0, 0.0};
        if (wj == cplx{0.0, 0.0}) continue;

        auto row = scaleogram.row(j);
        std::copy(row.begin(), row.end(), buf.begin());
        detail::fft_inplace(buf, false);
        const cplx scale_gain = weight * wj;
        for (std::size_t k = 1; k < half; ++k) {
            const double nu = static_cast<double>(k) * df;
            const cplx psi = wavelet.spectral_fn(nu / sigma);
            out_bins[k] += scale_gain * psi * buf[k] * dt;
            symbol[k] += scale_gain * wavelet.spectral_density(nu / sigma) / sigma;
        }
    }
    if (grid.include_negative_scales) {
        for (std::size_t j = 0; j < scale_count; ++j) {
            const double sigma = grid.scales[j];
            const double weight = grid.scale_weights[j];
            const cplx wj = w.negative ? w.negative(sigma) : cplx{0.0, 0.0};
            if (wj == cplx{0.0, 0.0}) continue;

            auto row = scaleogram.negative_row(j);
            std::copy(row.begin(), row.end(), buf.begin());
            detail::fft_inplace(buf, false);
            const cplx scale_gain = weight * wj;
            for (std::size_t k = 1; k < half; ++k) {
                const double nu = static_cast<double>(k) * df;
                const cplx psi = wavelet.spectral_fn(nu / sigma);
                out_bins[m - k] += scale_gain * psi * buf[k] * dt;
                symbol[m - k] += scale_gain * wavelet.spectral_density(nu / sigma) / sigma;
            }
        }
    }

    const cplx dc = options.real_output ? w.dc_gain * 0.5 : w.dc_gain;
    out_bins[0] = dc * scaleogram.source_dc;
    symbol[0] = dc;

    Spectrum out_spec;
    out_spec.bins = std::move(out_bins);
    out_spec.sample_rate = rate;
    out_spec.start_time = scaleogram.start_time;
    out_spec.source_length = m;
    Signal y = ifft(out_spec);
    if (options.real_output)
        for (auto& s : y.samples) s = cplx{2.0 * s.real(), 0.0};
    y.samples.resize(scaleogram.source_length);

    SynthesisResult result;
    result.output = std::move(y);
    result.effective_symbol = std::move(symbol);
    result.bin_frequencies.resize(m);
    for (std::size_t k = 0; k < m; ++k)
        result.bin_frequencies[k] = out_spec.frequency(k);
    return result;
}

Signal reconstruct(const Scaleogram& scaleogram, const Wavelet& wavelet,
                   const ScaleTimeGrid& grid, const SynthesisOptions& options) {
    const double norm = 1.0 / wavelet.density_mellin(cplx{0.0, 0.0}).real();
    ScaleFilter w;
    w.positive = [norm](double) { return cplx{norm, 0.0}; };
    w.negative = [norm](double) { return cplx{norm, 0.0}; };
    w.form = IdentityForm{};
    w.dc_gain = {1.0, 0.0};
    w.description = "reconstruction";
    return apply_scale_filter(scaleogram, w, wavelet, grid, options).output;
}

namespace {

double checked_nonnegative(const ScaleFilter& w, double sigma, bool negative_branch) {
    const cplx v = negative_branch ? (w.negative ? w.negative(sigma) : cplx{0.0, 0.0})
                                   : (w.positive ? w.positive(sigma) : cplx{0.0, 0.0});
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)) || v.real() < 0.0)
        throw validation_error("weighted_energy requires a real nonnegative weight; got " +
                                   std::to_string(v.real()) + (negative_branch ? " at -" : " at ") +
                                   std::to_string(sigma),
                               "domain");
    return v.real();
}

} // namespace

std::vector<double> scale_energies(const Scaleogram& sg) {
    const double dt = 1.0 / sg.sample_rate;
    std::vector<double> energies(sg.grid.scale_count());
    for (std::size_t j = 0; j < energies.size(); ++j) {
        double acc = 0.0;
        for (const cplx& v : sg.row(j)) acc += std::norm(v);
        energies[j] = sg.grid.scales[j] * dt * acc;
    }
    return energies;
}

double weighted_energy(const Scaleogram& sg, const ScaleFilter& w_nonneg) {
    const double dt = 1.0 / sg.sample_rate;
    double total = 0.0;
    for (std::size_t j = 0; j < sg.grid.scale_count(); ++j) {
        const double wj = checked_nonnegative(w_nonneg, sg.grid.scales[j], false);
        double acc = 0.0;
        for (const cplx& v : sg.row(j)) acc += std::norm(v);
        total += sg.grid.scale_weights[j] * wj * sg.grid.scales[j] * dt * acc;
    }
    if (sg.grid.include_negative_scales) {
        for (std::size_t j = 0; j < sg.grid.scale_count(); ++j) {
            const double wj = checked_nonnegative(w_nonneg, sg.grid.scales[j], true);
            double acc = 0.0;
            for (const cplx& v : sg.negative_row(j)) acc += std::norm(v);
            total += sg.grid.scale_weights[j] * wj * sg.grid.scales[j] * dt * acc;
        }
    }
    return total;
}

cplx weighted_inner_product(const Scaleogram& a, const Scaleogram& b, const ScaleFilter& w) {
    if (!a.compatible(b))
        throw validation_error("scaleograms live on different grids");
    const double dt = 1.0 / a.sample_rate;
    cplx total{0.0, 0.0};
    for (std::size_t j = 0; j < a.grid.scale_count(); ++j) {
        const cplx wj = w.positive ? w.positive(a.grid.scales[j]) : cplx{0.0, 0.0};
        cplx acc{0.0, 0.0};
        auto ra = a.row(j);
        auto rb = b.row(j);
        for (std::size_t k = 0; k < ra.size(); ++k) acc += std::conj(ra[k]) * rb[k];
        total += a.grid.scale_weights[j] * wj * a.grid.scales[j] * dt * acc;
    }
    if (a.grid.include_negative_scales) {
        for (std::size_t j = 0; j < a.grid.scale_count(); ++j) {
            const cplx wj = w.negative ? w.negative(a.grid.scales[j]) : cplx{0.0, 0.0};
            cplx acc{0.0, 0.0};
            auto ra = a.negative_row(j);
            auto rb = b.negative_row(j);
            for (std::size_t k = 0; k < ra.size(); ++k) acc += std::conj(ra[k]) * rb[k];
            total += a.grid.scale_weights[j] * wj * a.grid.scales[j] * dt * acc;
        }
    }
    return total;
}

namespace {

struct ScaleogramHeader {
    char magic[8];
    std::uint32_t voices;
    std::uint32_t octaves;
    std::uint8_t include_negative;
    std::uint8_t pad[7];
    double sigma_min;
    std::uint64_t padded_length;
    std::uint64_t source_length;
    double sample_rate;
    double start_time;
    double dc_re;
    double dc_im;
};
static_assert(sizeof(ScaleogramHeader) == 8 + 8 + 8 + 8 * 7, "header layout is part of the format");

constexpr char kMagic[8] = {'S', 'C', 'L', 'G', 'R', 'A', 'M', '1'};

} // namespace

void save_scaleogram(const Scaleogram& sg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw validation_error("cannot open " + path.string() + " for writing", "io");
    ScaleogramHeader h{};
    std::memcpy(h.magic, kMagic, 8);
    h.voices = static_cast<std::uint32_t>(sg.grid.voices_per_octave);
    h.octaves = static_cast<std::uint32_t>(sg.grid.octaves);
    h.include_negative = sg.grid.include_negative_scales ? 1 : 0;
    h.sigma_min = sg.grid.scales.front();
    h.padded_length = sg.padded_length;
    h.source_length = sg.source_length;
    h.sample_rate = sg.sample_rate;
    h.start_time = sg.start_time;
    h.dc_re = sg.source_dc.real();
    h.dc_im = sg.source_dc.imag();
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    std::vector<float> row(2 * sg.padded_length);
    for (std::size_t j = 0; j < sg.row_count(); ++j) {
        auto r = sg.row(j);
        for (std::size_t k = 0; k < r.size(); ++k) {
            row[2 * k] = static_cast<float>(r[k].real());
            row[2 * k + 1] = static_cast<float>(r[k].imag());
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(float)));
    }
}

Scaleogram load_scaleogram(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error("cannot open " + path.string(), "io");
    ScaleogramHeader h{};
    in.read(reinterpret_cast<char*>(&h), sizeof h);
    if (!in || std::memcmp(h.magic, kMagic, 8) != 0)
        throw validation_error(path.string() + " is not a scaleogram file", "parse");

    Scaleogram sg;
    sg.grid = ScaleTimeGrid::geometric(h.sigma_min, static_cast<int>(h.octaves),
                                       static_cast<int>(h.voices), h.include_negative != 0);
    sg.padded_length = h.padded_length;
    sg.source_length = h.source_length;
    sg.sample_rate = h.sample_rate;
    sg.start_time = h.start_time;
    sg.source_dc = {h.dc_re, h.dc_im};
    sg.data.resize(sg.row_count() * sg.padded_length);
    std::vector<float> row(2 * sg.padded_length);
    for (std::size_t j = 0; j < sg.row_count(); ++j) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * sizeof(float)));
        if (!in)
            throw validation_error("truncated scaleogram file " + path.string(), "parse");
        auto r = sg.row(j);
        for (std::size_t k = 0; k < r.size(); ++k)
            r[k] = {static_cast<double>(row[2 * k]), static_cast<double>(row[2 * k + 1])};
    }
    return sg;
}

void export_scaleogram_csv(const Scaleogram& sg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw validation_error("cannot open " + path.string() + " for writing", "io");
    out << "# sigma,tau,re,im\n";
    char buf[160];
    const auto t = sg.time_axis();
    for (std::size_t j = 0; j < sg.row_count(); ++j) {
        const bool negative = j >= sg.grid.scale_count();
        const double sigma = sg.grid.scales[negative ? j - sg.grid.scale_count() : j] *
                             (negative ? -1.0 : 1.0);
        auto r = sg.row(j);
        for (std::size_t k = 0; k < r.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", sigma,
                          std::abs(sigma) * t[k], r[k].real(), r[k].imag());
            out << buf;
        }
    }
}

} // namespace scalefilt
