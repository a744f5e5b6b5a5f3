#include "scalefilt/signal.hpp"

#include "scalefilt/detail/fft.hpp"
#include "scalefilt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace scalefilt {

namespace detail {

namespace {

std::vector<cplx>& twiddle_table(std::size_t n) {
    thread_local std::vector<std::pair<std::size_t, std::vector<cplx>>> cache;
    for (auto& entry : cache)
        if (entry.first == n) return entry.second;
    std::vector<cplx> table(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double arg = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        table[k] = {std::cos(arg), std::sin(arg)};
    }
    cache.emplace_back(n, std::move(table));
    return cache.back().second;
}

} // namespace

void fft_inplace(std::span<cplx> data, bool inverse) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    if (!is_power_of_two(n))
        throw validation_error("fft length must be a power of two, got " + std::to_string(n), "length");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const auto& table = twiddle_table(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cplx w = table[k * stride];
                if (inverse) w = std::conj(w);
                const cplx t = data[i + k + len / 2] * w;
                data[i + k + len / 2] = data[i + k] - t;
                data[i + k] += t;
            }
        }
    }
}

} // namespace detail

bool Signal::is_real(double tol) const {
    return max_imag() <= tol;
}

double Signal::max_imag() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, std::abs(s.imag()));
    return m;
}

std::vector<double> Spectrum::frequency_axis() const {
    std::vector<double> axis(bins.size());
    for (std::size_t k = 0; k < bins.size(); ++k) axis[k] = frequency(k);
    return axis;
}

Spectrum fft(const Signal& signal) {
    if (signal.sample_rate <= 0.0)
        throw validation_error("sample_rate must be positive");
    if (signal.samples.size() < 2)
        throw validation_error("signal must hold at least 2 samples", "length");
    if (!detail::is_power_of_two(signal.samples.size()))
        throw validation_error("fft requires a power-of-two length; pad_to_pow2() first", "length");

    Spectrum out;
    out.bins = signal.samples;
    out.sample_rate = signal.sample_rate;
    out.start_time = signal.start_time;
    out.source_length = signal.samples.size();
    detail::fft_inplace(out.bins, false);
    const double dt = signal.dt();
    for (auto& b : out.bins) b *= dt;
    return out;
}

Signal ifft(const Spectrum& spectrum) {
    if (spectrum.bins.size() != spectrum.source_length)
        throw validation_error("spectrum bin count does not match source_length");
    Signal out;
    out.samples = spectrum.bins;
    out.sample_rate = spectrum.sample_rate;
    out.start_time = spectrum.start_time;
    detail::fft_inplace(out.samples, true);
    const double df = spectrum.bin_spacing();
    for (auto& s : out.samples) s *= df;
    return out;
}

Signal pad_to_pow2(const Signal& signal) {
    const std::size_t n = signal.samples.size();
    const std::size_t m = detail::next_power_of_two(std::max<std::size_t>(n, 2));
    if (m == n) return signal;
    Signal out = signal;
    out.samples.resize(m, cplx{0.0, 0.0});
    return out;
}

Signal analytic_part(const Signal& signal) {
    if (signal.max_imag() > 0.0)
        throw validation_error("analytic_part requires real input", "domain");

    const std::size_t n = signal.samples.size();
    Signal padded = pad_to_pow2(signal);
    Spectrum spec = fft(padded);
    const std::size_t m = spec.bins.size();
    // DC and Nyquist stay at unit gain, strictly positive bins double,
    // negative bins vanish; this keeps Re(output) == input for real input.
    for (std::size_t k = 1; k < m / 2; ++k) spec.bins[k] *= 2.0;
    for (std::size_t k = m / 2 + 1; k < m; ++k) spec.bins[k] = 0.0;
    Signal out = ifft(spec);
    out.samples.resize(n);
    return out;
}

namespace {

// Gaussian deviates via Box-Muller over mt19937_64 so results are identical
// across standard library implementations.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}
    double operator()() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        have_ = true;
        return r * std::cos(a);
    }

private:
    double uniform() {
        return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1p-53;
    }
    std::mt19937_64 rng_;
    bool have_ = false;
    double cached_ = 0.0;
};

Signal make_chirp(const TestSignalSpec& spec) {
    Signal out;
    out.sample_rate = spec.sample_rate;
    out.samples.resize(spec.length);
    const double T = static_cast<double>(spec.length) / spec.sample_rate;
    const std::size_t ramp = static_cast<std::size_t>(spec.taper * static_cast<double>(spec.length));
    for (std::size_t i = 0; i < spec.length; ++i) {
        const double t = static_cast<double>(i) / spec.sample_rate;
        const double phase = 2.0 * std::numbers::pi *
                             (spec.chirp_f0 * t + 0.5 * (spec.chirp_f1 - spec.chirp_f0) * t * t / T);
        double win = 1.0;
        if (ramp > 0) {
            if (i < ramp)
                win = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(ramp)));
            else if (i >= spec.length - ramp)
                win = 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(spec.length - 1 - i) /
                                            static_cast<double>(ramp)));
        }
        out.samples[i] = spec.amplitude * win * std::cos(phase);
    }
    return out;
}

Signal make_multitone(const TestSignalSpec& spec) {
    if (spec.tones.empty())
        throw validation_error("multitone requires at least one frequency");
    Signal out;
    out.sample_rate = spec.sample_rate;
    out.samples.resize(spec.length);
    for (std::size_t i = 0; i < spec.length; ++i) {
        const double t = static_cast<double>(i) / spec.sample_rate;
        double v = 0.0;
        for (double f : spec.tones) v += std::cos(2.0 * std::numbers::pi * f * t);
        out.samples[i] = spec.amplitude * v;
    }
    return out;
}

Signal make_power_law_noise(const TestSignalSpec& spec) {
    if (!std::isfinite(spec.exponent))
        throw validation_error("power_law_noise exponent must be finite");
    if (!(spec.band_lo > 0.0) || !(spec.band_hi > spec.band_lo))
        throw validation_error("power_law_noise band must satisfy 0 < lo < hi");
    if (!detail::is_power_of_two(spec.length))
        throw validation_error("power_law_noise length must be a power of two", "length");

    const std::size_t n = spec.length;
    const double df = spec.sample_rate / static_cast<double>(n);
    NormalSource normal(spec.seed);
    std::vector<cplx> bins(n, cplx{0.0, 0.0});
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double f = static_cast<double>(k) * df;
        // draw for every positive bin so the band choice does not change the
        // stream alignment of other bins
        const double g1 = normal();
        const double g2 = normal();
        if (f < spec.band_lo || f > spec.band_hi) continue;
        const double amp = spec.amplitude * std::pow(f, spec.exponent / 2.0) / std::sqrt(2.0);
        bins[k] = amp * cplx{g1, g2};
        bins[n - k] = std::conj(bins[k]);
    }
    Spectrum spec_out;
    spec_out.bins = std::move(bins);
    spec_out.sample_rate = spec.sample_rate;
    spec_out.source_length = n;
    Signal out = ifft(spec_out);
    for (auto& s : out.samples) s = cplx{s.real(), 0.0};
    return out;
}

Signal make_impulse(const TestSignalSpec& spec) {
    if (spec.impulse_index >= spec.length)
        throw validation_error("impulse index out of range");
    Signal out;
    out.sample_rate = spec.sample_rate;
    out.samples.assign(spec.length, cplx{0.0, 0.0});
    out.samples[spec.impulse_index] = spec.amplitude;
    return out;
}

} // namespace

Signal generate_test_signal(const TestSignalSpec& spec) {
    if (spec.length < 2)
        throw validation_error("test signal length must be at least 2", "length");
    if (spec.sample_rate <= 0.0)
        throw validation_error("sample_rate must be positive");
    switch (spec.kind) {
    case TestSignalKind::chirp: return make_chirp(spec);
    case TestSignalKind::multitone: return make_multitone(spec);
    case TestSignalKind::power_law_noise: return make_power_law_noise(spec);
    case TestSignalKind::impulse: return make_impulse(spec);
    }
    throw validation_error("unknown test signal kind");
}

namespace {

Signal load_csv(const std::filesystem::path& path, std::optional<double> rate) {
    std::ifstream in(path);
    if (!in)
        throw validation_error("cannot open " + path.string(), "io");

    std::vector<double> times;
    std::vector<cplx> values;
    bool has_time_column = false;
    bool column_count_known = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::vector<double> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(tok, &used);
                while (used < tok.size() && (tok[used] == ' ' || tok[used] == '\t' || tok[used] == '\r')) ++used;
                if (used != tok.size())
                    throw parse_error("trailing characters in field '" + tok + "'", lineno);
                fields.push_back(v);
            } catch (const std::invalid_argument&) {
                throw parse_error("cannot parse field '" + tok + "'", lineno);
            } catch (const std::out_of_range&) {
                throw parse_error("value out of range in field '" + tok + "'", lineno);
            }
        }
        if (fields.empty()) continue;
        if (!column_count_known) {
            has_time_column = fields.size() >= 2;
            column_count_known = true;
        }
        if (has_time_column) {
            if (fields.size() < 2 || fields.size() > 3)
                throw parse_error("expected 2 or 3 columns", lineno);
            times.push_back(fields[0]);
            values.emplace_back(fields[1], fields.size() == 3 ? fields[2] : 0.0);
        } else {
            if (fields.size() != 1)
                throw parse_error("expected 1 column", lineno);
            values.emplace_back(fields[0], 0.0);
        }
    }
    if (values.size() < 2)
        throw validation_error("CSV file " + path.string() + " holds fewer than 2 samples", "length");

    Signal out;
    out.samples = std::move(values);
    if (has_time_column) {
        const double dt0 = times[1] - times[0];
        if (dt0 <= 0.0)
            throw validation_error("time column must be strictly increasing");
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double dt = times[i] - times[i - 1];
            if (std::abs(dt - dt0) > 1e-9 * std::abs(dt0))
                throw parse_error("time column is not uniform (step " + std::to_string(dt) +
                                      " vs " + std::to_string(dt0) + ")",
                                  i + 1);
        }
        out.sample_rate = 1.0 / dt0;
        out.start_time = times[0];
    } else {
        if (!rate)
            throw validation_error("single-column CSV requires an explicit sample rate");
        out.sample_rate = *rate;
    }
    return out;
}

Signal load_f64le(const std::filesystem::path& path, std::optional<double> rate) {
    if (!rate)
        throw validation_error("f64le format requires an explicit sample rate");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw validation_error("cannot open " + path.string(), "io");
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    if (bytes % sizeof(double) != 0)
        throw validation_error("f64le file size is not a multiple of 8 bytes", "parse");
    std::vector<double> raw(bytes / sizeof(double));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(bytes));
    if (!in)
        throw validation_error("short read on " + path.string(), "io");
    Signal out;
    out.sample_rate = *rate;
    out.samples.reserve(raw.size());
    for (double v : raw) out.samples.emplace_back(v, 0.0);
    return out;
}

} // namespace

Signal load_signal(const std::filesystem::path& path, SignalFormat format, std::optional<double> rate) {
    switch (format) {
    case SignalFormat::csv: return load_csv(path, rate);
    case SignalFormat::f64le: return load_f64le(path, rate);
    }
    throw validation_error("unknown signal format");
}

void save_signal(const Signal& signal, const std::filesystem::path& path, SignalFormat format) {
    if (format == SignalFormat::f64le) {
        if (signal.max_imag() != 0.0)
            throw validation_error("f64le stores real signals only; use CSV for complex data");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw validation_error("cannot open " + path.string() + " for writing", "io");
        for (const auto& s : signal.samples) {
            const double v = s.real();
            out.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
        return;
    }

    std::ofstream out(path);
    if (!out)
        throw validation_error("cannot open " + path.string() + " for writing", "io");
    const bool complex = signal.max_imag() != 0.0;
    char buf[128];
    for (std::size_t i = 0; i < signal.samples.size(); ++i) {
        const double t = signal.start_time + static_cast<double>(i) / signal.sample_rate;
        if (complex)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t, signal.samples[i].real(),
                          signal.samples[i].imag());
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, signal.samples[i].real());
        out << buf;
    }
}

} // namespace scalefilt
