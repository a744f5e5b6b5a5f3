#include <doctest.h>

#include "scalefilt/errors.hpp"
#include "scalefilt/signal.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

using namespace scalefilt;

namespace {

// O(N^2) reference transform with the same dt-weighted convention.
std::vector<cplx> direct_dft(const std::vector<cplx>& x, double rate) {
    const std::size_t n = x.size();
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const double arg = -2.0 * std::numbers::pi * static_cast<double>(k * m % n) /
                               static_cast<double>(n);
            acc += x[m] * cplx{std::cos(arg), std::sin(arg)};
        }
        out[k] = acc / rate;
    }
    return out;
}

Signal random_signal(std::size_t n, unsigned seed, double rate = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Signal s;
    s.sample_rate = rate;
    s.samples.resize(n);
    for (auto& v : s.samples) v = {dist(rng), dist(rng)};
    return s;
}

std::filesystem::path temp_file(const char* stem) {
    return std::filesystem::temp_directory_path() / (std::string("scalefilt_test_") + stem);
}

} // namespace

TEST_CASE("fft of a constant concentrates at DC") {
    Signal s;
    s.sample_rate = 4.0;
    s.samples = {1.0, 1.0, 1.0, 1.0};
    const Spectrum spec = fft(s);
    CHECK(spec.bins[0].real() == doctest::Approx(1.0)); // N * dt * 1
    for (std::size_t k = 1; k < 4; ++k) CHECK(std::abs(spec.bins[k]) < 1e-15);
}

TEST_CASE("fft of a unit impulse is flat") {
    Signal s;
    s.sample_rate = 8.0;
    s.samples.assign(8, cplx{0.0, 0.0});
    s.samples[0] = 1.0;
    const Spectrum spec = fft(s);
    for (const auto& b : spec.bins) CHECK(std::abs(b) == doctest::Approx(s.dt()).epsilon(1e-12));
}

TEST_CASE("fft of a cosine matches the direct DFT sum and splits energy at +-8") {
    const std::size_t n = 64;
    Signal s;
    s.sample_rate = 64.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / s.sample_rate;
        s.samples[i] = std::cos(2.0 * std::numbers::pi * 8.0 * t);
    }
    const Spectrum spec = fft(s);
    const auto ref = direct_dft(s.samples, s.sample_rate);
    for (std::size_t k = 0; k < n; ++k)
        CHECK(std::abs(spec.bins[k] - ref[k]) < 1e-12);

    const double e8 = std::norm(spec.bins[8]);
    const double e_neg8 = std::norm(spec.bins[n - 8]);
    CHECK(e8 == doctest::Approx(e_neg8).epsilon(1e-12));
    double total = 0.0, peaks = 0.0;
    for (std::size_t k = 0; k < n; ++k) total += std::norm(spec.bins[k]);
    peaks = e8 + e_neg8;
    CHECK(peaks == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("ifft inverts fft to round-off") {
    const Signal s = random_signal(1024, 7, 32.0);
    const Signal back = ifft(fft(s));
    double max_err = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        max_err = std::max(max_err, std::abs(back.samples[i] - s.samples[i]));
    CHECK(max_err < 1e-12);
}

TEST_CASE("zero spectrum inverts to the zero signal") {
    Spectrum spec;
    spec.bins.assign(16, cplx{0.0, 0.0});
    spec.sample_rate = 16.0;
    spec.source_length = 16;
    const Signal s = ifft(spec);
    for (const auto& v : s.samples) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("Hermitian spectra invert to real signals") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t n = 256;
    Spectrum spec;
    spec.sample_rate = 256.0;
    spec.source_length = n;
    spec.bins.assign(n, cplx{0.0, 0.0});
    spec.bins[0] = dist(rng);
    spec.bins[n / 2] = dist(rng);
    for (std::size_t k = 1; k < n / 2; ++k) {
        spec.bins[k] = {dist(rng), dist(rng)};
        spec.bins[n - k] = std::conj(spec.bins[k]);
    }
    const Signal s = ifft(spec);
    CHECK(s.max_imag() < 1e-12);
}

TEST_CASE("Parseval holds for random signals up to 2^14") {
    for (std::size_t n : {std::size_t(256), std::size_t(4096), std::size_t(16384)}) {
        const Signal s = random_signal(n, static_cast<unsigned>(n), 100.0);
        const Spectrum spec = fft(s);
        double et = 0.0, ef = 0.0;
        for (const auto& v : s.samples) et += std::norm(v);
        et *= s.dt();
        for (const auto& b : spec.bins) ef += std::norm(b);
        ef *= spec.bin_spacing();
        CHECK(std::abs(et - ef) < 1e-12 * et);
    }
}

TEST_CASE("fft rejects non power-of-two lengths") {
    Signal s = random_signal(48, 1);
    CHECK_THROWS_AS((void)fft(s), validation_error);
    CHECK_NOTHROW((void)fft(pad_to_pow2(s)));
}

TEST_CASE("analytic_part of a cosine is the complex exponential") {
    const std::size_t n = 256;
    Signal s;
    s.sample_rate = 256.0;
    s.samples.resize(n);
    const double f0 = 16.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / s.sample_rate;
        s.samples[i] = std::cos(2.0 * std::numbers::pi * f0 * t);
    }
    const Signal z = analytic_part(s);

    // independent oracle: zero the negative bins, double the positive ones
    Spectrum spec = fft(s);
    for (std::size_t k = 1; k < n / 2; ++k) spec.bins[k] *= 2.0;
    for (std::size_t k = n / 2 + 1; k < n; ++k) spec.bins[k] = 0.0;
    const Signal oracle = ifft(spec);
    for (std::size_t i = 0; i < n; ++i)
        CHECK(std::abs(z.samples[i] - oracle.samples[i]) < 1e-12);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / s.sample_rate;
        const cplx want = std::exp(cplx{0.0, 2.0 * std::numbers::pi * f0 * t});
        CHECK(std::abs(z.samples[i] - want) < 1e-10);
    }
}

TEST_CASE("analytic_part fixed points and projections") {
    Signal zero;
    zero.sample_rate = 8.0;
    zero.samples.assign(64, cplx{0.0, 0.0});
    const Signal az = analytic_part(zero);
    for (const auto& v : az.samples) CHECK(std::abs(v) == 0.0);

    Signal s = random_signal(512, 11, 64.0);
    for (auto& v : s.samples) v = cplx{v.real(), 0.0};
    const Signal once = analytic_part(s);

    // Re(analytic) == input
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(once.samples[i].real() - s.samples[i].real()) < 1e-12);

    // idempotent on the already-analytic spectrum
    Spectrum sp = fft(once);
    for (std::size_t k = 1; k < sp.bins.size() / 2; ++k) {
        // spectrum vanishes for f < 0
        CHECK(std::abs(sp.bins[sp.bins.size() - k]) < 1e-12);
    }

    CHECK_THROWS_AS((void)analytic_part(once), validation_error); // complex input rejected
}

TEST_CASE("impulse test signal is a delta") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::impulse;
    spec.length = 16;
    const Signal s = generate_test_signal(spec);
    CHECK(s.samples[0] == cplx{1.0, 0.0});
    for (std::size_t i = 1; i < 16; ++i) CHECK(std::abs(s.samples[i]) == 0.0);
}

TEST_CASE("multitone peaks at the requested bins") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::multitone;
    spec.length = 256;
    spec.sample_rate = 256.0;
    spec.tones = {4.0, 12.0};
    const Signal s = generate_test_signal(spec);
    const auto ref = direct_dft(s.samples, s.sample_rate);
    const Spectrum sp = fft(s);
    for (std::size_t k = 0; k < 256; ++k) CHECK(std::abs(sp.bins[k] - ref[k]) < 1e-12);
    for (std::size_t k = 1; k < 128; ++k) {
        const double mag = std::abs(sp.bins[k]);
        if (k == 4 || k == 12)
            CHECK(mag > 0.4);
        else
            CHECK(mag < 1e-10);
    }
}

TEST_CASE("power-law noise has the requested spectral slope") {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::power_law_noise;
    spec.length = 4096;
    spec.sample_rate = 4096.0;
    spec.exponent = -5.0 / 3.0;
    spec.band_lo = 8.0;
    spec.band_hi = 512.0;
    spec.seed = 1;
    const Signal s = generate_test_signal(spec);
    CHECK(s.max_imag() == 0.0);

    // deterministic in the seed
    const Signal again = generate_test_signal(spec);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.samples[i] == again.samples[i]);

    // averaged periodogram over log-spaced groups, then log-log regression
    const Spectrum sp = fft(s);
    const double df = sp.bin_spacing();
    std::vector<double> lx, ly;
    double f_lo = 8.0;
    while (f_lo * std::numbers::sqrt2 <= 512.0) {
        const double f_hi = f_lo * std::numbers::sqrt2;
        double acc = 0.0;
        int count = 0;
        for (std::size_t k = 1; k < sp.bins.size() / 2; ++k) {
            const double f = static_cast<double>(k) * df;
            if (f < f_lo || f >= f_hi) continue;
            acc += std::norm(sp.bins[k]);
            ++count;
        }
        if (count > 0) {
            lx.push_back(std::log(std::sqrt(f_lo * f_hi)));
            ly.push_back(std::log(acc / count));
        }
        f_lo = f_hi;
    }
    const auto n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - (-5.0 / 3.0)) < 0.15);
}

TEST_CASE("CSV save/load round trip") {
    const auto path = temp_file("roundtrip.csv");
    Signal s = random_signal(64, 5, 32.0);
    for (auto& v : s.samples) v = cplx{v.real(), 0.0};
    save_signal(s, path, SignalFormat::csv);
    const Signal back = load_signal(path, SignalFormat::csv);
    REQUIRE(back.size() == s.size());
    CHECK(back.sample_rate == doctest::Approx(32.0).epsilon(1e-12));
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(std::abs(back.samples[i] - s.samples[i]) < 1e-15);
    std::filesystem::remove(path);
}

TEST_CASE("CSV accepts one column with an explicit rate and skips comments") {
    const auto path = temp_file("onecol.csv");
    {
        std::ofstream out(path);
        out << "# amplitude only\n1.5\n-0.25\n3.0\n";
    }
    const Signal s = load_signal(path, SignalFormat::csv, 10.0);
    REQUIRE(s.size() == 3);
    CHECK(s.sample_rate == 10.0);
    CHECK(s.samples[1].real() == -0.25);
    CHECK_THROWS_AS((void)load_signal(path, SignalFormat::csv), validation_error);
    std::filesystem::remove(path);
}

TEST_CASE("CSV rejects a non-uniform time column naming the line") {
    const auto path = temp_file("nonuniform.csv");
    {
        std::ofstream out(path);
        out << "0.0,1.0\n0.1,2.0\n0.25,3.0\n0.35,4.0\n";
    }
    try {
        (void)load_signal(path, SignalFormat::csv);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 3);
    }
    std::filesystem::remove(path);
}

TEST_CASE("f64le round trip is byte-exact") {
    const auto path = temp_file("raw.f64le");
    Signal s = random_signal(4096, 9, 1000.0);
    for (auto& v : s.samples) v = cplx{v.real(), 0.0};
    save_signal(s, path, SignalFormat::f64le);
    const Signal back = load_signal(path, SignalFormat::f64le, 1000.0);
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(back.samples[i].real() == s.samples[i].real());

    const auto second = temp_file("raw2.f64le");
    save_signal(back, second, SignalFormat::f64le);
    std::ifstream a(path, std::ios::binary), b(second, std::ios::binary);
    const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
    const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
    CHECK(bytes_a == bytes_b);
    CHECK_THROWS_AS(save_signal(random_signal(8, 2), second, SignalFormat::f64le),
                    validation_error);
    std::filesystem::remove(path);
    std::filesystem::remove(second);
}
