#include <doctest.h>

#include "scalefilt/errors.hpp"
#include "scalefilt/harness.hpp"
#include "scalefilt/wavelet.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

using namespace scalefilt;

namespace {

Signal band_limited_noise(std::size_t n, double rate, double f_lo, double f_hi, unsigned seed) {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::power_law_noise;
    spec.length = n;
    spec.sample_rate = rate;
    spec.exponent = 0.0;
    spec.band_lo = f_lo;
    spec.band_hi = f_hi;
    spec.seed = seed;
    return generate_test_signal(spec);
}

Signal test_chirp(std::size_t n = 4096) {
    TestSignalSpec spec;
    spec.kind = TestSignalKind::chirp;
    spec.length = n;
    spec.sample_rate = static_cast<double>(n);
    spec.chirp_f0 = 32.0;
    spec.chirp_f1 = 192.0;
    return generate_test_signal(spec);
}

double psi_mag(const Wavelet& w, double f) { return std::abs(w.spectral_fn(f)); }

} // namespace

TEST_CASE("cauchy wavelet moments agree with the Gamma closed form") {
    const Wavelet w = cauchy_wavelet(1.0);
    CHECK(std::abs(w.spectral_fn(-1.0)) == 0.0);
    CHECK(std::abs(w.spectral_fn(0.0)) == 0.0);

    const double m0 = w.density_mellin(cplx{0.0, 0.0}).real();
    CHECK(m0 == doctest::Approx(1.0 / (16.0 * std::numbers::pi * std::numbers::pi)).epsilon(1e-12));
    const double m1 = w.density_mellin(cplx{1.0, 0.0}).real();
    CHECK(m1 == doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-12));

    CHECK_THROWS_AS((void)cauchy_wavelet(0.0), validation_error);
    CHECK_THROWS_AS((void)w.density_mellin(cplx{2.0, 0.0}), divergence_error);
}

TEST_CASE("sampled wavelet tracks the closed-form family it was sampled from") {
    std::vector<double> fs;
    std::vector<cplx> vs;
    for (double f = 0.0; f <= 16.0; f += 5e-4) {
        fs.push_back(f);
        vs.emplace_back(f > 0.0 ? f * std::exp(-2.0 * std::numbers::pi * f) : 0.0, 0.0);
    }
    const Wavelet w = sampled_wavelet(fs, vs);
    const Wavelet ref = cauchy_wavelet(1.0);

    for (double f : {0.05, 0.2, 0.7, 1.3}) {
        CHECK(std::abs(w.spectral_fn(f) - ref.spectral_fn(f)) < 1e-6 * psi_mag(ref, f));
    }
    const double m0 = w.density_mellin(cplx{0.0, 0.0}).real();
    const double ref0 = ref.density_mellin(cplx{0.0, 0.0}).real();
    CHECK(std::abs(m0 - ref0) < 1e-6 * ref0);
}

TEST_CASE("sampled wavelet rejections") {
    // support leaking to f <= 0
    {
        std::vector<double> fs{-1.0, 0.5, 1.0, 2.0, 3.0};
        std::vector<cplx> vs{cplx{0.3, 0.0}, cplx{1.0, 0.0}, cplx{0.5, 0.0}, cplx{0.2, 0.0},
                             cplx{0.1, 0.0}};
        CHECK_THROWS_AS((void)sampled_wavelet(fs, vs), admissibility_error);
    }
    // density ~ 1/f^2 toward zero: the zeroth moment diverges
    {
        std::vector<double> fs;
        std::vector<cplx> vs;
        for (double f = 1e-4; f <= 8.0; f *= 1.05) {
            fs.push_back(f);
            vs.emplace_back(std::exp(-f) / f, 0.0);
        }
        CHECK_THROWS_AS((void)sampled_wavelet(fs, vs), admissibility_error);
    }
}

TEST_CASE("geometric grid invariants") {
    const auto grid = ScaleTimeGrid::geometric(2.0, 6, 12);
    REQUIRE(grid.scale_count() == 72);
    const double ratio = grid.scales[1] / grid.scales[0];
    for (std::size_t j = 1; j < grid.scale_count(); ++j)
        CHECK(grid.scales[j] / grid.scales[j - 1] == doctest::Approx(ratio).epsilon(1e-12));

    for (double wgt : grid.scale_weights) CHECK(wgt > 0.0);
    double total = 0.0;
    for (double wgt : grid.scale_weights) total += wgt;
    const double half_step = std::pow(2.0, 0.5 / 12.0);
    const double covered = grid.scales.back() * half_step - grid.scales.front() / half_step;
    CHECK(total == doctest::Approx(covered).epsilon(1e-3));

    CHECK_THROWS_AS((void)ScaleTimeGrid::geometric(-1.0, 4, 4), validation_error);
}

TEST_CASE("transform of zero is zero") {
    Signal zero;
    zero.sample_rate = 256.0;
    zero.samples.assign(256, cplx{0.0, 0.0});
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(4.0, 6, 4);
    const Scaleogram sg = cwt_forward(zero, w, grid);
    for (const auto& v : sg.data) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("transform of a complex tone has constant modulus |psi_hat(f0/sigma)|/sigma") {
    const std::size_t n = 256;
    const double f0 = 32.0;
    Signal s;
    s.sample_rate = 256.0;
    s.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / s.sample_rate;
        s.samples[i] = std::exp(cplx{0.0, 2.0 * std::numbers::pi * f0 * t});
    }
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(16.0, 5, 4);
    const Scaleogram sg = cwt_forward(s, w, grid);
    for (std::size_t j = 0; j < grid.scale_count(); ++j) {
        const double sigma = grid.scales[j];
        const double want = psi_mag(w, f0 / sigma) / sigma;
        for (const auto& v : sg.row(j))
            CHECK(std::abs(v) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("per-scale Plancherel identity holds at every grid scale") {
    const Signal x = band_limited_noise(2048, 2048.0, 16.0, 256.0, 21);
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(8.0, 8, 8);
    const Scaleogram sg = cwt_forward(x, w, grid);
    const auto energies = scale_energies(sg);

    const Spectrum spec = fft(pad_to_pow2(x));
    const double df = spec.bin_spacing();
    double e_max = *std::max_element(energies.begin(), energies.end());
    for (std::size_t j = 0; j < grid.scale_count(); ++j) {
        const double sigma = grid.scales[j];
        double rhs = 0.0;
        for (std::size_t k = 1; k < spec.bins.size() / 2; ++k) {
            const double f = static_cast<double>(k) * df;
            rhs += w.spectral_density(f / sigma) * std::norm(spec.bins[k]) * df;
        }
        rhs /= sigma;
        CHECK(std::abs(energies[j] - rhs) <= 1e-6 * (rhs + 1e-15 * e_max));
    }
}

TEST_CASE("forward transform and synthesis are linear") {
    const Signal a = band_limited_noise(512, 512.0, 8.0, 64.0, 3);
    const Signal b = band_limited_noise(512, 512.0, 8.0, 64.0, 4);
    const cplx ca{1.7, -0.3};
    const cplx cb{-0.4, 0.9};
    Signal mix = a;
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix.samples[i] = ca * a.samples[i] + cb * b.samples[i];

    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(8.0, 5, 6);
    const Scaleogram sa = cwt_forward(a, w, grid);
    const Scaleogram sb = cwt_forward(b, w, grid);
    const Scaleogram sm = cwt_forward(mix, w, grid);
    double worst = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < sm.data.size(); ++i) {
        worst = std::max(worst, std::abs(sm.data[i] - (ca * sa.data[i] + cb * sb.data[i])));
        ref = std::max(ref, std::abs(sm.data[i]));
    }
    CHECK(worst < 1e-12 * ref);

    // synthesis side: reconstruct(a*S1 + b*S2) = a*reconstruct(S1) + b*reconstruct(S2)
    Scaleogram combo = sa;
    for (std::size_t i = 0; i < combo.data.size(); ++i)
        combo.data[i] = ca * sa.data[i] + cb * sb.data[i];
    combo.source_dc = ca * sa.source_dc + cb * sb.source_dc;
    const Signal ra = reconstruct(sa, w, grid);
    const Signal rb = reconstruct(sb, w, grid);
    const Signal rc = reconstruct(combo, w, grid);
    double rworst = 0.0, rref = 0.0;
    for (std::size_t i = 0; i < rc.size(); ++i) {
        rworst = std::max(rworst,
                          std::abs(rc.samples[i] - (ca * ra.samples[i] + cb * rb.samples[i])));
        rref = std::max(rref, std::abs(rc.samples[i]));
    }
    CHECK(rworst < 1e-12 * rref);
}

TEST_CASE("reconstruction recovers a band-limited chirp") {
    const Signal x = test_chirp();
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(24.0, 10, 16);
    const Scaleogram sg = cwt_forward(x, w, grid);

    SUBCASE("real output against the input") {
        SynthesisOptions opt;
        opt.real_output = true;
        const Signal y = reconstruct(sg, w, grid, opt);
        CHECK(relative_l2(y, x, 0.05) < 1e-2);
    }
    SUBCASE("complex output against the positive-frequency part") {
        const Signal y = reconstruct(sg, w, grid);
        Signal half = analytic_part(x);
        for (auto& v : half.samples) v *= 0.5;
        CHECK(relative_l2(y, half, 0.05) < 1e-2);
    }
    SUBCASE("zero scaleogram synthesizes to zero") {
        Scaleogram empty = sg;
        std::fill(empty.data.begin(), empty.data.end(), cplx{0.0, 0.0});
        empty.source_dc = {0.0, 0.0};
        const Signal y = reconstruct(empty, w, grid);
        for (const auto& v : y.samples) CHECK(std::abs(v) == 0.0);
    }
}

TEST_CASE("ramp scale filter realizes d/dt-like symbol f on the analytic half") {
    // w = sigma up-weights large scales, and the order-1 density decays
    // only like f^2 toward zero frequency, so the ladder needs headroom of
    // ~11 octaves above the chirp band
    TestSignalSpec cs;
    cs.kind = TestSignalKind::chirp;
    cs.length = 4096;
    cs.sample_rate = 4096.0;
    cs.chirp_f0 = 32.0;
    cs.chirp_f1 = 96.0;
    const Signal x = generate_test_signal(cs);
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(24.0, 14, 8);
    const Scaleogram sg = cwt_forward(x, w, grid);

    const double m1 = w.density_mellin(cplx{1.0, 0.0}).real();
    ScaleFilter ramp;
    ramp.positive = [m1](double s) { return cplx{s / m1, 0.0}; };
    ramp.negative = ramp.positive;
    ramp.dc_gain = {0.0, 0.0};
    const Signal y = apply_scale_filter(sg, ramp, w, grid).output;

    // oracle: multiply the positive-frequency half of the spectrum by f
    Spectrum spec = fft(pad_to_pow2(x));
    const std::size_t m = spec.bins.size();
    for (std::size_t k = 0; k < m; ++k) {
        const double f = spec.frequency(k);
        spec.bins[k] = f > 0.0 ? spec.bins[k] * f : cplx{0.0, 0.0};
    }
    Signal oracle = ifft(spec);
    oracle.samples.resize(x.size());
    CHECK(relative_l2(y, oracle, 0.05) < 1e-2);

    SUBCASE("zero filter") {
        ScaleFilter zero;
        zero.positive = [](double) { return cplx{0.0, 0.0}; };
        zero.negative = zero.positive;
        const Signal z = apply_scale_filter(sg, zero, w, grid).output;
        for (const auto& v : z.samples) CHECK(std::abs(v) == 0.0);
    }
}

TEST_CASE("weighted energy matches the frequency-weighted norm") {
    // log-Gaussian weight centered at sigma = 1; the sample rate is chosen
    // so the covered band sits around the wavelet passband of those scales
    const Signal x = band_limited_noise(4096, 64.0, 1.0 / 16.0, 0.5, 33);
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(0x1p-3, 8, 16);
    const Scaleogram sg = cwt_forward(x, w, grid);

    ScaleFilter lg;
    lg.positive = [](double s) {
        const double u = std::log(s);
        return cplx{std::exp(-u * u), 0.0};
    };
    lg.negative = lg.positive;
    const double lhs = weighted_energy(sg, lg);

    // right-hand side: independent quadrature of W = scaling_convolve(w, Psi)
    const Spectrum spec = fft(pad_to_pow2(x));
    const double df = spec.bin_spacing();
    std::vector<double> fs;
    for (std::size_t k = 1; k < spec.bins.size() / 2; ++k)
        fs.push_back(static_cast<double>(k) * df);
    const auto conv = scaling_convolve([&lg](double s) { return lg.positive(s); },
                                       w.spectral_density, fs);
    double rhs = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i)
        rhs += conv.values[i].real() * std::norm(spec.bins[i + 1]) * df;

    CHECK(std::abs(lhs - rhs) < 1e-3 * rhs);

    SUBCASE("doubling the weight doubles the energy exactly") {
        ScaleFilter lg2;
        lg2.positive = [&lg](double s) { return 2.0 * lg.positive(s); };
        lg2.negative = lg2.positive;
        CHECK(weighted_energy(sg, lg2) == doctest::Approx(2.0 * lhs).epsilon(1e-14));
    }
    SUBCASE("zero signal has zero weighted energy") {
        Signal zero = x;
        std::fill(zero.samples.begin(), zero.samples.end(), cplx{0.0, 0.0});
        const Scaleogram sgz = cwt_forward(zero, w, grid);
        CHECK(weighted_energy(sgz, lg) == 0.0);
    }
    SUBCASE("negative weights are rejected") {
        ScaleFilter bad;
        bad.positive = [](double s) { return cplx{s - 1.0, 0.0}; };
        bad.negative = bad.positive;
        CHECK_THROWS_AS((void)weighted_energy(sg, bad), validation_error);
    }
}

TEST_CASE("weighted pairing: polarization, disjoint bands, conjugate symmetry") {
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(2.0, 9, 8);
    const Signal a = band_limited_noise(2048, 2048.0, 8.0, 16.0, 41);
    const Signal b = band_limited_noise(2048, 2048.0, 64.0, 128.0, 42);
    const Scaleogram sa = cwt_forward(a, w, grid);
    const Scaleogram sb = cwt_forward(b, w, grid);

    ScaleFilter lg;
    lg.positive = [](double s) {
        const double u = std::log(s / 16.0);
        return cplx{std::exp(-0.25 * u * u), 0.0};
    };
    lg.negative = lg.positive;

    const cplx self = weighted_inner_product(sa, sa, lg);
    CHECK(self.real() == doctest::Approx(weighted_energy(sa, lg)).epsilon(1e-12));
    CHECK(std::abs(self.imag()) < 1e-12 * self.real());

    const cplx cross = weighted_inner_product(sa, sb, lg);
    const double scale = std::sqrt(weighted_energy(sa, lg) * weighted_energy(sb, lg));
    CHECK(std::abs(cross) < 1e-6 * scale);

    const cplx fwd = weighted_inner_product(sa, sb, lg);
    const cplx rev = weighted_inner_product(sb, sa, lg);
    CHECK(std::abs(fwd - std::conj(rev)) < 1e-12 * (std::abs(fwd) + 1e-30));
}

TEST_CASE("synthesis validates its inputs") {
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(8.0, 4, 4);
    const Signal x = band_limited_noise(256, 256.0, 4.0, 32.0, 5);
    const Scaleogram sg = cwt_forward(x, w, grid);

    const auto other = ScaleTimeGrid::geometric(9.0, 4, 4);
    ScaleFilter unit;
    unit.positive = [](double) { return cplx{1.0, 0.0}; };
    unit.negative = unit.positive;
    CHECK_THROWS_AS((void)apply_scale_filter(sg, unit, w, other), validation_error);

    ScaleFilter banded = unit;
    banded.sample_band = std::make_pair(10.0, 20.0);
    CHECK_THROWS_AS((void)apply_scale_filter(sg, banded, w, grid), numeric_error);

    const auto neg_grid = ScaleTimeGrid::geometric(8.0, 4, 4, true);
    const Scaleogram sgn = cwt_forward(x, w, neg_grid);
    SynthesisOptions opt;
    opt.real_output = true;
    CHECK_THROWS_AS((void)apply_scale_filter(sgn, unit, w, neg_grid, opt), validation_error);
}

TEST_CASE("scaleogram serialization round trip") {
    const Wavelet w = cauchy_wavelet(1.0);
    const auto grid = ScaleTimeGrid::geometric(8.0, 4, 4);
    const Signal x = band_limited_noise(256, 256.0, 4.0, 32.0, 6);
    const Scaleogram sg = cwt_forward(x, w, grid);

    const auto path = std::filesystem::temp_directory_path() / "scalefilt_test_sg.bin";
    save_scaleogram(sg, path);
    const Scaleogram back = load_scaleogram(path);
    REQUIRE(back.row_count() == sg.row_count());
    REQUIRE(back.padded_length == sg.padded_length);
    CHECK(back.grid.same_scales(sg.grid));
    CHECK(back.source_dc == sg.source_dc);
    double max_err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < sg.data.size(); ++i) {
        max_err = std::max(max_err, std::abs(back.data[i] - sg.data[i]));
        ref = std::max(ref, std::abs(sg.data[i]));
    }
    CHECK(max_err < 1e-6 * ref); // float32 payload
    std::filesystem::remove(path);

    const auto csv = std::filesystem::temp_directory_path() / "scalefilt_test_sg.csv";
    export_scaleogram_csv(sg, csv);
    CHECK(std::filesystem::file_size(csv) > 0);
    std::filesystem::remove(csv);
}
