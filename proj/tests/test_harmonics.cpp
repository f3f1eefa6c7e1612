#include "doctest.h"

#include "chbkit/harmonics.hpp"
#include "chbkit/modulation.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace chbkit;

namespace {

Waveform sampled(double (*fn)(double), int samples_per_period, int periods = 1)
{
    std::vector<double> x(static_cast<std::size_t>(samples_per_period * periods));
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = fn(2.0 * kPi * static_cast<double>(k) / samples_per_period);
    }
    return Waveform(std::move(x), samples_per_period * 60.0, 60.0);
}

double unit_sine(double theta) { return std::sin(theta); }
double square(double theta) { return std::fmod(theta, 2.0 * kPi) < kPi ? 1.0 : -1.0; }
double constant(double) { return 1.0; }

}  // namespace

TEST_CASE("rms_analytic")
{
    CHECK(rms_analytic(3) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
    CHECK(rms_analytic(5) == doctest::Approx(0.7449).epsilon(5e-4 / 0.7449));
    // The 7-level staircase, evaluated from its own closed form and by quadrature, is 0.727071.
    CHECK(rms_analytic(7) == doctest::Approx(0.7270713115489158).epsilon(1e-13));
    CHECK_THROWS_AS(rms_analytic(6), Error);
}

TEST_CASE("rms_analytic agrees with staircase quadrature")
{
    for (int levels : {3, 5, 7, 9, 15, 27}) {
        CAPTURE(levels);
        CHECK(rms_analytic(levels) == doctest::Approx(oracle::staircase_rms(levels)).epsilon(1e-6));
    }
}

TEST_CASE("fourier_bh")
{
    CHECK(fourier_bh(3, 1) == doctest::Approx(4.0 / kPi * std::cos(kPi / 6.0)).epsilon(1e-14));
    CHECK(fourier_bh(3, 1) == doctest::Approx(1.10266).epsilon(1e-5));
    CHECK(std::abs(fourier_bh(3, 3)) < 1e-15);
    CHECK(fourier_bh(5, 1) == doctest::Approx(1.0374888434092924).epsilon(1e-13));
    CHECK_THROWS_AS(fourier_bh(5, 2), Error);
    CHECK_THROWS_AS(fourier_bh(5, 0), Error);

    for (int levels : {3, 5, 9}) {
        for (int h : {1, 3, 5, 7, 11}) {
            CAPTURE(levels);
            CAPTURE(h);
            CHECK(fourier_bh(levels, h) == doctest::Approx(oracle::staircase_bh(levels, h, 400'000)).epsilon(1e-5).scale(1.0));
        }
    }
}

TEST_CASE("first_harmonic_rms")
{
    CHECK(first_harmonic_rms(3) == doctest::Approx(0.7796968012336761).epsilon(1e-13));
    CHECK(first_harmonic_rms(5) == doctest::Approx(0.7336153965800987).epsilon(1e-13));
    for (int levels = 3; levels <= 101; levels += 2) {
        CHECK(std::abs(first_harmonic_rms(levels) - fourier_bh(levels, 1) / std::sqrt(2.0)) < 1e-14);
        if (levels > 3) {
            CHECK(first_harmonic_rms(levels) < first_harmonic_rms(levels - 2));
        }
    }
    // Tends to the RMS of a unit sine.
    CHECK(first_harmonic_rms(2001) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("thd_analytic reproduces the reference table")
{
    const std::pair<int, double> table[] = {{3, 31.08419},  {5, 17.6012},   {7, 12.2272},    {9, 9.363669},
                                            {11, 7.587252}, {13, 6.378124}, {15, 5.502021},  {17, 4.837995},
                                            {19, 4.317328}, {21, 3.89809},  {23, 3.553263},  {25, 3.264629},
                                            {27, 3.01947}};
    for (const auto& [levels, percent] : table) {
        const auto r = thd_analytic(levels);
        CAPTURE(levels);
        CHECK(std::abs(r.thd_percent() - percent) < 1e-3);
        CHECK(r.rms_total >= r.rms_fundamental);
        CHECK(r.thd == doctest::Approx(std::sqrt(r.rms_total * r.rms_total - r.rms_fundamental * r.rms_fundamental) /
                                       r.rms_fundamental));
    }
}

TEST_CASE("analytic trends over L")
{
    for (int levels = 5; levels <= 101; levels += 2) {
        CHECK(thd_analytic(levels).thd < thd_analytic(levels - 2).thd);
        CHECK(rms_analytic(levels) < rms_analytic(levels - 2));
        CHECK(rms_analytic(levels) > 1.0 / std::sqrt(2.0));
    }
}

TEST_CASE("rms_numeric")
{
    CHECK(rms_numeric(sampled(constant, 128)) == doctest::Approx(1.0));
    CHECK(std::abs(rms_numeric(sampled(unit_sine, 4096)) - 1.0 / std::sqrt(2.0)) < 1e-4);
    const auto w5 = nls_waveform({5, 1.0, 60.0, 1.0}, 65536 * 60.0);
    CHECK(std::abs(rms_numeric(w5) - 0.7449) < 5e-4);
}

TEST_CASE("spectrum")
{
    const auto sine = spectrum(sampled(unit_sine, 4096), 20);
    CHECK(std::abs(sine.amplitude(1) - 1.0 / std::sqrt(2.0)) < 1e-4);
    for (int h = 2; h <= 20; ++h) {
        CHECK(sine.amplitude(h) < 1e-4);
    }

    const auto sq = spectrum(sampled(square, 4096), 9);
    CHECK(std::abs(sq.amplitude(3) - sq.amplitude(1) / 3.0) < 1e-3);
    CHECK(sq.amplitude(1) == doctest::Approx(4.0 / kPi / std::sqrt(2.0)).epsilon(1e-5));

    const auto l3 = spectrum(nls_waveform({3, 1.0, 60.0, 1.0}, 4096 * 60.0), 40);
    for (int h = 2; h <= 40; h += 2) {
        CHECK(l3.amplitude(h) < 1e-6);
    }

    // Multi-period spans give the same answer.
    const auto two = spectrum(sampled(square, 1024, 2), 5);
    CHECK(two.amplitude(1) == doctest::Approx(spectrum(sampled(square, 1024), 5).amplitude(1)));

    CHECK_THROWS_AS(spectrum(sampled(unit_sine, 128), 64), Error);
    CHECK_THROWS_AS(spectrum(sampled(unit_sine, 128), 0), Error);
}

TEST_CASE("thd_numeric")
{
    CHECK(thd_numeric(sampled(unit_sine, 4096)).thd < 1e-3);

    // Frozen from the brute-force odd-harmonic series through h = 1e5.
    const double series = oracle::square_wave_thd(100'000);
    CHECK(series * 100.0 == doctest::Approx(48.343).epsilon(1e-4));
    CHECK(std::abs(thd_numeric(sampled(square, 65536)).thd_percent() - 48.343) < 0.05);
    CHECK(std::abs(thd_numeric(sampled(square, 65536)).thd - series) < 5e-4);

    const auto w9 = nls_waveform({9, 1.0, 60.0, 1.0}, 65536 * 60.0);
    CHECK(std::abs(thd_numeric(w9).thd_percent() - 9.3537) < 0.05);

    CHECK_THROWS_AS(thd_numeric(sampled(constant, 128)), Error);
}

TEST_CASE("numeric and analytic THD agree for every table row")
{
    for (int levels = 3; levels <= 27; levels += 2) {
        const auto w = nls_waveform({levels, 1.0, 60.0, 1.0}, 65536 * 60.0);
        CAPTURE(levels);
        CHECK(std::abs(thd_numeric(w).thd_percent() - thd_analytic(levels).thd_percent()) <= 0.05);
    }
}

TEST_CASE("Parseval: harmonic energy through h=1e4 accounts for the time-domain RMS")
{
    for (int levels : {3, 9, 27}) {
        const auto w = nls_waveform({levels, 1.0, 60.0, 1.0}, 65536 * 60.0);
        const double total = rms_numeric(w);
        const double harmonic = spectrum(w, 10'000).total_rms();
        CAPTURE(levels);
        CHECK(harmonic * harmonic <= total * total * (1.0 + 1e-12));
        CHECK(harmonic * harmonic >= 0.995 * total * total);
    }
}

TEST_CASE("LC filter gain")
{
    const double lf = 1e-3;
    const double cf = 50e-6;
    const double fc = 1.0 / (2.0 * kPi * std::sqrt(lf * cf));

    CHECK(lc_filter_gain(fc / 100.0, lf, cf, 10.0) == doctest::Approx(1.0).epsilon(0.01));
    // Resonant peak equals the load Q, R*sqrt(C/L), for a lightly damped filter.
    const double r = 1000.0;
    CHECK(lc_filter_gain(fc, lf, cf, r) == doctest::Approx(r * std::sqrt(cf / lf)).epsilon(1e-9));
    CHECK(lc_filter_gain(fc, lf, cf, r) == doctest::Approx(oracle::lc_divider_gain(fc, lf, cf, r)).epsilon(1e-9));
    CHECK(lc_filter_gain(10.0 * fc, lf, cf, 9.04) <= 0.011);
    CHECK(lc_filter_gain(10.0 * fc, lf, cf, 1e6) <= 0.011);
    for (double f : {10.0, 300.0, 700.0, 2000.0, 1e5}) {
        CHECK(lc_filter_gain(f, lf, cf, 6.0) == doctest::Approx(oracle::lc_divider_gain(f, lf, cf, 6.0)).epsilon(1e-9));
    }

    const HarmonicSpectrum s(60.0, {{1, 1.0}, {5, 0.2}, {119, 0.1}});
    const auto filtered = filtered_spectrum(s, lf, cf, 9.0);
    CHECK(filtered.amplitude(1) == doctest::Approx(lc_filter_gain(60.0, lf, cf, 9.0)));
    CHECK(filtered.amplitude(119) < 0.1 * 0.011);
    CHECK_THROWS_AS(filtered_spectrum(s, 0.0, cf, 9.0), Error);
    CHECK_THROWS_AS(filtered_spectrum(s, lf, cf, -1.0), Error);
}
