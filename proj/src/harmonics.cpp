#include "chbkit/harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fmt/format.h>

namespace chbkit {

double rms_analytic(int levels)
{
    validate_levels(levels);
    const int n = (levels - 1) / 2;
    double sum_steps = 0.0;
    for (int i = 0; i < n; ++i) {
        sum_steps += std::asin(static_cast<double>(2 * i + 1) / (levels - 1)) * (2 * i + 1);
    }
    return std::sqrt(1.0 - (2.0 / (kPi * n * n)) * sum_steps);
}

double fourier_bh(int levels, int h)
{
    validate_levels(levels);
    if (h < 1) {
        throw Error(ErrorCode::NonPositive, fmt::format("harmonic order must be positive, got {}", h));
    }
    if (h % 2 == 0) {
        throw Error(ErrorCode::EvenHarmonic,
                    fmt::format("harmonic {} is even; a half-wave symmetric staircase has none", h));
    }
    const SwitchingAngles angles(levels);
    double sum = 0.0;
    for (double a : angles.angles()) {
        sum += std::cos(h * a);
    }
    const int n = static_cast<int>(angles.size());
    return 4.0 / (kPi * h * n) * sum;
}

double first_harmonic_rms(int levels)
{
    validate_levels(levels);
    const int n = (levels - 1) / 2;
    double sum_steps = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(2 * i + 1) / (levels - 1);
        sum_steps += std::sqrt(1.0 - x * x);
    }
    return (8.0 / (kPi * (levels - 1))) * sum_steps / std::sqrt(2.0);
}

ThdReport thd_analytic(int levels)
{
    const double rms = rms_analytic(levels);
    const double fund = first_harmonic_rms(levels);
    return ThdReport{rms, fund, std::sqrt(rms * rms - fund * fund) / fund};
}

double rms_numeric(const Waveform& w)
{
    if (w.size() == 0) {
        throw Error(ErrorCode::EmptyWaveform, "waveform has no samples");
    }
    double sum = 0.0;
    for (double x : w.samples()) {
        sum += x * x;
    }
    return std::sqrt(sum / static_cast<double>(w.size()));
}

HarmonicSpectrum spectrum(const Waveform& w, int max_h)
{
    if (max_h < 1) {
        throw Error(ErrorCode::NonPositive, fmt::format("max harmonic must be positive, got {}", max_h));
    }
    if (!(max_h * w.f0() < w.sample_rate() / 2.0)) {
        throw Error(ErrorCode::NyquistViolation,
                    fmt::format("harmonic {} at {} Hz is not below Nyquist ({} Hz)", max_h, max_h * w.f0(),
                                w.sample_rate() / 2.0));
    }
    const auto m = static_cast<std::int64_t>(w.size());
    const auto periods = static_cast<std::int64_t>(w.periods());

    // Phase table over the whole span; harmonic h advances h*periods entries per sample.
    std::vector<std::complex<double>> table(static_cast<std::size_t>(m));
    for (std::int64_t j = 0; j < m; ++j) {
        const double angle = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
        table[static_cast<std::size_t>(j)] = {std::cos(angle), std::sin(angle)};
    }

    const auto x = w.samples();
    std::vector<HarmonicEntry> entries;
    entries.reserve(static_cast<std::size_t>(max_h));
    for (int h = 1; h <= max_h; ++h) {
        const std::int64_t stride = (static_cast<std::int64_t>(h) * periods) % m;
        double re = 0.0;
        double im = 0.0;
        std::int64_t idx = 0;
        for (std::int64_t k = 0; k < m; ++k) {
            const auto& t = table[static_cast<std::size_t>(idx)];
            re += x[static_cast<std::size_t>(k)] * t.real();
            im += x[static_cast<std::size_t>(k)] * t.imag();
            idx += stride;
            if (idx >= m) {
                idx -= m;
            }
        }
        const double a = 2.0 * re / static_cast<double>(m);
        const double b = 2.0 * im / static_cast<double>(m);
        entries.push_back({h, std::sqrt(a * a + b * b) / std::sqrt(2.0)});
    }
    return HarmonicSpectrum(w.f0(), std::move(entries));
}

ThdReport thd_numeric(const Waveform& w)
{
    const double total = rms_numeric(w);
    const double fund = spectrum(w, 1).amplitude(1);
    if (fund == 0.0 || fund < 1e-12 * total) {
        throw Error(ErrorCode::ZeroFundamental,
                    fmt::format("fundamental RMS {} is negligible against total RMS {}", fund, total));
    }
    const double distortion = std::sqrt(std::max(0.0, total * total - fund * fund));
    return ThdReport{total, fund, distortion / fund};
}

double lc_filter_gain(double hz, double lf, double cf, double r_load)
{
    if (!(lf > 0.0) || !(cf > 0.0) || !(r_load > 0.0)) {
        throw Error(ErrorCode::NonPositive, "filter inductance, capacitance and load must be positive");
    }
    const std::complex<double> s{0.0, 2.0 * kPi * hz};
    return std::abs(1.0 / (1.0 + s * (lf / r_load) + s * s * (lf * cf)));
}

HarmonicSpectrum filtered_spectrum(const HarmonicSpectrum& s, double lf, double cf, double r_load)
{
    std::vector<HarmonicEntry> out;
    out.reserve(s.entries().size());
    for (const auto& e : s.entries()) {
        out.push_back({e.order, e.rms * lc_filter_gain(e.order * s.f0(), lf, cf, r_load)});
    }
    if (out.empty()) {
        // Still validate the component values.
        lc_filter_gain(s.f0(), lf, cf, r_load);
    }
    return HarmonicSpectrum(s.f0(), std::move(out));
}

}  // namespace chbkit
