#include "chbkit/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fmt/format.h>

namespace chbkit {

namespace {

std::int64_t samples_per_period(double sample_rate, double f0)
{
    const double p = sample_rate / f0;
    const double whole = std::round(p);
    if (whole < 1.0 || std::abs(p - whole) > 1e-9 * p) {
        throw Error(ErrorCode::NonIntegerPeriod,
                    fmt::format("sample rate {} Hz is not a whole multiple of f0 = {} Hz", sample_rate, f0));
    }
    return static_cast<std::int64_t>(whole);
}

void check_periods(int periods)
{
    if (periods < 1) {
        throw Error(ErrorCode::NonPositive, fmt::format("period count must be at least 1, got {}", periods));
    }
}

// Unit triangle from a carrier phase fraction in [0, 1).
double triangle_from_fraction(double u)
{
    if (u < 0.25) {
        return 4.0 * u;
    }
    if (u < 0.75) {
        return 2.0 - 4.0 * u;
    }
    return 4.0 * u - 4.0;
}

double wrap_unit(double u)
{
    u -= std::floor(u);
    return u >= 1.0 ? 0.0 : u;
}

}  // namespace

std::vector<double> nls_thresholds(const ChbConfig& cfg)
{
    validate_config(cfg);
    const int n = cfg.cells();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        out.push_back(cfg.v_peak * static_cast<double>(2 * k - 1) / (2.0 * n));
    }
    return out;
}

SwitchingAngles switching_angles(int levels)
{
    return SwitchingAngles(levels);
}

Waveform nls_waveform(const ChbConfig& cfg, double sample_rate, double phase, int periods)
{
    validate_config(cfg);
    check_periods(periods);
    if (sample_rate < 64.0 * cfg.f0) {
        throw Error(ErrorCode::SampleRateTooLow,
                    fmt::format("sample rate {} Hz is below 64 x f0 ({} Hz)", sample_rate, 64.0 * cfg.f0));
    }
    const std::int64_t per_period = samples_per_period(sample_rate, cfg.f0);
    const int n = cfg.cells();

    // Normalized thresholds (2k-1)/(L-1) against |sin|.
    std::vector<double> levels(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        levels[static_cast<std::size_t>(k)] = static_cast<double>(2 * k + 1) / (cfg.levels - 1);
    }

    const double step = cfg.v_dc();
    const std::int64_t total = per_period * periods;
    std::vector<double> samples(static_cast<std::size_t>(total));
    for (std::int64_t k = 0; k < total; ++k) {
        const double s = detail::reference_sine(k, static_cast<double>(per_period), phase);
        const double mag = std::abs(s);
        const auto count = std::count_if(levels.begin(), levels.end(), [mag](double lv) { return mag > lv; });
        samples[static_cast<std::size_t>(k)] = count == 0 ? 0.0 : (s > 0.0 ? 1.0 : -1.0) * step * count;
    }
    return Waveform(std::move(samples), sample_rate, cfg.f0);
}

bool GateSchedule::conducts(Switch s, double t) const
{
    const double period = 1.0 / f0;
    double tt = std::fmod(t, period);
    if (tt < 0.0) {
        tt += period;
    }
    const auto& times = toggles(s);
    const auto flips = std::upper_bound(times.begin(), times.end(), tt) - times.begin();
    return initial_state[static_cast<int>(s)] != (flips % 2 == 1);
}

int GateSchedule::output_level(double t) const
{
    if (conducts(Switch::S1, t) && conducts(Switch::S3, t)) {
        return 1;
    }
    if (conducts(Switch::S2, t) && conducts(Switch::S4, t)) {
        return -1;
    }
    return 0;
}

GateSchedule nls_gate_schedule(const ChbConfig& cfg, int cell)
{
    validate_config(cfg);
    if (cell < 0 || cell >= cfg.cells()) {
        throw Error(ErrorCode::CellOutOfRange,
                    fmt::format("cell {} outside 0..{}", cell, cfg.cells() - 1));
    }
    const double alpha = SwitchingAngles(cfg.levels)[static_cast<std::size_t>(cell)];
    const double omega = 2.0 * kPi * cfg.f0;

    GateSchedule g;
    g.cell_index = cell;
    g.f0 = cfg.f0;
    // S1 carries the positive half step, S2 the negative half step.
    const std::vector<double> s1{alpha / omega, (kPi - alpha) / omega};
    const std::vector<double> s2{(kPi + alpha) / omega, (2.0 * kPi - alpha) / omega};
    g.toggle_times[static_cast<int>(Switch::S1)] = s1;
    g.toggle_times[static_cast<int>(Switch::S2)] = s2;
    g.toggle_times[static_cast<int>(Switch::S3)] = s2;
    g.toggle_times[static_cast<int>(Switch::S4)] = s1;
    g.initial_state = {false, false, true, true};
    return g;
}

PspwmConfig pspwm_carriers(int cells, double f_carrier, double v_dc_level)
{
    if (cells < 1) {
        throw Error(ErrorCode::NonPositive, fmt::format("cell count must be positive, got {}", cells));
    }
    if (!(f_carrier > 0.0)) {
        throw Error(ErrorCode::NonPositive, fmt::format("carrier frequency must be positive, got {}", f_carrier));
    }
    if (!(v_dc_level > 0.0)) {
        throw Error(ErrorCode::NonPositive, fmt::format("cell DC level must be positive, got {}", v_dc_level));
    }
    return PspwmConfig{cells, f_carrier, 2.0 * kPi / (2.0 * cells), v_dc_level};
}

double triangle(double t, double f_carrier, double phase)
{
    return triangle_from_fraction(wrap_unit(f_carrier * t + phase / (2.0 * kPi)));
}

Waveform pspwm_waveform(const ChbConfig& cfg, const PspwmConfig& ps, double sample_rate, double phase,
                        int periods)
{
    validate_levels(cfg.levels);
    if (!(cfg.f0 > 0.0)) {
        throw Error(ErrorCode::NonPositive, fmt::format("f0 must be positive, got {}", cfg.f0));
    }
    if (!(cfg.m_a >= 0.0 && cfg.m_a <= 1.0)) {
        throw Error(ErrorCode::ModulationOutOfRange,
                    fmt::format("modulation index must be in [0, 1], got {}", cfg.m_a));
    }
    if (ps.cells != cfg.cells()) {
        throw Error(ErrorCode::CellCountMismatch,
                    fmt::format("carrier bank has {} cells, configuration has {}", ps.cells, cfg.cells()));
    }
    if (!(ps.f_carrier > 0.0) || !(ps.v_dc_level > 0.0)) {
        throw Error(ErrorCode::NonPositive, "carrier frequency and cell DC level must be positive");
    }
    if (ps.f_carrier < 20.0 * cfg.f0) {
        throw Error(ErrorCode::CarrierTooSlow,
                    fmt::format("carrier {} Hz is below 20 x f0 ({} Hz)", ps.f_carrier, 20.0 * cfg.f0));
    }
    if (sample_rate < 8.0 * ps.f_carrier || sample_rate < 64.0 * cfg.f0) {
        throw Error(ErrorCode::SampleRateTooLow,
                    fmt::format("sample rate {} Hz is below 8 x carrier ({} Hz)", sample_rate, 8.0 * ps.f_carrier));
    }
    check_periods(periods);
    const std::int64_t per_period = samples_per_period(sample_rate, cfg.f0);
    const double period_d = static_cast<double>(per_period);
    const double carrier_ratio = ps.f_carrier / cfg.f0;

    std::vector<double> offsets(static_cast<std::size_t>(ps.cells));
    for (int c = 0; c < ps.cells; ++c) {
        offsets[static_cast<std::size_t>(c)] = ps.carrier_phase(c) / (2.0 * kPi);
    }

    const std::int64_t total = per_period * periods;
    std::vector<double> samples(static_cast<std::size_t>(total));
    for (std::int64_t k = 0; k < total; ++k) {
        const double ref = cfg.m_a * detail::reference_sine(k, period_d, phase);
        // Carrier cycles elapsed, reduced modulo one fundamental period; exact
        // for whole-number carrier ratios.
        const double base = std::fmod(static_cast<double>(k) * carrier_ratio, period_d) / period_d;
        int level = 0;
        for (double off : offsets) {
            const double carrier = triangle_from_fraction(wrap_unit(base + off));
            const int leg_a = ref > carrier ? 1 : 0;
            const int leg_b = -ref > carrier ? 1 : 0;
            level += leg_a - leg_b;
        }
        samples[static_cast<std::size_t>(k)] = level == 0 ? 0.0 : ps.v_dc_level * level;
    }
    return Waveform(std::move(samples), sample_rate, cfg.f0);
}

}  // namespace chbkit
