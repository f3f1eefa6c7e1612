#pragma once

#include "chbkit/core.hpp"

#include <array>
#include <vector>

namespace chbkit {

/// Switch naming for one H-bridge cell. Leg A is S1 (top) over S4 (bottom),
/// leg B is S2 (top) over S3 (bottom); S1+S3 drive +Vdc, S2+S4 drive -Vdc and
/// S3+S4 short the output.
enum class Switch { S1 = 0, S2 = 1, S3 = 2, S4 = 3 };

/// Nearest-level gate timing of one cell over one fundamental period.
struct GateSchedule {
    int cell_index = 0;
    double f0 = 60.0;
    /// Conduction state of S1..S4 at t = 0.
    std::array<bool, 4> initial_state{};
    /// Toggle instants in seconds, each list strictly increasing in [0, 1/f0).
    std::array<std::vector<double>, 4> toggle_times{};

    const std::vector<double>& toggles(Switch s) const { return toggle_times[static_cast<int>(s)]; }

    /// Conduction state at time t (taken modulo one period).
    bool conducts(Switch s, double t) const;

    /// Cell output in units of its DC voltage: +1, 0 or -1.
    int output_level(double t) const;
};

/// Carrier bank for phase-shifted PWM.
struct PspwmConfig {
    int cells = 1;
    double f_carrier = 0.0;
    double theta_shift = 0.0;
    double v_dc_level = 1.0;

    double carrier_phase(int cell) const noexcept { return cell * theta_shift; }
};

/// Comparator thresholds V_pk*(2k-1)/(2N), k = 1..N, in volts.
std::vector<double> nls_thresholds(const ChbConfig& cfg);

SwitchingAngles switching_angles(int levels);

/// Staircase phase voltage sampled over `periods` whole periods.
///
/// `sample_rate` must be an integer multiple of f0 and at least 64*f0.
/// `phase` shifts the reference, positive values lead.
Waveform nls_waveform(const ChbConfig& cfg, double sample_rate, double phase = 0.0, int periods = 1);

GateSchedule nls_gate_schedule(const ChbConfig& cfg, int cell);

/// Builds the carrier bank with a 2*pi/(2N) shift between consecutive cells.
PspwmConfig pspwm_carriers(int cells, double f_carrier, double v_dc_level = 1.0);

/// Symmetric unit triangle: zero and rising at phase 0, peak +1 a quarter
/// period later, trough -1 at three quarters.
double triangle(double t, double f_carrier, double phase);

/// Unipolar phase-shifted PWM output of the whole cascade.
///
/// Each cell compares +m_a*sin and -m_a*sin against its own carrier (strict
/// comparison, ties off). `cfg.m_a` may be zero here. Requires
/// sample_rate >= 8*f_carrier and f_carrier >= 20*f0.
Waveform pspwm_waveform(const ChbConfig& cfg, const PspwmConfig& ps, double sample_rate, double phase = 0.0,
                        int periods = 1);

}  // namespace chbkit
