#pragma once

#include "chbkit/core.hpp"

#include <optional>

namespace chbkit {

/// Continuous-conduction buck stage sizing.
struct BuckDesign {
    double v_s = 0.0;
    double v_o = 0.0;
    double f_s = 0.0;
    double duty = 0.0;
    double ripple_i = 0.0;
    double ripple_v = 0.0;
    double inductance = 0.0;
    double capacitance = 0.0;
    /// Set when a load resistance was supplied: (1-D)*R/(2*f_s).
    std::optional<double> load_resistance;
    std::optional<double> critical_inductance;
};

struct FilterDesign {
    double inductance = 0.0;
    double capacitance = 0.0;
    double cutoff = 0.0;
};

/// Grid-side requirements of a complete three-phase installation.
struct SystemSpec {
    double v_ll_rms = 480.0;
    double f0 = 60.0;
    double p_target = 0.0;
    double thd_limit = 0.05;
    /// Inverter-to-grid angle in radians.
    double delta = 0.0;
    /// Grid line inductance in henries.
    double l_line = 0.0;
};

SystemSpec validate_system(const SystemSpec& spec);

BuckDesign buck_design(double v_s, double v_o, double f_s, double ripple_i, double ripple_v,
                       std::optional<double> load_resistance = std::nullopt);

double lc_cutoff(double l_f, double c_f);

/// Capacitance that puts the LC corner at f_c for inductance l_f.
double lc_for_cutoff(double f_c, double l_f);

FilterDesign make_filter(double l_f, double c_f);
FilterDesign filter_for_cutoff(double f_c, double l_f);

/// Per-cell DC voltage for a nearest-level cascade whose peak equals the
/// line-neutral peak of a v_ll_rms system.
double nls_cell_voltage(double v_ll_rms, int n_cells);

struct PspwmDcVoltages {
    double v_dc_total = 0.0;
    double v_dc_level = 0.0;
};

PspwmDcVoltages pspwm_dc_voltages(double v_ll_rms, double m_a, int n_cells);

/// Smallest odd L <= l_max whose analytic THD is below `thd_limit`
/// (a fraction). Throws NotAchievable if none is.
int min_levels_for_thd(double thd_limit, int l_max = 201);

struct PvArray {
    double voltage = 0.0;
    double current = 0.0;
};

PvArray pv_array(double panel_v, double panel_i, int n_series, int n_parallel);

/// Lossless transfer between two sources coupled by a reactance, per phase.
/// Ignores resistance and the filter capacitor; a sanity check only.
double power_transfer(double v1_rms, double v2_rms, double delta, double x_line);

/// Number of identical units needed to reach p_target.
int fleet_size(double p_target, double p_unit);

/// Result of the full nearest-level sizing chain.
struct SystemDesign {
    SystemSpec spec;
    int levels = 0;
    int cells = 0;
    double thd = 0.0;
    double v_phase_peak = 0.0;
    double v_cell = 0.0;
    double p_unit = 0.0;
    int units = 0;
    /// Present when spec.delta and spec.l_line are both non-zero.
    std::optional<double> phase_power_estimate;
};

SystemDesign system_design(const SystemSpec& spec, double p_unit, int l_max = 201);

}  // namespace chbkit
