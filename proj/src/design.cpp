#include "chbkit/design.hpp"

#include "chbkit/harmonics.hpp"

#include <cmath>
#include <fmt/format.h>

namespace chbkit {

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorCode::NonPositive, fmt::format("{} must be positive, got {}", name, value));
    }
}

}  // namespace

SystemSpec validate_system(const SystemSpec& spec)
{
    require_positive(spec.v_ll_rms, "line-line voltage");
    require_positive(spec.f0, "f0");
    require_positive(spec.p_target, "target power");
    require_positive(spec.thd_limit, "THD limit");
    if (!(spec.l_line >= 0.0)) {
        throw Error(ErrorCode::NonPositive, fmt::format("line inductance must be non-negative, got {}", spec.l_line));
    }
    if (!(std::abs(spec.delta) < kPi / 2.0)) {
        throw Error(ErrorCode::NonPositive,
                    fmt::format("inverter-grid angle must satisfy |delta| < pi/2, got {}", spec.delta));
    }
    return spec;
}

BuckDesign buck_design(double v_s, double v_o, double f_s, double ripple_i, double ripple_v,
                       std::optional<double> load_resistance)
{
    require_positive(v_s, "source voltage");
    require_positive(v_o, "output voltage");
    require_positive(f_s, "switching frequency");
    require_positive(ripple_i, "inductor ripple current");
    require_positive(ripple_v, "capacitor ripple voltage");
    if (v_o >= v_s) {
        throw Error(ErrorCode::BoostRequired,
                    fmt::format("output {} V is not below source {} V; a buck cannot step up", v_o, v_s));
    }

    BuckDesign d;
    d.v_s = v_s;
    d.v_o = v_o;
    d.f_s = f_s;
    d.ripple_i = ripple_i;
    d.ripple_v = ripple_v;
    d.duty = v_o / v_s;
    d.inductance = d.duty * v_s * (1.0 - d.duty) / (f_s * ripple_i);
    d.capacitance = ripple_i / (8.0 * f_s * ripple_v);
    if (load_resistance) {
        require_positive(*load_resistance, "load resistance");
        d.load_resistance = load_resistance;
        d.critical_inductance = (1.0 - d.duty) * *load_resistance / (2.0 * f_s);
    }
    return d;
}

double lc_cutoff(double l_f, double c_f)
{
    require_positive(l_f, "filter inductance");
    require_positive(c_f, "filter capacitance");
    return 1.0 / (2.0 * kPi * std::sqrt(l_f * c_f));
}

double lc_for_cutoff(double f_c, double l_f)
{
    require_positive(f_c, "cutoff frequency");
    require_positive(l_f, "filter inductance");
    const double w = 2.0 * kPi * f_c;
    return 1.0 / (w * w * l_f);
}

FilterDesign make_filter(double l_f, double c_f)
{
    return FilterDesign{l_f, c_f, lc_cutoff(l_f, c_f)};
}

FilterDesign filter_for_cutoff(double f_c, double l_f)
{
    return make_filter(l_f, lc_for_cutoff(f_c, l_f));
}

double nls_cell_voltage(double v_ll_rms, int n_cells)
{
    require_positive(v_ll_rms, "line-line voltage");
    if (n_cells < 1) {
        throw Error(ErrorCode::NonPositive, fmt::format("cell count must be positive, got {}", n_cells));
    }
    return v_ll_rms * std::sqrt(2.0 / 3.0) / n_cells;
}

PspwmDcVoltages pspwm_dc_voltages(double v_ll_rms, double m_a, int n_cells)
{
    require_positive(v_ll_rms, "line-line voltage");
    if (n_cells < 1) {
        throw Error(ErrorCode::NonPositive, fmt::format("cell count must be positive, got {}", n_cells));
    }
    if (!(m_a > 0.0 && m_a <= 1.0)) {
        throw Error(ErrorCode::ModulationOutOfRange,
                    fmt::format("modulation index must be in (0, 1], got {}", m_a));
    }
    const double total = std::sqrt(2.0 / 3.0) * v_ll_rms / m_a;
    return PspwmDcVoltages{total, total / n_cells};
}

int min_levels_for_thd(double thd_limit, int l_max)
{
    require_positive(thd_limit, "THD limit");
    validate_levels(l_max);
    for (int levels = 3; levels <= l_max; levels += 2) {
        if (thd_analytic(levels).thd < thd_limit) {
            return levels;
        }
    }
    throw Error(ErrorCode::NotAchievable,
                fmt::format("no odd level count up to {} reaches THD below {:.5f}% (best {:.5f}%)", l_max,
                            100.0 * thd_limit, thd_analytic(l_max).thd_percent()));
}

PvArray pv_array(double panel_v, double panel_i, int n_series, int n_parallel)
{
    require_positive(panel_v, "panel voltage");
    require_positive(panel_i, "panel current");
    if (n_series < 1 || n_parallel < 1) {
        throw Error(ErrorCode::NonPositive,
                    fmt::format("series and parallel counts must be positive, got {} x {}", n_series, n_parallel));
    }
    return PvArray{n_series * panel_v, n_parallel * panel_i};
}

double power_transfer(double v1_rms, double v2_rms, double delta, double x_line)
{
    require_positive(x_line, "line reactance");
    return v1_rms * v2_rms * std::sin(delta) / x_line;
}

int fleet_size(double p_target, double p_unit)
{
    require_positive(p_target, "target power");
    require_positive(p_unit, "unit power");
    const double ratio = p_target / p_unit;
    // Absorb representation error so exact fits do not round up.
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-12 * ratio) {
        return static_cast<int>(nearest);
    }
    return static_cast<int>(std::ceil(ratio));
}

SystemDesign system_design(const SystemSpec& spec, double p_unit, int l_max)
{
    validate_system(spec);
    SystemDesign d;
    d.spec = spec;
    d.levels = min_levels_for_thd(spec.thd_limit, l_max);
    d.cells = (d.levels - 1) / 2;
    d.thd = thd_analytic(d.levels).thd;
    d.v_phase_peak = spec.v_ll_rms * std::sqrt(2.0 / 3.0);
    d.v_cell = nls_cell_voltage(spec.v_ll_rms, d.cells);
    d.p_unit = p_unit;
    d.units = fleet_size(spec.p_target, p_unit);
    if (spec.delta != 0.0 && spec.l_line > 0.0) {
        const double v_phase = spec.v_ll_rms / std::sqrt(3.0);
        d.phase_power_estimate = power_transfer(v_phase, v_phase, spec.delta, 2.0 * kPi * spec.f0 * spec.l_line);
    }
    return d;
}

}  // namespace chbkit
