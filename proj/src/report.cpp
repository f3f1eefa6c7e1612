#include "chbkit/report.hpp"

#include "chbkit/harmonics.hpp"
#include "chbkit/modulation.hpp"

#include <cmath>
#include <fmt/format.h>

namespace chbkit::report {

using nlohmann::ordered_json;

namespace {

constexpr int kThdDecimals = 5;

ordered_json quantity(double value, const char* unit)
{
    return ordered_json{{"value", value}, {"unit", unit}};
}

double rounded(double value, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(value * scale) / scale;
    return r == 0.0 ? 0.0 : r;
}

}  // namespace

std::string fixed(double value, int decimals)
{
    std::string s = fmt::format("{:.{}f}", value, decimals);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

std::vector<ThdRow> thd_table(int from, int to, int samples_per_period)
{
    validate_levels(from);
    validate_levels(to);
    if (from > to) {
        throw Error(ErrorCode::NonPositive, fmt::format("empty level range {}..{}", from, to));
    }
    std::vector<ThdRow> rows;
    for (int levels = from; levels <= to; levels += 2) {
        const ChbConfig cfg{levels, 1.0, 1.0, 1.0};
        const auto w = nls_waveform(cfg, static_cast<double>(samples_per_period));
        rows.push_back({levels, thd_analytic(levels).thd_percent(), thd_numeric(w).thd_percent()});
    }
    return rows;
}

std::string thd_table_csv(const std::vector<ThdRow>& rows)
{
    std::string out = "levels,thd_analytic_percent,thd_numeric_percent\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{}\n", r.levels, fixed(r.analytic_percent, kThdDecimals),
                           fixed(r.numeric_percent, kThdDecimals));
    }
    return out;
}

std::string thd_table_json(const std::vector<ThdRow>& rows, int samples_per_period)
{
    ordered_json j;
    j["samples_per_period"] = samples_per_period;
    j["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        j["rows"].push_back({{"levels", r.levels},
                             {"thd_analytic_percent", rounded(r.analytic_percent, kThdDecimals)},
                             {"thd_numeric_percent", rounded(r.numeric_percent, kThdDecimals)}});
    }
    j["equations"] = {
        {"thd_analytic_percent", "100*sqrt(Vrms^2 - V1rms^2)/V1rms with closed-form Vrms and V1rms"},
        {"thd_numeric_percent", "same ratio from sampled RMS and correlated fundamental"}};
    return j.dump(2) + "\n";
}

std::string waveform_csv(const Waveform& w, const std::vector<std::pair<std::string, std::string>>& echo)
{
    std::string out = "#";
    for (const auto& [key, value] : echo) {
        out += fmt::format(" {}={}", key, value);
    }
    out += "\ntime_s,volts\n";
    out.reserve(out.size() + w.size() * 28);
    for (std::size_t i = 0; i < w.size(); ++i) {
        out += fixed(w.time_at(i), 9);
        out += ',';
        out += fixed(w[i], 6);
        out += '\n';
    }
    return out;
}

std::string waveform_json(const Waveform& w, const ordered_json& config)
{
    ordered_json j;
    j["config"] = config;
    j["sample_rate_hz"] = w.sample_rate();
    j["f0_hz"] = w.f0();
    std::vector<double> t(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        t[i] = w.time_at(i);
    }
    j["time_s"] = t;
    j["volts"] = std::vector<double>(w.samples().begin(), w.samples().end());
    return j.dump() + "\n";
}

ordered_json buck_report(const BuckDesign& d)
{
    ordered_json j;
    j["command"] = "design buck";
    j["inputs"] = {{"v_s", quantity(d.v_s, "V")},
                   {"v_o", quantity(d.v_o, "V")},
                   {"f_s", quantity(d.f_s, "Hz")},
                   {"ripple_i", quantity(d.ripple_i, "A")},
                   {"ripple_v", quantity(d.ripple_v, "V")}};
    if (d.load_resistance) {
        j["inputs"]["load_resistance"] = quantity(*d.load_resistance, "ohm");
    }
    j["outputs"] = {{"duty", quantity(d.duty, "1")},
                    {"inductance", quantity(d.inductance, "H")},
                    {"capacitance", quantity(d.capacitance, "F")}};
    j["equations"] = {{"duty", "D = Vo/Vs"},
                      {"inductance", "L = D*Vs*(1-D)/(fs*di)"},
                      {"capacitance", "C = di/(8*fs*dV)"}};
    if (d.critical_inductance) {
        j["outputs"]["critical_inductance"] = quantity(*d.critical_inductance, "H");
        j["equations"]["critical_inductance"] = "Lcrit = (1-D)*R/(2*fs)";
    }
    j["notes"] = "continuous conduction assumed";
    return j;
}

ordered_json filter_report(const FilterDesign& d, bool solved_for_capacitance)
{
    ordered_json j;
    j["command"] = "design filter";
    if (solved_for_capacitance) {
        j["inputs"] = {{"cutoff", quantity(d.cutoff, "Hz")}, {"inductance", quantity(d.inductance, "H")}};
        j["outputs"] = {{"capacitance", quantity(d.capacitance, "F")}, {"cutoff", quantity(d.cutoff, "Hz")}};
        j["equations"] = {{"capacitance", "Cf = 1/((2*pi*fc)^2*Lf)"}, {"cutoff", "fc = 1/(2*pi*sqrt(Lf*Cf))"}};
    } else {
        j["inputs"] = {{"inductance", quantity(d.inductance, "H")}, {"capacitance", quantity(d.capacitance, "F")}};
        j["outputs"] = {{"cutoff", quantity(d.cutoff, "Hz")}};
        j["equations"] = {{"cutoff", "fc = 1/(2*pi*sqrt(Lf*Cf))"}};
    }
    return j;
}

ordered_json pspwm_report(double v_ll_rms, double m_a, int cells, const PspwmDcVoltages& v)
{
    ordered_json j;
    j["command"] = "design pspwm";
    j["inputs"] = {{"v_ll_rms", quantity(v_ll_rms, "V")}, {"m_a", quantity(m_a, "1")}, {"cells", cells}};
    j["outputs"] = {{"v_dc_total", quantity(v.v_dc_total, "V")},
                    {"v_dc_level", quantity(v.v_dc_level, "V")},
                    {"carrier_shift", quantity(360.0 / (2.0 * cells), "deg")}};
    j["equations"] = {{"v_dc_total", "Vdc0 = sqrt(2/3)*Vll/m_a"},
                      {"v_dc_level", "Vdc = Vdc0/N"},
                      {"carrier_shift", "theta = 360/(2N)"}};
    return j;
}

ordered_json pv_report(double panel_v, double panel_i, int n_series, int n_parallel, const PvArray& a)
{
    ordered_json j;
    j["command"] = "design pv";
    j["inputs"] = {{"panel_v", quantity(panel_v, "V")},
                   {"panel_i", quantity(panel_i, "A")},
                   {"series", n_series},
                   {"parallel", n_parallel}};
    j["outputs"] = {{"voltage", quantity(a.voltage, "V")}, {"current", quantity(a.current, "A")}};
    j["equations"] = {{"voltage", "V = Ns*Vpanel"}, {"current", "I = Np*Ipanel"}};
    return j;
}

ordered_json power_report(double v1_rms, double v2_rms, double delta, double x_line, double watts)
{
    ordered_json j;
    j["command"] = "design power";
    j["inputs"] = {{"v1_rms", quantity(v1_rms, "V")},
                   {"v2_rms", quantity(v2_rms, "V")},
                   {"delta", quantity(delta * 180.0 / kPi, "deg")},
                   {"x_line", quantity(x_line, "ohm")}};
    j["outputs"] = {{"power_per_phase", quantity(watts, "W")}};
    j["equations"] = {{"power_per_phase", "P = V1*V2*sin(delta)/X"}};
    j["notes"] = "lossless reactance-coupled transfer; ignores resistance and the filter capacitor";
    return j;
}

ordered_json system_report(const SystemDesign& d)
{
    ordered_json j;
    j["command"] = "design system";
    j["inputs"] = {{"v_ll_rms", quantity(d.spec.v_ll_rms, "V")},
                   {"f0", quantity(d.spec.f0, "Hz")},
                   {"p_target", quantity(d.spec.p_target, "W")},
                   {"thd_limit", quantity(d.spec.thd_limit, "1")},
                   {"p_unit", quantity(d.p_unit, "W")}};
    j["outputs"] = {{"levels", d.levels},
                    {"cells", d.cells},
                    {"thd", quantity(d.thd, "1")},
                    {"v_phase_peak", quantity(d.v_phase_peak, "V")},
                    {"v_cell", quantity(d.v_cell, "V")},
                    {"units", d.units}};
    j["equations"] = {{"levels", "smallest odd L with THD(L) < limit"},
                      {"cells", "N = (L-1)/2"},
                      {"v_phase_peak", "Vm = Vll*sqrt(2/3)"},
                      {"v_cell", "Vdc = Vll*sqrt(2/3)/N"},
                      {"units", "ceil(P_target/P_unit)"}};
    if (d.phase_power_estimate) {
        j["inputs"]["delta"] = quantity(d.spec.delta * 180.0 / kPi, "deg");
        j["inputs"]["l_line"] = quantity(d.spec.l_line, "H");
        j["outputs"]["phase_power_estimate"] = quantity(*d.phase_power_estimate, "W");
        j["equations"]["phase_power_estimate"] = "P = V^2*sin(delta)/(2*pi*f0*Lline)";
        j["notes"] = "phase power estimate is a lossless sanity check, not a load flow";
    }
    return j;
}

ordered_json analyze_report(const ChbConfig& cfg, int max_h)
{
    validate_config(cfg);
    const SwitchingAngles angles(cfg.levels);
    const auto report = thd_analytic(cfg.levels);

    ordered_json j;
    j["command"] = "analyze";
    j["inputs"] = {{"levels", cfg.levels}, {"v_peak", quantity(cfg.v_peak, "V")}, {"max_h", max_h}};
    ordered_json angle_list = ordered_json::array();
    for (double a : angles.angles()) {
        angle_list.push_back({{"rad", a}, {"deg", a * 180.0 / kPi}});
    }
    ordered_json harmonics = ordered_json::array();
    for (int h = 1; h <= max_h; h += 2) {
        const double bh = fourier_bh(cfg.levels, h);
        harmonics.push_back({{"h", h}, {"peak", bh * cfg.v_peak}, {"rms", std::abs(bh) * cfg.v_peak / std::sqrt(2.0)}});
    }
    j["outputs"] = {{"cells", cfg.cells()},
                    {"v_dc", quantity(cfg.v_dc(), "V")},
                    {"switching_angles", angle_list},
                    {"thresholds", nls_thresholds(cfg)},
                    {"rms_total", quantity(report.rms_total * cfg.v_peak, "V")},
                    {"rms_fundamental", quantity(report.rms_fundamental * cfg.v_peak, "V")},
                    {"thd_percent", report.thd_percent()},
                    {"harmonics", harmonics}};
    j["equations"] = {{"switching_angles", "alpha_i = asin((2i+1)/(L-1))"},
                      {"thresholds", "Vpk*(2k-1)/(2N)"},
                      {"rms_total", "Vm*sqrt(1 - 2/(pi*N^2)*sum((2i+1)*alpha_i))"},
                      {"rms_fundamental", "4*Vm/(pi*N*sqrt(2))*sum(sqrt(1-((2i+1)/(L-1))^2))"},
                      {"harmonics", "b_h = 4*Vm/(pi*h*N)*sum(cos(h*alpha_i))"}};
    return j;
}

}  // namespace chbkit::report
