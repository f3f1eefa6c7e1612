#pragma once

#include "chbkit/core.hpp"
#include "chbkit/design.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace chbkit::report {

struct ThdRow {
    int levels = 0;
    double analytic_percent = 0.0;
    double numeric_percent = 0.0;
};

/// Analytic and sampled THD for every odd L in [from, to].
std::vector<ThdRow> thd_table(int from, int to, int samples_per_period);

std::string thd_table_csv(const std::vector<ThdRow>& rows);
std::string thd_table_json(const std::vector<ThdRow>& rows, int samples_per_period);

/// `echo` is written on a leading '#' line; keys are emitted in order.
std::string waveform_csv(const Waveform& w, const std::vector<std::pair<std::string, std::string>>& echo);
std::string waveform_json(const Waveform& w, const nlohmann::ordered_json& config);

nlohmann::ordered_json buck_report(const BuckDesign& d);
nlohmann::ordered_json filter_report(const FilterDesign& d, bool solved_for_capacitance);
nlohmann::ordered_json pspwm_report(double v_ll_rms, double m_a, int cells, const PspwmDcVoltages& v);
nlohmann::ordered_json pv_report(double panel_v, double panel_i, int n_series, int n_parallel, const PvArray& a);
nlohmann::ordered_json power_report(double v1_rms, double v2_rms, double delta, double x_line, double watts);
nlohmann::ordered_json system_report(const SystemDesign& d);
nlohmann::ordered_json analyze_report(const ChbConfig& cfg, int max_h);

/// Fixed-point text with `decimals` places; never prints "-0".
std::string fixed(double value, int decimals);

}  // namespace chbkit::report
