#include "chbkit/cli.hpp"

#include "chbkit/design.hpp"
#include "chbkit/modulation.hpp"
#include "chbkit/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <optional>
#include <ostream>
#include <unistd.h>

namespace chbkit::cli {

namespace fs = std::filesystem;

namespace {

struct Artifact {
    std::string out = "";
    std::string default_name;
};

fs::path output_dir()
{
    if (const char* dir = std::getenv("CHBKIT_OUT_DIR"); dir != nullptr && *dir != '\0') {
        return dir;
    }
    return ".";
}

// Writes through a sibling temp file so a failed run never leaves a partial artifact.
int emit(const Artifact& target, const std::string& content, std::ostream& out, std::ostream& err)
{
    if (target.out == "-") {
        out << content;
        return kOk;
    }
    fs::path path = target.out.empty() ? fs::path(target.default_name) : fs::path(target.out);
    if (path.is_relative()) {
        path = output_dir() / path;
    }
    const fs::path tmp = path.string() + fmt::format(".tmp{}", ::getpid());
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot write " << path.string() << "\n";
            return kUnwritable;
        }
        file << content;
        file.close();
        if (!file) {
            std::error_code ec;
            fs::remove(tmp, ec);
            err << "error: failed writing " << path.string() << "\n";
            return kUnwritable;
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        err << "error: cannot write " << path.string() << "\n";
        return kUnwritable;
    }
    out << "wrote " << path.string() << "\n";
    return kOk;
}

std::string g(double v)
{
    return fmt::format("{:g}", v);
}

void add_output_options(CLI::App* cmd, Artifact& artifact)
{
    cmd->add_option("-o,--out", artifact.out,
                    "Output file ('-' for stdout); relative paths resolve against $CHBKIT_OUT_DIR");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cascaded H-bridge multilevel inverter analysis and design", "chbkit"};
    app.require_subcommand(1);

    // thd-table
    int table_from = 3;
    int table_to = 27;
    int table_samples = 65536;
    std::string table_format = "csv";
    Artifact table_out{"", ""};
    auto* table = app.add_subcommand("thd-table", "Analytic and sampled THD of nearest-level staircases");
    table->add_option("--from", table_from, "Smallest level count (odd, >= 3)");
    table->add_option("--to", table_to, "Largest level count (odd)");
    table->add_option("--samples", table_samples, "Samples per period for the numeric column")
        ->check(CLI::Range(64, 1 << 24));
    table->add_option("--format", table_format)->check(CLI::IsMember({"csv", "json"}));
    add_output_options(table, table_out);

    // waveform
    std::string wave_mod = "nls";
    std::optional<int> wave_levels;
    std::optional<int> wave_cells;
    double wave_vpeak = 1.0;
    double wave_f0 = 60.0;
    double wave_ma = 1.0;
    int wave_samples = 4096;
    int wave_periods = 1;
    std::optional<double> wave_fc;
    std::optional<double> wave_vdc;
    double wave_phase_deg = 0.0;
    std::string wave_format = "csv";
    Artifact wave_out{"", ""};
    auto* wave = app.add_subcommand("waveform", "Synthesize one phase voltage");
    wave->add_option("--mod", wave_mod, "Modulation")->check(CLI::IsMember({"nls", "pspwm"}));
    auto* lv = wave->add_option("--levels", wave_levels, "Output level count L (odd)");
    wave->add_option("--cells", wave_cells, "H-bridge cell count N")->excludes(lv);
    wave->add_option("--vpeak", wave_vpeak, "Peak phase voltage (V)");
    wave->add_option("--f0", wave_f0, "Fundamental frequency (Hz)");
    wave->add_option("--ma", wave_ma, "Modulation index");
    wave->add_option("--samples", wave_samples, "Samples per fundamental period")->check(CLI::Range(64, 1 << 24));
    wave->add_option("--periods", wave_periods, "Fundamental periods to emit")->check(CLI::Range(1, 1000));
    wave->add_option("--fc", wave_fc, "PSPWM carrier frequency (Hz), default 50*f0");
    wave->add_option("--vdc", wave_vdc, "PSPWM cell DC voltage (V), default vpeak/N");
    wave->add_option("--phase-deg", wave_phase_deg, "Reference phase shift (deg)");
    wave->add_option("--format", wave_format)->check(CLI::IsMember({"csv", "json"}));
    add_output_options(wave, wave_out);

    // analyze
    int an_levels = 3;
    double an_vpeak = 1.0;
    int an_max_h = 49;
    Artifact an_out{"", "analyze.json"};
    auto* analyze = app.add_subcommand("analyze", "Closed-form angles, RMS, THD and Fourier coefficients");
    analyze->add_option("--levels", an_levels, "Output level count L (odd)")->required();
    analyze->add_option("--vpeak", an_vpeak, "Peak phase voltage (V)");
    analyze->add_option("--max-h", an_max_h, "Highest odd harmonic to list")->check(CLI::Range(1, 100000));
    add_output_options(analyze, an_out);

    // design
    auto* design = app.add_subcommand("design", "Component and system sizing reports (JSON)");
    design->require_subcommand(1);

    double buck_vs = 0.0, buck_vo = 0.0, buck_fs = 0.0, buck_di = 0.0, buck_dv = 0.0;
    std::optional<double> buck_r;
    Artifact buck_out{"", "design_buck.json"};
    auto* buck = design->add_subcommand("buck", "Buck converter duty, inductor and capacitor");
    buck->add_option("--vs", buck_vs, "Source voltage (V)")->required();
    buck->add_option("--vo", buck_vo, "Output voltage (V)")->required();
    buck->add_option("--fs", buck_fs, "Switching frequency (Hz)")->required();
    buck->add_option("--di", buck_di, "Inductor ripple current (A)")->required();
    buck->add_option("--dv", buck_dv, "Capacitor ripple voltage (V)")->required();
    buck->add_option("--rload", buck_r, "Equivalent load resistance (ohm) for critical inductance");
    add_output_options(buck, buck_out);

    std::optional<double> filt_fc, filt_lf, filt_cf;
    Artifact filt_out{"", "design_filter.json"};
    auto* filter = design->add_subcommand("filter", "LC low-pass corner or capacitance for a corner");
    filter->add_option("--lf", filt_lf, "Filter inductance (H)")->required();
    auto* fc_opt = filter->add_option("--fc", filt_fc, "Target cutoff (Hz); solves for Cf");
    filter->add_option("--cf", filt_cf, "Filter capacitance (F); computes cutoff")->excludes(fc_opt);
    add_output_options(filter, filt_out);

    double ps_vll = 480.0, ps_ma = 0.8;
    int ps_cells = 6;
    Artifact ps_out{"", "design_pspwm.json"};
    auto* pspwm = design->add_subcommand("pspwm", "PSPWM total and per-cell DC voltages");
    pspwm->add_option("--vll", ps_vll, "Line-line RMS voltage (V)");
    pspwm->add_option("--ma", ps_ma, "Modulation index");
    pspwm->add_option("--cells", ps_cells, "Cells per phase");
    add_output_options(pspwm, ps_out);

    double pv_v = 0.0, pv_i = 0.0;
    int pv_series = 1, pv_parallel = 1;
    Artifact pv_out{"", "design_pv.json"};
    auto* pv = design->add_subcommand("pv", "PV string arithmetic");
    pv->add_option("--panel-v", pv_v, "Panel voltage (V)")->required();
    pv->add_option("--panel-i", pv_i, "Panel current (A)")->required();
    pv->add_option("--series", pv_series, "Panels in series");
    pv->add_option("--parallel", pv_parallel, "Strings in parallel");
    add_output_options(pv, pv_out);

    double pw_v1 = 0.0, pw_v2 = 0.0, pw_delta_deg = 0.0;
    std::optional<double> pw_x, pw_l;
    double pw_f0 = 60.0;
    Artifact pw_out{"", "design_power.json"};
    auto* power = design->add_subcommand("power", "Two-source power transfer across a line reactance");
    power->add_option("--v1", pw_v1, "Sending RMS phase voltage (V)")->required();
    power->add_option("--v2", pw_v2, "Receiving RMS phase voltage (V)")->required();
    power->add_option("--delta-deg", pw_delta_deg, "Angle of v1 ahead of v2 (deg)")->required();
    auto* x_opt = power->add_option("--x", pw_x, "Line reactance (ohm)");
    power->add_option("--lline", pw_l, "Line inductance (H), reactance at --f0")->excludes(x_opt);
    power->add_option("--f0", pw_f0, "Fundamental frequency (Hz)");
    add_output_options(power, pw_out);

    SystemSpec sys;
    double sys_punit = 0.0;
    double sys_delta_deg = 0.0;
    int sys_lmax = 201;
    Artifact sys_out{"", "design_system.json"};
    auto* system = design->add_subcommand("system", "Level count, cell voltage and fleet size");
    system->add_option("--vll", sys.v_ll_rms, "Line-line RMS voltage (V)");
    system->add_option("--f0", sys.f0, "Fundamental frequency (Hz)");
    system->add_option("--p", sys.p_target, "Target real power (W)")->required();
    system->add_option("--thd", sys.thd_limit, "THD limit as a fraction");
    system->add_option("--punit", sys_punit, "Power of one three-phase unit (W)")->required();
    system->add_option("--lmax", sys_lmax, "Largest level count to consider");
    system->add_option("--delta-deg", sys_delta_deg, "Inverter-grid angle (deg) for the power estimate");
    system->add_option("--lline", sys.l_line, "Grid line inductance (H) for the power estimate");
    add_output_options(system, sys_out);

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("chbkit");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    try {
        if (*table) {
            if (table_from % 2 == 0 || table_to % 2 == 0) {
                err << fmt::format("error: level bounds must be odd, got --from {} --to {}\n", table_from, table_to);
                return kInvalidInput;
            }
            if (table_from < 3 || table_from > table_to) {
                err << fmt::format("error: need 3 <= --from <= --to, got {} and {}\n", table_from, table_to);
                return kInvalidInput;
            }
            const auto rows = report::thd_table(table_from, table_to, table_samples);
            Artifact target = table_out;
            target.default_name = "thd_table." + table_format;
            return emit(target,
                        table_format == "csv" ? report::thd_table_csv(rows)
                                              : report::thd_table_json(rows, table_samples),
                        out, err);
        }

        if (*wave) {
            int levels = 3;
            if (wave_levels) {
                levels = *wave_levels;
            } else if (wave_cells) {
                levels = 2 * *wave_cells + 1;
            }
            const ChbConfig cfg{levels, wave_vpeak, wave_f0, wave_ma};
            const double sample_rate = wave_samples * wave_f0;
            const double phase = wave_phase_deg * kPi / 180.0;
            std::vector<std::pair<std::string, std::string>> echo{{"modulation", wave_mod},
                                                                  {"levels", std::to_string(levels)},
                                                                  {"cells", std::to_string(cfg.cells())}};
            nlohmann::ordered_json config{{"modulation", wave_mod}, {"levels", levels}, {"cells", cfg.cells()}};

            std::optional<Waveform> w;
            if (wave_mod == "nls") {
                w = nls_waveform(cfg, sample_rate, phase, wave_periods);
                echo.insert(echo.end(), {{"v_peak", g(cfg.v_peak)}});
                config["v_peak"] = cfg.v_peak;
            } else {
                validate_levels(levels);
                const double vdc = wave_vdc.value_or(wave_vpeak / cfg.cells());
                const auto ps = pspwm_carriers(cfg.cells(), wave_fc.value_or(50.0 * wave_f0), vdc);
                w = pspwm_waveform(cfg, ps, sample_rate, phase, wave_periods);
                echo.insert(echo.end(), {{"v_dc_level", g(ps.v_dc_level)},
                                         {"f_carrier", g(ps.f_carrier)},
                                         {"carrier_shift_deg", g(ps.theta_shift * 180.0 / kPi)}});
                config["v_dc_level"] = ps.v_dc_level;
                config["f_carrier"] = ps.f_carrier;
                config["carrier_shift_deg"] = ps.theta_shift * 180.0 / kPi;
            }
            echo.insert(echo.end(), {{"f0", g(cfg.f0)},
                                     {"m_a", g(cfg.m_a)},
                                     {"samples_per_period", std::to_string(wave_samples)},
                                     {"periods", std::to_string(wave_periods)},
                                     {"phase_deg", g(wave_phase_deg)}});
            config["f0"] = cfg.f0;
            config["m_a"] = cfg.m_a;
            config["samples_per_period"] = wave_samples;
            config["periods"] = wave_periods;
            config["phase_deg"] = wave_phase_deg;

            Artifact target = wave_out;
            target.default_name = fmt::format("waveform_{}_L{}.{}", wave_mod, levels, wave_format);
            return emit(target, wave_format == "csv" ? report::waveform_csv(*w, echo) : report::waveform_json(*w, config),
                        out, err);
        }

        if (*analyze) {
            const ChbConfig cfg{an_levels, an_vpeak, 60.0, 1.0};
            return emit(an_out, report::analyze_report(cfg, an_max_h).dump(2) + "\n", out, err);
        }

        if (*buck) {
            const auto d = buck_design(buck_vs, buck_vo, buck_fs, buck_di, buck_dv, buck_r);
            return emit(buck_out, report::buck_report(d).dump(2) + "\n", out, err);
        }
        if (*filter) {
            if (filt_fc) {
                return emit(filt_out, report::filter_report(filter_for_cutoff(*filt_fc, *filt_lf), true).dump(2) + "\n",
                            out, err);
            }
            if (!filt_cf) {
                err << "error: design filter needs --cf or --fc\n";
                return kInvalidInput;
            }
            return emit(filt_out, report::filter_report(make_filter(*filt_lf, *filt_cf), false).dump(2) + "\n", out,
                        err);
        }
        if (*pspwm) {
            const auto v = pspwm_dc_voltages(ps_vll, ps_ma, ps_cells);
            return emit(ps_out, report::pspwm_report(ps_vll, ps_ma, ps_cells, v).dump(2) + "\n", out, err);
        }
        if (*pv) {
            const auto a = pv_array(pv_v, pv_i, pv_series, pv_parallel);
            return emit(pv_out, report::pv_report(pv_v, pv_i, pv_series, pv_parallel, a).dump(2) + "\n", out, err);
        }
        if (*power) {
            double x = 0.0;
            if (pw_x) {
                x = *pw_x;
            } else if (pw_l) {
                x = 2.0 * kPi * pw_f0 * *pw_l;
            } else {
                err << "error: design power needs --x or --lline\n";
                return kInvalidInput;
            }
            const double delta = pw_delta_deg * kPi / 180.0;
            const double watts = power_transfer(pw_v1, pw_v2, delta, x);
            return emit(pw_out, report::power_report(pw_v1, pw_v2, delta, x, watts).dump(2) + "\n", out, err);
        }
        if (*system) {
            sys.delta = sys_delta_deg * kPi / 180.0;
            const auto d = system_design(sys, sys_punit, sys_lmax);
            return emit(sys_out, report::system_report(d).dump(2) + "\n", out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (e.code() == ErrorCode::NotAchievable) {
            err << "hint: raise --lmax or relax --thd; the THD of an ideal staircase falls roughly as 1/L\n";
            return kNotAchievable;
        }
        return kInvalidInput;
    }
    return kInvalidInput;
}

}  // namespace chbkit::cli
