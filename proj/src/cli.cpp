#include "evshift/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include <CLI11.hpp>

#include "evshift/config.hpp"
#include "evshift/csv.hpp"
#include "evshift/errors.hpp"
#include "evshift/scenario.hpp"
#include "evshift/sim.hpp"
#include "evshift/synth.hpp"

namespace evshift::cli {

namespace {

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* pattern, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, v);
    return buf;
}

// GWh with three significant figures.
std::string gwh(double mwh)
{
    return fmt("%.3g", mwh / 1000.0) + " GWh";
}

std::string day_file(int day_index, const SchemeSpec& spec)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "day_%03d_", day_index);
    return buf + label(spec) + ".csv";
}

struct SynthOptions
{
    std::string out;
    std::string config;
    std::uint64_t seed = 42;
    std::optional<double> wind_mw;
    std::optional<double> solar_mw;
};

int cmd_synth(const SynthOptions& o, CLI::App& sub, std::ostream& out)
{
    SynthParams params = o.config.empty() ? SynthParams::defaults() : synth_params_from_json(read_json_file(o.config));
    if (sub.count("--seed") > 0 || o.config.empty())
        params.seed = o.seed;
    if (o.wind_mw)
        params.wind_mw = *o.wind_mw;
    if (o.solar_mw)
        params.solar_mw = *o.solar_mw;
    const auto ds = synth_dataset(params);
    write_dataset(ds, o.out);
    out << "wrote synthetic dataset (seed " << params.seed << ", " << ds.manifest.curtailment_day_count
        << " curtailment days) to " << o.out << "\n";
    return kOk;
}

int cmd_fleet(const std::string& config, std::ostream& out)
{
    const auto params = read_fleet_config(config);
    FleetParams p = params;
    // The projection does not depend on the hourly split.
    p.hourly_distribution.fill(0.0);
    p.hourly_distribution[0] = 1.0;
    const auto proj = project_fleet(p);
    out << "year,market_share,ev_count\n";
    for (std::size_t i = 0; i < proj.years.size(); ++i)
        out << proj.years[i] << "," << format_fixed6(proj.market_shares[i]) << ","
            << format_fixed6(proj.ev_counts[i]) << "\n";
    const double daily = fleet_daily_energy(proj.ev_counts.back(), p.km_per_ev_day, p.kwh_per_km);
    out << "# " << proj.years.back() << " ev_count " << fmt("%.0f", proj.ev_counts.back())
        << ", daily_energy_mwh " << fmt("%.1f", daily) << "\n";
    return kOk;
}

int cmd_build_days(const std::string& config, const std::string& out_dir, std::ostream& out)
{
    const auto run = read_run_config(config);
    const auto scenario = load_scenario(run);
    const auto csv = curtailment_days_csv(scenario.days);
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "curtailment_days.csv", csv);
    out << scenario.days.size() << " curtailment days written to "
        << (fs::path(out_dir) / "curtailment_days.csv").string() << "\n";
    return kOk;
}

struct SimulateOptions
{
    std::string config;
    std::string out;
    std::vector<std::string> schemes;
    std::vector<int> step_hours;
    std::optional<double> p_max;
    std::optional<int> nowcast_hours;
    std::size_t parallel = 1;
    bool verbose = false;
    bool bless = false;
    bool dump_lp = false;
};

std::vector<SchemeSpec> resolve_schemes(const SimulateOptions& o, const RunConfig& run, double p_max)
{
    std::vector<SchemeSpec> schemes;
    if (o.schemes.empty()) {
        if (!o.step_hours.empty())
            throw UsageError("--step-hours requires --scheme mpc");
        schemes = run.schemes;
        if (schemes.empty())
            schemes = {{SchemeKind::OpenLoop, 0, p_max}, {SchemeKind::Mpc, 6, p_max}, {SchemeKind::Mpc, 3, p_max}};
        for (auto& s : schemes) {
            s.p_max = p_max;
            if (o.nowcast_hours && s.kind == SchemeKind::Mpc)
                s.nowcast_hours = *o.nowcast_hours;
        }
        return schemes;
    }

    std::size_t mpc_count = 0;
    for (const auto& name : o.schemes)
        if (name == "mpc")
            ++mpc_count;
    if (mpc_count == 0 && !o.step_hours.empty())
        throw UsageError("--step-hours only applies to --scheme mpc");
    if (mpc_count > 0 && o.step_hours.empty())
        throw UsageError("--scheme mpc requires --step-hours");
    if (mpc_count > 0 && o.step_hours.size() != 1 && o.step_hours.size() != mpc_count)
        throw UsageError("give one --step-hours, or one per --scheme mpc");

    std::size_t next_step = 0;
    for (const auto& name : o.schemes) {
        SchemeSpec spec;
        spec.p_max = p_max;
        if (name == "bau") {
            spec.kind = SchemeKind::Bau;
        } else if (name == "open-loop") {
            spec.kind = SchemeKind::OpenLoop;
        } else if (name == "mpc") {
            spec.kind = SchemeKind::Mpc;
            spec.step_hours = o.step_hours.size() == 1 ? o.step_hours[0] : o.step_hours[next_step++];
            spec.nowcast_hours = o.nowcast_hours.value_or(kDefaultNowcastHours);
            if (!is_valid_step_hours(spec.step_hours))
                throw UsageError("--step-hours " + std::to_string(spec.step_hours) +
                                 " must divide 24 (one of 1, 2, 3, 4, 6, 8, 12)");
        } else {
            throw UsageError("unknown scheme '" + name + "'");
        }
        schemes.push_back(spec);
    }
    return schemes;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.p_max && !(*o.p_max >= 0.0 && *o.p_max <= 1.0))
        throw UsageError("--p-max must lie in [0, 1]");
    if (o.nowcast_hours && (*o.nowcast_hours < 0 || *o.nowcast_hours > 24))
        throw UsageError("--nowcast-hours must lie in [0, 24]");
    if (o.parallel < 1)
        throw UsageError("--parallel must be >= 1");
    const auto run = read_run_config(o.config);
    const double p_max = o.p_max.value_or(run.p_max);
    const auto schemes = resolve_schemes(o, run, p_max);
    const auto scenario = load_scenario(run);

    std::vector<int> sample_days;
    if (run.manifest)
        sample_days = manifest_from_json(read_json_file(*run.manifest)).sample_day_indices;
    else
        sample_days = first_day_of_each_month(scenario.days);

    YearOptions options;
    options.parallel = o.parallel;
    std::mutex dump_mutex;
    std::map<std::string, std::string> lp_dumps;
    if (o.dump_lp)
        options.on_lp = [&](int day, const SchemeSpec& spec, int start_hour, const LinearProgram& lp) {
            char name[64];
            std::snprintf(name, sizeof(name), "day_%03d_%s_t%02d.lp", day, label(spec).c_str(), start_hour);
            auto text = lp.to_text();
            std::lock_guard lock(dump_mutex);
            lp_dumps[name] = std::move(text);
        };

    auto report = run_year(scenario.days, scenario.bau, schemes, options);
    report.scenario = run.scenario;
    report.p_max = p_max;
    report.sample_days = sample_days;
    const std::string report_text = dump_json(report_to_json(report));

    // Everything is computed; only now touch the output directory.
    const fs::path out_dir(o.out);
    fs::create_directories(out_dir);
    write_text_file(out_dir / "report.json", report_text);

    std::map<int, const CurtailmentDay*> by_index;
    for (const auto& d : scenario.days)
        by_index[d.day_index] = &d;
    const fs::path excess_dir = out_dir / "excess";
    fs::create_directories(excess_dir);
    for (const auto& rec : report.days) {
        const bool sample = std::find(sample_days.begin(), sample_days.end(), rec.day_index) != sample_days.end();
        if (!sample && !o.verbose)
            continue;
        for (const auto& r : rec.results)
            write_text_file(excess_dir / day_file(rec.day_index, r.scheme),
                            remaining_excess_csv(*by_index.at(rec.day_index), scenario.bau, r.realized_load));
    }
    if (o.verbose) {
        const fs::path trace_dir = out_dir / "trace";
        fs::create_directories(trace_dir);
        for (const auto& rec : report.days)
            for (const auto& r : rec.results)
                write_text_file(trace_dir / day_file(rec.day_index, r.scheme), trace_csv(r));
    }
    if (o.dump_lp) {
        const fs::path lp_dir = out_dir / "lp";
        fs::create_directories(lp_dir);
        for (const auto& [name, text] : lp_dumps)
            write_text_file(lp_dir / name, text);
    }

    if (run.golden_report) {
        if (o.bless) {
            write_text_file(*run.golden_report, report_text);
            err << "blessed " << run.golden_report->string() << "\n";
        } else if (fs::exists(*run.golden_report)) {
            const bool same = read_text_file(*run.golden_report) == report_text;
            err << "golden report " << (same ? "matches" : "DIFFERS") << ": " << run.golden_report->string() << "\n";
        }
    } else if (o.bless) {
        throw UsageError("--bless needs golden_report in the run config");
    }

    for (const auto& s : report.summaries)
        out << label(s.scheme) << ": " << gwh(s.total_additional_res_mwh) << " additional RES, win "
            << fmt("%.0f", 100.0 * s.win_fraction) << "%, worse than BAU on " << s.worse_than_bau_days
            << " days\n";
    return kOk;
}

int cmd_report(const std::string& config, std::ostream& out)
{
    const auto report = report_from_json(read_json_file(config));
    out << "scenario " << report.scenario << ", " << report.curtailment_day_count() << " curtailment days, p_max "
        << fmt("%g", report.p_max) << "\n\n";

    out << "metric";
    for (const auto& s : report.schemes)
        out << "," << label(s);
    out << "\nadditional RES used";
    for (const auto& s : report.summaries)
        out << "," << gwh(s.total_additional_res_mwh);
    out << "\ndays with the most RES used";
    for (const auto& s : report.summaries)
        out << "," << fmt("%.0f", 100.0 * s.win_fraction) << "%";
    out << "\ndays worse than BAU";
    for (const auto& s : report.summaries)
        out << "," << s.worse_than_bau_days;
    out << "\n";

    if (!report.sample_days.empty()) {
        static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                                  "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
        out << "\nsample day (MWh, * = best)";
        for (const auto& s : report.schemes)
            out << "," << label(s);
        out << "\n";
        for (const auto& row : sample_day_table(report, report.sample_days)) {
            out << kMonths[row.month] << " (day " << row.day_index << ")";
            for (std::size_t i = 0; i < row.additional_res_mwh.size(); ++i)
                out << "," << fmt("%.1f", row.additional_res_mwh[i]) << (row.best[i] ? "*" : "");
            out << "\n";
        }
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"EV load shifting toward excess renewables: BAU, open-loop and MPC schemes", "evshift"};
    app.require_subcommand(1);

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a deterministic synthetic dataset");
    synth_cmd->add_option("--out", synth.out, "Output directory")->required();
    synth_cmd->add_option("--seed", synth.seed, "RNG seed");
    synth_cmd->add_option("--config", synth.config, "Generator settings JSON");
    synth_cmd->add_option("--wind-mw", synth.wind_mw, "Installed wind capacity override");
    synth_cmd->add_option("--solar-mw", synth.solar_mw, "Installed solar capacity override");

    std::string fleet_config;
    auto* fleet_cmd = app.add_subcommand("fleet", "Print the EV fleet projection");
    fleet_cmd->add_option("--config", fleet_config, "Fleet config JSON")->required();

    std::string days_config;
    std::string days_out;
    auto* days_cmd = app.add_subcommand("build-days", "Write paired forecast/actual curtailment days as CSV");
    days_cmd->add_option("--config", days_config, "Run config JSON")->required();
    days_cmd->add_option("--out", days_out, "Output directory")->required();

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Run control schemes over the year and write report.json");
    sim_cmd->add_option("--config", sim.config, "Run config JSON")->required();
    sim_cmd->add_option("--out", sim.out, "Output directory")->required();
    sim_cmd->add_option("--scheme", sim.schemes, "bau | open-loop | mpc (repeatable)")
        ->check(CLI::IsMember({"bau", "open-loop", "mpc"}));
    sim_cmd->add_option("--step-hours", sim.step_hours, "MPC step; one per --scheme mpc, or one for all");
    sim_cmd->add_option("--p-max", sim.p_max, "Maximum uptake fraction");
    sim_cmd->add_option("--nowcast-hours", sim.nowcast_hours,
                        "Hours of actual excess each MPC step sees (0 = the whole step; default 3)");
    sim_cmd->add_option("--parallel", sim.parallel, "Concurrent day simulations");
    sim_cmd->add_flag("--verbose", sim.verbose, "Write per-day traces and remaining-excess CSVs for every day");
    sim_cmd->add_flag("--bless", sim.bless, "Overwrite the golden report named in the run config");
    sim_cmd->add_flag("--dump-lp", sim.dump_lp, "Write every LP solved, in plain-text form");

    std::string report_config;
    auto* report_cmd = app.add_subcommand("report", "Render summary tables from report.json");
    report_cmd->add_option("--config", report_config, "Report JSON")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*synth_cmd)
            return cmd_synth(synth, *synth_cmd, out);
        if (*fleet_cmd)
            return cmd_fleet(fleet_config, out);
        if (*days_cmd)
            return cmd_build_days(days_config, days_out, out);
        if (*sim_cmd)
            return cmd_simulate(sim, out, err);
        if (*report_cmd)
            return cmd_report(report_config, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolverError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

} // namespace evshift::cli
