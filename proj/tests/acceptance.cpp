// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "evshift/cli.hpp"
#include "evshift/config.hpp"
#include "evshift/control.hpp"
#include "evshift/csv.hpp"
#include "evshift/fleet.hpp"
#include "evshift/optimizer.hpp"
#include "evshift/scenario.hpp"
#include "evshift/sim.hpp"

namespace fs = std::filesystem;
using namespace evshift;

namespace {

const fs::path kSeedDir = fs::path(EVSHIFT_DATA_DIR) / "seed42";

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double total(const Profile& p)
{
    return std::accumulate(p.begin(), p.end(), 0.0);
}

const Scenario& seed42()
{
    static const Scenario s = load_scenario(read_run_config(kSeedDir / "run.json"));
    return s;
}

std::vector<SchemeSpec> all_schemes(double p_max)
{
    std::vector<SchemeSpec> out{{SchemeKind::Bau}, {SchemeKind::OpenLoop, 0, p_max}};
    for (int step : {1, 2, 3, 4, 6, 8, 12})
        out.push_back({SchemeKind::Mpc, step, p_max});
    return out;
}

int cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    if (code != 0)
        std::fprintf(stderr, "evshift %s failed (%d): %s", args.front().c_str(), code, err.str().c_str());
    return code;
}

// Relative path -> content for every regular file below `root`.
std::map<std::string, std::string> snapshot(const fs::path& root)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file())
            files[fs::relative(e.path(), root).string()] = read_text_file(e.path());
    return files;
}

Outcome fleet_calibration()
{
    const auto t0 = std::chrono::steady_clock::now();
    auto params = read_fleet_config(kSeedDir / "fleet.json");
    params.hourly_distribution = read_hourly_distribution(kSeedDir / "ev_hourly_distribution.csv");
    const auto proj = project_fleet(params);
    const double evs = proj.count_at(2035);
    const double mwh = fleet_daily_energy(evs, params.km_per_ev_day, params.kwh_per_km);
    const double secs = seconds_since(t0);
    const double ev_err = evs / 9'450'000.0 - 1.0;
    const double mwh_err = mwh / 82'443.0 - 1.0;
    return {std::abs(ev_err) <= 0.005 && std::abs(mwh_err) <= 0.005 && secs < 1e-3,
            fmt("EV(2035) %.0f (%+.3f%%), %.1f MWh/day (%+.3f%%), %.3f ms", evs, 100 * ev_err, mwh,
                100 * mwh_err, 1e3 * secs)};
}

Outcome lp_vs_oracle()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240607);
    std::uniform_int_distribution<int> horizon(1, 6), value(0, 20), pick(0, 2);
    const double p_values[] = {0.25, 0.5, 1.0};
    int above = 0, tight = 0;
    double worst_gap = 0.0;
    const int n = 500;
    for (int i = 0; i < n; ++i) {
        ShiftInstance inst;
        const int h = horizon(rng);
        for (int k = 0; k < h; ++k) {
            inst.excess.push_back(value(rng));
            inst.demand.push_back(value(rng));
        }
        inst.p_max = p_values[pick(rng)];
        const double lp = solve_shift(inst).curtailment;
        const double oracle = oracle_search(inst, 50);
        const double gap = oracle - lp;
        if (lp > oracle + 1e-6)
            ++above;
        if (gap <= 0.01 * total(inst.excess) + 1e-9)
            ++tight;
        worst_gap = std::max(worst_gap, gap);
    }
    const double secs = seconds_since(t0);
    return {above == 0 && tight >= 0.99 * n && secs < 30.0,
            fmt("%d/%d above oracle, %d/%d within 1%% of excess, max gap %.4f MWh, %.2f s", above, n, tight, n,
                worst_gap, secs)};
}

Outcome hand_instance()
{
    const auto t0 = std::chrono::steady_clock::now();
    const ShiftInstance inst{{0, 0, 20, 0}, {10, 10, 10, 10}, 0.0, 0.5};
    const auto plan = solve_shift(inst);
    const double secs = seconds_since(t0);
    const double expected_p[] = {0.5, 0.5, 0.0, 0.0};
    double p_err = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        p_err = std::max(p_err, std::abs(plan.uptake[k] - expected_p[k]));
    const double c_err = std::abs(plan.curtailment - 2.5);
    return {c_err <= 1e-6 && p_err <= 1e-6 && secs < 1e-3,
            fmt("curtailment %.9f, p = [%.3f, %.3f, %.3f, %.3f], %.3f ms", plan.curtailment, plan.uptake[0],
                plan.uptake[1], plan.uptake[2], plan.uptake[3], 1e3 * secs)};
}

Outcome conservation()
{
    const auto& sc = seed42();
    const double demand = total(sc.bau);
    int checked = 0, violations = 0;
    for (const auto& spec : all_schemes(0.5)) {
        for (const auto& day : sc.days) {
            const auto r = run_scheme(day, sc.bau, spec);
            ++checked;
            if (std::abs(total(r.realized_load) - demand) > 1e-6 * demand)
                ++violations;
        }
    }
    return {violations == 0 && checked > 0,
            fmt("%d violations in %d day runs (%zu days, bau, open-loop, mpc-1..12)", violations, checked,
                sc.days.size())};
}

Outcome perfect_forecast()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto& sc = seed42();
    int n = 0;
    double worst = 0.0;
    for (const auto& d : sc.days) {
        if (n == 50)
            break;
        CurtailmentDay day = d;
        day.actual_excess = day.forecast_excess;
        const double open = run_open_loop(day, sc.bau, 0.5).realized_curtailment;
        for (int step : {3, 6})
            worst = std::max(worst, std::abs(open - run_mpc(day, sc.bau, 0.5, step).realized_curtailment));
        ++n;
    }
    const double secs = seconds_since(t0);
    return {n == 50 && worst <= 1e-6 && secs < 5.0,
            fmt("%d days, max |open-loop - mpc| %.2e MWh, %.3f s", n, worst, secs)};
}

std::string serialize(const Profile& p)
{
    std::string s;
    for (double v : p)
        s += fmt("%.17g,", v);
    return s;
}

Outcome bau_neutrality()
{
    const auto& sc = seed42();
    const std::string bau = serialize(sc.bau);
    const std::vector<SchemeSpec> schemes{
        {SchemeKind::OpenLoop, 0, 0.0}, {SchemeKind::Mpc, 6, 0.0}, {SchemeKind::Mpc, 3, 0.0}};
    int mismatches = 0, checked = 0;
    for (const auto& day : sc.days)
        for (const auto& spec : schemes) {
            ++checked;
            mismatches += serialize(run_scheme(day, sc.bau, spec).realized_load) != bau;
        }
    return {mismatches == 0, fmt("%d of %d serialized loads differ from BAU", mismatches, checked)};
}

Outcome forecast_dominance()
{
    const auto& sc = seed42();
    int failures = 0;
    double worst = -1e300;
    for (const auto& day : sc.days) {
        const auto r = run_open_loop(day, sc.bau, 0.5);
        const double planned = curtailment(day.forecast_excess, r.realized_load);
        const double bau = curtailment(day.forecast_excess, sc.bau);
        worst = std::max(worst, planned - bau);
        failures += planned > bau + 1e-6;
    }
    return {failures == 0, fmt("%d of %zu days above BAU on the forecast, max excess-over-BAU %.2e MWh", failures,
                               sc.days.size(), worst)};
}

Outcome adversarial()
{
    Profile forecast(24, 0.0), actual(24, 0.0);
    forecast[2] = 20;
    actual[0] = 20;
    const auto r = run_open_loop(CurtailmentDay{0, forecast, actual}, Profile(24, 10.0), 0.5);
    return {r.additional_res_used < 0.0, fmt("additional RES used %.6f MWh", r.additional_res_used)};
}

Outcome golden(const fs::path& work)
{
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path data = work / "data";
    const fs::path out = work / "out";
    if (cli({"synth", "--seed", "42", "--out", data.string()}) != 0 ||
        cli({"simulate", "--config", (data / "run.json").string(), "--out", out.string()}) != 0)
        return {false, "pipeline failed"};
    const double secs = seconds_since(t0);

    int data_diffs = 0;
    for (const auto& [name, text] : snapshot(data))
        data_diffs += read_text_file(kSeedDir / name) != text;
    const std::string report_text = read_text_file(out / "report.json");
    const bool matches = report_text == read_text_file(kSeedDir / "golden_report.json");

    const auto report = report_from_json(nlohmann::json::parse(report_text));
    double open = 0, mpc6 = 0, mpc3 = 0;
    int mpc6_worse = -1;
    for (const auto& s : report.summaries) {
        if (s.scheme.kind == SchemeKind::OpenLoop)
            open = s.total_additional_res_mwh;
        else if (s.scheme.step_hours == 6)
            mpc6 = s.total_additional_res_mwh, mpc6_worse = s.worse_than_bau_days;
        else if (s.scheme.step_hours == 3)
            mpc3 = s.total_additional_res_mwh;
    }
    const bool pattern = mpc3 > mpc6 && mpc6 > open && open > 0 && mpc6_worse == 0;
    return {data_diffs == 0 && matches && pattern && secs < 10.0,
            fmt("data %s, report %s golden; open-loop %.1f < mpc-6 %.1f < mpc-3 %.1f GWh, mpc-6 worse days %d; "
                "%zu days; %.2f s",
                data_diffs == 0 ? "reproduced" : "DIFFERS", matches ? "matches" : "DIFFERS from", open / 1e3,
                mpc6 / 1e3, mpc3 / 1e3, mpc6_worse, report.curtailment_day_count(), secs)};
}

Outcome determinism(const fs::path& work)
{
    std::map<std::string, std::string> runs[2];
    const char* parallel[] = {"1", "4"};
    for (int i = 0; i < 2; ++i) {
        const fs::path root = work / ("run" + std::to_string(i));
        const fs::path data = root / "data";
        if (cli({"synth", "--seed", "42", "--out", data.string()}) != 0 ||
            cli({"simulate", "--config", (data / "run.json").string(), "--out", (root / "out").string(),
                 "--parallel", parallel[i], "--verbose", "--dump-lp"}) != 0)
            return {false, "pipeline failed"};
        runs[i] = snapshot(root);
    }
    int diffs = 0;
    for (const auto& [name, text] : runs[0]) {
        const auto it = runs[1].find(name);
        diffs += it == runs[1].end() || it->second != text;
    }
    diffs += runs[1].size() != runs[0].size();
    return {diffs == 0 && !runs[0].empty(),
            fmt("%zu files compared (parallel 1 vs 4, verbose, LP dumps), %d differ", runs[0].size(), diffs)};
}

} // namespace

int main()
{
    const fs::path work = fs::temp_directory_path() / "evshift_acceptance";
    fs::remove_all(work);
    fs::create_directories(work);

    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"fleet calibration", fleet_calibration},
        {"LP vs oracle", lp_vs_oracle},
        {"hand-derived instance", hand_instance},
        {"conservation", conservation},
        {"perfect-forecast equivalence", perfect_forecast},
        {"BAU neutrality", bau_neutrality},
        {"dominance on forecast", forecast_dominance},
        {"adversarial open-loop", adversarial},
        {"golden end-to-end", [&] { return golden(work / "golden"); }},
        {"determinism", [&] { return determinism(work / "determinism"); }},
    };

    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str());
        std::fflush(stdout);
    }
    fs::remove_all(work);
    std::printf("%d of %d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
