#include "evshift/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evshift/csv.hpp"
#include "evshift/errors.hpp"

namespace evshift {

namespace {

using nlohmann::json;

void require_exact_keys(const json& j, const std::set<std::string>& keys, const std::string& what)
{
    if (!j.is_object())
        throw ConfigError(what + " must be a JSON object");
    for (const auto& key : keys)
        if (!j.contains(key))
            throw ConfigError(what + " is missing key '" + key + "'");
    for (const auto& [key, _] : j.items())
        if (!keys.contains(key))
            throw ConfigError(what + " has unknown key '" + key + "'");
}

template <typename T>
T get_as(const json& j, const std::string& key, const std::string& what)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(what + ": bad value for '" + key + "': " + e.what());
    }
}

fs::path resolve(const fs::path& base, const std::string& p)
{
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::vector<double> column(const std::vector<std::vector<double>>& rows, std::size_t col)
{
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r[col]);
    return out;
}

void check_hour_column(const std::vector<std::vector<double>>& rows, std::size_t expected,
                       const fs::path& path)
{
    if (rows.size() != expected)
        throw DataError(path.string() + ": expected " + std::to_string(expected) + " rows, got " +
                        std::to_string(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][0] != static_cast<double>(i))
            throw DataError(path.string() + ": hours must run 0.." + std::to_string(expected - 1) +
                            " in order (row " + std::to_string(i + 1) + ")");
}

nlohmann::json scheme_to_json(const SchemeSpec& s)
{
    json j = {{"kind", kind_name(s.kind)}, {"step_hours", s.step_hours}};
    if (s.kind == SchemeKind::Mpc)
        j["nowcast_hours"] = s.nowcast_hours;
    return j;
}

SchemeSpec scheme_from_json(const json& j, double p_max)
{
    SchemeSpec s;
    s.kind = parse_kind(get_as<std::string>(j, "kind", "scheme"));
    s.step_hours = j.contains("step_hours") ? get_as<int>(j, "step_hours", "scheme") : 0;
    if (j.contains("nowcast_hours"))
        s.nowcast_hours = get_as<int>(j, "nowcast_hours", "scheme");
    s.p_max = p_max;
    if (s.kind != SchemeKind::Mpc) {
        s.step_hours = 0;
        s.nowcast_hours = kDefaultNowcastHours;
    }
    try {
        validate(s);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return s;
}

} // namespace

FleetParams fleet_params_from_json(const json& j)
{
    const std::string what = "fleet config";
    require_exact_keys(j,
                       {"start_year", "end_year", "initial_ev_count", "ldv_total_by_year",
                        "market_share_points", "lifetime_r", "km_per_ev_day", "kwh_per_km"},
                       what);
    FleetParams p;
    p.start_year = get_as<int>(j, "start_year", what);
    p.end_year = get_as<int>(j, "end_year", what);
    p.initial_ev_count = get_as<double>(j, "initial_ev_count", what);
    p.lifetime_r = get_as<int>(j, "lifetime_r", what);
    p.km_per_ev_day = get_as<double>(j, "km_per_ev_day", what);
    p.kwh_per_km = get_as<double>(j, "kwh_per_km", what);

    const auto& ldv = j.at("ldv_total_by_year");
    if (!ldv.is_object())
        throw ConfigError("ldv_total_by_year must map year to count");
    for (const auto& [year, count] : ldv.items()) {
        std::size_t used = 0;
        int y = 0;
        try {
            y = std::stoi(year, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != year.size() || !count.is_number())
            throw ConfigError("bad ldv_total_by_year entry '" + year + "'");
        p.ldv_total_by_year[y] = count.get<double>();
    }

    const auto& points = j.at("market_share_points");
    if (!points.is_array())
        throw ConfigError("market_share_points must be a list of [year, fraction]");
    for (const auto& pt : points) {
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number_integer() || !pt[1].is_number())
            throw ConfigError("market_share_points entries must be [year, fraction]");
        p.market_share_points.push_back({pt[0].get<int>(), pt[1].get<double>()});
    }
    return p;
}

json fleet_params_to_json(const FleetParams& p)
{
    json ldv = json::object();
    for (const auto& [year, count] : p.ldv_total_by_year)
        ldv[std::to_string(year)] = count;
    json points = json::array();
    for (const auto& pt : p.market_share_points)
        points.push_back({pt.year, pt.fraction});
    return {{"start_year", p.start_year},
            {"end_year", p.end_year},
            {"initial_ev_count", p.initial_ev_count},
            {"ldv_total_by_year", ldv},
            {"market_share_points", points},
            {"lifetime_r", p.lifetime_r},
            {"km_per_ev_day", p.km_per_ev_day},
            {"kwh_per_km", p.kwh_per_km}};
}

FleetParams read_fleet_config(const fs::path& path)
{
    return fleet_params_from_json(read_json_file(path));
}

HourlyDistribution read_hourly_distribution(const fs::path& path)
{
    const auto rows = read_csv(path, "hour,fraction");
    check_hour_column(rows, kHoursPerDay, path);
    HourlyDistribution dist{};
    for (std::size_t h = 0; h < kHoursPerDay; ++h)
        dist[h] = rows[h][1];
    return dist;
}

std::string hourly_distribution_csv(const HourlyDistribution& dist)
{
    std::string out = "hour,fraction\n";
    for (std::size_t h = 0; h < dist.size(); ++h)
        out += std::to_string(h) + "," + format_fixed6(dist[h]) + "\n";
    return out;
}

GridSeries read_load_csv(const fs::path& path)
{
    const auto rows = read_csv(path, "hour,load_mwh");
    check_hour_column(rows, kHoursPerYear, path);
    return GridSeries(column(rows, 1));
}

std::string load_csv(const GridSeries& load)
{
    std::string out = "hour,load_mwh\n";
    for (std::size_t h = 0; h < load.size(); ++h)
        out += std::to_string(h) + "," + format_fixed6(load[h]) + "\n";
    return out;
}

CapacityFactors read_capacity_factor_csv(const fs::path& path)
{
    const auto rows = read_csv(path, "hour,wind_cf,solar_cf");
    check_hour_column(rows, kHoursPerYear, path);
    CapacityFactors cf{GridSeries(column(rows, 1)), GridSeries(column(rows, 2))};
    for (std::size_t h = 0; h < kHoursPerYear; ++h)
        if (cf.wind[h] < 0.0 || cf.wind[h] > 1.0 || cf.solar[h] < 0.0 || cf.solar[h] > 1.0)
            throw DataError(path.string() + ": capacity factor outside [0, 1] at hour " + std::to_string(h));
    return cf;
}

std::string capacity_factor_csv(const CapacityFactors& cf)
{
    std::string out = "hour,wind_cf,solar_cf\n";
    for (std::size_t h = 0; h < cf.wind.size(); ++h)
        out += std::to_string(h) + "," + format_fixed6(cf.wind[h]) + "," + format_fixed6(cf.solar[h]) + "\n";
    return out;
}

ScenarioConfig scenario_config_from_json(const json& j)
{
    const std::string what = "scenario config";
    require_exact_keys(j, {"wind_mw", "solar_mw", "population_growth_factor"}, what);
    ScenarioConfig cfg;
    cfg.capacity.wind_mw = get_as<double>(j, "wind_mw", what);
    cfg.capacity.solar_mw = get_as<double>(j, "solar_mw", what);
    cfg.population_growth_factor = get_as<double>(j, "population_growth_factor", what);
    if (!(cfg.capacity.wind_mw >= 0.0) || !(cfg.capacity.solar_mw >= 0.0))
        throw ConfigError("installed capacity must be non-negative");
    if (!(cfg.population_growth_factor >= 0.0))
        throw ConfigError("population_growth_factor must be non-negative");
    return cfg;
}

json scenario_config_to_json(const ScenarioConfig& cfg)
{
    return {{"wind_mw", cfg.capacity.wind_mw},
            {"solar_mw", cfg.capacity.solar_mw},
            {"population_growth_factor", cfg.population_growth_factor}};
}

Manifest manifest_from_json(const json& j)
{
    const std::string what = "manifest";
    Manifest m;
    m.seed = get_as<std::uint64_t>(j, "seed", what);
    m.curtailment_day_count = get_as<std::size_t>(j, "curtailment_day_count", what);
    m.sample_day_indices = get_as<std::vector<int>>(j, "sample_day_indices", what);
    m.sample_day_bau_curtailment_mwh = get_as<std::vector<double>>(j, "sample_day_bau_curtailment_mwh", what);
    if (m.sample_day_indices.size() != m.sample_day_bau_curtailment_mwh.size())
        throw ConfigError("manifest sample day lists differ in length");
    return m;
}

json manifest_to_json(const Manifest& m)
{
    return {{"seed", m.seed},
            {"curtailment_day_count", m.curtailment_day_count},
            {"sample_day_indices", m.sample_day_indices},
            {"sample_day_bau_curtailment_mwh", m.sample_day_bau_curtailment_mwh}};
}

RunConfig run_config_from_json(const json& j, const fs::path& base_dir)
{
    const std::string what = "run config";
    if (!j.is_object())
        throw ConfigError("run config must be a JSON object");
    RunConfig c;
    c.scenario = j.value("scenario", std::string("unnamed"));
    c.fleet_config = resolve(base_dir, get_as<std::string>(j, "fleet_config", what));
    c.hourly_distribution = resolve(base_dir, get_as<std::string>(j, "hourly_distribution", what));
    c.load_csv = resolve(base_dir, get_as<std::string>(j, "load_csv", what));
    c.capacity_factor_csv = resolve(base_dir, get_as<std::string>(j, "capacity_factor_csv", what));
    c.scenario_config = resolve(base_dir, get_as<std::string>(j, "scenario_config", what));
    if (j.contains("manifest"))
        c.manifest = resolve(base_dir, get_as<std::string>(j, "manifest", what));
    if (j.contains("golden_report"))
        c.golden_report = resolve(base_dir, get_as<std::string>(j, "golden_report", what));
    c.p_max = j.contains("p_max") ? get_as<double>(j, "p_max", what) : 0.5;
    if (!(c.p_max >= 0.0 && c.p_max <= 1.0))
        throw ConfigError("p_max must lie in [0, 1]");
    c.seed = j.contains("seed") ? get_as<std::uint64_t>(j, "seed", what) : 0;
    if (j.contains("schemes")) {
        if (!j.at("schemes").is_array())
            throw ConfigError("schemes must be a list");
        for (const auto& s : j.at("schemes"))
            c.schemes.push_back(scheme_from_json(s, c.p_max));
    }
    return c;
}

RunConfig read_run_config(const fs::path& path)
{
    return run_config_from_json(read_json_file(path), path.parent_path());
}

json read_json_file(const fs::path& path)
{
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

json report_to_json(const AnnualReport& report)
{
    json schemes = json::array();
    for (const auto& s : report.summaries) {
        json entry = scheme_to_json(s.scheme);
        entry["total_additional_res_mwh"] = s.total_additional_res_mwh;
        entry["win_fraction"] = s.win_fraction;
        entry["worse_than_bau_days"] = s.worse_than_bau_days;
        schemes.push_back(entry);
    }
    json days = json::array();
    for (const auto& d : report.days) {
        json results = json::array();
        for (const auto& r : d.results) {
            json entry = scheme_to_json(r.scheme);
            entry["bau_curtailment_mwh"] = r.bau_curtailment;
            entry["realized_curtailment_mwh"] = r.realized_curtailment;
            entry["additional_res_used_mwh"] = r.additional_res_used;
            results.push_back(entry);
        }
        days.push_back({{"day_index", d.day_index}, {"results", results}});
    }
    return {{"scenario",
             {{"name", report.scenario},
              {"p_max", report.p_max},
              {"sample_days", report.sample_days},
              {"win_rule", "shared credit within 1e-6 MWh of the day's best"}}},
            {"curtailment_day_count", report.curtailment_day_count()},
            {"schemes", schemes},
            {"days", days}};
}

AnnualReport report_from_json(const json& j)
{
    const std::string what = "report";
    require_exact_keys(j, {"scenario", "curtailment_day_count", "schemes", "days"}, what);
    AnnualReport r;
    try {
        const auto& sc = j.at("scenario");
        r.scenario = sc.at("name").get<std::string>();
        r.p_max = sc.at("p_max").get<double>();
        r.sample_days = sc.value("sample_days", std::vector<int>{});
        for (const auto& s : j.at("schemes"))
            r.schemes.push_back(scheme_from_json(s, r.p_max));
        for (const auto& d : j.at("days")) {
            DayRecord rec;
            rec.day_index = d.at("day_index").get<int>();
            for (const auto& e : d.at("results")) {
                DayResult res;
                res.scheme = scheme_from_json(e, r.p_max);
                res.day_index = rec.day_index;
                res.bau_curtailment = e.at("bau_curtailment_mwh").get<double>();
                res.realized_curtailment = e.at("realized_curtailment_mwh").get<double>();
                res.additional_res_used = e.at("additional_res_used_mwh").get<double>();
                rec.results.push_back(std::move(res));
            }
            r.days.push_back(std::move(rec));
        }
        if (j.at("curtailment_day_count").get<std::size_t>() != r.days.size())
            throw ConfigError("curtailment_day_count does not match the day records");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
    r.summaries = summarize(r.schemes, r.days);
    return r;
}

std::string dump_json(const json& j)
{
    return j.dump(2) + "\n";
}

std::string curtailment_days_csv(const std::vector<CurtailmentDay>& days)
{
    std::string out = "day_index,hour,forecast_excess_mwh,actual_excess_mwh\n";
    for (const auto& d : days)
        for (std::size_t h = 0; h < d.forecast_excess.size(); ++h)
            out += std::to_string(d.day_index) + "," + std::to_string(h) + "," +
                   format_fixed6(d.forecast_excess[h]) + "," + format_fixed6(d.actual_excess[h]) + "\n";
    return out;
}

std::string remaining_excess_csv(const CurtailmentDay& day, const Profile& bau_load, const Profile& scheme_load)
{
    std::string out = "hour,bau_excess_mwh,scheme_excess_mwh\n";
    for (std::size_t h = 0; h < day.actual_excess.size(); ++h)
        out += std::to_string(h) + "," + format_fixed6(std::max(day.actual_excess[h] - bau_load[h], 0.0)) +
               "," + format_fixed6(std::max(day.actual_excess[h] - scheme_load[h], 0.0)) + "\n";
    return out;
}

} // namespace evshift
