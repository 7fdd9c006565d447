#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evshift/fleet.hpp"
#include "evshift/grid.hpp"
#include "evshift/sim.hpp"

namespace evshift {

namespace fs = std::filesystem;

// Fleet config JSON. Keys are exactly start_year, end_year, initial_ev_count,
// ldv_total_by_year, market_share_points, lifetime_r, km_per_ev_day,
// kwh_per_km. The hourly distribution is not part of it.
FleetParams fleet_params_from_json(const nlohmann::json& j);
nlohmann::json fleet_params_to_json(const FleetParams& params);
FleetParams read_fleet_config(const fs::path& path);

// hour,fraction
HourlyDistribution read_hourly_distribution(const fs::path& path);
std::string hourly_distribution_csv(const HourlyDistribution& dist);

// hour,load_mwh
GridSeries read_load_csv(const fs::path& path);
std::string load_csv(const GridSeries& load);

struct CapacityFactors
{
    GridSeries wind;
    GridSeries solar;
};

// hour,wind_cf,solar_cf
CapacityFactors read_capacity_factor_csv(const fs::path& path);
std::string capacity_factor_csv(const CapacityFactors& cf);

struct ScenarioConfig
{
    InstalledCapacity capacity;
    double population_growth_factor = 1.0;
};

ScenarioConfig scenario_config_from_json(const nlohmann::json& j);
nlohmann::json scenario_config_to_json(const ScenarioConfig& cfg);

struct Manifest
{
    std::uint64_t seed = 0;
    std::size_t curtailment_day_count = 0;
    std::vector<int> sample_day_indices;
    std::vector<double> sample_day_bau_curtailment_mwh;
};

Manifest manifest_from_json(const nlohmann::json& j);
nlohmann::json manifest_to_json(const Manifest& m);

// Paths are resolved relative to the directory of the run config file.
struct RunConfig
{
    std::string scenario;
    fs::path fleet_config;
    fs::path hourly_distribution;
    fs::path load_csv;
    fs::path capacity_factor_csv;
    fs::path scenario_config;
    std::optional<fs::path> manifest;
    std::optional<fs::path> golden_report;
    double p_max = 0.5;
    std::uint64_t seed = 0;
    std::vector<SchemeSpec> schemes;
};

RunConfig run_config_from_json(const nlohmann::json& j, const fs::path& base_dir);
RunConfig read_run_config(const fs::path& path);

nlohmann::json read_json_file(const fs::path& path);

// Report JSON: scenario, curtailment_day_count, schemes, days.
nlohmann::json report_to_json(const AnnualReport& report);
AnnualReport report_from_json(const nlohmann::json& j);
std::string dump_json(const nlohmann::json& j);

// day_index,hour,forecast_excess_mwh,actual_excess_mwh
std::string curtailment_days_csv(const std::vector<CurtailmentDay>& days);

// hour,bau_excess_mwh,scheme_excess_mwh: what is left unused per hour.
std::string remaining_excess_csv(const CurtailmentDay& day, const Profile& bau_load,
                                 const Profile& scheme_load);

} // namespace evshift
