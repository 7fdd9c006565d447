#include "evshift/scenario.hpp"

namespace evshift {

Scenario build_scenario(const FleetParams& fleet, const GridSeries& load, const CapacityFactors& cf,
                        const ScenarioConfig& cfg)
{
    validate(fleet);
    Scenario s;
    const auto projection = project_fleet(fleet);
    s.ev_count = projection.ev_counts.back();
    s.daily_ev_mwh = fleet_daily_energy(s.ev_count, fleet.km_per_ev_day, fleet.kwh_per_km);
    s.bau = build_bau_profile(s.daily_ev_mwh, fleet.hourly_distribution);

    const auto scaled_load = scale_series(load, cfg.population_growth_factor);
    const auto res = res_output_series(cf.wind, cf.solar, cfg.capacity);
    s.excess = excess_res_series(res, scaled_load);
    s.days = pair_curtailment_days(s.excess);
    return s;
}

Scenario load_scenario(const RunConfig& run)
{
    auto fleet = read_fleet_config(run.fleet_config);
    fleet.hourly_distribution = read_hourly_distribution(run.hourly_distribution);
    const auto load = read_load_csv(run.load_csv);
    const auto cf = read_capacity_factor_csv(run.capacity_factor_csv);
    const auto cfg = scenario_config_from_json(read_json_file(run.scenario_config));
    auto s = build_scenario(fleet, load, cf, cfg);
    s.name = run.scenario;
    return s;
}

} // namespace evshift
