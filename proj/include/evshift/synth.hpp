#pragma once

#include <cstdint>
#include <filesystem>

#include "evshift/config.hpp"

namespace evshift {

// Shape parameters of the synthetic year. Defaults describe a Texas-like
// grid in the target year: hot-summer diurnal load, solar bells whose width
// follows day length, and multi-day wind regimes that are stronger at night
// and in spring.
struct SynthParams
{
    std::uint64_t seed = 42;
    double wind_mw = 0.0;
    double solar_mw = 0.0;
    double population_growth_factor = 1.13;
    double base_load_mw = 0.0;
    double summer_peak_mw = 0.0;
    double winter_peak_mw = 0.0;
    double p_max = 0.5;

    static SynthParams defaults();
};

SynthParams synth_params_from_json(const nlohmann::json& j);

// Fleet config calibrated so the projected end-year fleet and its daily
// energy land on the target values.
FleetParams default_fleet_params();

struct SynthDataset
{
    SynthParams params;
    GridSeries load;
    CapacityFactors capacity_factors;
    FleetParams fleet; // hourly_distribution filled in
    ScenarioConfig scenario;
    Manifest manifest;
};

// Deterministic per seed on a given platform: uses mt19937_64 and its own
// uniform/normal transforms rather than the implementation-defined
// std distributions.
SynthDataset synth_dataset(const SynthParams& params);

// Writes load.csv, capacity_factors.csv, ev_hourly_distribution.csv,
// fleet.json, scenario.json, manifest.json and run.json into `dir`.
void write_dataset(const SynthDataset& ds, const std::filesystem::path& dir);

} // namespace evshift
