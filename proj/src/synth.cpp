#include "evshift/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "evshift/control.hpp"
#include "evshift/csv.hpp"
#include "evshift/errors.hpp"
#include "evshift/scenario.hpp"
#include "evshift/sim.hpp"

namespace evshift {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(kTwoPi * u2);
        has_spare_ = true;
        return r * std::cos(kTwoPi * u2);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Values go to disk with 6 decimals; everything derived in memory (the
// manifest) must see the same numbers a reader will.
double quantize(double v)
{
    return std::strtod(format_fixed6(v).c_str(), nullptr);
}

double bump(double day, double centre, double width)
{
    const double z = (day - centre) / width;
    return std::exp(-z * z);
}

double logistic(double x)
{
    return 1.0 / (1.0 + std::exp(-x));
}

std::vector<double> synth_load(const SynthParams& p, Rng& rng)
{
    std::vector<double> load(kHoursPerYear);
    double noise = 0.0;
    for (std::size_t d = 0; d < kDaysPerYear; ++d) {
        const double day = static_cast<double>(d);
        const double summer = bump(day, 205.0, 45.0);
        const double winter = bump(day, 18.0, 22.0) + 0.6 * bump(day, 358.0, 14.0);
        const double level = p.base_load_mw + p.summer_peak_mw * summer + p.winter_peak_mw * winter;
        const double amplitude = 0.11 + 0.07 * summer;
        const bool weekend = (d % 7) == 5 || (d % 7) == 6;
        for (std::size_t k = 0; k < kHoursPerDay; ++k) {
            const double hour = static_cast<double>(k);
            const double shape = 1.0 + amplitude * std::cos(kTwoPi * (hour - 17.0) / 24.0) +
                                 0.03 * std::cos(2.0 * kTwoPi * (hour - 9.0) / 24.0);
            noise = 0.85 * noise + 0.012 * rng.normal();
            load[d * kHoursPerDay + k] = level * shape * (weekend ? 0.95 : 1.0) * (1.0 + noise);
        }
    }
    return load;
}

std::vector<double> synth_solar(Rng& rng)
{
    std::vector<double> cf(kHoursPerYear);
    double cloud = 0.0;
    for (std::size_t d = 0; d < kDaysPerYear; ++d) {
        const double day = static_cast<double>(d);
        const double season = std::sin(kTwoPi * (day - 80.0) / 365.0);
        const double day_length = 12.2 + 1.9 * season;
        const double sunrise = 13.4 - day_length / 2.0;
        const double peak = 0.80 + 0.06 * season;
        cloud = 0.55 * cloud + 0.835 * rng.normal();
        const double clearness = std::clamp(0.86 + 0.22 * cloud, 0.12, 1.0);
        for (std::size_t k = 0; k < kHoursPerDay; ++k) {
            const double x = (static_cast<double>(k) + 0.5 - sunrise) / day_length;
            double v = 0.0;
            if (x > 0.0 && x < 1.0)
                v = peak * clearness * std::pow(std::sin(std::numbers::pi * x), 1.3) * (1.0 + 0.04 * rng.normal());
            else
                rng.normal();
            cf[d * kHoursPerDay + k] = std::clamp(v, 0.0, 1.0);
        }
    }
    return cf;
}

std::vector<double> synth_wind(Rng& rng)
{
    std::vector<double> cf(kHoursPerYear);
    double regime = 0.0;
    double gust = 0.0;
    for (std::size_t d = 0; d < kDaysPerYear; ++d) {
        const double day = static_cast<double>(d);
        const double spring = bump(day, 105.0, 50.0);
        const double summer = bump(day, 215.0, 40.0);
        regime = 0.75 * regime + 0.66 * rng.normal();
        for (std::size_t k = 0; k < kHoursPerDay; ++k) {
            const double hour = static_cast<double>(k);
            const double diurnal = std::cos(kTwoPi * (hour - 2.0) / 24.0);
            gust = 0.9 * gust + 0.436 * rng.normal();
            const double latent = -0.75 + 0.55 * spring - 0.35 * summer + 0.45 * diurnal + 0.8 * regime + 0.35 * gust;
            cf[d * kHoursPerDay + k] = std::clamp(0.95 * logistic(latent), 0.0, 1.0);
        }
    }
    return cf;
}

HourlyDistribution default_hourly_distribution()
{
    // Per-mille shares of daily EV charging: overnight home charging tails off
    // after midnight, a workplace plateau through the day and an evening peak.
    static constexpr std::array<int, kHoursPerDay> kPerMille{45, 35, 25, 18, 14, 14, 18, 28, 38, 42, 42, 40,
                                                             38, 36, 36, 38, 44, 55, 65, 72, 74, 72, 65, 46};
    HourlyDistribution dist{};
    for (std::size_t k = 0; k < kHoursPerDay; ++k)
        dist[k] = kPerMille[k] / 1000.0;
    return dist;
}

} // namespace

SynthParams SynthParams::defaults()
{
    SynthParams p;
    p.wind_mw = 44000.0;
    p.solar_mw = 56000.0;
    p.base_load_mw = 42000.0;
    p.summer_peak_mw = 16000.0;
    p.winter_peak_mw = 7000.0;
    return p;
}

SynthParams synth_params_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw ConfigError("synth params must be a JSON object");
    SynthParams p = SynthParams::defaults();
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "seed")
                p.seed = value.get<std::uint64_t>();
            else if (key == "wind_mw")
                p.wind_mw = value.get<double>();
            else if (key == "solar_mw")
                p.solar_mw = value.get<double>();
            else if (key == "population_growth_factor")
                p.population_growth_factor = value.get<double>();
            else if (key == "base_load_mw")
                p.base_load_mw = value.get<double>();
            else if (key == "summer_peak_mw")
                p.summer_peak_mw = value.get<double>();
            else if (key == "winter_peak_mw")
                p.winter_peak_mw = value.get<double>();
            else if (key == "p_max")
                p.p_max = value.get<double>();
            else
                throw ConfigError("unknown synth parameter '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad synth parameter: ") + e.what());
    }
    return p;
}

FleetParams default_fleet_params()
{
    FleetParams f;
    f.start_year = 2024;
    f.end_year = 2035;
    f.initial_ev_count = 300000.0;
    // Registered LDVs growing 1.2 %/yr; the 2024 level is calibrated so the
    // projection reaches 9.45 million EVs in 2035.
    constexpr double kLdv2024 = 23969075.0;
    for (int year = f.start_year; year <= f.end_year; ++year)
        f.ldv_total_by_year[year] = std::round(kLdv2024 * std::pow(1.012, year - f.start_year));
    f.market_share_points = {{2024, 0.05}, {2030, 0.5}, {2035, 0.9}};
    f.lifetime_r = 12;
    f.km_per_ev_day = 43.62;
    f.kwh_per_km = 0.2;
    f.hourly_distribution = default_hourly_distribution();
    return f;
}

SynthDataset synth_dataset(const SynthParams& params)
{
    if (!(params.wind_mw >= 0.0) || !(params.solar_mw >= 0.0) || !(params.population_growth_factor >= 0.0))
        throw ConfigError("synth capacities and growth factor must be non-negative");
    if (!(params.p_max >= 0.0 && params.p_max <= 1.0))
        throw ConfigError("synth p_max must lie in [0, 1]");

    // Independent streams so changing one generator leaves the others intact.
    Rng load_rng(params.seed);
    Rng solar_rng(params.seed ^ 0x9E3779B97F4A7C15ULL);
    Rng wind_rng(params.seed ^ 0xC2B2AE3D27D4EB4FULL);

    auto load = synth_load(params, load_rng);
    auto solar = synth_solar(solar_rng);
    auto wind = synth_wind(wind_rng);
    for (auto* series : {&load, &solar, &wind})
        for (double& v : *series)
            v = quantize(v);

    SynthDataset ds{params,
                    GridSeries(std::move(load)),
                    {GridSeries(std::move(wind)), GridSeries(std::move(solar))},
                    default_fleet_params(),
                    {{params.wind_mw, params.solar_mw}, params.population_growth_factor},
                    {}};

    const auto scenario = build_scenario(ds.fleet, ds.load, ds.capacity_factors, ds.scenario);
    ds.manifest.seed = params.seed;
    ds.manifest.curtailment_day_count = scenario.days.size();
    ds.manifest.sample_day_indices = first_day_of_each_month(scenario.days);
    for (int idx : ds.manifest.sample_day_indices) {
        const auto it = std::find_if(scenario.days.begin(), scenario.days.end(),
                                     [idx](const CurtailmentDay& d) { return d.day_index == idx; });
        ds.manifest.sample_day_bau_curtailment_mwh.push_back(run_bau(*it, scenario.bau).realized_curtailment);
    }
    return ds;
}

void write_dataset(const SynthDataset& ds, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create " + dir.string() + ": " + ec.message());

    nlohmann::json schemes = nlohmann::json::array();
    schemes.push_back({{"kind", "open_loop"}});
    schemes.push_back({{"kind", "mpc"}, {"step_hours", 6}});
    schemes.push_back({{"kind", "mpc"}, {"step_hours", 3}});
    const nlohmann::json run = {{"scenario", "synthetic-seed-" + std::to_string(ds.params.seed)},
                                {"fleet_config", "fleet.json"},
                                {"hourly_distribution", "ev_hourly_distribution.csv"},
                                {"load_csv", "load.csv"},
                                {"capacity_factor_csv", "capacity_factors.csv"},
                                {"scenario_config", "scenario.json"},
                                {"manifest", "manifest.json"},
                                {"golden_report", "golden_report.json"},
                                {"p_max", ds.params.p_max},
                                {"seed", ds.params.seed},
                                {"schemes", schemes}};

    write_text_file(dir / "load.csv", load_csv(ds.load));
    write_text_file(dir / "capacity_factors.csv", capacity_factor_csv(ds.capacity_factors));
    write_text_file(dir / "ev_hourly_distribution.csv", hourly_distribution_csv(ds.fleet.hourly_distribution));
    write_text_file(dir / "fleet.json", dump_json(fleet_params_to_json(ds.fleet)));
    write_text_file(dir / "scenario.json", dump_json(scenario_config_to_json(ds.scenario)));
    write_text_file(dir / "manifest.json", dump_json(manifest_to_json(ds.manifest)));
    write_text_file(dir / "run.json", dump_json(run));
}

} // namespace evshift
