#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "evshift/config.hpp"
#include "evshift/csv.hpp"
#include "evshift/errors.hpp"
#include "evshift/scenario.hpp"
#include "evshift/sim.hpp"
#include "evshift/synth.hpp"

using namespace evshift;
using nlohmann::json;

namespace {

const fs::path kSeedDir = fs::path(EVSHIFT_DATA_DIR) / "seed42";

class TempDir
{
public:
    TempDir()
    {
        path_ = fs::temp_directory_path() /
                ("evshift_config_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

} // namespace

TEST(FormatFixed6, Examples)
{
    EXPECT_EQ(format_fixed6(0.0), "0.000000");
    EXPECT_EQ(format_fixed6(-0.0), "0.000000");
    EXPECT_EQ(format_fixed6(-1e-9), "0.000000");
    EXPECT_EQ(format_fixed6(1.5), "1.500000");
    EXPECT_EQ(format_fixed6(-2.25), "-2.250000");
    EXPECT_EQ(format_fixed6(1234567.0000004), "1234567.000000");
}

TEST(ParseCsv, Examples)
{
    const auto rows = parse_csv("a,b\n1,2\n3.5,-4e2\n\n", "a,b");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][0], 3.5);
    EXPECT_EQ(rows[1][1], -400.0);
    EXPECT_THROW(parse_csv("a,c\n1,2\n", "a,b"), DataError);
    EXPECT_THROW(parse_csv("a,b\n1\n", "a,b"), DataError);
    EXPECT_THROW(parse_csv("a,b\n1,x\n", "a,b"), DataError);
    EXPECT_THROW(parse_csv("a,b\n1,2x\n", "a,b"), DataError);
    EXPECT_THROW(parse_csv("", "a,b"), DataError);
}

TEST(ParseCsv, ErrorNamesLine)
{
    try {
        parse_csv("a,b\n1,2\n3,oops\n", "a,b", "thing.csv");
        FAIL();
    } catch (const DataError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("thing.csv"), std::string::npos) << msg;
        EXPECT_NE(msg.find("3"), std::string::npos) << msg;
    }
}

TEST(FleetJson, RoundTrip)
{
    auto p = default_fleet_params();
    const auto back = fleet_params_from_json(fleet_params_to_json(p));
    EXPECT_EQ(back.start_year, p.start_year);
    EXPECT_EQ(back.end_year, p.end_year);
    EXPECT_EQ(back.ldv_total_by_year, p.ldv_total_by_year);
    ASSERT_EQ(back.market_share_points.size(), p.market_share_points.size());
    EXPECT_EQ(back.market_share_points[1].fraction, p.market_share_points[1].fraction);
    EXPECT_EQ(back.lifetime_r, p.lifetime_r);
    EXPECT_EQ(back.km_per_ev_day, p.km_per_ev_day);
}

TEST(FleetJson, MissingUnknownAndMalformedKeys)
{
    const auto good = fleet_params_to_json(default_fleet_params());
    auto j = good;
    j.erase("lifetime_r");
    EXPECT_THROW(fleet_params_from_json(j), ConfigError);
    j = good;
    j["colour"] = "blue";
    EXPECT_THROW(fleet_params_from_json(j), ConfigError);
    j = good;
    j["lifetime_r"] = "twelve";
    EXPECT_THROW(fleet_params_from_json(j), ConfigError);
    j = good;
    j["ldv_total_by_year"]["20x5"] = 1;
    EXPECT_THROW(fleet_params_from_json(j), ConfigError);
    j = good;
    j["market_share_points"] = json::array({json::array({2030})});
    EXPECT_THROW(fleet_params_from_json(j), ConfigError);
    EXPECT_THROW(fleet_params_from_json(json::array()), ConfigError);
}

TEST(ScenarioJson, RoundTripAndValidation)
{
    ScenarioConfig cfg{{46000, 60000}, 1.13};
    const auto back = scenario_config_from_json(scenario_config_to_json(cfg));
    EXPECT_EQ(back.capacity.wind_mw, 46000);
    EXPECT_EQ(back.capacity.solar_mw, 60000);
    EXPECT_EQ(back.population_growth_factor, 1.13);
    auto j = scenario_config_to_json(cfg);
    j["wind_mw"] = -1;
    EXPECT_THROW(scenario_config_from_json(j), ConfigError);
}

TEST(ManifestJson, RoundTrip)
{
    Manifest m{42, 3, {1, 40, 70}, {0.0, 12.5, 7.25}};
    const auto back = manifest_from_json(manifest_to_json(m));
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(back.curtailment_day_count, 3u);
    EXPECT_EQ(back.sample_day_indices, m.sample_day_indices);
    EXPECT_EQ(back.sample_day_bau_curtailment_mwh, m.sample_day_bau_curtailment_mwh);
}

TEST(CsvFiles, RoundTripThroughDisk)
{
    TempDir tmp;
    const auto ds = synth_dataset(SynthParams::defaults());
    write_text_file(tmp.path() / "load.csv", load_csv(ds.load));
    write_text_file(tmp.path() / "cf.csv", capacity_factor_csv(ds.capacity_factors));
    write_text_file(tmp.path() / "dist.csv", hourly_distribution_csv(ds.fleet.hourly_distribution));
    const auto load = read_load_csv(tmp.path() / "load.csv");
    for (std::size_t h = 0; h < kHoursPerYear; ++h)
        ASSERT_EQ(load[h], ds.load[h]);
    const auto cf = read_capacity_factor_csv(tmp.path() / "cf.csv");
    EXPECT_EQ(cf.wind[5000], ds.capacity_factors.wind[5000]);
    EXPECT_EQ(cf.solar[4000], ds.capacity_factors.solar[4000]);
    EXPECT_EQ(read_hourly_distribution(tmp.path() / "dist.csv"), ds.fleet.hourly_distribution);
}

TEST(CsvFiles, ShapeErrors)
{
    TempDir tmp;
    write_text_file(tmp.path() / "short.csv", "hour,load_mwh\n0,1\n1,2\n");
    EXPECT_THROW(read_load_csv(tmp.path() / "short.csv"), DataError);
    std::string shuffled = "hour,fraction\n";
    for (int h = 0; h < 24; ++h)
        shuffled += std::to_string(h == 3 ? 4 : h == 4 ? 3 : h) + ",0.041666666666666664\n";
    write_text_file(tmp.path() / "dist.csv", shuffled);
    EXPECT_THROW(read_hourly_distribution(tmp.path() / "dist.csv"), DataError);
    EXPECT_THROW(read_load_csv(tmp.path() / "absent.csv"), DataError);

    std::string cf = "hour,wind_cf,solar_cf\n";
    for (std::size_t h = 0; h < kHoursPerYear; ++h)
        cf += std::to_string(h) + (h == 77 ? ",1.2,0\n" : ",0.5,0\n");
    write_text_file(tmp.path() / "cf.csv", cf);
    EXPECT_THROW(read_capacity_factor_csv(tmp.path() / "cf.csv"), DataError);
}

TEST(RunConfig, ResolvesPathsRelativeToFile)
{
    const auto run = read_run_config(kSeedDir / "run.json");
    EXPECT_EQ(run.load_csv, kSeedDir / "load.csv");
    EXPECT_EQ(run.fleet_config, kSeedDir / "fleet.json");
    ASSERT_TRUE(run.manifest);
    EXPECT_EQ(*run.manifest, kSeedDir / "manifest.json");
    EXPECT_EQ(run.p_max, 0.5);
    EXPECT_EQ(run.seed, 42u);
    ASSERT_EQ(run.schemes.size(), 3u);
    EXPECT_EQ(run.schemes[1], (SchemeSpec{SchemeKind::Mpc, 6, 0.5, kDefaultNowcastHours}));
    EXPECT_EQ(run.schemes[0], (SchemeSpec{SchemeKind::OpenLoop, 0, 0.5, kDefaultNowcastHours}));
}

TEST(RunConfig, RejectsBadSchemesAndPmax)
{
    auto j = read_json_file(kSeedDir / "run.json");
    auto bad = j;
    bad["schemes"][1]["step_hours"] = 5;
    EXPECT_THROW(run_config_from_json(bad, kSeedDir), ConfigError);
    bad = j;
    bad["p_max"] = 1.5;
    EXPECT_THROW(run_config_from_json(bad, kSeedDir), ConfigError);
    bad = j;
    bad["schemes"][0]["kind"] = "greedy";
    EXPECT_THROW(run_config_from_json(bad, kSeedDir), ConfigError);
    EXPECT_THROW(read_json_file(kSeedDir / "nope.json"), ConfigError);
}

TEST(RunConfig, MalformedJsonIsConfigError)
{
    TempDir tmp;
    write_text_file(tmp.path() / "broken.json", "{\"p_max\": ");
    EXPECT_THROW(read_run_config(tmp.path() / "broken.json"), ConfigError);
}

TEST(ReportJson, RoundTrip)
{
    const auto sc = load_scenario(read_run_config(kSeedDir / "run.json"));
    auto report = run_year(sc.days, sc.bau,
                           {SchemeSpec{SchemeKind::OpenLoop, 0, 0.5}, SchemeSpec{SchemeKind::Mpc, 3, 0.5}});
    report.scenario = "x";
    report.sample_days = first_day_of_each_month(sc.days);
    const auto text = dump_json(report_to_json(report));
    const auto back = report_from_json(json::parse(text));
    EXPECT_EQ(back.scenario, "x");
    EXPECT_EQ(back.p_max, 0.5);
    EXPECT_EQ(back.schemes, report.schemes);
    EXPECT_EQ(back.sample_days, report.sample_days);
    EXPECT_EQ(back.curtailment_day_count(), report.curtailment_day_count());
    for (std::size_t k = 0; k < back.summaries.size(); ++k) {
        EXPECT_EQ(back.summaries[k].wins, report.summaries[k].wins);
        EXPECT_EQ(back.summaries[k].total_additional_res_mwh, report.summaries[k].total_additional_res_mwh);
    }
    EXPECT_EQ(dump_json(report_to_json(back)), text);
}

TEST(ReportJson, CountMismatchIsConfigError)
{
    const auto sc = load_scenario(read_run_config(kSeedDir / "run.json"));
    auto j = report_to_json(run_year(sc.days, sc.bau, {SchemeSpec{SchemeKind::OpenLoop, 0, 0.5}}));
    j["curtailment_day_count"] = 1;
    EXPECT_THROW(report_from_json(j), ConfigError);
}

TEST(DayCsv, Layout)
{
    Profile f(24, 0.0), a(24, 1.0);
    f[2] = 3.5;
    const auto text = curtailment_days_csv({{7, f, a}});
    EXPECT_EQ(text.rfind("day_index,hour,forecast_excess_mwh,actual_excess_mwh\n", 0), 0u);
    EXPECT_NE(text.find("\n7,2,3.500000,1.000000\n"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 25);

    const auto rem = remaining_excess_csv({7, f, a}, Profile(24, 0.25), Profile(24, 2.0));
    EXPECT_NE(rem.find("\n0,0.750000,0.000000\n"), std::string::npos);
}
