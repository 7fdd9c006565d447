#pragma once

#include <string>
#include <vector>

#include "evshift/config.hpp"
#include "evshift/fleet.hpp"
#include "evshift/grid.hpp"

namespace evshift {

// Everything a year simulation needs: the EV BAU profile and the paired
// curtailment days derived from the scaled grid.
struct Scenario
{
    std::string name;
    double ev_count = 0.0;
    double daily_ev_mwh = 0.0;
    Profile bau;
    GridSeries excess;
    std::vector<CurtailmentDay> days;
};

// Scales the non-EV load by population growth, converts capacity factors to
// RES output and pairs the days with excess RES. EV demand is not added to
// the load; the excess is what EV charging could absorb.
Scenario build_scenario(const FleetParams& fleet, const GridSeries& load, const CapacityFactors& cf,
                        const ScenarioConfig& cfg);

// Reads and validates every input referenced by a run config.
Scenario load_scenario(const RunConfig& run);

} // namespace evshift
