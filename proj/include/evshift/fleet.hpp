#pragma once

#include <array>
#include <map>
#include <span>
#include <vector>

#include "evshift/profile.hpp"

namespace evshift {

struct MarketSharePoint
{
    int year = 0;
    double fraction = 0.0;
};

using HourlyDistribution = std::array<double, kHoursPerDay>;

struct FleetParams
{
    int start_year = 0;
    int end_year = 0;
    double initial_ev_count = 0.0;
    std::map<int, double> ldv_total_by_year;
    std::vector<MarketSharePoint> market_share_points;
    int lifetime_r = 1;
    double km_per_ev_day = 0.0;
    double kwh_per_km = 0.0;
    HourlyDistribution hourly_distribution{};
};

struct FleetProjection
{
    std::vector<int> years;
    std::vector<double> ev_counts;
    std::vector<double> market_shares;

    // Count at a projected year; throws LookupError outside the range.
    double count_at(int year) const;
};

// Throws ConfigError if params break any invariant (including an incomplete
// LDV series over [start_year + 1, end_year]).
void validate(const FleetParams& params);

// Linear interpolation between anchors, held constant outside them.
double market_share_at(std::span<const MarketSharePoint> points, int year);

// Retirement/adoption recurrence:
//   EV[n] = (R - 1) / R * EV[n - 1] + MS[n] * LDV[n] / R
// with EV[start_year] = initial_ev_count.
FleetProjection project_fleet(const FleetParams& params);

// ev_count * km/day * kWh/km, returned in MWh/day.
double fleet_daily_energy(double ev_count, double km_per_ev_day, double kwh_per_km);

Profile build_bau_profile(double daily_mwh, std::span<const double> distribution);

// End-to-end convenience: project the fleet and spread the end-year energy
// over the hourly distribution.
Profile bau_profile_for(const FleetParams& params);

} // namespace evshift
