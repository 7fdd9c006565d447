#pragma once

#include <span>
#include <vector>

#include "evshift/profile.hpp"

namespace evshift {

// One simulation year of hourly values (MWh, or fractions for capacity
// factors). Always exactly 8760 finite entries; leap years are rejected.
class GridSeries
{
public:
    GridSeries() : values_(kHoursPerYear, 0.0) {}
    explicit GridSeries(std::vector<double> values);

    std::span<const double> values() const { return values_; }
    double operator[](std::size_t hour) const { return values_[hour]; }
    std::size_t size() const { return values_.size(); }

    // The 24-hour slice for a day of the year (0-based).
    Profile day(std::size_t day_index) const;

private:
    std::vector<double> values_;
};

struct InstalledCapacity
{
    double wind_mw = 0.0;
    double solar_mw = 0.0;
};

struct CurtailmentDay
{
    int day_index = 0;
    Profile forecast_excess;
    Profile actual_excess;
};

GridSeries scale_series(const GridSeries& series, double factor);

// output[h] = wind_cf[h] * wind_mw + solar_cf[h] * solar_mw
GridSeries res_output_series(const GridSeries& wind_cf, const GridSeries& solar_cf,
                             const InstalledCapacity& cap);

// excess[h] = max(res[h] - non_ev_load[h], 0)
GridSeries excess_res_series(const GridSeries& res, const GridSeries& non_ev_load);
GridSeries excess_res_series(std::span<const double> res, std::span<const double> non_ev_load);

// Days with any strictly positive excess hour, each paired with the next such
// day as its actual profile. The last one wraps around to the first.
std::vector<CurtailmentDay> pair_curtailment_days(const GridSeries& excess);

// Month (0-11) of a day of a non-leap year.
int month_of_day(int day_index);

} // namespace evshift
