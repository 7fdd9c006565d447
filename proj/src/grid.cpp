#include "evshift/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "evshift/errors.hpp"

namespace evshift {

GridSeries::GridSeries(std::vector<double> values) : values_(std::move(values))
{
    if (values_.size() != kHoursPerYear)
        throw DataError("grid series must have 8760 hourly values, got " +
                        std::to_string(values_.size()));
    for (std::size_t h = 0; h < values_.size(); ++h)
        if (!std::isfinite(values_[h]))
            throw DataError("non-finite value at hour " + std::to_string(h));
}

Profile GridSeries::day(std::size_t day_index) const
{
    if (day_index >= kDaysPerYear)
        throw LookupError("day index " + std::to_string(day_index) + " out of range");
    const auto first = values_.begin() + static_cast<std::ptrdiff_t>(day_index * kHoursPerDay);
    return Profile(first, first + kHoursPerDay);
}

GridSeries scale_series(const GridSeries& series, double factor)
{
    if (!(factor >= 0.0) || !std::isfinite(factor))
        throw DomainError("scale factor must be finite and non-negative");
    std::vector<double> out(series.values().begin(), series.values().end());
    for (double& v : out)
        v *= factor;
    return GridSeries(std::move(out));
}

GridSeries res_output_series(const GridSeries& wind_cf, const GridSeries& solar_cf,
                             const InstalledCapacity& cap)
{
    if (!(cap.wind_mw >= 0.0) || !(cap.solar_mw >= 0.0))
        throw DomainError("installed capacity must be non-negative");
    std::vector<double> out(kHoursPerYear);
    for (std::size_t h = 0; h < kHoursPerYear; ++h) {
        const double w = wind_cf[h];
        const double s = solar_cf[h];
        if (w < 0.0 || w > 1.0 || s < 0.0 || s > 1.0)
            throw DataError("capacity factor outside [0, 1] at hour " + std::to_string(h));
        out[h] = w * cap.wind_mw + s * cap.solar_mw;
    }
    return GridSeries(std::move(out));
}

GridSeries excess_res_series(const GridSeries& res, const GridSeries& non_ev_load)
{
    return excess_res_series(res.values(), non_ev_load.values());
}

GridSeries excess_res_series(std::span<const double> res, std::span<const double> non_ev_load)
{
    if (res.size() != non_ev_load.size())
        throw DataError("RES and load series differ in length");
    std::vector<double> out(res.size());
    for (std::size_t h = 0; h < res.size(); ++h)
        out[h] = std::max(res[h] - non_ev_load[h], 0.0);
    return GridSeries(std::move(out));
}

std::vector<CurtailmentDay> pair_curtailment_days(const GridSeries& excess)
{
    std::vector<int> selected;
    std::vector<Profile> profiles;
    for (std::size_t d = 0; d < kDaysPerYear; ++d) {
        Profile p = excess.day(d);
        for (double v : p)
            if (v < 0.0)
                throw DataError("excess series has a negative value on day " + std::to_string(d));
        if (std::any_of(p.begin(), p.end(), [](double v) { return v > 0.0; })) {
            selected.push_back(static_cast<int>(d));
            profiles.push_back(std::move(p));
        }
    }

    std::vector<CurtailmentDay> days;
    days.reserve(selected.size());
    for (std::size_t i = 0; i < selected.size(); ++i) {
        const std::size_t next = (i + 1) % selected.size();
        days.push_back({selected[i], profiles[i], profiles[next]});
    }
    return days;
}

int month_of_day(int day_index)
{
    static constexpr std::array<int, 12> kDaysInMonth{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (day_index < 0 || day_index >= static_cast<int>(kDaysPerYear))
        throw LookupError("day index " + std::to_string(day_index) + " out of range");
    int remaining = day_index;
    for (int m = 0; m < 12; ++m) {
        if (remaining < kDaysInMonth[m])
            return m;
        remaining -= kDaysInMonth[m];
    }
    return 11;
}

} // namespace evshift
