#include "evshift/fleet.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "evshift/errors.hpp"

namespace evshift {

namespace {

constexpr double kDistributionTolerance = 1e-9;

void check_distribution(std::span<const double> distribution)
{
    if (distribution.size() != kHoursPerDay)
        throw DataError("hourly distribution must have 24 entries, got " +
                        std::to_string(distribution.size()));
    for (double f : distribution)
        if (!std::isfinite(f) || f < 0.0)
            throw DataError("hourly distribution entries must be finite and non-negative");
    const double sum = std::accumulate(distribution.begin(), distribution.end(), 0.0);
    if (std::abs(sum - 1.0) > kDistributionTolerance)
        throw DataError("hourly distribution sums to " + std::to_string(sum) + ", expected 1");
}

} // namespace

double FleetProjection::count_at(int year) const
{
    for (std::size_t i = 0; i < years.size(); ++i)
        if (years[i] == year)
            return ev_counts[i];
    throw LookupError("year " + std::to_string(year) + " outside projection");
}

void validate(const FleetParams& params)
{
    if (params.end_year < params.start_year)
        throw ConfigError("end_year precedes start_year");
    if (params.lifetime_r < 1)
        throw ConfigError("lifetime_r must be >= 1");
    if (!(params.initial_ev_count >= 0.0) || !std::isfinite(params.initial_ev_count))
        throw ConfigError("initial_ev_count must be finite and >= 0");
    if (!(params.km_per_ev_day >= 0.0) || !(params.kwh_per_km >= 0.0))
        throw ConfigError("km_per_ev_day and kwh_per_km must be >= 0");
    if (params.market_share_points.empty())
        throw ConfigError("at least one market share anchor is required");
    for (std::size_t i = 0; i < params.market_share_points.size(); ++i) {
        const auto& p = params.market_share_points[i];
        if (!(p.fraction >= 0.0 && p.fraction <= 1.0))
            throw ConfigError("market share fraction outside [0, 1] at year " +
                              std::to_string(p.year));
        if (i > 0 && p.year <= params.market_share_points[i - 1].year)
            throw ConfigError("market share anchors must be strictly increasing in year");
    }
    for (const auto& [year, count] : params.ldv_total_by_year)
        if (!(count >= 0.0) || !std::isfinite(count))
            throw ConfigError("LDV total for " + std::to_string(year) + " must be finite and >= 0");
    for (int year = params.start_year + 1; year <= params.end_year; ++year)
        if (!params.ldv_total_by_year.contains(year))
            throw ConfigError("missing LDV total for year " + std::to_string(year));
    try {
        check_distribution(params.hourly_distribution);
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

double market_share_at(std::span<const MarketSharePoint> points, int year)
{
    if (points.empty())
        throw ConfigError("market share anchors are empty");
    if (year <= points.front().year)
        return points.front().fraction;
    if (year >= points.back().year)
        return points.back().fraction;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const auto& hi = points[i];
        if (year > hi.year)
            continue;
        const auto& lo = points[i - 1];
        if (year == hi.year)
            return hi.fraction;
        const double t = static_cast<double>(year - lo.year) / static_cast<double>(hi.year - lo.year);
        return lo.fraction + t * (hi.fraction - lo.fraction);
    }
    return points.back().fraction;
}

FleetProjection project_fleet(const FleetParams& params)
{
    validate(params);

    FleetProjection out;
    const auto n = static_cast<std::size_t>(params.end_year - params.start_year + 1);
    out.years.reserve(n);
    out.ev_counts.reserve(n);
    out.market_shares.reserve(n);

    const double r = params.lifetime_r;
    double count = params.initial_ev_count;
    out.years.push_back(params.start_year);
    out.ev_counts.push_back(count);
    out.market_shares.push_back(market_share_at(params.market_share_points, params.start_year));

    for (int year = params.start_year + 1; year <= params.end_year; ++year) {
        const double share = market_share_at(params.market_share_points, year);
        const double ldv = params.ldv_total_by_year.at(year);
        count = (r - 1.0) / r * count + share * ldv / r;
        out.years.push_back(year);
        out.ev_counts.push_back(count);
        out.market_shares.push_back(share);
    }
    return out;
}

double fleet_daily_energy(double ev_count, double km_per_ev_day, double kwh_per_km)
{
    if (!(ev_count >= 0.0) || !(km_per_ev_day >= 0.0) || !(kwh_per_km >= 0.0))
        throw DomainError("fleet energy inputs must be non-negative");
    return ev_count * km_per_ev_day * kwh_per_km / 1000.0;
}

Profile build_bau_profile(double daily_mwh, std::span<const double> distribution)
{
    if (!(daily_mwh >= 0.0) || !std::isfinite(daily_mwh))
        throw DomainError("daily energy must be finite and non-negative");
    check_distribution(distribution);
    Profile profile(kHoursPerDay);
    for (std::size_t k = 0; k < kHoursPerDay; ++k)
        profile[k] = daily_mwh * distribution[k];
    return profile;
}

Profile bau_profile_for(const FleetParams& params)
{
    const auto projection = project_fleet(params);
    const double daily =
        fleet_daily_energy(projection.ev_counts.back(), params.km_per_ev_day, params.kwh_per_km);
    return build_bau_profile(daily, params.hourly_distribution);
}

} // namespace evshift
