#include "evshift/control.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evshift/csv.hpp"
#include "evshift/errors.hpp"
#include "evshift/optimizer.hpp"

namespace evshift {

namespace {

void check_day(const CurtailmentDay& day, const Profile& bau)
{
    if (day.forecast_excess.size() != kHoursPerDay || day.actual_excess.size() != kHoursPerDay)
        throw DataError("curtailment day " + std::to_string(day.day_index) +
                        " must carry 24-hour profiles");
    if (bau.size() != kHoursPerDay)
        throw DataError("BAU profile must have 24 hours");
}

DayResult finish(const CurtailmentDay& day, const Profile& bau, SchemeSpec spec, Profile load,
                 Profile deferral, std::vector<ExcessSource> sources)
{
    const double expected = std::accumulate(bau.begin(), bau.end(), 0.0);
    const double total = std::accumulate(load.begin(), load.end(), 0.0);
    if (std::abs(total - expected) > 1e-6 * std::max(1.0, expected))
        throw SolverError("internal error: " + label(spec) + " broke daily energy conservation on day " +
                          std::to_string(day.day_index));

    DayResult r;
    r.scheme = spec;
    r.day_index = day.day_index;
    r.bau_curtailment = curtailment(day.actual_excess, bau);
    r.realized_curtailment = curtailment(day.actual_excess, load);
    r.additional_res_used = r.bau_curtailment - r.realized_curtailment;
    r.realized_load = std::move(load);
    r.deferral = std::move(deferral);
    r.sources = std::move(sources);
    return r;
}

ShiftPlan solve_observed(const ShiftInstance& inst, int start_hour, const LpObserver& observer)
{
    const auto lp = build_shift_lp(inst);
    if (observer)
        observer(start_hour, lp);
    return extract_plan(solve_lp(lp), inst);
}

} // namespace

bool is_valid_step_hours(int step_hours)
{
    switch (step_hours) {
    case 1:
    case 2:
    case 3:
    case 4:
    case 6:
    case 8:
    case 12:
        return true;
    default:
        return false;
    }
}

void validate(const SchemeSpec& spec)
{
    if (!(spec.p_max >= 0.0 && spec.p_max <= 1.0))
        throw DomainError("p_max must lie in [0, 1]");
    if (spec.kind == SchemeKind::Mpc && !is_valid_step_hours(spec.step_hours))
        throw DomainError("MPC step of " + std::to_string(spec.step_hours) +
                          " hours must be one of 1, 2, 3, 4, 6, 8, 12");
    if (spec.kind == SchemeKind::Mpc && (spec.nowcast_hours < 0 || spec.nowcast_hours > 24))
        throw DomainError("MPC nowcast window must lie in [0, 24] hours");
}

std::string kind_name(SchemeKind kind)
{
    switch (kind) {
    case SchemeKind::Bau:
        return "bau";
    case SchemeKind::OpenLoop:
        return "open_loop";
    case SchemeKind::Mpc:
        return "mpc";
    }
    return "unknown";
}

SchemeKind parse_kind(const std::string& name)
{
    if (name == "bau")
        return SchemeKind::Bau;
    if (name == "open_loop" || name == "open-loop")
        return SchemeKind::OpenLoop;
    if (name == "mpc")
        return SchemeKind::Mpc;
    throw ConfigError("unknown scheme kind '" + name + "'");
}

std::string label(const SchemeSpec& spec)
{
    switch (spec.kind) {
    case SchemeKind::Bau:
        return "bau";
    case SchemeKind::OpenLoop:
        return "open-loop";
    case SchemeKind::Mpc:
        return "mpc-" + std::to_string(spec.step_hours);
    }
    return "unknown";
}

const char* to_string(ExcessSource source)
{
    switch (source) {
    case ExcessSource::None:
        return "none";
    case ExcessSource::Forecast:
        return "forecast";
    case ExcessSource::Actual:
        return "actual";
    }
    return "unknown";
}

DayResult run_bau(const CurtailmentDay& day, const Profile& bau)
{
    check_day(day, bau);
    return finish(day, bau, SchemeSpec{SchemeKind::Bau, 0, 0.0}, bau, Profile(kHoursPerDay, 0.0),
                  std::vector<ExcessSource>(kHoursPerDay, ExcessSource::None));
}

DayResult run_open_loop(const CurtailmentDay& day, const Profile& bau, double p_max,
                        const LpObserver& observer)
{
    check_day(day, bau);
    const SchemeSpec spec{SchemeKind::OpenLoop, 0, p_max};
    validate(spec);
    const ShiftInstance inst{day.forecast_excess, bau, 0.0, p_max};
    auto plan = solve_observed(inst, 0, observer);
    return finish(day, bau, spec, std::move(plan.load), std::move(plan.deferral),
                  std::vector<ExcessSource>(kHoursPerDay, ExcessSource::Forecast));
}

DayResult run_mpc(const CurtailmentDay& day, const Profile& bau, double p_max, int step_hours,
                  const LpObserver& observer, int nowcast_hours)
{
    check_day(day, bau);
    const SchemeSpec spec{SchemeKind::Mpc, step_hours, p_max, nowcast_hours};
    validate(spec);
    const auto step = static_cast<std::size_t>(step_hours);
    const auto nowcast = static_cast<std::size_t>(nowcast_hours == 0 ? step_hours : nowcast_hours);

    Profile load(kHoursPerDay, 0.0);
    Profile deferral(kHoursPerDay, 0.0);
    std::vector<ExcessSource> sources(kHoursPerDay, ExcessSource::Forecast);
    double carry = 0.0;

    for (std::size_t t = 0; t < kHoursPerDay; t += step) {
        ShiftInstance inst;
        inst.excess.assign(day.forecast_excess.begin() + static_cast<std::ptrdiff_t>(t),
                           day.forecast_excess.end());
        std::copy_n(day.actual_excess.begin() + static_cast<std::ptrdiff_t>(t),
                    std::min(nowcast, kHoursPerDay - t), inst.excess.begin());
        inst.demand.assign(bau.begin() + static_cast<std::ptrdiff_t>(t), bau.end());
        inst.carry_in = carry;
        inst.p_max = p_max;

        const auto plan = solve_observed(inst, static_cast<int>(t), observer);
        for (std::size_t i = 0; i < step; ++i) {
            load[t + i] = plan.load[i];
            deferral[t + i] = plan.deferral[i];
            if (i < nowcast)
                sources[t + i] = ExcessSource::Actual;
        }
        carry = plan.deferral[step - 1];
    }
    return finish(day, bau, spec, std::move(load), std::move(deferral), std::move(sources));
}

DayResult run_scheme(const CurtailmentDay& day, const Profile& bau, const SchemeSpec& spec,
                     const LpObserver& observer)
{
    switch (spec.kind) {
    case SchemeKind::Bau:
        return run_bau(day, bau);
    case SchemeKind::OpenLoop:
        return run_open_loop(day, bau, spec.p_max, observer);
    case SchemeKind::Mpc:
        return run_mpc(day, bau, spec.p_max, spec.step_hours, observer, spec.nowcast_hours);
    }
    throw DomainError("unknown scheme kind");
}

std::string trace_csv(const DayResult& result)
{
    std::string out = "hour,committed_load_mwh,deferral_mwh,excess_source\n";
    for (std::size_t k = 0; k < result.realized_load.size(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_fixed6(result.realized_load[k]);
        out += ',';
        out += format_fixed6(result.deferral[k]);
        out += ',';
        out += to_string(result.sources[k]);
        out += '\n';
    }
    return out;
}

} // namespace evshift
