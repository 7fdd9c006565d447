#pragma once

#include <functional>
#include <string>
#include <vector>

#include "evshift/grid.hpp"
#include "evshift/lp.hpp"
#include "evshift/profile.hpp"

namespace evshift {

enum class SchemeKind
{
    Bau,
    OpenLoop,
    Mpc,
};

// Hours of actual excess an MPC re-optimization sees ahead of the forecast.
inline constexpr int kDefaultNowcastHours = 3;

struct SchemeSpec
{
    SchemeKind kind = SchemeKind::Bau;
    int step_hours = 0; // MPC only; must divide 24
    double p_max = 0.0;
    // MPC only. 0 means "same as step_hours".
    int nowcast_hours = kDefaultNowcastHours;

    friend bool operator==(const SchemeSpec&, const SchemeSpec&) = default;
};

// Throws DomainError for an MPC step outside {1, 2, 3, 4, 6, 8, 12}, a
// negative nowcast window or a p_max outside [0, 1].
void validate(const SchemeSpec& spec);

bool is_valid_step_hours(int step_hours);

// "bau", "open_loop", "mpc"
std::string kind_name(SchemeKind kind);
SchemeKind parse_kind(const std::string& name);

// Human label: "bau", "open-loop", "mpc-6".
std::string label(const SchemeSpec& spec);

enum class ExcessSource
{
    None,     // no optimization behind this hour (BAU)
    Forecast, // planned against the day-ahead forecast
    Actual,   // planned with the hour's actual excess known
};

const char* to_string(ExcessSource source);

struct DayResult
{
    SchemeSpec scheme;
    int day_index = 0;
    Profile realized_load;
    Profile deferral;
    std::vector<ExcessSource> sources;
    double bau_curtailment = 0.0;
    double realized_curtailment = 0.0;
    double additional_res_used = 0.0; // bau - realized; negative when worse than BAU
};

// Called with the hour at which each optimization starts and the LP it is
// about to solve. Used for debug dumps.
using LpObserver = std::function<void(int start_hour, const LinearProgram& lp)>;

DayResult run_bau(const CurtailmentDay& day, const Profile& bau);

// One 24-hour optimization against the forecast; owners follow it exactly.
DayResult run_open_loop(const CurtailmentDay& day, const Profile& bau, double p_max,
                        const LpObserver& observer = {});

// Shrinking-horizon MPC. At t = 0, step, 2*step, ... the remaining 24 - t
// hours are re-optimized with the next `nowcast_hours` of actual excess (0:
// the whole step) and the forecast beyond; only the next `step_hours` are
// committed. Energy deferred across a step boundary enters the next horizon
// as carry-in.
DayResult run_mpc(const CurtailmentDay& day, const Profile& bau, double p_max, int step_hours,
                  const LpObserver& observer = {}, int nowcast_hours = kDefaultNowcastHours);

DayResult run_scheme(const CurtailmentDay& day, const Profile& bau, const SchemeSpec& spec,
                     const LpObserver& observer = {});

// CSV text: hour,committed_load_mwh,deferral_mwh,excess_source
std::string trace_csv(const DayResult& result);

} // namespace evshift
