#pragma once

#include <cstddef>
#include <span>

#include "evshift/lp.hpp"
#include "evshift/profile.hpp"

namespace evshift {

// Weight on total deferred energy in the LP objective. Among plans with equal
// curtailment the solver picks the one that moves the least load.
inline constexpr double kShiftPenalty = 1e-6;

// One optimization horizon. Hour 0 also receives `carry_in` MWh deferred from
// before the horizon; that energy is itself eligible for further deferral.
struct ShiftInstance
{
    Profile excess;
    Profile demand;
    double carry_in = 0.0;
    double p_max = 0.0;

    std::size_t horizon() const { return demand.size(); }
};

// Throws DomainError unless 1 <= H <= 24, lengths match, energies are
// non-negative and p_max lies in [0, 1].
void validate(const ShiftInstance& inst);

struct ShiftPlan
{
    Profile deferral;       // s[k]: MWh moved from hour k to hour k + 1
    std::vector<double> uptake; // p[k]: share of hour-k available load deferred
    Profile load;           // L[k] = demand[k] + s[k - 1] - s[k]
    double curtailment = 0.0;
};

// Variables s[0..H-1] then u[0..H-1]:
//   s[k] - p_max * s[k-1] <= p_max * demand[k]        (s[-1] = carry_in)
//   s[H-1] = 0
//   u[k] + s[k-1] - s[k]  >= excess[k] - demand[k]
//   minimize sum(u) + kShiftPenalty * sum(s)
// Conservation follows from the telescoping sum and s[H-1] = 0.
LinearProgram build_shift_lp(const ShiftInstance& inst);

ShiftPlan extract_plan(const LpSolution& sol, const ShiftInstance& inst);

// build_shift_lp + solve_lp + extract_plan.
ShiftPlan solve_shift(const ShiftInstance& inst);

// sum_k max(excess[k] - load[k], 0)
double curtailment(std::span<const double> excess, std::span<const double> load);

// Minimum curtailment over uptake fractions restricted to the uniform grid
// {0, p_max / steps, ..., p_max} (last hour fixed at 0), simulating the
// deferral cascade directly. Exact over the grid; branches are pruned with a
// load-allocation lower bound. Refuses horizons above 8 hours.
double oracle_search(const ShiftInstance& inst, int grid_steps);

} // namespace evshift
