#include "evshift/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "evshift/errors.hpp"

namespace evshift {

namespace {

constexpr double kZeroSnap = 1e-9;
constexpr double kConservationTol = 1e-6;

void check_energy(std::span<const double> values, const char* what)
{
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError(std::string(what) + " must be finite and non-negative");
}

} // namespace

void validate(const ShiftInstance& inst)
{
    const std::size_t h = inst.horizon();
    if (h < 1 || h > kHoursPerDay)
        throw DomainError("horizon must be between 1 and 24 hours, got " + std::to_string(h));
    if (inst.excess.size() != h)
        throw DomainError("excess and demand horizons differ");
    check_energy(inst.excess, "excess");
    check_energy(inst.demand, "demand");
    if (!std::isfinite(inst.carry_in) || inst.carry_in < 0.0)
        throw DomainError("carry_in must be finite and non-negative");
    if (!(inst.p_max >= 0.0 && inst.p_max <= 1.0))
        throw DomainError("p_max must lie in [0, 1]");
}

LinearProgram build_shift_lp(const ShiftInstance& inst)
{
    validate(inst);
    const std::size_t h = inst.horizon();
    const auto s = [](std::size_t k) { return k; };
    const auto u = [h](std::size_t k) { return h + k; };

    LinearProgram lp;
    lp.var_names.resize(2 * h);
    lp.objective.assign(2 * h, 0.0);
    for (std::size_t k = 0; k < h; ++k) {
        lp.var_names[s(k)] = "s[" + std::to_string(k) + "]";
        lp.var_names[u(k)] = "u[" + std::to_string(k) + "]";
        lp.objective[s(k)] = kShiftPenalty;
        lp.objective[u(k)] = 1.0;
    }

    for (std::size_t k = 0; k < h; ++k) {
        const double rhs = k == 0 ? inst.p_max * (inst.demand[0] + inst.carry_in)
                                  : inst.p_max * inst.demand[k];
        auto& row = lp.add_row("uptake[" + std::to_string(k) + "]", RowSense::LessEqual, rhs);
        row.coeffs[s(k)] = 1.0;
        if (k > 0)
            row.coeffs[s(k - 1)] = -inst.p_max;
    }

    lp.add_row("terminal", RowSense::Equal, 0.0).coeffs[s(h - 1)] = 1.0;

    for (std::size_t k = 0; k < h; ++k) {
        const double carried = k == 0 ? inst.carry_in : 0.0;
        auto& row = lp.add_row("curtail[" + std::to_string(k) + "]", RowSense::GreaterEqual,
                               inst.excess[k] - inst.demand[k] - carried);
        row.coeffs[u(k)] = 1.0;
        row.coeffs[s(k)] = -1.0;
        if (k > 0)
            row.coeffs[s(k - 1)] = 1.0;
    }
    return lp;
}

ShiftPlan extract_plan(const LpSolution& sol, const ShiftInstance& inst)
{
    if (sol.status != LpStatus::Optimal)
        throw SolverError(std::string("shift LP not optimal: ") + to_string(sol.status));
    const std::size_t h = inst.horizon();
    if (sol.x.size() != 2 * h)
        throw SolverError("solution size does not match the instance horizon");

    ShiftPlan plan;
    plan.deferral.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(h));
    for (double& v : plan.deferral)
        if (v < kZeroSnap)
            v = 0.0;
    plan.deferral[h - 1] = 0.0;

    plan.uptake.assign(h, 0.0);
    plan.load.assign(h, 0.0);
    double prev = inst.carry_in;
    for (std::size_t k = 0; k < h; ++k) {
        const double available = inst.demand[k] + prev;
        if (available > 1e-9)
            plan.uptake[k] = plan.deferral[k] / available;
        plan.load[k] = available - plan.deferral[k];
        if (plan.load[k] < -1e-7 || plan.uptake[k] > inst.p_max + 1e-9)
            throw SolverError("plan violates uptake bound at hour " + std::to_string(k));
        plan.load[k] = std::max(plan.load[k], 0.0);
        prev = plan.deferral[k];
    }

    const double expected =
        std::accumulate(inst.demand.begin(), inst.demand.end(), 0.0) + inst.carry_in;
    const double total = std::accumulate(plan.load.begin(), plan.load.end(), 0.0);
    if (std::abs(total - expected) > kConservationTol * std::max(1.0, std::abs(expected)))
        throw SolverError("plan does not conserve energy");

    plan.curtailment = curtailment(inst.excess, plan.load);
    return plan;
}

ShiftPlan solve_shift(const ShiftInstance& inst)
{
    return extract_plan(solve_lp(build_shift_lp(inst)), inst);
}

double curtailment(std::span<const double> excess, std::span<const double> load)
{
    if (excess.size() != load.size())
        throw DataError("excess and load profiles differ in length");
    double total = 0.0;
    for (std::size_t k = 0; k < excess.size(); ++k)
        total += std::max(excess[k] - load[k], 0.0);
    return total;
}

namespace {

class GridOracle
{
public:
    GridOracle(const ShiftInstance& inst, int steps) : inst_(inst), h_(inst.horizon())
    {
        for (int i = steps; i >= 0; --i)
            grid_.push_back(inst.p_max * static_cast<double>(i) / static_cast<double>(steps));
        if (inst.p_max == 0.0)
            grid_.assign(1, 0.0);
        tail_excess_.assign(h_ + 1, 0.0);
        for (std::size_t k = h_; k-- > 0;)
            tail_excess_[k] = tail_excess_[k + 1] + inst.excess[k];
        tail_demand_.assign(h_ + 1, 0.0);
        for (std::size_t k = h_; k-- > 0;)
            tail_demand_[k] = tail_demand_[k + 1] + inst.demand[k];
    }

    double run()
    {
        best_ = std::numeric_limits<double>::infinity();
        search(0, inst_.carry_in, 0.0);
        return best_;
    }

private:
    // Relaxation of hours k..H-1: loads bounded above by what the cascade
    // could deliver, summing to the energy still to be served.
    double lower_bound(std::size_t k, double incoming) const
    {
        double coverable = 0.0;
        double max_carry = incoming;
        for (std::size_t j = k; j < h_; ++j) {
            const double max_load = inst_.demand[j] + max_carry;
            coverable += std::min(inst_.excess[j], max_load);
            max_carry = inst_.p_max * max_load;
        }
        const double energy = tail_demand_[k] + incoming;
        return std::max(tail_excess_[k] - std::min(energy, coverable), 0.0);
    }

    void search(std::size_t k, double incoming, double cost)
    {
        const double available = inst_.demand[k] + incoming;
        if (k + 1 == h_) {
            best_ = std::min(best_, cost + std::max(inst_.excess[k] - available, 0.0));
            return;
        }
        if (cost + lower_bound(k, incoming) >= best_)
            return;
        for (double p : grid_) {
            const double deferred = p * available;
            const double u = std::max(inst_.excess[k] - (available - deferred), 0.0);
            search(k + 1, deferred, cost + u);
        }
    }

    const ShiftInstance& inst_;
    std::size_t h_;
    std::vector<double> grid_;
    std::vector<double> tail_excess_;
    std::vector<double> tail_demand_;
    double best_ = 0.0;
};

} // namespace

double oracle_search(const ShiftInstance& inst, int grid_steps)
{
    validate(inst);
    if (inst.horizon() > 8)
        throw DomainError("oracle search refuses horizons above 8 hours");
    if (grid_steps < 1)
        throw DomainError("grid_steps must be >= 1");
    return GridOracle(inst, grid_steps).run();
}

} // namespace evshift
