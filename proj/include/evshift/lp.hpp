#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace evshift {

enum class RowSense
{
    LessEqual,
    GreaterEqual,
    Equal,
};

struct LpRow
{
    std::string name;
    std::vector<double> coeffs; // dense, one entry per variable
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
};

// minimize objective . x  subject to rows, x >= 0
struct LinearProgram
{
    std::vector<std::string> var_names;
    std::vector<double> objective;
    std::vector<LpRow> rows;

    std::size_t num_vars() const { return var_names.size(); }

    // Appends a row with all-zero coefficients and returns it for filling.
    LpRow& add_row(std::string name, RowSense sense, double rhs);

    // Plain-text dump, one item per line:
    //   lp <num_vars> <num_rows>
    //   var <index> <name>                       (num_vars lines)
    //   min <coef> <name> ...                    (nonzero terms only)
    //   row <name> <coef> <var> ... <= | >= | = <rhs>
    // Numbers use %.17g so the dump round-trips exactly.
    std::string to_text() const;
};

enum class LpStatus
{
    Optimal,
    Infeasible,
    Unbounded,
};

const char* to_string(LpStatus status);

struct LpSolution
{
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::size_t pivots = 0;
};

// Dense two-phase primal simplex. Entering and leaving variables follow
// Bland's smallest-index rule, so results are deterministic and the method
// cannot cycle on degenerate vertices. Throws SolverError when the pivot
// budget runs out or an "optimal" point violates a row by more than 1e-7.
LpSolution solve_lp(const LinearProgram& lp);

} // namespace evshift
