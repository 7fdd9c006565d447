#include "evshift/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "evshift/errors.hpp"

namespace evshift {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr double kFeasibilityTol = 1e-7;

std::string fmt_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* sense_symbol(RowSense s)
{
    switch (s) {
    case RowSense::LessEqual:
        return "<=";
    case RowSense::GreaterEqual:
        return ">=";
    case RowSense::Equal:
        return "=";
    }
    return "?";
}

// Row-major tableau. The last column holds the right-hand side; the last row
// holds reduced costs with -z in its rhs cell.
class Tableau
{
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0)
    {}

    double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double rhs(std::size_t r) const { return at(r, cols_); }
    double& cost(std::size_t c) { return at(rows_, c); }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void pivot(std::size_t pr, std::size_t pc)
    {
        const double inv = 1.0 / at(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c)
            at(pr, c) *= inv;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr)
                continue;
            const double f = at(r, pc);
            if (f == 0.0)
                continue;
            for (std::size_t c = 0; c <= cols_; ++c)
                at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

enum class PhaseResult
{
    Optimal,
    Unbounded,
};

class Simplex
{
public:
    Simplex(Tableau& t, std::vector<std::size_t>& basis, std::size_t pivot_budget)
        : t_(t), basis_(basis), budget_(pivot_budget)
    {}

    // Loads `costs` into the objective row, prices out the basis, then
    // iterates until no column in [0, eligible) has a negative reduced cost.
    PhaseResult run(const std::vector<double>& costs, std::size_t eligible)
    {
        for (std::size_t c = 0; c <= t_.cols(); ++c)
            t_.cost(c) = c < costs.size() ? costs[c] : 0.0;
        for (std::size_t r = 0; r < t_.rows(); ++r) {
            const double cb = costs[basis_[r]];
            if (cb == 0.0)
                continue;
            for (std::size_t c = 0; c <= t_.cols(); ++c)
                t_.cost(c) -= cb * t_.at(r, c);
        }

        for (;;) {
            std::size_t enter = t_.cols();
            for (std::size_t c = 0; c < eligible; ++c) {
                if (t_.cost(c) < -kCostTol) {
                    enter = c;
                    break;
                }
            }
            if (enter == t_.cols())
                return PhaseResult::Optimal;

            std::size_t leave = t_.rows();
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < t_.rows(); ++r) {
                const double a = t_.at(r, enter);
                if (a <= kPivotTol)
                    continue;
                const double ratio = std::max(t_.rhs(r), 0.0) / a;
                const double tie = 1e-12 * std::max(1.0, std::abs(best_ratio));
                if (leave == t_.rows() || ratio < best_ratio - tie) {
                    best_ratio = ratio;
                    leave = r;
                } else if (ratio <= best_ratio + tie && basis_[r] < basis_[leave]) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = r;
                }
            }
            if (leave == t_.rows())
                return PhaseResult::Unbounded;

            if (pivots_ >= budget_)
                throw SolverError("simplex exceeded pivot budget of " + std::to_string(budget_) +
                                  " (rows=" + std::to_string(t_.rows()) +
                                  ", cols=" + std::to_string(t_.cols()) + ")");
            t_.pivot(leave, enter);
            basis_[leave] = enter;
            ++pivots_;
        }
    }

    std::size_t pivots() const { return pivots_; }

    void count_pivot() { ++pivots_; }

private:
    Tableau& t_;
    std::vector<std::size_t>& basis_;
    std::size_t budget_;
    std::size_t pivots_ = 0;
};

} // namespace

LpRow& LinearProgram::add_row(std::string name, RowSense sense, double rhs)
{
    rows.push_back({std::move(name), std::vector<double>(num_vars(), 0.0), sense, rhs});
    return rows.back();
}

std::string LinearProgram::to_text() const
{
    std::ostringstream os;
    os << "lp " << num_vars() << ' ' << rows.size() << '\n';
    for (std::size_t j = 0; j < num_vars(); ++j)
        os << "var " << j << ' ' << var_names[j] << '\n';
    os << "min";
    for (std::size_t j = 0; j < objective.size(); ++j)
        if (objective[j] != 0.0)
            os << ' ' << fmt_number(objective[j]) << ' ' << var_names[j];
    os << '\n';
    for (const auto& row : rows) {
        os << "row " << row.name;
        for (std::size_t j = 0; j < row.coeffs.size(); ++j)
            if (row.coeffs[j] != 0.0)
                os << ' ' << fmt_number(row.coeffs[j]) << ' ' << var_names[j];
        os << ' ' << sense_symbol(row.sense) << ' ' << fmt_number(row.rhs) << '\n';
    }
    return os.str();
}

const char* to_string(LpStatus status)
{
    switch (status) {
    case LpStatus::Optimal:
        return "optimal";
    case LpStatus::Infeasible:
        return "infeasible";
    case LpStatus::Unbounded:
        return "unbounded";
    }
    return "unknown";
}

LpSolution solve_lp(const LinearProgram& lp)
{
    const std::size_t n = lp.num_vars();
    const std::size_t m = lp.rows.size();
    if (lp.objective.size() != n)
        throw SolverError("objective length does not match variable count");
    for (const auto& row : lp.rows)
        if (row.coeffs.size() != n)
            throw SolverError("row '" + row.name + "' has wrong coefficient count");

    // Normalise every row to a non-negative rhs, then lay out columns as
    // [structural | slack/surplus | artificial].
    struct NormRow
    {
        const LpRow* src;
        double sign;
        RowSense sense;
    };
    std::vector<NormRow> norm;
    norm.reserve(m);
    std::size_t num_slack = 0;
    std::size_t num_art = 0;
    for (const auto& row : lp.rows) {
        NormRow nr{&row, 1.0, row.sense};
        if (row.rhs < 0.0) {
            nr.sign = -1.0;
            if (row.sense == RowSense::LessEqual)
                nr.sense = RowSense::GreaterEqual;
            else if (row.sense == RowSense::GreaterEqual)
                nr.sense = RowSense::LessEqual;
        }
        if (nr.sense != RowSense::Equal)
            ++num_slack;
        if (nr.sense != RowSense::LessEqual)
            ++num_art;
        norm.push_back(nr);
    }

    const std::size_t art_begin = n + num_slack;
    const std::size_t cols = art_begin + num_art;
    Tableau t(m, cols);
    std::vector<std::size_t> basis(m);
    std::size_t next_slack = n;
    std::size_t next_art = art_begin;
    for (std::size_t r = 0; r < m; ++r) {
        const auto& nr = norm[r];
        for (std::size_t j = 0; j < n; ++j)
            t.at(r, j) = nr.sign * nr.src->coeffs[j];
        t.rhs(r) = nr.sign * nr.src->rhs;
        switch (nr.sense) {
        case RowSense::LessEqual:
            t.at(r, next_slack) = 1.0;
            basis[r] = next_slack++;
            break;
        case RowSense::GreaterEqual:
            t.at(r, next_slack++) = -1.0;
            t.at(r, next_art) = 1.0;
            basis[r] = next_art++;
            break;
        case RowSense::Equal:
            t.at(r, next_art) = 1.0;
            basis[r] = next_art++;
            break;
        }
    }

    const std::size_t budget = 50 * (m + cols) + 100;
    Simplex simplex(t, basis, budget);
    LpSolution sol;

    if (num_art > 0) {
        std::vector<double> phase1(cols, 0.0);
        for (std::size_t j = art_begin; j < cols; ++j)
            phase1[j] = 1.0;
        simplex.run(phase1, cols);

        double rhs_scale = 1.0;
        for (std::size_t r = 0; r < m; ++r)
            rhs_scale = std::max(rhs_scale, std::abs(lp.rows[r].rhs));
        if (-t.cost(cols) > kFeasibilityTol * rhs_scale) {
            sol.status = LpStatus::Infeasible;
            sol.pivots = simplex.pivots();
            return sol;
        }
        // Drive zero-valued artificials out of the basis where possible.
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] < art_begin)
                continue;
            for (std::size_t c = 0; c < art_begin; ++c) {
                if (std::abs(t.at(r, c)) > kPivotTol) {
                    t.pivot(r, c);
                    basis[r] = c;
                    simplex.count_pivot();
                    break;
                }
            }
            // A row with no eligible pivot is redundant; its artificial stays
            // basic at zero and can never re-enter in phase 2.
        }
    }

    std::vector<double> phase2(cols, 0.0);
    std::copy(lp.objective.begin(), lp.objective.end(), phase2.begin());
    if (simplex.run(phase2, art_begin) == PhaseResult::Unbounded) {
        sol.status = LpStatus::Unbounded;
        sol.pivots = simplex.pivots();
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.pivots = simplex.pivots();
    sol.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] < n)
            sol.x[basis[r]] = std::max(t.rhs(r), 0.0);
    sol.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        sol.objective += lp.objective[j] * sol.x[j];

    for (const auto& row : lp.rows) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            lhs += row.coeffs[j] * sol.x[j];
        const double viol = row.sense == RowSense::LessEqual      ? lhs - row.rhs
                            : row.sense == RowSense::GreaterEqual ? row.rhs - lhs
                                                                  : std::abs(lhs - row.rhs);
        if (viol > kFeasibilityTol)
            throw SolverError("row '" + row.name + "' violated by " + fmt_number(viol) +
                              " at reported optimum");
    }
    return sol;
}

} // namespace evshift
