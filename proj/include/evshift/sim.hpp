#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evshift/control.hpp"
#include "evshift/grid.hpp"

namespace evshift {

// Days whose best schemes lie within this many MWh of each other share the
// win; additional RES below -kTieToleranceMwh counts as worse than BAU.
inline constexpr double kTieToleranceMwh = 1e-6;

struct SchemeSummary
{
    SchemeSpec scheme;
    double total_additional_res_mwh = 0.0;
    double win_fraction = 0.0;
    int wins = 0;
    int worse_than_bau_days = 0;
};

struct DayRecord
{
    int day_index = 0;
    std::vector<DayResult> results; // one per scheme, in report scheme order
};

struct AnnualReport
{
    std::string scenario;
    double p_max = 0.0;
    std::vector<SchemeSpec> schemes;
    std::vector<SchemeSummary> summaries;
    std::vector<DayRecord> days; // sorted by day_index
    std::vector<int> sample_days;

    std::size_t curtailment_day_count() const { return days.size(); }
};

struct YearOptions
{
    std::size_t parallel = 1;
    // Invoked from worker threads; must be thread-safe when parallel > 1.
    std::function<void(int day_index, const SchemeSpec&, int start_hour, const LinearProgram&)> on_lp;
};

// Runs every scheme on every day and aggregates. The result does not depend
// on input day order or on `options.parallel`. A failing day aborts the run
// with an error naming it.
AnnualReport run_year(const std::vector<CurtailmentDay>& days, const Profile& bau,
                      const std::vector<SchemeSpec>& schemes, const YearOptions& options = {});

// Recomputes summaries from the day records. Used by run_year and after
// loading a report from disk.
std::vector<SchemeSummary> summarize(const std::vector<SchemeSpec>& schemes,
                                     const std::vector<DayRecord>& days);

struct SampleRow
{
    int day_index = 0;
    int month = 0;
    std::vector<double> additional_res_mwh; // per scheme
    std::vector<bool> best;
};

// Throws LookupError for a day index not in the report.
std::vector<SampleRow> sample_day_table(const AnnualReport& report, const std::vector<int>& day_indices);

// First curtailment day of each month that has one.
std::vector<int> first_day_of_each_month(const std::vector<CurtailmentDay>& days);

} // namespace evshift
