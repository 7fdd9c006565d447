#include "evshift/sim.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "evshift/errors.hpp"

namespace evshift {

namespace {

DayRecord run_day(const CurtailmentDay& day, const Profile& bau, const std::vector<SchemeSpec>& schemes,
                  const YearOptions& options)
{
    DayRecord rec;
    rec.day_index = day.day_index;
    rec.results.reserve(schemes.size());
    for (const auto& spec : schemes) {
        LpObserver observer;
        if (options.on_lp)
            observer = [&](int start_hour, const LinearProgram& lp) {
                options.on_lp(day.day_index, spec, start_hour, lp);
            };
        try {
            rec.results.push_back(run_scheme(day, bau, spec, observer));
        } catch (const SolverError& e) {
            throw SolverError("day " + std::to_string(day.day_index) + " (" + label(spec) + "): " + e.what());
        } catch (const DataError& e) {
            throw DataError("day " + std::to_string(day.day_index) + " (" + label(spec) + "): " + e.what());
        }
    }
    return rec;
}

} // namespace

std::vector<SchemeSummary> summarize(const std::vector<SchemeSpec>& schemes,
                                     const std::vector<DayRecord>& days)
{
    std::vector<SchemeSummary> out(schemes.size());
    for (std::size_t i = 0; i < schemes.size(); ++i)
        out[i].scheme = schemes[i];

    for (const auto& day : days) {
        if (day.results.size() != schemes.size())
            throw DataError("day " + std::to_string(day.day_index) + " lacks results for every scheme");
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& r : day.results)
            best = std::max(best, r.additional_res_used);
        for (std::size_t i = 0; i < schemes.size(); ++i) {
            const double v = day.results[i].additional_res_used;
            out[i].total_additional_res_mwh += v;
            if (v >= best - kTieToleranceMwh)
                ++out[i].wins;
            if (v < -kTieToleranceMwh)
                ++out[i].worse_than_bau_days;
        }
    }
    for (auto& s : out)
        s.win_fraction = days.empty() ? 0.0 : static_cast<double>(s.wins) / static_cast<double>(days.size());
    return out;
}

AnnualReport run_year(const std::vector<CurtailmentDay>& days, const Profile& bau,
                      const std::vector<SchemeSpec>& schemes, const YearOptions& options)
{
    if (schemes.empty())
        throw ConfigError("at least one scheme is required");
    for (const auto& s : schemes)
        validate(s);

    std::vector<const CurtailmentDay*> ordered;
    ordered.reserve(days.size());
    for (const auto& d : days)
        ordered.push_back(&d);
    std::sort(ordered.begin(), ordered.end(),
              [](const CurtailmentDay* a, const CurtailmentDay* b) { return a->day_index < b->day_index; });
    for (std::size_t i = 1; i < ordered.size(); ++i)
        if (ordered[i]->day_index == ordered[i - 1]->day_index)
            throw DataError("duplicate day index " + std::to_string(ordered[i]->day_index));

    AnnualReport report;
    report.schemes = schemes;
    report.p_max = schemes.front().p_max;
    report.days.resize(ordered.size());

    const std::size_t workers = std::clamp<std::size_t>(options.parallel, 1, std::max<std::size_t>(1, ordered.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < ordered.size(); ++i)
            report.days[i] = run_day(*ordered[i], bau, schemes, options);
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;
        std::size_t first_error_index = ordered.size();
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < ordered.size(); i = next++) {
                        try {
                            report.days[i] = run_day(*ordered[i], bau, schemes, options);
                        } catch (...) {
                            std::lock_guard lock(error_mutex);
                            // Report the earliest failing day, as a serial run would.
                            if (i < first_error_index) {
                                first_error_index = i;
                                first_error = std::current_exception();
                            }
                        }
                    }
                });
            }
        }
        if (first_error)
            std::rethrow_exception(first_error);
    }

    report.summaries = summarize(schemes, report.days);
    return report;
}

std::vector<SampleRow> sample_day_table(const AnnualReport& report, const std::vector<int>& day_indices)
{
    std::vector<SampleRow> rows;
    rows.reserve(day_indices.size());
    for (int idx : day_indices) {
        const auto it = std::find_if(report.days.begin(), report.days.end(),
                                     [idx](const DayRecord& d) { return d.day_index == idx; });
        if (it == report.days.end())
            throw LookupError("day " + std::to_string(idx) + " is not in the report");
        SampleRow row;
        row.day_index = idx;
        row.month = month_of_day(idx);
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& r : it->results) {
            row.additional_res_mwh.push_back(r.additional_res_used);
            best = std::max(best, r.additional_res_used);
        }
        for (double v : row.additional_res_mwh)
            row.best.push_back(v >= best - kTieToleranceMwh);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<int> first_day_of_each_month(const std::vector<CurtailmentDay>& days)
{
    std::set<int> indices;
    for (const auto& d : days)
        indices.insert(d.day_index);
    std::vector<int> out;
    int last_month = -1;
    for (int idx : indices) {
        const int m = month_of_day(idx);
        if (m != last_month) {
            out.push_back(idx);
            last_month = m;
        }
    }
    return out;
}

} // namespace evshift
