#pragma once

#include <cstddef>
#include <vector>

namespace evshift {

inline constexpr std::size_t kHoursPerDay = 24;
inline constexpr std::size_t kDaysPerYear = 365;
inline constexpr std::size_t kHoursPerYear = kHoursPerDay * kDaysPerYear;

// Hourly energy values in MWh. Length is context dependent (24 for a day,
// H for an optimization horizon).
using Profile = std::vector<double>;

} // namespace evshift
