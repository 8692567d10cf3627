#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "prejsim/runner.hpp"

namespace prejsim {

/// Ratio of two selections' mean cumulative payoff at every snapshot. The
/// t = 0 snapshot is 1 by convention. Throws UsageError for unknown labels and
/// DomainError if the denominator is zero after t = 0.
std::vector<double> payoff_ratio_series(const RunResult& result, std::string_view numerator,
                                        std::string_view denominator);

/// Mean prejudice level of the selection at every snapshot. Throws UsageError
/// if the selection holds no agent with a target set.
const std::vector<double>& prejudice_series(const RunResult& result, std::string_view selector);

using Point = std::pair<double, double>;

/// Ordinary least-squares slope. Throws DomainError with fewer than two
/// points or when all x coincide.
double least_squares_slope(std::span<const Point> points);

}  // namespace prejsim
