#include "prejsim/metrics.hpp"

#include <string>

#include "prejsim/errors.hpp"

namespace prejsim {

std::vector<double> payoff_ratio_series(const RunResult& result, std::string_view numerator,
                                        std::string_view denominator) {
    const auto& num = result.series(Metric::Prosperity, numerator);
    const auto& den = result.series(Metric::Prosperity, denominator);
    std::vector<double> out;
    out.reserve(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (result.snapshot_iterations[i] == 0 || numerator == denominator) {
            out.push_back(1.0);
            continue;
        }
        if (den[i] == 0.0) {
            throw DomainError("denominator " + std::string(denominator) + " has zero payoff at t = " +
                              std::to_string(result.snapshot_iterations[i]));
        }
        out.push_back(num[i] / den[i]);
    }
    return out;
}

const std::vector<double>& prejudice_series(const RunResult& result, std::string_view selector) {
    const auto i = result.selector_index(selector);
    if (result.selectors[i].targeted == 0) {
        throw UsageError("selection '" + std::string(selector) + "' holds no prejudiced agents");
    }
    return result.prejudice[i];
}

double least_squares_slope(std::span<const Point> points) {
    if (points.size() < 2) throw DomainError("least squares needs at least two points");
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    const auto n = static_cast<double>(points.size());
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) throw DomainError("least squares needs distinct x values");
    return sxy / sxx;
}

}  // namespace prejsim
