#include "tailsim/metrics.hpp"

#include "tailsim/errors.hpp"
#include "tailsim/frames.hpp"

#include <algorithm>
#include <cmath>

namespace tailsim {
namespace {

double rank_value(const std::vector<double>& sorted, double p) {
    const auto n = static_cast<double>(sorted.size());
    const auto rank = static_cast<std::size_t>(std::max(1.0, std::ceil(p / 100.0 * n)));
    return sorted[std::min(rank, sorted.size()) - 1];
}

}  // namespace

double nearest_rank_percentile(std::span<const double> values, double p) {
    if (values.empty()) throw EmptyTraceError("percentile of an empty series");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    return rank_value(v, std::clamp(p, 0.0, 100.0));
}

ErrorStats error_stats(std::span<const double> abs_errors) {
    if (abs_errors.empty()) throw EmptyTraceError("error statistics of an empty trace");
    std::vector<double> v(abs_errors.begin(), abs_errors.end());
    std::sort(v.begin(), v.end());
    ErrorStats s;
    s.q25 = rank_value(v, 25.0);
    s.median = rank_value(v, 50.0);
    s.q75 = rank_value(v, 75.0);
    s.max = v.back();
    s.count = v.size();
    return s;
}

ErrorStats compute_metrics(std::span<const double> actual, std::span<const double> reference,
                           bool angular) {
    const std::size_t n = std::min(actual.size(), reference.size());
    if (n == 0) throw EmptyTraceError("no samples to compare");
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = actual[i] - reference[i];
        e[i] = std::abs(angular ? wrap_pi(d) : d);
    }
    return error_stats(e);
}

}  // namespace tailsim
