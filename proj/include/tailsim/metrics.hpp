#pragma once

#include <span>
#include <vector>

namespace tailsim {

/// Absolute-error statistics. Percentiles use the nearest-rank definition.
struct ErrorStats {
    double median = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

/// Nearest-rank percentile (p in [0, 100]) of an unsorted series.
double nearest_rank_percentile(std::span<const double> values, double p);

/// Statistics of |actual - reference|. With `angular`, the difference is
/// wrapped to (-pi, pi] first. Throws EmptyTraceError on empty input.
ErrorStats compute_metrics(std::span<const double> actual, std::span<const double> reference,
                           bool angular = false);

/// Statistics of an already-absolute error series.
ErrorStats error_stats(std::span<const double> abs_errors);

}  // namespace tailsim
