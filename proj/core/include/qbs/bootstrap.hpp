#pragma once

#include <span>

#include "qbs/replication.hpp"

namespace qbs {

// Point estimate: COUNT/SUM scale the sample sum by 1/f; AVG is the sum over
// the number of matching tuples (throws InvalidArgument if there are none).
double estimate(const SampleResults& sample);

// Sample standard deviation with the B - 1 denominator. Needs B >= 2.
double bootstrap_se(std::span<const double> replications);
double bootstrap_se(const ReplicationSet& replications);

// Standard normal quantile. Acklam's rational approximation (relative error
// below 1.15e-9) refined by one Halley step against std::erfc, which brings
// the absolute error near machine precision. p must lie in (0, 1).
double normal_quantile(double p);

// Symmetric interval; half_width is kept so width() is exactly 2 z se.
struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double half_width = 0.0;

    double width() const noexcept { return 2.0 * half_width; }
    bool contains(double x) const noexcept { return lower <= x && x <= upper; }

    friend bool operator==(const ConfidenceInterval&, const ConfidenceInterval&) = default;
};

// z^(1 - alpha); alpha must lie in (0, 0.5).
double z_value(double alpha);

// (estimate - z se, estimate + z se) with z = z_value(alpha).
ConfidenceInterval confidence_interval(double point_estimate, double se, double alpha);

}  // namespace qbs
