#include "qbs/bootstrap.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qbs/error.hpp"

namespace qbs {

double estimate(const SampleResults& sample) {
    sample.validate();
    const auto total = static_cast<double>(sample.total());
    if (sample.aggregate == Aggregate::Avg) {
        const std::size_t m = sample.matched();
        if (m == 0) throw InvalidArgument("AVG is undefined: no sampled tuple matches the predicate");
        return total / static_cast<double>(m);
    }
    return total / sample.f();
}

double bootstrap_se(std::span<const double> replications) {
    const std::size_t b = replications.size();
    if (b < 2) throw InvalidArgument("standard error needs at least 2 replications; got " + std::to_string(b));
    double mean = 0.0;
    for (double v : replications) mean += v;
    mean /= static_cast<double>(b);
    double ss = 0.0;
    for (double v : replications) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(b - 1));
}

double bootstrap_se(const ReplicationSet& replications) {
    const auto est = replications.estimates();
    return bootstrap_se(est);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal quantile needs p in (0, 1)");

    constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                      6.680131188771972e+01,  -1.328068155288572e+01};
    constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                      3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double z_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5)) {
        throw InvalidArgument("alpha must lie in (0, 0.5); got " + std::to_string(alpha));
    }
    return normal_quantile(1.0 - alpha);
}

ConfidenceInterval confidence_interval(double point_estimate, double se, double alpha) {
    if (!(se >= 0.0)) throw InvalidArgument("standard error must be non-negative");
    const double half = z_value(alpha) * se;
    return {point_estimate - half, point_estimate + half, half};
}

}  // namespace qbs
