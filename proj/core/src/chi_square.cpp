#include "qbs/chi_square.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>

#include "qbs/error.hpp"

namespace qbs {

namespace {

double upper_tail(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    const boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

// Groups consecutive indices so each group's weight reaches `threshold`.
std::vector<std::vector<std::size_t>> pool(std::span<const double> weight, double threshold) {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> current;
    double acc = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) {
        current.push_back(i);
        acc += weight[i];
        if (acc >= threshold) {
            groups.push_back(std::move(current));
            current.clear();
            acc = 0.0;
        }
    }
    if (!current.empty()) {
        if (groups.empty()) {
            groups.push_back(std::move(current));
        } else {
            groups.back().insert(groups.back().end(), current.begin(), current.end());
        }
    }
    return groups;
}

}  // namespace

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                               double min_expected) {
    if (observed.size() != probabilities.size() || observed.empty()) {
        throw InvalidArgument("observed counts and probabilities must be non-empty and aligned");
    }
    const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
    if (total <= 0) throw InvalidArgument("goodness-of-fit needs at least one observation");
    std::vector<double> expected(probabilities.size());
    for (std::size_t i = 0; i < expected.size(); ++i) expected[i] = probabilities[i] * total;

    const auto groups = pool(expected, min_expected);
    ChiSquareResult r;
    for (const auto& g : groups) {
        double o = 0.0;
        double e = 0.0;
        for (std::size_t i : g) {
            o += static_cast<double>(observed[i]);
            e += expected[i];
        }
        if (e <= 0.0) {
            if (o > 0.0) return {INFINITY, groups.size() - 1, 0.0};
            continue;
        }
        r.statistic += (o - e) * (o - e) / e;
    }
    r.dof = groups.size() - 1;
    r.p_value = upper_tail(r.statistic, r.dof);
    return r;
}

ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first, std::span<const std::uint64_t> second,
                                      double min_combined) {
    if (first.size() != second.size() || first.empty()) {
        throw InvalidArgument("histograms must be non-empty and aligned");
    }
    std::vector<double> combined(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) combined[i] = static_cast<double>(first[i] + second[i]);
    const double n1 = static_cast<double>(std::accumulate(first.begin(), first.end(), std::uint64_t{0}));
    const double n2 = static_cast<double>(std::accumulate(second.begin(), second.end(), std::uint64_t{0}));
    if (n1 <= 0 || n2 <= 0) throw InvalidArgument("both samples need observations");

    const auto groups = pool(combined, min_combined);
    const double grand = n1 + n2;
    ChiSquareResult r;
    for (const auto& g : groups) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t i : g) {
            a += static_cast<double>(first[i]);
            b += static_cast<double>(second[i]);
        }
        const double col = a + b;
        if (col == 0.0) continue;
        const double ea = n1 * col / grand;
        const double eb = n2 * col / grand;
        r.statistic += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
    }
    r.dof = groups.size() - 1;
    r.p_value = upper_tail(r.statistic, r.dof);
    return r;
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("binomial p must lie in [0, 1]");
    std::vector<double> pmf(n + 1, 0.0);
    if (p == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p == 1.0) {
        pmf[n] = 1.0;
        return pmf;
    }
    const auto nd = static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double log_choose = std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1);
        pmf[k] = std::exp(log_choose + kd * std::log(p) + (nd - kd) * std::log1p(-p));
    }
    return pmf;
}

std::vector<std::uint64_t> histogram(std::span<const std::uint64_t> values, std::size_t bins) {
    std::vector<std::uint64_t> h(bins, 0);
    for (std::uint64_t v : values) {
        if (v >= bins) throw InvalidArgument("histogram value " + std::to_string(v) + " outside bins");
        ++h[v];
    }
    return h;
}

}  // namespace qbs
