#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qbs {

struct ChiSquareResult {
    double statistic = 0.0;
    std::size_t dof = 0;
    double p_value = 1.0;

    bool rejects(double significance) const noexcept { return p_value < significance; }
};

/// Pearson goodness-of-fit of observed counts against category
/// probabilities. Adjacent categories are pooled left to right until each
/// pooled expected count reaches `min_expected`; a short remainder joins the
/// last pool.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed, std::span<const double> probabilities,
                               double min_expected = 5.0);

/// Two-sample homogeneity test on aligned histograms. Adjacent categories
/// are pooled until each pool's combined count reaches `min_combined`.
ChiSquareResult chi_square_two_sample(std::span<const std::uint64_t> first, std::span<const std::uint64_t> second,
                                      double min_combined = 10.0);

// Binomial(n, p) probability mass for k = 0..n.
std::vector<double> binomial_pmf(std::size_t n, double p);

// Histogram of values into bins 0..bins-1; values >= bins throw.
std::vector<std::uint64_t> histogram(std::span<const std::uint64_t> values, std::size_t bins);

}  // namespace qbs
