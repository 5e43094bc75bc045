#pragma once

#include <cstdint>
#include <vector>

namespace coex {

double median(std::vector<double> v);

// One-sided Mann-Whitney U test of H1: samples in `a` tend to be larger than
// samples in `b`. Returns the p-value under the normal approximation with tie
// correction. Sample sizes of ~20 per side are the intended regime.
struct RankTestResult {
    double u_statistic = 0.0;
    double z = 0.0;
    double p_one_sided = 1.0;
};
RankTestResult mann_whitney_greater(const std::vector<double>& a, const std::vector<double>& b);

// Upper critical value of the chi-square distribution at significance 0.01
// for 1..10 degrees of freedom.
double chi_square_critical_001(unsigned df);

// Goodness-of-fit of observed inter-success gaps (in beacon periods, >= 1)
// against the geometric law P(i) = (1-p_d) p_d^(i-1). Tail bins are merged
// until every expected count is at least 5.
struct ChiSquareResult {
    double statistic = 0.0;
    unsigned df = 0;
    double critical_001 = 0.0;
    bool pass = false;
};
ChiSquareResult chi_square_geometric(const std::vector<std::uint64_t>& gaps, double p_d);

}  // namespace coex
