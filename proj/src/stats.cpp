#include "coex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace coex {

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

RankTestResult mann_whitney_greater(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney: empty sample");
    struct Tagged {
        double v;
        bool from_a;
    };
    std::vector<Tagged> all;
    all.reserve(a.size() + b.size());
    for (double v : a) all.push_back({v, true});
    for (double v : b) all.push_back({v, false});
    std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) { return x.v < y.v; });

    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double n = n1 + n2;

    // Midranks with tie bookkeeping for the variance correction.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    size_t i = 0;
    while (i < all.size()) {
        size_t j = i;
        while (j < all.size() && all[j].v == all[i].v) ++j;
        double t = static_cast<double>(j - i);
        double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (size_t k = i; k < j; ++k) {
            if (all[k].from_a) rank_sum_a += midrank;
        }
        tie_term += t * t * t - t;
        i = j;
    }

    RankTestResult r;
    r.u_statistic = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    double mean_u = n1 * n2 / 2.0;
    double var_u = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var_u <= 0.0) {
        // all values identical
        r.z = 0.0;
        r.p_one_sided = 0.5;
        return r;
    }
    // Continuity correction toward the null.
    r.z = (r.u_statistic - mean_u - 0.5) / std::sqrt(var_u);
    r.p_one_sided = 0.5 * std::erfc(r.z / std::sqrt(2.0));
    return r;
}

double chi_square_critical_001(unsigned df) {
    static const double table[] = {6.635, 9.210, 11.345, 13.277, 15.086,
                                   16.812, 18.475, 20.090, 21.666, 23.209};
    if (df < 1 || df > 10) throw std::invalid_argument("chi_square_critical_001: df out of table");
    return table[df - 1];
}

ChiSquareResult chi_square_geometric(const std::vector<std::uint64_t>& gaps, double p_d) {
    if (gaps.empty()) throw std::invalid_argument("chi_square_geometric: empty sample");
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t max_gap = 1;
    for (std::uint64_t g : gaps) {
        if (g == 0) throw std::invalid_argument("chi_square_geometric: gaps start at 1");
        ++counts[g];
        max_gap = std::max(max_gap, g);
    }
    const double n = static_cast<double>(gaps.size());

    // Expected counts per gap value, then a merged tail so that every bin has
    // expectation >= 5.
    std::vector<double> expected;
    std::vector<double> observed;
    double cum_prob = 0.0;
    std::uint64_t gap = 1;
    while (true) {
        double pr = (1.0 - p_d) * std::pow(p_d, static_cast<double>(gap - 1));
        double exp_count = n * pr;
        double tail_exp = n * (1.0 - cum_prob) - exp_count;
        if (tail_exp < 5.0 || exp_count < 5.0) break;
        auto it = counts.find(gap);
        observed.push_back(it == counts.end() ? 0.0 : static_cast<double>(it->second));
        expected.push_back(exp_count);
        cum_prob += pr;
        ++gap;
    }
    // Tail bin: everything at or above `gap`.
    double tail_obs = 0.0;
    for (const auto& [g, c] : counts) {
        if (g >= gap) tail_obs += static_cast<double>(c);
    }
    observed.push_back(tail_obs);
    expected.push_back(n * (1.0 - cum_prob));

    ChiSquareResult r;
    for (size_t k = 0; k < observed.size(); ++k) {
        double d = observed[k] - expected[k];
        r.statistic += d * d / expected[k];
    }
    r.df = static_cast<unsigned>(observed.size()) - 1;
    if (r.df == 0) {
        // degenerate: a single bin always fits
        r.critical_001 = 0.0;
        r.pass = true;
        return r;
    }
    r.critical_001 = chi_square_critical_001(r.df);
    r.pass = r.statistic < r.critical_001;
    return r;
}

}  // namespace coex
