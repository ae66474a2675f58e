#pragma once

// Non-informative prior for attraction factors: the quarter law and the
// quantized, equidistant attraction sets assigned by attractiveness rank.

#include "qdt/rational.hpp"

#include <cstdint>
#include <vector>

namespace qdt {

/// Q_N in descending order, exact. For N = 1 the set is {0} with zero gap.
struct AttractionSet {
    int n_prospects = 0;
    std::vector<Rational> values;
    Rational gap;
    Rational q_max;

    std::vector<double> as_doubles() const;
};

/// Uniform density 1/2 on [-1, 1].
struct AttractionDistribution {
    static constexpr double lower = -1.0;
    static constexpr double upper = 1.0;
    static constexpr double density = 0.5;

    /// Mean |q| under the density.
    static constexpr double mean_abs() { return 0.5; }
    /// integral_0^1 x * density dx, the quarter-law value.
    static constexpr double one_sided_integral() { return 0.25; }
};

/// 1/N for even N, N/(N^2 - 1) for odd N. Requires N >= 2.
Rational attraction_gap(int n_prospects);

/// (N - 1)/(2N) for even N, N/(2(N + 1)) for odd N. Requires N >= 2.
Rational attraction_qmax(int n_prospects);

AttractionSet quantized_attraction_set(int n_prospects);

/// 1/2 - (2 rank - 1)/(2N), rank counted from 1.
double asymptotic_attraction(int n_prospects, int rank);

/// Sum_{n=1}^{N} |N + 1 - 2n| by direct summation.
std::int64_t rank_deviation_sum(int n_prospects);

/// Mean |q| for q drawn uniformly on [-1, 1].
double quarter_law_check(std::uint64_t samples, std::uint64_t seed);

/// Monte Carlo estimate of integral_0^1 x * density dx: the mean of max(q, 0)
/// over the same draws as quarter_law_check.
double one_sided_attraction_integral(std::uint64_t samples, std::uint64_t seed);

/// Mean consecutive gaps of N sorted uniforms on [0, 1] (descending order), N - 1 values.
std::vector<double> ordered_uniform_gap_check(int n_prospects, std::uint64_t samples, std::uint64_t seed);

}  // namespace qdt
