#include "qdt/attraction.hpp"

#include "qdt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>

namespace qdt {

namespace {

void require_at_least_two(int n) {
    if (n < 2) throw DegenerateError("attraction gap needs at least two prospects, got " + std::to_string(n));
}

}  // namespace

std::vector<double> AttractionSet::as_doubles() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.to_double());
    return out;
}

Rational attraction_gap(int n_prospects) {
    require_at_least_two(n_prospects);
    const std::int64_t n = n_prospects;
    return n % 2 == 0 ? Rational(1, n) : Rational(n, n * n - 1);
}

Rational attraction_qmax(int n_prospects) {
    require_at_least_two(n_prospects);
    const std::int64_t n = n_prospects;
    return n % 2 == 0 ? Rational(n - 1, 2 * n) : Rational(n, 2 * (n + 1));
}

AttractionSet quantized_attraction_set(int n_prospects) {
    if (n_prospects < 1) throw DomainError("attraction set needs at least one prospect");
    AttractionSet set;
    set.n_prospects = n_prospects;
    if (n_prospects == 1) {
        set.values = {Rational(0)};
        return set;
    }
    set.gap = attraction_gap(n_prospects);
    set.q_max = attraction_qmax(n_prospects);
    set.values.reserve(static_cast<std::size_t>(n_prospects));
    for (int n = 1; n <= n_prospects; ++n) set.values.push_back(set.q_max - Rational(n - 1) * set.gap);
    return set;
}

double asymptotic_attraction(int n_prospects, int rank) {
    if (n_prospects < 2) throw DomainError("asymptotic attraction needs at least two prospects");
    if (rank < 1 || rank > n_prospects) throw DomainError("rank " + std::to_string(rank) + " out of range");
    return 0.5 - (2.0 * rank - 1.0) / (2.0 * n_prospects);
}

std::int64_t rank_deviation_sum(int n_prospects) {
    if (n_prospects < 1) throw DomainError("need at least one prospect");
    std::int64_t total = 0;
    for (std::int64_t n = 1; n <= n_prospects; ++n) {
        const std::int64_t d = n_prospects + 1 - 2 * n;
        total += d < 0 ? -d : d;
    }
    return total;
}

double quarter_law_check(std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(AttractionDistribution::lower, AttractionDistribution::upper);
    double total = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) total += std::abs(uniform(rng));
    return total / static_cast<double>(samples);
}

double one_sided_attraction_integral(std::uint64_t samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(AttractionDistribution::lower, AttractionDistribution::upper);
    double total = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) total += std::max(uniform(rng), 0.0);
    return total / static_cast<double>(samples);
}

std::vector<double> ordered_uniform_gap_check(int n_prospects, std::uint64_t samples, std::uint64_t seed) {
    if (n_prospects < 2) throw DomainError("gap check needs at least two prospects");
    if (samples < 1) throw DomainError("need at least one sample");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const auto n = static_cast<std::size_t>(n_prospects);
    std::vector<double> draw(n);
    std::vector<double> gaps(n - 1, 0.0);
    for (std::uint64_t s = 0; s < samples; ++s) {
        for (auto& x : draw) x = uniform(rng);
        std::sort(draw.begin(), draw.end(), std::greater<>());
        for (std::size_t k = 0; k + 1 < n; ++k) gaps[k] += draw[k] - draw[k + 1];
    }
    for (auto& g : gaps) g /= static_cast<double>(samples);
    return gaps;
}

}  // namespace qdt
