#include "qdt/verify.hpp"

#include "qdt/attraction.hpp"
#include "qdt/priors.hpp"
#include "qdt/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qdt {

namespace {

constexpr double kQuarterTolerance = 0.005;
constexpr double kGapSpreadLimit = 3e-3;
constexpr double kMinimizerMargin = -1e-9;
constexpr double kIdentityTolerance = 1e-12;

std::vector<double> random_simplex_point(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> x(n);
    double total = 0.0;
    for (auto& v : x) total += (v = expo(rng));
    for (auto& v : x) v /= total;
    return x;
}

VerifyResult quarter_law(const VerifyOptions& opt, std::uint64_t samples) {
    const double mean = quarter_law_check(samples, opt.seed);
    VerifyResult r;
    r.statistics = {{"mean_abs_q", mean},
                    {"expected", 0.25},
                    {"deviation", std::abs(mean - 0.25)},
                    {"one_sided_integral", one_sided_attraction_integral(samples, opt.seed)}};
    r.passed = std::abs(mean - 0.25) <= kQuarterTolerance;
    r.criterion = "|mean |q| - 0.25| <= 0.005";
    return r;
}

VerifyResult gaps(const VerifyOptions& opt, std::uint64_t samples) {
    const auto mean_gaps = ordered_uniform_gap_check(opt.n_prospects, samples, opt.seed);
    const auto [lo, hi] = std::minmax_element(mean_gaps.begin(), mean_gaps.end());
    VerifyResult r;
    r.statistics.emplace_back("n_prospects", opt.n_prospects);
    for (std::size_t k = 0; k < mean_gaps.size(); ++k) r.statistics.emplace_back("gap_" + std::to_string(k + 1), mean_gaps[k]);
    r.statistics.emplace_back("expected_gap", 1.0 / (opt.n_prospects + 1));
    r.statistics.emplace_back("spread", *hi - *lo);
    r.passed = *hi - *lo < kGapSpreadLimit;
    r.criterion = "max gap - min gap < 3e-3";
    return r;
}

struct RegimeStats {
    double min_margin = std::numeric_limits<double>::infinity();
    int luce_mismatches = 0;
};

RegimeStats entropy_regime(bool gains, const VerifyOptions& opt, std::uint64_t samples, std::uint64_t stream) {
    std::mt19937_64 rng(derive_seed(opt.seed, stream));
    std::uniform_int_distribution<int> size_dist(2, 6);
    std::uniform_real_distribution<double> magnitude(0.1, 100.0);
    std::uniform_real_distribution<double> exponent_dist(0.2, 3.0);
    std::uniform_real_distribution<double> step(1e-6, 1e-2);
    std::uniform_real_distribution<double> lambda_dist(-2.0, 2.0);

    RegimeStats stats;
    for (int v = 0; v < opt.utility_vectors; ++v) {
        const auto n = static_cast<std::size_t>(size_dist(rng));
        std::vector<double> utilities(n);
        for (auto& u : utilities) u = gains ? magnitude(rng) : -magnitude(rng);
        const double exponent = exponent_dist(rng);
        const double lambda = lambda_dist(rng);

        auto functional = [&](const std::vector<double>& f) {
            return gains ? information_functional_gains(f, utilities, lambda, exponent)
                         : information_functional_losses(f, utilities, lambda, exponent);
        };
        const auto best = gains ? utility_factors_gains(utilities, exponent) : utility_factors_losses(utilities, exponent);
        const double best_value = functional(best);

        for (std::uint64_t s = 0; s < samples; ++s) {
            auto candidate = random_simplex_point(n, rng);
            if (s % 2 == 1) {
                // Local perturbation: a short step from the closed form toward a random simplex point.
                const double t = step(rng);
                for (std::size_t i = 0; i < n; ++i) candidate[i] = (1.0 - t) * best[i] + t * candidate[i];
            }
            stats.min_margin = std::min(stats.min_margin, functional(candidate) - best_value);
        }

        // Luce forms at unit exponent.
        const auto luce = gains ? utility_factors_gains(utilities, 1.0) : utility_factors_losses(utilities, 1.0);
        double total = 0.0;
        for (const double u : utilities) total += gains ? u : 1.0 / std::abs(u);
        for (std::size_t i = 0; i < n; ++i) {
            const double direct = (gains ? utilities[i] : 1.0 / std::abs(utilities[i])) / total;
            if (luce[i] != direct) ++stats.luce_mismatches;
        }
    }
    return stats;
}

VerifyResult entropy(const VerifyOptions& opt, std::uint64_t samples) {
    const auto g = entropy_regime(true, opt, samples, 0);
    const auto l = entropy_regime(false, opt, samples, 1);
    VerifyResult r;
    r.statistics = {{"utility_vectors_per_regime", opt.utility_vectors},
                    {"min_margin_gains", g.min_margin},
                    {"min_margin_losses", l.min_margin},
                    {"luce_mismatches", g.luce_mismatches + l.luce_mismatches}};
    r.passed = g.min_margin >= kMinimizerMargin && l.min_margin >= kMinimizerMargin &&
               g.luce_mismatches + l.luce_mismatches == 0;
    r.criterion = "functional(closed form) <= functional(perturbation) + 1e-9; unit exponents match Luce forms exactly";
    return r;
}

VerifyResult quantum_identity(const VerifyOptions& opt, std::uint64_t samples) {
    opt.dims.validate();
    double max_identity = 0.0, max_sum_p = 0.0, max_sum_f = 0.0, max_sum_q = 0.0, min_f = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const auto rho = random_density_operator(opt.dims.total(), derive_seed(opt.seed, 2 * i));
        const auto b = sample_inconclusive(opt.dims.inconclusive, derive_seed(opt.seed, 2 * i + 1));
        const auto raw = prospect_set_probabilities(rho, b, opt.dims);
        for (const auto& t : raw) {
            max_identity = std::max(max_identity, std::abs(t.p - (t.f + t.q)));
            min_f = std::min(min_f, t.f);
        }
        const auto normalized = normalize_prospect_set(raw);
        double sp = 0.0, sf = 0.0, sq = 0.0;
        for (const auto& t : normalized) {
            sp += t.p;
            sf += t.f;
            sq += t.q;
        }
        max_sum_p = std::max(max_sum_p, std::abs(sp - 1.0));
        max_sum_f = std::max(max_sum_f, std::abs(sf - 1.0));
        max_sum_q = std::max(max_sum_q, std::abs(sq));
    }
    VerifyResult r;
    r.statistics = {{"dim_conclusive", double(opt.dims.conclusive)},
                    {"dim_inconclusive", double(opt.dims.inconclusive)},
                    {"max_abs_p_minus_f_plus_q", max_identity},
                    {"max_abs_sum_p_minus_1", max_sum_p},
                    {"max_abs_sum_f_minus_1", max_sum_f},
                    {"max_abs_sum_q", max_sum_q},
                    {"min_f", min_f}};
    r.passed = max_identity < kIdentityTolerance && max_sum_p < kIdentityTolerance && max_sum_f < kIdentityTolerance &&
               max_sum_q < kIdentityTolerance && min_f >= -1e-12;
    r.criterion = "max |p - (f + q)| < 1e-12; normalized |sum p - 1|, |sum f - 1|, |sum q| < 1e-12";
    return r;
}

}  // namespace

std::optional<VerifySuite> parse_verify_suite(std::string_view name) {
    if (name == "quarter-law") return VerifySuite::quarter_law;
    if (name == "gaps") return VerifySuite::gaps;
    if (name == "entropy") return VerifySuite::entropy;
    if (name == "quantum-identity") return VerifySuite::quantum_identity;
    return std::nullopt;
}

std::string_view suite_name(VerifySuite suite) {
    switch (suite) {
        case VerifySuite::quarter_law: return "quarter-law";
        case VerifySuite::gaps: return "gaps";
        case VerifySuite::entropy: return "entropy";
        case VerifySuite::quantum_identity: return "quantum-identity";
    }
    return "unknown";
}

std::uint64_t default_samples(VerifySuite suite) {
    switch (suite) {
        case VerifySuite::quarter_law: return 1'000'000;
        case VerifySuite::gaps: return 100'000;
        case VerifySuite::entropy: return 10'000;
        case VerifySuite::quantum_identity: return 1'000;
    }
    return 0;
}

double VerifyResult::statistic(std::string_view name) const {
    for (const auto& [key, value] : statistics)
        if (key == name) return value;
    throw DomainError("no statistic named " + std::string(name));
}

VerifyResult run_verify(VerifySuite suite, const VerifyOptions& options) {
    const std::uint64_t samples = options.samples.value_or(default_samples(suite));
    if (samples < 1) throw DomainError("verification needs at least one sample");
    VerifyResult r;
    switch (suite) {
        case VerifySuite::quarter_law: r = quarter_law(options, samples); break;
        case VerifySuite::gaps: r = gaps(options, samples); break;
        case VerifySuite::entropy: r = entropy(options, samples); break;
        case VerifySuite::quantum_identity: r = quantum_identity(options, samples); break;
    }
    r.suite = suite;
    r.samples = samples;
    r.seed = options.seed;
    return r;
}

}  // namespace qdt
