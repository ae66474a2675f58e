#include "qdt/priors.hpp"

#include "qdt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qdt {

namespace {

constexpr double kProbSumTolerance = 1e-9;

void require_same_length(std::span<const double> f, std::span<const double> utilities) {
    if (f.size() != utilities.size()) throw DomainError("factor and utility lists differ in length");
    if (f.empty()) throw DomainError("empty prospect set");
}

double entropy_term(double f) {
    if (f < 0.0) throw DomainError("utility factor must be nonnegative");
    return f == 0.0 ? 0.0 : f * std::log(f);
}

UtilityFactors normalized(std::vector<double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (auto& w : weights) w /= total;
    return weights;
}

}  // namespace

void Lottery::validate() const {
    if (payoffs.empty()) throw DomainError("lottery has no payoffs");
    if (payoffs.size() != probs.size()) throw DomainError("lottery payoffs and probabilities differ in length");
    double total = 0.0;
    for (const double p : probs) {
        if (!(p >= 0.0)) throw ValidationError("lottery probability is negative or NaN");
        total += p;
    }
    if (std::abs(total - 1.0) > kProbSumTolerance)
        throw ValidationError("lottery probabilities sum to " + std::to_string(total));
}

UtilityFunction UtilityFunction::power(double exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent)) throw DomainError("power utility exponent must be positive");
    return UtilityFunction(Kind::power, exponent);
}

double UtilityFunction::operator()(double x) const {
    if (kind_ == Kind::linear) return x;
    return std::copysign(std::pow(std::abs(x), exponent_), x);
}

void UtilityFactorConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
}

double expected_utility(const Lottery& lottery, const UtilityFunction& u) {
    lottery.validate();
    double total = 0.0;
    for (std::size_t i = 0; i < lottery.payoffs.size(); ++i) total += u(lottery.payoffs[i]) * lottery.probs[i];
    return total;
}

UtilityFactors utility_factors_gains(std::span<const double> utilities, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
    if (utilities.empty()) throw DomainError("empty prospect set");
    for (const double u : utilities) {
        if (!std::isfinite(u)) throw DomainError("utility is not finite");
        if (u < 0.0) throw SignDomainError("gain factors need nonnegative utilities, got " + std::to_string(u));
    }
    const double largest = *std::max_element(utilities.begin(), utilities.end());
    if (largest == 0.0) throw DegenerateError("all utilities are zero");

    std::vector<double> weights(utilities.begin(), utilities.end());
    if (alpha != 1.0) {
        for (auto& w : weights) w = std::pow(w / largest, alpha);
    }
    return normalized(std::move(weights));
}

UtilityFactors utility_factors_losses(std::span<const double> utilities, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
    if (utilities.empty()) throw DomainError("empty prospect set");
    for (const double u : utilities) {
        if (!std::isfinite(u)) throw DomainError("utility is not finite");
        if (u >= 0.0) throw SignDomainError("loss factors need strictly negative utilities, got " + std::to_string(u));
    }
    std::vector<double> weights(utilities.size());
    if (gamma == 1.0) {
        std::transform(utilities.begin(), utilities.end(), weights.begin(), [](double u) { return 1.0 / std::abs(u); });
    } else {
        // Scale by the smallest loss so the largest weight is exactly one.
        const double smallest = std::abs(*std::max_element(utilities.begin(), utilities.end()));
        std::transform(utilities.begin(), utilities.end(), weights.begin(),
                       [&](double u) { return std::pow(smallest / std::abs(u), gamma); });
    }
    return normalized(std::move(weights));
}

UtilityFactors utility_factors(std::span<const double> utilities, const UtilityFactorConfig& config) {
    config.validate();
    if (utilities.empty()) throw DomainError("empty prospect set");
    const bool all_gains = std::all_of(utilities.begin(), utilities.end(), [](double u) { return u >= 0.0; });
    const bool all_losses = std::all_of(utilities.begin(), utilities.end(), [](double u) { return u < 0.0; });
    if (all_gains) return utility_factors_gains(utilities, config.alpha);
    if (all_losses) return utility_factors_losses(utilities, config.gamma);
    throw SignDomainError("utility set mixes gains and losses; no utility factor is defined for it");
}

double information_functional_gains(std::span<const double> f, std::span<const double> utilities, double lambda,
                                    double alpha) {
    require_same_length(f, utilities);
    if (std::any_of(utilities.begin(), utilities.end(), [](double u) { return u < 0.0; }))
        throw SignDomainError("gain functional needs nonnegative utilities");
    if (std::all_of(utilities.begin(), utilities.end(), [](double u) { return u == 0.0; }))
        throw DegenerateError("all utilities are zero");

    double entropy = 0.0, total = 0.0, likelihood = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        entropy += entropy_term(f[n]);
        total += f[n];
        if (f[n] == 0.0) continue;
        if (utilities[n] == 0.0) return std::numeric_limits<double>::infinity();
        likelihood += f[n] * -std::log(utilities[n]);
    }
    return entropy + lambda * (total - 1.0) + alpha * likelihood;
}

double information_functional_losses(std::span<const double> f, std::span<const double> utilities, double lambda,
                                     double gamma) {
    require_same_length(f, utilities);
    if (std::any_of(utilities.begin(), utilities.end(), [](double u) { return u >= 0.0; }))
        throw SignDomainError("loss functional needs strictly negative utilities");

    double entropy = 0.0, total = 0.0, likelihood = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        entropy += entropy_term(f[n]);
        total += f[n];
        if (f[n] != 0.0) likelihood += f[n] * -std::log(std::abs(utilities[n]));
    }
    return entropy + lambda * (total - 1.0) - gamma * likelihood;
}

}  // namespace qdt
