#pragma once

// Composition of utility factors with rank-assigned attraction factors,
// bounds enforcement (-f <= q <= 1 - f with sum q = 0), decoy-effect
// predictions and scoring against observed choice frequencies.
//
// Everything is templated on the number type: double for ordinary use,
// Rational when the inputs are exact decimals and the result must be exact.

#include "qdt/attraction.hpp"
#include "qdt/errors.hpp"
#include "qdt/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qdt {

template <typename T>
struct NumberTraits;

template <>
struct NumberTraits<double> {
    static double from_rational(const Rational& r) { return r.to_double(); }
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::abs(x); }
    /// Residual accepted by the rebalancing loop.
    static double residual_tolerance() { return 1e-12; }
    static double sum_tolerance() { return 1e-9; }
    static double tie_tolerance() { return 1e-12; }
};

template <>
struct NumberTraits<Rational> {
    static Rational from_rational(const Rational& r) { return r; }
    static double to_double(const Rational& x) { return x.to_double(); }
    static Rational abs(const Rational& x) { return qdt::abs(x); }
    static Rational residual_tolerance() { return Rational(0); }
    static Rational sum_tolerance() { return Rational(1, 1'000'000'000); }
    static Rational tie_tolerance() { return Rational(0); }
};

/// How the decoy enters the attraction assignment.
enum class DecoyMode {
    /// Q_N over the N competing prospects only; the decoy is not a choice alternative.
    exclude,
    /// Decoy appended with f = 0 at the lowest rank, Q_{N+1} assigned, decoy dropped and p renormalized.
    include,
};

template <typename T>
struct BasicChoiceSet {
    std::vector<std::string> prospect_ids;
    std::vector<T> utility_factors;
    /// Prospect ids, most attractive first.
    std::vector<std::string> attractiveness_rank;

    std::size_t size() const noexcept { return prospect_ids.size(); }

    void validate() const {
        using Tr = NumberTraits<T>;
        if (prospect_ids.empty()) throw ValidationError("choice set is empty");
        if (utility_factors.size() != prospect_ids.size())
            throw ValidationError("utility_factors has " + std::to_string(utility_factors.size()) + " entries for " +
                                  std::to_string(prospect_ids.size()) + " prospects");
        std::set<std::string> unique(prospect_ids.begin(), prospect_ids.end());
        if (unique.size() != prospect_ids.size()) throw ValidationError("prospect ids are not unique");
        T total{};
        for (std::size_t i = 0; i < utility_factors.size(); ++i) {
            const T& f = utility_factors[i];
            if (f < T(0) || f > T(1))
                throw ValidationError("utility factor of '" + prospect_ids[i] + "' lies outside [0, 1]");
            total += f;
        }
        if (Tr::abs(total - T(1)) > Tr::sum_tolerance())
            throw ValidationError("utility factors sum to " + std::to_string(Tr::to_double(total)) + ", expected 1");
        if (attractiveness_rank.size() != prospect_ids.size())
            throw ValidationError("attractiveness_rank must list every prospect exactly once");
        std::set<std::string> ranked(attractiveness_rank.begin(), attractiveness_rank.end());
        if (ranked != unique) throw ValidationError("attractiveness_rank is not a permutation of the prospect ids");
    }
};

template <typename T>
struct ProspectOutcome {
    std::string id;
    T f{};
    T q{};
    T p{};
    std::optional<T> p_exp;
    std::optional<T> abs_error;
};

template <typename T>
struct BasicPredictionReport {
    std::vector<ProspectOutcome<T>> prospects;
    /// Number of attraction levels used (N_L).
    int attraction_levels = 0;
    DecoyMode decoy_mode = DecoyMode::exclude;
    bool clamping_applied = false;
    std::optional<T> max_abs_error;
    std::optional<T> mean_abs_error;

    std::vector<T> p_values() const {
        std::vector<T> out;
        for (const auto& o : prospects) out.push_back(o.p);
        return out;
    }
    std::vector<T> f_values() const {
        std::vector<T> out;
        for (const auto& o : prospects) out.push_back(o.f);
        return out;
    }
    std::vector<T> q_values() const {
        std::vector<T> out;
        for (const auto& o : prospects) out.push_back(o.q);
        return out;
    }

    /// Sum p = 1, sum q = 0, each p in [0, 1], all within 1e-9.
    void validate() const {
        using Tr = NumberTraits<T>;
        if (prospects.empty()) throw ValidationError("report has no prospects");
        T sum_p{}, sum_q{};
        for (const auto& o : prospects) {
            if (o.p < -Tr::sum_tolerance() || o.p > T(1) + Tr::sum_tolerance())
                throw ValidationError("probability of '" + o.id + "' lies outside [0, 1]");
            sum_p += o.p;
            sum_q += o.q;
        }
        if (Tr::abs(sum_p - T(1)) > Tr::sum_tolerance()) throw ValidationError("report probabilities do not sum to 1");
        if (Tr::abs(sum_q) > Tr::sum_tolerance()) throw ValidationError("report attraction factors do not sum to 0");
    }
};

using ChoiceSet = BasicChoiceSet<double>;
using PredictionReport = BasicPredictionReport<double>;
using ExactChoiceSet = BasicChoiceSet<Rational>;
using ExactPredictionReport = BasicPredictionReport<Rational>;

template <typename T>
struct BoundsResult {
    std::vector<T> q;
    bool clamped = false;
};

/// Clamps each q_n into [-f_n, 1 - f_n], then spreads the residual -sum(q)
/// equally over the entries that still have room in its direction, repeating
/// until the set sums to zero. Throws InfeasibleError when no entry can move.
template <typename T>
BoundsResult<T> enforce_bounds(std::span<const T> f, std::span<const T> q) {
    using Tr = NumberTraits<T>;
    if (f.size() != q.size()) throw DomainError("utility and attraction lists differ in length");
    if (f.empty()) throw DomainError("empty prospect set");
    const std::size_t n = f.size();

    std::vector<T> lower(n), upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = -f[i];
        upper[i] = T(1) - f[i];
    }

    BoundsResult<T> out{std::vector<T>(q.begin(), q.end()), false};
    auto clamp = [&](std::size_t i) {
        if (out.q[i] < lower[i]) {
            out.q[i] = lower[i];
            out.clamped = true;
        } else if (out.q[i] > upper[i]) {
            out.q[i] = upper[i];
            out.clamped = true;
        }
    };
    auto residual = [&] {
        T total{};
        for (const auto& v : out.q) total += v;
        return -total;
    };

    for (std::size_t i = 0; i < n; ++i) clamp(i);

    // Every pass either absorbs the residual or pins one more entry at a bound.
    for (std::size_t pass = 0; pass <= n; ++pass) {
        const T r = residual();
        if (Tr::abs(r) <= Tr::residual_tolerance()) return out;
        const bool raise = r > T(0);
        std::vector<std::size_t> movable;
        for (std::size_t i = 0; i < n; ++i)
            if (raise ? out.q[i] < upper[i] : out.q[i] > lower[i]) movable.push_back(i);
        if (movable.empty()) break;
        const T share = r / T(static_cast<long>(movable.size()));
        for (const auto i : movable) {
            out.q[i] += share;
            clamp(i);
        }
    }
    const T r = residual();
    if (Tr::abs(r) <= Tr::residual_tolerance()) return out;
    throw InfeasibleError("cannot satisfy -f <= q <= 1 - f with zero-sum attraction factors; residual " +
                          std::to_string(Tr::to_double(r)) + " after clamping every entry");
}

template <typename T>
BoundsResult<T> enforce_bounds(const std::vector<T>& f, const std::vector<T>& q) {
    return enforce_bounds(std::span<const T>(f), std::span<const T>(q));
}

/// Attraction factor for every prospect from its position in the rank list.
template <typename T>
std::vector<T> assign_attraction(const BasicChoiceSet<T>& choices, int levels) {
    const auto set = quantized_attraction_set(levels);
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t r = 0; r < choices.attractiveness_rank.size(); ++r) position[choices.attractiveness_rank[r]] = r;
    std::vector<T> q;
    q.reserve(choices.size());
    for (const auto& id : choices.prospect_ids) q.push_back(NumberTraits<T>::from_rational(set.values[position.at(id)]));
    return q;
}

template <typename T>
BasicPredictionReport<T> compose_probabilities(const BasicChoiceSet<T>& choices, DecoyMode mode = DecoyMode::exclude) {
    choices.validate();
    BasicPredictionReport<T> report;
    report.decoy_mode = mode;
    const std::size_t n = choices.size();

    if (mode == DecoyMode::exclude) {
        report.attraction_levels = static_cast<int>(n);
        const auto q = assign_attraction(choices, report.attraction_levels);
        const auto bounded = enforce_bounds(choices.utility_factors, q);
        report.clamping_applied = bounded.clamped;
        for (std::size_t i = 0; i < n; ++i) {
            const T& f = choices.utility_factors[i];
            report.prospects.push_back({choices.prospect_ids[i], f, bounded.q[i], f + bounded.q[i], {}, {}});
        }
    } else {
        report.attraction_levels = static_cast<int>(n) + 1;
        const auto set = quantized_attraction_set(report.attraction_levels);
        auto q = assign_attraction(choices, report.attraction_levels);
        auto f = choices.utility_factors;
        q.push_back(NumberTraits<T>::from_rational(set.values.back()));
        f.push_back(T(0));
        const auto bounded = enforce_bounds(f, q);
        report.clamping_applied = bounded.clamped;
        T competing{};
        for (std::size_t i = 0; i < n; ++i) competing += f[i] + bounded.q[i];
        if (!(competing > T(0))) throw DegenerateError("decoy absorbs the whole probability mass");
        for (std::size_t i = 0; i < n; ++i) {
            const T p = (f[i] + bounded.q[i]) / competing;
            report.prospects.push_back({choices.prospect_ids[i], f[i], p - f[i], p, {}, {}});
        }
    }
    report.validate();
    return report;
}

/// Decoy-effect prediction over the competing prospects (the decoy itself is not among them).
template <typename T>
BasicPredictionReport<T> predict_decoy(const BasicChoiceSet<T>& competing, DecoyMode mode = DecoyMode::exclude) {
    if (competing.size() < 2) throw DomainError("decoy prediction needs at least two competing prospects");
    return compose_probabilities(competing, mode);
}

/// Same as above with prospects named A, B, C, ... and the rank given as indices.
template <typename T>
BasicPredictionReport<T> predict_decoy(const std::vector<T>& f_no_decoy, const std::vector<std::size_t>& rank_order,
                                       DecoyMode mode = DecoyMode::exclude) {
    BasicChoiceSet<T> choices;
    for (std::size_t i = 0; i < f_no_decoy.size(); ++i)
        choices.prospect_ids.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "P" + std::to_string(i));
    choices.utility_factors = f_no_decoy;
    for (const auto r : rank_order) {
        if (r >= f_no_decoy.size()) throw ValidationError("rank index out of range");
        choices.attractiveness_rank.push_back(choices.prospect_ids[r]);
    }
    return predict_decoy(choices, mode);
}

/// Attaches per-prospect absolute errors and their max / mean.
template <typename T>
BasicPredictionReport<T> score_against_empirical(BasicPredictionReport<T> report, std::span<const T> p_exp) {
    using Tr = NumberTraits<T>;
    if (p_exp.size() != report.prospects.size())
        throw ValidationError("empirical frequencies have " + std::to_string(p_exp.size()) + " entries for " +
                              std::to_string(report.prospects.size()) + " prospects");
    T total{};
    for (const auto& v : p_exp) {
        if (v < T(0)) throw ValidationError("empirical frequency is negative");
        total += v;
    }
    if (Tr::abs(total - T(1)) > T(1) / T(50))
        throw ValidationError("empirical frequencies sum to " + std::to_string(Tr::to_double(total)));

    T max_err{}, sum_err{};
    for (std::size_t i = 0; i < p_exp.size(); ++i) {
        auto& o = report.prospects[i];
        o.p_exp = p_exp[i];
        o.abs_error = Tr::abs(o.p - p_exp[i]);
        if (*o.abs_error > max_err) max_err = *o.abs_error;
        sum_err += *o.abs_error;
    }
    report.max_abs_error = max_err;
    report.mean_abs_error = sum_err / T(static_cast<long>(p_exp.size()));
    return report;
}

template <typename T>
BasicPredictionReport<T> score_against_empirical(BasicPredictionReport<T> report, const std::vector<T>& p_exp) {
    return score_against_empirical(std::move(report), std::span<const T>(p_exp));
}

struct ReversalCheck {
    /// argmax f differs from argmax p.
    bool reversal = false;
    /// One of the two argmaxes was not unique; no reversal is claimed then.
    bool tie = false;
};

ReversalCheck regularity_violation_check(std::span<const double> f, std::span<const double> p);

inline ReversalCheck regularity_violation_check(const std::vector<double>& f, const std::vector<double>& p) {
    return regularity_violation_check(std::span<const double>(f), std::span<const double>(p));
}

}  // namespace qdt
