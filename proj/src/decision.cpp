#include "qdt/decision.hpp"

namespace qdt {

namespace {

struct Argmax {
    std::size_t index = 0;
    bool unique = true;
};

Argmax argmax(std::span<const double> v) {
    Argmax best;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best.index]) best.index = i;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (i != best.index && std::abs(v[i] - v[best.index]) <= NumberTraits<double>::tie_tolerance()) best.unique = false;
    return best;
}

}  // namespace

ReversalCheck regularity_violation_check(std::span<const double> f, std::span<const double> p) {
    if (f.size() != p.size()) throw ValidationError("utility factors and probabilities differ in length");
    if (f.empty()) throw ValidationError("empty prospect set");
    const auto af = argmax(f);
    const auto ap = argmax(p);
    if (!af.unique || !ap.unique) return {false, true};
    return {af.index != ap.index, false};
}

}  // namespace qdt
