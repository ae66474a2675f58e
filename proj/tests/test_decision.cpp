#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdt/decision.hpp"

#include <cmath>
#include <random>

using namespace qdt;

namespace {

ChoiceSet two(double fa, double fb) {
    return {{"A", "B"}, {fa, fb}, {"A", "B"}};
}

ExactChoiceSet exact_two(const char* fa, const char* fb) {
    return {{"A", "B"}, {Rational::parse(fa), Rational::parse(fb)}, {"A", "B"}};
}

}  // namespace

TEST_CASE("compose_probabilities reproduces the two decoy experiments") {
    const auto ovens = compose_probabilities(exact_two("0.4", "0.6"));
    CHECK(ovens.p_values() == std::vector<Rational>{Rational(13, 20), Rational(7, 20)});
    CHECK(ovens.q_values() == std::vector<Rational>{Rational(1, 4), Rational(-1, 4)});
    CHECK_FALSE(ovens.clamping_applied);

    const auto frogs = compose_probabilities(exact_two("0.35", "0.65"));
    CHECK(frogs.p_values() == std::vector<Rational>{Rational(3, 5), Rational(2, 5)});

    const auto even = compose_probabilities(exact_two("0.5", "0.5"));
    CHECK(even.p_values() == std::vector<Rational>{Rational(3, 4), Rational(1, 4)});

    const auto d = compose_probabilities(two(0.4, 0.6));
    CHECK(std::abs(d.prospects[0].p - 0.65) < 1e-15);
    CHECK(std::abs(d.prospects[1].p - 0.35) < 1e-15);
}

TEST_CASE("rank order decides which prospect gets q_max") {
    ChoiceSet c{{"A", "B", "C"}, {0.2, 0.3, 0.5}, {"C", "A", "B"}};
    const auto r = compose_probabilities(c);
    CHECK(r.attraction_levels == 3);
    // C gets 3/8, A gets 0, B's -3/8 clamps to -0.3; the residual -0.075 is split over C and A.
    CHECK(r.clamping_applied);
    CHECK(r.prospects[1].q == doctest::Approx(-0.3));
    CHECK(r.prospects[2].q == doctest::Approx(0.3375));
    CHECK(r.prospects[0].q == doctest::Approx(-0.0375));
}

TEST_CASE("choice set validation") {
    CHECK_THROWS_AS(compose_probabilities(ChoiceSet{{"A", "B"}, {0.4, 0.6}, {"A", "C"}}), ValidationError);
    CHECK_THROWS_AS(compose_probabilities(ChoiceSet{{"A", "B"}, {0.4, 0.6}, {"A"}}), ValidationError);
    CHECK_THROWS_AS(compose_probabilities(ChoiceSet{{"A", "A"}, {0.4, 0.6}, {"A", "A"}}), ValidationError);
    CHECK_THROWS_AS(compose_probabilities(ChoiceSet{{"A", "B"}, {0.3, 0.6}, {"A", "B"}}), ValidationError);
    CHECK_THROWS_AS(compose_probabilities(ChoiceSet{{"A", "B"}, {-0.1, 1.1}, {"A", "B"}}), ValidationError);
    CHECK_THROWS_AS(compose_probabilities(ChoiceSet{{}, {}, {}}), ValidationError);
}

TEST_CASE("enforce_bounds") {
    SUBCASE("already inside the bounds") {
        const auto r = enforce_bounds(std::vector<double>{0.4, 0.6}, std::vector<double>{0.25, -0.25});
        CHECK(r.q == std::vector<double>{0.25, -0.25});
        CHECK_FALSE(r.clamped);
    }
    SUBCASE("zero attraction") {
        const auto r = enforce_bounds(std::vector<double>{0.4, 0.6}, std::vector<double>{0.0, 0.0});
        CHECK(r.q == std::vector<double>{0.0, 0.0});
        CHECK_FALSE(r.clamped);
    }
    SUBCASE("dominant prospect: both entries clamped") {
        const auto r = enforce_bounds(std::vector<Rational>{Rational(9, 10), Rational(1, 10)},
                                      std::vector<Rational>{Rational(1, 4), Rational(-1, 4)});
        CHECK(r.q == std::vector<Rational>{Rational(1, 10), Rational(-1, 10)});
        CHECK(r.clamped);
    }
    SUBCASE("three equal prospects") {
        // By hand: q3 = -3/8 clamps to -1/3, residual -1/24 split over A and B.
        const Rational third(1, 3);
        const auto r = enforce_bounds(std::vector<Rational>{third, third, third},
                                      std::vector<Rational>{Rational(3, 8), Rational(0), Rational(-3, 8)});
        CHECK(r.q == std::vector<Rational>{Rational(17, 48), Rational(-1, 48), Rational(-1, 3)});
        CHECK(r.clamped);
    }
    SUBCASE("infeasible bounds") {
        CHECK_THROWS_AS(enforce_bounds(std::vector<double>{1.5, 0.9}, std::vector<double>{0.0, 0.0}), InfeasibleError);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(enforce_bounds(std::vector<double>{0.5, 0.5}, std::vector<double>{0.0}), DomainError);
    }
}

TEST_CASE("enforce_bounds properties on random sets") {
    std::mt19937_64 rng(51);
    std::exponential_distribution<double> e(1.0);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const std::size_t n = 2 + k % 7;
        std::vector<double> f(n), q(n);
        double sf = 0, sq = 0;
        for (auto& v : f) sf += (v = e(rng));
        for (auto& v : f) v /= sf;
        for (auto& v : q) sq += (v = u(rng));
        for (auto& v : q) v -= sq / n;
        const auto once = enforce_bounds(f, q);
        double total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(once.q[i] >= -f[i]);
            CHECK(once.q[i] <= 1.0 - f[i]);
            total += once.q[i];
        }
        CHECK(std::abs(total) < 1e-9);
        const auto twice = enforce_bounds(f, once.q);
        CHECK(twice.q == once.q);
        CHECK_FALSE(twice.clamped);
    }
}

TEST_CASE("two prospects inside [0.25, 0.75] are never clamped") {
    for (int k = 0; k <= 100; ++k) {
        const Rational fa = Rational(1, 4) + Rational(k, 200);
        const auto r = compose_probabilities(ExactChoiceSet{{"A", "B"}, {fa, Rational(1) - fa}, {"A", "B"}});
        CHECK_FALSE(r.clamping_applied);
        CHECK(r.prospects[0].p == fa + Rational(1, 4));
        CHECK(r.prospects[1].p == Rational(1) - fa - Rational(1, 4));
    }
}

TEST_CASE("reversal threshold at a minority factor of one quarter") {
    // A is the minority option (f_A < 1/2) and the most attractive one.
    for (int k = 1; k < 100; ++k) {
        const double fa = k / 200.0;
        const auto r = compose_probabilities(two(fa, 1.0 - fa));
        const auto check = regularity_violation_check(r.f_values(), r.p_values());
        if (k == 50) {
            CHECK(check.tie);
            CHECK_FALSE(check.reversal);
        } else {
            CHECK(check.reversal == (fa > 0.25));
        }
    }
}

TEST_CASE("predict_decoy") {
    const auto ovens = predict_decoy(std::vector<double>{0.4, 0.6}, {0, 1});
    CHECK(ovens.prospects[0].id == "A");
    CHECK(std::abs(ovens.prospects[0].p - 0.65) < 1e-15);
    const auto scored = score_against_empirical(ovens, std::vector<double>{0.61, 0.39});
    CHECK(std::abs(*scored.max_abs_error - 0.04) < 1e-12);

    SUBCASE("three competing prospects") {
        const Rational third(1, 3);
        const auto r = predict_decoy(std::vector<Rational>{third, third, third}, {0, 1, 2});
        CHECK(r.p_values() == std::vector<Rational>{Rational(11, 16), Rational(5, 16), Rational(0)});
        CHECK(r.clamping_applied);
    }
    CHECK_THROWS_AS(predict_decoy(std::vector<double>{1.0}, {0}), DomainError);
    CHECK_THROWS_AS(predict_decoy(std::vector<double>{0.5, 0.5}, {0, 2}), ValidationError);
}

TEST_CASE("decoy-inclusive mode") {
    const auto r = predict_decoy(exact_two("0.4", "0.6"), DecoyMode::include);
    CHECK(r.attraction_levels == 3);
    CHECK(r.decoy_mode == DecoyMode::include);
    // Q_3 = {3/8, 0, -3/8}; decoy with f = 0 clamps to 0 and its -3/8 is split over A and B.
    CHECK(r.p_values() == std::vector<Rational>{Rational(47, 80), Rational(33, 80)});
    r.validate();
}

TEST_CASE("score_against_empirical") {
    const auto ovens = compose_probabilities(exact_two("0.4", "0.6"));
    const auto s = score_against_empirical(ovens, std::vector<Rational>{Rational::parse("0.61"), Rational::parse("0.39")});
    CHECK(*s.max_abs_error == Rational(1, 25));
    CHECK(*s.mean_abs_error == Rational(1, 25));
    CHECK(*s.prospects[1].abs_error == Rational(1, 25));

    const auto frogs = compose_probabilities(two(0.35, 0.65));
    const auto same = score_against_empirical(frogs, frogs.p_values());
    CHECK(*same.max_abs_error == 0.0);

    const auto off = score_against_empirical(frogs, std::vector<double>{0.5, 0.5});
    CHECK(std::abs(*off.max_abs_error - 0.1) < 1e-12);

    CHECK_THROWS_AS(score_against_empirical(frogs, std::vector<double>{1.0}), ValidationError);
    CHECK_THROWS_AS(score_against_empirical(frogs, std::vector<double>{0.5, 0.3}), ValidationError);
    CHECK_THROWS_AS(score_against_empirical(frogs, std::vector<double>{1.2, -0.2}), ValidationError);
    // Survey rounding up to 2e-2 is accepted.
    CHECK_NOTHROW(score_against_empirical(frogs, std::vector<double>{0.61, 0.40}));
}

TEST_CASE("regularity_violation_check") {
    auto r = regularity_violation_check(std::vector<double>{0.4, 0.6}, std::vector<double>{0.65, 0.35});
    CHECK(r.reversal);
    CHECK_FALSE(r.tie);
    r = regularity_violation_check(std::vector<double>{0.3, 0.7}, std::vector<double>{0.3, 0.7});
    CHECK_FALSE(r.reversal);
    r = regularity_violation_check(std::vector<double>{0.2, 0.8}, std::vector<double>{0.4, 0.6});
    CHECK_FALSE(r.reversal);
    r = regularity_violation_check(std::vector<double>{0.5, 0.5}, std::vector<double>{0.75, 0.25});
    CHECK_FALSE(r.reversal);
    CHECK(r.tie);
    CHECK_THROWS_AS(regularity_violation_check(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0}), ValidationError);
}

TEST_CASE("composed reports always satisfy the report invariants") {
    std::mt19937_64 rng(77);
    std::exponential_distribution<double> e(1.0);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t n = 1 + k % 9;
        ChoiceSet c;
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            c.prospect_ids.push_back("P" + std::to_string(i));
            c.utility_factors.push_back(e(rng));
            s += c.utility_factors.back();
        }
        for (auto& f : c.utility_factors) f /= s;
        c.attractiveness_rank = c.prospect_ids;
        std::shuffle(c.attractiveness_rank.begin(), c.attractiveness_rank.end(), rng);
        for (const auto mode : {DecoyMode::exclude, DecoyMode::include}) {
            const auto r = compose_probabilities(c, mode);
            double sp = 0, sq = 0;
            for (const auto& o : r.prospects) {
                CHECK(o.p >= -1e-12);
                CHECK(o.p <= 1 + 1e-12);
                sp += o.p;
                sq += o.q;
            }
            CHECK(std::abs(sp - 1) < 1e-9);
            CHECK(std::abs(sq) < 1e-9);
        }
    }
}
