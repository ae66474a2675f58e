#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qdt/quantum_core.hpp"
#include "qdt/seeding.hpp"

#include <cmath>
#include <random>

using namespace qdt;
using cd = std::complex<double>;
using Vec = ComplexVector<double>;
using Mat = ComplexMatrix<double>;

namespace {

Vec random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cd(g(rng), g(rng));
    return v;
}

oracle::Dense to_dense(const Mat& m) {
    oracle::Dense d{static_cast<std::size_t>(m.rows()), {}};
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) d.a.push_back(m(i, j));
    return d;
}

std::vector<cd> to_std(const Vec& v) {
    return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("make_projector") {
    SUBCASE("basis state gives diag(1, 0)") {
        const auto m = make_projector(StateVector<>::basis(2, 0)).matrix();
        CHECK(m(0, 0) == cd(1));
        CHECK(m(1, 1) == cd(0));
        CHECK(m(0, 1) == cd(0));
    }
    SUBCASE("symmetric superposition gives all entries 1/2") {
        Vec v(2);
        v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        const auto op = make_projector(StateVector<>(v));
        CHECK(op.kind() == EventKind::projector);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(op.matrix()(i, j) - cd(0.5)) < 1e-15);
    }
    SUBCASE("random 3-dim state is idempotent with unit trace") {
        std::mt19937_64 rng(1);
        for (int k = 0; k < 20; ++k) {
            const auto s = StateVector<>(random_vector(3, rng)).normalized();
            const Mat m = make_projector(s).matrix();
            CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(m.trace() - cd(1)) < 1e-12);
        }
    }
    SUBCASE("non-normalized input is rejected") {
        Vec v(2);
        v << 1.0, 1.0;
        CHECK_THROWS_AS(make_projector(StateVector<>(v)), NormalizationError);
    }
}

TEST_CASE("tensor") {
    CHECK(tensor(StateVector<>::basis(2, 0), StateVector<>::basis(2, 1)).amplitudes() ==
          StateVector<>::basis(4, 1).amplitudes());

    Vec b(2);
    b << cd(0.6, 0.1), cd(-0.2, 0.7);
    const auto t = tensor(StateVector<>::basis(2, 0), StateVector<>(b));
    Vec expected(4);
    expected << b(0), b(1), 0, 0;
    CHECK(t.amplitudes() == expected);

    CHECK_THROWS_AS(StateVector<>(Vec(0)), DomainError);

    SUBCASE("norm-multiplicative and bilinear on random inputs") {
        std::mt19937_64 rng(2);
        std::normal_distribution<double> g;
        for (int k = 0; k < 50; ++k) {
            const Vec a = random_vector(3, rng), a2 = random_vector(3, rng), c = random_vector(4, rng);
            const cd s(g(rng), g(rng));
            const auto ac = tensor(StateVector<>(a), StateVector<>(c));
            CHECK(std::abs(ac.amplitudes().norm() - a.norm() * c.norm()) < 1e-12 * a.norm() * c.norm());
            const Vec lhs = tensor(StateVector<>(Vec(a + s * a2)), StateVector<>(c)).amplitudes();
            const Vec rhs = ac.amplitudes() + s * tensor(StateVector<>(a2), StateVector<>(c)).amplitudes();
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
            // Lexicographic index n * N_B + alpha.
            for (int n = 0; n < 3; ++n)
                for (int al = 0; al < 4; ++al) CHECK(ac(n * 4 + al) == a(n) * c(al));
        }
    }
}

TEST_CASE("prospect_state") {
    Vec b(2);
    b << 1.0, 0.0;
    Vec expected = Vec::Zero(4);
    expected(0) = 1.0;
    CHECK(prospect_state(Prospect<>(0, b), {2, 2}).amplitudes() == expected);

    const double h = 1.0 / std::sqrt(2.0);
    b << h, h;
    expected << 0, 0, h, h;
    CHECK(prospect_state(Prospect<>(1, b), {2, 2}).amplitudes() == expected);

    SUBCASE("support lies in block n") {
        std::mt19937_64 rng(3);
        for (int n = 0; n < 4; ++n) {
            const Vec coeffs = random_vector(3, rng);
            const auto s = prospect_state(Prospect<>(n, coeffs), {4, 3});
            for (Eigen::Index i = 0; i < 12; ++i) {
                if (i / 3 == n) CHECK(s(i) == coeffs(i % 3));
                else CHECK(s(i) == cd(0));
            }
        }
    }
    CHECK_THROWS_AS(prospect_state(Prospect<>(2, b), {2, 2}), DomainError);
    CHECK_THROWS_AS(prospect_state(Prospect<>(0, Vec::Ones(3)), {2, 2}), DomainError);
    CHECK_THROWS_AS(Prospect<>(-1, b), DomainError);
    CHECK_THROWS_AS(Prospect<>(0, Vec(0)), DomainError);
}

TEST_CASE("density operator validation") {
    Mat m = Mat::Identity(2, 2) / 2.0;
    CHECK_NOTHROW((void)DensityOperator<>(m));
    m(0, 1) = cd(0.1, 0.1);
    CHECK_THROWS_AS((void)DensityOperator<>(m), ValidationError);  // not Hermitian
    m = Mat::Identity(2, 2);
    CHECK_THROWS_AS((void)DensityOperator<>(m), ValidationError);  // trace 2
    m << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS((void)DensityOperator<>(m), ValidationError);  // negative eigenvalue
}

TEST_CASE("prospect_probability") {
    SUBCASE("single inconclusive mode has no attraction") {
        const auto rho = random_density_operator(3, 4);
        Vec b(1);
        b << 1.0;
        for (int n = 0; n < 3; ++n) {
            const auto t = prospect_probability(rho, Prospect<>(n, b), {3, 1});
            CHECK(t.q == 0.0);
            CHECK(std::abs(t.p - rho(n, n).real()) < 1e-15);
            CHECK(t.f == rho(n, n).real());
        }
    }
    SUBCASE("diagonal rho has no attraction for any b") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.1, 1.0);
        Mat d = Mat::Zero(6, 6);
        double total = 0;
        for (int i = 0; i < 6; ++i) total += (d(i, i) = u(rng)).real();
        d /= total;
        const DensityOperator<> rho(d);
        for (int k = 0; k < 20; ++k) {
            const Vec b = random_vector(3, rng);
            for (int n = 0; n < 2; ++n) CHECK(prospect_probability(rho, Prospect<>(n, b), {2, 3}).q == 0.0);
        }
    }
    SUBCASE("pure state probability equals the squared overlap") {
        std::mt19937_64 rng(6);
        for (int k = 0; k < 50; ++k) {
            const auto psi = StateVector<>(random_vector(4, rng)).normalized();
            const auto rho = DensityOperator<>::pure(psi);
            const Vec b = random_vector(2, rng);
            const int n = k % 2;
            const auto t = prospect_probability(rho, Prospect<>(n, b), {2, 2});
            std::vector<cd> pi(4, 0.0);
            pi[2 * n] = b(0);
            pi[2 * n + 1] = b(1);
            const double expected = oracle::overlap_squared(pi, to_std(psi.amplitudes()));
            CHECK(std::abs(t.p - expected) < 1e-12);
            CHECK(std::abs(t.p - (t.f + t.q)) < 1e-12);
        }
    }
    SUBCASE("trace, diagonal and off-diagonal parts agree with explicit loops") {
        for (std::uint64_t k = 0; k < 100; ++k) {
            const SpaceDims dims{4, 3};
            const auto rho = random_density_operator(12, derive_seed(99, 2 * k));
            const auto b = sample_inconclusive(3, derive_seed(99, 2 * k + 1));
            const auto dense = to_dense(rho.matrix());
            for (Eigen::Index n = 0; n < 4; ++n) {
                const auto t = prospect_probability(rho, Prospect<>(n, b), dims);
                std::vector<cd> pi(12, 0.0);
                for (int a = 0; a < 3; ++a) pi[n * 3 + a] = b(a);
                double f = 0;
                cd q = 0;
                for (int a = 0; a < 3; ++a)
                    for (int c = 0; c < 3; ++c) {
                        const cd term = std::conj(b(a)) * b(c) * dense(n * 3 + a, n * 3 + c);
                        if (a == c) f += term.real();
                        else q += term;
                    }
                CHECK(std::abs(t.p - oracle::quadratic_form(dense, pi).real()) < 1e-12);
                CHECK(std::abs(t.f - f) < 1e-12);
                CHECK(std::abs(t.q - q.real()) < 1e-12);
                CHECK(std::abs(q.imag()) < 1e-12);
                CHECK(std::abs(t.p - (t.f + t.q)) < 1e-12);
                CHECK(t.f >= -1e-12);
            }
        }
    }
    SUBCASE("dimension mismatch") {
        const auto rho = random_density_operator(4, 1);
        CHECK_THROWS_AS(prospect_probability(rho, Prospect<>(0, Vec::Ones(3)), {2, 3}), DomainError);
    }
}

TEST_CASE("normalize_prospect_set") {
    using T = ProbabilityTriple<double>;
    const std::vector<T> already{{0.3, 0.4, -0.1}, {0.7, 0.6, 0.1}};
    const auto same = normalize_prospect_set(already);
    CHECK(same[0].p == doctest::Approx(0.3));
    CHECK(same[1].f == doctest::Approx(0.6));
    CHECK(same[0].q == doctest::Approx(-0.1));

    const auto n = normalize_prospect_set(std::vector<T>{{0.2, 0.3, -0.1}, {0.2, 0.1, 0.1}});
    CHECK(n[0].p == 0.5);
    CHECK(n[1].p == 0.5);
    CHECK(n[0].f == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(n[1].f == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(n[0].q == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(n[1].q == doctest::Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(normalize_prospect_set(std::vector<T>{{0, 0.5, 0}, {0, 0.5, 0}}), DegenerateError);
    CHECK_THROWS_AS(normalize_prospect_set(std::vector<T>{{0.5, 0, 0}, {0.5, 0, 0}}), DegenerateError);
    CHECK_THROWS_AS(normalize_prospect_set(std::vector<T>{{-0.1, 0.5, 0}, {0.5, 0.5, 0}}), DomainError);

    SUBCASE("random raw sets sum to one, one, zero") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0.0, 3.0);
        for (int k = 0; k < 200; ++k) {
            std::vector<T> raw(2 + k % 6);
            for (auto& t : raw) t = {u(rng), u(rng), 0.0};
            double sp = 0, sf = 0, sq = 0;
            for (const auto& t : normalize_prospect_set(raw)) {
                sp += t.p;
                sf += t.f;
                sq += t.q;
            }
            CHECK(std::abs(sp - 1) < 1e-12);
            CHECK(std::abs(sf - 1) < 1e-12);
            CHECK(std::abs(sq) < 1e-12);
        }
    }
}

TEST_CASE("sample_inconclusive") {
    const auto one = sample_inconclusive(1, 17);
    CHECK(std::abs(std::abs(one(0)) - 1.0) < 1e-15);
    CHECK(sample_inconclusive(4, 123) == sample_inconclusive(4, 123));
    CHECK(sample_inconclusive(4, 123) != sample_inconclusive(4, 124));
    CHECK(std::abs(sample_inconclusive(5, 9).squaredNorm() - 1.0) < 1e-12);
    CHECK_THROWS_AS(sample_inconclusive(0, 1), DomainError);

    // Sphere symmetry: E|b_0|^2 = 1/2 for two modes.
    double total = 0;
    const int draws = 100000;
    for (int s = 0; s < draws; ++s) total += std::norm(sample_inconclusive(2, derive_seed(2024, s))(0));
    CHECK(std::abs(total / draws - 0.5) < 0.01);
}

TEST_CASE("decohere") {
    const SpaceDims dims{3, 3};
    const auto rho = random_density_operator(9, 21);
    const auto b = sample_inconclusive(3, 22);

    CHECK(decohere(rho, 0.0, dims).matrix() == rho.matrix());

    const auto classical = decohere(rho, 1.0, dims);
    for (Eigen::Index n = 0; n < 3; ++n) CHECK(prospect_probability(classical, Prospect<>(n, b), dims).q == 0.0);

    SUBCASE("|q| is non-increasing along the sweep and structure is preserved") {
        std::vector<double> previous(3, std::numeric_limits<double>::infinity());
        for (int k = 0; k <= 20; ++k) {
            const auto damped = decohere(rho, k / 20.0, dims);
            const Mat& m = damped.matrix();
            CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(m.trace() - cd(1)) < 1e-12);
            Eigen::SelfAdjointEigenSolver<Mat> es(m);
            CHECK(es.eigenvalues().minCoeff() >= -1e-10);
            for (Eigen::Index n = 0; n < 3; ++n) {
                const double q = std::abs(prospect_probability(damped, Prospect<>(n, b), dims).q);
                CHECK(q <= previous[n] + 1e-15);
                previous[n] = q;
            }
        }
    }
    CHECK_THROWS_AS(decohere(rho, -0.1, dims), DomainError);
    CHECK_THROWS_AS(decohere(rho, 1.5, dims), DomainError);
    CHECK_THROWS_AS(decohere(rho, 0.5, SpaceDims{2, 2}), DomainError);
}

TEST_CASE("space dimension cap") {
    CHECK_NOTHROW((SpaceDims{8, 8}.validate()));
    CHECK_THROWS_AS((SpaceDims{9, 8}.validate()), DomainError);
    CHECK_NOTHROW((SpaceDims{9, 8}.validate(128)));
    CHECK_THROWS_AS((SpaceDims{0, 3}.validate()), DomainError);
}

TEST_CASE("core is generic in the scalar type") {
    using LD = long double;
    ComplexVector<LD> psi(4);
    psi << std::complex<LD>(0.5L, 0.1L), std::complex<LD>(-0.3L, 0.2L), std::complex<LD>(0.4L, -0.6L), 0.2L;
    const auto rho = DensityOperator<LD>::pure(StateVector<LD>(psi).normalized());
    ComplexVector<LD> b(2);
    b << std::complex<LD>(0.8L, 0.0L), std::complex<LD>(0.0L, 0.6L);
    const auto t = prospect_probability(rho, Prospect<LD>(1, b), {2, 2});
    CHECK(std::abs(t.p - (t.f + t.q)) < 1e-15L);
}
