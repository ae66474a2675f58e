#pragma once

// Finite-dimensional event calculus for composite prospects.
//
// The event space is H = H_A (x) H_B with basis |n alpha>, flattened as
// index = n * N_B + alpha. A prospect pairs a conclusive choice n with the
// coefficients b_alpha of the inconclusive state |B> = sum_alpha b_alpha |alpha>.
// Its probability under a strategic state rho splits exactly into a diagonal
// utility part f and an off-diagonal attraction part q.

#include "qdt/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace qdt {

namespace tolerance {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNorm = 1e-12;
inline constexpr double kPsdSlack = 1e-10;
inline constexpr double kIdempotent = 1e-10;
inline constexpr double kImaginary = 1e-10;
inline constexpr double kSum = 1e-12;
}  // namespace tolerance

inline constexpr Eigen::Index kDefaultMaxDim = 64;

template <typename Scalar>
using ComplexAmplitude = std::complex<Scalar>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Sizes of the conclusive (N_A) and inconclusive (N_B) factors.
struct SpaceDims {
    Eigen::Index conclusive = 0;
    Eigen::Index inconclusive = 0;

    Eigen::Index total() const noexcept { return conclusive * inconclusive; }

    void validate(Eigen::Index max_total = kDefaultMaxDim) const {
        if (conclusive < 1 || inconclusive < 1) throw DomainError("space dimensions must be positive");
        if (total() > max_total)
            throw DomainError("space dimension " + std::to_string(total()) + " exceeds cap " + std::to_string(max_total));
    }
};

namespace detail {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

template <typename Scalar>
Scalar hermiticity_defect(const ComplexMatrix<Scalar>& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar min_eigenvalue(const ComplexMatrix<Scalar>& m) {
    const ComplexMatrix<Scalar> h = (m + m.adjoint()) / Scalar(2);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ValidationError("eigenvalue solver failed");
    return solver.eigenvalues().minCoeff();
}

}  // namespace detail

template <typename Scalar = double>
class StateVector {
public:
    using Vector = ComplexVector<Scalar>;

    explicit StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() < 1) throw DomainError("state vector must have positive dimension");
        if (!detail::all_finite(amplitudes_)) throw DomainError("state vector has non-finite amplitude");
    }

    static StateVector basis(Eigen::Index dim, Eigen::Index index) {
        if (dim < 1 || index < 0 || index >= dim) throw DomainError("basis index out of range");
        Vector v = Vector::Zero(dim);
        v(index) = Scalar(1);
        return StateVector(std::move(v));
    }

    Eigen::Index dim() const noexcept { return amplitudes_.size(); }
    const Vector& amplitudes() const noexcept { return amplitudes_; }
    const std::complex<Scalar>& operator()(Eigen::Index i) const { return amplitudes_(i); }

    Scalar squared_norm() const { return amplitudes_.squaredNorm(); }
    bool is_normalized(Scalar tol = Scalar(tolerance::kNorm)) const {
        return std::abs(squared_norm() - Scalar(1)) <= tol;
    }

    StateVector normalized() const {
        const Scalar n = amplitudes_.norm();
        if (n == Scalar(0)) throw NormalizationError("cannot normalize the zero vector");
        return StateVector(amplitudes_ / n);
    }

private:
    Vector amplitudes_;
};

enum class EventKind { projector, povm_element };

template <typename Scalar = double>
class EventOperator {
public:
    using Matrix = ComplexMatrix<Scalar>;

    EventOperator(Matrix entries, EventKind kind) : entries_(std::move(entries)), kind_(kind) {
        if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
            throw DomainError("event operator must be a non-empty square matrix");
        if (!detail::all_finite(entries_)) throw DomainError("event operator has non-finite entry");
        if (detail::hermiticity_defect<Scalar>(entries_) > Scalar(tolerance::kHermitian))
            throw ValidationError("event operator is not Hermitian");
        if (kind_ == EventKind::projector &&
            (entries_ * entries_ - entries_).cwiseAbs().maxCoeff() > Scalar(tolerance::kIdempotent))
            throw ValidationError("projector is not idempotent");
        if (detail::min_eigenvalue<Scalar>(entries_) < -Scalar(tolerance::kPsdSlack))
            throw ValidationError("event operator is not positive semidefinite");
    }

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    EventKind kind() const noexcept { return kind_; }

private:
    Matrix entries_;
    EventKind kind_;
};

/// Strategic state of a decision maker: Hermitian, unit trace, positive semidefinite.
template <typename Scalar = double>
class DensityOperator {
public:
    using Matrix = ComplexMatrix<Scalar>;

    explicit DensityOperator(Matrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
            throw DomainError("density operator must be a non-empty square matrix");
        if (!detail::all_finite(entries_)) throw ValidationError("density operator has non-finite entry");
        if (detail::hermiticity_defect<Scalar>(entries_) > Scalar(tolerance::kHermitian))
            throw ValidationError("density operator is not Hermitian");
        if (std::abs(entries_.trace() - std::complex<Scalar>(1)) > Scalar(tolerance::kTrace))
            throw ValidationError("density operator trace differs from one");
        if (detail::min_eigenvalue<Scalar>(entries_) < -Scalar(tolerance::kPsdSlack))
            throw ValidationError("density operator is not positive semidefinite");
    }

    static DensityOperator pure(const StateVector<Scalar>& psi) {
        if (!psi.is_normalized()) throw NormalizationError("pure state must be normalized");
        return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
    }

    Eigen::Index dim() const noexcept { return entries_.rows(); }
    const Matrix& matrix() const noexcept { return entries_; }
    const std::complex<Scalar>& operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

private:
    Matrix entries_;
};

/// Composite event pi_n = A_n (x) B.
template <typename Scalar = double>
struct Prospect {
    Eigen::Index choice = 0;
    ComplexVector<Scalar> b_coeffs;

    Prospect(Eigen::Index choice_index, ComplexVector<Scalar> coeffs)
        : choice(choice_index), b_coeffs(std::move(coeffs)) {
        if (choice < 0) throw DomainError("prospect choice index must be nonnegative");
        if (b_coeffs.size() < 1) throw DomainError("prospect needs at least one inconclusive mode");
        if (!detail::all_finite(b_coeffs)) throw DomainError("prospect coefficient is not finite");
    }
};

template <typename Scalar = double>
struct ProbabilityTriple {
    Scalar p{};
    Scalar f{};
    Scalar q{};
};

/// |s><s| for a normalized state.
template <typename Scalar>
EventOperator<Scalar> make_projector(const StateVector<Scalar>& state) {
    if (!state.is_normalized()) throw NormalizationError("projector requires a normalized state");
    return EventOperator<Scalar>(state.amplitudes() * state.amplitudes().adjoint(), EventKind::projector);
}

/// Kronecker product with index = i * dim(b) + j.
template <typename Scalar>
StateVector<Scalar> tensor(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
    const Eigen::Index nb = b.dim();
    ComplexVector<Scalar> out(a.dim() * nb);
    for (Eigen::Index i = 0; i < a.dim(); ++i) out.segment(i * nb, nb) = a(i) * b.amplitudes();
    return StateVector<Scalar>(std::move(out));
}

/// sum_alpha b_alpha |n alpha>; not normalized unless b is.
template <typename Scalar>
StateVector<Scalar> prospect_state(const Prospect<Scalar>& prospect, const SpaceDims& dims) {
    if (dims.conclusive < 1 || dims.inconclusive < 1) throw DomainError("space dimensions must be positive");
    if (prospect.choice >= dims.conclusive) throw DomainError("prospect choice index out of range");
    if (prospect.b_coeffs.size() != dims.inconclusive)
        throw DomainError("prospect has " + std::to_string(prospect.b_coeffs.size()) + " coefficients, expected " +
                          std::to_string(dims.inconclusive));
    ComplexVector<Scalar> v = ComplexVector<Scalar>::Zero(dims.total());
    v.segment(prospect.choice * dims.inconclusive, dims.inconclusive) = prospect.b_coeffs;
    return StateVector<Scalar>(std::move(v));
}

/// |pi_n><pi_n|, a POVM element rather than a projector in general.
template <typename Scalar>
EventOperator<Scalar> prospect_operator(const Prospect<Scalar>& prospect, const SpaceDims& dims) {
    const auto state = prospect_state(prospect, dims);
    return EventOperator<Scalar>(state.amplitudes() * state.amplitudes().adjoint(), EventKind::povm_element);
}

/// p = Tr(rho P(pi_n)) through the full operator product; f and q from the
/// diagonal and off-diagonal parts of the n-th block.
template <typename Scalar>
ProbabilityTriple<Scalar> prospect_probability(const DensityOperator<Scalar>& rho, const Prospect<Scalar>& prospect,
                                               const SpaceDims& dims) {
    if (rho.dim() != dims.total())
        throw DomainError("density operator dimension " + std::to_string(rho.dim()) + " does not match " +
                          std::to_string(dims.conclusive) + "x" + std::to_string(dims.inconclusive));
    const auto op = prospect_operator(prospect, dims);
    const std::complex<Scalar> p = (rho.matrix() * op.matrix()).trace();

    const Eigen::Index offset = prospect.choice * dims.inconclusive;
    const auto& b = prospect.b_coeffs;
    Scalar f(0);
    std::complex<Scalar> q(0);
    for (Eigen::Index a = 0; a < dims.inconclusive; ++a) {
        f += std::norm(b(a)) * rho(offset + a, offset + a).real();
        for (Eigen::Index c = 0; c < dims.inconclusive; ++c) {
            if (a == c) continue;
            q += std::conj(b(a)) * b(c) * rho(offset + a, offset + c);
        }
    }
    if (std::abs(q.imag()) > Scalar(tolerance::kImaginary))
        throw ValidationError("attraction term has imaginary part " + std::to_string(double(q.imag())));
    if (std::abs(p.imag()) > Scalar(tolerance::kImaginary))
        throw ValidationError("prospect probability has imaginary part " + std::to_string(double(p.imag())));
    return {p.real(), f, q.real()};
}

/// Renormalizes p and f separately over a complete prospect set and recomputes q = p - f.
template <typename Scalar>
std::vector<ProbabilityTriple<Scalar>> normalize_prospect_set(std::span<const ProbabilityTriple<Scalar>> triples) {
    Scalar sum_p(0), sum_f(0);
    for (const auto& t : triples) {
        if (t.p < Scalar(0) || t.f < Scalar(0)) throw DomainError("raw prospect probabilities must be nonnegative");
        sum_p += t.p;
        sum_f += t.f;
    }
    if (sum_p <= Scalar(0) || sum_f <= Scalar(0)) throw DegenerateError("prospect set has zero total probability");
    std::vector<ProbabilityTriple<Scalar>> out;
    out.reserve(triples.size());
    for (const auto& t : triples) {
        ProbabilityTriple<Scalar> n{t.p / sum_p, t.f / sum_f, Scalar(0)};
        n.q = n.p - n.f;
        out.push_back(n);
    }
    return out;
}

template <typename Scalar>
std::vector<ProbabilityTriple<Scalar>> normalize_prospect_set(const std::vector<ProbabilityTriple<Scalar>>& triples) {
    return normalize_prospect_set(std::span<const ProbabilityTriple<Scalar>>(triples));
}

/// Raw triples for every choice n sharing one inconclusive state b.
template <typename Scalar>
std::vector<ProbabilityTriple<Scalar>> prospect_set_probabilities(const DensityOperator<Scalar>& rho,
                                                                  const ComplexVector<Scalar>& b,
                                                                  const SpaceDims& dims) {
    std::vector<ProbabilityTriple<Scalar>> out;
    out.reserve(static_cast<std::size_t>(dims.conclusive));
    for (Eigen::Index n = 0; n < dims.conclusive; ++n) out.push_back(prospect_probability(rho, Prospect<Scalar>(n, b), dims));
    return out;
}

/// Multiplies every off-diagonal entry by (1 - damping): rho' = (1-d) rho + d diag(rho).
/// Only the alpha != beta entries inside a block feed q; the rest are damped uniformly.
template <typename Scalar>
DensityOperator<Scalar> decohere(const DensityOperator<Scalar>& rho, Scalar damping, const SpaceDims& dims) {
    if (!(damping >= Scalar(0) && damping <= Scalar(1))) throw DomainError("damping must lie in [0, 1]");
    if (rho.dim() != dims.total()) throw DomainError("density operator dimension does not match block dimensions");
    ComplexMatrix<Scalar> m = rho.matrix() * (Scalar(1) - damping);
    m.diagonal() = rho.matrix().diagonal();
    return DensityOperator<Scalar>(std::move(m));
}

/// Independent standard complex Gaussians scaled onto the unit sphere.
inline ComplexVector<double> sample_inconclusive(Eigen::Index b_dim, std::uint64_t seed) {
    if (b_dim < 1) throw DomainError("inconclusive dimension must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector<double> b(b_dim);
    do {
        for (Eigen::Index i = 0; i < b_dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            b(i) = {re, im};
        }
    } while (b.norm() == 0.0);
    return b / b.norm();
}

/// rho = G G^dagger / Tr(G G^dagger) with a complex Gaussian G (Hilbert-Schmidt measure).
inline DensityOperator<double> random_density_operator(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw DomainError("density operator dimension must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix<double> g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = {re, im};
        }
    ComplexMatrix<double> rho = g * g.adjoint();
    rho = (rho + rho.adjoint()).eval() / 2.0;
    rho /= rho.trace().real();
    return DensityOperator<double>(std::move(rho));
}

}  // namespace qdt
