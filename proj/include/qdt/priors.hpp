#pragma once

// Non-informative priors for utility factors: expected utilities of lotteries
// and the power-law utility factors that minimize the information functionals
// for gains (all U >= 0) and losses (all U < 0).

#include <span>
#include <vector>

namespace qdt {

struct Lottery {
    std::vector<double> payoffs;
    std::vector<double> probs;

    /// Throws DomainError on length mismatch or empty payoffs, ValidationError on bad probabilities.
    void validate() const;
};

/// u(x) = x, or u(x) = sign(x) |x|^exponent with exponent > 0.
class UtilityFunction {
public:
    enum class Kind { linear, power };

    static UtilityFunction linear() { return UtilityFunction(Kind::linear, 1.0); }
    static UtilityFunction power(double exponent);

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }

    double operator()(double x) const;

private:
    UtilityFunction(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}

    Kind kind_;
    double exponent_;
};

/// Exponents of the generalized priors. alpha = gamma = 1 gives the Luce forms.
struct UtilityFactorConfig {
    double alpha = 1.0;
    double gamma = 1.0;

    void validate() const;
};

using UtilityFactors = std::vector<double>;

double expected_utility(const Lottery& lottery, const UtilityFunction& u = UtilityFunction::linear());

/// f_n = U_n^alpha / sum_m U_m^alpha for nonnegative utilities. Zero utility gives a zero factor.
UtilityFactors utility_factors_gains(std::span<const double> utilities, double alpha = 1.0);

/// f_n = |U_n|^-gamma / sum_m |U_m|^-gamma for strictly negative utilities.
UtilityFactors utility_factors_losses(std::span<const double> utilities, double gamma = 1.0);

/// Dispatches on the sign regime of the whole set; mixed signs are a SignDomainError.
UtilityFactors utility_factors(std::span<const double> utilities, const UtilityFactorConfig& config = {});

// Information functionals with the expected log-likelihood offset set to zero
// (it shifts the value without moving the minimizer). 0 ln 0 counts as 0, and a
// positive factor on a zero-utility gain returns +infinity.
double information_functional_gains(std::span<const double> f, std::span<const double> utilities, double lambda,
                                    double alpha);
double information_functional_losses(std::span<const double> f, std::span<const double> utilities, double lambda,
                                     double gamma);

}  // namespace qdt
