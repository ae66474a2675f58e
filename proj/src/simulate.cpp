#include "qdt/simulate.hpp"

#include "qdt/seeding.hpp"

namespace qdt {

SimulationResult simulate_damping_sweep(const SimulateOptions& options) {
    options.dims.validate(options.max_dim);
    if (options.sweep_steps < 1) throw DomainError("sweep needs at least one step");

    SimulationResult result;
    result.options = options;
    const auto rho = random_density_operator(options.dims.total(), derive_seed(options.seed, 0));
    result.b_coeffs = sample_inconclusive(options.dims.inconclusive, derive_seed(options.seed, 1));

    for (int k = 0; k <= options.sweep_steps; ++k) {
        const double damping = k == options.sweep_steps ? 1.0 : static_cast<double>(k) / options.sweep_steps;
        const auto damped = decohere(rho, damping, options.dims);
        SimulationRow row;
        row.damping = damping;
        row.raw = prospect_set_probabilities(damped, result.b_coeffs, options.dims);
        row.normalized = normalize_prospect_set(row.raw);
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace qdt
