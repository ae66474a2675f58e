#pragma once

// Damping sweep on a random strategic state: how the attraction factors of a
// full prospect set fade as the off-diagonal part of rho is suppressed.

#include "qdt/quantum_core.hpp"

#include <cstdint>
#include <vector>

namespace qdt {

struct SimulateOptions {
    SpaceDims dims{2, 2};
    std::uint64_t seed = 0;
    /// Number of intervals on [0, 1]; the sweep has sweep_steps + 1 rows.
    int sweep_steps = 10;
    Eigen::Index max_dim = kDefaultMaxDim;
};

struct SimulationRow {
    double damping = 0.0;
    /// Raw triples straight from the trace formula.
    std::vector<ProbabilityTriple<double>> raw;
    /// Triples after renormalizing over the prospect set.
    std::vector<ProbabilityTriple<double>> normalized;
};

struct SimulationResult {
    SimulateOptions options;
    ComplexVector<double> b_coeffs;
    std::vector<SimulationRow> rows;
};

SimulationResult simulate_damping_sweep(const SimulateOptions& options);

}  // namespace qdt
