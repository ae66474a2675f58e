#pragma once

// Seeded Monte Carlo and property oracles behind `qdt verify`.

#include "qdt/quantum_core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qdt {

enum class VerifySuite { quarter_law, gaps, entropy, quantum_identity };

std::optional<VerifySuite> parse_verify_suite(std::string_view name);
std::string_view suite_name(VerifySuite suite);

/// quarter-law: 10^6 draws; gaps: 10^5 draws; entropy: 10^4 simplex points per
/// utility vector; quantum-identity: 10^3 random instances.
std::uint64_t default_samples(VerifySuite suite);

struct VerifyOptions {
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    /// Number of prospects for the gaps suite.
    int n_prospects = 5;
    /// Space for the quantum-identity suite.
    SpaceDims dims{4, 3};
    /// Utility vectors per sign regime for the entropy suite.
    int utility_vectors = 20;
};

struct VerifyResult {
    VerifySuite suite{};
    bool passed = false;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    /// Named statistics in a fixed order.
    std::vector<std::pair<std::string, double>> statistics;
    /// Pass rule in words, e.g. "|mean - 0.25| <= 0.005".
    std::string criterion;

    double statistic(std::string_view name) const;
};

VerifyResult run_verify(VerifySuite suite, const VerifyOptions& options = {});

}  // namespace qdt
