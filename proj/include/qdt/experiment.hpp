#pragma once

// Experiment documents: a JSON object carrying the competing prospects
// (either utility factors or utilities), the attractiveness rank imposed by
// the decoy, and optional observed choice frequencies.
//
//   {
//     "name": "microwave",
//     "prospects": [{"id": "A", "f": 0.4}, {"id": "B", "f": 0.6}],
//     "attractiveness_rank": ["A", "B"],
//     "empirical": [{"id": "A", "frequency": 0.61}, {"id": "B", "frequency": 0.39}],
//     "config": {"alpha": 1, "gamma": 1, "utility_kind": "linear"}
//   }
//
// A prospect carries exactly one of "f", "utility" (an expected utility) or
// "lottery" ({"payoffs": [...], "probs": [...]}); "f" cannot be mixed with the
// other two within one file.

#include "qdt/decision.hpp"
#include "qdt/priors.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdt {

struct ProspectSpec {
    std::string id;
    std::optional<double> f;
    std::optional<double> utility;
    std::optional<Lottery> lottery;
};

struct EmpiricalFrequency {
    std::string id;
    double frequency = 0.0;
};

struct ExperimentConfig {
    UtilityFactorConfig factors;
    UtilityFunction utility = UtilityFunction::linear();
};

struct ExperimentFile {
    std::string name;
    std::vector<ProspectSpec> prospects;
    std::vector<std::string> attractiveness_rank;
    std::vector<EmpiricalFrequency> empirical;
    ExperimentConfig config;

    bool uses_factors() const { return !prospects.empty() && prospects.front().f.has_value(); }
};

/// Parses and validates. ParseError for malformed documents (with line and
/// column) or wrongly typed fields (with the field path); ValidationError for
/// invariant breaches.
ExperimentFile parse_experiment(std::string_view text);
ExperimentFile load_experiment(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

struct PredictionOutcome {
    PredictionReport report;
    /// Present when the file gives utility factors directly; computed in exact arithmetic.
    std::optional<ExactPredictionReport> exact;
};

/// Utility factors (given, or via the priors), rank-assigned attraction,
/// bounds, and scoring against the empirical frequencies when present.
PredictionOutcome predict_experiment(const ExperimentFile& experiment, DecoyMode mode = DecoyMode::exclude);

}  // namespace qdt
