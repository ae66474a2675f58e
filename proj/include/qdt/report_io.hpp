#pragma once

// Rendering of command results as human tables, JSON run records and CSV,
// plus the re-parse used to check records written by this library.

#include "qdt/attraction.hpp"
#include "qdt/experiment.hpp"
#include "qdt/simulate.hpp"
#include "qdt/verify.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qdt {

enum class OutputFormat { table, record, csv };

std::optional<OutputFormat> parse_output_format(std::string_view name);

/// "fnv1a64:<16 hex digits>" of the bytes.
std::string input_digest(std::string_view bytes);

/// Metadata stamped on machine-readable records. The timestamp is only
/// written when set, so replays of the same command stay byte-identical.
struct RunContext {
    std::string command;
    std::optional<std::string> input_digest;
    std::optional<std::string> timestamp;
};

std::string render_prediction(const PredictionOutcome& outcome, const ExperimentFile& experiment, OutputFormat format,
                              const RunContext& context);
std::string render_attraction_set(const AttractionSet& set, OutputFormat format, const RunContext& context);
std::string render_verify(const VerifyResult& result, OutputFormat format, const RunContext& context);
std::string render_simulation(const SimulationResult& result, OutputFormat format, const RunContext& context);

/// Reads the report back from a predict record and checks the report invariants.
PredictionReport parse_prediction_record(std::string_view record);

}  // namespace qdt
