// qdt: decoy predictions, attraction sets, verification suites and damping sweeps.
//
// Exit status: 0 success, 1 usage / parse / validation error, 2 verification failure.

#include "qdt/errors.hpp"
#include "qdt/experiment.hpp"
#include "qdt/report_io.hpp"
#include "qdt/simulate.hpp"
#include "qdt/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitVerifyFailed = 2;

struct OutputOptions {
    std::string format = "table";
    std::string out_path;
    bool timestamp = false;
};

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

qdt::RunContext context_for(const std::string& command, const OutputOptions& out) {
    qdt::RunContext ctx;
    ctx.command = command;
    if (out.timestamp) ctx.timestamp = utc_now();
    return ctx;
}

qdt::OutputFormat format_of(const OutputOptions& out) {
    return *qdt::parse_output_format(out.format);
}

void emit(const std::string& text, const OutputOptions& out) {
    std::cout << text;
    if (!out.out_path.empty()) {
        std::ofstream file(out.out_path, std::ios::binary);
        if (!file) throw qdt::ParseError("cannot write output file", out.out_path);
        file << text;
    }
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"table", "record", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out.out_path, "Also write the output to this file");
    cmd->add_flag("--timestamp", out.timestamp, "Stamp records with the current UTC time");
}

std::pair<Eigen::Index, Eigen::Index> parse_dims(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--dims", "expected A,B");
    try {
        return {std::stol(text.substr(0, comma)), std::stol(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("--dims", "expected two integers A,B");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum decision theory: prospect probabilities, attraction factors and decoy predictions"};
    app.require_subcommand(1);

    OutputOptions out;

    std::string experiment_path;
    std::string decoy_mode = "exclude";
    auto* predict = app.add_subcommand("predict", "Predict choice probabilities for an experiment file");
    predict->add_option("file", experiment_path, "Experiment document (.exp)")->required();
    predict->add_option("--decoy-mode", decoy_mode, "exclude: N_L over competing prospects; include: decoy as extra level")
        ->check(CLI::IsMember({"exclude", "include"}))
        ->capture_default_str();
    add_output_flags(predict, out);

    int n_prospects = 0;
    auto* attraction = app.add_subcommand("attraction-set", "Print the quantized attraction set Q_N");
    attraction->add_option("N", n_prospects, "Number of prospects")->required()->check(CLI::PositiveNumber);
    add_output_flags(attraction, out);

    std::string suite;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    int gap_prospects = 5;
    std::string verify_dims = "4,3";
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "quarter-law | gaps | entropy | quantum-identity")
        ->required()
        ->check(CLI::IsMember({"quarter-law", "gaps", "entropy", "quantum-identity"}));
    verify->add_option("--samples", samples, "Sample count (suite default when omitted)");
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();
    verify->add_option("--n", gap_prospects, "Prospects for the gaps suite")->capture_default_str();
    verify->add_option("--dims", verify_dims, "Space A,B for quantum-identity")->capture_default_str();
    add_output_flags(verify, out);

    std::string sim_dims = "2,2";
    int sweep_steps = 10;
    std::uint64_t sim_seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Sweep decoherence damping on a random strategic state");
    simulate->add_option("--dims", sim_dims, "Space A,B (A*B <= 64)")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
    simulate->add_option("--sweep-steps", sweep_steps, "Intervals on [0, 1]")->capture_default_str()->check(CLI::PositiveNumber);
    add_output_flags(simulate, out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*predict) {
            const auto text = qdt::read_text_file(experiment_path);
            const auto experiment = qdt::parse_experiment(text);
            const auto mode = decoy_mode == "include" ? qdt::DecoyMode::include : qdt::DecoyMode::exclude;
            const auto outcome = qdt::predict_experiment(experiment, mode);
            auto ctx = context_for("predict", out);
            ctx.input_digest = qdt::input_digest(text);
            emit(qdt::render_prediction(outcome, experiment, format_of(out), ctx), out);
            return kExitOk;
        }
        if (*attraction) {
            emit(qdt::render_attraction_set(qdt::quantized_attraction_set(n_prospects), format_of(out),
                                            context_for("attraction-set", out)),
                 out);
            return kExitOk;
        }
        if (*verify) {
            qdt::VerifyOptions options;
            options.samples = samples;
            options.seed = seed;
            options.n_prospects = gap_prospects;
            const auto [a, b] = parse_dims(verify_dims);
            options.dims = {a, b};
            const auto result = qdt::run_verify(*qdt::parse_verify_suite(suite), options);
            emit(qdt::render_verify(result, format_of(out), context_for("verify", out)), out);
            return result.passed ? kExitOk : kExitVerifyFailed;
        }
        if (*simulate) {
            qdt::SimulateOptions options;
            const auto [a, b] = parse_dims(sim_dims);
            options.dims = {a, b};
            options.seed = sim_seed;
            options.sweep_steps = sweep_steps;
            emit(qdt::render_simulation(qdt::simulate_damping_sweep(options), format_of(out), context_for("simulate", out)),
                 out);
            return kExitOk;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitError;
    } catch (const qdt::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const qdt::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
