#include "qdt/report_io.hpp"

#include "qdt/errors.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace qdt {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

/// Shortest decimal that round-trips.
std::string exact_decimal(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

/// 12 significant digits; hides last-bit noise in tables.
std::string short_decimal(double v) {
    if (v == 0.0) return "0";
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.12g", v);
    return buf.data();
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string_view mode_name(DecoyMode mode) {
    return mode == DecoyMode::exclude ? "exclude" : "include";
}

void stamp(ordered_json& doc, const RunContext& ctx) {
    doc["command"] = ctx.command;
    if (ctx.timestamp) doc["timestamp"] = *ctx.timestamp;
    if (ctx.input_digest) doc["input_digest"] = *ctx.input_digest;
}

std::string dump(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name) {
    if (name == "table") return OutputFormat::table;
    if (name == "record") return OutputFormat::record;
    if (name == "csv") return OutputFormat::csv;
    return std::nullopt;
}

std::string input_digest(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

std::string render_prediction(const PredictionOutcome& outcome, const ExperimentFile& experiment, OutputFormat format,
                              const RunContext& context) {
    const auto& report = outcome.report;
    const auto* exact = outcome.exact ? &*outcome.exact : nullptr;

    if (format == OutputFormat::csv) {
        std::ostringstream out;
        out << "id,f,q,p,p_exp,abs_error\n";
        for (const auto& o : report.prospects) {
            out << o.id << ',' << exact_decimal(o.f) << ',' << exact_decimal(o.q) << ',' << exact_decimal(o.p) << ','
                << (o.p_exp ? exact_decimal(*o.p_exp) : "") << ',' << (o.abs_error ? exact_decimal(*o.abs_error) : "")
                << '\n';
        }
        return out.str();
    }

    if (format == OutputFormat::record) {
        ordered_json doc;
        stamp(doc, context);
        doc["experiment"] = experiment.name;
        doc["decoy_mode"] = mode_name(report.decoy_mode);
        doc["attraction_levels"] = report.attraction_levels;
        doc["clamping_applied"] = report.clamping_applied;
        doc["prospects"] = ordered_json::array();
        for (std::size_t i = 0; i < report.prospects.size(); ++i) {
            const auto& o = report.prospects[i];
            ordered_json row;
            row["id"] = o.id;
            row["f"] = o.f;
            row["q"] = o.q;
            row["p"] = o.p;
            if (o.p_exp) row["p_exp"] = *o.p_exp;
            if (o.abs_error) row["abs_error"] = *o.abs_error;
            if (exact) {
                const auto& e = exact->prospects[i];
                ordered_json ex;
                ex["f"] = e.f.to_string();
                ex["q"] = e.q.to_string();
                ex["p"] = e.p.to_string();
                if (e.abs_error) ex["abs_error"] = e.abs_error->to_string();
                row["exact"] = ex;
            }
            doc["prospects"].push_back(row);
        }
        if (report.max_abs_error) doc["max_abs_error"] = *report.max_abs_error;
        if (report.mean_abs_error) doc["mean_abs_error"] = *report.mean_abs_error;
        if (exact && exact->max_abs_error) {
            doc["exact_max_abs_error"] = exact->max_abs_error->to_string();
            doc["exact_mean_abs_error"] = exact->mean_abs_error->to_string();
        }
        return dump(doc);
    }

    std::ostringstream out;
    out << "experiment: " << (experiment.name.empty() ? "(unnamed)" : experiment.name) << "\n";
    out << "attraction levels: " << report.attraction_levels << "  decoy mode: " << mode_name(report.decoy_mode) << "\n\n";
    const bool scored = report.max_abs_error.has_value();
    out << pad("id", 12) << pad("f", 16) << pad("q", 16) << pad("p", 16);
    if (exact) out << pad("p (exact)", 14);
    if (scored) out << pad("p_exp", 16) << "abs_error";
    out << "\n";
    for (std::size_t i = 0; i < report.prospects.size(); ++i) {
        const auto& o = report.prospects[i];
        out << pad(o.id, 12) << pad(short_decimal(o.f), 16) << pad(short_decimal(o.q), 16) << pad(short_decimal(o.p), 16);
        if (exact) out << pad(exact->prospects[i].p.to_string(), 14);
        if (scored) out << pad(short_decimal(*o.p_exp), 16) << short_decimal(*o.abs_error);
        out << "\n";
    }
    out << "\n";
    if (scored) {
        out << "max abs error: " << short_decimal(*report.max_abs_error);
        if (exact && exact->max_abs_error) out << " (" << exact->max_abs_error->to_string() << ")";
        out << "\nmean abs error: " << short_decimal(*report.mean_abs_error) << "\n";
    }
    out << "clamping applied: " << (report.clamping_applied ? "yes" : "no") << "\n";
    return out.str();
}

std::string render_attraction_set(const AttractionSet& set, OutputFormat format, const RunContext& context) {
    if (format == OutputFormat::csv) {
        std::ostringstream out;
        out << "rank,exact,value\n";
        for (std::size_t i = 0; i < set.values.size(); ++i)
            out << i + 1 << ',' << set.values[i].to_string() << ',' << exact_decimal(set.values[i].to_double()) << '\n';
        return out.str();
    }
    if (format == OutputFormat::record) {
        ordered_json doc;
        stamp(doc, context);
        doc["n_prospects"] = set.n_prospects;
        doc["gap"] = set.gap.to_string();
        doc["q_max"] = set.q_max.to_string();
        doc["values"] = ordered_json::array();
        for (std::size_t i = 0; i < set.values.size(); ++i)
            doc["values"].push_back(
                ordered_json{{"rank", i + 1}, {"exact", set.values[i].to_string()}, {"value", set.values[i].to_double()}});
        return dump(doc);
    }
    std::ostringstream out;
    out << "N_L = " << set.n_prospects << "\n";
    out << "gap   = " << pad(set.gap.to_string(), 10) << short_decimal(set.gap.to_double()) << "\n";
    out << "q_max = " << pad(set.q_max.to_string(), 10) << short_decimal(set.q_max.to_double()) << "\n\n";
    out << pad("rank", 6) << pad("q (exact)", 12) << "q\n";
    for (std::size_t i = 0; i < set.values.size(); ++i)
        out << pad(std::to_string(i + 1), 6) << pad(set.values[i].to_string(), 12) << short_decimal(set.values[i].to_double())
            << "\n";
    return out.str();
}

std::string render_verify(const VerifyResult& result, OutputFormat format, const RunContext& context) {
    if (format == OutputFormat::csv) {
        std::ostringstream out;
        out << "statistic,value\n";
        for (const auto& [name, value] : result.statistics) out << name << ',' << exact_decimal(value) << '\n';
        out << "passed," << (result.passed ? 1 : 0) << '\n';
        return out.str();
    }
    if (format == OutputFormat::record) {
        ordered_json doc;
        stamp(doc, context);
        doc["suite"] = suite_name(result.suite);
        doc["samples"] = result.samples;
        doc["seed"] = result.seed;
        ordered_json stats = ordered_json::object();
        for (const auto& [name, value] : result.statistics) stats[name] = value;
        doc["statistics"] = stats;
        doc["criterion"] = result.criterion;
        doc["passed"] = result.passed;
        return dump(doc);
    }
    std::ostringstream out;
    out << "suite: " << suite_name(result.suite) << "  samples: " << result.samples << "  seed: " << result.seed << "\n";
    for (const auto& [name, value] : result.statistics) out << "  " << pad(name, 28) << short_decimal(value) << "\n";
    out << "criterion: " << result.criterion << "\n";
    out << "result: " << (result.passed ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_simulation(const SimulationResult& result, OutputFormat format, const RunContext& context) {
    const auto& opt = result.options;
    if (format == OutputFormat::csv) {
        std::ostringstream out;
        out << "damping,prospect,p,f,q,raw_p,raw_f,raw_q\n";
        for (const auto& row : result.rows)
            for (std::size_t n = 0; n < row.normalized.size(); ++n) {
                const auto& t = row.normalized[n];
                const auto& r = row.raw[n];
                out << exact_decimal(row.damping) << ',' << n << ',' << exact_decimal(t.p) << ',' << exact_decimal(t.f) << ','
                    << exact_decimal(t.q) << ',' << exact_decimal(r.p) << ',' << exact_decimal(r.f) << ','
                    << exact_decimal(r.q) << '\n';
            }
        return out.str();
    }
    if (format == OutputFormat::record) {
        ordered_json doc;
        stamp(doc, context);
        doc["dims"] = {opt.dims.conclusive, opt.dims.inconclusive};
        doc["seed"] = opt.seed;
        doc["sweep_steps"] = opt.sweep_steps;
        doc["rows"] = ordered_json::array();
        for (const auto& row : result.rows) {
            ordered_json r;
            r["damping"] = row.damping;
            r["prospects"] = ordered_json::array();
            for (std::size_t n = 0; n < row.normalized.size(); ++n)
                r["prospects"].push_back(ordered_json{{"p", row.normalized[n].p},
                                                      {"f", row.normalized[n].f},
                                                      {"q", row.normalized[n].q},
                                                      {"raw_q", row.raw[n].q}});
            doc["rows"].push_back(r);
        }
        return dump(doc);
    }
    std::ostringstream out;
    out << "dims: " << opt.dims.conclusive << "x" << opt.dims.inconclusive << "  seed: " << opt.seed << "\n\n";
    out << pad("damping", 10);
    for (std::size_t n = 0; n < static_cast<std::size_t>(opt.dims.conclusive); ++n) {
        const std::string s = std::to_string(n);
        out << pad("p" + s, 12) << pad("f" + s, 12) << pad("q" + s, 12);
    }
    out << "\n";
    for (const auto& row : result.rows) {
        out << pad(short_decimal(row.damping), 10);
        for (const auto& t : row.normalized) {
            std::array<char, 32> buf{};
            for (const double v : {t.p, t.f, t.q}) {
                std::snprintf(buf.data(), buf.size(), "%.6f", std::abs(v) < 5e-13 ? 0.0 : v);
                out << pad(buf.data(), 12);
            }
        }
        out << "\n";
    }
    return out.str();
}

PredictionReport parse_prediction_record(std::string_view record) {
    json doc;
    try {
        doc = json::parse(record.begin(), record.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), "record");
    }
    try {
        PredictionReport report;
        report.attraction_levels = doc.at("attraction_levels").get<int>();
        report.clamping_applied = doc.at("clamping_applied").get<bool>();
        report.decoy_mode = doc.at("decoy_mode").get<std::string>() == "include" ? DecoyMode::include : DecoyMode::exclude;
        for (const auto& row : doc.at("prospects")) {
            ProspectOutcome<double> o;
            o.id = row.at("id").get<std::string>();
            o.f = row.at("f").get<double>();
            o.q = row.at("q").get<double>();
            o.p = row.at("p").get<double>();
            if (row.contains("p_exp")) o.p_exp = row["p_exp"].get<double>();
            if (row.contains("abs_error")) o.abs_error = row["abs_error"].get<double>();
            report.prospects.push_back(std::move(o));
        }
        if (doc.contains("max_abs_error")) report.max_abs_error = doc["max_abs_error"].get<double>();
        if (doc.contains("mean_abs_error")) report.mean_abs_error = doc["mean_abs_error"].get<double>();
        report.validate();
        return report;
    } catch (const json::exception& e) {
        throw ParseError(e.what(), "record");
    }
}

}  // namespace qdt
