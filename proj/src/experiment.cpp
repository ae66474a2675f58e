#include "qdt/experiment.hpp"

#include "qdt/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace qdt {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

const json& require(const json& object, const std::string& key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) throw ParseError("missing required field", path + key);
    return *it;
}

std::string as_string(const json& value, const std::string& path) {
    if (!value.is_string()) throw ParseError("expected a string", path);
    return value.get<std::string>();
}

double as_number(const json& value, const std::string& path) {
    if (!value.is_number()) throw ParseError("expected a number", path);
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw ParseError("number is not finite", path);
    return v;
}

std::vector<double> as_numbers(const json& value, const std::string& path) {
    if (!value.is_array()) throw ParseError("expected an array of numbers", path);
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) out.push_back(as_number(value[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

ProspectSpec parse_prospect(const json& value, const std::string& path) {
    if (!value.is_object()) throw ParseError("expected an object", path);
    ProspectSpec spec;
    spec.id = as_string(require(value, "id", path + "."), path + ".id");
    if (spec.id.empty()) throw ParseError("id must not be empty", path + ".id");
    if (value.contains("f")) spec.f = as_number(value["f"], path + ".f");
    if (value.contains("utility")) spec.utility = as_number(value["utility"], path + ".utility");
    if (value.contains("lottery")) {
        const auto& lot = value["lottery"];
        const std::string lpath = path + ".lottery";
        if (!lot.is_object()) throw ParseError("expected an object", lpath);
        Lottery lottery;
        lottery.payoffs = as_numbers(require(lot, "payoffs", lpath + "."), lpath + ".payoffs");
        lottery.probs = as_numbers(require(lot, "probs", lpath + "."), lpath + ".probs");
        spec.lottery = std::move(lottery);
    }
    const int sources = int(spec.f.has_value()) + int(spec.utility.has_value()) + int(spec.lottery.has_value());
    if (sources != 1) throw ParseError("prospect needs exactly one of f, utility or lottery", path);
    return spec;
}

ExperimentConfig parse_config(const json& value, const std::string& path) {
    if (!value.is_object()) throw ParseError("expected an object", path);
    ExperimentConfig config;
    if (value.contains("alpha")) config.factors.alpha = as_number(value["alpha"], path + ".alpha");
    if (value.contains("gamma")) config.factors.gamma = as_number(value["gamma"], path + ".gamma");
    if (value.contains("utility_kind")) {
        const auto kind = as_string(value["utility_kind"], path + ".utility_kind");
        if (kind == "linear") {
            config.utility = UtilityFunction::linear();
        } else if (kind == "power") {
            const double exponent = as_number(require(value, "utility_exponent", path + "."), path + ".utility_exponent");
            try {
                config.utility = UtilityFunction::power(exponent);
            } catch (const DomainError& e) {
                throw ValidationError(path + ".utility_exponent: " + e.what());
            }
        } else {
            throw ParseError("unknown utility kind '" + kind + "' (expected linear or power)", path + ".utility_kind");
        }
    }
    try {
        config.factors.validate();
    } catch (const DomainError& e) {
        throw ValidationError(path + ": " + e.what());
    }
    return config;
}

void validate_experiment(const ExperimentFile& exp) {
    if (exp.prospects.empty()) throw ValidationError("prospects: at least one prospect is required");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < exp.prospects.size(); ++i) {
        const auto& p = exp.prospects[i];
        if (!ids.insert(p.id).second) throw ValidationError("prospects[" + std::to_string(i) + "].id: duplicate id '" + p.id + "'");
        if (p.f.has_value() != exp.uses_factors())
            throw ValidationError("prospects[" + std::to_string(i) + "]: f cannot be mixed with utility or lottery");
    }
    if (exp.uses_factors()) {
        double total = 0.0;
        for (std::size_t i = 0; i < exp.prospects.size(); ++i) {
            const double f = *exp.prospects[i].f;
            if (f < 0.0 || f > 1.0) throw ValidationError("prospects[" + std::to_string(i) + "].f: value outside [0, 1]");
            total += f;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            std::ostringstream msg;
            msg << "prospects[].f: values sum to " << total << ", expected 1";
            throw ValidationError(msg.str());
        }
    }
    std::set<std::string> ranked;
    for (const auto& id : exp.attractiveness_rank) {
        if (!ids.count(id)) throw ValidationError("attractiveness_rank: unknown id '" + id + "'");
        if (!ranked.insert(id).second) throw ValidationError("attractiveness_rank: id '" + id + "' listed twice");
    }
    if (ranked.size() != ids.size()) throw ValidationError("attractiveness_rank: every prospect must be ranked");
    if (!exp.empirical.empty()) {
        std::set<std::string> seen;
        for (const auto& e : exp.empirical) {
            if (!ids.count(e.id)) throw ValidationError("empirical: unknown id '" + e.id + "'");
            if (!seen.insert(e.id).second) throw ValidationError("empirical: id '" + e.id + "' listed twice");
            if (e.frequency < 0.0) throw ValidationError("empirical: negative frequency for '" + e.id + "'");
        }
        if (seen.size() != ids.size()) throw ValidationError("empirical: every prospect needs a frequency");
    }
}

template <typename T, typename Convert>
BasicChoiceSet<T> choice_set_from(const ExperimentFile& exp, const std::vector<double>& factors, Convert convert) {
    BasicChoiceSet<T> choices;
    for (std::size_t i = 0; i < exp.prospects.size(); ++i) {
        choices.prospect_ids.push_back(exp.prospects[i].id);
        choices.utility_factors.push_back(convert(factors[i]));
    }
    choices.attractiveness_rank = exp.attractiveness_rank;
    return choices;
}

template <typename T, typename Convert>
std::vector<T> empirical_in_order(const ExperimentFile& exp, Convert convert) {
    std::unordered_map<std::string, double> by_id;
    for (const auto& e : exp.empirical) by_id[e.id] = e.frequency;
    std::vector<T> out;
    for (const auto& p : exp.prospects) out.push_back(convert(by_id.at(p.id)));
    return out;
}

}  // namespace

ExperimentFile parse_experiment(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed document (" + std::string(e.what()) + ")",
                         "line " + std::to_string(line) + ", column " + std::to_string(column));
    }
    if (!doc.is_object()) throw ParseError("document must be an object", "line 1");

    ExperimentFile exp;
    exp.name = doc.contains("name") ? as_string(doc["name"], "name") : std::string();
    const auto& prospects = require(doc, "prospects", "");
    if (!prospects.is_array()) throw ParseError("expected an array", "prospects");
    for (std::size_t i = 0; i < prospects.size(); ++i)
        exp.prospects.push_back(parse_prospect(prospects[i], "prospects[" + std::to_string(i) + "]"));

    const auto& rank = require(doc, "attractiveness_rank", "");
    if (!rank.is_array()) throw ParseError("expected an array of ids", "attractiveness_rank");
    for (std::size_t i = 0; i < rank.size(); ++i)
        exp.attractiveness_rank.push_back(as_string(rank[i], "attractiveness_rank[" + std::to_string(i) + "]"));

    if (doc.contains("empirical") && !doc["empirical"].is_null()) {
        const auto& emp = doc["empirical"];
        if (!emp.is_array()) throw ParseError("expected an array", "empirical");
        for (std::size_t i = 0; i < emp.size(); ++i) {
            const std::string path = "empirical[" + std::to_string(i) + "]";
            if (!emp[i].is_object()) throw ParseError("expected an object", path);
            exp.empirical.push_back({as_string(require(emp[i], "id", path + "."), path + ".id"),
                                     as_number(require(emp[i], "frequency", path + "."), path + ".frequency")});
        }
    }
    if (doc.contains("config") && !doc["config"].is_null()) exp.config = parse_config(doc["config"], "config");

    validate_experiment(exp);
    return exp;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file", path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ExperimentFile load_experiment(const std::filesystem::path& path) {
    return parse_experiment(read_text_file(path));
}

PredictionOutcome predict_experiment(const ExperimentFile& exp, DecoyMode mode) {
    validate_experiment(exp);
    std::vector<double> factors;
    if (exp.uses_factors()) {
        for (const auto& p : exp.prospects) factors.push_back(*p.f);
    } else {
        std::vector<double> utilities;
        for (const auto& p : exp.prospects)
            utilities.push_back(p.utility ? *p.utility : expected_utility(*p.lottery, exp.config.utility));
        factors = utility_factors(utilities, exp.config.factors);
    }

    PredictionOutcome outcome{
        compose_probabilities(choice_set_from<double>(exp, factors, [](double v) { return v; }), mode), std::nullopt};
    if (!exp.empirical.empty())
        outcome.report = score_against_empirical(outcome.report, empirical_in_order<double>(exp, [](double v) { return v; }));

    if (exp.uses_factors()) {
        auto exact = compose_probabilities(choice_set_from<Rational>(exp, factors, Rational::from_double), mode);
        if (!exp.empirical.empty())
            exact = score_against_empirical(exact, empirical_in_order<Rational>(exp, Rational::from_double));
        outcome.exact = std::move(exact);
    }
    return outcome;
}

}  // namespace qdt
