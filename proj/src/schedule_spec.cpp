#include "boxdim/schedule_spec.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace boxdim {

using nlohmann::json;

namespace {

std::string require_string(const json& node, const char* what) {
    if (!node.is_string()) {
        throw std::invalid_argument(std::string("schedule spec: ") + what + " must be a string");
    }
    return node.get<std::string>();
}

}  // namespace

ScheduleSpec parse_schedule_spec(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("schedule spec: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("schedule spec: top level must be an object");
    }

    ScheduleSpec spec;
    if (auto it = doc.find("k_rule"); it != doc.end()) {
        if (it->is_array()) {
            std::vector<std::string> values;
            for (const auto& v : *it) {
                values.push_back(require_string(v, "k_rule entries"));
                parse_bigint(values.back());
            }
            spec.k_rule = std::move(values);
        } else {
            std::string rule = require_string(*it, "k_rule");
            if (rule != "paper" && rule != "desk") {
                throw std::invalid_argument("schedule spec: unknown k_rule '" + rule + "'");
            }
            spec.k_rule = rule;
        }
    }
    if (auto it = doc.find("role"); it != doc.end()) {
        spec.role = require_string(*it, "role");
    }
    if (spec.role != "F" && spec.role != "G" && spec.role != "custom") {
        throw std::invalid_argument("schedule spec: unknown role '" + spec.role + "'");
    }
    if (auto it = doc.find("runs"); it != doc.end()) {
        if (!it->is_array()) {
            throw std::invalid_argument("schedule spec: runs must be an array");
        }
        for (const auto& r : *it) {
            if (!r.is_object()) {
                throw std::invalid_argument("schedule spec: each run must be an object");
            }
            RunSpec run{require_string(r.value("from", json()), "run.from"),
                        require_string(r.value("to", json()), "run.to"),
                        require_string(r.value("generator", json()), "run.generator")};
            parse_bigint(run.from);
            if (run.to != "inf") {
                parse_bigint(run.to);
            }
            parse_generator(run.generator);
            spec.runs.push_back(std::move(run));
        }
    }
    if (spec.role == "custom" && spec.runs.empty()) {
        throw std::invalid_argument("schedule spec: custom role requires runs");
    }
    return spec;
}

std::string serialize_schedule_spec(const ScheduleSpec& spec) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    if (const auto* rule = std::get_if<std::string>(&spec.k_rule)) {
        doc["k_rule"] = *rule;
    } else {
        doc["k_rule"] = std::get<std::vector<std::string>>(spec.k_rule);
    }
    doc["role"] = spec.role;
    if (!spec.runs.empty()) {
        nlohmann::ordered_json runs = nlohmann::ordered_json::array();
        for (const auto& r : spec.runs) {
            runs.push_back({{"from", r.from}, {"to", r.to}, {"generator", r.generator}});
        }
        doc["runs"] = std::move(runs);
    }
    return doc.dump(2) + "\n";
}

KSequence build_k_sequence(const ScheduleSpec& spec) {
    if (const auto* rule = std::get_if<std::string>(&spec.k_rule)) {
        return *rule == "desk" ? KSequence::binary_tower() : KSequence::decimal_tower();
    }
    std::vector<BigInt> values;
    for (const auto& v : std::get<std::vector<std::string>>(spec.k_rule)) {
        values.push_back(parse_bigint(v));
    }
    return KSequence::explicit_list(std::move(values));
}

GeneratorSchedule build_schedule(const ScheduleSpec& spec) {
    if (spec.role == "F") {
        return GeneratorSchedule::f_schedule(build_k_sequence(spec));
    }
    if (spec.role == "G") {
        return GeneratorSchedule::g_schedule(build_k_sequence(spec));
    }
    std::vector<Run> runs;
    for (const auto& r : spec.runs) {
        Run run;
        run.first = parse_bigint(r.from);
        if (r.to != "inf") {
            run.last = parse_bigint(r.to);
        }
        run.generator = parse_generator(r.generator);
        runs.push_back(std::move(run));
    }
    return GeneratorSchedule::custom(std::move(runs));
}

std::optional<GeneratorSchedule> builtin_schedule(std::string_view name) {
    if (name == "F") return GeneratorSchedule::f_schedule(KSequence::decimal_tower());
    if (name == "G") return GeneratorSchedule::g_schedule(KSequence::decimal_tower());
    if (name == "F-desk") return GeneratorSchedule::f_schedule(KSequence::binary_tower());
    if (name == "G-desk") return GeneratorSchedule::g_schedule(KSequence::binary_tower());
    if (name == "pure-G3") return GeneratorSchedule::pure(GeneratorKind::G3);
    if (name == "pure-G5") return GeneratorSchedule::pure(GeneratorKind::G5);
    if (name == "pure-G7") return GeneratorSchedule::pure(GeneratorKind::G7);
    return std::nullopt;
}

GeneratorSchedule resolve_schedule(const std::string& name_or_path) {
    if (auto builtin = builtin_schedule(name_or_path)) {
        return *std::move(builtin);
    }
    std::ifstream in(name_or_path);
    if (!in) {
        throw std::invalid_argument("'" + name_or_path + "' is neither a built-in schedule nor a readable file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return build_schedule(parse_schedule_spec(buffer.str()));
}

}  // namespace boxdim
