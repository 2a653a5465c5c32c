#pragma once

// Schedule-spec documents: one JSON object per file.
//
//   {"k_rule": "paper" | "desk" | ["10", "100", ...],
//    "role": "F" | "G" | "custom",
//    "runs": [{"from": "1", "to": "40", "generator": "G3"}, ...]}
//
// Integers are carried as decimal strings and written back verbatim. A run
// with "to": "inf" is unbounded and must be last.

#include "boxdim/schedule.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace boxdim {

struct RunSpec {
    std::string from;
    std::string to;
    std::string generator;

    bool operator==(const RunSpec&) const = default;
};

struct ScheduleSpec {
    /// "paper", "desk", or the explicit thresholds as decimal strings.
    std::variant<std::string, std::vector<std::string>> k_rule = std::string("paper");
    std::string role = "F";
    std::vector<RunSpec> runs;

    bool operator==(const ScheduleSpec&) const = default;
};

/// Throws std::invalid_argument on malformed documents.
ScheduleSpec parse_schedule_spec(const std::string& text);
std::string serialize_schedule_spec(const ScheduleSpec& spec);

KSequence build_k_sequence(const ScheduleSpec& spec);
GeneratorSchedule build_schedule(const ScheduleSpec& spec);

/// F, G (decimal tower), F-desk, G-desk (binary tower), pure-G3/G5/G7.
std::optional<GeneratorSchedule> builtin_schedule(std::string_view name);

/// A built-in name, or a path to a schedule-spec file.
GeneratorSchedule resolve_schedule(const std::string& name_or_path);

}  // namespace boxdim
