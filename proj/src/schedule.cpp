#include "boxdim/schedule.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace boxdim {

unsigned long generator_base(GeneratorKind g) noexcept {
    switch (g) {
        case GeneratorKind::G3: return 3;
        case GeneratorKind::G5: return 5;
        case GeneratorKind::G7: return 7;
    }
    return 0;
}

ExactRational kept_fraction(GeneratorKind g) { return ExactRational(1, generator_base(g)); }

ExactRational removed_fraction(GeneratorKind g) {
    const unsigned long p = generator_base(g);
    return ExactRational(p - 2, p);
}

std::string_view generator_name(GeneratorKind g) noexcept {
    switch (g) {
        case GeneratorKind::G3: return "G3";
        case GeneratorKind::G5: return "G5";
        case GeneratorKind::G7: return "G7";
    }
    return "?";
}

GeneratorKind parse_generator(std::string_view name) {
    if (name == "G3") return GeneratorKind::G3;
    if (name == "G5") return GeneratorKind::G5;
    if (name == "G7") return GeneratorKind::G7;
    throw std::invalid_argument("unknown generator '" + std::string(name) + "' (expected G3, G5 or G7)");
}

std::string_view role_name(ScheduleRole role) noexcept {
    switch (role) {
        case ScheduleRole::F: return "F";
        case ScheduleRole::G: return "G";
        case ScheduleRole::Custom: return "custom";
    }
    return "?";
}

// --------------------------------------------------------------- KSequence

KSequence::KSequence(Rule rule, std::vector<BigInt> values)
    : rule_(rule), explicit_values_(std::move(values)), memo_(std::make_shared<Memo>()) {}

KSequence KSequence::decimal_tower() { return KSequence(Rule::Decimal, {}); }
KSequence KSequence::binary_tower() { return KSequence(Rule::Binary, {}); }

KSequence KSequence::explicit_list(std::vector<BigInt> values) {
    if (values.empty()) {
        throw std::invalid_argument("explicit K list is empty");
    }
    if (values.front() < 1) {
        throw std::invalid_argument("explicit K list must start with a positive value");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] <= values[i - 1]) {
            throw std::invalid_argument("explicit K list is not strictly increasing at index " + std::to_string(i));
        }
    }
    return KSequence(Rule::Explicit, std::move(values));
}

std::optional<std::size_t> KSequence::size() const {
    if (rule_ == Rule::Explicit) {
        return explicit_values_.size();
    }
    return std::nullopt;
}

const BigInt& KSequence::value(std::size_t j) const {
    if (rule_ == Rule::Explicit) {
        if (j >= explicit_values_.size()) {
            throw std::out_of_range("K index " + std::to_string(j) + " is beyond the explicit list of length " +
                                    std::to_string(explicit_values_.size()));
        }
        return explicit_values_[j];
    }
    if (j > kMaxTowerIndex) {
        throw std::out_of_range("K index " + std::to_string(j) + " exceeds the materializable tower index " +
                                std::to_string(kMaxTowerIndex));
    }
    std::lock_guard lock(memo_->mutex);
    auto& values = memo_->values;
    const unsigned long base = rule_ == Rule::Decimal ? 10 : 2;
    while (values.size() <= j) {
        values.push_back(pow_ui(base, 1UL << values.size()));
    }
    return values[j];
}

std::size_t KSequence::bracket_index(const BigInt& j) const {
    std::size_t i = 0;
    while (value(i) < j) {
        ++i;
    }
    return i;
}

// -------------------------------------------------------------- validation

bool KValidationReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const ConditionCheck& c) { return c.pass; });
}

bool KValidationReport::passes(std::string_view condition) const {
    return std::all_of(entries.begin(), entries.end(),
                       [&](const ConditionCheck& c) { return c.condition != condition || c.pass; });
}

namespace {

// Below this size 7^a and 3^b are built outright.
constexpr unsigned long kExactPowerLimit = 200000;

// Decides a*log 7 < b*log 3.
bool log_gap_holds(const BigInt& a, const BigInt& b, const PrecisionPolicy& policy, std::string& how) {
    if (b <= kExactPowerLimit) {
        how = "exact integer powers";
        return pow_ui(7, a.get_ui()) < pow_ui(3, b.get_ui());
    }
    // a*log7 and b*log3 are never equal for positive integers (7^a != 3^b).
    for (std::size_t bits = policy.start_bits + bit_length(b); bits <= policy.max_bits + bit_length(b); bits *= 2) {
        const auto& logs = log_constants(static_cast<mpfr_prec_t>(bits));
        const int order = certain_order(logs.log7 * a, logs.log3 * b);
        if (order != 0) {
            how = "certified logarithms at " + std::to_string(bits) + " bits";
            return order < 0;
        }
    }
    throw IndeterminateComparison("log gap undecided for K values of " + std::to_string(bit_length(b)) + " bits",
                                  policy.max_bits * 2);
}

std::string decimal_of(const ExactRational& q) { return Enclosure::of(q, 128).to_string(20); }

}  // namespace

KValidationReport validate_k_sequence(const KSequence& seq, std::size_t horizon, const PrecisionPolicy& policy) {
    if (horizon < 2) {
        throw std::invalid_argument("validation horizon must be at least 2");
    }
    KValidationReport report;
    report.horizon = horizon;

    auto available = [&](std::size_t i) { return !seq.size() || i < *seq.size(); };
    auto unavailable = [&](std::string_view cond, std::size_t j, std::size_t missing) {
        report.entries.push_back({std::string(cond), j, false,
                                  "K_" + std::to_string(missing) + " unavailable"});
    };

    BigInt prefix_sum = 0;  // sum_{i<j} K_i
    std::optional<ExactRational> previous_ratio;
    for (std::size_t j = 0; j <= horizon; ++j) {
        if (!available(j)) {
            for (auto cond : {conditions::kSumBelowNext, conditions::kTelescopedAbovePrevious,
                              conditions::kLogRatioGap, conditions::kTailRatioDecreasing}) {
                unavailable(cond, j, j);
            }
            continue;
        }
        const BigInt& kj = seq.value(j);

        if (available(j + 1)) {
            const BigInt& next = seq.value(j + 1);
            const BigInt total = prefix_sum + kj;
            report.entries.push_back({std::string(conditions::kSumBelowNext), j, total < next,
                                      "sum=" + to_decimal(total).substr(0, 40) + (total < next ? " < " : " >= ") +
                                          "K_" + std::to_string(j + 1)});
            std::string how;
            const bool gap = log_gap_holds(kj, next, policy, how);
            report.entries.push_back({std::string(conditions::kLogRatioGap), j, gap, how});
        } else {
            unavailable(conditions::kSumBelowNext, j, j + 1);
            unavailable(conditions::kLogRatioGap, j, j + 1);
        }

        // Literal telescoping sum with K_{-1} = 0; it collapses to K_j > K_{j-1}.
        {
            BigInt telescoped = 0;
            BigInt before = 0;
            for (std::size_t i = 0; i <= j; ++i) {
                telescoped += seq.value(i) - before;
                before = seq.value(i);
            }
            const BigInt previous = j == 0 ? BigInt(0) : seq.value(j - 1);
            report.entries.push_back({std::string(conditions::kTelescopedAbovePrevious), j, telescoped > previous,
                                      "literal reading with K_{-1} = 0; implied by monotonicity"});
        }

        if (j >= 1) {
            ExactRational ratio(prefix_sum, kj);
            ratio.canonicalize();
            const bool decreasing = !previous_ratio || ratio < *previous_ratio;
            report.entries.push_back({std::string(conditions::kTailRatioDecreasing), j, decreasing,
                                      "ratio=" + decimal_of(ratio)});
            previous_ratio = ratio;
            report.final_tail_ratio = ratio;
        }
        prefix_sum += kj;
    }
    report.final_tail_ratio_decimal = decimal_of(report.final_tail_ratio);
    return report;
}

// -------------------------------------------------------- GeneratorSchedule

GeneratorSchedule GeneratorSchedule::f_schedule(KSequence k) {
    return GeneratorSchedule(ScheduleRole::F, std::move(k), {});
}

GeneratorSchedule GeneratorSchedule::g_schedule(KSequence k) {
    return GeneratorSchedule(ScheduleRole::G, std::move(k), {});
}

GeneratorSchedule GeneratorSchedule::custom(std::vector<Run> runs) {
    if (runs.empty()) {
        throw std::invalid_argument("custom schedule has no runs");
    }
    if (runs.front().first != 1) {
        throw std::invalid_argument("custom schedule must start at stage 1");
    }
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const Run& r = runs[i];
        if (r.last && *r.last < r.first) {
            throw std::invalid_argument("custom run " + std::to_string(i) + " is empty");
        }
        if (i + 1 < runs.size()) {
            if (!r.last) {
                throw std::invalid_argument("only the final custom run may be unbounded");
            }
            if (runs[i + 1].first != *r.last + 1) {
                throw std::invalid_argument("custom runs " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                            " are not contiguous");
            }
        }
    }
    return GeneratorSchedule(ScheduleRole::Custom, std::nullopt, std::move(runs));
}

GeneratorSchedule GeneratorSchedule::pure(GeneratorKind g) {
    return custom({Run{BigInt(1), std::nullopt, g}});
}

GeneratorKind GeneratorSchedule::generator_for_index(std::size_t i) const {
    const std::size_t phase = i % 6;
    switch (role_) {
        case ScheduleRole::F:
            if (phase == 1) return GeneratorKind::G3;
            if (phase == 2) return GeneratorKind::G7;
            return GeneratorKind::G5;
        case ScheduleRole::G:
            if (phase == 4) return GeneratorKind::G3;
            if (phase == 5) return GeneratorKind::G7;
            return GeneratorKind::G5;
        case ScheduleRole::Custom:
            break;
    }
    throw std::logic_error("custom schedules have no K-indexed runs");
}

std::optional<Run> GeneratorSchedule::RunCursor::next() {
    const GeneratorSchedule& s = *schedule_;
    if (s.role_ == ScheduleRole::Custom) {
        if (index_ >= s.runs_.size()) {
            return std::nullopt;
        }
        return s.runs_[index_++];
    }
    const KSequence& k = *s.k_;
    if (k.size() && index_ >= *k.size()) {
        return std::nullopt;
    }
    Run run;
    run.first = index_ == 0 ? BigInt(1) : BigInt(k.value(index_ - 1) + 1);
    run.last = k.value(index_);
    run.generator = s.generator_for_index(index_);
    ++index_;
    return run;
}

// ---------------------------------------------------------------- counting

GeneratorKind generator_at(const GeneratorSchedule& s, const BigInt& j) {
    if (j < 1) {
        throw std::invalid_argument("generator_at requires a stage >= 1");
    }
    if (s.role() != ScheduleRole::Custom) {
        return s.generator_for_index(s.k()->bracket_index(j));
    }
    auto cursor = s.runs();
    while (auto run = cursor.next()) {
        if (run->contains(j)) {
            return run->generator;
        }
    }
    throw std::out_of_range("stage " + to_decimal(j) + " lies beyond the described schedule");
}

StageCounts counts_up_to(const GeneratorSchedule& s, const BigInt& j) {
    if (j < 0) {
        throw std::invalid_argument("counts_up_to requires a stage >= 0");
    }
    StageCounts counts{j, 0, 0};
    if (j == 0) {
        return counts;
    }
    auto cursor = s.runs();
    while (auto run = cursor.next()) {
        const BigInt end = (run->last && *run->last < j) ? *run->last : j;
        const BigInt len = end - run->first + 1;
        if (run->generator == GeneratorKind::G3) {
            counts.f3 += len;
        } else if (run->generator == GeneratorKind::G7) {
            counts.f7 += len;
        }
        if (end == j) {
            return counts;
        }
    }
    throw std::out_of_range("stage " + to_decimal(j) + " lies beyond the described schedule");
}

}  // namespace boxdim
