#pragma once

// Tower sequences, generator schedules and generator-counting functions.
//
// Stage indices are arbitrary-precision integers everywhere: under the
// decimal tower rule the thirteenth threshold already has thousands of digits,
// so nothing here iterates stage by stage. All queries walk the run structure
// of the schedule, which has one run per tower threshold.

#include "boxdim/numeric.hpp"

#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boxdim {

/// Middle-removal generator keeping two end pieces of relative length 1/p.
enum class GeneratorKind { G3, G5, G7 };

/// 3, 5 or 7.
unsigned long generator_base(GeneratorKind g) noexcept;
/// Relative length of each retained end piece: 1/3, 1/5, 1/7.
ExactRational kept_fraction(GeneratorKind g);
/// Relative length of the removed middle: 1/3, 3/5, 5/7.
ExactRational removed_fraction(GeneratorKind g);
std::string_view generator_name(GeneratorKind g) noexcept;
GeneratorKind parse_generator(std::string_view name);

/// Thresholds K_0 < K_1 < ... at which the F and G schedules switch
/// generator. Values are materialized lazily and memoized; the memo is
/// internally synchronized so a KSequence can be shared across threads.
class KSequence {
public:
    enum class Rule { Decimal, Binary, Explicit };

    /// K_j = 10^(2^j).
    static KSequence decimal_tower();
    /// K_j = 2^(2^j), small enough for stage enumeration.
    static KSequence binary_tower();
    /// Arbitrary strictly increasing positive list. Throws on violation.
    static KSequence explicit_list(std::vector<BigInt> values);

    Rule rule() const noexcept { return rule_; }
    /// Number of available thresholds, or nullopt for an unbounded rule.
    std::optional<std::size_t> size() const;

    /// K_j. Throws std::out_of_range past an explicit list or past the
    /// largest tower index that can be materialized.
    const BigInt& value(std::size_t j) const;

    /// Smallest i with j <= K_i, i.e. the index whose run (K_{i-1}, K_i]
    /// contains j (K_{-1} taken as 0).
    std::size_t bracket_index(const BigInt& j) const;

    /// Largest tower index this rule will materialize.
    static constexpr std::size_t kMaxTowerIndex = 26;

private:
    struct Memo {
        std::mutex mutex;
        std::deque<BigInt> values;
    };

    KSequence(Rule rule, std::vector<BigInt> values);

    Rule rule_;
    std::vector<BigInt> explicit_values_;
    std::shared_ptr<Memo> memo_;
};

/// k_value(seq, j).
inline const BigInt& k_value(const KSequence& seq, std::size_t j) { return seq.value(j); }

/// Pass/fail of one growth condition at one index.
struct ConditionCheck {
    std::string condition;
    std::size_t j = 0;
    bool pass = false;
    std::string detail;
};

struct KValidationReport {
    std::size_t horizon = 0;
    std::vector<ConditionCheck> entries;
    /// sum_{i<horizon} K_i / K_horizon, exact and as decimal.
    ExactRational final_tail_ratio;
    std::string final_tail_ratio_decimal;

    bool all_pass() const;
    /// True when every entry for `condition` passes.
    bool passes(std::string_view condition) const;
};

/// Condition names used in KValidationReport entries.
namespace conditions {
inline constexpr std::string_view kSumBelowNext = "sum_below_next";
inline constexpr std::string_view kTelescopedAbovePrevious = "telescoped_above_previous";
inline constexpr std::string_view kLogRatioGap = "log7_over_log3_gap";
inline constexpr std::string_view kTailRatioDecreasing = "tail_ratio_decreasing";
}  // namespace conditions

/// Checks the growth conditions for j = 0..horizon. Failures are entries,
/// never exceptions (except horizon < 2, which is a usage error).
KValidationReport validate_k_sequence(const KSequence& seq, std::size_t horizon,
                                      const PrecisionPolicy& policy = {});

/// Inclusive range of stages [first, last] using one generator. `last`
/// absent means the run never ends.
struct Run {
    BigInt first;
    std::optional<BigInt> last;
    GeneratorKind generator = GeneratorKind::G5;

    BigInt length() const { return *last - first + 1; }
    bool contains(const BigInt& j) const { return j >= first && (!last || j <= *last); }
};

enum class ScheduleRole { F, G, Custom };
std::string_view role_name(ScheduleRole role) noexcept;

class GeneratorSchedule {
public:
    /// G3 on (K_{6n}, K_{6n+1}], G7 on (K_{6n+1}, K_{6n+2}], G5 otherwise.
    static GeneratorSchedule f_schedule(KSequence k);
    /// G3 on (K_{6m+3}, K_{6m+4}], G7 on (K_{6m+4}, K_{6m+5}], G5 otherwise.
    static GeneratorSchedule g_schedule(KSequence k);
    /// Explicit runs; they must start at stage 1 and be contiguous.
    static GeneratorSchedule custom(std::vector<Run> runs);
    /// Single generator at every stage.
    static GeneratorSchedule pure(GeneratorKind g);

    ScheduleRole role() const noexcept { return role_; }
    /// The tower sequence for F/G schedules; nullptr for custom ones.
    const KSequence* k() const noexcept { return k_ ? &*k_ : nullptr; }
    const std::vector<Run>& custom_runs() const noexcept { return runs_; }

    /// Generator used on the run (K_{i-1}, K_i]. F/G schedules only.
    GeneratorKind generator_for_index(std::size_t i) const;

    /// Walks runs in stage order.
    class RunCursor {
    public:
        explicit RunCursor(const GeneratorSchedule& schedule) : schedule_(&schedule) {}
        /// The next run, or nullopt once an explicit description is exhausted.
        std::optional<Run> next();
        /// K-index of the run last returned (F/G only).
        std::size_t index() const noexcept { return index_ - 1; }

    private:
        const GeneratorSchedule* schedule_;
        std::size_t index_ = 0;
    };

    RunCursor runs() const { return RunCursor(*this); }

private:
    GeneratorSchedule(ScheduleRole role, std::optional<KSequence> k, std::vector<Run> runs)
        : role_(role), k_(std::move(k)), runs_(std::move(runs)) {}

    ScheduleRole role_;
    std::optional<KSequence> k_;
    std::vector<Run> runs_;
};

/// Generator applications by stage j. f5 is derived.
struct StageCounts {
    BigInt j;
    BigInt f3;
    BigInt f7;

    BigInt f5() const { return j - f3 - f7; }
    bool operator==(const StageCounts& other) const = default;
};

/// Generator applied at stage j >= 1.
GeneratorKind generator_at(const GeneratorSchedule& s, const BigInt& j);

/// Exact generator counts through stage j by clipped run summation.
StageCounts counts_up_to(const GeneratorSchedule& s, const BigInt& j);

}  // namespace boxdim
