#pragma once

// Exact stage sets F_j: 2^j closed intervals of one common length.
//
// Every endpoint of stage j is an integer multiple of the stage length
// 1/D_j with D_j = 3^f3 * 5^f5 * 7^f7, and each interval is exactly one
// unit wide in that scale. A stage set therefore stores D_j once and the
// left numerator of each interval; ConstructionInterval values are produced
// on demand.

#include "boxdim/schedule.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace boxdim {

struct ConstructionInterval {
    ExactRational left;
    ExactRational right;

    ExactRational length() const { return right - left; }
    bool operator==(const ConstructionInterval&) const = default;
};

/// Keeps [a, a + L/p] and [b - L/p, b] where L = b - a.
std::pair<ConstructionInterval, ConstructionInterval> apply_generator(const ConstructionInterval& iv,
                                                                      GeneratorKind g);

inline constexpr std::size_t kDefaultEnumerationCap = 22;

class EnumerationCapExceeded : public std::length_error {
public:
    EnumerationCapExceeded(std::size_t requested, std::size_t cap);
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t cap_;
};

class StageSet {
public:
    std::size_t stage() const noexcept { return stage_; }
    const StageCounts& exponents() const noexcept { return exponents_; }
    /// D_j; every interval is [n/D_j, (n+1)/D_j].
    std::uint64_t denominator() const noexcept { return denominator_; }
    std::size_t size() const noexcept { return lefts_.size(); }
    const std::vector<std::uint64_t>& left_numerators() const noexcept { return lefts_; }

    ConstructionInterval interval(std::size_t i) const;
    ExactRational interval_length() const { return ExactRational(1, denominator_); }

private:
    friend StageSet stage_set(const GeneratorSchedule&, std::size_t, std::size_t);

    std::size_t stage_ = 0;
    StageCounts exponents_;
    std::uint64_t denominator_ = 1;
    std::vector<std::uint64_t> lefts_;
};

/// Applies the scheduled generators for stages 1..j to [0, 1].
/// Throws EnumerationCapExceeded when j > cap, and std::overflow_error if
/// the common denominator would not fit in 64 bits.
StageSet stage_set(const GeneratorSchedule& s, std::size_t j, std::size_t cap = kDefaultEnumerationCap);

/// Exponent triple of the common interval length at stage j (closed form).
inline StageCounts stage_length_exponents(const GeneratorSchedule& s, const BigInt& j) {
    return counts_up_to(s, j);
}

/// 3^f3 * 5^f5 * 7^f7 for the given counts; the reciprocal of the length.
BigInt length_denominator(const StageCounts& counts);

}  // namespace boxdim
