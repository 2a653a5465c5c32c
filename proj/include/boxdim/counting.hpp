#pragma once

// Covering and packing counts.
//
// The analytic route maps a scale to its stage j and returns 2^j. The
// oracle route enumerates a stage set and runs left-to-right greedy sweeps,
// which are optimal in one dimension:
//
//   cover lower  minimal delta-cover of the stage endpoints (a subset of F)
//   cover upper  minimal delta-cover of the union of stage intervals (F_d)
//   pack lower   greedy centres among the endpoints, gaps > delta
//   pack upper   greedy centres anywhere in F_d, gaps > delta
//
// Closed balls of diameter delta are disjoint exactly when their centres are
// more than delta apart.

#include "boxdim/geometry.hpp"
#include "boxdim/numeric.hpp"
#include "boxdim/schedule.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace boxdim {

/// delta = 3^-a3 * 5^-a5 * 7^-a7.
struct ExponentTriple {
    BigInt a3 = 0;
    BigInt a5 = 0;
    BigInt a7 = 0;

    static ExponentTriple of(const StageCounts& c) { return {c.f3, c.f5(), c.f7}; }
    bool operator==(const ExponentTriple&) const = default;
};

/// -log of the stage length: f3 log 3 + f5 log 5 + f7 log 7.
Enclosure stage_neg_log(const StageCounts& counts, mpfr_prec_t precision);
Enclosure triple_neg_log(const ExponentTriple& t, mpfr_prec_t precision);

/// A scale delta in (0, inf), described either exactly (canonical triple,
/// rational delta, rational -log delta) or by a fixed enclosure of -log
/// delta. Exact forms can be refined to any precision; the fixed form is
/// only as good as its stored bounds.
class LengthScale {
public:
    enum class Form { Canonical, Delta, NegLog, NegLogBounds };

    static LengthScale canonical(BigInt a3, BigInt a5, BigInt a7);
    static LengthScale canonical(const ExponentTriple& t) { return canonical(t.a3, t.a5, t.a7); }
    static LengthScale delta(ExactRational value);
    static LengthScale neg_log(ExactRational x);
    /// -log delta known only to lie in [lo, hi].
    static LengthScale neg_log_bounds(ExactRational lo, ExactRational hi);

    Form form() const noexcept { return form_; }
    bool refinable() const noexcept { return form_ != Form::NegLogBounds; }

    /// Enclosure of -log delta at the requested precision.
    Enclosure neg_log_enclosure(mpfr_prec_t precision) const;

    /// delta as an exact rational when it is one (and small enough to build).
    std::optional<ExactRational> exact_delta() const;

    /// Exact equality with the canonical scale `t` when decidable.
    std::optional<bool> equals(const ExponentTriple& t) const;

    /// Bits of magnitude carried by the description, used to seed precision.
    std::size_t magnitude_bits() const;

    std::string describe() const;

    const ExponentTriple& triple() const { return triple_; }
    const ExactRational& rational() const { return value_; }

private:
    Form form_ = Form::Delta;
    ExponentTriple triple_;
    ExactRational value_;
    ExactRational upper_;
};

/// Certified sign of (-log delta) - (-log stage length). Refines precision
/// per `policy`; throws IndeterminateComparison when it cannot decide.
int compare_to_stage(const LengthScale& scale, const StageCounts& boundary, const PrecisionPolicy& policy);

struct StageLookup {
    BigInt j;
    StageCounts counts;
};

/// The unique j with length(j) <= delta < length(j-1); delta >= 1 gives 0.
StageLookup locate_stage(const GeneratorSchedule& s, const LengthScale& scale, const PrecisionPolicy& policy = {});
inline BigInt stage_lookup(const GeneratorSchedule& s, const LengthScale& scale, const PrecisionPolicy& policy = {}) {
    return locate_stage(s, scale, policy).j;
}

/// Three exact scales in stage j's range [length(j), length(j-1)), j >= 1:
/// the lower boundary length(j), a rational near the log-space midpoint,
/// and a rational just below length(j-1).
std::array<ExactRational, 3> stage_scale_samples(const GeneratorSchedule& s, std::size_t j);

/// 2^{j_delta}; the common value of N(F, delta) and M(F, delta).
BigInt analytic_count(const GeneratorSchedule& s, const LengthScale& scale, const PrecisionPolicy& policy = {});

struct CountBracket {
    BigInt lower;
    BigInt upper;

    bool exact() const { return lower == upper; }
    bool operator==(const CountBracket&) const = default;
};

// Sweeps over an enumerated stage set with an exact rational delta.
BigInt min_cover_of_endpoints(const StageSet& set, const ExactRational& delta);
BigInt min_cover_of_union(const StageSet& set, const ExactRational& delta);
/// Left ends (as rationals) of the greedy closed windows of width delta
/// covering the union of stage intervals.
std::vector<ExactRational> cover_windows_of_union(const StageSet& set, const ExactRational& delta);
/// Greedy packing centres among the endpoints, as numerators over the
/// stage denominator.
std::vector<std::uint64_t> pack_centres_on_endpoints(const StageSet& set, const ExactRational& delta);
BigInt max_pack_in_union(const StageSet& set, const ExactRational& delta);

/// Brackets for N(F, delta) and M(F, delta) from stage set d. Requires an
/// exact delta and d >= j_delta.
CountBracket greedy_cover_bracket(const GeneratorSchedule& s, const LengthScale& scale, std::size_t depth,
                                  std::size_t cap = kDefaultEnumerationCap, const PrecisionPolicy& policy = {});
CountBracket greedy_pack_bracket(const GeneratorSchedule& s, const LengthScale& scale, std::size_t depth,
                                 std::size_t cap = kDefaultEnumerationCap, const PrecisionPolicy& policy = {});

/// Number of grid cells of side delta (anchored at the origin) meeting a
/// stage set. Cells are [k delta, (k+1) delta) except the last one meeting
/// [0, 1], which is closed on the right so that [0, 1] at delta = 1 is one
/// cell.
BigInt grid_count_1d(const StageSet& set, const ExactRational& delta);

/// Grid cells of side delta meeting F_dF x G_dG.
BigInt grid_count_product(const StageSet& f, const StageSet& g, const ExactRational& delta);

struct ProductReport {
    ExactRational delta;
    std::size_t depth = 0;
    BigInt j_f;
    BigInt j_g;
    BigInt n_f;  // analytic N(F, delta) = M(F, delta)
    BigInt n_g;

    // Product cover built from the two greedy 1-D covers.
    BigInt product_cover_size;
    bool product_cover_valid = false;  // both 1-D covers verified to cover F_d, G_d
    bool eq7_holds = false;            // product cover certifies N(FxG, sqrt2 delta) <= n_f n_g

    // Origin-anchored grid surrogate.
    BigInt grid_count;
    bool grid_within_product = false;        // grid <= n_f n_g
    bool grid_within_comparability = false;  // grid <= 4 n_f n_g

    // Product packing from 1-D endpoint packings.
    BigInt m_f;
    BigInt m_g;
    BigInt product_packing_size;
    std::uint64_t pairs_checked = 0;
    bool packing_disjoint = false;
    bool eq8_holds = false;  // packing size == m_f m_g == n_f n_g and disjoint
};

ProductReport verify_product_inequalities(const GeneratorSchedule& f, const GeneratorSchedule& g,
                                          const LengthScale& scale, std::size_t depth,
                                          std::size_t cap = kDefaultEnumerationCap,
                                          const PrecisionPolicy& policy = {});

/// Exact check that every pair of centres (x_i, y_k) is more than delta
/// apart. Pairs separated by more than delta along one axis are settled by
/// that axis alone; the rest are checked with exact squared distances.
/// Returns the number of pairs that needed the squared-distance test, or
/// nullopt on a violation.
std::optional<std::uint64_t> verify_product_packing(const std::vector<std::uint64_t>& xs, std::uint64_t x_den,
                                                    const std::vector<std::uint64_t>& ys, std::uint64_t y_den,
                                                    const ExactRational& delta);

}  // namespace boxdim
