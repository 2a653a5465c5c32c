#pragma once

// Box-counting profile phi(x) = j log 2 / x for x = -log(delta) in stage j's
// range, its values along the tower boundaries, band bounds on the windows
// between them, the phase relation between F and G, and extrema of
// phi_F + phi_G.
//
// Nothing here computes a limit. Reports carry sequence values next to
// their targets; convergence is read off the distances.

#include "boxdim/counting.hpp"
#include "boxdim/schedule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boxdim {

/// -log of the stage-j length. The sum has positive terms, so the relative
/// error is governed by `precision` alone.
Enclosure boundary_log(const GeneratorSchedule& s, const BigInt& j, mpfr_prec_t precision = 320);

struct ProfileSample {
    Enclosure x;
    BigInt j;
    Enclosure phi;
    ScheduleRole set = ScheduleRole::Custom;
};

/// phi at a given -log(delta) > 0.
ProfileSample phi(const GeneratorSchedule& s, const LengthScale& x, const PrecisionPolicy& policy = {});

/// j log 2 / x(j): the value at the stage-j boundary (the minimum over the
/// stage's x-range).
Enclosure phi_at_boundary(const GeneratorSchedule& s, const BigInt& j, mpfr_prec_t precision = 320);
/// j log 2 / x(j-1): the supremum over stage j's x-range, approached just
/// above the previous boundary.
Enclosure phi_sup_in_stage(const GeneratorSchedule& s, const BigInt& j, mpfr_prec_t precision = 320);

/// log 2 / log p as an enclosure.
Enclosure similarity_dimension(GeneratorKind g, mpfr_prec_t precision = 320);

struct BoundaryValue {
    std::size_t n = 0;
    std::size_t k_index = 0;  // the boundary stage is K_{k_index}
    std::size_t stage_digits = 0;
    Enclosure phi{320};
    Enclosure distance{320};  // |phi - target|
};

struct DimensionReport {
    ScheduleRole set = ScheduleRole::F;
    std::size_t n_max = 0;
    mpfr_prec_t precision = 320;
    Enclosure upper_target{320};  // log 2 / log 3
    Enclosure lower_target{320};  // log 2 / log 7
    std::vector<BoundaryValue> upper;  // K_{6n+1} for F, K_{6n+4} for G
    std::vector<BoundaryValue> lower;  // K_{6n+2} for F, K_{6n+5} for G
};

DimensionReport dimension_report(const GeneratorSchedule& s, std::size_t n_max, mpfr_prec_t precision = 320);

enum class Band { Upper, Lower };

struct BandWindow {
    std::size_t n = 0;
    std::size_t from_index = 0;  // window is (K_from, K_to]
    std::size_t to_index = 0;
    /// Upper band: largest phi over the window (stage suprema).
    /// Lower band: smallest phi over the window (stage boundaries).
    Enclosure extremum{320};
    std::string extremum_stage;  // decimal, abbreviated when long
    std::size_t stages_sampled = 0;
    Enclosure excess{320};  // extremum - target (upper) or target - extremum (lower)
};

struct BandReport {
    ScheduleRole set = ScheduleRole::F;
    Band band = Band::Upper;
    Enclosure target{320};  // log 2 / log 5
    std::vector<BandWindow> windows;
};

/// Window (K_a, K_b] bounds by set and band:
///   F upper (K_{6n+2}, K_{6n+6}]   G upper (K_{6n+5}, K_{6n+9}]
///   F lower (K_{6n+3}, K_{6n+7}]   G lower (K_{6n},   K_{6n+4}]
std::pair<std::size_t, std::size_t> band_window(ScheduleRole set, Band band, std::size_t n);

/// Along a run of one generator both phi(x(j)) and the stage suprema are
/// monotone in j, so run endpoints give exact window extrema; `interior`
/// extra log-spaced stages per run are evaluated as well.
BandReport midband_bound_check(const GeneratorSchedule& s, Band band, std::size_t n_max, std::size_t interior = 8,
                               mpfr_prec_t precision = 320);

struct PhaseReport {
    BigInt j_f;
    BigInt j_g;
    std::size_t index_f = 0;  // j_f in (K_{index_f - 1}, K_{index_f}]
    std::size_t index_g = 0;
    bool f_in_upper_window = false;  // (K_{6n}, K_{6n+2}]
    bool g_in_upper_window = false;  // (K_{6m+3}, K_{6m+5}]
    bool f_in_lower_window = false;  // (K_{6n+1}, K_{6n+3}]
    bool g_in_lower_window = false;  // (K_{6m+4}, K_{6m+6}]

    bool upper_violation() const { return f_in_upper_window && g_in_upper_window; }
    bool lower_violation() const { return f_in_lower_window && g_in_lower_window; }
    bool holds() const { return !upper_violation() && !lower_violation(); }
    std::string attribution() const;
};

PhaseReport phase_disjointness(const GeneratorSchedule& f, const GeneratorSchedule& g, const LengthScale& x,
                               const PrecisionPolicy& policy = {});

struct RatioRow {
    std::size_t n = 0;
    std::size_t l = 0;
    std::size_t k_index = 0;  // 6n + l
    Enclosure ratio3{320};    // f3(K)/K or g3(K)/K
    Enclosure ratio7{320};
    int target3 = 0;
    int target7 = 0;
    Enclosure distance3{320};
    Enclosure distance7{320};
};

/// Counting-function ratios at every K_{6n+l}, l = 0..5, n = 0..n_max.
std::vector<RatioRow> ratio_limits(const GeneratorSchedule& s, std::size_t n_max, mpfr_prec_t precision = 320);

struct SumPoint {
    double x = 0;  // exact value of the sampled -log(delta) when from the grid
    std::string x_label;
    Enclosure sum{320};
};

struct SumExtremaReport {
    SumPoint max;
    SumPoint min;
    std::size_t evaluations = 0;
    double upper_target = 0;  // log2/log3 + log2/log5
    double lower_target = 0;  // log2/log7 + log2/log5
};

/// phi_F + phi_G over a log-log-uniform grid of x in [x_min, x_max] plus
/// every tower boundary of either schedule in range (value and right limit).
SumExtremaReport sum_profile_extrema(const GeneratorSchedule& f, const GeneratorSchedule& g, double x_min,
                                     double x_max, std::size_t samples, const PrecisionPolicy& policy = {});

/// x = exp(exp(u)) for u evenly spaced over [u_min, u_max].
std::vector<double> loglog_grid(double u_min, double u_max, std::size_t samples);

}  // namespace boxdim
