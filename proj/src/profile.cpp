#include "boxdim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace boxdim {

namespace {

const Enclosure& log_of(GeneratorKind g, const LogConstants& logs) {
    switch (g) {
        case GeneratorKind::G3:
            return logs.log3;
        case GeneratorKind::G5:
            return logs.log5;
        case GeneratorKind::G7:
            return logs.log7;
    }
    return logs.log5;
}

Enclosure negate(const Enclosure& a) {
    Enclosure r(a.precision());
    mpfr_neg(r.lo().get(), a.hi().get(), MPFR_RNDD);
    mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
    return r;
}

Enclosure abs_distance(const Enclosure& a, const Enclosure& b) {
    Enclosure d = a - b;
    if (mpfr_sgn(d.lo().get()) >= 0) {
        return d;
    }
    if (mpfr_sgn(d.hi().get()) <= 0) {
        return negate(d);
    }
    Enclosure r(d.precision());
    mpfr_set_zero(r.lo().get(), 1);
    mpfr_neg(r.hi().get(), d.lo().get(), MPFR_RNDU);
    mpfr_max(r.hi().get(), r.hi().get(), d.hi().get(), MPFR_RNDU);
    return r;
}

const KSequence& require_tower(const GeneratorSchedule& s, const char* what) {
    if (s.role() == ScheduleRole::Custom || s.k() == nullptr) {
        throw std::invalid_argument(std::string(what) + " needs an F or G schedule");
    }
    return *s.k();
}

std::string abbreviate(const BigInt& j) {
    std::string digits = to_decimal(j);
    if (digits.size() <= 24) {
        return digits;
    }
    return digits.substr(0, 8) + "..." + digits.substr(digits.size() - 8) + " (" + std::to_string(digits.size()) +
           " digits)";
}

}  // namespace

Enclosure boundary_log(const GeneratorSchedule& s, const BigInt& j, mpfr_prec_t precision) {
    return stage_neg_log(counts_up_to(s, j), precision);
}

ProfileSample phi(const GeneratorSchedule& s, const LengthScale& x, const PrecisionPolicy& policy) {
    if (compare_to_stage(x, StageCounts{0, 0, 0}, policy) <= 0) {
        throw std::invalid_argument("phi needs -log(delta) > 0, got " + x.describe());
    }
    ProfileSample out{Enclosure(2), 0, Enclosure(2), s.role()};
    out.j = stage_lookup(s, x, policy);
    const auto prec = static_cast<mpfr_prec_t>(policy.start_bits + x.magnitude_bits() + bit_length(out.j));
    out.x = x.neg_log_enclosure(prec);
    out.phi = div_pos(log_constants(prec).log2 * out.j, out.x);
    return out;
}

Enclosure phi_at_boundary(const GeneratorSchedule& s, const BigInt& j, mpfr_prec_t precision) {
    if (j <= 0) {
        throw std::invalid_argument("phi_at_boundary needs j >= 1");
    }
    return div_pos(log_constants(precision).log2 * j, boundary_log(s, j, precision));
}

Enclosure phi_sup_in_stage(const GeneratorSchedule& s, const BigInt& j, mpfr_prec_t precision) {
    if (j <= 1) {
        // Stage 1 spans x in (0, x(1)]: phi is unbounded near 0.
        throw std::invalid_argument("phi_sup_in_stage needs j >= 2");
    }
    return div_pos(log_constants(precision).log2 * j, boundary_log(s, j - 1, precision));
}

Enclosure similarity_dimension(GeneratorKind g, mpfr_prec_t precision) {
    const auto& logs = log_constants(precision);
    return div_pos(logs.log2, log_of(g, logs));
}

DimensionReport dimension_report(const GeneratorSchedule& s, std::size_t n_max, mpfr_prec_t precision) {
    const KSequence& k = require_tower(s, "dimension_report");
    DimensionReport r;
    r.set = s.role();
    r.n_max = n_max;
    r.precision = precision;
    r.upper_target = similarity_dimension(GeneratorKind::G3, precision);
    r.lower_target = similarity_dimension(GeneratorKind::G7, precision);
    const std::size_t up = s.role() == ScheduleRole::F ? 1 : 4;
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (int side = 0; side < 2; ++side) {
            BoundaryValue v;
            v.n = n;
            v.k_index = 6 * n + up + side;
            const BigInt& j = k.value(v.k_index);
            v.stage_digits = to_decimal(j).size();
            v.phi = phi_at_boundary(s, j, precision);
            v.distance = abs_distance(v.phi, side == 0 ? r.upper_target : r.lower_target);
            (side == 0 ? r.upper : r.lower).push_back(std::move(v));
        }
    }
    return r;
}

std::pair<std::size_t, std::size_t> band_window(ScheduleRole set, Band band, std::size_t n) {
    const std::size_t b = 6 * n;
    if (set == ScheduleRole::F) {
        return band == Band::Upper ? std::pair{b + 2, b + 6} : std::pair{b + 3, b + 7};
    }
    if (set == ScheduleRole::G) {
        return band == Band::Upper ? std::pair{b + 5, b + 9} : std::pair{b, b + 4};
    }
    throw std::invalid_argument("band windows are defined for F and G only");
}

BandReport midband_bound_check(const GeneratorSchedule& s, Band band, std::size_t n_max, std::size_t interior,
                               mpfr_prec_t precision) {
    const KSequence& k = require_tower(s, "midband_bound_check");
    BandReport r;
    r.set = s.role();
    r.band = band;
    r.target = similarity_dimension(GeneratorKind::G5, precision);

    auto value_at = [&](const BigInt& j) {
        return band == Band::Upper ? phi_sup_in_stage(s, j, precision) : phi_at_boundary(s, j, precision);
    };

    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto [a, b] = band_window(s.role(), band, n);
        BandWindow w;
        w.n = n;
        w.from_index = a;
        w.to_index = b;
        bool have = false;
        // Runs (K_{i-1}, K_i] for i = a+1..b tile the window.
        for (std::size_t i = a + 1; i <= b; ++i) {
            const BigInt first = k.value(i - 1) + 1;
            const BigInt& last = k.value(i);
            std::vector<BigInt> stages{first, last};
            // Log-spaced interior offsets 2^e.
            for (std::size_t t = 1; t <= interior && last - first > 1; ++t) {
                const BigInt length = last - first;
                const std::size_t bits = bit_length(length);
                const std::size_t e = bits * t / (interior + 1);
                BigInt off = BigInt(1) << e;
                if (off >= length) {
                    continue;
                }
                stages.push_back(first + off);
            }
            for (const BigInt& j : stages) {
                if (band == Band::Upper && j <= 1) {
                    continue;
                }
                Enclosure v = value_at(j);
                ++w.stages_sampled;
                const bool better = !have || (band == Band::Upper ? mpfr_cmp(v.hi().get(), w.extremum.hi().get()) > 0
                                                                  : mpfr_cmp(v.lo().get(), w.extremum.lo().get()) < 0);
                if (better) {
                    w.extremum = std::move(v);
                    w.extremum_stage = abbreviate(j);
                    have = true;
                }
            }
        }
        w.excess = band == Band::Upper ? w.extremum - r.target : r.target - w.extremum;
        r.windows.push_back(std::move(w));
    }
    return r;
}

std::string PhaseReport::attribution() const {
    std::string out = "j_F in (K_" + std::to_string(index_f) + "-1, K_" + std::to_string(index_f) + "], j_G in (K_" +
                      std::to_string(index_g) + "-1, K_" + std::to_string(index_g) + "]";
    if (upper_violation()) {
        out += "; both in their upper-phase windows";
    }
    if (lower_violation()) {
        out += "; both in their lower-phase windows";
    }
    return out;
}

PhaseReport phase_disjointness(const GeneratorSchedule& f, const GeneratorSchedule& g, const LengthScale& x,
                               const PrecisionPolicy& policy) {
    const KSequence& kf = require_tower(f, "phase_disjointness");
    const KSequence& kg = require_tower(g, "phase_disjointness");
    PhaseReport r;
    r.j_f = stage_lookup(f, x, policy);
    r.j_g = stage_lookup(g, x, policy);
    if (r.j_f == 0 || r.j_g == 0) {
        throw std::invalid_argument("phase_disjointness needs delta < 1");
    }
    r.index_f = kf.bracket_index(r.j_f);
    r.index_g = kg.bracket_index(r.j_g);
    const std::size_t rf = r.index_f % 6;
    const std::size_t rg = r.index_g % 6;
    r.f_in_upper_window = rf == 1 || rf == 2;
    r.g_in_upper_window = rg == 4 || rg == 5;
    r.f_in_lower_window = rf == 2 || rf == 3;
    r.g_in_lower_window = r.index_g >= 5 && (rg == 5 || rg == 0);
    return r;
}

std::vector<RatioRow> ratio_limits(const GeneratorSchedule& s, std::size_t n_max, mpfr_prec_t precision) {
    const KSequence& k = require_tower(s, "ratio_limits");
    const std::size_t hit3 = s.role() == ScheduleRole::F ? 1 : 4;
    std::vector<RatioRow> rows;
    for (std::size_t n = 0; n <= n_max; ++n) {
        for (std::size_t l = 0; l < 6; ++l) {
            RatioRow row;
            row.n = n;
            row.l = l;
            row.k_index = 6 * n + l;
            const BigInt& kv = k.value(row.k_index);
            const StageCounts c = counts_up_to(s, kv);
            row.ratio3 = Enclosure::of(ExactRational(c.f3, kv), precision);
            row.ratio7 = Enclosure::of(ExactRational(c.f7, kv), precision);
            row.target3 = l == hit3 ? 1 : 0;
            row.target7 = l == hit3 + 1 ? 1 : 0;
            row.distance3 = abs_distance(row.ratio3, Enclosure::of(BigInt(row.target3), precision));
            row.distance7 = abs_distance(row.ratio7, Enclosure::of(BigInt(row.target7), precision));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<double> loglog_grid(double u_min, double u_max, std::size_t samples) {
    if (samples < 2 || !(u_min < u_max)) {
        throw std::invalid_argument("loglog grid needs u_min < u_max and at least two samples");
    }
    std::vector<double> xs;
    xs.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double u = u_min + (u_max - u_min) * static_cast<double>(i) / static_cast<double>(samples - 1);
        xs.push_back(std::exp(std::exp(u)));
    }
    return xs;
}

SumExtremaReport sum_profile_extrema(const GeneratorSchedule& f, const GeneratorSchedule& g, double x_min,
                                     double x_max, std::size_t samples, const PrecisionPolicy& policy) {
    if (!(x_min > 1.0) || !(x_min < x_max) || !std::isfinite(x_max)) {
        throw std::invalid_argument("sum profile needs 1 < x_min < x_max < inf");
    }
    const auto prec = static_cast<mpfr_prec_t>(policy.start_bits);
    SumExtremaReport r;
    r.upper_target = std::log(2.0) / std::log(3.0) + std::log(2.0) / std::log(5.0);
    r.lower_target = std::log(2.0) / std::log(7.0) + std::log(2.0) / std::log(5.0);
    bool have = false;

    auto consider = [&](double x, std::string label, Enclosure sum) {
        ++r.evaluations;
        if (!have || mpfr_cmp(sum.hi().get(), r.max.sum.hi().get()) > 0) {
            r.max = SumPoint{x, label, sum};
        }
        if (!have || mpfr_cmp(sum.lo().get(), r.min.sum.lo().get()) < 0) {
            r.min = SumPoint{x, label, sum};
        }
        have = true;
    };

    for (double x : loglog_grid(std::log(std::log(x_min)), std::log(std::log(x_max)), samples)) {
        x = std::clamp(x, x_min, x_max);
        const LengthScale scale = LengthScale::neg_log(ExactRational(x));
        Enclosure sum = phi(f, scale, policy).phi + phi(g, scale, policy).phi;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        consider(x, buf, std::move(sum));
    }

    // Tower boundaries: phi jumps up just to the right of each stage
    // boundary, so both the value there and the right limit are candidates.
    const auto& log2 = log_constants(prec).log2;
    for (const GeneratorSchedule* own : {&f, &g}) {
        const GeneratorSchedule* other = own == &f ? &g : &f;
        const KSequence& k = require_tower(*own, "sum_profile_extrema");
        for (std::size_t i = 0; i <= KSequence::kMaxTowerIndex; ++i) {
            const BigInt& j = k.value(i);
            const StageCounts c = counts_up_to(*own, j);
            const Enclosure xb = stage_neg_log(c, prec);
            if (xb.certainly_above(x_max)) {
                break;
            }
            if (xb.certainly_below(x_min)) {
                continue;
            }
            const LengthScale at = LengthScale::canonical(ExponentTriple::of(c));
            const StageLookup o = locate_stage(*other, at, policy);
            const bool shared = compare_to_stage(at, o.counts, policy) == 0;
            const Enclosure own_at = div_pos(log2 * j, xb);
            const Enclosure own_right = div_pos(log2 * BigInt(j + 1), xb);
            const Enclosure other_at = div_pos(log2 * o.j, xb);
            const Enclosure other_right = div_pos(log2 * BigInt(shared ? o.j + 1 : o.j), xb);
            const std::string label =
                std::string(role_name(own->role())) + " boundary K_" + std::to_string(i) + " (x ~ " + xb.to_string(12) + ")";
            consider(xb.midpoint(), label, own_at + other_at);
            consider(xb.midpoint(), label + "+", own_right + other_right);
        }
    }
    return r;
}

}  // namespace boxdim
