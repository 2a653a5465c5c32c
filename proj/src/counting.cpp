#include "boxdim/counting.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace boxdim {

Enclosure triple_neg_log(const ExponentTriple& t, mpfr_prec_t precision) {
    const auto& logs = log_constants(precision);
    return logs.log3 * t.a3 + logs.log5 * t.a5 + logs.log7 * t.a7;
}

Enclosure stage_neg_log(const StageCounts& counts, mpfr_prec_t precision) {
    return triple_neg_log(ExponentTriple::of(counts), precision);
}

// ------------------------------------------------------------- LengthScale

LengthScale LengthScale::canonical(BigInt a3, BigInt a5, BigInt a7) {
    if (a3 < 0 || a5 < 0 || a7 < 0) {
        throw std::invalid_argument("canonical scale exponents must be non-negative");
    }
    LengthScale s;
    s.form_ = Form::Canonical;
    s.triple_ = {std::move(a3), std::move(a5), std::move(a7)};
    return s;
}

LengthScale LengthScale::delta(ExactRational value) {
    if (value <= 0) {
        throw std::invalid_argument("delta must be positive");
    }
    LengthScale s;
    s.form_ = Form::Delta;
    s.value_ = std::move(value);
    return s;
}

LengthScale LengthScale::neg_log(ExactRational x) {
    LengthScale s;
    s.form_ = Form::NegLog;
    s.value_ = std::move(x);
    return s;
}

LengthScale LengthScale::neg_log_bounds(ExactRational lo, ExactRational hi) {
    if (hi < lo) {
        throw std::invalid_argument("-log delta bounds are reversed");
    }
    LengthScale s;
    s.form_ = Form::NegLogBounds;
    s.value_ = std::move(lo);
    s.upper_ = std::move(hi);
    return s;
}

Enclosure LengthScale::neg_log_enclosure(mpfr_prec_t precision) const {
    switch (form_) {
        case Form::Canonical:
            return triple_neg_log(triple_, precision);
        case Form::Delta:
            return log_enclosure(value_.get_den(), precision) - log_enclosure(value_.get_num(), precision);
        case Form::NegLog:
            return Enclosure::of(value_, precision);
        case Form::NegLogBounds: {
            Enclosure e(precision);
            mpfr_set_q(e.lo().get(), value_.get_mpq_t(), MPFR_RNDD);
            mpfr_set_q(e.hi().get(), upper_.get_mpq_t(), MPFR_RNDU);
            return e;
        }
    }
    throw std::logic_error("unknown length-scale form");
}

std::optional<ExactRational> LengthScale::exact_delta() const {
    if (form_ == Form::Delta) {
        return value_;
    }
    if (form_ == Form::Canonical) {
        const BigInt den = length_denominator(StageCounts{triple_.a3 + triple_.a5 + triple_.a7, triple_.a3, triple_.a7});
        return ExactRational(BigInt(1), den);
    }
    return std::nullopt;
}

namespace {

// Strips every factor of `p` from `n`, returning the multiplicity.
BigInt remove_factor(BigInt& n, unsigned long p) {
    BigInt factor(p);
    const mp_bitcnt_t count = mpz_remove(n.get_mpz_t(), n.get_mpz_t(), factor.get_mpz_t());
    return BigInt(static_cast<unsigned long>(count));
}

}  // namespace

std::optional<bool> LengthScale::equals(const ExponentTriple& t) const {
    switch (form_) {
        case Form::Canonical:
            return triple_ == t;
        case Form::Delta: {
            if (value_.get_num() != 1) {
                return false;
            }
            BigInt den = value_.get_den();
            ExponentTriple mine{remove_factor(den, 3), remove_factor(den, 5), remove_factor(den, 7)};
            return den == 1 && mine == t;
        }
        case Form::NegLog:
            // log(3^a 5^b 7^c) is irrational unless the triple is zero.
            return value_ == 0 && t == ExponentTriple{};
        case Form::NegLogBounds:
            return std::nullopt;
    }
    return std::nullopt;
}

std::size_t LengthScale::magnitude_bits() const {
    switch (form_) {
        case Form::Canonical:
            return std::max({bit_length(triple_.a3), bit_length(triple_.a5), bit_length(triple_.a7)}) + 3;
        case Form::Delta:
            // -log delta <= bits(den) * log 2
            return bit_length(BigInt(static_cast<unsigned long>(mpz_sizeinbase(value_.get_den().get_mpz_t(), 2)))) + 1;
        case Form::NegLog:
        case Form::NegLogBounds: {
            const ExactRational& top = form_ == Form::NegLog ? value_ : upper_;
            BigInt whole = top.get_num() / top.get_den();
            return bit_length(whole) + 1;
        }
    }
    return 0;
}

std::string LengthScale::describe() const {
    switch (form_) {
        case Form::Canonical:
            return "delta=3^-" + to_decimal(triple_.a3) + "*5^-" + to_decimal(triple_.a5) + "*7^-" +
                   to_decimal(triple_.a7);
        case Form::Delta:
            return "delta=" + to_fraction(value_);
        case Form::NegLog:
            return "-log(delta)=" + to_fraction(value_);
        case Form::NegLogBounds:
            return "-log(delta) in [" + to_fraction(value_) + ", " + to_fraction(upper_) + "]";
    }
    return "delta=?";
}

// ---------------------------------------------------------- stage lookup

namespace {

std::string describe_boundary(const StageCounts& c) {
    auto brief = [](const BigInt& v) {
        std::string s = to_decimal(v);
        return s.size() > 24 ? s.substr(0, 10) + "...(" + std::to_string(s.size()) + " digits)" : s;
    };
    return "stage " + brief(c.j) + " length 3^-" + brief(c.f3) + "*5^-" + brief(c.f5()) + "*7^-" + brief(c.f7);
}

BigInt ceil_to_int(const BigFloat& v) {
    BigFloat c(v.precision());
    mpfr_ceil(c.get(), v.get());
    BigInt out;
    mpfr_get_z(out.get_mpz_t(), c.get(), MPFR_RNDN);
    return out;
}

StageCounts advance(const StageCounts& base, GeneratorKind g, const BigInt& steps) {
    StageCounts c = base;
    c.j += steps;
    if (g == GeneratorKind::G3) {
        c.f3 += steps;
    } else if (g == GeneratorKind::G7) {
        c.f7 += steps;
    }
    return c;
}

}  // namespace

int compare_to_stage(const LengthScale& scale, const StageCounts& boundary, const PrecisionPolicy& policy) {
    const ExponentTriple t = ExponentTriple::of(boundary);
    if (auto eq = scale.equals(t); eq && *eq) {
        return 0;
    }
    const std::size_t magnitude =
        std::max(scale.magnitude_bits(), std::max({bit_length(t.a3), bit_length(t.a5), bit_length(t.a7)}));
    std::size_t bits = policy.start_bits + magnitude;
    const std::size_t limit = policy.max_bits + magnitude;
    for (;;) {
        const auto prec = static_cast<mpfr_prec_t>(bits);
        const int order = certain_order(scale.neg_log_enclosure(prec), stage_neg_log(boundary, prec));
        if (order != 0) {
            return order;
        }
        if (!scale.refinable()) {
            throw IndeterminateComparison(scale.describe() + " overlaps the boundary of " + describe_boundary(boundary) +
                                              "; supply -log(delta) to more than " + std::to_string(bits) + " bits",
                                          bits * 2);
        }
        if (bits * 2 > limit) {
            throw IndeterminateComparison(scale.describe() + " is not separated from the boundary of " +
                                              describe_boundary(boundary) + " at " + std::to_string(bits) + " bits",
                                          bits * 2);
        }
        bits *= 2;
    }
}

StageLookup locate_stage(const GeneratorSchedule& s, const LengthScale& scale, const PrecisionPolicy& policy) {
    StageCounts before{0, 0, 0};
    if (compare_to_stage(scale, before, policy) <= 0) {
        return {0, before};
    }
    auto cursor = s.runs();
    while (auto run = cursor.next()) {
        if (run->last) {
            const StageCounts end = advance(before, run->generator, run->length());
            if (compare_to_stage(scale, end, policy) > 0) {
                before = end;
                continue;
            }
        }
        // The stage lies in this run: smallest t >= 1 with x <= x(before) + t log p.
        const auto prec = static_cast<mpfr_prec_t>(policy.start_bits + scale.magnitude_bits() + bit_length(run->first));
        const auto& logs = log_constants(prec);
        const Enclosure& step = run->generator == GeneratorKind::G3   ? logs.log3
                                : run->generator == GeneratorKind::G5 ? logs.log5
                                                                      : logs.log7;
        const Enclosure q = div_pos(scale.neg_log_enclosure(prec) - stage_neg_log(before, prec), step);
        BigInt lo = std::max(BigInt(1), BigInt(ceil_to_int(q.lo()) - 1));
        BigInt hi = std::max(BigInt(1), BigInt(ceil_to_int(q.hi()) + 1));
        if (run->last) {
            hi = std::min(hi, run->length());
            lo = std::min(lo, hi);
        }
        // Predicate x <= x(before + t) is monotone in t; find its first true.
        while (compare_to_stage(scale, advance(before, run->generator, hi), policy) > 0) {
            lo = hi + 1;
            hi *= 2;
            if (run->last && hi > run->length()) {
                hi = run->length();
            }
        }
        while (lo < hi) {
            BigInt mid = (lo + hi) / 2;
            if (compare_to_stage(scale, advance(before, run->generator, mid), policy) <= 0) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        StageCounts found = advance(before, run->generator, hi);
        return {found.j, found};
    }
    throw std::out_of_range(scale.describe() + " lies beyond the described schedule");
}

std::array<ExactRational, 3> stage_scale_samples(const GeneratorSchedule& s, std::size_t j) {
    if (j == 0) {
        throw std::invalid_argument("stage 0 has no scale range below 1");
    }
    const BigInt d_prev = length_denominator(counts_up_to(s, BigInt(static_cast<unsigned long>(j - 1))));
    const BigInt d = length_denominator(counts_up_to(s, BigInt(static_cast<unsigned long>(j))));
    BigInt root;
    const BigInt product = d_prev * d;
    mpz_sqrt(root.get_mpz_t(), product.get_mpz_t());
    // d_prev < root + 1 <= d, so 1/(root + 1) is inside the range.
    ExactRational mid(1, root + 1);
    ExactRational below(1000 * d - 1, 1000 * d * d_prev);
    below.canonicalize();
    return {ExactRational(1, d), mid, below};
}

BigInt analytic_count(const GeneratorSchedule& s, const LengthScale& scale, const PrecisionPolicy& policy) {
    const BigInt j = stage_lookup(s, scale, policy);
    if (j > (1UL << 26)) {
        throw std::range_error("2^" + to_decimal(j) + " is too large to materialize; use the stage index");
    }
    BigInt count;
    mpz_ui_pow_ui(count.get_mpz_t(), 2, j.get_ui());
    return count;
}

// ----------------------------------------------------------- greedy sweeps

namespace {

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

// floor(delta * D), capped at D: integer distances k (in units of 1/D)
// satisfy k <= delta exactly when k <= this value.
std::uint64_t scaled_width(const ExactRational& delta, std::uint64_t den) {
    BigInt w = delta.get_num() * big(den) / delta.get_den();
    if (w > big(den)) {
        return den;
    }
    return w.get_ui();
}

std::vector<std::uint64_t> endpoints(const StageSet& set) {
    std::vector<std::uint64_t> pts;
    pts.reserve(set.size() * 2);
    for (std::uint64_t n : set.left_numerators()) {
        pts.push_back(n);
        pts.push_back(n + 1);
    }
    return pts;
}

// Union sweep in units of 1/(D q) where delta = p/q: interval i is
// [n_i q, (n_i + 1) q] and a window is p D wide.
struct ScaledUnion {
    const StageSet& set;
    BigInt q;
    BigInt width;

    ScaledUnion(const StageSet& s, const ExactRational& delta)
        : set(s), q(delta.get_den()), width(delta.get_num() * big(s.denominator())) {}

    BigInt left(std::size_t i) const { return big(set.left_numerators()[i]) * q; }
    BigInt right(std::size_t i) const { return big(set.left_numerators()[i] + 1) * q; }
};

}  // namespace

BigInt min_cover_of_endpoints(const StageSet& set, const ExactRational& delta) {
    const std::uint64_t w = scaled_width(delta, set.denominator());
    const auto pts = endpoints(set);
    BigInt count = 0;
    std::uint64_t start = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || pts[i] - start > w) {
            ++count;
            start = pts[i];
        }
    }
    return count;
}

std::vector<ExactRational> cover_windows_of_union(const StageSet& set, const ExactRational& delta) {
    ScaledUnion u(set, delta);
    const BigInt unit = u.q * big(set.denominator());
    std::vector<ExactRational> windows;
    const std::size_t n = set.size();
    std::size_t i = 0;
    BigInt start = u.left(0);
    while (i < n) {
        ExactRational w(start, unit);
        w.canonicalize();
        windows.push_back(w);
        const BigInt reach = start + u.width;
        while (i < n && u.right(i) <= reach) {
            ++i;
        }
        if (i == n) {
            break;
        }
        const BigInt l = u.left(i);
        start = l <= reach ? reach : l;
    }
    return windows;
}

BigInt min_cover_of_union(const StageSet& set, const ExactRational& delta) {
    return BigInt(static_cast<unsigned long>(cover_windows_of_union(set, delta).size()));
}

std::vector<std::uint64_t> pack_centres_on_endpoints(const StageSet& set, const ExactRational& delta) {
    const std::uint64_t w = scaled_width(delta, set.denominator());
    const auto pts = endpoints(set);
    std::vector<std::uint64_t> centres;
    for (std::uint64_t p : pts) {
        if (centres.empty() || p - centres.back() > w) {
            centres.push_back(p);
        }
    }
    return centres;
}

BigInt max_pack_in_union(const StageSet& set, const ExactRational& delta) {
    // Centres are tracked as value + (infinitesimal) when the least admissible
    // point is not attained; only whether the value is strict matters.
    ScaledUnion u(set, delta);
    const std::size_t n = set.size();
    BigInt count = 1;
    BigInt centre = u.left(0);
    std::size_t i = 0;
    for (;;) {
        const BigInt target = centre + u.width;  // next centre must exceed this
        while (i < n && u.right(i) <= target) {
            ++i;
        }
        if (i == n) {
            break;
        }
        const BigInt l = u.left(i);
        centre = l > target ? l : target;  // target itself stands for target + epsilon
        ++count;
    }
    return count;
}

namespace {

std::size_t checked_depth(const GeneratorSchedule& s, const LengthScale& scale, std::size_t depth,
                          const PrecisionPolicy& policy) {
    const BigInt j = stage_lookup(s, scale, policy);
    if (BigInt(static_cast<unsigned long>(depth)) < j) {
        throw std::invalid_argument("depth " + std::to_string(depth) + " is below the stage " + to_decimal(j) +
                                    " of " + scale.describe() + "; the bracket would be uninformative");
    }
    return depth;
}

ExactRational require_exact(const LengthScale& scale) {
    auto d = scale.exact_delta();
    if (!d) {
        throw std::invalid_argument("greedy oracles need delta as an exact rational or canonical triple, got " +
                                    scale.describe());
    }
    return *d;
}

}  // namespace

CountBracket greedy_cover_bracket(const GeneratorSchedule& s, const LengthScale& scale, std::size_t depth,
                                  std::size_t cap, const PrecisionPolicy& policy) {
    const ExactRational delta = require_exact(scale);
    const StageSet set = stage_set(s, checked_depth(s, scale, depth, policy), cap);
    return {min_cover_of_endpoints(set, delta), min_cover_of_union(set, delta)};
}

CountBracket greedy_pack_bracket(const GeneratorSchedule& s, const LengthScale& scale, std::size_t depth,
                                 std::size_t cap, const PrecisionPolicy& policy) {
    const ExactRational delta = require_exact(scale);
    const StageSet set = stage_set(s, checked_depth(s, scale, depth, policy), cap);
    const auto centres = pack_centres_on_endpoints(set, delta);
    return {BigInt(static_cast<unsigned long>(centres.size())), max_pack_in_union(set, delta)};
}

// ------------------------------------------------------------------- grid

BigInt grid_count_1d(const StageSet& set, const ExactRational& delta) {
    if (delta <= 0) {
        throw std::invalid_argument("grid side must be positive");
    }
    // Cell of x = n/D is floor(n q / (D p)), clipped to ceil(q/p) - 1.
    const BigInt p = delta.get_num();
    const BigInt q = delta.get_den();
    const BigInt den = big(set.denominator()) * p;
    BigInt last;
    mpz_cdiv_q(last.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
    last -= 1;
    auto cell = [&](std::uint64_t n) {
        BigInt k = big(n) * q / den;
        return k > last ? last : k;
    };

    // Sorted intervals give non-decreasing cell ranges; merge overlaps.
    BigInt count = 0;
    BigInt run_lo;
    BigInt run_hi;
    bool open = false;
    for (std::uint64_t n : set.left_numerators()) {
        const BigInt lo = cell(n);
        const BigInt hi = cell(n + 1);
        if (open && lo <= run_hi) {
            run_hi = std::max(run_hi, hi);
            continue;
        }
        if (open) {
            count += run_hi - run_lo + 1;
        }
        run_lo = lo;
        run_hi = hi;
        open = true;
    }
    if (open) {
        count += run_hi - run_lo + 1;
    }
    return count;
}

BigInt grid_count_product(const StageSet& f, const StageSet& g, const ExactRational& delta) {
    // A product cell meets F_d x G_d iff its two factor cells meet F_d and G_d.
    return grid_count_1d(f, delta) * grid_count_1d(g, delta);
}

// ---------------------------------------------------------------- product

std::optional<std::uint64_t> verify_product_packing(const std::vector<std::uint64_t>& xs, std::uint64_t x_den,
                                                    const std::vector<std::uint64_t>& ys, std::uint64_t y_den,
                                                    const ExactRational& delta) {
    const std::uint64_t wx = scaled_width(delta, x_den);
    const std::uint64_t wy = scaled_width(delta, y_den);
    const BigInt p = delta.get_num();
    const BigInt q = delta.get_den();
    const BigInt dx2 = big(x_den) * big(x_den);
    const BigInt dy2 = big(y_den) * big(y_den);
    const BigInt rhs = p * p * dx2 * dy2;
    auto gap = [](std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; };

    std::uint64_t checked = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t i2 = i; i2 < xs.size(); ++i2) {
            const std::uint64_t ax = gap(xs[i], xs[i2]);
            if (i2 != i && ax > wx) {
                break;  // xs ascending: every later column is farther still
            }
            for (std::size_t k = 0; k < ys.size(); ++k) {
                for (std::size_t k2 = (i2 == i ? k + 1 : 0); k2 < ys.size(); ++k2) {
                    const std::uint64_t ay = gap(ys[k], ys[k2]);
                    if (ay > wy) {
                        continue;
                    }
                    ++checked;
                    // (ax/Dx)^2 + (ay/Dy)^2 > (p/q)^2
                    const BigInt lhs = (big(ax) * big(ax) * dy2 + big(ay) * big(ay) * dx2) * q * q;
                    if (lhs <= rhs) {
                        return std::nullopt;
                    }
                }
            }
        }
    }
    return checked;
}

namespace {

// Every stage interval lies inside the union of the closed windows
// [w, w + delta]; `windows` is sorted.
bool windows_cover(const StageSet& set, const std::vector<ExactRational>& windows, const ExactRational& delta) {
    std::size_t k = 0;  // last window with left end <= pos
    for (std::size_t i = 0; i < set.size(); ++i) {
        const ConstructionInterval iv = set.interval(i);
        ExactRational pos = iv.left;
        for (;;) {
            while (k + 1 < windows.size() && windows[k + 1] <= pos) {
                ++k;
            }
            if (windows.empty() || windows[k] > pos) {
                return false;
            }
            const ExactRational reach = windows[k] + delta;
            if (reach >= iv.right) {
                break;
            }
            if (reach <= pos) {
                return false;
            }
            pos = reach;
        }
    }
    return true;
}

}  // namespace

ProductReport verify_product_inequalities(const GeneratorSchedule& f, const GeneratorSchedule& g,
                                          const LengthScale& scale, std::size_t depth, std::size_t cap,
                                          const PrecisionPolicy& policy) {
    ProductReport r;
    r.delta = require_exact(scale);
    r.depth = depth;
    r.j_f = stage_lookup(f, scale, policy);
    r.j_g = stage_lookup(g, scale, policy);
    r.n_f = analytic_count(f, scale, policy);
    r.n_g = analytic_count(g, scale, policy);
    checked_depth(f, scale, depth, policy);
    checked_depth(g, scale, depth, policy);
    const StageSet sf = stage_set(f, depth, cap);
    const StageSet sg = stage_set(g, depth, cap);

    const auto cover_f = cover_windows_of_union(sf, r.delta);
    const auto cover_g = cover_windows_of_union(sg, r.delta);
    r.product_cover_size = BigInt(static_cast<unsigned long>(cover_f.size())) *
                           BigInt(static_cast<unsigned long>(cover_g.size()));
    r.product_cover_valid = windows_cover(sf, cover_f, r.delta) && windows_cover(sg, cover_g, r.delta);
    r.eq7_holds = r.product_cover_valid && r.product_cover_size <= r.n_f * r.n_g;

    r.grid_count = grid_count_product(sf, sg, r.delta);
    r.grid_within_product = r.grid_count <= r.n_f * r.n_g;
    r.grid_within_comparability = r.grid_count <= 4 * r.n_f * r.n_g;

    const auto xs = pack_centres_on_endpoints(sf, r.delta);
    const auto ys = pack_centres_on_endpoints(sg, r.delta);
    r.m_f = BigInt(static_cast<unsigned long>(xs.size()));
    r.m_g = BigInt(static_cast<unsigned long>(ys.size()));
    r.product_packing_size = r.m_f * r.m_g;
    const auto checked = verify_product_packing(xs, sf.denominator(), ys, sg.denominator(), r.delta);
    r.packing_disjoint = checked.has_value();
    r.pairs_checked = checked.value_or(0);
    r.eq8_holds = r.packing_disjoint && r.product_packing_size == r.n_f * r.n_g;
    return r;
}

}  // namespace boxdim
