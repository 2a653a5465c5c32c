#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boxdim/profile.hpp"
#include "boxdim/schedule_spec.hpp"

#include <cmath>

using namespace boxdim;

namespace {

const GeneratorSchedule& F() {
    static const auto s = *builtin_schedule("F");
    return s;
}
const GeneratorSchedule& G() {
    static const auto s = *builtin_schedule("G");
    return s;
}

// True when the enclosure lies within tol of the decimal reference.
bool near(const Enclosure& e, const char* reference, const char* tol) {
    const auto prec = e.precision();
    const Enclosure ref = Enclosure::of(parse_rational(reference), prec);
    const Enclosure t = Enclosure::of(parse_rational(tol), prec);
    return certain_order(e, ref + t) < 0 && certain_order(e, ref - t) > 0;
}

// mpmath, 60 digits (tests/oracles/oracle.py).
constexpr const char* kLog2Log3 = "0.630929753571457437099527114342760854299585640131880427870655";
constexpr const char* kLog2Log5 = "0.430676558073393050670106568763965632069791932079760449321976";
constexpr const char* kLog2Log7 = "0.356207187108022176514177078001290529297757162772813700039576";

}  // namespace

TEST_CASE("boundary logs") {
    CHECK(near(boundary_log(F(), 100), "114.969485104470875971579664655289189813530163746732627875249", "1e-40"));
    CHECK(near(boundary_log(F(), 10000), "19379.4799607520725965145718247427685132206689866071583936232", "1e-35"));
    CHECK(near(boundary_log(F(), 1), "1.6094379124341003746007593332261876395256013542685177219126478914", "1e-40"));
    // Relative width stays tiny at 435000-bit stage indices.
    CHECK(boundary_log(F(), k_value(KSequence::decimal_tower(), 17)).relative_width() < 1e-30);
}

TEST_CASE("phi lookups") {
    const auto p1 = phi(F(), LengthScale::canonical(0, 1, 0));
    CHECK(p1.j == 1);
    CHECK(near(p1.phi, kLog2Log5, "1e-50"));
    const auto p100 = phi(F(), LengthScale::canonical(90, 10, 0));
    CHECK(p100.j == 100);
    CHECK(near(p100.phi, "0.602896655516978172247434132163386108001367733995118301930648", "1e-40"));
    CHECK(p100.set == ScheduleRole::F);
    CHECK_THROWS_AS(phi(F(), LengthScale::neg_log(0)), std::invalid_argument);
    CHECK_THROWS_AS(phi(F(), LengthScale::delta(2)), std::invalid_argument);
}

TEST_CASE("phi is j log 2 / x and decreases within a stage") {
    const auto& logs = log_constants(256);
    const Enclosure lo = boundary_log(F(), 5000, 256);
    const Enclosure hi = boundary_log(F(), 5001, 256);
    double previous = 2;
    for (int k = 1; k <= 9; ++k) {
        // x = lo + k (hi - lo) / 10 rounded to a rational.
        const double x = lo.midpoint() + k * (hi.midpoint() - lo.midpoint()) / 10;
        const auto p = phi(F(), LengthScale::neg_log(ExactRational(x)));
        CHECK(p.j == 5001);
        const Enclosure product = mul_nonneg(p.phi, p.x);
        const Enclosure expected = logs.log2 * p.j;
        CHECK(certain_order(product, expected) == 0);
        CHECK(p.phi.midpoint() < previous);
        previous = p.phi.midpoint();
    }
}

TEST_CASE("dimension reports") {
    const DimensionReport f = dimension_report(F(), 2);
    REQUIRE(f.upper.size() == 3);
    CHECK(f.upper[0].k_index == 1);
    CHECK(near(f.upper[0].phi, "0.602896655516978172247434132163386108001367733995118301930648", "1e-40"));
    CHECK(near(f.upper[1].phi, kLog2Log3, "1e-60"));
    CHECK(f.upper[1].distance.certainly_below(1e-60));
    CHECK(f.upper[2].distance.certainly_below(1e-6));
    CHECK(f.lower[0].k_index == 2);
    CHECK(near(f.lower[0].phi, "0.357670681547558863184464526138032632243066715678626821297365", "1e-40"));
    CHECK(f.lower[0].distance.certainly_below(2e-3));
    CHECK(f.lower[1].distance.certainly_below(1e-6));
    CHECK(f.lower[2].distance.certainly_below(1e-6));
    CHECK(near(f.upper_target, kLog2Log3, "1e-60"));
    CHECK(near(f.lower_target, kLog2Log7, "1e-60"));

    const DimensionReport g = dimension_report(G(), 1);
    CHECK(g.upper[0].k_index == 4);
    CHECK(g.lower[0].k_index == 5);
    CHECK(near(g.upper[0].phi, "0.630929750637801162302104513628435594771445351914577898337185", "1e-40"));
    CHECK(g.upper[0].distance.certainly_below(1e-7));
    CHECK(g.upper[1].distance.certainly_below(1e-6));
    CHECK(g.lower[1].distance.certainly_below(1e-6));

    CHECK_THROWS_AS(dimension_report(*builtin_schedule("pure-G3"), 1), std::invalid_argument);
}

TEST_CASE("band windows") {
    CHECK(band_window(ScheduleRole::F, Band::Upper, 0) == std::pair<std::size_t, std::size_t>{2, 6});
    CHECK(band_window(ScheduleRole::G, Band::Upper, 1) == std::pair<std::size_t, std::size_t>{11, 15});
    CHECK(band_window(ScheduleRole::F, Band::Lower, 0) == std::pair<std::size_t, std::size_t>{3, 7});
    CHECK(band_window(ScheduleRole::G, Band::Lower, 1) == std::pair<std::size_t, std::size_t>{6, 10});
}

TEST_CASE("mid-band bounds") {
    for (const auto* s : {&F(), &G()}) {
        const BandReport up = midband_bound_check(*s, Band::Upper, 1);
        const BandReport lo = midband_bound_check(*s, Band::Lower, 1);
        REQUIRE(up.windows.size() == 2);
        CHECK(near(up.target, kLog2Log5, "1e-60"));
        CHECK(up.windows[0].excess.certainly_below(5e-2));
        CHECK(up.windows[1].excess.certainly_below(1e-3));
        CHECK(lo.windows[0].excess.certainly_below(5e-2));
        CHECK(lo.windows[1].excess.certainly_below(1e-3));
        CHECK(up.windows[1].stages_sampled > 8);
    }
    // F's lower window (K_3, K_7] dips just under log2/log5 right after K_3.
    const BandReport lo = midband_bound_check(F(), Band::Lower, 0);
    CHECK(lo.windows[0].excess.certainly_above(0));
    CHECK(lo.windows[0].excess.certainly_below(1e-5));
}

TEST_CASE("phase disjointness") {
    const auto at_1e4 = phase_disjointness(F(), G(), LengthScale::canonical(90, 10, 9900));
    CHECK(at_1e4.j_f == 10000);
    CHECK(at_1e4.index_f == 2);
    CHECK_FALSE(at_1e4.g_in_upper_window);
    CHECK(at_1e4.holds());

    const auto at_log5 = phase_disjointness(F(), G(), LengthScale::canonical(0, 1, 0));
    CHECK(at_log5.j_f == 1);
    CHECK(at_log5.j_g == 1);
    CHECK_FALSE(at_log5.f_in_upper_window);
    CHECK_FALSE(at_log5.g_in_upper_window);
    CHECK(at_log5.holds());

    std::size_t violations = 0;
    const double top = std::log(1e70);
    for (int i = 0; i < 2000; ++i) {
        const double x = std::exp(top * i / 1999.0);
        violations += phase_disjointness(F(), G(), LengthScale::neg_log(ExactRational(x))).holds() ? 0 : 1;
    }
    CHECK(violations == 0);
}

TEST_CASE("counting ratios") {
    const auto rows = ratio_limits(F(), 1, 300);
    REQUIRE(rows.size() == 12);
    CHECK(near(rows[1].ratio3, "0.9", "1e-80"));
    CHECK(rows[1].target3 == 1);
    CHECK(near(rows[1].ratio7, "0", "1e-80"));
    CHECK(near(rows[2].ratio7, "0.99", "1e-80"));
    CHECK(rows[7].target3 == 1);
    CHECK(rows[7].distance3.certainly_below(1e-60));
    CHECK(rows[8].target7 == 1);
    CHECK(rows[8].distance7.certainly_below(1e-60));
    for (std::size_t i = 6; i < 12; ++i) {
        if (rows[i].target3 == 0) CHECK(rows[i].ratio3.certainly_below(1e-60));
        if (rows[i].target7 == 0) CHECK(rows[i].ratio7.certainly_below(1e-60));
    }
    const auto g = ratio_limits(G(), 0, 300);
    CHECK(g[4].target3 == 1);
    CHECK(g[5].target7 == 1);
}

TEST_CASE("sum profile") {
    const SumExtremaReport r = sum_profile_extrema(F(), G(), 1e4, 1e70, 400);
    CHECK(r.max.sum.certainly_below(1.0616 + 5e-2));
    CHECK(r.max.sum.certainly_below(1.20));
    CHECK(r.min.sum.certainly_above(0.7869 - 5e-2));
    CHECK(r.min.sum.certainly_above(0.75));
    CHECK(r.evaluations > 400);
    CHECK(std::abs(r.upper_target - 1.0616063116448504) < 1e-12);

    // Every sampled phi stays in the band for x >= 1e4.
    for (double x : loglog_grid(std::log(std::log(1e4)), std::log(std::log(1e70)), 300)) {
        for (const auto* s : {&F(), &G()}) {
            const auto p = phi(*s, LengthScale::neg_log(ExactRational(x)));
            CHECK(p.phi.certainly_below(0.6309297536 + 1e-2));
            CHECK(p.phi.certainly_above(0.3562071871 - 1e-2));
        }
    }
    CHECK_THROWS_AS(loglog_grid(1, 1, 10), std::invalid_argument);
}
