#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "boxdim/schedule.hpp"
#include "boxdim/schedule_spec.hpp"

#include <random>
#include <tuple>

using namespace boxdim;

namespace {

BigInt big(unsigned long v) { return BigInt(v); }

// Reference rule, stage by stage: find the run index by scanning the tower.
unsigned long naive_base(bool f_role, unsigned long (*k)(unsigned), unsigned long j) {
    unsigned i = 0;
    while (j > k(i)) ++i;
    const unsigned r = i % 6;
    if (f_role) return r == 1 ? 3 : r == 2 ? 7 : 5;
    return r == 4 ? 3 : r == 5 ? 7 : 5;
}

unsigned long desk_k(unsigned i) { return i >= 6 ? ~0UL : 1UL << (1U << i); }

std::tuple<long, long, long> triple(const StageCounts& c) {
    return {c.f3.get_si(), c.f5().get_si(), c.f7.get_si()};
}

}  // namespace

TEST_CASE("generator fractions") {
    for (auto g : {GeneratorKind::G3, GeneratorKind::G5, GeneratorKind::G7}) {
        CHECK(removed_fraction(g) + 2 * kept_fraction(g) == 1);
        CHECK(parse_generator(generator_name(g)) == g);
    }
    CHECK(kept_fraction(GeneratorKind::G5) == ExactRational(1, 5));
    CHECK(removed_fraction(GeneratorKind::G7) == ExactRational(5, 7));
    CHECK_THROWS_AS(parse_generator("G4"), std::invalid_argument);
}

TEST_CASE("tower values") {
    const auto paper = KSequence::decimal_tower();
    const auto desk = KSequence::binary_tower();
    CHECK(k_value(paper, 0) == 10);
    CHECK(k_value(paper, 2) == 10000);
    CHECK(k_value(desk, 3) == 256);
    CHECK(k_value(paper, 7) == pow_ui(10, 128));
    CHECK_FALSE(paper.size().has_value());

    const auto list = KSequence::explicit_list({big(1), big(2), big(4)});
    CHECK(list.size() == 3u);
    CHECK_THROWS_AS(list.value(3), std::out_of_range);
    CHECK_THROWS_AS(KSequence::explicit_list({big(2), big(2)}), std::invalid_argument);
    CHECK_THROWS_AS(KSequence::explicit_list({big(0), big(2)}), std::invalid_argument);
}

TEST_CASE("bracket index") {
    const auto paper = KSequence::decimal_tower();
    CHECK(paper.bracket_index(big(1)) == 0);
    CHECK(paper.bracket_index(big(10)) == 0);
    CHECK(paper.bracket_index(big(11)) == 1);
    CHECK(paper.bracket_index(big(100)) == 1);
    CHECK(paper.bracket_index(big(101)) == 2);
    CHECK(paper.bracket_index(pow_ui(10, 64) + 1) == 7);
}

TEST_CASE("validation reports") {
    SUBCASE("paper") {
        const auto r = validate_k_sequence(KSequence::decimal_tower(), 4);
        CHECK(r.all_pass());
        CHECK_FALSE(r.entries.empty());
    }
    SUBCASE("desk") {
        const auto r = validate_k_sequence(KSequence::binary_tower(), 4);
        CHECK(r.all_pass());
    }
    SUBCASE("doubling list fails the vanishing tail") {
        const auto r = validate_k_sequence(KSequence::explicit_list({big(1), big(2), big(4), big(8), big(16)}), 3);
        CHECK_FALSE(r.passes(conditions::kTailRatioDecreasing));
        CHECK_FALSE(r.all_pass());
        // (1 + 2 + 4) / 8: the ratio climbs toward 1.
        CHECK(r.final_tail_ratio == ExactRational(7, 8));
    }
    SUBCASE("the telescoped condition is the monotone one") {
        const auto r = validate_k_sequence(KSequence::explicit_list({big(1), big(2), big(4), big(8), big(16)}), 3);
        CHECK(r.passes(conditions::kTelescopedAbovePrevious));
    }
    CHECK_THROWS_AS(validate_k_sequence(KSequence::decimal_tower(), 1), std::invalid_argument);
}

TEST_CASE("generator_at") {
    const auto f = GeneratorSchedule::f_schedule(KSequence::decimal_tower());
    const auto g = GeneratorSchedule::g_schedule(KSequence::decimal_tower());
    CHECK(generator_at(f, big(5)) == GeneratorKind::G5);
    CHECK(generator_at(f, big(50)) == GeneratorKind::G3);
    CHECK(generator_at(f, big(101)) == GeneratorKind::G7);
    CHECK(generator_at(g, big(50)) == GeneratorKind::G5);
    CHECK(generator_at(g, pow_ui(10, 8) + 1) == GeneratorKind::G3);
    CHECK(generator_at(g, pow_ui(10, 16) + 1) == GeneratorKind::G7);
    CHECK(generator_at(f, pow_ui(10, 64) + 1) == GeneratorKind::G3);
}

TEST_CASE("counts frozen from stage-by-stage iteration") {
    const auto fp = GeneratorSchedule::f_schedule(KSequence::decimal_tower());
    const auto gp = GeneratorSchedule::g_schedule(KSequence::decimal_tower());
    const auto fd = GeneratorSchedule::f_schedule(KSequence::binary_tower());
    const auto gd = GeneratorSchedule::g_schedule(KSequence::binary_tower());
    using T = std::tuple<long, long, long>;
    CHECK(triple(counts_up_to(fp, big(0))) == T{0, 0, 0});
    CHECK(triple(counts_up_to(fp, big(3))) == T{0, 3, 0});
    CHECK(triple(counts_up_to(fp, big(100))) == T{90, 10, 0});
    CHECK(triple(counts_up_to(fp, big(101))) == T{90, 10, 1});
    CHECK(triple(counts_up_to(fp, big(9999))) == T{90, 10, 9899});
    CHECK(triple(counts_up_to(fp, big(10000))) == T{90, 10, 9900});
    CHECK(triple(counts_up_to(fp, big(10001))) == T{90, 11, 9900});
    CHECK(triple(counts_up_to(gp, big(10001))) == T{0, 10001, 0});
    CHECK(triple(counts_up_to(fd, big(3))) == T{1, 2, 0});
    CHECK(triple(counts_up_to(fd, big(16))) == T{2, 2, 12});
    CHECK(triple(counts_up_to(fd, big(257))) == T{2, 243, 12});
    CHECK(triple(counts_up_to(fd, big(1000))) == T{2, 986, 12});
    CHECK(triple(counts_up_to(gd, big(256))) == T{0, 256, 0});
    CHECK(triple(counts_up_to(gd, big(257))) == T{1, 256, 0});
    CHECK(triple(counts_up_to(gd, big(1000))) == T{744, 256, 0});
}

TEST_CASE("closed form matches iteration on the desk rule up to 1e5") {
    for (bool f_role : {true, false}) {
        const auto s = f_role ? GeneratorSchedule::f_schedule(KSequence::binary_tower())
                              : GeneratorSchedule::g_schedule(KSequence::binary_tower());
        long f3 = 0, f7 = 0;
        bool all = true;
        for (unsigned long j = 1; j <= 100000; ++j) {
            const unsigned long p = naive_base(f_role, desk_k, j);
            f3 += p == 3;
            f7 += p == 7;
            if (j % 97 == 0 || j < 300) {
                const StageCounts c = counts_up_to(s, big(j));
                all = all && c.f3 == f3 && c.f7 == f7 && generator_base(generator_at(s, big(j))) == p;
            }
        }
        CHECK(all);
        const StageCounts c = counts_up_to(s, big(100000));
        CHECK(c.f3 == f3);
        CHECK(c.f7 == f7);
    }
}

TEST_CASE("counts are unit increments named by generator_at") {
    std::mt19937_64 rng(7);
    const auto f = GeneratorSchedule::f_schedule(KSequence::decimal_tower());
    const auto g = GeneratorSchedule::g_schedule(KSequence::decimal_tower());
    for (int trial = 0; trial < 300; ++trial) {
        const auto& s = trial % 2 ? f : g;
        // j spread over many magnitudes, including huge ones.
        const unsigned e = 1 + rng() % 300;
        const BigInt j = pow_ui(10, e) + BigInt(static_cast<unsigned long>(rng() % 1000)) - 500;
        if (j < 1) continue;
        const StageCounts a = counts_up_to(s, j - 1);
        const StageCounts b = counts_up_to(s, j);
        const GeneratorKind k = generator_at(s, j);
        CHECK(b.f3 - a.f3 == (k == GeneratorKind::G3 ? 1 : 0));
        CHECK(b.f7 - a.f7 == (k == GeneratorKind::G7 ? 1 : 0));
        CHECK(b.f5() - a.f5() == (k == GeneratorKind::G5 ? 1 : 0));
        CHECK(a.f3 <= b.f3);
        CHECK(b.f3 + b.f7 <= b.j);
    }
}

TEST_CASE("constancy windows") {
    const auto paper = KSequence::decimal_tower();
    const auto f = GeneratorSchedule::f_schedule(paper);
    const auto g = GeneratorSchedule::g_schedule(paper);
    // f3 frozen on (K_1, K_6], f7 frozen on (K_2, K_7].
    const BigInt f3 = counts_up_to(f, paper.value(1)).f3;
    const BigInt f7 = counts_up_to(f, paper.value(2)).f7;
    for (std::size_t i = 2; i <= 6; ++i) {
        CHECK(counts_up_to(f, paper.value(i)).f3 == f3);
        CHECK(counts_up_to(f, paper.value(i - 1) + 7).f3 == f3);
    }
    for (std::size_t i = 3; i <= 7; ++i) {
        CHECK(counts_up_to(f, paper.value(i)).f7 == f7);
    }
    // g7 frozen on (K_5, K_10], g3 on (K_4, K_9].
    const BigInt g7 = counts_up_to(g, paper.value(5)).f7;
    const BigInt g3 = counts_up_to(g, paper.value(4)).f3;
    for (std::size_t i = 6; i <= 10; ++i) {
        CHECK(counts_up_to(g, paper.value(i)).f7 == g7);
    }
    for (std::size_t i = 5; i <= 9; ++i) {
        CHECK(counts_up_to(g, paper.value(i)).f3 == g3);
    }
}

TEST_CASE("custom schedules") {
    const auto s = GeneratorSchedule::custom({Run{big(1), big(2), GeneratorKind::G3},
                                              Run{big(3), std::nullopt, GeneratorKind::G7}});
    CHECK(generator_at(s, big(2)) == GeneratorKind::G3);
    CHECK(generator_at(s, big(1000)) == GeneratorKind::G7);
    CHECK(counts_up_to(s, big(10)).f7 == 8);
    CHECK_THROWS_AS(GeneratorSchedule::custom({Run{big(2), big(3), GeneratorKind::G3}}), std::invalid_argument);
    CHECK_THROWS_AS(GeneratorSchedule::custom({Run{big(1), big(3), GeneratorKind::G3},
                                               Run{big(5), std::nullopt, GeneratorKind::G5}}),
                    std::invalid_argument);
    const auto pure = GeneratorSchedule::pure(GeneratorKind::G3);
    CHECK(counts_up_to(pure, pow_ui(10, 40)).f3 == pow_ui(10, 40));
}

TEST_CASE("schedule spec round trip") {
    const std::string text = R"({
  "k_rule": [
    "10",
    "100",
    "100000000000000000000000000000000000000001"
  ],
  "role": "custom",
  "runs": [
    {
      "from": "1",
      "to": "40",
      "generator": "G3"
    },
    {
      "from": "41",
      "to": "inf",
      "generator": "G5"
    }
  ]
}
)";
    const ScheduleSpec spec = parse_schedule_spec(text);
    CHECK(serialize_schedule_spec(spec) == text);
    CHECK(parse_schedule_spec(serialize_schedule_spec(spec)) == spec);
    const GeneratorSchedule s = build_schedule(spec);
    CHECK(counts_up_to(s, big(50)).f3 == 40);

    const ScheduleSpec f = parse_schedule_spec(R"({"k_rule": "desk", "role": "F"})");
    const GeneratorSchedule built = build_schedule(f);
    const GeneratorSchedule builtin = *builtin_schedule("F-desk");
    for (unsigned long j : {1UL, 3UL, 17UL, 300UL, 70000UL}) {
        CHECK(counts_up_to(built, big(j)) == counts_up_to(builtin, big(j)));
    }

    CHECK_THROWS_AS(parse_schedule_spec("{\"k_rule\": \"weekly\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule_spec("{\"role\": \"custom\"}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule_spec("[1, 2]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_schedule_spec("{\"runs\": [{\"from\": \"1\", \"to\": \"x\", \"generator\": \"G3\"}]}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(resolve_schedule("/nonexistent/schedule.json"), std::invalid_argument);
}
