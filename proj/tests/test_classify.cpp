#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nileta/classify.hpp"
#include "nileta/error.hpp"
#include "support.hpp"

using namespace nileta;
using testing::lattice;

namespace {

bool passed(const HomotopyVerdict& v, const std::string& check) {
    for (const auto& e : v.evidence)
        if (e.check == check) return e.passed;
    return false;
}

}  // namespace

TEST_CASE("verdicts") {
    CHECK(classify(lattice({{2}})).verdict == Verdict::Trivial);
    CHECK(classify(lattice({{2, 1}, {1, 2}})).verdict == Verdict::NontrivialPi6);
    CHECK(classify(lattice({{2, 1}, {1, 4}})).verdict == Verdict::NontrivialPi6);
    CHECK(classify(lattice({{2, 0}, {0, 2}})).verdict == Verdict::Trivial);
    CHECK(classify(lattice({{2, 0}, {0, 4}})).verdict == Verdict::Trivial);
    CHECK(classify(lattice({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})).verdict == Verdict::FiltrationGt2HenceTrivial);
    CHECK(to_string(Verdict::NontrivialPi6) == "NONTRIVIAL_PI6");
    CHECK(to_string(Verdict::FiltrationGt2) == "FILTRATION_GT_2");
}

TEST_CASE("rank two verdict depends only on the parity of the discriminant") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 10; ++i) {
        const EvenLattice l = lattice(testing::random_even_gram(rng, 2));
        const HomotopyVerdict v = classify(l);
        CAPTURE(l.det());
        CHECK(v.disc_odd == (l.det() % 2 != 0));
        CHECK(v.verdict == (v.disc_odd ? Verdict::NontrivialPi6 : Verdict::Trivial));
        CHECK(v.lift);
    }
}

TEST_CASE("nontrivial verdicts carry passing evidence") {
    for (const IntMatrix& g : {IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 1}, {1, 4}}, IntMatrix{{4, 1}, {1, 2}}}) {
        const HomotopyVerdict v = classify(lattice(g));
        REQUIRE(v.verdict == Verdict::NontrivialPi6);
        CHECK(passed(v, "rank2_lift"));
        CHECK(passed(v, "top_form_congruence"));
        CHECK(passed(v, "lift_substitution"));
        for (const auto& e : v.evidence) CHECK(e.passed);
    }
}

TEST_CASE("higher rank") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 3; ++i) {
        const HomotopyVerdict v = classify(lattice(testing::random_even_gram(rng, 3)));
        CHECK(v.verdict == Verdict::FiltrationGt2HenceTrivial);
        CHECK(passed(v, "general_lift"));
        CHECK(passed(v, "top_degree_collapse"));
    }
}

TEST_CASE("rank eight") {
    // E8, the smallest discriminant in rank 8; 1 + 2^8 + ... + 10^8 classes.
    const IntMatrix e8 = {{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                          {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                          {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2}};
    const EvenLattice l = lattice(e8);
    CHECK(l.det() == 1);
    try {
        classify(l);
        FAIL("expected the default cap to refuse 10^8 classes");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrderOverflow);
    }
    EnumerationOptions wide;
    wide.cap = 2'000'000'000;
    wide.threads = 4;
    const HomotopyVerdict v = classify(l, wide);
    CHECK(v.verdict == Verdict::FiltrationGt2);
    CHECK(passed(v, "general_lift"));
}
