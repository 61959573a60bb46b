#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nileta/error.hpp"
#include "nileta/lattice.hpp"
#include "nileta/oracle.hpp"
#include "support.hpp"

#include <set>

using namespace nileta;
using testing::lattice;
using testing::q;

namespace {

ErrorCode code_of(const IntMatrix& g) {
    try {
        validate_even_lattice(g);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a validation error");
    return ErrorCode::InternalMismatch;
}

RationalMatrix to_rational(const IntMatrix& m) {
    RationalMatrix out(m.size(), RationalVector(m[0].size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) out[i][j] = make_rational(m[i][j]);
    return out;
}

}  // namespace

TEST_CASE("validation") {
    const EvenLattice a2 = lattice({{2, 1}, {1, 2}});
    CHECK(a2.rank() == 2);
    CHECK(a2.det() == 3);
    CHECK(lattice({{2, 0}, {0, 2}}).det() == 4);
    CHECK(code_of({{1, 0}, {0, 2}}) == ErrorCode::NotEvenDiagonal);
    CHECK(code_of({{2, 1}, {0, 2}}) == ErrorCode::NotSymmetric);
    CHECK(code_of({{2, 3}, {3, 2}}) == ErrorCode::NotPositiveDefinite);
    CHECK(code_of({{-2}}) == ErrorCode::NotPositiveDefinite);
    CHECK(code_of({{2, 1}}) == ErrorCode::NotSquare);
    try {
        validate_even_lattice({{2, 0}, {0, 3}});
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("smith normal form") {
    CHECK(smith_normal_form({{2, 1}, {1, 2}}).diag == IntVector{1, 3});
    CHECK(smith_normal_form({{2, 0}, {0, 4}}).diag == IntVector{2, 4});
    CHECK(smith_normal_form(identity_matrix(3)).diag == IntVector{1, 1, 1});
    CHECK(smith_normal_form({{4, 0}, {0, 6}}).diag == IntVector{2, 12});

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = 1 + trial % 4;
        const IntMatrix g = testing::random_even_gram(rng, r);
        const SmithDecomposition snf = smith_normal_form(g);
        const IntMatrix prod = multiply(multiply(snf.S, g), snf.T);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) CHECK(prod[i][j] == (i == j ? snf.diag[i] : 0));
        CHECK(abs(determinant(snf.S)) == 1);
        CHECK(abs(determinant(snf.T)) == 1);
        for (std::size_t i = 0; i + 1 < r; ++i) CHECK(snf.diag[i + 1] % snf.diag[i] == 0);

        // S^{-1} diag T^{-1} recovers the Gram matrix.
        const RationalMatrix si = rational_inverse(snf.S);
        const RationalMatrix ti = rational_inverse(snf.T);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Rational v = 0;
                for (std::size_t k = 0; k < r; ++k) v += si[i][k] * make_rational(snf.diag[k]) * ti[k][j];
                CHECK(v == make_rational(g[i][j]));
            }
    }
    CHECK_THROWS_AS(smith_normal_form({{1, 2}, {2, 4}}), Error);
}

TEST_CASE("dual gram inverse") {
    const RationalMatrix inv = dual_gram_inverse(lattice({{2, 1}, {1, 2}}));
    CHECK(inv[0][0] == q("2/3"));
    CHECK(inv[0][1] == q("-1/3"));
    CHECK(inv[1][1] == q("2/3"));
    CHECK(dual_gram_inverse(lattice({{2}}))[0][0] == q("1/2"));

    const IntMatrix g = {{2, 1, 0}, {1, 4, -1}, {0, -1, 2}};
    const RationalMatrix gi = dual_gram_inverse(lattice(g));
    const RationalMatrix gr = to_rational(g);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            Rational v = 0;
            for (std::size_t k = 0; k < 3; ++k) v += gr[i][k] * gi[k][j];
            CHECK(v == (i == j ? 1 : 0));
        }
}

TEST_CASE("discriminant group") {
    const EvenLattice a2 = lattice({{2, 1}, {1, 2}});
    const DiscriminantGroup g1 = discriminant_group(a2, 1);
    CHECK(g1.order() == 3);
    CHECK(g1.invariant_factors() == IntVector{3});
    CHECK(discriminant_group(a2, 2).order() == 12);

    const DiscriminantGroup a1 = discriminant_group(lattice({{2}}), 1);
    CHECK(a1.order() == 2);
    std::vector<Rational> reps;
    for (const auto& v : a1.representatives()) reps.push_back(frac(v[0]));
    std::sort(reps.begin(), reps.end());
    CHECK(reps == std::vector<Rational>{0, q("1/2")});

    CHECK_THROWS_AS(discriminant_group(a2, 0), Error);
    EnumerationOptions tiny;
    tiny.cap = 10;
    try {
        discriminant_group(a2, 2, tiny);
        FAIL("expected overflow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrderOverflow);
    }
}

TEST_CASE("qbar values") {
    const EvenLattice a2 = lattice({{2, 1}, {1, 2}});
    CHECK(qbar(a2, 1, {q("2/3"), q("-1/3")}).value() == q("1/3"));
    CHECK(qbar(a2, 3, {0, 0}).is_zero());
    CHECK(qbar(lattice({{2}}), 1, {q("1/2")}).value() == q("1/4"));
    try {
        qbar(a2, 1, {q("1/2"), 0});
        FAIL("expected NotInDual");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInDual);
    }
}

TEST_CASE("qbar is well defined modulo the lattice") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> shift(-5, 5);
    for (const auto& [name, gram] : testing::catalog()) {
        const EvenLattice l = lattice(gram);
        for (std::int64_t d : {-3, -1, 1, 2, 3}) {
            const DiscriminantGroup g = discriminant_group(l, d);
            for (std::int64_t i = 0; i < g.order(); ++i) {
                RationalVector rho = g.representative(i);
                const QmodZ base = qbar(l, d, rho);
                CHECK(base == QmodZ::from_fraction(g.qbar_numerator(i), g.qbar_modulus()));
                for (auto& x : rho) x += shift(rng);
                CHECK(qbar(l, d, rho) == base);
            }
        }
    }
}

TEST_CASE("order multiplicativity") {
    for (const auto& [name, gram] : testing::catalog()) {
        const EvenLattice l = lattice(gram);
        const std::int64_t base = discriminant_group(l, 1).order();
        CHECK(base == l.det());
        for (std::int64_t d = -5; d <= 5; ++d) {
            if (d == 0) continue;
            std::int64_t expected = base;
            for (std::size_t i = 0; i < l.rank(); ++i) expected *= d < 0 ? -d : d;
            CHECK(discriminant_group(l, d).order() == expected);
        }
    }
}

TEST_CASE("representatives are distinct dual classes matching brute force") {
    std::mt19937_64 rng(3);
    std::vector<IntMatrix> grams;
    for (const auto& [name, gram] : testing::catalog()) grams.push_back(gram);
    for (int i = 0; i < 4; ++i) grams.push_back(testing::random_even_gram(rng, 3));
    for (const auto& gram : grams) {
        const EvenLattice l = lattice(gram);
        for (std::int64_t d : {-2, 1, 2}) {
            if (oracle::enumerate_dual_classes(l, 1).size() * 8 > 200000) continue;
            std::multiset<Rational> ours, brute;
            const DiscriminantGroup g = discriminant_group(l, d);
            for (std::int64_t i = 0; i < g.order(); ++i) ours.insert(qbar(l, d, g.representative(i)).value());
            for (const auto& c : oracle::enumerate_dual_classes(l, d)) brute.insert(c.qbar);
            CHECK(ours == brute);
        }
    }
}

TEST_CASE("qbar multiset does not depend on the Smith transform") {
    // With D = diag(1, 7), V = [[-1, 0], [c, 1]] and W = [[-1, 0], [7c, 1]]
    // satisfy W D V = D, so (W S, T V) is another Smith decomposition.
    const EvenLattice l = lattice({{2, 1}, {1, 4}});
    const SmithDecomposition snf = smith_normal_form(l.gram());
    REQUIRE(snf.diag == IntVector{1, 7});
    const std::int64_t c = 2;
    SmithDecomposition alt;
    alt.S = multiply({{-1, 0}, {7 * c, 1}}, snf.S);
    alt.T = multiply(snf.T, {{-1, 0}, {c, 1}});
    alt.diag = snf.diag;
    REQUIRE(multiply(multiply(alt.S, l.gram()), alt.T) == IntMatrix{{1, 0}, {0, 7}});
    REQUIRE(alt.T != snf.T);
    for (std::int64_t d : {1, 2, -3}) {
        std::multiset<Rational> a, b, brute;
        const DiscriminantGroup ga = discriminant_group(l, d, snf);
        const DiscriminantGroup gb = discriminant_group(l, d, alt);
        for (std::int64_t i = 0; i < ga.order(); ++i) a.insert(make_rational(ga.qbar_numerator(i), ga.qbar_modulus()));
        for (std::int64_t i = 0; i < gb.order(); ++i) b.insert(make_rational(gb.qbar_numerator(i), gb.qbar_modulus()));
        for (const auto& cls : oracle::enumerate_dual_classes(l, d)) brute.insert(cls.qbar);
        CHECK(a == b);
        CHECK(a == brute);
    }
    SmithDecomposition broken = snf;
    broken.diag = {1, 5};
    CHECK_THROWS_AS(discriminant_group(l, 1, broken), Error);
}

TEST_CASE("numerator sum and histogram are thread independent") {
    std::mt19937_64 rng(5);
    const EvenLattice l = lattice(testing::random_even_gram(rng, 3));
    for (std::int64_t d : {1, 3, -4}) {
        const DiscriminantGroup g = discriminant_group(l, d);
        const auto one = qbar_numerator_sum(g, 1);
        const auto hist = qbar_histogram(g, 1);
        for (unsigned t : {2u, 3u, 8u}) {
            CHECK(qbar_numerator_sum(g, t) == one);
            CHECK(qbar_histogram(g, t) == hist);
        }
    }
}
