#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nileta/error.hpp"
#include "nileta/eta.hpp"
#include "nileta/spectral.hpp"
#include "support.hpp"

using namespace nileta;
using testing::lattice;
using testing::q;
using testing::qz;

namespace {

std::vector<Rational> exact_values(const SpectrumReport& report) {
    std::vector<Rational> out;
    for (const auto& e : report.entries)
        for (std::int64_t m = 0; m < e.multiplicity; ++m) out.push_back(std::get<Rational>(e.value));
    return out;
}

}  // namespace

TEST_CASE("gram eigenvalues") {
    const GramSpectrum diag = gram_eigenvalues(lattice({{2, 0}, {0, 2}}));
    CHECK(diag.eigenvalues[0] == doctest::Approx(2.0));
    CHECK(diag.eigenvalues[1] == doctest::Approx(2.0));
    const GramSpectrum a2 = gram_eigenvalues(lattice({{2, 1}, {1, 2}}));
    CHECK(a2.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(a2.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        const EvenLattice l = lattice(testing::random_even_gram(rng, 1 + i % 5));
        const GramSpectrum s = gram_eigenvalues(l);
        double sum = 0, prod = 1;
        for (double v : s.eigenvalues) {
            CHECK(v > 0);
            sum += v;
            prod *= v;
        }
        CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
        CHECK(std::abs(sum - static_cast<double>(l.trace())) < 1e-9);
        CHECK(std::abs(prod - static_cast<double>(l.det())) < 1e-9 * static_cast<double>(l.det()));
    }
}

TEST_CASE("vertical spectrum of A1") {
    const SpectrumReport report = vertical_spectrum(lattice({{2}}), 1, 3);
    CHECK(report.tag == OperatorTag::VerticalSquared);
    std::vector<double> values;
    for (const auto& e : report.entries) {
        CHECK(e.multiplicity == 2);
        values.push_back(e.approx());
    }
    const std::vector<double> expected = {0, 4, 4, 8, 8, 12, 12, 16};
    REQUIRE(values.size() == expected.size());
    for (std::size_t i = 0; i < values.size(); ++i) CHECK(values[i] == doctest::Approx(expected[i]));
}

TEST_CASE("vertical spectrum invariants") {
    std::mt19937_64 rng(43);
    std::vector<IntMatrix> grams;
    for (const auto& [name, gram] : testing::catalog()) grams.push_back(gram);
    grams.push_back(testing::random_even_gram(rng, 3));
    for (const auto& gram : grams) {
        const EvenLattice l = lattice(gram);
        const GramSpectrum nu = gram_eigenvalues(l);
        for (std::int64_t d : {-3, -1, 1, 2}) {
            const std::int64_t order = discriminant_group(l, d).order();
            const SpectrumReport report = vertical_spectrum(l, d, 2);
            const std::int64_t sign = d < 0 ? -1 : 1;
            const double ad = static_cast<double>(d < 0 ? -d : d);
            double previous = -1;
            for (const auto& e : report.entries) {
                REQUIRE(e.label);
                CHECK(e.multiplicity == order);
                CHECK(e.approx() >= previous - 1e-12);
                previous = e.approx();
                double rebuilt = 0;
                bool kernel_label = true;
                for (std::size_t k = 0; k < l.rank(); ++k) {
                    rebuilt += 2 * ad * nu.eigenvalues[k] * static_cast<double>(e.label->levels[k]) +
                               ad * nu.eigenvalues[k] * static_cast<double>(1 - sign * e.label->chirality[k]);
                    kernel_label = kernel_label && e.label->levels[k] == 0 && e.label->chirality[k] == sign;
                }
                CHECK(e.approx() == doctest::Approx(rebuilt).epsilon(1e-12));
                CHECK(e.approx() >= 0);
                CHECK((std::abs(e.approx()) < 1e-9) == kernel_label);
            }
            CHECK(kernel_dimension(l, d) == order);
        }
    }
}

TEST_CASE("kernel dimension") {
    CHECK(kernel_dimension(lattice({{2}}), 1) == 2);
    CHECK(kernel_dimension(lattice({{2, 1}, {1, 2}}), 2) == 12);
    CHECK(kernel_dimension(lattice({{2, 0}, {0, 2}}), -1) == 4);
}

TEST_CASE("vertical eigenvalue count grows with the cutoff") {
    const EvenLattice l = lattice({{2, 1}, {1, 4}});
    const SpectrumReport report = vertical_spectrum(l, 1, 12);
    std::int64_t previous = 0;
    for (double cutoff = 5; cutoff <= 40; cutoff += 5) {
        std::int64_t count = 0;
        for (const auto& e : report.entries)
            if (e.approx() <= cutoff) count += e.multiplicity;
        CHECK(count >= previous);
        previous = count;
    }
    CHECK(previous > 0);
}

TEST_CASE("base spectrum") {
    CHECK(exact_values(base_spectrum(lattice({{2}}), 1, 0, 0)) == std::vector<Rational>{0, q("1/4")});
    CHECK(exact_values(base_spectrum(lattice({{2, 1}, {1, 2}}), 1, -1, 0)) ==
          std::vector<Rational>{-1, q("-2/3"), q("-2/3"), 0, q("1/3"), q("1/3")});

    // d -> -d: the report is negated with Qbar_1 replaced by Qbar_{-1} = 3/4 on the nonzero class.
    std::vector<Rational> flipped = exact_values(base_spectrum(lattice({{2}}), -1, 0, 0));
    CHECK(flipped == std::vector<Rational>{q("-3/4"), 0});
}

TEST_CASE("base eta equals adiabatic eta") {
    CHECK(base_eta_reduced(lattice({{2}}), 1) == qz("3/4"));
    CHECK(base_eta_reduced(lattice({{2, 1}, {1, 2}}), 1) == qz("5/6"));
    CHECK(base_eta_reduced(lattice({{2, 0}, {0, 2}}), 1).is_zero());
    std::mt19937_64 rng(47);
    std::vector<IntMatrix> grams;
    for (const auto& [name, gram] : testing::catalog()) grams.push_back(gram);
    for (int i = 0; i < 4; ++i) grams.push_back(testing::random_even_gram(rng, 2 + i % 2));
    for (const auto& gram : grams) {
        const EvenLattice l = lattice(gram);
        for (std::int64_t d = -4; d <= 4; ++d)
            if (d != 0) CHECK(base_eta_reduced(l, d) == eta_adiabatic(l, d));
    }
}
