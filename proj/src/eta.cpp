#include "nileta/eta.hpp"

#include <string>

#include "nileta/error.hpp"

namespace nileta {

namespace {

Rational pow_int(std::int64_t base, std::size_t exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), Integer(static_cast<long>(base)).get_mpz_t(), exp);
    return Rational(out);
}

Rational to_q(std::int64_t v) { return Rational(Integer(static_cast<long>(v))); }

}  // namespace

QmodZ discriminant_sum(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options) {
    const DiscriminantGroup group = discriminant_group(lattice, twist, options);
    const std::int64_t num = qbar_numerator_sum(group, options.threads);
    return QmodZ::from_fraction(num, group.qbar_modulus());
}

QmodZ eta_adiabatic(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options) {
    const DiscriminantGroup group = discriminant_group(lattice, twist, options);
    const QmodZ sum = QmodZ::from_fraction(qbar_numerator_sum(group, options.threads), group.qbar_modulus());
    const QmodZ value = QmodZ::from_fraction(group.order(), 2) - sum;
    const bool flip = twist < 0 && lattice.rank() % 2 == 1;
    return flip ? -value : value;
}

Rational hurwitz_zeta_at_zero(const Rational& x) {
    if (x <= 0 || x > 1)
        fail(ErrorCode::DomainError, "zeta(0, x) needs 0 < x <= 1, got " + to_string(x));
    return Rational(1, 2) - x;
}

Rational BoxSumPolynomial::evaluate(std::int64_t d) const {
    return top * pow_int(d, rank + 1) + mid * pow_int(d, rank) + low * pow_int(d, rank - 1);
}

BoxSumPolynomial box_sum_polynomial(const EvenLattice& lattice) {
    const SmithDecomposition smith = smith_normal_form(lattice.gram());
    const std::size_t r = lattice.rank();
    std::vector<RationalVector> w(r, RationalVector(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < r; ++c) w[i][c] = to_q(smith.T[c][i]);

    Rational prod = 1;
    for (auto di : smith.diag) prod *= to_q(di);

    BoxSumPolynomial poly;
    poly.rank = r;
    for (std::size_t i = 0; i < r; ++i) {
        const Rational q = lattice.quadratic(w[i]);
        const Rational di = to_q(smith.diag[i]);
        poly.top += q * prod / 3;
        poly.mid += q * prod / (2 * di);
        poly.low += q * prod / (6 * di * di);
    }
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j) {
            const Rational b = lattice.bilinear(w[i], w[j]);
            const Rational di = to_q(smith.diag[i]);
            const Rational dj = to_q(smith.diag[j]);
            const Rational scale = b * prod / (4 * di * dj);
            poly.top += scale * di * dj;
            poly.mid += scale * (di + dj);
            poly.low += scale;
        }
    return poly;
}

QmodZ PolynomialLift::evaluate(std::int64_t d) const {
    if (rank2_form) return QmodZ(alpha.value() * pow_int(d, 3) + beta.value() * pow_int(d, 1));
    return QmodZ(alpha.value() * pow_int(d, rank + 1) + beta.value() * pow_int(d, rank) +
                 gamma.value() * pow_int(d, rank - 1));
}

PolynomialLift rank2_lift(const EvenLattice& lattice, const EnumerationOptions& options) {
    if (lattice.rank() != 2)
        fail(ErrorCode::RankMismatch, "rank-2 lift needs a rank-2 lattice, got rank " + std::to_string(lattice.rank()));
    const BoxSumPolynomial poly = box_sum_polynomial(lattice);
    const Rational beta = Rational(to_q(lattice.det())) / 4;
    const Rational alpha_prime = poly.evaluate(1) - beta;

    if (!is_integer(12 * alpha_prime))
        fail(ErrorCode::CertificationFailure, "12 alpha' is not integral: alpha' = " + to_string(alpha_prime));
    // Cubic with zero constant term: integer valued on Z iff integer at d = 1, 2, 3.
    for (std::int64_t d = 1; d <= 3; ++d) {
        const Rational diff = poly.evaluate(d) - alpha_prime * pow_int(d, 3) - beta * to_q(d);
        if (!is_integer(diff))
            fail(ErrorCode::CertificationFailure,
                 "closed form differs from alpha' d^3 + |dis| d / 4 by a non-integer at d = " + std::to_string(d));
    }

    PolynomialLift lift;
    lift.rank = 2;
    lift.rank2_form = true;
    lift.alpha = QmodZ(alpha_prime);
    lift.beta = QmodZ(beta);
    lift.gamma = QmodZ();
    lift.alpha_prime_exact = alpha_prime;
    for (std::int64_t d = 1; d <= kRank2CertifiedRange; ++d) {
        const QmodZ s = discriminant_sum(lattice, d, options);
        lift.sums.emplace(d, s);
        if (lift.evaluate(d) != s)
            fail(ErrorCode::CertificationFailure, "rank-2 lift disagrees with enumeration at d = " + std::to_string(d) +
                                                      ": S(d) = " + to_string(s) + ", lift = " +
                                                      to_string(lift.evaluate(d)));
    }
    lift.certified_range = kRank2CertifiedRange;
    return lift;
}

PolynomialLift general_lift(const EvenLattice& lattice, std::int64_t max_twist, const EnumerationOptions& options) {
    if (max_twist < 6) fail(ErrorCode::DomainError, "general lift needs D_max >= 6");
    const std::size_t r = lattice.rank();

    PolynomialLift lift;
    lift.rank = r;
    for (std::int64_t d = 1; d <= max_twist; ++d) lift.sums.emplace(d, discriminant_sum(lattice, d, options));

    const Integer alpha_cap = 12 * Integer(static_cast<long>(lattice.det()));
    std::int64_t furthest = 0;
    for (std::int64_t b = 0; b < 2; ++b)
        for (std::int64_t g = 0; g < 12; ++g) {
            PolynomialLift candidate = lift;
            candidate.beta = QmodZ::from_fraction(b, 2);
            candidate.gamma = QmodZ::from_fraction(g, 12);
            candidate.alpha = lift.sums.at(1) - candidate.beta - candidate.gamma;
            if (!is_integer(candidate.alpha.value() * Rational(alpha_cap))) continue;
            std::int64_t d = 1;
            while (d <= max_twist && candidate.evaluate(d) == lift.sums.at(d)) ++d;
            if (d > max_twist) {
                candidate.certified_range = max_twist;
                return candidate;
            }
            furthest = std::max(furthest, d);
        }
    fail(ErrorCode::FitFailure, "no admissible (alpha, beta, gamma) reproduces S(d); best candidate fails at d = " +
                                    std::to_string(furthest == 0 ? 1 : furthest));
}

}  // namespace nileta
