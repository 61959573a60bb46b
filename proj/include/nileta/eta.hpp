#pragma once

#include <cstdint>
#include <map>

#include "nileta/lattice.hpp"

namespace nileta {

/// S(d) = sum over dis(Lambda_d) of Qbar_d(rho), mod Z. Computed by enumeration.
QmodZ discriminant_sum(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options = {});

/// Adiabatic limit of the reduced eta invariant of the Dirac operator twisted
/// by lambda^d: sign(d)^r * (|dis Lambda_d| / 2 - S(d)) mod Z.
QmodZ eta_adiabatic(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options = {});

/// zeta(0, x) = 1/2 - x for 0 < x <= 1.
Rational hurwitz_zeta_at_zero(const Rational& x);

/// Exact coefficients of the box sum
///   sum_{1 <= k_i <= d d_i} Q_d(sum_i k_i u_i) = a_top d^{r+1} + a_mid d^r + a_low d^{r-1}
/// over the Smith basis, valid as a polynomial identity for d >= 1.
struct BoxSumPolynomial {
    std::size_t rank = 0;
    Rational top;
    Rational mid;
    Rational low;

    Rational evaluate(std::int64_t d) const;
};

BoxSumPolynomial box_sum_polynomial(const EvenLattice& lattice);

/// S(d) = alpha d^{r+1} + beta d^r + gamma d^{r-1} mod Z for 1 <= d <= certified_range.
struct PolynomialLift {
    std::size_t rank = 0;
    // Coefficients as reported: alpha/beta/gamma are residues in [0,1).
    QmodZ alpha;
    QmodZ beta;
    QmodZ gamma;
    // Rank 2 only: the exact alpha' from the closed form (not reduced).
    Rational alpha_prime_exact;
    // rank2_lift uses S(d) = alpha d^3 + beta d with beta = |dis|/4 instead of
    // the generic alpha d^{r+1} + beta d^r + gamma d^{r-1}.
    bool rank2_form = false;
    std::int64_t certified_range = 0;
    // Residues S(d) used for certification, d = 1..certified_range.
    std::map<std::int64_t, QmodZ> sums;

    QmodZ evaluate(std::int64_t d) const;
};

inline constexpr std::int64_t kRank2CertifiedRange = 12;

/// Rank-2 lift alpha' d^3 + (|dis|/4) d from the closed form, certified against
/// enumeration for d = 1..12. Throws RankMismatch or CertificationFailure.
PolynomialLift rank2_lift(const EvenLattice& lattice, const EnumerationOptions& options = {});

/// Fits alpha (denominator | 12 |dis|), beta (| 2), gamma (| 12) to S(d) on
/// d = 1..max_twist. Throws FitFailure, DomainError (max_twist < 6).
PolynomialLift general_lift(const EvenLattice& lattice, std::int64_t max_twist,
                            const EnumerationOptions& options = {});

}  // namespace nileta
