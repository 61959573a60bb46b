#include "nileta/classify.hpp"

#include "nileta/error.hpp"
#include "nileta/qseries.hpp"

namespace nileta {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::NontrivialPi6: return "NONTRIVIAL_PI6";
        case Verdict::Trivial: return "TRIVIAL";
        case Verdict::FiltrationGt2: return "FILTRATION_GT_2";
        case Verdict::FiltrationGt2HenceTrivial: return "FILTRATION_GT_2_HENCE_TRIVIAL";
    }
    return "UNKNOWN";
}

namespace {

void require(HomotopyVerdict& out, EvidenceItem item) {
    const bool ok = item.passed;
    const std::string what = item.check + ": " + item.detail;
    out.evidence.push_back(std::move(item));
    if (!ok) fail(ErrorCode::CertificationFailure, "classification evidence failed: " + what);
}

std::map<std::int64_t, QmodZ> sums_up_to(const EvenLattice& lattice, std::map<std::int64_t, QmodZ> known,
                                         std::int64_t order, const EnumerationOptions& options) {
    for (std::int64_t d = 1; d <= order; ++d)
        if (!known.count(d)) known.emplace(d, discriminant_sum(lattice, d, options));
    return known;
}

}  // namespace

HomotopyVerdict classify(const EvenLattice& lattice, const EnumerationOptions& options) {
    HomotopyVerdict out;
    out.rank = lattice.rank();
    out.disc = lattice.det();
    out.disc_odd = out.disc % 2 != 0;
    const std::size_t r = out.rank;

    if (r == 1) {
        out.verdict = Verdict::Trivial;
        out.evidence.push_back({"stem", true, "pi_4^S = 0"});
        return out;
    }

    if (r == 2) {
        const PolynomialLift lift = rank2_lift(lattice, options);
        require(out, {"rank2_lift", true,
                      "S(d) = alpha' d^3 + |dis| d / 4 mod Z for d = 1.." + std::to_string(lift.certified_range) +
                          ", alpha' = " + to_string(lift.alpha_prime_exact)});

        const auto sums = sums_up_to(lattice, lift.sums, kClassifyOrder, options);
        const QSeries f = f_invariant_series(r, sums, kClassifyLevel, kClassifyOrder);
        const Rational alpha = lift.alpha_prime_exact;
        const Rational beta = Rational(Integer(static_cast<long>(lattice.det()))) / 4;
        const QSeries substituted = divisor_series(kClassifyLevel, kClassifyOrder, 1, 1, [&](std::int64_t d) -> Rational {
            const Rational dq(Integer(static_cast<long>(d)));
            return alpha * dq * dq * dq + beta * dq;
        });
        require(out, {"lift_substitution", (f + substituted).is_integral(),
                      "f + sum (zeta^{-n/d} + zeta^{n/d}) (alpha' d^3 + |dis| d / 4) q^n integral at N = " +
                          std::to_string(kClassifyLevel) + ", order " + std::to_string(kClassifyOrder)});

        const QSeries shifted = f + Rational(Integer(static_cast<long>(lattice.det()))) *
                                        nu_squared_series(kClassifyLevel, kClassifyOrder);
        const CongruenceVerdict member =
            divided_congruence_member(shifted, {top_form_series(2, kClassifyLevel, kClassifyOrder)});
        require(out, {"top_form_congruence", member.member_up_to_order,
                      "f + |dis| nu^2 lies in Z[[q]] + Q * top form up to order " + std::to_string(kClassifyOrder)});

        out.evidence.push_back({"disc_parity", true, std::string("|dis| = ") + std::to_string(out.disc) +
                                                         (out.disc_odd ? " is odd" : " is even")});
        out.verdict = out.disc_odd ? Verdict::NontrivialPi6 : Verdict::Trivial;
        out.lift = lift;
        return out;
    }

    const PolynomialLift lift = general_lift(lattice, kClassifyMaxTwist, options);
    const bool beta_ok = is_integer(2 * lift.beta.value());
    const bool gamma_ok = is_integer(12 * lift.gamma.value());
    require(out, {"general_lift", beta_ok && gamma_ok,
                  "alpha = " + to_string(lift.alpha) + ", beta = " + to_string(lift.beta) + ", gamma = " +
                      to_string(lift.gamma) + " certified for d = 1.." + std::to_string(lift.certified_range)});

    // 2 beta, 12 gamma integral and r >= 3 give S(d) = (alpha + beta + gamma) d^{r+1} mod Z.
    const QmodZ total = lift.alpha + lift.beta + lift.gamma;
    bool collapses = true;
    for (const auto& [d, s] : lift.sums) {
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), Integer(static_cast<long>(d)).get_mpz_t(), r + 1);
        collapses = collapses && QmodZ(total.value() * Rational(p)) == s;
    }
    require(out, {"top_degree_collapse", collapses,
                  "S(d) = (alpha + beta + gamma) d^{r+1} mod Z on the certified range"});

    out.evidence.push_back({"disc_parity", true, std::string("|dis| = ") + std::to_string(out.disc) +
                                                     (out.disc_odd ? " is odd" : " is even")});
    out.verdict = r <= 7 ? Verdict::FiltrationGt2HenceTrivial : Verdict::FiltrationGt2;
    out.lift = lift;
    return out;
}

}  // namespace nileta
