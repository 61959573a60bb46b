// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <sstream>

#include "nileta/classify.hpp"
#include "nileta/error.hpp"
#include "nileta/eta.hpp"
#include "nileta/oracle.hpp"
#include "nileta/qseries.hpp"
#include "nileta/report.hpp"
#include "nileta/spectral.hpp"
#include "support.hpp"

using namespace nileta;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& what) {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
    if (!ok) ++failures;
}

template <class F>
void criterion(int id, const std::string& title, F&& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(id, ok, title + (detail.empty() ? "" : " (" + detail + ")"));
}

const std::vector<std::int64_t> kGrid = {-3, -2, -1, 1, 2, 3};

std::string gram_text(const IntMatrix& g) {
    return Json(g).dump();
}

IntMatrix random_rank3() {
    std::mt19937_64 rng(20240601);
    return testing::random_even_gram(rng, 3);
}

}  // namespace

int main() {
    const auto& catalog = testing::catalog();

    criterion(1, "eta_adiabatic equals brute force on catalog x d in -3..3", [&](std::string& detail) {
        const auto start = std::chrono::steady_clock::now();
        bool ok = true;
        int cases = 0;
        for (const auto& [name, gram] : catalog) {
            const EvenLattice l = testing::lattice(gram);
            for (std::int64_t d : kGrid) {
                ++cases;
                const QmodZ fast = eta_adiabatic(l, d);
                const QmodZ brute = oracle::eta(l, d);
                if (!(fast == brute)) {
                    ok = false;
                    detail += name + " d=" + std::to_string(d) + ": " + to_string(fast) + " vs " + to_string(brute) + "; ";
                }
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream s;
        s << cases << " cases in " << secs << " s";
        detail += s.str();
        return ok && secs < 5.0;
    });

    criterion(2, "base_eta_reduced equals eta_adiabatic on the same grid", [&](std::string& detail) {
        bool ok = true;
        for (const auto& [name, gram] : catalog) {
            const EvenLattice l = testing::lattice(gram);
            for (std::int64_t d : kGrid)
                if (!(base_eta_reduced(l, d) == eta_adiabatic(l, d))) {
                    ok = false;
                    detail += name + " d=" + std::to_string(d) + "; ";
                }
        }
        return ok;
    });

    criterion(3, "kernel_dimension = |d|^r det on the grid, (A2, 2) -> 12", [&](std::string& detail) {
        bool ok = true;
        for (const auto& [name, gram] : catalog) {
            const EvenLattice l = testing::lattice(gram);
            for (std::int64_t d : kGrid) {
                std::int64_t expected = l.det();
                for (std::size_t i = 0; i < l.rank(); ++i) expected *= d < 0 ? -d : d;
                if (kernel_dimension(l, d) != expected) {
                    ok = false;
                    detail += name + " d=" + std::to_string(d) + "; ";
                }
            }
        }
        const std::int64_t a2 = kernel_dimension(testing::lattice({{2, 1}, {1, 2}}), 2);
        detail += "A2 d=2 -> " + std::to_string(a2);
        return ok && a2 == 12;
    });

    criterion(4, "Gauss-Milgram modulus and phase r/8 at d = 1", [&](std::string& detail) {
        bool ok = true;
        double worst = 0;
        for (const auto& [name, gram] : catalog) {
            const EvenLattice l = testing::lattice(gram);
            const std::complex<double> g = oracle::gauss_sum(l);
            const double mod_err = std::abs(std::norm(g) - static_cast<double>(l.det()));
            double turns = std::arg(g) / (2 * std::numbers::pi) - static_cast<double>(l.rank()) / 8.0;
            turns -= std::round(turns);
            worst = std::max({worst, mod_err, std::abs(turns)});
            ok = ok && mod_err < 1e-9 && std::abs(turns) < 1e-9;
        }
        std::ostringstream s;
        s << "max deviation " << worst;
        detail = s.str();
        return ok;
    });

    criterion(5, "rank-2 lift: 12 alpha' integral and S(d) = alpha' d^3 + |dis| d/4 for d = 1..12", [&](std::string& detail) {
        bool ok = true;
        for (const IntMatrix& g : {IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 0}, {0, 2}}, IntMatrix{{2, 1}, {1, 4}}}) {
            const EvenLattice l = testing::lattice(g);
            const PolynomialLift lift = rank2_lift(l);
            const Rational beta = make_rational(l.det(), 4);
            bool this_ok = is_integer(12 * lift.alpha_prime_exact) && lift.certified_range >= 12;
            for (std::int64_t d = 1; d <= 12; ++d) {
                const Rational dq = make_rational(d);
                const QmodZ closed(lift.alpha_prime_exact * dq * dq * dq + beta * dq);
                this_ok = this_ok && closed == oracle::discriminant_sum(l, d);
            }
            detail += gram_text(g) + " alpha'=" + to_string(lift.alpha_prime_exact) + "; ";
            ok = ok && this_ok;
        }
        const EvenLattice two = testing::lattice({{2, 0}, {0, 2}});
        for (std::int64_t d = 1; d <= 12; ++d) ok = ok && oracle::discriminant_sum(two, d).is_zero();
        return ok;
    });

    criterion(6, "general lift certifies diag(2,2,2) and a random rank-3 lattice on d = 1..10", [&](std::string& detail) {
        bool ok = true;
        for (const IntMatrix& g : {IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, random_rank3()}) {
            const EvenLattice l = testing::lattice(g);
            const PolynomialLift lift = general_lift(l, 10);
            bool this_ok = is_integer(2 * lift.beta.value()) && is_integer(12 * lift.gamma.value()) &&
                           lift.certified_range == 10;
            for (std::int64_t d = 1; d <= 10; ++d) this_ok = this_ok && lift.evaluate(d) == discriminant_sum(l, d);
            detail += gram_text(g) + " (" + to_string(lift.alpha) + ", " + to_string(lift.beta) + ", " +
                      to_string(lift.gamma) + "); ";
            ok = ok && this_ok;
        }
        return ok;
    });

    criterion(7, "top form equals minus the Eisenstein series and is a divided-congruence member", [&](std::string& detail) {
        bool ok = true;
        for (auto [r, n] : {std::pair<std::size_t, std::int64_t>{2, 2}, {2, 3}, {3, 3}}) {
            const QSeries e = eisenstein_qexp(static_cast<std::int64_t>(r) + 2, n, 20);
            const QSeries t = top_form_series(r, n, 20);
            const CongruenceVerdict v = divided_congruence_member(t, {e});
            const bool this_ok = t == -e.without_constant() && v.member_up_to_order && v.residual &&
                                 v.residual->is_integral();
            detail += "(" + std::to_string(r) + "," + std::to_string(n) + ")" + (this_ok ? " ok; " : " failed; ");
            ok = ok && this_ok;
        }
        return ok;
    });

    criterion(8, "rank-2 reduction: f plus lift-substituted series integral, f = |dis| nu^2 mod D", [&](std::string& detail) {
        bool ok = true;
        for (const IntMatrix& g : {IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 1}, {1, 4}}}) {
            const EvenLattice l = testing::lattice(g);
            const PolynomialLift lift = rank2_lift(l);
            const Rational alpha = lift.alpha_prime_exact;
            const Rational beta = make_rational(l.det(), 4);
            const QSeries f = f_invariant_series(l, 3, 20);
            const QSeries substituted = divisor_series(3, 20, 1, 1, [&](std::int64_t d) -> Rational {
                const Rational dq = make_rational(d);
                return alpha * dq * dq * dq + beta * dq;
            });
            const bool integral = (f + substituted).is_integral();
            const QSeries nu = nu_squared_series(3, 20);
            const Rational dis = make_rational(l.det());
            const QSeries top = top_form_series(2, 3, 20);
            const bool plus = divided_congruence_member(f + dis * nu, {top}).member_up_to_order;
            const bool minus = divided_congruence_member(f - dis * nu, {top, eisenstein_qexp(2, 3, 20)}).member_up_to_order;
            detail += gram_text(g) + (integral && plus && minus ? " ok; " : " failed; ");
            ok = ok && integral && plus && minus;
        }
        return ok;
    });

    criterion(9, "classification verdicts for ranks 1, 2, 3", [&](std::string& detail) {
        const std::vector<std::pair<std::string, std::string>> expected = {
            {"A2", "NONTRIVIAL_PI6"}, {"disc7", "NONTRIVIAL_PI6"}, {"2A1", "TRIVIAL"},
            {"diag24", "TRIVIAL"},    {"3A1", "FILTRATION_GT_2_HENCE_TRIVIAL"}, {"A1", "TRIVIAL"}};
        bool ok = true;
        for (const auto& [name, verdict] : expected) {
            const HomotopyVerdict v = classify(resolve_lattice(name));
            const std::string got(to_string(v.verdict));
            detail += name + "=" + got + "; ";
            ok = ok && got == verdict;
        }
        return ok;
    });

    criterion(10, "reports byte-identical across runs and thread counts", [&](std::string& detail) {
        std::vector<RunConfig> configs;
        for (const auto& [name, gram] : catalog) {
            for (std::int64_t d : kGrid) {
                RunConfig c;
                c.lattice = name;
                c.twist = d;
                c.command = Command::Eta;
                c.oracle = true;
                configs.push_back(c);
                c.oracle = false;
                c.command = Command::Spectrum;
                configs.push_back(c);
            }
            RunConfig c;
            c.lattice = name;
            c.command = Command::Classify;
            configs.push_back(c);
            c.command = Command::FInvariant;
            configs.push_back(c);
            c.command = Command::Congruence;
            configs.push_back(c);
        }
        RunConfig random;
        random.lattice = gram_text(random_rank3());
        random.command = Command::Eta;
        configs.push_back(random);
        bool ok = true;
        for (const auto& base : configs) {
            RunConfig many = base;
            many.enumeration.threads = 4;
            const RunResult first = run(base);
            const std::string a = first.report.dump(2);
            const std::string b = run(base).report.dump(2);
            const std::string c = run(many).report.dump(2);
            if (first.exit_code != 0 || a != b || a != c) {
                ok = false;
                detail += base.lattice + " d=" + std::to_string(base.twist) + "; ";
            }
        }
        detail += std::to_string(configs.size()) + " configurations";
        return ok;
    });

    return failures;
}
