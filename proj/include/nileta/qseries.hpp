#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nileta/cyclotomic.hpp"
#include "nileta/lattice.hpp"

namespace nileta {

/// Truncated q-series sum_{n <= order} a_n q^n over Q(zeta_N). The constant
/// term may be unknown (std::nullopt), e.g. the unspecified c_k of an
/// Eisenstein series.
class QSeries {
public:
    QSeries(CyclotomicField field, std::int64_t order);

    static QSeries zero(std::int64_t level, std::int64_t order) { return QSeries(CyclotomicField(level), order); }

    const CyclotomicField& field() const { return field_; }
    std::int64_t level() const { return field_.level(); }
    std::int64_t order() const { return static_cast<std::int64_t>(coeffs_.size()); }

    const std::optional<CycloRational>& constant() const { return constant_; }
    void set_constant(std::optional<CycloRational> c);

    // 1 <= n <= order
    const CycloRational& coeff(std::int64_t n) const;
    CycloRational& coeff(std::int64_t n);

    /// All known coefficients (including a known constant term) are algebraic integers.
    bool is_integral() const;

    QSeries galois(std::int64_t a) const;
    QSeries without_constant() const;

    QSeries operator-() const;
    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const Rational& c);
    QSeries& operator*=(const CycloRational& c);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
    friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
    /// Truncated Cauchy product. Throws DomainError if a constant term is unknown.
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend bool operator==(const QSeries& a, const QSeries& b);

private:
    void check_compatible(const QSeries& o) const;

    CyclotomicField field_;
    std::optional<CycloRational> constant_;
    std::vector<CycloRational> coeffs_;
};

/// a_n = sign * sum_{d | n} (zeta^{-n/d} + parity * zeta^{n/d}) * weight(d), constant 0.
QSeries divisor_series(std::int64_t level, std::int64_t order, int sign, int parity,
                       const std::function<Rational(std::int64_t)>& weight);

/// G_k^(N) = c_k - sum_n (sum_{d|n} (zeta^{-n/d} + (-1)^k zeta^{n/d}) d^{k-1}) q^n, c_k unknown.
QSeries eisenstein_qexp(std::int64_t weight, std::int64_t level, std::int64_t order);

/// f-invariant representative -sum_n (sum_{d|n} (zeta^{-n/d} + (-1)^r zeta^{n/d}) S(d)) q^n,
/// with S(d) lifted to [0, 1). Throws MissingSum if some S(d), d <= order, is absent.
QSeries f_invariant_series(std::size_t rank, const std::map<std::int64_t, QmodZ>& sums, std::int64_t level,
                           std::int64_t order);

/// Convenience overload computing S(d) for d = 1..order by enumeration.
QSeries f_invariant_series(const EvenLattice& lattice, std::int64_t level, std::int64_t order,
                           const EnumerationOptions& options = {});

/// (1/4) sum_n (sum_{d|n} (zeta^{-n/d} + zeta^{n/d}) d) q^n.
QSeries nu_squared_series(std::int64_t level, std::int64_t order);

/// sum_n (sum_{d|n} (zeta^{-n/d} + (-1)^r zeta^{n/d}) d^{r+1}) q^n.
QSeries top_form_series(std::size_t rank, std::int64_t level, std::int64_t order);

struct CongruenceVerdict {
    bool member_up_to_order = false;
    RationalVector combination;  // lambda_i, empty when not a member
    std::optional<QSeries> residual;
    std::string caveat;
};

/// Sturm-style heuristic order ceil((r + 2) N^2 / 12).
std::int64_t recommended_order(std::size_t rank, std::int64_t level);

/// Decides whether target - sum_i lambda_i basis_i has algebraic-integer
/// coefficients up to the common order for some rational lambda.
CongruenceVerdict divided_congruence_member(const QSeries& target, const std::vector<QSeries>& basis);

using BigIntMatrix = std::vector<std::vector<Integer>>;

/// Column Hermite form: a * u = h with u unimodular and h lower echelon.
struct HermiteDecomposition {
    BigIntMatrix h;
    BigIntMatrix u;
    std::vector<std::size_t> pivot_rows;  // pivot row of column j, j < rank
};

HermiteDecomposition column_hermite_form(const BigIntMatrix& a);

/// Basis of {y : y^T a = 0} as primitive integer rows.
BigIntMatrix left_kernel(const RationalMatrix& a, std::size_t rows);

}  // namespace nileta
