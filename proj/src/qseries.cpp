#include "nileta/qseries.hpp"

#include <string>

#include "nileta/error.hpp"
#include "nileta/eta.hpp"

namespace nileta {

QSeries::QSeries(CyclotomicField field, std::int64_t order)
    : field_(std::move(field)), constant_(CycloRational(field_)) {
    if (order < 1) fail(ErrorCode::DomainError, "series order must be >= 1");
    coeffs_.assign(static_cast<std::size_t>(order), CycloRational(field_));
}

void QSeries::set_constant(std::optional<CycloRational> c) {
    if (c && !(c->field() == field_)) fail(ErrorCode::InconsistentLevels, "constant term from another level");
    constant_ = std::move(c);
}

const CycloRational& QSeries::coeff(std::int64_t n) const {
    if (n < 1 || n > order()) fail(ErrorCode::DomainError, "coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(n - 1)];
}

CycloRational& QSeries::coeff(std::int64_t n) {
    if (n < 1 || n > order()) fail(ErrorCode::DomainError, "coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(n - 1)];
}

bool QSeries::is_integral() const {
    if (constant_ && !constant_->is_algebraic_integer()) return false;
    for (const auto& c : coeffs_)
        if (!c.is_algebraic_integer()) return false;
    return true;
}

QSeries QSeries::galois(std::int64_t a) const {
    QSeries out = *this;
    if (out.constant_) out.constant_ = out.constant_->galois(a);
    for (auto& c : out.coeffs_) c = c.galois(a);
    return out;
}

QSeries QSeries::without_constant() const {
    QSeries out = *this;
    out.constant_ = CycloRational(field_);
    return out;
}

void QSeries::check_compatible(const QSeries& o) const {
    if (!(field_ == o.field_)) fail(ErrorCode::InconsistentLevels, "series at different levels");
    if (order() != o.order()) fail(ErrorCode::InconsistentOrders, "series truncated at different orders");
}

QSeries QSeries::operator-() const {
    QSeries out = *this;
    if (out.constant_) out.constant_ = -*out.constant_;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    check_compatible(o);
    if (constant_ && o.constant_)
        *constant_ += *o.constant_;
    else
        constant_.reset();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Rational& c) {
    if (constant_) *constant_ *= c;
    for (auto& v : coeffs_) v *= c;
    return *this;
}

QSeries& QSeries::operator*=(const CycloRational& c) {
    if (constant_) *constant_ *= c;
    for (auto& v : coeffs_) v *= c;
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    a.check_compatible(b);
    if (!a.constant_ || !b.constant_)
        fail(ErrorCode::DomainError, "product of series with an unknown constant term");
    QSeries out(a.field_, a.order());
    out.constant_ = *a.constant_ * *b.constant_;
    for (std::int64_t n = 1; n <= a.order(); ++n) {
        CycloRational sum = *a.constant_ * b.coeff(n) + a.coeff(n) * *b.constant_;
        for (std::int64_t i = 1; i < n; ++i) sum += a.coeff(i) * b.coeff(n - i);
        out.coeff(n) = sum;
    }
    return out;
}

bool operator==(const QSeries& a, const QSeries& b) {
    return a.field_ == b.field_ && a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
}

QSeries divisor_series(std::int64_t level, std::int64_t order, int sign, int parity,
                       const std::function<Rational(std::int64_t)>& weight) {
    QSeries out(CyclotomicField(level), order);
    const auto& field = out.field();
    for (std::int64_t n = 1; n <= order; ++n) {
        CycloRational sum(field);
        for (std::int64_t d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            const Rational w = weight(d);
            if (w == 0) continue;
            CycloRational term = CycloRational::zeta_power(field, -(n / d));
            if (parity > 0)
                term += CycloRational::zeta_power(field, n / d);
            else
                term -= CycloRational::zeta_power(field, n / d);
            sum += term * w;
        }
        out.coeff(n) = sign > 0 ? sum : -sum;
    }
    return out;
}

namespace {

Rational power_of(std::int64_t base, std::int64_t exp) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), Integer(static_cast<long>(base)).get_mpz_t(), static_cast<unsigned long>(exp));
    return Rational(out);
}

}  // namespace

QSeries eisenstein_qexp(std::int64_t weight, std::int64_t level, std::int64_t order) {
    if (weight < 1) fail(ErrorCode::DomainError, "Eisenstein weight must be >= 1");
    QSeries out = divisor_series(level, order, -1, weight % 2 == 0 ? 1 : -1,
                                 [&](std::int64_t d) { return power_of(d, weight - 1); });
    out.set_constant(std::nullopt);
    return out;
}

QSeries f_invariant_series(std::size_t rank, const std::map<std::int64_t, QmodZ>& sums, std::int64_t level,
                           std::int64_t order) {
    for (std::int64_t d = 1; d <= order; ++d)
        if (!sums.count(d)) fail(ErrorCode::MissingSum, "S(d) missing for d = " + std::to_string(d));
    return divisor_series(level, order, -1, rank % 2 == 0 ? 1 : -1,
                          [&](std::int64_t d) { return sums.at(d).value(); });
}

QSeries f_invariant_series(const EvenLattice& lattice, std::int64_t level, std::int64_t order,
                           const EnumerationOptions& options) {
    std::map<std::int64_t, QmodZ> sums;
    for (std::int64_t d = 1; d <= order; ++d) sums.emplace(d, discriminant_sum(lattice, d, options));
    return f_invariant_series(lattice.rank(), sums, level, order);
}

QSeries nu_squared_series(std::int64_t level, std::int64_t order) {
    return divisor_series(level, order, 1, 1, [](std::int64_t d) { return make_rational(d, 4); });
}

QSeries top_form_series(std::size_t rank, std::int64_t level, std::int64_t order) {
    QSeries out = divisor_series(level, order, 1, rank % 2 == 0 ? 1 : -1, [&](std::int64_t d) {
        return power_of(d, static_cast<std::int64_t>(rank) + 1);
    });
    if (!out.is_integral()) fail(ErrorCode::InternalMismatch, "top form series has non-integral coefficients");
    return out;
}

std::int64_t recommended_order(std::size_t rank, std::int64_t level) {
    const std::int64_t num = static_cast<std::int64_t>(rank + 2) * level * level;
    return (num + 11) / 12;
}

HermiteDecomposition column_hermite_form(const BigIntMatrix& a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    HermiteDecomposition out;
    out.h = a;
    out.u.assign(cols, std::vector<Integer>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) out.u[i][i] = 1;
    auto& h = out.h;
    auto& u = out.u;

    // (col_p, col_j) <- (x col_p + y col_j, (b/g) col_p - (a/g) col_j); determinant -1.
    auto combine = [&](std::size_t p, std::size_t j, const Integer& x, const Integer& y, const Integer& bg,
                       const Integer& ag) {
        for (std::size_t r = 0; r < rows; ++r) {
            const Integer cp = h[r][p], cj = h[r][j];
            h[r][p] = x * cp + y * cj;
            h[r][j] = bg * cp - ag * cj;
        }
        for (std::size_t r = 0; r < cols; ++r) {
            const Integer cp = u[r][p], cj = u[r][j];
            u[r][p] = x * cp + y * cj;
            u[r][j] = bg * cp - ag * cj;
        }
    };

    std::size_t pivot_col = 0;
    for (std::size_t i = 0; i < rows && pivot_col < cols; ++i) {
        for (std::size_t j = pivot_col + 1; j < cols; ++j) {
            if (h[i][j] == 0) continue;
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), h[i][pivot_col].get_mpz_t(), h[i][j].get_mpz_t());
            const Integer ag = h[i][pivot_col] / g;
            const Integer bg = h[i][j] / g;
            combine(pivot_col, j, x, y, bg, ag);
        }
        if (h[i][pivot_col] == 0) continue;
        if (h[i][pivot_col] < 0) {
            for (std::size_t r = 0; r < rows; ++r) h[r][pivot_col] = -h[r][pivot_col];
            for (std::size_t r = 0; r < cols; ++r) u[r][pivot_col] = -u[r][pivot_col];
        }
        // Keep earlier pivot columns small: reduce them modulo this pivot in row i.
        for (std::size_t j = 0; j < pivot_col; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h[i][j].get_mpz_t(), h[i][pivot_col].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t r = 0; r < rows; ++r) h[r][j] -= q * h[r][pivot_col];
            for (std::size_t r = 0; r < cols; ++r) u[r][j] -= q * u[r][pivot_col];
        }
        out.pivot_rows.push_back(i);
        ++pivot_col;
    }
    return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        const Rational inv = 1 / m[row][c];
        for (auto& v : m[row]) v *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

BigIntMatrix left_kernel(const RationalMatrix& a, std::size_t rows) {
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    // Kernel of a^T (cols x rows).
    RationalMatrix at(cols, RationalVector(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) at[j][i] = a[i][j];
    const auto pivots = rref(at, rows);
    std::vector<bool> is_pivot(rows, false);
    for (auto p : pivots) is_pivot[p] = true;

    BigIntMatrix kernel;
    for (std::size_t f = 0; f < rows; ++f) {
        if (is_pivot[f]) continue;
        RationalVector v(rows, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -at[k][f];
        Integer den = 1;
        for (const auto& x : v) den = lcm(den, x.get_den());
        std::vector<Integer> row(rows);
        Integer g = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            const Rational scaled = v[i] * Rational(den);
            row[i] = scaled.get_num();
            g = gcd(g, row[i]);
        }
        if (g > 1)
            for (auto& x : row) x /= g;
        kernel.push_back(std::move(row));
    }
    return kernel;
}

CongruenceVerdict divided_congruence_member(const QSeries& target, const std::vector<QSeries>& basis) {
    for (const auto& b : basis) {
        if (!(b.field() == target.field())) fail(ErrorCode::InconsistentLevels, "basis series at a different level");
        if (b.order() != target.order()) fail(ErrorCode::InconsistentOrders, "basis series at a different order");
    }
    const std::int64_t order = target.order();
    bool with_constant = target.constant().has_value();
    for (const auto& b : basis) with_constant = with_constant && b.constant().has_value();

    auto flatten = [&](const QSeries& s) {
        RationalVector out;
        if (with_constant)
            for (const auto& c : s.constant()->coords()) out.push_back(c);
        for (std::int64_t n = 1; n <= order; ++n)
            for (const auto& c : s.coeff(n).coords()) out.push_back(c);
        return out;
    };
    const RationalVector t = flatten(target);
    const std::size_t rows = t.size();
    RationalMatrix a(rows, RationalVector(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const RationalVector col = flatten(basis[j]);
        for (std::size_t i = 0; i < rows; ++i) a[i][j] = col[i];
    }

    CongruenceVerdict verdict;
    verdict.caveat = "integrality checked for coefficients n <= " + std::to_string(order) +
                     (with_constant ? " and the constant term" : " (constant term excluded)") +
                     "; a necessary condition only, modularity of the combination is not verified";

    // t is in Z^K + col(A) iff K t lies in the lattice K Z^K, K spanning the left kernel of A.
    const BigIntMatrix kernel = basis.empty() ? [&] {
        BigIntMatrix id(rows, std::vector<Integer>(rows, 0));
        for (std::size_t i = 0; i < rows; ++i) id[i][i] = 1;
        return id;
    }()
                                              : left_kernel(a, rows);
    RationalVector y(kernel.size(), 0);
    for (std::size_t i = 0; i < kernel.size(); ++i)
        for (std::size_t j = 0; j < rows; ++j) y[i] += Rational(kernel[i][j]) * t[j];

    std::vector<Integer> z(rows, 0);
    if (!kernel.empty()) {
        const HermiteDecomposition hnf = column_hermite_form(kernel);
        RationalVector rest = y;
        std::vector<Integer> c(hnf.pivot_rows.size());
        for (std::size_t j = 0; j < hnf.pivot_rows.size(); ++j) {
            const std::size_t pr = hnf.pivot_rows[j];
            for (std::size_t i = 0; i < pr; ++i)
                if (rest[i] != 0) return verdict;
            const Rational cj = rest[pr] / Rational(hnf.h[pr][j]);
            if (!is_integer(cj)) return verdict;
            c[j] = cj.get_num();
            for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= Rational(c[j] * hnf.h[i][j]);
        }
        for (const auto& v : rest)
            if (v != 0) return verdict;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < c.size(); ++j) z[i] += hnf.u[i][j] * c[j];
    }

    // Solve A lambda = t - z (consistent by construction).
    RationalVector lambda(basis.size(), 0);
    if (!basis.empty()) {
        RationalMatrix aug(rows, RationalVector(basis.size() + 1));
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < basis.size(); ++j) aug[i][j] = a[i][j];
            aug[i][basis.size()] = t[i] - Rational(z[i]);
        }
        const auto pivots = rref(aug, basis.size());
        for (std::size_t i = pivots.size(); i < rows; ++i)
            if (aug[i][basis.size()] != 0)
                fail(ErrorCode::InternalMismatch, "congruence solve: shifted target not in the basis span");
        for (std::size_t k = 0; k < pivots.size(); ++k) lambda[pivots[k]] = aug[k][basis.size()];
    }

    QSeries residual = target;
    for (std::size_t j = 0; j < basis.size(); ++j) residual -= basis[j] * lambda[j];
    for (std::int64_t n = 1; n <= order; ++n)
        if (!residual.coeff(n).is_algebraic_integer())
            fail(ErrorCode::InternalMismatch, "congruence residual not integral at n = " + std::to_string(n));
    if (with_constant && !residual.constant()->is_algebraic_integer())
        fail(ErrorCode::InternalMismatch, "congruence residual has a non-integral constant term");

    verdict.member_up_to_order = true;
    verdict.combination = std::move(lambda);
    verdict.residual = std::move(residual);
    return verdict;
}

}  // namespace nileta
