#include "nileta/cyclotomic.hpp"

#include <numeric>
#include <string>

#include "nileta/error.hpp"

namespace nileta {

namespace {

// Exact quotient of a by the monic polynomial b.
IntPolynomial divide_exact(IntPolynomial a, const IntPolynomial& b) {
    const std::size_t db = b.size() - 1;
    if (a.size() < b.size()) fail(ErrorCode::InternalMismatch, "polynomial division by larger degree");
    IntPolynomial q(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const Integer c = a[i];
        q[i - db] = c;
        for (std::size_t t = 0; t <= db; ++t) a[i - db + t] -= c * b[t];
    }
    for (const auto& r : a)
        if (r != 0) fail(ErrorCode::InternalMismatch, "cyclotomic division left a remainder");
    return q;
}

}  // namespace

IntPolynomial cyclotomic_polynomial(std::int64_t n) {
    if (n < 1) fail(ErrorCode::DomainError, "cyclotomic polynomial needs N >= 1");
    IntPolynomial p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t m = 1; m < n; ++m)
        if (n % m == 0) p = divide_exact(p, cyclotomic_polynomial(m));
    return p;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

CyclotomicField::CyclotomicField(std::int64_t level) {
    if (level < 2) fail(ErrorCode::DomainError, "cyclotomic level must be >= 2, got " + std::to_string(level));
    auto data = std::make_shared<Data>();
    data->level = level;
    data->modulus = cyclotomic_polynomial(level);
    const std::size_t phi = data->modulus.size() - 1;
    std::vector<Integer> x(phi, 0);
    x[0] = 1;
    for (std::int64_t j = 0; j < level; ++j) {
        data->powers.push_back(x);
        // multiply by zeta: shift, then fold the top coefficient with Phi_N
        const Integer top = x[phi - 1];
        for (std::size_t i = phi - 1; i > 0; --i) x[i] = x[i - 1];
        x[0] = 0;
        for (std::size_t i = 0; i < phi; ++i) x[i] -= top * data->modulus[i];
    }
    data_ = std::move(data);
}

const std::vector<Integer>& CyclotomicField::power(std::int64_t j) const {
    const std::int64_t n = level();
    return data_->powers[static_cast<std::size_t>(((j % n) + n) % n)];
}

RationalVector CyclotomicField::reduce(RationalVector coeffs) const {
    const std::size_t phi = degree();
    const auto& mod = modulus();
    for (std::size_t i = coeffs.size(); i-- > phi;) {
        const Rational c = coeffs[i];
        if (c == 0) continue;
        for (std::size_t t = 0; t <= phi; ++t) coeffs[i - phi + t] -= c * Rational(mod[t]);
    }
    coeffs.resize(phi, 0);
    return coeffs;
}

CycloRational::CycloRational(CyclotomicField field) : field_(std::move(field)), coords_(field_.degree(), 0) {}

CycloRational::CycloRational(CyclotomicField field, RationalVector coords) : field_(std::move(field)) {
    coords_ = field_.reduce(std::move(coords));
}

CycloRational CycloRational::zeta_power(const CyclotomicField& field, std::int64_t j) {
    CycloRational out(field);
    const auto& p = field.power(j);
    for (std::size_t i = 0; i < p.size(); ++i) out.coords_[i] = Rational(p[i]);
    return out;
}

CycloRational CycloRational::constant(const CyclotomicField& field, const Rational& c) {
    CycloRational out(field);
    out.coords_[0] = c;
    return out;
}

bool CycloRational::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool CycloRational::is_algebraic_integer() const {
    for (const auto& c : coords_)
        if (!is_integer(c)) return false;
    return true;
}

void CycloRational::check_field(const CycloRational& o) const {
    if (!(field_ == o.field_))
        fail(ErrorCode::InconsistentLevels, "mixing levels " + std::to_string(level()) + " and " +
                                                std::to_string(o.level()));
}

CycloRational CycloRational::operator-() const {
    CycloRational out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

CycloRational& CycloRational::operator+=(const CycloRational& o) {
    check_field(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
}

CycloRational& CycloRational::operator-=(const CycloRational& o) {
    check_field(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
}

CycloRational& CycloRational::operator*=(const CycloRational& o) {
    check_field(o);
    const std::size_t phi = coords_.size();
    RationalVector prod(2 * phi - 1, 0);
    for (std::size_t i = 0; i < phi; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < phi; ++j) prod[i + j] += coords_[i] * o.coords_[j];
    }
    coords_ = field_.reduce(std::move(prod));
    return *this;
}

CycloRational& CycloRational::operator*=(const Rational& c) {
    for (auto& v : coords_) v *= c;
    return *this;
}

CycloRational CycloRational::inverse() const {
    if (is_zero()) fail(ErrorCode::DomainError, "inverse of zero in Q(zeta_N)");
    // Solve (this * zeta^j) columns . x = e_0 by Gauss-Jordan.
    const std::size_t phi = coords_.size();
    RationalMatrix a(phi, RationalVector(phi + 1, 0));
    for (std::size_t j = 0; j < phi; ++j) {
        const CycloRational col = *this * zeta_power(field_, static_cast<std::int64_t>(j));
        for (std::size_t i = 0; i < phi; ++i) a[i][j] = col.coords_[i];
    }
    a[0][phi] = 1;
    for (std::size_t c = 0; c < phi; ++c) {
        std::size_t piv = c;
        while (a[piv][c] == 0) ++piv;
        std::swap(a[c], a[piv]);
        const Rational inv = 1 / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t i = 0; i < phi; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = c; j <= phi; ++j) a[i][j] -= f * a[c][j];
        }
    }
    CycloRational out(field_);
    for (std::size_t i = 0; i < phi; ++i) out.coords_[i] = a[i][phi];
    return out;
}

CycloRational CycloRational::galois(std::int64_t a) const {
    if (std::gcd(a, level()) != 1) fail(ErrorCode::DomainError, "Galois exponent must be coprime to N");
    CycloRational out(field_);
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (coords_[j] == 0) continue;
        out += coords_[j] * zeta_power(field_, a * static_cast<std::int64_t>(j));
    }
    return out;
}

}  // namespace nileta
