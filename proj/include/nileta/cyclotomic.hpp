#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "nileta/rational.hpp"

namespace nileta {

/// Integer coefficients, constant term first.
using IntPolynomial = std::vector<Integer>;

/// Phi_N by exact division of x^N - 1 by Phi_m for the proper divisors m | N.
IntPolynomial cyclotomic_polynomial(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

/// Q(zeta_N) presented as Q[x] / Phi_N(x) with the power basis 1, zeta, ..., zeta^{phi(N)-1}.
class CyclotomicField {
public:
    explicit CyclotomicField(std::int64_t level);

    std::int64_t level() const { return data_->level; }
    std::size_t degree() const { return data_->modulus.size() - 1; }
    const IntPolynomial& modulus() const { return data_->modulus; }

    // Coordinates of zeta^j for any integer j.
    const std::vector<Integer>& power(std::int64_t j) const;

    // Reduce a coefficient list of any length modulo Phi_N.
    RationalVector reduce(RationalVector coeffs) const;

    friend bool operator==(const CyclotomicField& a, const CyclotomicField& b) { return a.level() == b.level(); }

private:
    struct Data {
        std::int64_t level;
        IntPolynomial modulus;
        std::vector<std::vector<Integer>> powers;  // zeta^j, 0 <= j < N
    };
    std::shared_ptr<const Data> data_;
};

/// An element of Q(zeta_N) in the power basis.
class CycloRational {
public:
    explicit CycloRational(CyclotomicField field);
    CycloRational(CyclotomicField field, RationalVector coords);

    static CycloRational zeta_power(const CyclotomicField& field, std::int64_t j);
    static CycloRational constant(const CyclotomicField& field, const Rational& c);

    const CyclotomicField& field() const { return field_; }
    std::int64_t level() const { return field_.level(); }
    const RationalVector& coords() const { return coords_; }

    bool is_zero() const;
    // The power basis is an integral basis of Z[zeta_N].
    bool is_algebraic_integer() const;

    CycloRational inverse() const;
    // zeta -> zeta^a, gcd(a, N) = 1.
    CycloRational galois(std::int64_t a) const;

    CycloRational operator-() const;
    CycloRational& operator+=(const CycloRational& o);
    CycloRational& operator-=(const CycloRational& o);
    CycloRational& operator*=(const CycloRational& o);
    CycloRational& operator*=(const Rational& c);

    friend CycloRational operator+(CycloRational a, const CycloRational& b) { return a += b; }
    friend CycloRational operator-(CycloRational a, const CycloRational& b) { return a -= b; }
    friend CycloRational operator*(CycloRational a, const CycloRational& b) { return a *= b; }
    friend CycloRational operator*(CycloRational a, const Rational& c) { return a *= c; }
    friend CycloRational operator*(const Rational& c, CycloRational a) { return a *= c; }
    friend bool operator==(const CycloRational& a, const CycloRational& b) {
        return a.field_ == b.field_ && a.coords_ == b.coords_;
    }

private:
    void check_field(const CycloRational& o) const;

    CyclotomicField field_;
    RationalVector coords_;
};

}  // namespace nileta
