#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nileta {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

// "p/q" in lowest terms, "p" when the denominator is 1.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

// Representative of x mod Z in [0, 1).
Rational frac(const Rational& x);
Integer floor(const Rational& x);

bool is_integer(const Rational& x);
std::int64_t to_int64(const Integer& x);
std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

/// An element of Q/Z, stored as its representative in [0, 1).
class QmodZ {
public:
    QmodZ() = default;
    explicit QmodZ(const Rational& x) : value_(frac(x)) {}
    static QmodZ from_fraction(std::int64_t num, std::int64_t den) {
        return QmodZ(make_rational(num, den));
    }

    const Rational& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    QmodZ operator-() const { return QmodZ(-value_); }
    QmodZ& operator+=(const QmodZ& other) {
        value_ = frac(value_ + other.value_);
        return *this;
    }
    QmodZ& operator-=(const QmodZ& other) {
        value_ = frac(value_ - other.value_);
        return *this;
    }
    friend QmodZ operator+(QmodZ a, const QmodZ& b) { return a += b; }
    friend QmodZ operator-(QmodZ a, const QmodZ& b) { return a -= b; }
    friend QmodZ operator*(std::int64_t k, const QmodZ& a) {
        return QmodZ(Rational(Integer(static_cast<long>(k))) * a.value_);
    }
    friend bool operator==(const QmodZ& a, const QmodZ& b) { return a.value_ == b.value_; }
    friend bool operator<(const QmodZ& a, const QmodZ& b) { return a.value_ < b.value_; }

private:
    Rational value_{0};
};

inline std::string to_string(const QmodZ& x) { return to_string(x.value()); }

}  // namespace nileta
