#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "nileta/rational.hpp"

namespace nileta {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

inline constexpr std::int64_t kDefaultEnumerationCap = 10'000'000;

/// Controls enumeration over discriminant classes. Results never depend on
/// the thread count.
struct EnumerationOptions {
    std::int64_t cap = kDefaultEnumerationCap;
    unsigned threads = 1;
};

/// A positive definite even lattice, given by its Gram matrix in a fixed basis.
/// Only obtainable through validate_even_lattice.
class EvenLattice {
public:
    std::size_t rank() const { return gram_.size(); }
    const IntMatrix& gram() const { return gram_; }
    std::int64_t det() const { return det_; }
    std::int64_t trace() const;

    // B(x, y) and Q(x) = B(x, x) / 2 for rational coordinate vectors.
    Rational bilinear(const RationalVector& x, const RationalVector& y) const;
    Rational quadratic(const RationalVector& x) const;

    friend bool operator==(const EvenLattice& a, const EvenLattice& b) { return a.gram_ == b.gram_; }

private:
    friend EvenLattice validate_even_lattice(const IntMatrix& gram);
    EvenLattice(IntMatrix gram, std::int64_t det) : gram_(std::move(gram)), det_(det) {}

    IntMatrix gram_;
    std::int64_t det_ = 0;
};

/// Throws NotSquare, NotSymmetric, NotEvenDiagonal or NotPositiveDefinite.
EvenLattice validate_even_lattice(const IntMatrix& gram);

/// Exact determinant by fraction-free elimination.
Integer determinant(const IntMatrix& m);

/// S * M * T = diag(d_1, ..., d_r) with d_1 | d_2 | ... | d_r, all d_i > 0
/// for nonsingular M. S and T are unimodular.
struct SmithDecomposition {
    IntMatrix S;
    IntMatrix T;
    IntVector diag;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity_matrix(std::size_t n);

RationalMatrix rational_inverse(const IntMatrix& m);

/// Exact B^{-1}; column j holds the coordinates of the j-th dual basis vector.
RationalMatrix dual_gram_inverse(const EvenLattice& lattice);

/// (Lambda_d)^dual / Lambda for the rescaled form d * B.
///
/// Classes are indexed 0 .. order-1 in mixed radix over the box
/// 1 <= k_i <= |d d_i|, k_0 varying slowest. The representative of index
/// (k_1, ..., k_r) is sum_i k_i u_i with u_i = T e_i / (d d_i), so
/// {d d_i u_i} is the basis T of Lambda.
class DiscriminantGroup {
public:
    const EvenLattice& base() const { return base_; }
    std::int64_t twist() const { return twist_; }
    std::int64_t order() const { return order_; }
    const IntVector& invariant_factors() const { return invariant_factors_; }
    const IntVector& box() const { return box_; }
    const SmithDecomposition& smith() const { return smith_; }

    // u_i in lattice coordinates.
    const RationalMatrix& generators() const { return generators_; }

    RationalVector representative(std::int64_t index) const;
    std::vector<RationalVector> representatives() const;

    // Qbar_d(rho) = numerator / modulus for the class of the given index.
    std::int64_t qbar_modulus() const { return modulus_; }
    std::int64_t qbar_numerator(std::int64_t index) const;

    // Calls visit(index, numerator) for every class index in [begin, end).
    template <class Visitor>
    void scan(std::int64_t begin, std::int64_t end, Visitor&& visit) const;

    friend DiscriminantGroup discriminant_group(const EvenLattice&, std::int64_t,
                                                const EnumerationOptions&);
    friend DiscriminantGroup discriminant_group(const EvenLattice&, std::int64_t,
                                                const SmithDecomposition&, const EnumerationOptions&);

private:
    DiscriminantGroup(const EvenLattice& base, std::int64_t twist, SmithDecomposition smith,
                      std::int64_t cap);

    IntVector digits(std::int64_t index) const;

    EvenLattice base_;
    std::int64_t twist_;
    SmithDecomposition smith_;
    std::int64_t order_ = 1;
    IntVector invariant_factors_;
    IntVector box_;
    RationalMatrix generators_;
    std::int64_t modulus_ = 1;
    // Pairwise Gram entries of the generators scaled to the common modulus.
    std::vector<std::vector<__int128>> scaled_gram_;
};

/// Throws OrderOverflow when |d|^r |det| exceeds options.cap.
DiscriminantGroup discriminant_group(const EvenLattice& lattice, std::int64_t twist,
                                     const EnumerationOptions& options = {});

/// Same, with a caller-supplied Smith decomposition of the Gram matrix.
DiscriminantGroup discriminant_group(const EvenLattice& lattice, std::int64_t twist,
                                     const SmithDecomposition& smith,
                                     const EnumerationOptions& options = {});

/// d * Q(rho) mod Z. Throws NotInDual unless d * B * rho is integral.
QmodZ qbar(const EvenLattice& lattice, std::int64_t twist, const RationalVector& rho);

/// Sum of all Qbar numerators modulo qbar_modulus().
std::int64_t qbar_numerator_sum(const DiscriminantGroup& group, unsigned threads = 1);

/// numerator -> number of classes with that Qbar value.
std::map<std::int64_t, std::int64_t> qbar_histogram(const DiscriminantGroup& group,
                                                    unsigned threads = 1);

template <class Visitor>
void DiscriminantGroup::scan(std::int64_t begin, std::int64_t end, Visitor&& visit) const {
    if (begin >= end) return;
    const std::size_t r = box_.size();
    const std::size_t last = r - 1;
    const __int128 m = modulus_;
    const std::int64_t inner = box_[last];
    IntVector k = digits(begin);
    std::int64_t index = begin;
    while (index < end) {
        // Numerator with the last digit at its current value, then step it.
        __int128 base = 0;
        __int128 linear = 0;
        for (std::size_t i = 0; i < last; ++i) {
            for (std::size_t j = 0; j < last; ++j)
                base = (base + (__int128)k[i] * k[j] % m * scaled_gram_[i][j]) % m;
            linear = (linear + (__int128)k[i] * scaled_gram_[i][last]) % m;
        }
        const __int128 g = scaled_gram_[last][last];
        __int128 t = k[last];
        __int128 value = (base + 2 * t % m * linear + t * t % m * g) % m;
        for (; t <= inner && index < end; ++t, ++index) {
            visit(index, static_cast<std::int64_t>(value));
            value = (value + 2 * linear + (2 * t + 1) % m * g) % m;
        }
        k[last] = 1;
        for (std::size_t i = last; i-- > 0;) {
            if (++k[i] <= box_[i]) break;
            k[i] = 1;
        }
    }
}

}  // namespace nileta
