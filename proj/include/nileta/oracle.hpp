#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "nileta/lattice.hpp"

namespace nileta::oracle {

// Brute-force references that never touch the Smith decomposition. The dual
// of Lambda_d is (1/d) B^{-1} Z^r, so every class has a unique representative
// a / (|d| det) with a in [0, |d| det)^r; we scan that whole box and keep the
// vectors with d B a = 0 mod |d| det.

struct DualClass {
    IntVector numerators;  // coordinates are numerators / denominator
    std::int64_t denominator = 1;
    Rational qbar;  // in [0, 1)
};

/// Throws OrderOverflow when the scanned box (|d| det)^r exceeds cap.
std::vector<DualClass> enumerate_dual_classes(const EvenLattice& lattice, std::int64_t twist,
                                              std::int64_t cap = kDefaultEnumerationCap);

QmodZ discriminant_sum(const EvenLattice& lattice, std::int64_t twist, std::int64_t cap = kDefaultEnumerationCap);

/// sign(d)^r sum_rho (1/2 - Qbar_d(rho)) over the scanned classes.
QmodZ eta(const EvenLattice& lattice, std::int64_t twist, std::int64_t cap = kDefaultEnumerationCap);

/// sum_rho exp(2 pi i Qbar(rho)) for d = 1.
std::complex<double> gauss_sum(const EvenLattice& lattice, std::int64_t cap = kDefaultEnumerationCap);

}  // namespace nileta::oracle
