#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "nileta/lattice.hpp"

namespace nileta {

/// Eigenvalues of the Gram matrix, descending.
struct GramSpectrum {
    std::vector<double> eigenvalues;
    double residual = 0.0;  // off-diagonal Frobenius norm at termination
    int sweeps = 0;
};

inline constexpr int kJacobiSweepCap = 50;

/// Cyclic Jacobi rotations. Throws ConvergenceFailure after kJacobiSweepCap sweeps.
GramSpectrum gram_eigenvalues(const EvenLattice& lattice);

enum class OperatorTag { VerticalSquared, Base };
std::string_view to_string(OperatorTag tag);

struct SpectrumLabel {
    // Vertical: Hermite levels n and chirality s. Base: winding k and class index.
    IntVector levels;
    IntVector chirality;
    std::int64_t winding = 0;
    std::int64_t class_index = -1;
};

/// Eigenvalues are in units of 2 pi. Vertical values are floating point,
/// base values exact.
struct SpectrumEntry {
    std::variant<double, Rational> value;
    std::int64_t multiplicity = 1;
    std::optional<SpectrumLabel> label;

    double approx() const;
};

struct SpectrumReport {
    OperatorTag tag = OperatorTag::VerticalSquared;
    std::vector<SpectrumEntry> entries;
};

/// (D^V)^2 on labels (n, s) with sum n_k <= n_cap; each label has multiplicity |dis Lambda_d|.
SpectrumReport vertical_spectrum(const EvenLattice& lattice, std::int64_t twist, std::int64_t n_cap,
                                 const EnumerationOptions& options = {});

/// Zero modes of D^V, counted from the spectrum and checked against |d|^r |det|.
std::int64_t kernel_dimension(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options = {});

/// sign(d)^r (k + Qbar_d(rho)) for k in [k_min, k_max], one entry per (k, rho).
SpectrumReport base_spectrum(const EvenLattice& lattice, std::int64_t twist, std::int64_t k_min, std::int64_t k_max,
                             const EnumerationOptions& options = {});

/// (eta + dim ker) / 2 mod Z of the base operator, summed class by class with
/// zeta-regularised tails.
QmodZ base_eta_reduced(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options = {});

}  // namespace nileta
