#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nileta/eta.hpp"
#include "nileta/lattice.hpp"

namespace nileta {

enum class Verdict { NontrivialPi6, Trivial, FiltrationGt2, FiltrationGt2HenceTrivial };
std::string_view to_string(Verdict v);

struct EvidenceItem {
    std::string check;
    bool passed = false;
    std::string detail;
};

struct HomotopyVerdict {
    std::size_t rank = 0;
    std::int64_t disc = 0;
    bool disc_odd = false;
    Verdict verdict = Verdict::Trivial;
    std::vector<EvidenceItem> evidence;
    std::optional<PolynomialLift> lift;
};

inline constexpr std::int64_t kClassifyLevel = 3;
inline constexpr std::int64_t kClassifyOrder = 20;
inline constexpr std::int64_t kClassifyMaxTwist = 10;

/// Stable-homotopy verdict for the nilmanifold of the lattice. Lift and
/// congruence failures propagate as exceptions; no verdict is returned then.
HomotopyVerdict classify(const EvenLattice& lattice, const EnumerationOptions& options = {});

}  // namespace nileta
