#pragma once

#include <random>
#include <string>

#include "nileta/lattice.hpp"
#include "nileta/rational.hpp"

namespace testing {

inline nileta::EvenLattice lattice(const nileta::IntMatrix& gram) { return nileta::validate_even_lattice(gram); }

inline nileta::Rational q(const std::string& text) { return nileta::parse_rational(text); }

inline nileta::QmodZ qz(const std::string& text) { return nileta::QmodZ(q(text)); }

inline const std::vector<std::pair<std::string, nileta::IntMatrix>>& catalog() {
    static const std::vector<std::pair<std::string, nileta::IntMatrix>> entries = {
        {"A1", {{2}}},
        {"A2", {{2, 1}, {1, 2}}},
        {"2A1", {{2, 0}, {0, 2}}},
        {"diag24", {{2, 0}, {0, 4}}},
        {"disc7", {{2, 1}, {1, 4}}},
        {"3A1", {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}},
    };
    return entries;
}

// Even positive-definite rank-r Gram matrix, off-diagonal entries in [-4, 4],
// diagonal in {2, 4}; resampled until positive definite.
inline nileta::IntMatrix random_even_gram(std::mt19937_64& rng, std::size_t r) {
    std::uniform_int_distribution<int> off(-4, 4);
    std::uniform_int_distribution<int> diag(1, 2);
    for (;;) {
        nileta::IntMatrix g(r, nileta::IntVector(r, 0));
        for (std::size_t i = 0; i < r; ++i) {
            g[i][i] = 2 * diag(rng);
            for (std::size_t j = i + 1; j < r; ++j) g[i][j] = g[j][i] = off(rng);
        }
        try {
            nileta::validate_even_lattice(g);
            return g;
        } catch (const std::exception&) {
        }
    }
}

}  // namespace testing
