#include "nileta/oracle.hpp"

#include <cmath>
#include <numbers>

#include "nileta/error.hpp"

namespace nileta::oracle {

std::vector<DualClass> enumerate_dual_classes(const EvenLattice& lattice, std::int64_t twist, std::int64_t cap) {
    if (twist == 0) fail(ErrorCode::DomainError, "twist d must be nonzero");
    const std::size_t r = lattice.rank();
    const std::int64_t den = (twist < 0 ? -twist : twist) * lattice.det();
    Integer box = 1;
    for (std::size_t i = 0; i < r; ++i) box *= static_cast<long>(den);
    if (box > cap) fail(ErrorCode::OrderOverflow, "brute-force box " + box.get_str() + " exceeds cap");

    const auto& b = lattice.gram();
    std::vector<DualClass> out;
    IntVector a(r, 0);
    const Integer modulus = 2 * Integer(static_cast<long>(den)) * den;
    for (;;) {
        bool dual = true;
        for (std::size_t i = 0; i < r && dual; ++i) {
            __int128 s = 0;
            for (std::size_t j = 0; j < r; ++j) s += (__int128)b[i][j] * a[j];
            dual = (s * twist) % den == 0;
        }
        if (dual) {
            Integer q = 0;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j)
                    q += Integer(static_cast<long>(a[i])) * static_cast<long>(b[i][j]) * static_cast<long>(a[j]);
            q *= static_cast<long>(twist);
            out.push_back({a, den, frac(Rational(q, modulus))});
        }
        std::size_t i = r;
        while (i-- > 0) {
            if (++a[i] < den) break;
            a[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

QmodZ discriminant_sum(const EvenLattice& lattice, std::int64_t twist, std::int64_t cap) {
    QmodZ sum;
    for (const auto& c : enumerate_dual_classes(lattice, twist, cap)) sum += QmodZ(c.qbar);
    return sum;
}

QmodZ eta(const EvenLattice& lattice, std::int64_t twist, std::int64_t cap) {
    Rational sum = 0;
    for (const auto& c : enumerate_dual_classes(lattice, twist, cap)) sum += Rational(1, 2) - c.qbar;
    if (twist < 0 && lattice.rank() % 2 == 1) sum = -sum;
    return QmodZ(sum);
}

std::complex<double> gauss_sum(const EvenLattice& lattice, std::int64_t cap) {
    long double re = 0, im = 0;
    for (const auto& c : enumerate_dual_classes(lattice, 1, cap)) {
        const long double angle = 2 * std::numbers::pi_v<long double> * c.qbar.get_d();
        re += std::cos(angle);
        im += std::sin(angle);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace nileta::oracle
