#include "nileta/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <tuple>

#include "nileta/error.hpp"
#include "nileta/eta.hpp"

namespace nileta {

GramSpectrum gram_eigenvalues(const EvenLattice& lattice) {
    const std::size_t n = lattice.rank();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = static_cast<double>(lattice.gram()[i][j]);
            norm += a[i][j] * a[i][j];
        }
    norm = std::sqrt(norm);

    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a[i][j] * a[i][j];
        return std::sqrt(s);
    };

    GramSpectrum out;
    const double threshold = 1e-12 * norm;
    while (off_diagonal() >= threshold) {
        if (out.sweeps == kJacobiSweepCap)
            fail(ErrorCode::ConvergenceFailure, "Jacobi eigensolver did not converge in " +
                                                    std::to_string(kJacobiSweepCap) + " sweeps");
        ++out.sweeps;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    out.residual = off_diagonal();
    for (std::size_t i = 0; i < n; ++i) out.eigenvalues.push_back(a[i][i]);
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
    return out;
}

std::string_view to_string(OperatorTag tag) {
    return tag == OperatorTag::VerticalSquared ? "vertical_squared" : "base";
}

double SpectrumEntry::approx() const {
    if (const auto* v = std::get_if<double>(&value)) return *v;
    return std::get<Rational>(value).get_d();
}

namespace {

// Compositions of at most `cap` into r non-negative parts, lexicographic.
void for_each_level(std::size_t r, std::int64_t cap, IntVector& levels, std::size_t pos,
                    const std::function<void(const IntVector&)>& visit) {
    if (pos == r) {
        visit(levels);
        return;
    }
    for (std::int64_t v = 0; v <= cap; ++v) {
        levels[pos] = v;
        for_each_level(r, cap - v, levels, pos + 1, visit);
    }
    levels[pos] = 0;
}

}  // namespace

SpectrumReport vertical_spectrum(const EvenLattice& lattice, std::int64_t twist, std::int64_t n_cap,
                                 const EnumerationOptions& options) {
    if (n_cap < 0) fail(ErrorCode::DomainError, "n_cap must be non-negative");
    const DiscriminantGroup group = discriminant_group(lattice, twist, options);
    const GramSpectrum nu = gram_eigenvalues(lattice);
    const std::size_t r = lattice.rank();
    const double abs_d = static_cast<double>(twist < 0 ? -twist : twist);
    const std::int64_t sign = twist < 0 ? -1 : 1;

    SpectrumReport report;
    report.tag = OperatorTag::VerticalSquared;
    IntVector levels(r, 0);
    for_each_level(r, n_cap, levels, 0, [&](const IntVector& n) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
            IntVector s(r);
            double value = 0.0;
            for (std::size_t k = 0; k < r; ++k) {
                s[k] = (mask >> (r - 1 - k)) & 1 ? -1 : 1;
                value += 2.0 * abs_d * nu.eigenvalues[k] * static_cast<double>(n[k]) +
                         abs_d * nu.eigenvalues[k] * static_cast<double>(1 - sign * s[k]);
            }
            report.entries.push_back({value, group.order(), SpectrumLabel{n, s, 0, -1}});
        }
    });
    std::sort(report.entries.begin(), report.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        const double va = std::get<double>(a.value);
        const double vb = std::get<double>(b.value);
        if (va != vb) return va < vb;
        return std::tie(a.label->levels, a.label->chirality) < std::tie(b.label->levels, b.label->chirality);
    });
    return report;
}

std::int64_t kernel_dimension(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options) {
    // Every level n > 0 adds at least 2 |d| nu_min > 0, so n_cap = 0 sees the whole kernel.
    const SpectrumReport report = vertical_spectrum(lattice, twist, 0, options);
    std::int64_t count = 0;
    for (const auto& e : report.entries)
        if (std::get<double>(e.value) == 0.0) count += e.multiplicity;

    Integer expected = Integer(static_cast<long>(lattice.det()));
    for (std::size_t i = 0; i < lattice.rank(); ++i) expected *= static_cast<long>(twist < 0 ? -twist : twist);
    if (expected != count)
        fail(ErrorCode::InternalMismatch, "kernel dimension " + std::to_string(count) + " differs from |d^r det| = " +
                                              expected.get_str());
    return count;
}

SpectrumReport base_spectrum(const EvenLattice& lattice, std::int64_t twist, std::int64_t k_min, std::int64_t k_max,
                             const EnumerationOptions& options) {
    if (k_min > k_max) fail(ErrorCode::DomainError, "empty winding range");
    const DiscriminantGroup group = discriminant_group(lattice, twist, options);
    const bool flip = twist < 0 && lattice.rank() % 2 == 1;
    const std::int64_t m = group.qbar_modulus();

    SpectrumReport report;
    report.tag = OperatorTag::Base;
    std::vector<std::int64_t> numerators(static_cast<std::size_t>(group.order()));
    group.scan(0, group.order(), [&](std::int64_t index, std::int64_t num) { numerators[index] = num; });
    for (std::int64_t k = k_min; k <= k_max; ++k)
        for (std::int64_t idx = 0; idx < group.order(); ++idx) {
            Rational value = make_rational(k) + make_rational(numerators[idx], m);
            if (flip) value = -value;
            report.entries.push_back({value, 1, SpectrumLabel{{}, {}, k, idx}});
        }
    std::sort(report.entries.begin(), report.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        const auto& va = std::get<Rational>(a.value);
        const auto& vb = std::get<Rational>(b.value);
        if (va != vb) return va < vb;
        return std::tie(a.label->winding, a.label->class_index) < std::tie(b.label->winding, b.label->class_index);
    });
    return report;
}

QmodZ base_eta_reduced(const EvenLattice& lattice, std::int64_t twist, const EnumerationOptions& options) {
    const DiscriminantGroup group = discriminant_group(lattice, twist, options);
    const bool flip = twist < 0 && lattice.rank() % 2 == 1;
    const std::int64_t m = group.qbar_modulus();

    // For a class with Qbar = x the spectrum is sign(d)^r (Z + x). Positive
    // part: zeta(s, x'), x' = x or 1 when x = 0. Negative part: zeta(s, y),
    // y = 1 - x or 1. A zero mode occurs exactly when x = 0.
    QmodZ total;
    for (const auto& [num, count] : qbar_histogram(group, options.threads)) {
        const Rational x = make_rational(num, m);
        const bool zero_mode = x == 0;
        const Rational positive_start = zero_mode ? Rational(1) : x;
        const Rational negative_start = zero_mode ? Rational(1) : Rational(1 - x);
        Rational eta = hurwitz_zeta_at_zero(positive_start) - hurwitz_zeta_at_zero(negative_start);
        if (flip) eta = -eta;
        const Rational reduced = (eta + (zero_mode ? 1 : 0)) / 2;
        total += count * QmodZ(reduced);
    }
    return total;
}

}  // namespace nileta
