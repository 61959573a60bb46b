#include "nileta/lattice.hpp"

#include <algorithm>
#include <thread>

#include "nileta/error.hpp"

namespace nileta {

namespace {

using BigMatrix = std::vector<std::vector<Integer>>;

BigMatrix to_big(const IntMatrix& m) {
    BigMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (auto v : m[i]) out[i].emplace_back(static_cast<long>(v));
    return out;
}

IntMatrix to_small(const BigMatrix& m) {
    IntMatrix out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& v : m[i]) out[i].push_back(to_int64(v));
    return out;
}

BigMatrix big_identity(std::size_t n) {
    BigMatrix id(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

void require_square(const IntMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i].size() != m.size())
            fail(ErrorCode::NotSquare, "matrix is not square (row " + std::to_string(i) + " has " +
                                           std::to_string(m[i].size()) + " entries, expected " +
                                           std::to_string(m.size()) + ")");
}

// Bareiss elimination on the leading k x k block.
Integer bareiss(BigMatrix a, std::size_t k) {
    if (k == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t p = 0; p + 1 < k; ++p) {
        if (a[p][p] == 0) {
            std::size_t swap = p + 1;
            while (swap < k && a[swap][p] == 0) ++swap;
            if (swap == k) return 0;
            std::swap(a[p], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < k; ++i) {
            for (std::size_t j = p + 1; j < k; ++j) {
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]);
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[p][p];
    }
    return sign * a[k - 1][k - 1];
}

}  // namespace

std::int64_t EvenLattice::trace() const {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < rank(); ++i) t += gram_[i][i];
    return t;
}

Rational EvenLattice::bilinear(const RationalVector& x, const RationalVector& y) const {
    Rational sum = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < rank(); ++j) row += Rational(Integer(static_cast<long>(gram_[i][j]))) * y[j];
        sum += x[i] * row;
    }
    return sum;
}

Rational EvenLattice::quadratic(const RationalVector& x) const { return bilinear(x, x) / 2; }

Integer determinant(const IntMatrix& m) {
    require_square(m);
    return bareiss(to_big(m), m.size());
}

EvenLattice validate_even_lattice(const IntMatrix& gram) {
    if (gram.empty()) fail(ErrorCode::NotSquare, "empty Gram matrix");
    require_square(gram);
    const std::size_t r = gram.size();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = i + 1; j < r; ++j)
            if (gram[i][j] != gram[j][i])
                fail(ErrorCode::NotSymmetric, "Gram matrix not symmetric at (" + std::to_string(i) + ", " +
                                                  std::to_string(j) + ")");
    for (std::size_t i = 0; i < r; ++i)
        if (gram[i][i] % 2 != 0)
            fail(ErrorCode::NotEvenDiagonal, "odd diagonal entry at index " + std::to_string(i));
    const BigMatrix big = to_big(gram);
    Integer det;
    for (std::size_t k = 1; k <= r; ++k) {
        det = bareiss(big, k);
        if (det <= 0)
            fail(ErrorCode::NotPositiveDefinite,
                 "leading principal minor of order " + std::to_string(k) + " is " + det.get_str());
    }
    return EvenLattice(gram, to_int64(det));
}

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix id(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return id;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t inner = b.size();
    const std::size_t cols = b.empty() ? 0 : b[0].size();
    IntMatrix out(a.size(), IntVector(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            Integer s = 0;
            for (std::size_t k = 0; k < inner; ++k)
                s += Integer(static_cast<long>(a[i][k])) * Integer(static_cast<long>(b[k][j]));
            out[i][j] = to_int64(s);
        }
    return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    require_square(m);
    const std::size_t n = m.size();
    if (determinant(m) == 0) fail(ErrorCode::Singular, "Smith normal form requested for a singular matrix");

    BigMatrix a = to_big(m);
    BigMatrix s = big_identity(n);
    BigMatrix t = big_identity(n);

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(a[i], a[j]);
        std::swap(s[i], s[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) {
            std::swap(a[k][i], a[k][j]);
            std::swap(t[k][i], t[k][j]);
        }
    };
    // row_i -= q * row_j
    auto sub_row = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t k = 0; k < n; ++k) {
            a[i][k] -= q * a[j][k];
            s[i][k] -= q * s[j][k];
        }
    };
    auto sub_col = [&](std::size_t i, std::size_t j, const Integer& q) {
        for (std::size_t k = 0; k < n; ++k) {
            a[k][i] -= q * a[k][j];
            t[k][i] -= q * t[k][j];
        }
    };

    for (std::size_t p = 0; p < n; ++p) {
        for (;;) {
            // Pivot: minimal nonzero |entry| of the trailing block.
            std::size_t pi = p, pj = p;
            Integer best = 0;
            for (std::size_t i = p; i < n; ++i)
                for (std::size_t j = p; j < n; ++j)
                    if (a[i][j] != 0 && (best == 0 || abs(a[i][j]) < best)) {
                        best = abs(a[i][j]);
                        pi = i;
                        pj = j;
                    }
            swap_rows(p, pi);
            swap_cols(p, pj);

            bool clean = true;
            for (std::size_t i = p + 1; i < n; ++i) {
                if (a[i][p] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][p].get_mpz_t(), a[p][p].get_mpz_t());
                sub_row(i, p, q);
                if (a[i][p] != 0) clean = false;
            }
            for (std::size_t j = p + 1; j < n; ++j) {
                if (a[p][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), a[p][j].get_mpz_t(), a[p][p].get_mpz_t());
                sub_col(j, p, q);
                if (a[p][j] != 0) clean = false;
            }
            if (!clean) continue;

            // Divisor chain: fold any row with an entry not divisible by the pivot.
            std::size_t bad = n;
            for (std::size_t i = p + 1; i < n && bad == n; ++i)
                for (std::size_t j = p + 1; j < n; ++j)
                    if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[p][p].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == n) break;
            sub_row(p, bad, Integer(-1));
        }
        if (a[p][p] < 0) {
            for (std::size_t k = 0; k < n; ++k) {
                a[p][k] = -a[p][k];
                s[p][k] = -s[p][k];
            }
        }
    }

    SmithDecomposition out;
    out.S = to_small(s);
    out.T = to_small(t);
    for (std::size_t i = 0; i < n; ++i) out.diag.push_back(to_int64(a[i][i]));
    return out;
}

RationalMatrix rational_inverse(const IntMatrix& m) {
    require_square(m);
    const std::size_t n = m.size();
    RationalMatrix a(n, RationalVector(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(Integer(static_cast<long>(m[i][j])));
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) fail(ErrorCode::Singular, "matrix is singular");
        std::swap(a[c], a[piv]);
        const Rational inv = 1 / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    RationalMatrix inv(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

RationalMatrix dual_gram_inverse(const EvenLattice& lattice) { return rational_inverse(lattice.gram()); }

DiscriminantGroup::DiscriminantGroup(const EvenLattice& base, std::int64_t twist, SmithDecomposition smith,
                                     std::int64_t cap)
    : base_(base), twist_(twist), smith_(std::move(smith)) {
    if (twist == 0) fail(ErrorCode::DomainError, "twist d must be nonzero");
    const std::size_t r = base.rank();
    const std::int64_t abs_d = twist < 0 ? -twist : twist;
    const std::int64_t sign = twist < 0 ? -1 : 1;

    Integer order = 1;
    for (std::size_t i = 0; i < r; ++i) order *= static_cast<long>(abs_d);
    order *= Integer(static_cast<long>(base.det()));
    if (order > cap)
        fail(ErrorCode::OrderOverflow, "discriminant group order " + order.get_str() +
                                           " exceeds enumeration cap " + std::to_string(cap));
    order_ = to_int64(order);

    const std::int64_t top = smith_.diag.back();
    for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t factor = abs_d * smith_.diag[i];
        box_.push_back(factor);
        if (factor > 1) invariant_factors_.push_back(factor);
    }

    // u_i = T e_i / (d d_i) = W_i / (|d| d_r) with W_i = sign(d) (d_r / d_i) T e_i.
    const std::int64_t common = abs_d * top;
    modulus_ = to_int64(Integer(2) * common * common);
    IntMatrix scaled(r, IntVector(r));
    generators_.assign(r, RationalVector(r));
    for (std::size_t i = 0; i < r; ++i) {
        const std::int64_t mult = sign * (top / smith_.diag[i]);
        for (std::size_t c = 0; c < r; ++c) {
            scaled[i][c] = smith_.T[c][i] * mult;
            generators_[i][c] = make_rational(scaled[i][c], common);
        }
    }
    scaled_gram_.assign(r, std::vector<__int128>(r, 0));
    const Integer m(static_cast<long>(modulus_));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            Integer g = 0;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b)
                    g += Integer(static_cast<long>(scaled[i][a])) * static_cast<long>(base.gram()[a][b]) *
                         static_cast<long>(scaled[j][b]);
            g *= static_cast<long>(twist);
            Integer red;
            mpz_fdiv_r(red.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
            scaled_gram_[i][j] = static_cast<__int128>(to_int64(red));
        }
}

IntVector DiscriminantGroup::digits(std::int64_t index) const {
    IntVector k(box_.size());
    for (std::size_t i = box_.size(); i-- > 0;) {
        k[i] = index % box_[i] + 1;
        index /= box_[i];
    }
    return k;
}

RationalVector DiscriminantGroup::representative(std::int64_t index) const {
    if (index < 0 || index >= order_) fail(ErrorCode::DomainError, "class index out of range");
    const IntVector k = digits(index);
    const std::size_t r = box_.size();
    RationalVector rho(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < r; ++c) rho[c] += Rational(Integer(static_cast<long>(k[i]))) * generators_[i][c];
    return rho;
}

std::vector<RationalVector> DiscriminantGroup::representatives() const {
    std::vector<RationalVector> out;
    out.reserve(static_cast<std::size_t>(order_));
    for (std::int64_t i = 0; i < order_; ++i) out.push_back(representative(i));
    return out;
}

std::int64_t DiscriminantGroup::qbar_numerator(std::int64_t index) const {
    if (index < 0 || index >= order_) fail(ErrorCode::DomainError, "class index out of range");
    std::int64_t out = 0;
    scan(index, index + 1, [&](std::int64_t, std::int64_t num) { out = num; });
    return out;
}

DiscriminantGroup discriminant_group(const EvenLattice& lattice, std::int64_t twist,
                                     const SmithDecomposition& smith, const EnumerationOptions& options) {
    if (twist == 0) fail(ErrorCode::DomainError, "twist d must be nonzero");
    const IntMatrix check = multiply(multiply(smith.S, lattice.gram()), smith.T);
    for (std::size_t i = 0; i < check.size(); ++i)
        for (std::size_t j = 0; j < check.size(); ++j)
            if (check[i][j] != (i == j ? smith.diag[i] : 0))
                fail(ErrorCode::InternalMismatch, "supplied Smith decomposition does not diagonalize the Gram matrix");
    return DiscriminantGroup(lattice, twist, smith, options.cap);
}

DiscriminantGroup discriminant_group(const EvenLattice& lattice, std::int64_t twist,
                                     const EnumerationOptions& options) {
    if (twist == 0) fail(ErrorCode::DomainError, "twist d must be nonzero");
    return DiscriminantGroup(lattice, twist, smith_normal_form(lattice.gram()), options.cap);
}

QmodZ qbar(const EvenLattice& lattice, std::int64_t twist, const RationalVector& rho) {
    const std::size_t r = lattice.rank();
    if (rho.size() != r) fail(ErrorCode::DomainError, "vector length does not match lattice rank");
    const Rational d(Integer(static_cast<long>(twist)));
    for (std::size_t i = 0; i < r; ++i) {
        Rational coord = 0;
        for (std::size_t j = 0; j < r; ++j) coord += Rational(Integer(static_cast<long>(lattice.gram()[i][j]))) * rho[j];
        if (!is_integer(d * coord))
            fail(ErrorCode::NotInDual, "vector is not in the dual of the rescaled lattice (coordinate " +
                                           std::to_string(i) + " of d*B*rho is " + to_string(d * coord) + ")");
    }
    return QmodZ(d * lattice.quadratic(rho));
}

namespace {

template <class Partial, class Work, class Merge>
void partitioned(std::int64_t total, unsigned threads, Work&& work, Merge&& merge) {
    threads = std::max(1u, threads);
    if (threads == 1 || total < 4096) {
        Partial p{};
        work(0, total, p);
        merge(p);
        return;
    }
    std::vector<Partial> partials(threads);
    std::vector<std::thread> pool;
    const std::int64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::int64_t begin = std::min<std::int64_t>(total, chunk * t);
        const std::int64_t end = std::min<std::int64_t>(total, begin + chunk);
        pool.emplace_back([&, t, begin, end] { work(begin, end, partials[t]); });
    }
    for (auto& th : pool) th.join();
    for (auto& p : partials) merge(p);
}

}  // namespace

std::int64_t qbar_numerator_sum(const DiscriminantGroup& group, unsigned threads) {
    const __int128 m = group.qbar_modulus();
    __int128 total = 0;
    partitioned<__int128>(
        group.order(), threads,
        [&](std::int64_t begin, std::int64_t end, __int128& acc) {
            group.scan(begin, end, [&](std::int64_t, std::int64_t num) { acc = (acc + num) % m; });
        },
        [&](const __int128& part) { total = (total + part) % m; });
    return static_cast<std::int64_t>(total);
}

std::map<std::int64_t, std::int64_t> qbar_histogram(const DiscriminantGroup& group, unsigned threads) {
    using Histogram = std::map<std::int64_t, std::int64_t>;
    Histogram total;
    partitioned<Histogram>(
        group.order(), threads,
        [&](std::int64_t begin, std::int64_t end, Histogram& h) {
            group.scan(begin, end, [&](std::int64_t, std::int64_t num) { ++h[num]; });
        },
        [&](const Histogram& part) {
            for (const auto& [k, v] : part) total[k] += v;
        });
    return total;
}

}  // namespace nileta
