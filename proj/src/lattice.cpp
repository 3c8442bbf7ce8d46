#include "formgate/lattice.hpp"

#include "formgate/error.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <utility>

namespace formgate::lattice {

namespace {

void check_shape(const IntMatrix& rows)
{
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw Error(ErrorCode::NotSquare, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                                  " entries, expected " + std::to_string(n));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rows[i][j] != rows[j][i]) {
                throw Error(ErrorCode::NotSymmetric,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) + ") differs from its transpose");
            }
        }
    }
}

struct SignCounts
{
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t nullity = 0;
};

// Symmetric Gaussian elimination over Q. Each step is a congruence, so the
// pivot signs are the inertia of the form.
SignCounts inertia(const GramLattice& lattice)
{
    const std::size_t n = lattice.rank();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = lattice.at(i, j);
        }
    }
    auto swap_index = [&](std::size_t p, std::size_t q) {
        if (p == q) {
            return;
        }
        std::swap(a[p], a[q]);
        for (auto& row : a) {
            std::swap(row[p], row[q]);
        }
    };

    SignCounts counts;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = n;
        for (std::size_t i = k; i < n; ++i) {
            if (a[i][i] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) {
            // Zero diagonal: fold a nonzero off-diagonal entry onto the diagonal.
            std::size_t pi = n;
            std::size_t pj = n;
            for (std::size_t i = k; i < n && pi == n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (a[i][j] != 0) {
                        pi = i;
                        pj = j;
                        break;
                    }
                }
            }
            if (pi == n) {
                counts.nullity += n - k;
                break;
            }
            for (std::size_t c = k; c < n; ++c) {
                a[pi][c] += a[pj][c];
            }
            for (std::size_t r = k; r < n; ++r) {
                a[r][pi] += a[r][pj];
            }
            pivot = pi;
        }
        swap_index(k, pivot);

        const Rational p = a[k][k];
        if (p > 0) {
            ++counts.positive;
        } else {
            ++counts.negative;
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            if (a[r][k] == 0) {
                continue;
            }
            const Rational factor = a[r][k] / p;
            for (std::size_t c = k + 1; c < n; ++c) {
                a[r][c] -= factor * a[k][c];
            }
            a[r][k] = 0;
        }
        for (std::size_t c = k + 1; c < n; ++c) {
            a[k][c] = 0;
        }
    }
    return counts;
}

}  // namespace

GramLattice::GramLattice(const IntMatrix& rows)
{
    check_shape(rows);
    m_rank = rows.size();
    m_entries.reserve(m_rank * m_rank);
    for (const auto& row : rows) {
        m_entries.insert(m_entries.end(), row.begin(), row.end());
    }
}

IntMatrix GramLattice::rows() const
{
    IntMatrix out(m_rank, IntVector(m_rank));
    for (std::size_t i = 0; i < m_rank; ++i) {
        for (std::size_t j = 0; j < m_rank; ++j) {
            out[i][j] = at(i, j);
        }
    }
    return out;
}

Integer GramLattice::inner(std::span<const Integer> v, std::span<const Integer> w) const
{
    if (v.size() != m_rank || w.size() != m_rank) {
        throw Error(ErrorCode::InvalidArgument, "vector length does not match lattice rank");
    }
    Integer total = 0;
    Integer row_sum;
    for (std::size_t i = 0; i < m_rank; ++i) {
        if (v[i] == 0) {
            continue;
        }
        row_sum = 0;
        for (std::size_t j = 0; j < m_rank; ++j) {
            row_sum += at(i, j) * w[j];
        }
        total += v[i] * row_sum;
    }
    return total;
}

std::string_view to_string(Parity parity) noexcept
{
    return parity == Parity::Even ? "even" : "odd";
}

std::string_view to_string(Definiteness definiteness) noexcept
{
    switch (definiteness) {
    case Definiteness::Positive: return "positive";
    case Definiteness::Negative: return "negative";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::Degenerate: return "degenerate";
    }
    return "unknown";
}

Integer determinant(const GramLattice& lattice)
{
    const std::size_t n = lattice.rank();
    if (n == 0) {
        return 1;
    }
    IntMatrix m = lattice.rows();
    Integer sign = 1;
    Integer previous = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) {
                ++swap_row;
            }
            if (swap_row == n) {
                return 0;
            }
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
            }
        }
        previous = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

FormInvariants validate(const GramLattice& lattice)
{
    FormInvariants inv;
    inv.rank = lattice.rank();
    const SignCounts counts = inertia(lattice);
    inv.positive = counts.positive;
    inv.negative = counts.negative;
    inv.nullity = counts.nullity;
    inv.signature = static_cast<std::int64_t>(counts.positive) - static_cast<std::int64_t>(counts.negative);

    inv.parity = Parity::Even;
    for (std::size_t i = 0; i < inv.rank; ++i) {
        if (!is_even(lattice.at(i, i))) {
            inv.parity = Parity::Odd;
            break;
        }
    }

    if (counts.nullity > 0) {
        inv.definiteness = Definiteness::Degenerate;
    } else if (counts.negative == 0) {
        inv.definiteness = Definiteness::Positive;
    } else if (counts.positive == 0) {
        inv.definiteness = Definiteness::Negative;
    } else {
        inv.definiteness = Definiteness::Indefinite;
    }
    inv.determinant = determinant(lattice);
    return inv;
}

FormInvariants validate(const IntMatrix& gram)
{
    return validate(GramLattice(gram));
}

bool is_unimodular(const GramLattice& lattice)
{
    const Integer det = determinant(lattice);
    return det == 1 || det == -1;
}

bool is_definite(const FormInvariants& inv) noexcept
{
    return inv.definiteness == Definiteness::Positive || inv.definiteness == Definiteness::Negative;
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b)
{
    const std::size_t n = a.rank() + b.rank();
    IntMatrix rows(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = 0; j < a.rank(); ++j) {
            rows[i][j] = a.at(i, j);
        }
    }
    const std::size_t off = a.rank();
    for (std::size_t i = 0; i < b.rank(); ++i) {
        for (std::size_t j = 0; j < b.rank(); ++j) {
            rows[off + i][off + j] = b.at(i, j);
        }
    }
    return GramLattice(rows);
}

GramLattice negate(const GramLattice& lattice)
{
    IntMatrix rows = lattice.rows();
    for (auto& row : rows) {
        for (auto& entry : row) {
            entry = -entry;
        }
    }
    return GramLattice(rows);
}

ScrambleResult unimodular_scramble_with_transform(const GramLattice& lattice, std::uint64_t seed, int ops)
{
    const std::size_t n = lattice.rank();
    IntMatrix g = lattice.rows();
    IntMatrix u(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        u[i][i] = 1;
    }
    const int count = ops < 0 ? static_cast<int>(4 * n) : ops;
    std::mt19937_64 rng(seed);

    for (int step = 0; step < count && n > 0; ++step) {
        const auto kind = n >= 2 ? rng() % 6 : 5;
        const std::size_t i = rng() % n;
        std::size_t j = rng() % n;
        if (n >= 2 && j == i) {
            j = (i + 1 + rng() % (n - 1)) % n;
        }
        if (kind <= 3) {
            // column_i += m * column_j, applied to U and congruently to G.
            static constexpr int kMultipliers[] = {1, -1, 2, -2};
            const Integer m = kMultipliers[kind];
            for (std::size_t r = 0; r < n; ++r) {
                u[r][i] += m * u[r][j];
                g[r][i] += m * g[r][j];
            }
            for (std::size_t c = 0; c < n; ++c) {
                g[i][c] += m * g[j][c];
            }
        } else if (kind == 4) {
            for (std::size_t r = 0; r < n; ++r) {
                std::swap(u[r][i], u[r][j]);
            }
            std::swap(g[i], g[j]);
            for (auto& row : g) {
                std::swap(row[i], row[j]);
            }
        } else {
            for (std::size_t r = 0; r < n; ++r) {
                u[r][i] = -u[r][i];
                g[r][i] = -g[r][i];
            }
            for (std::size_t c = 0; c < n; ++c) {
                g[i][c] = -g[i][c];
            }
        }
    }
    return ScrambleResult{GramLattice(g), std::move(u)};
}

GramLattice unimodular_scramble(const GramLattice& lattice, std::uint64_t seed, int ops)
{
    return unimodular_scramble_with_transform(lattice, seed, ops).lattice;
}

GramLattice diagonal(std::size_t n, int entry)
{
    IntMatrix rows(n, IntVector(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
        rows[i][i] = entry;
    }
    return GramLattice(rows);
}

GramLattice hyperbolic()
{
    return GramLattice(IntMatrix{{0, 1}, {1, 0}});
}

GramLattice e8(int sign)
{
    // Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
    static constexpr std::pair<int, int> kEdges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    IntMatrix rows(8, IntVector(8, Integer(0)));
    for (std::size_t i = 0; i < 8; ++i) {
        rows[i][i] = 2 * sign;
    }
    for (const auto& [a, b] : kEdges) {
        rows[a][b] = -sign;
        rows[b][a] = -sign;
    }
    return GramLattice(rows);
}

LllResult lll_reduce(const GramLattice& positive_definite)
{
    const std::size_t n = positive_definite.rank();
    IntMatrix g = positive_definite.rows();
    IntMatrix u(n, IntVector(n, Integer(0)));  // u[row][col], column c is basis vector c
    for (std::size_t i = 0; i < n; ++i) {
        u[i][i] = 1;
    }
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
    std::vector<Rational> b(n);

    // Gram-Schmidt data of the current basis, rows from `from` on.
    auto orthogonalize = [&](std::size_t from) {
        for (std::size_t i = from; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational s(g[i][j]);
                for (std::size_t l = 0; l < j; ++l) {
                    s -= mu[j][l] * mu[i][l] * b[l];
                }
                mu[i][j] = s / b[j];
            }
            Rational s(g[i][i]);
            for (std::size_t l = 0; l < i; ++l) {
                s -= mu[i][l] * mu[i][l] * b[l];
            }
            if (s <= 0) {
                throw Error(ErrorCode::NotDefinite, "LLL input is not positive definite");
            }
            b[i] = s;
        }
    };
    // b_k -= q b_j
    auto subtract = [&](std::size_t k, std::size_t j, const Integer& q) {
        const Integer gkk = g[k][k] - 2 * q * g[j][k] + q * q * g[j][j];
        for (std::size_t m = 0; m < n; ++m) {
            if (m != k) {
                g[k][m] -= q * g[j][m];
                g[m][k] = g[k][m];
            }
        }
        g[k][k] = gkk;
        for (std::size_t r = 0; r < n; ++r) {
            u[r][k] -= q * u[r][j];
        }
        for (std::size_t l = 0; l < j; ++l) {
            mu[k][l] -= Rational(q) * mu[j][l];
        }
        mu[k][j] -= Rational(q);
    };
    auto round_nearest = [](const Rational& x) {
        Integer twice = 2 * x.get_num() + x.get_den();
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), Integer(2 * x.get_den()).get_mpz_t());
        return q;
    };

    if (n == 0) {
        return {positive_definite, u};
    }
    orthogonalize(0);
    const Rational delta(99, 100);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            if (abs(mu[k][j]) > Rational(1, 2)) {
                subtract(k, j, round_nearest(mu[k][j]));
            }
        }
        if (b[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
            ++k;
            continue;
        }
        std::swap(g[k], g[k - 1]);
        for (auto& row : g) {
            std::swap(row[k], row[k - 1]);
        }
        for (auto& row : u) {
            std::swap(row[k], row[k - 1]);
        }
        orthogonalize(k - 1);
        k = std::max<std::size_t>(k - 1, 1);
    }
    return {GramLattice(g), u};
}

GramLattice repeat(const GramLattice& block, std::size_t copies)
{
    GramLattice out;
    for (std::size_t i = 0; i < copies; ++i) {
        out = direct_sum(out, block);
    }
    return out;
}

}  // namespace formgate::lattice
