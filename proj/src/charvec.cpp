#include "formgate/charvec.hpp"

#include "formgate/error.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace formgate::charvec {

namespace {

using lattice::Definiteness;
using lattice::FormInvariants;
using lattice::IntMatrix;

enum class ChildOrder { NearestFirst, Ascending };
enum class BoundKind { Strict, Inclusive };

// What a leaf visitor wants next.
struct LeafAction
{
    bool stop = false;
    std::optional<Rational> new_bound;
};

// Fincke-Pohst enumeration of points x in residue + stride*Z^n with x^T A x
// under a bound, A positive definite. The coordinates are decided in the order
// x_0, x_1, ..., so an ascending child order walks the points lexicographically.
class Enumerator
{
public:
    Enumerator(const IntMatrix& positive_form, std::vector<Integer> residues, int stride)
        : m_n(positive_form.size())
        , m_residues(std::move(residues))
        , m_stride(stride)
    {
        decompose(positive_form);
    }

    using Visitor = std::function<LeafAction(const IntVector& x, const Integer& value)>;

    std::uint64_t run(Rational bound, BoundKind kind, ChildOrder order, const Visitor& visit)
    {
        m_bound = std::move(bound);
        m_kind = kind;
        m_order = order;
        m_visit = &visit;
        m_nodes = 0;
        m_stopped = false;
        m_x.assign(m_n, Integer(0));
        if (m_n == 0) {
            const LeafAction action = visit(m_x, Integer(0));
            (void)action;
            return 1;
        }
        descend(m_n - 1, Rational(0));
        return m_nodes;
    }

private:
    // LDL^T of the coordinate-reversed form: level k of the tree fixes x_{n-1-k}.
    void decompose(const IntMatrix& a)
    {
        m_d.assign(m_n, Rational(0));
        m_l.assign(m_n, std::vector<Rational>(m_n, Rational(0)));
        auto b = [&](std::size_t i, std::size_t j) -> const Integer& { return a[m_n - 1 - i][m_n - 1 - j]; };
        for (std::size_t j = 0; j < m_n; ++j) {
            Rational dj = b(j, j);
            for (std::size_t k = 0; k < j; ++k) {
                dj -= m_l[j][k] * m_l[j][k] * m_d[k];
            }
            if (dj <= 0) {
                throw Error(ErrorCode::NotDefinite, "form is not positive definite after orientation fix");
            }
            m_d[j] = dj;
            m_l[j][j] = 1;
            for (std::size_t i = j + 1; i < m_n; ++i) {
                Rational v = b(i, j);
                for (std::size_t k = 0; k < j; ++k) {
                    v -= m_l[i][k] * m_l[j][k] * m_d[k];
                }
                m_l[i][j] = v / dj;
            }
        }
    }

    [[nodiscard]] std::size_t coord(std::size_t level) const { return m_n - 1 - level; }

    [[nodiscard]] bool admissible(const Rational& total) const
    {
        return m_kind == BoundKind::Strict ? total < m_bound : total <= m_bound;
    }

    [[nodiscard]] Rational term(std::size_t level, const Integer& y, const Rational& center) const
    {
        const Rational diff = Rational(y) - center;
        return m_d[level] * diff * diff;
    }

    // Nearest point of residue + stride*Z to `center`.
    [[nodiscard]] Integer nearest(std::size_t level, const Rational& center) const
    {
        const Integer& residue = m_residues[coord(level)];
        Rational t = (center - residue) / m_stride + Rational(1, 2);
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        return residue + q * m_stride;
    }

    void descend(std::size_t level, const Rational& partial)
    {
        Rational center = 0;
        for (std::size_t j = level + 1; j < m_n; ++j) {
            center -= m_l[j][level] * m_x[coord(j)];
        }

        const Integer start = nearest(level, center);
        if (m_order == ChildOrder::NearestFirst) {
            Integer lo = start - m_stride;
            Integer hi = start + m_stride;
            bool lo_open = true;
            bool hi_open = true;
            if (!visit_child(level, start, center, partial)) {
                return;  // the nearest point fails, so every point fails
            }
            while ((lo_open || hi_open) && !m_stopped) {
                bool take_lo = lo_open;
                if (lo_open && hi_open) {
                    take_lo = abs(Rational(lo) - center) <= abs(Rational(hi) - center);
                }
                if (take_lo) {
                    lo_open = visit_child(level, lo, center, partial);
                    lo -= m_stride;
                } else {
                    hi_open = visit_child(level, hi, center, partial);
                    hi += m_stride;
                }
            }
        } else {
            if (!admissible(partial + term(level, start, center))) {
                return;
            }
            Integer y = start;
            while (admissible(partial + term(level, Integer(y - m_stride), center))) {
                y -= m_stride;
            }
            while (!m_stopped && visit_child(level, y, center, partial)) {
                y += m_stride;
            }
        }
    }

    // Returns false when y is outside the bound; the bound is checked again
    // here because a leaf may have tightened it.
    bool visit_child(std::size_t level, const Integer& y, const Rational& center, const Rational& partial)
    {
        const Rational total = partial + term(level, y, center);
        if (!admissible(total)) {
            return false;
        }
        ++m_nodes;
        m_x[coord(level)] = y;
        if (level == 0) {
            const Integer value = total.get_num();  // integral at a leaf
            LeafAction action = (*m_visit)(m_x, value);
            if (action.new_bound) {
                m_bound = *action.new_bound;
            }
            if (action.stop) {
                m_stopped = true;
            }
        } else {
            descend(level - 1, total);
        }
        m_x[coord(level)] = 0;
        return true;
    }

    std::size_t m_n;
    std::vector<Integer> m_residues;
    int m_stride;
    std::vector<Rational> m_d;
    std::vector<std::vector<Rational>> m_l;

    Rational m_bound;
    BoundKind m_kind = BoundKind::Strict;
    ChildOrder m_order = ChildOrder::NearestFirst;
    const Visitor* m_visit = nullptr;
    std::uint64_t m_nodes = 0;
    bool m_stopped = false;
    IntVector m_x;
};

// Returns (|G|, sign) after checking definiteness.
std::pair<IntMatrix, int> positive_part(const GramLattice& lattice, const FormInvariants& inv)
{
    if (!lattice::is_definite(inv)) {
        throw Error(ErrorCode::NotDefinite, "form is " + std::string(lattice::to_string(inv.definiteness)));
    }
    const int sign = inv.definiteness == Definiteness::Negative ? -1 : 1;
    IntMatrix a = lattice.rows();
    if (sign < 0) {
        for (auto& row : a) {
            for (auto& e : row) {
                e = -e;
            }
        }
    }
    return {std::move(a), sign};
}

void check_rank_cap(const GramLattice& lattice, std::size_t rank_cap)
{
    if (lattice.rank() > rank_cap) {
        throw Error(ErrorCode::RankCapExceeded, "rank " + std::to_string(lattice.rank()) + " exceeds cap " +
                                                    std::to_string(rank_cap));
    }
}

// Integer row echelon form; returns the nonzero rows.
IntMatrix row_echelon_basis(IntMatrix rows, std::size_t columns)
{
    std::size_t top = 0;
    for (std::size_t c = 0; c < columns && top < rows.size(); ++c) {
        while (true) {
            // Pick the row at or below `top` with the smallest nonzero |entry| in column c.
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r) {
                if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) {
                    best = r;
                }
            }
            if (best == rows.size()) {
                break;
            }
            std::swap(rows[top], rows[best]);
            bool reduced = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) {
                    continue;
                }
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
                for (std::size_t k = c; k < columns; ++k) {
                    rows[r][k] -= q * rows[top][k];
                }
                if (rows[r][c] != 0) {
                    reduced = false;
                }
            }
            if (reduced) {
                ++top;
                break;
            }
        }
    }
    rows.resize(top);
    return rows;
}

}  // namespace

CharacteristicCoset characteristic_coset(const GramLattice& lattice)
{
    const std::size_t n = lattice.rank();
    if (is_even(lattice::determinant(lattice))) {
        throw Error(ErrorCode::NotUnimodular, "determinant is even, so G is singular mod 2");
    }
    // Augmented system over GF(2): [G mod 2 | diag(G) mod 2].
    std::vector<std::vector<std::uint8_t>> m(n, std::vector<std::uint8_t>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = is_even(lattice.at(i, j)) ? 0 : 1;
        }
        m[i][n] = is_even(lattice.at(i, i)) ? 0 : 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && m[pivot][c] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            throw Error(ErrorCode::NotUnimodular, "G is singular mod 2");
        }
        std::swap(m[c], m[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r != c && m[r][c] != 0) {
                for (std::size_t k = c; k <= n; ++k) {
                    m[r][k] ^= m[c][k];
                }
            }
        }
    }
    CharacteristicCoset coset{lattice, std::vector<std::uint8_t>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        coset.base[i] = m[i][n];
    }
    return coset;
}

bool is_characteristic(const CharacteristicCoset& coset, const IntVector& v)
{
    if (v.size() != coset.base.size()) {
        return false;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_even(v[i]) != (coset.base[i] == 0)) {
            return false;
        }
    }
    return true;
}

CharMinResult min_characteristic_norm(const GramLattice& lattice, std::size_t rank_cap)
{
    check_rank_cap(lattice, rank_cap);
    const FormInvariants inv = lattice::validate(lattice);
    auto [form, sign] = positive_part(lattice, inv);
    if (inv.determinant != 1 && inv.determinant != -1) {
        throw Error(ErrorCode::NotUnimodular, "determinant " + inv.determinant.get_str());
    }
    (void)sign;
    const std::size_t n = lattice.rank();
    CharMinResult result;

    // Phase 1: the minimum value, found in an LLL-reduced basis of |G| with the
    // incumbent seeded by the characteristic base vector of that basis.
    const lattice::LllResult reduced = lattice::lll_reduce(GramLattice(form));
    const CharacteristicCoset reduced_coset = characteristic_coset(reduced.lattice);
    IntVector reduced_residues(n);
    for (std::size_t i = 0; i < n; ++i) {
        reduced_residues[i] = reduced_coset.base[i];
    }
    Integer best = reduced.lattice.norm(reduced_residues);
    Enumerator reduced_enumerator(reduced.lattice.rows(), reduced_residues, 2);
    result.node_count += reduced_enumerator.run(Rational(best), BoundKind::Strict, ChildOrder::NearestFirst,
                                                [&](const IntVector&, const Integer& value) {
                                                    best = value;
                                                    return LeafAction{false, Rational(value)};
                                                });

    const CharacteristicCoset coset = characteristic_coset(lattice);
    IntVector residues(n);
    for (std::size_t i = 0; i < n; ++i) {
        residues[i] = coset.base[i];
    }
    Enumerator enumerator(form, residues, 2);

    // Phase 2: lexicographically first point attaining it.
    result.node_count += enumerator.run(Rational(best), BoundKind::Inclusive, ChildOrder::Ascending,
                                        [&](const IntVector& x, const Integer&) {
                                            result.witness = x;
                                            return LeafAction{true, std::nullopt};
                                        });
    if (result.witness.size() != n) {
        throw Error(ErrorCode::InvalidArgument, "internal: minimizer not re-found");
    }
    result.min_abs_norm = best;
    return result;
}

CharMinResult brute_force_min_char(const GramLattice& lattice, int radius, std::uint64_t max_points)
{
    if (radius < 1) {
        throw Error(ErrorCode::InvalidArgument, "radius must be at least 1");
    }
    const FormInvariants inv = lattice::validate(lattice);
    if (!lattice::is_definite(inv)) {
        throw Error(ErrorCode::NotDefinite, "form is " + std::string(lattice::to_string(inv.definiteness)));
    }
    const CharacteristicCoset coset = characteristic_coset(lattice);
    const std::size_t n = lattice.rank();

    std::vector<std::vector<Integer>> values(n);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        for (int v = -radius; v <= radius; ++v) {
            if (((v % 2) != 0) == (coset.base[i] != 0)) {
                values[i].emplace_back(v);
            }
        }
        if (total > max_points / values[i].size()) {
            throw Error(ErrorCode::BoxTooLarge, "box exceeds " + std::to_string(max_points) + " points");
        }
        total *= values[i].size();
    }

    CharMinResult result;
    std::vector<std::size_t> index(n, 0);
    IntVector x(n);
    bool first = true;
    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = values[i][index[i]];
        }
        ++result.node_count;
        const Integer value = abs(lattice.norm(x));
        if (first || value < result.min_abs_norm) {
            result.min_abs_norm = value;
            result.witness = x;
            first = false;
        }
        // Odometer, last coordinate fastest, so points come in lexicographic order.
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++index[pos] < values[pos].size()) {
                break;
            }
            index[pos] = 0;
            if (pos == 0) {
                return result;
            }
        }
        if (n == 0) {
            return result;
        }
    }
}

StandardnessResult elkies_is_standard(const GramLattice& lattice, std::size_t rank_cap)
{
    StandardnessResult out;
    out.minimum = min_characteristic_norm(lattice, rank_cap);
    out.standard = out.minimum.min_abs_norm >= Integer(static_cast<unsigned long>(lattice.rank()));
    return out;
}

std::vector<Integer> find_unit_vector(const GramLattice& lattice)
{
    const FormInvariants inv = lattice::validate(lattice);
    auto [form, sign] = positive_part(lattice, inv);
    (void)sign;
    const std::size_t n = lattice.rank();
    const lattice::LllResult reduced = lattice::lll_reduce(GramLattice(form));
    Enumerator enumerator(reduced.lattice.rows(), IntVector(n, Integer(0)), 1);
    IntVector found;
    (void)enumerator.run(Rational(1), BoundKind::Inclusive, ChildOrder::Ascending,
                         [&](const IntVector& x, const Integer& value) {
                             if (value == 1) {
                                 found = x;
                                 return LeafAction{true, std::nullopt};
                             }
                             return LeafAction{};
                         });
    if (found.empty()) {
        return found;
    }
    IntVector original(n, Integer(0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            original[r] += reduced.transform[r][c] * found[c];
        }
    }
    return original;
}

bool split_units_is_standard(const GramLattice& lattice, std::size_t rank_cap)
{
    check_rank_cap(lattice, rank_cap);
    const FormInvariants inv = lattice::validate(lattice);
    if (!lattice::is_definite(inv)) {
        throw Error(ErrorCode::NotDefinite, "form is " + std::string(lattice::to_string(inv.definiteness)));
    }
    if (inv.determinant != 1 && inv.determinant != -1) {
        throw Error(ErrorCode::NotUnimodular, "determinant " + inv.determinant.get_str());
    }

    GramLattice current = lattice;
    while (current.rank() > 0) {
        const IntVector unit = find_unit_vector(current);
        if (unit.empty()) {
            return false;
        }
        const std::size_t n = current.rank();
        // v^T G v = +-1, so x -> x - (x.v)(v.v) v projects Z^n onto the complement.
        const Integer self = current.norm(unit);
        IntMatrix images(n, IntVector(n));
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n, Integer(0));
            e[i] = 1;
            const Integer coeff = current.inner(e, unit) * self;
            for (std::size_t k = 0; k < n; ++k) {
                images[i][k] = e[k] - coeff * unit[k];
            }
        }
        const IntMatrix basis = row_echelon_basis(std::move(images), n);
        if (basis.size() + 1 != n) {
            throw Error(ErrorCode::InvalidArgument, "internal: complement has wrong rank");
        }
        IntMatrix gram(basis.size(), IntVector(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = i; j < basis.size(); ++j) {
                gram[i][j] = current.inner(basis[i], basis[j]);
                gram[j][i] = gram[i][j];
            }
        }
        current = GramLattice(gram);
    }
    return true;
}

}  // namespace formgate::charvec
