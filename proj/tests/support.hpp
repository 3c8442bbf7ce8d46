#pragma once

#include "formgate/charvec.hpp"
#include "formgate/lattice.hpp"
#include "formgate/manifold.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace formgate::test {

using lattice::GramLattice;
using lattice::IntMatrix;
using manifold::ManifoldPresentation;

inline GramLattice gram(std::initializer_list<std::initializer_list<long>> rows)
{
    IntMatrix m;
    for (const auto& r : rows) {
        IntVector row;
        for (long x : r) {
            row.emplace_back(x);
        }
        m.push_back(std::move(row));
    }
    return GramLattice(m);
}

/// Sum of `name`-presentations in order, e.g. {{"E8", 2}, {"T2xS2", 3}}.
inline ManifoldPresentation build(std::initializer_list<std::pair<const char*, std::size_t>> parts)
{
    ManifoldPresentation p;
    for (const auto& [name, count] : parts) {
        p = manifold::connect_sum(p, manifold::presentation(name, count));
    }
    return p;
}

/// Simply connected summand with intersection form `form` and no local classes.
inline manifold::Summand custom_summand(const std::string& name, const GramLattice& form)
{
    manifold::Summand s;
    s.name = name;
    s.form = form;
    s.spin = lattice::validate(form).parity == lattice::Parity::Even;
    s.provenance = "test fixture";
    return s;
}

/// Laplace expansion: independent of the Bareiss code path. Small n only.
inline Integer laplace_det(const IntMatrix& m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return 1;
    }
    if (n == 1) {
        return m[0][0];
    }
    Integer det = 0;
    for (std::size_t c = 0; c < n; ++c) {
        IntMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            IntVector row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) {
                    row.push_back(m[r][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        const Integer term = m[0][c] * laplace_det(minor);
        det += (c % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

struct EigenCounts
{
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

/// Floating-point inertia; entries must be small enough for double.
inline EigenCounts eigen_inertia(const GramLattice& l)
{
    const auto n = static_cast<Eigen::Index>(l.rank());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            m(i, j) = l.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
        }
    }
    EigenCounts c;
    if (n == 0) {
        return c;
    }
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (ev(i) > 1e-9 * scale) {
            ++c.positive;
        } else if (ev(i) < -1e-9 * scale) {
            ++c.negative;
        } else {
            ++c.zero;
        }
    }
    return c;
}

/// Exact diagonal entries of G^{-1} by Gauss-Jordan over Q.
inline std::vector<Rational> inverse_diagonal(const GramLattice& l)
{
    const std::size_t n = l.rank();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = Rational(l.at(i, j));
        }
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (a[p][c] == 0) {
            ++p;
        }
        std::swap(a[p], a[c]);
        const Rational pivot = a[c][c];
        for (auto& x : a[c]) {
            x /= pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r != c && a[r][c] != 0) {
                const Rational f = a[r][c];
                for (std::size_t k = 0; k < 2 * n; ++k) {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    std::vector<Rational> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i][n + i];
    }
    return d;
}

/// Every characteristic minimizer of a definite unimodular rank-n lattice
/// satisfies |x_i|^2 <= n (G^{-1})_ii by Cauchy-Schwarz; <= 24 keeps it inside radius 4.
inline bool minimizer_in_radius4_box(const GramLattice& l)
{
    const auto n = static_cast<long>(l.rank());
    for (const Rational& d : inverse_diagonal(l)) {
        if (abs(d) * n > 24) {
            return false;
        }
    }
    return true;
}

/// Definite unimodular lattices of rank 1..5 (all diagonal up to equivalence),
/// scrambled, keeping only those for which the radius-4 box is a valid oracle.
inline std::vector<GramLattice> definite_corpus(std::size_t wanted, std::uint64_t seed)
{
    std::vector<GramLattice> out;
    std::mt19937_64 rng(seed);
    for (std::uint64_t attempt = 0; out.size() < wanted && attempt < 50 * wanted; ++attempt) {
        const std::size_t n = 1 + rng() % 5;
        const int sign = (rng() % 2 == 0) ? -1 : 1;
        const int ops = static_cast<int>(rng() % (2 * n + 1));
        GramLattice g = lattice::unimodular_scramble(lattice::diagonal(n, sign), rng(), ops);
        if (minimizer_in_radius4_box(g)) {
            out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace formgate::test
