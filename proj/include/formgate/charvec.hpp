/**
 * @file charvec.hpp
 * @brief Characteristic vectors of unimodular lattices and the Elkies standardness test.
 *
 * A vector w is characteristic when w.v = v.v (mod 2) for every lattice vector v.
 * In coordinates these form the coset base + 2Z^n, where base is the unique 0/1
 * solution of G x = diag(G) (mod 2). For a definite unimodular form of rank n,
 * Elkies' theorem says min |w.w| over that coset is at least n exactly when the
 * form is the standard one, +-Z^n.
 */

#pragma once

#include "formgate/lattice.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace formgate::charvec {

using lattice::GramLattice;

inline constexpr std::size_t kDefaultRankCap = 24;
inline constexpr std::uint64_t kDefaultBoxCap = 50'000'000;

struct CharacteristicCoset
{
    GramLattice lattice;
    std::vector<std::uint8_t> base;  ///< coordinates in {0,1}
};

struct CharMinResult
{
    Integer min_abs_norm;
    IntVector witness;
    std::uint64_t node_count = 0;
};

struct StandardnessResult
{
    bool standard = false;
    CharMinResult minimum;
};

/// Solves G x = diag(G) over GF(2). Throws Error(NotUnimodular) when det(G) is even.
[[nodiscard]] CharacteristicCoset characteristic_coset(const GramLattice& lattice);

/// True when `v` lies in the characteristic coset of `coset.lattice`.
[[nodiscard]] bool is_characteristic(const CharacteristicCoset& coset, const IntVector& v);

/// Exact minimum of |w^T G w| over characteristic w, by Fincke-Pohst enumeration on |G|
/// (the value in an LLL-reduced basis, the witness in the given one).
/// The witness is the lexicographically smallest minimizer.
/// Throws NotDefinite, NotUnimodular or RankCapExceeded.
[[nodiscard]] CharMinResult min_characteristic_norm(const GramLattice& lattice,
                                                    std::size_t rank_cap = kDefaultRankCap);

/// Exhaustive scan of characteristic vectors with coordinates in [-radius, radius].
/// Test oracle; the result is a true minimum only if a minimizer lies inside the box.
[[nodiscard]] CharMinResult brute_force_min_char(const GramLattice& lattice, int radius,
                                                 std::uint64_t max_points = kDefaultBoxCap);

/// min |w^2| >= rank over characteristic w.
[[nodiscard]] StandardnessResult elkies_is_standard(const GramLattice& lattice,
                                                    std::size_t rank_cap = kDefaultRankCap);

/// Independent standardness check: split off norm +-1 vectors one at a time.
[[nodiscard]] bool split_units_is_standard(const GramLattice& lattice, std::size_t rank_cap = kDefaultRankCap);

/// Some vector v with |v^T G v| == 1 in a definite lattice, or an empty vector if none exists.
[[nodiscard]] std::vector<Integer> find_unit_vector(const GramLattice& lattice);

}  // namespace formgate::charvec
