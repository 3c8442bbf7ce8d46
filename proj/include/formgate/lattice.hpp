/**
 * @file lattice.hpp
 * @brief Exact invariants of integral symmetric bilinear forms given by Gram matrices.
 *
 * Everything here is arbitrary precision. The signature comes from a symmetric
 * LDL^T elimination over the rationals, so zero leading minors are handled by
 * symmetric pivoting instead of Sylvester's criterion.
 */

#pragma once

#include "formgate/numeric.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace formgate::lattice {

using IntMatrix = std::vector<IntVector>;

/// Symmetric integer Gram matrix. Symmetry is checked on construction; unimodularity is not.
class GramLattice
{
public:
    GramLattice() = default;

    /// Throws Error(NotSquare) or Error(NotSymmetric).
    explicit GramLattice(const IntMatrix& rows);

    [[nodiscard]] std::size_t rank() const noexcept { return m_rank; }
    [[nodiscard]] const Integer& at(std::size_t i, std::size_t j) const { return m_entries[i * m_rank + j]; }
    [[nodiscard]] IntMatrix rows() const;

    /// v^T G w
    [[nodiscard]] Integer inner(std::span<const Integer> v, std::span<const Integer> w) const;
    /// v^T G v
    [[nodiscard]] Integer norm(std::span<const Integer> v) const { return inner(v, v); }

    friend bool operator==(const GramLattice&, const GramLattice&) = default;

private:
    std::size_t m_rank = 0;
    std::vector<Integer> m_entries;
};

enum class Parity { Even, Odd };
enum class Definiteness { Positive, Negative, Indefinite, Degenerate };

[[nodiscard]] std::string_view to_string(Parity parity) noexcept;
[[nodiscard]] std::string_view to_string(Definiteness definiteness) noexcept;

struct FormInvariants
{
    std::size_t rank = 0;
    std::int64_t signature = 0;
    Parity parity = Parity::Even;
    Definiteness definiteness = Definiteness::Positive;
    std::size_t positive = 0;  ///< b+
    std::size_t negative = 0;  ///< b-
    std::size_t nullity = 0;
    Integer determinant;

    friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
};

/// Validates a raw matrix and returns its invariants. Throws Error(NotSquare/NotSymmetric).
[[nodiscard]] FormInvariants validate(const IntMatrix& gram);
[[nodiscard]] FormInvariants validate(const GramLattice& lattice);

/// Exact determinant by fraction-free (Bareiss) elimination. det of the rank-0 form is 1.
[[nodiscard]] Integer determinant(const GramLattice& lattice);

[[nodiscard]] bool is_unimodular(const GramLattice& lattice);
[[nodiscard]] bool is_definite(const FormInvariants& inv) noexcept;

[[nodiscard]] GramLattice direct_sum(const GramLattice& a, const GramLattice& b);
[[nodiscard]] GramLattice negate(const GramLattice& lattice);

/// Returns U^T G U for a pseudorandom U in GL(n, Z) built from `ops` elementary
/// operations (row additions with multiplier +-1 or +-2, swaps, sign flips).
/// `ops == 0` gives U = identity. A negative `ops` means the default of 4 * rank.
[[nodiscard]] GramLattice unimodular_scramble(const GramLattice& lattice, std::uint64_t seed, int ops = -1);

/// Same as unimodular_scramble, also returning U (columns are the images of the basis vectors).
struct ScrambleResult
{
    GramLattice lattice;
    IntMatrix transform;
};
[[nodiscard]] ScrambleResult unimodular_scramble_with_transform(const GramLattice& lattice, std::uint64_t seed,
                                                                int ops = -1);

/// Basis change with U^T G U = reduced; columns of `transform` are the new basis vectors.
struct LllResult
{
    GramLattice lattice;
    IntMatrix transform;
};

/// LLL reduction (delta = 99/100) of a positive definite Gram matrix, exact arithmetic.
/// Throws Error(NotDefinite) when the form is not positive definite.
[[nodiscard]] LllResult lll_reduce(const GramLattice& positive_definite);

// Standard forms.
[[nodiscard]] GramLattice diagonal(std::size_t n, int entry);
[[nodiscard]] GramLattice hyperbolic();
/// The E8 root lattice Gram matrix (positive definite, even) times `sign`.
[[nodiscard]] GramLattice e8(int sign = -1);
/// `copies` orthogonal copies of `block`.
[[nodiscard]] GramLattice repeat(const GramLattice& block, std::size_t copies);

}  // namespace formgate::lattice
