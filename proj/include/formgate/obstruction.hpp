/**
 * @file obstruction.hpp
 * @brief Smoothability gates evaluated on a presented 4-manifold.
 *
 * Each gate checks the hypotheses of one constraint that smooth closed
 * 4-manifolds must satisfy and reports whether the presented data violates it.
 * A violated, applicable gate certifies that the presentation admits no smooth
 * structure. No gate ever proves smoothability.
 *
 * Gate ids:
 *   bohr_lee_li        b2 >= 5/4 |sign|, non-spin even indefinite, H1 2-torsion Z/2^k or Z/2+Z/2
 *   definite_standard  definite Q_{X,l} with torsion-lift must be diagonal (Elkies test)
 *   furuta             b2 >= 5/4 |sign| + 2, spin indefinite
 *   rohlin             sign = 0 mod 16, spin
 *   strong_10_8_hook   user-supplied linear inequality, disabled by default
 *   ten_eighths_local  8 b+(X;l) >= -sign(X) when w1(lambda)^2 = w2(X)
 *   theorem_ineq       |C^2| >= b2(X;l) for characteristic C when b+(X;l) = 0
 */

#pragma once

#include "formgate/charvec.hpp"
#include "formgate/manifold.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace formgate::obstruction {

using manifold::LocalSystemChoice;
using manifold::ManifoldPresentation;

enum class Verdict { Satisfied, Violated, NotApplicable };

[[nodiscard]] std::string_view to_string(Verdict verdict) noexcept;

using HypothesisValue = std::variant<Integer, bool>;

struct GateResult
{
    std::string gate_id;
    bool applicable = false;
    std::map<std::string, HypothesisValue> hypothesis_values;
    Verdict verdict = Verdict::NotApplicable;
    std::string note;
    std::optional<std::string> error;  ///< set when evaluation failed; the gate is then not applicable
    std::optional<IntVector> witness;  ///< characteristic vector realizing the minimum, when computed
};

struct VirtualDimension
{
    std::int64_t d = 0;
    std::int64_t d_prime = 0;
};

/// d = (c1sq - sign)/4 - (b0l - b1l + bplusl), d' = (c1sq - sign)/4.
/// Throws Error(NotDivisible) when c1sq - sign is not a multiple of 4.
[[nodiscard]] VirtualDimension virtual_dimension(std::int64_t c1sq, std::int64_t sign, std::int64_t b0l,
                                                 std::int64_t b1l, std::int64_t bplusl);

/// Violated iff b2 < abs_sign_coefficient * |sign| + b1_coefficient * b1 + constant.
struct LinearInequality
{
    Rational abs_sign_coefficient;
    Rational b1_coefficient;
    Rational constant;
};

struct GateOptions
{
    std::size_t rank_cap = charvec::kDefaultRankCap;
    std::optional<int> oracle_radius;  ///< cross-check lattice minima against the brute-force oracle
};

[[nodiscard]] GateResult gate_definite_standard(const ManifoldPresentation& p, const LocalSystemChoice& c,
                                                const GateOptions& options = {});
[[nodiscard]] GateResult gate_ten_eighths_local(const ManifoldPresentation& p, const LocalSystemChoice& c);
[[nodiscard]] GateResult gate_rohlin(const ManifoldPresentation& p);
[[nodiscard]] GateResult gate_furuta(const ManifoldPresentation& p);
[[nodiscard]] GateResult gate_bohr_lee_li(const ManifoldPresentation& p);
[[nodiscard]] GateResult gate_strong_10_8(const ManifoldPresentation& p, const std::optional<LinearInequality>& hook);

/// Explicit characteristic element C of the materialized Q_{X,l}; requires b+(X;l) = 0.
/// Throws Error(InvalidArgument) when C is not characteristic.
[[nodiscard]] GateResult gate_theorem_ineq(const ManifoldPresentation& p, const LocalSystemChoice& c,
                                           const IntVector& characteristic, const GateOptions& options = {});

/// Aggregate form over every characteristic element: min |C^2| >= b2(X;l). The
/// orientation is reversed first when b-(X;l) = 0, so both definite signs apply.
[[nodiscard]] GateResult gate_theorem_ineq_aggregate(const ManifoldPresentation& p, const LocalSystemChoice& c,
                                                     const GateOptions& options = {});

struct NamedChoice
{
    std::string name;
    LocalSystemChoice choice;
};

struct ChoiceReport
{
    std::string name;
    std::optional<manifold::TwistedInvariants> twisted;
    std::vector<GateResult> gates;  ///< sorted by gate id
    std::optional<std::string> error;
};

struct Certificate
{
    std::string local_system;  ///< empty for untwisted gates
    std::string gate_id;

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct ObstructionReport
{
    manifold::UntwistedInvariants untwisted;
    std::vector<GateResult> untwisted_gates;  ///< sorted by gate id
    std::vector<ChoiceReport> choices;        ///< input order
    bool nonsmoothable = false;
    std::vector<Certificate> certificates;  ///< every (choice, gate) pair that fires
};

struct RunOptions
{
    GateOptions gates;
    std::optional<LinearInequality> strong_10_8;
};

/// Runs the untwisted gates once and the twisted gates for every choice. Errors
/// in one choice or gate are recorded there and never stop the others.
[[nodiscard]] ObstructionReport run_all(const ManifoldPresentation& p, const std::vector<NamedChoice>& choices,
                                        const RunOptions& options = {});

}  // namespace formgate::obstruction
