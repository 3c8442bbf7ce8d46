/**
 * @file manifold.hpp
 * @brief Building-block 4-manifolds, connected sums and local-coefficient Betti numbers.
 *
 * No cohomology is computed from chain complexes. Every summand carries its
 * untwisted form and, per named Z-bundle class, its twisted Betti data as
 * catalog constants. Two global identities are checked at runtime:
 *
 *   b0 - b1 + b+  =  b0(l) - b1(l) + b+(l)          (Euler-type identity)
 *   H*(cover; R)  =  H*(X; R) + H*(X; lambda)         (double cover splitting)
 *
 * For a connected sum with t nontrivial selections, b1(X;l) is the sum of the
 * per-summand values plus (t - 1); that rule is always cross-checked against
 * the first identity.
 */

#pragma once

#include "formgate/lattice.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace formgate::manifold {

using lattice::GramLattice;

/// 2-primary torsion of H_1: none, Z/2^k, Z/2+Z/2, or anything else.
struct TwoTorsion
{
    enum class Kind { None, Cyclic, Klein, Other };
    Kind kind = Kind::None;
    int exponent = 0;  ///< k for Z/2^k

    [[nodiscard]] static TwoTorsion none() { return {}; }
    [[nodiscard]] static TwoTorsion cyclic(int k) { return {Kind::Cyclic, k}; }
    [[nodiscard]] static TwoTorsion klein() { return {Kind::Klein, 0}; }
    [[nodiscard]] static TwoTorsion other() { return {Kind::Other, 0}; }

    friend bool operator==(const TwoTorsion&, const TwoTorsion&) = default;
};

[[nodiscard]] std::string to_string(const TwoTorsion& t);
/// Accepts "none", "Z/2", "Z/2^k", "Z/2+Z/2", "other".
[[nodiscard]] TwoTorsion parse_two_torsion(std::string_view text);
/// Direct sum of two descriptors.
[[nodiscard]] TwoTorsion combine(const TwoTorsion& a, const TwoTorsion& b);

struct LocalClass
{
    std::string name;
    bool nontrivial = true;
    std::int64_t b1_twisted = 0;
    std::int64_t b2_twisted = 0;
    std::int64_t bplus_twisted = 0;
    std::int64_t sign_twisted = 0;
    bool w1sq_zero = false;   ///< w1(lambda)^2 = 0
    bool w1sq_eq_w2 = false;  ///< w1(lambda)^2 = w2
    bool torsion_lift = false;  ///< w1(lambda)^2 lifts to the torsion of H^2(.;l)
    std::string provenance;
};

struct Summand
{
    std::string name;
    std::int64_t b1 = 0;
    GramLattice form;
    bool spin = false;
    int ks = 0;
    TwoTorsion h1_two_torsion;
    std::vector<LocalClass> local_classes;
    std::string provenance;

    [[nodiscard]] const LocalClass* find_class(std::string_view class_name) const;
};

/// Checks every data invariant of a summand (unimodular form, spin => even,
/// twisted sign/b2 consistency, twisted sign = untwisted sign, flag coherence,
/// per-summand Euler identity). Throws DataInconsistency or EulerIdentityViolation.
void validate_summand(const Summand& summand);

[[nodiscard]] Summand summand_from_json(const nlohmann::json& j);
[[nodiscard]] nlohmann::json to_json(const Summand& summand);

class Catalog
{
public:
    /// The catalog shipped in data/catalog.json, compiled in.
    [[nodiscard]] static const Catalog& builtin();
    [[nodiscard]] static Catalog from_json(const nlohmann::json& j);

    /// Throws Error(UnknownSummand).
    [[nodiscard]] const Summand& lookup(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const;
    /// Sorted by name.
    [[nodiscard]] std::vector<const Summand*> entries() const;
    [[nodiscard]] const std::string& version() const noexcept { return m_version; }

private:
    std::string m_version;
    std::map<std::string, Summand, std::less<>> m_entries;
};

[[nodiscard]] const Summand& catalog_lookup(std::string_view name);

struct ManifoldPresentation
{
    std::vector<Summand> summands;

    /// Labels "name#k", k counting instances of the same name from 1.
    [[nodiscard]] std::vector<std::string> instance_labels() const;
};

/// `count` copies of a catalog summand.
[[nodiscard]] ManifoldPresentation presentation(std::string_view name, std::size_t count = 1);
[[nodiscard]] ManifoldPresentation connect_sum(const ManifoldPresentation& p, const ManifoldPresentation& q);

/// -X: forms negated; per class b+(l) and b-(l) swap and sign_twisted flips.
[[nodiscard]] Summand reverse_orientation(const Summand& summand);
[[nodiscard]] ManifoldPresentation reverse_orientation(const ManifoldPresentation& p);

struct UntwistedInvariants
{
    std::int64_t b0 = 1;
    std::int64_t b1 = 0;
    std::int64_t b2 = 0;
    std::int64_t bplus = 0;
    std::int64_t bminus = 0;
    std::int64_t sign = 0;
    std::int64_t chi = 2;
    bool spin = true;
    int ks = 0;
    TwoTorsion h1_two_torsion;
    GramLattice form;
    lattice::FormInvariants form_invariants;
};

[[nodiscard]] UntwistedInvariants untwisted_invariants(const ManifoldPresentation& p);

inline constexpr std::string_view kTrivialClass = "trivial";

/// One class name per summand instance; kTrivialClass marks the trivial bundle.
struct LocalSystemChoice
{
    std::vector<std::string> selections;

    [[nodiscard]] static LocalSystemChoice all_trivial(const ManifoldPresentation& p);
    /// Keys are instance labels ("T2xS2#1") or "name#*" for every instance of a name.
    /// Throws InvalidArgument for labels matching no instance.
    [[nodiscard]] static LocalSystemChoice from_labels(const ManifoldPresentation& p,
                                                       const std::map<std::string, std::string>& labels);
    /// Puts `class_name` on every instance named `summand_name`.
    [[nodiscard]] static LocalSystemChoice on_every(const ManifoldPresentation& p, std::string_view summand_name,
                                                    std::string_view class_name);
};

struct TwistedInvariants
{
    std::int64_t b0l = 0;
    std::int64_t b1l = 0;
    std::int64_t b2l = 0;
    std::int64_t bplusl = 0;
    std::int64_t bminusl = 0;
    std::int64_t signl = 0;
    std::int64_t nontrivial_count = 0;
};

/// Throws UnknownLocalClass, AllTrivial, InvalidArgument (size mismatch) or EulerIdentityViolation.
[[nodiscard]] TwistedInvariants twisted_invariants(const ManifoldPresentation& p, const LocalSystemChoice& c);

struct DoubleCoverBetti
{
    std::int64_t b0t = 1;
    std::int64_t b1t = 0;
    std::int64_t b2t = 0;
    std::int64_t b3t = 0;
    std::int64_t b4t = 1;
    std::int64_t chi = 2;
};

[[nodiscard]] DoubleCoverBetti double_cover_betti(const ManifoldPresentation& p, const LocalSystemChoice& c);

struct GaugeComponents
{
    std::string torsion = "Z/2";
    std::int64_t free_rank = 0;
};

/// pi_0 of the gauge group: (Z/2) x Z^{b1(X;l)}.
[[nodiscard]] GaugeComponents gauge_pi0(const ManifoldPresentation& p, const LocalSystemChoice& c);

/// Homotopy type of the irreducible configuration space, "RP^inf x T^{b1(X;l)}".
[[nodiscard]] std::string config_space_descriptor(const ManifoldPresentation& p, const LocalSystemChoice& c);
[[nodiscard]] std::string config_space_descriptor(std::int64_t b1l);

/// Existence of a Spin^{c-} structure whose O(2)-bundle is R + lambda, i.e. w1(lambda)^2 = w2(X).
/// Evaluated summand-wise: w1sq_eq_w2 on nontrivial selections, spin on trivial ones.
/// Other bundle shapes are not modeled: e_trivial_plus_lambda = false throws NotApplicable.
[[nodiscard]] bool spin_cminus_exists(const ManifoldPresentation& p, const LocalSystemChoice& c,
                                      bool e_trivial_plus_lambda = true);

/// w1(lambda)^2 lifts to the torsion of H^2(X;l): every nontrivial selection carries the flag.
[[nodiscard]] bool torsion_lift_holds(const ManifoldPresentation& p, const LocalSystemChoice& c);

/// Q_{X,l} as a lattice, available only when every nontrivial selection has
/// b2_twisted = 0; it is then the direct sum of the trivially selected forms.
[[nodiscard]] std::optional<GramLattice> twisted_lattice(const ManifoldPresentation& p, const LocalSystemChoice& c);

}  // namespace formgate::manifold
