#include "formgate/obstruction.hpp"

#include "formgate/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

namespace formgate::obstruction {

namespace {

using lattice::Definiteness;

GateResult not_applicable(std::string gate_id, std::string note)
{
    GateResult r;
    r.gate_id = std::move(gate_id);
    r.applicable = false;
    r.verdict = Verdict::NotApplicable;
    r.note = std::move(note);
    return r;
}

void decide(GateResult& r, bool violated, std::string_view violated_note, std::string_view satisfied_note)
{
    r.applicable = true;
    r.verdict = violated ? Verdict::Violated : Verdict::Satisfied;
    r.note = std::string(violated ? violated_note : satisfied_note);
}

// Library errors inside a gate become an error note on a non-applicable result.
GateResult guarded(const std::string& gate_id, const std::function<GateResult()>& body)
{
    try {
        return body();
    } catch (const Error& e) {
        GateResult r = not_applicable(gate_id, "evaluation failed");
        r.error = e.what();
        return r;
    }
}

Integer abs_int(std::int64_t v)
{
    return Integer(std::to_string(v < 0 ? -v : v));
}

Integer big(std::int64_t v)
{
    return Integer(std::to_string(v));
}

void attach_oracle(GateResult& r, const lattice::GramLattice& q, const Integer& minimum, const GateOptions& options)
{
    if (!options.oracle_radius) {
        return;
    }
    const charvec::CharMinResult oracle = charvec::brute_force_min_char(q, *options.oracle_radius);
    r.hypothesis_values["oracle_min_char_norm"] = oracle.min_abs_norm;
    r.hypothesis_values["oracle_agrees"] = oracle.min_abs_norm == minimum;
}

}  // namespace

std::string_view to_string(Verdict verdict) noexcept
{
    switch (verdict) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::NotApplicable: return "not_applicable";
    }
    return "not_applicable";
}

VirtualDimension virtual_dimension(std::int64_t c1sq, std::int64_t sign, std::int64_t b0l, std::int64_t b1l,
                                   std::int64_t bplusl)
{
    const std::int64_t numerator = c1sq - sign;
    if (numerator % 4 != 0) {
        throw Error(ErrorCode::NotDivisible,
                    "c1^2 - sign = " + std::to_string(numerator) + " is not divisible by 4");
    }
    VirtualDimension v;
    v.d_prime = numerator / 4;
    v.d = v.d_prime - (b0l - b1l + bplusl);
    return v;
}

GateResult gate_definite_standard(const ManifoldPresentation& p, const LocalSystemChoice& c,
                                  const GateOptions& options)
{
    static const std::string kId = "definite_standard";
    return guarded(kId, [&] {
        const manifold::TwistedInvariants t = manifold::twisted_invariants(p, c);
        const std::optional<lattice::GramLattice> q = manifold::twisted_lattice(p, c);
        if (!q) {
            GateResult r = not_applicable(kId, "Q_{X,l} not materialized: a nontrivial selection has b2(.;l) > 0");
            r.hypothesis_values["b2l"] = big(t.b2l);
            return r;
        }
        const lattice::FormInvariants inv = lattice::validate(*q);
        const bool definite = lattice::is_definite(inv);
        const bool lift = manifold::torsion_lift_holds(p, c);

        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["rank"] = big(static_cast<std::int64_t>(inv.rank));
        r.hypothesis_values["signature"] = big(inv.signature);
        r.hypothesis_values["definite"] = definite;
        r.hypothesis_values["torsion_lift"] = lift;
        if (!definite) {
            r.note = "Q_{X,l} is " + std::string(lattice::to_string(inv.definiteness));
            return r;
        }
        if (!lift) {
            r.note = "w1(lambda)^2 is not known to lift to the torsion of H^2(X;l)";
            return r;
        }
        const charvec::StandardnessResult s = charvec::elkies_is_standard(*q, options.rank_cap);
        r.hypothesis_values["min_char_norm"] = s.minimum.min_abs_norm;
        r.hypothesis_values["standard"] = s.standard;
        r.witness = s.minimum.witness;
        attach_oracle(r, *q, s.minimum.min_abs_norm, options);
        decide(r, !s.standard,
               "definite Q_{X,l} has a characteristic vector with |w^2| < rank, so it is not diagonal: no smooth "
               "structure",
               "definite Q_{X,l} is diagonal");
        return r;
    });
}

GateResult gate_ten_eighths_local(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    static const std::string kId = "ten_eighths_local";
    return guarded(kId, [&] {
        const manifold::TwistedInvariants t = manifold::twisted_invariants(p, c);
        const manifold::UntwistedInvariants u = manifold::untwisted_invariants(p);
        const bool exists = manifold::spin_cminus_exists(p, c);

        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["bplusl"] = big(t.bplusl);
        r.hypothesis_values["sign"] = big(u.sign);
        r.hypothesis_values["spin_cminus_exists"] = exists;
        r.hypothesis_values["eight_bplusl"] = big(8 * t.bplusl);
        r.hypothesis_values["minus_sign"] = big(-u.sign);
        if (!exists) {
            r.note = "w1(lambda)^2 != w2(X)";
            return r;
        }
        decide(r, 8 * t.bplusl < -u.sign, "b+(X;l) < -sign(X)/8: no smooth structure", "b+(X;l) >= -sign(X)/8");
        return r;
    });
}

GateResult gate_rohlin(const ManifoldPresentation& p)
{
    static const std::string kId = "rohlin";
    return guarded(kId, [&] {
        const manifold::UntwistedInvariants u = manifold::untwisted_invariants(p);
        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["sign"] = big(u.sign);
        r.hypothesis_values["spin"] = u.spin;
        r.hypothesis_values["ks"] = big(u.ks);
        if (!u.spin) {
            r.note = "not spin";
            return r;
        }
        decide(r, u.sign % 16 != 0,
               "spin with signature not divisible by 16: no smooth structure on this spin manifold",
               "signature divisible by 16 (Rohlin constrains smooth spin manifolds only)");
        return r;
    });
}

GateResult gate_furuta(const ManifoldPresentation& p)
{
    static const std::string kId = "furuta";
    return guarded(kId, [&] {
        const manifold::UntwistedInvariants u = manifold::untwisted_invariants(p);
        const bool indefinite = u.form_invariants.definiteness == Definiteness::Indefinite;
        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["b2"] = big(u.b2);
        r.hypothesis_values["abs_sign"] = abs_int(u.sign);
        r.hypothesis_values["spin"] = u.spin;
        r.hypothesis_values["indefinite"] = indefinite;
        r.hypothesis_values["four_b2"] = big(4 * u.b2);
        r.hypothesis_values["five_abs_sign_plus_8"] = big(5 * std::abs(u.sign) + 8);
        if (!u.spin || !indefinite) {
            r.note = "requires a spin manifold with indefinite form";
            return r;
        }
        decide(r, 4 * u.b2 < 5 * std::abs(u.sign) + 8, "b2 < 5/4 |sign| + 2: no smooth structure",
               "b2 >= 5/4 |sign| + 2");
        return r;
    });
}

GateResult gate_bohr_lee_li(const ManifoldPresentation& p)
{
    static const std::string kId = "bohr_lee_li";
    return guarded(kId, [&] {
        const manifold::UntwistedInvariants u = manifold::untwisted_invariants(p);
        const bool even = u.form_invariants.parity == lattice::Parity::Even;
        const bool indefinite = u.form_invariants.definiteness == Definiteness::Indefinite;
        const auto kind = u.h1_two_torsion.kind;
        const bool torsion_ok =
            kind == manifold::TwoTorsion::Kind::Cyclic || kind == manifold::TwoTorsion::Kind::Klein;
        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["b2"] = big(u.b2);
        r.hypothesis_values["abs_sign"] = abs_int(u.sign);
        r.hypothesis_values["spin"] = u.spin;
        r.hypothesis_values["even"] = even;
        r.hypothesis_values["indefinite"] = indefinite;
        r.hypothesis_values["h1_two_torsion_admissible"] = torsion_ok;
        r.hypothesis_values["four_b2"] = big(4 * u.b2);
        r.hypothesis_values["five_abs_sign"] = big(5 * std::abs(u.sign));
        if (u.spin || !even || !indefinite || !torsion_ok) {
            r.note = "requires non-spin, even indefinite form, H1 2-torsion Z/2^k or Z/2+Z/2 (have " +
                     manifold::to_string(u.h1_two_torsion) + ")";
            return r;
        }
        decide(r, 4 * u.b2 < 5 * std::abs(u.sign), "b2 < 5/4 |sign|: no smooth structure", "b2 >= 5/4 |sign|");
        return r;
    });
}

GateResult gate_strong_10_8(const ManifoldPresentation& p, const std::optional<LinearInequality>& hook)
{
    static const std::string kId = "strong_10_8_hook";
    if (!hook) {
        return not_applicable(kId, "disabled");
    }
    return guarded(kId, [&] {
        const manifold::UntwistedInvariants u = manifold::untwisted_invariants(p);
        const bool indefinite = u.form_invariants.definiteness == Definiteness::Indefinite;
        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["b2"] = big(u.b2);
        r.hypothesis_values["abs_sign"] = abs_int(u.sign);
        r.hypothesis_values["b1"] = big(u.b1);
        r.hypothesis_values["spin"] = u.spin;
        r.hypothesis_values["indefinite"] = indefinite;
        if (!u.spin || !indefinite) {
            r.note = "requires a spin manifold with indefinite form";
            return r;
        }
        const Rational rhs = hook->abs_sign_coefficient * Rational(abs_int(u.sign)) +
                             hook->b1_coefficient * Rational(big(u.b1)) + hook->constant;
        decide(r, Rational(big(u.b2)) < rhs, "user inequality fails: no smooth structure", "user inequality holds");
        return r;
    });
}

GateResult gate_theorem_ineq(const ManifoldPresentation& p, const LocalSystemChoice& c,
                             const IntVector& characteristic, const GateOptions& options)
{
    static const std::string kId = "theorem_ineq";
    const manifold::TwistedInvariants t = manifold::twisted_invariants(p, c);
    const std::optional<lattice::GramLattice> q = manifold::twisted_lattice(p, c);
    if (!q) {
        return not_applicable(kId, "Q_{X,l} not materialized");
    }
    if (t.bplusl != 0) {
        GateResult r = not_applicable(kId, "b+(X;l) != 0");
        r.hypothesis_values["bplusl"] = big(t.bplusl);
        return r;
    }
    const charvec::CharacteristicCoset coset = charvec::characteristic_coset(*q);
    if (!charvec::is_characteristic(coset, characteristic)) {
        throw Error(ErrorCode::InvalidArgument, "C is not a characteristic element of Q_{X,l}");
    }
    const Integer c_sq = q->norm(characteristic);
    const Integer b2l = big(t.b2l);

    GateResult r;
    r.gate_id = kId;
    r.hypothesis_values["c_squared"] = c_sq;
    r.hypothesis_values["abs_c_squared"] = abs(c_sq);
    r.hypothesis_values["b2l"] = b2l;
    const VirtualDimension vd = virtual_dimension(c_sq.get_si(), t.signl, 0, 0, 0);
    r.hypothesis_values["d_prime"] = big(vd.d_prime);

    const charvec::CharMinResult m = charvec::min_characteristic_norm(*q, options.rank_cap);
    r.hypothesis_values["min_char_norm"] = m.min_abs_norm;
    r.hypothesis_values["aggregate_violated"] = m.min_abs_norm < b2l;
    r.witness = characteristic;
    decide(r, abs(c_sq) < b2l, "|C^2| < b2(X;l): no smooth structure", "|C^2| >= b2(X;l)");
    return r;
}

GateResult gate_theorem_ineq_aggregate(const ManifoldPresentation& p, const LocalSystemChoice& c,
                                       const GateOptions& options)
{
    static const std::string kId = "theorem_ineq";
    return guarded(kId, [&] {
        const manifold::TwistedInvariants t = manifold::twisted_invariants(p, c);
        const std::optional<lattice::GramLattice> q = manifold::twisted_lattice(p, c);
        if (!q) {
            return not_applicable(kId, "Q_{X,l} not materialized: a nontrivial selection has b2(.;l) > 0");
        }
        const bool reversed = t.bplusl != 0;
        const lattice::FormInvariants inv = lattice::validate(*q);
        const bool lift = manifold::torsion_lift_holds(p, c);

        GateResult r;
        r.gate_id = kId;
        r.hypothesis_values["bplusl"] = big(t.bplusl);
        r.hypothesis_values["bminusl"] = big(t.bminusl);
        r.hypothesis_values["torsion_lift"] = lift;
        if (t.bplusl != 0 && t.bminusl != 0) {
            r.note = "b+(X;l) != 0 in both orientations";
            return r;
        }
        if (!lattice::is_definite(inv)) {
            r.note = "Q_{X,l} is " + std::string(lattice::to_string(inv.definiteness));
            return r;
        }
        if (!lift) {
            r.note = "w1(lambda)^2 is not known to lift to the torsion of H^2(X;l)";
            return r;
        }
        const lattice::GramLattice normalized = reversed ? lattice::negate(*q) : *q;
        const charvec::CharMinResult m = charvec::min_characteristic_norm(normalized, options.rank_cap);
        const Integer b2l = big(t.b2l);
        // In the orientation with b+(X;l) = 0: C^2 = -min and sign(X) = -b2(X;l).
        const VirtualDimension vd = virtual_dimension(-m.min_abs_norm.get_si(), -t.b2l, 0, 0, 0);
        r.hypothesis_values["orientation_reversed"] = reversed;
        r.hypothesis_values["b2l"] = b2l;
        r.hypothesis_values["min_char_norm"] = m.min_abs_norm;
        r.hypothesis_values["d_prime"] = big(vd.d_prime);
        r.witness = m.witness;
        attach_oracle(r, normalized, m.min_abs_norm, options);
        if ((m.min_abs_norm < b2l) != (vd.d_prime > 0)) {
            throw Error(ErrorCode::DataInconsistency, "d' sign disagrees with the characteristic minimum");
        }
        decide(r, m.min_abs_norm < b2l,
               "a characteristic C has |C^2| < b2(X;l), i.e. d' > 0 with b+(X;l) = 0: no smooth structure",
               "every characteristic C has |C^2| >= b2(X;l)");
        return r;
    });
}

ObstructionReport run_all(const ManifoldPresentation& p, const std::vector<NamedChoice>& choices,
                          const RunOptions& options)
{
    ObstructionReport report;
    report.untwisted = manifold::untwisted_invariants(p);
    report.untwisted_gates = {gate_bohr_lee_li(p), gate_furuta(p), gate_rohlin(p),
                              gate_strong_10_8(p, options.strong_10_8)};

    for (const auto& named : choices) {
        ChoiceReport cr;
        cr.name = named.name;
        try {
            cr.twisted = manifold::twisted_invariants(p, named.choice);
        } catch (const Error& e) {
            cr.error = e.what();
            report.choices.push_back(std::move(cr));
            continue;
        }
        cr.gates = {gate_definite_standard(p, named.choice, options.gates),
                    gate_ten_eighths_local(p, named.choice),
                    gate_theorem_ineq_aggregate(p, named.choice, options.gates)};
        report.choices.push_back(std::move(cr));
    }

    auto by_id = [](const GateResult& a, const GateResult& b) { return a.gate_id < b.gate_id; };
    std::sort(report.untwisted_gates.begin(), report.untwisted_gates.end(), by_id);
    for (auto& cr : report.choices) {
        std::sort(cr.gates.begin(), cr.gates.end(), by_id);
    }

    for (const auto& g : report.untwisted_gates) {
        if (g.applicable && g.verdict == Verdict::Violated) {
            report.certificates.push_back({"", g.gate_id});
        }
    }
    for (const auto& cr : report.choices) {
        for (const auto& g : cr.gates) {
            if (g.applicable && g.verdict == Verdict::Violated) {
                report.certificates.push_back({cr.name, g.gate_id});
            }
        }
    }
    report.nonsmoothable = !report.certificates.empty();
    return report;
}

}  // namespace formgate::obstruction
