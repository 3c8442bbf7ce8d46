#include "formgate/manifold.hpp"

#include "formgate/error.hpp"
#include "formgate/json_io.hpp"

#include "catalog_data.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace formgate::manifold {

namespace {

using json_io::json;

[[noreturn]] void inconsistent(const std::string& where, const std::string& what)
{
    throw Error(ErrorCode::DataInconsistency, where + ": " + what);
}

std::int64_t nonnegative(const json& j, const std::string& where)
{
    const std::int64_t v = json_io::as_int64(j, where);
    if (v < 0) {
        throw Error(ErrorCode::InvalidManifest, where + ": must be non-negative");
    }
    return v;
}

LocalClass class_from_json(const json& j, const std::string& where)
{
    json_io::reject_unknown_fields(j,
                                   {"name", "nontrivial", "b1_twisted", "b2_twisted", "bplus_twisted", "sign_twisted",
                                    "w1sq_zero", "w1sq_eq_w2", "torsion_lift", "provenance"},
                                   where);
    LocalClass c;
    c.name = json_io::as_string(json_io::require_field(j, "name", where), where + ".name");
    const std::string at = where + "[" + c.name + "]";
    if (j.contains("nontrivial")) {
        c.nontrivial = json_io::as_bool(j.at("nontrivial"), at + ".nontrivial");
    }
    c.b1_twisted = nonnegative(json_io::require_field(j, "b1_twisted", at), at + ".b1_twisted");
    c.b2_twisted = nonnegative(json_io::require_field(j, "b2_twisted", at), at + ".b2_twisted");
    c.bplus_twisted = nonnegative(json_io::require_field(j, "bplus_twisted", at), at + ".bplus_twisted");
    c.sign_twisted = json_io::as_int64(json_io::require_field(j, "sign_twisted", at), at + ".sign_twisted");
    c.w1sq_zero = json_io::as_bool(json_io::require_field(j, "w1sq_zero", at), at + ".w1sq_zero");
    c.w1sq_eq_w2 = json_io::as_bool(json_io::require_field(j, "w1sq_eq_w2", at), at + ".w1sq_eq_w2");
    c.torsion_lift = json_io::as_bool(json_io::require_field(j, "torsion_lift", at), at + ".torsion_lift");
    if (j.contains("provenance")) {
        c.provenance = json_io::as_string(j.at("provenance"), at + ".provenance");
    }
    return c;
}

json class_to_json(const LocalClass& c)
{
    return json{
        {"name", c.name},
        {"nontrivial", c.nontrivial},
        {"b1_twisted", json_io::integer_string(c.b1_twisted)},
        {"b2_twisted", json_io::integer_string(c.b2_twisted)},
        {"bplus_twisted", json_io::integer_string(c.bplus_twisted)},
        {"sign_twisted", json_io::integer_string(c.sign_twisted)},
        {"w1sq_zero", c.w1sq_zero},
        {"w1sq_eq_w2", c.w1sq_eq_w2},
        {"torsion_lift", c.torsion_lift},
        {"provenance", c.provenance},
    };
}

// Resolves the selection for instance i; nullptr means trivial.
const LocalClass* selected_class(const ManifoldPresentation& p, const LocalSystemChoice& c, std::size_t i)
{
    const std::string& sel = c.selections[i];
    if (sel == kTrivialClass) {
        return nullptr;
    }
    const LocalClass* cls = p.summands[i].find_class(sel);
    if (cls == nullptr) {
        throw Error(ErrorCode::UnknownLocalClass,
                    "summand '" + p.summands[i].name + "' has no local class '" + sel + "'");
    }
    return cls->nontrivial ? cls : nullptr;
}

void check_choice_shape(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    if (c.selections.size() != p.summands.size()) {
        throw Error(ErrorCode::InvalidArgument, "local system has " + std::to_string(c.selections.size()) +
                                                    " selections for " + std::to_string(p.summands.size()) +
                                                    " summands");
    }
}

}  // namespace

std::string to_string(const TwoTorsion& t)
{
    switch (t.kind) {
    case TwoTorsion::Kind::None: return "none";
    case TwoTorsion::Kind::Cyclic: return t.exponent == 1 ? "Z/2" : "Z/2^" + std::to_string(t.exponent);
    case TwoTorsion::Kind::Klein: return "Z/2+Z/2";
    case TwoTorsion::Kind::Other: return "other";
    }
    return "other";
}

TwoTorsion parse_two_torsion(std::string_view text)
{
    if (text == "none") {
        return TwoTorsion::none();
    }
    if (text == "Z/2") {
        return TwoTorsion::cyclic(1);
    }
    if (text == "Z/2+Z/2") {
        return TwoTorsion::klein();
    }
    if (text == "other") {
        return TwoTorsion::other();
    }
    if (text.starts_with("Z/2^")) {
        const std::string_view digits = text.substr(4);
        if (!digits.empty() && digits.size() < 6 &&
            std::all_of(digits.begin(), digits.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
            const int k = std::stoi(std::string(digits));
            if (k >= 1) {
                return TwoTorsion::cyclic(k);
            }
        }
    }
    throw Error(ErrorCode::InvalidManifest, "bad h1_two_torsion descriptor '" + std::string(text) + "'");
}

TwoTorsion combine(const TwoTorsion& a, const TwoTorsion& b)
{
    using Kind = TwoTorsion::Kind;
    if (a.kind == Kind::None) {
        return b;
    }
    if (b.kind == Kind::None) {
        return a;
    }
    if (a.kind == Kind::Cyclic && b.kind == Kind::Cyclic && a.exponent == 1 && b.exponent == 1) {
        return TwoTorsion::klein();
    }
    return TwoTorsion::other();
}

const LocalClass* Summand::find_class(std::string_view class_name) const
{
    for (const auto& c : local_classes) {
        if (c.name == class_name) {
            return &c;
        }
    }
    return nullptr;
}

void validate_summand(const Summand& s)
{
    const std::string where = "summand '" + s.name + "'";
    if (s.name.empty() || s.name.find('#') != std::string::npos) {
        inconsistent(where, "name must be nonempty and must not contain '#'");
    }
    if (s.b1 < 0) {
        inconsistent(where, "b1 is negative");
    }
    if (s.ks != 0 && s.ks != 1) {
        inconsistent(where, "ks must be 0 or 1");
    }
    const lattice::FormInvariants inv = lattice::validate(s.form);
    if (inv.determinant != 1 && inv.determinant != -1) {
        inconsistent(where, "intersection form is not unimodular (det " + inv.determinant.get_str() + ")");
    }
    if (s.spin && inv.parity != lattice::Parity::Even) {
        inconsistent(where, "spin summand with odd intersection form");
    }
    const auto bplus = static_cast<std::int64_t>(inv.positive);

    std::set<std::string> names;
    for (const auto& c : s.local_classes) {
        const std::string at = where + " class '" + c.name + "'";
        if (c.name.empty() || c.name == kTrivialClass) {
            inconsistent(at, "reserved or empty class name");
        }
        if (!names.insert(c.name).second) {
            inconsistent(at, "duplicate class name");
        }
        if (c.b1_twisted < 0 || c.b2_twisted < 0 || c.bplus_twisted < 0) {
            inconsistent(at, "negative twisted Betti number");
        }
        if ((c.b2_twisted + c.sign_twisted) % 2 != 0 || std::abs(c.sign_twisted) > c.b2_twisted) {
            inconsistent(at, "b2_twisted and sign_twisted are incompatible");
        }
        if (2 * c.bplus_twisted != c.b2_twisted + c.sign_twisted) {
            inconsistent(at, "bplus_twisted != (b2_twisted + sign_twisted) / 2");
        }
        if (c.sign_twisted != inv.signature) {
            inconsistent(at, "sign_twisted differs from the untwisted signature");
        }
        // With w2 = 0 the two flags coincide; with w2 != 0 they exclude each other.
        if (s.spin && c.w1sq_zero != c.w1sq_eq_w2) {
            inconsistent(at, "spin summand needs w1sq_zero == w1sq_eq_w2");
        }
        if (!s.spin && c.w1sq_zero && c.w1sq_eq_w2) {
            inconsistent(at, "non-spin summand cannot have w1^2 = 0 = w2");
        }
        if (c.nontrivial && 1 - s.b1 + bplus != -c.b1_twisted + c.bplus_twisted) {
            throw Error(ErrorCode::EulerIdentityViolation,
                        at + ": 1 - b1 + b+ = " + std::to_string(1 - s.b1 + bplus) + " but -b1(l) + b+(l) = " +
                            std::to_string(-c.b1_twisted + c.bplus_twisted));
        }
    }
}

Summand summand_from_json(const json& j)
{
    const std::string where = "summand";
    json_io::reject_unknown_fields(
        j, {"name", "b1", "gram", "spin", "ks", "h1_two_torsion", "local_classes", "provenance"}, where);
    Summand s;
    s.name = json_io::as_string(json_io::require_field(j, "name", where), where + ".name");
    const std::string at = "summand '" + s.name + "'";
    s.b1 = nonnegative(json_io::require_field(j, "b1", at), at + ".b1");

    const json& gram = json_io::require_field(j, "gram", at);
    if (!gram.is_array()) {
        throw Error(ErrorCode::InvalidManifest, at + ".gram: expected an array of rows");
    }
    lattice::IntMatrix rows;
    for (std::size_t r = 0; r < gram.size(); ++r) {
        if (!gram[r].is_array()) {
            throw Error(ErrorCode::InvalidManifest, at + ".gram: expected an array of rows");
        }
        IntVector row;
        for (std::size_t c = 0; c < gram[r].size(); ++c) {
            row.push_back(json_io::as_integer(gram[r][c], at + ".gram"));
        }
        rows.push_back(std::move(row));
    }
    s.form = lattice::GramLattice(rows);
    s.spin = json_io::as_bool(json_io::require_field(j, "spin", at), at + ".spin");
    s.ks = static_cast<int>(json_io::as_int64(json_io::require_field(j, "ks", at), at + ".ks"));
    s.h1_two_torsion = parse_two_torsion(
        json_io::as_string(json_io::require_field(j, "h1_two_torsion", at), at + ".h1_two_torsion"));
    if (j.contains("local_classes")) {
        const json& classes = j.at("local_classes");
        if (!classes.is_array()) {
            throw Error(ErrorCode::InvalidManifest, at + ".local_classes: expected an array");
        }
        for (const auto& c : classes) {
            s.local_classes.push_back(class_from_json(c, at + ".local_classes"));
        }
    }
    if (j.contains("provenance")) {
        s.provenance = json_io::as_string(j.at("provenance"), at + ".provenance");
    }
    validate_summand(s);
    return s;
}

json to_json(const Summand& s)
{
    json gram = json::array();
    for (std::size_t i = 0; i < s.form.rank(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < s.form.rank(); ++k) {
            row.push_back(json_io::integer_string(s.form.at(i, k)));
        }
        gram.push_back(std::move(row));
    }
    json classes = json::array();
    for (const auto& c : s.local_classes) {
        classes.push_back(class_to_json(c));
    }
    return json{
        {"name", s.name},
        {"b1", json_io::integer_string(s.b1)},
        {"gram", std::move(gram)},
        {"spin", s.spin},
        {"ks", json_io::integer_string(static_cast<std::int64_t>(s.ks))},
        {"h1_two_torsion", to_string(s.h1_two_torsion)},
        {"local_classes", std::move(classes)},
        {"provenance", s.provenance},
    };
}

const Catalog& Catalog::builtin()
{
    static const Catalog catalog = from_json(json_io::parse_document(kBuiltinCatalogJson, "builtin catalog"));
    return catalog;
}

Catalog Catalog::from_json(const json& j)
{
    json_io::reject_unknown_fields(j, {"schema_version", "summands"}, "catalog");
    Catalog catalog;
    catalog.m_version = json_io::as_integer(json_io::require_field(j, "schema_version", "catalog"),
                                            "catalog.schema_version")
                            .get_str();
    const json& summands = json_io::require_field(j, "summands", "catalog");
    if (!summands.is_array()) {
        throw Error(ErrorCode::InvalidManifest, "catalog.summands: expected an array");
    }
    for (const auto& entry : summands) {
        Summand s = summand_from_json(entry);
        const std::string name = s.name;
        if (!catalog.m_entries.emplace(name, std::move(s)).second) {
            inconsistent("catalog", "duplicate summand '" + name + "'");
        }
    }
    return catalog;
}

const Summand& Catalog::lookup(std::string_view name) const
{
    const auto it = m_entries.find(name);
    if (it == m_entries.end()) {
        throw Error(ErrorCode::UnknownSummand, "no catalog summand named '" + std::string(name) + "'");
    }
    return it->second;
}

bool Catalog::contains(std::string_view name) const
{
    return m_entries.find(name) != m_entries.end();
}

std::vector<const Summand*> Catalog::entries() const
{
    std::vector<const Summand*> out;
    out.reserve(m_entries.size());
    for (const auto& [name, s] : m_entries) {
        out.push_back(&s);
    }
    return out;
}

const Summand& catalog_lookup(std::string_view name)
{
    return Catalog::builtin().lookup(name);
}

std::vector<std::string> ManifoldPresentation::instance_labels() const
{
    std::map<std::string, int> seen;
    std::vector<std::string> labels;
    labels.reserve(summands.size());
    for (const auto& s : summands) {
        labels.push_back(s.name + "#" + std::to_string(++seen[s.name]));
    }
    return labels;
}

ManifoldPresentation presentation(std::string_view name, std::size_t count)
{
    const Summand& s = catalog_lookup(name);
    return ManifoldPresentation{std::vector<Summand>(count, s)};
}

ManifoldPresentation connect_sum(const ManifoldPresentation& p, const ManifoldPresentation& q)
{
    ManifoldPresentation out = p;
    out.summands.insert(out.summands.end(), q.summands.begin(), q.summands.end());
    return out;
}

Summand reverse_orientation(const Summand& summand)
{
    Summand out = summand;
    out.form = lattice::negate(summand.form);
    for (auto& c : out.local_classes) {
        c.bplus_twisted = c.b2_twisted - c.bplus_twisted;
        c.sign_twisted = -c.sign_twisted;
    }
    return out;
}

ManifoldPresentation reverse_orientation(const ManifoldPresentation& p)
{
    ManifoldPresentation out;
    out.summands.reserve(p.summands.size());
    for (const auto& s : p.summands) {
        out.summands.push_back(reverse_orientation(s));
    }
    return out;
}

UntwistedInvariants untwisted_invariants(const ManifoldPresentation& p)
{
    if (p.summands.empty()) {
        throw Error(ErrorCode::InvalidArgument, "a presentation needs at least one summand");
    }
    UntwistedInvariants u;
    for (const auto& s : p.summands) {
        u.b1 += s.b1;
        u.form = lattice::direct_sum(u.form, s.form);
        u.spin = u.spin && s.spin;
        u.ks = (u.ks + s.ks) % 2;
        u.h1_two_torsion = combine(u.h1_two_torsion, s.h1_two_torsion);
    }
    u.form_invariants = lattice::validate(u.form);
    u.b2 = static_cast<std::int64_t>(u.form.rank());
    u.bplus = static_cast<std::int64_t>(u.form_invariants.positive);
    u.bminus = static_cast<std::int64_t>(u.form_invariants.negative);
    u.sign = u.form_invariants.signature;
    u.chi = 2 - 2 * u.b1 + u.b2;
    return u;
}

LocalSystemChoice LocalSystemChoice::all_trivial(const ManifoldPresentation& p)
{
    return LocalSystemChoice{std::vector<std::string>(p.summands.size(), std::string(kTrivialClass))};
}

LocalSystemChoice LocalSystemChoice::from_labels(const ManifoldPresentation& p,
                                                 const std::map<std::string, std::string>& labels)
{
    LocalSystemChoice choice = all_trivial(p);
    const std::vector<std::string> instance = p.instance_labels();
    for (const auto& [label, class_name] : labels) {
        bool matched = false;
        const bool wildcard = label.ends_with("#*");
        const std::string prefix = wildcard ? label.substr(0, label.size() - 1) : label;
        for (std::size_t i = 0; i < instance.size(); ++i) {
            if (wildcard ? instance[i].starts_with(prefix) : instance[i] == label) {
                choice.selections[i] = class_name;
                matched = true;
            }
        }
        if (!matched) {
            throw Error(ErrorCode::InvalidArgument, "local system label '" + label + "' matches no summand instance");
        }
    }
    return choice;
}

LocalSystemChoice LocalSystemChoice::on_every(const ManifoldPresentation& p, std::string_view summand_name,
                                              std::string_view class_name)
{
    LocalSystemChoice choice = all_trivial(p);
    for (std::size_t i = 0; i < p.summands.size(); ++i) {
        if (p.summands[i].name == summand_name) {
            choice.selections[i] = std::string(class_name);
        }
    }
    return choice;
}

TwistedInvariants twisted_invariants(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    check_choice_shape(p, c);
    const UntwistedInvariants u = untwisted_invariants(p);

    TwistedInvariants t;
    for (std::size_t i = 0; i < p.summands.size(); ++i) {
        const Summand& s = p.summands[i];
        if (const LocalClass* cls = selected_class(p, c, i)) {
            ++t.nontrivial_count;
            t.b1l += cls->b1_twisted;
            t.b2l += cls->b2_twisted;
            t.bplusl += cls->bplus_twisted;
            t.signl += cls->sign_twisted;
        } else {
            const lattice::FormInvariants inv = lattice::validate(s.form);
            t.b1l += s.b1;
            t.b2l += static_cast<std::int64_t>(inv.rank);
            t.bplusl += static_cast<std::int64_t>(inv.positive);
            t.signl += inv.signature;
        }
    }
    if (t.nontrivial_count == 0) {
        throw Error(ErrorCode::AllTrivial, "local system is trivial on every summand");
    }
    // Mayer-Vietoris across the connecting necks.
    t.b1l += t.nontrivial_count - 1;
    t.b0l = 0;
    t.bminusl = t.b2l - t.bplusl;

    const std::int64_t untwisted_side = u.b0 - u.b1 + u.bplus;
    const std::int64_t twisted_side = t.b0l - t.b1l + t.bplusl;
    if (untwisted_side != twisted_side || t.bplusl - t.bminusl != t.signl || t.bminusl < 0) {
        throw Error(ErrorCode::EulerIdentityViolation,
                    "b0 - b1 + b+ = " + std::to_string(untwisted_side) + " but b0(l) - b1(l) + b+(l) = " +
                        std::to_string(twisted_side));
    }
    return t;
}

DoubleCoverBetti double_cover_betti(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    const UntwistedInvariants u = untwisted_invariants(p);
    const TwistedInvariants t = twisted_invariants(p, c);
    DoubleCoverBetti d;
    d.b0t = u.b0 + t.b0l;
    d.b1t = u.b1 + t.b1l;
    d.b2t = u.b2 + t.b2l;
    d.b3t = d.b1t;
    d.b4t = d.b0t;
    d.chi = d.b0t - d.b1t + d.b2t - d.b3t + d.b4t;
    if (d.chi != 2 * u.chi) {
        throw Error(ErrorCode::DataInconsistency,
                    "double cover Euler characteristic " + std::to_string(d.chi) + " != 2 * " + std::to_string(u.chi));
    }
    return d;
}

GaugeComponents gauge_pi0(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    return GaugeComponents{"Z/2", twisted_invariants(p, c).b1l};
}

std::string config_space_descriptor(std::int64_t b1l)
{
    return "RP^inf x T^" + std::to_string(b1l);
}

std::string config_space_descriptor(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    return config_space_descriptor(twisted_invariants(p, c).b1l);
}

bool spin_cminus_exists(const ManifoldPresentation& p, const LocalSystemChoice& c, bool e_trivial_plus_lambda)
{
    if (!e_trivial_plus_lambda) {
        throw Error(ErrorCode::NotApplicable, "only the O(2)-bundle R + lambda is modeled");
    }
    check_choice_shape(p, c);
    for (std::size_t i = 0; i < p.summands.size(); ++i) {
        const LocalClass* cls = selected_class(p, c, i);
        const bool holds = cls != nullptr ? cls->w1sq_eq_w2 : p.summands[i].spin;
        if (!holds) {
            return false;
        }
    }
    return true;
}

bool torsion_lift_holds(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    check_choice_shape(p, c);
    for (std::size_t i = 0; i < p.summands.size(); ++i) {
        const LocalClass* cls = selected_class(p, c, i);
        if (cls != nullptr && !cls->torsion_lift) {
            return false;
        }
    }
    return true;
}

std::optional<GramLattice> twisted_lattice(const ManifoldPresentation& p, const LocalSystemChoice& c)
{
    check_choice_shape(p, c);
    GramLattice out;
    for (std::size_t i = 0; i < p.summands.size(); ++i) {
        if (const LocalClass* cls = selected_class(p, c, i)) {
            if (cls->b2_twisted != 0) {
                return std::nullopt;
            }
        } else {
            out = lattice::direct_sum(out, p.summands[i].form);
        }
    }
    return out;
}

}  // namespace formgate::manifold
