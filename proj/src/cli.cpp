#include "formgate/cli.hpp"

#include "formgate/charvec.hpp"
#include "formgate/error.hpp"
#include "formgate/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <set>
#include <sstream>

#ifndef FORMGATE_VERSION
#define FORMGATE_VERSION "0.0.0"
#endif

namespace formgate::cli {

namespace {

using json_io::integer_string;

constexpr std::int64_t kMaxCount = 10'000;

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(ErrorCode::InvalidManifest, what);
}

std::int64_t bounded(const json& j, const std::string& where, std::int64_t lo, std::int64_t hi)
{
    const std::int64_t v = json_io::as_int64(j, where);
    if (v < lo || v > hi) {
        invalid(where + ": must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return v;
}

const json& require_array(const json& j, const std::string& where)
{
    if (!j.is_array()) {
        invalid(where + ": expected an array");
    }
    return j;
}

SummandEntry parse_summand_entry(const json& j, const std::string& where)
{
    json_io::reject_unknown_fields(j, {"catalog", "custom", "count"}, where);
    SummandEntry e;
    const bool has_catalog = j.contains("catalog");
    const bool has_custom = j.contains("custom");
    if (has_catalog == has_custom) {
        invalid(where + ": exactly one of 'catalog' and 'custom' is required");
    }
    if (has_catalog) {
        e.catalog = json_io::as_string(j.at("catalog"), where + ".catalog");
    } else {
        e.custom = manifold::summand_from_json(j.at("custom"));
    }
    if (j.contains("count")) {
        e.count = bounded(j.at("count"), where + ".count", 1, kMaxCount);
    }
    return e;
}

LocalSystemEntry parse_local_system(const json& j, const std::string& where)
{
    json_io::reject_unknown_fields(j, {"name", "classes", "c1sq"}, where);
    LocalSystemEntry ls;
    ls.name = json_io::as_string(json_io::require_field(j, "name", where), where + ".name");
    if (ls.name.empty()) {
        invalid(where + ".name: must be non-empty");
    }
    const json& classes = json_io::require_field(j, "classes", where);
    json_io::require_object(classes, where + ".classes");
    for (const auto& [label, cls] : classes.items()) {
        ls.classes[label] = json_io::as_string(cls, where + ".classes." + label);
    }
    if (j.contains("c1sq")) {
        ls.c1sq = json_io::as_int64(j.at("c1sq"), where + ".c1sq");
    }
    return ls;
}

ManifestOptions parse_options(const json& j)
{
    const std::string where = "manifest.options";
    json_io::reject_unknown_fields(j, {"rank_cap", "oracle_radius", "strong_10_8"}, where);
    ManifestOptions o;
    if (j.contains("rank_cap")) {
        o.rank_cap = bounded(j.at("rank_cap"), where + ".rank_cap", 0, 1'000'000);
    }
    if (j.contains("oracle_radius")) {
        o.oracle_radius = bounded(j.at("oracle_radius"), where + ".oracle_radius", 0, 1'000);
    }
    if (j.contains("strong_10_8")) {
        const json& s = j.at("strong_10_8");
        const std::string at = where + ".strong_10_8";
        json_io::reject_unknown_fields(s, {"abs_sign_coefficient", "b1_coefficient", "constant"}, at);
        obstruction::LinearInequality q;
        q.abs_sign_coefficient =
            json_io::as_rational(json_io::require_field(s, "abs_sign_coefficient", at), at + ".abs_sign_coefficient");
        q.b1_coefficient = json_io::as_rational(json_io::require_field(s, "b1_coefficient", at), at + ".b1_coefficient");
        q.constant = json_io::as_rational(json_io::require_field(s, "constant", at), at + ".constant");
        o.strong_10_8 = q;
    }
    return o;
}

json vector_json(const IntVector& v)
{
    json a = json::array();
    for (const auto& x : v) {
        a.push_back(integer_string(x));
    }
    return a;
}

json form_json(const lattice::FormInvariants& inv)
{
    return json{
        {"rank", integer_string(static_cast<std::int64_t>(inv.rank))},
        {"signature", integer_string(inv.signature)},
        {"parity", std::string(lattice::to_string(inv.parity))},
        {"definiteness", std::string(lattice::to_string(inv.definiteness))},
        {"positive", integer_string(static_cast<std::int64_t>(inv.positive))},
        {"negative", integer_string(static_cast<std::int64_t>(inv.negative))},
        {"nullity", integer_string(static_cast<std::int64_t>(inv.nullity))},
        {"determinant", integer_string(inv.determinant)},
    };
}

json gate_json(const obstruction::GateResult& g)
{
    json hyp = json::object();
    for (const auto& [key, value] : g.hypothesis_values) {
        if (const auto* i = std::get_if<Integer>(&value)) {
            hyp[key] = integer_string(*i);
        } else {
            hyp[key] = std::get<bool>(value);
        }
    }
    json r{
        {"gate", g.gate_id},
        {"applicable", g.applicable},
        {"verdict", std::string(obstruction::to_string(g.verdict))},
        {"note", g.note},
        {"hypotheses", std::move(hyp)},
    };
    if (g.error) {
        r["error"] = *g.error;
    }
    if (g.witness) {
        r["witness"] = vector_json(*g.witness);
    }
    return r;
}

json gates_json(const std::vector<obstruction::GateResult>& gates)
{
    json a = json::array();
    for (const auto& g : gates) {
        a.push_back(gate_json(g));
    }
    return a;
}

json untwisted_json(const manifold::UntwistedInvariants& u)
{
    return json{
        {"b0", integer_string(u.b0)},
        {"b1", integer_string(u.b1)},
        {"b2", integer_string(u.b2)},
        {"bplus", integer_string(u.bplus)},
        {"bminus", integer_string(u.bminus)},
        {"sign", integer_string(u.sign)},
        {"chi", integer_string(u.chi)},
        {"spin", u.spin},
        {"ks", integer_string(static_cast<std::int64_t>(u.ks))},
        {"h1_two_torsion", manifold::to_string(u.h1_two_torsion)},
        {"form", form_json(u.form_invariants)},
    };
}

json twisted_json(const manifold::TwistedInvariants& t)
{
    return json{
        {"b0l", integer_string(t.b0l)},
        {"b1l", integer_string(t.b1l)},
        {"b2l", integer_string(t.b2l)},
        {"bplusl", integer_string(t.bplusl)},
        {"bminusl", integer_string(t.bminusl)},
        {"signl", integer_string(t.signl)},
        {"nontrivial_count", integer_string(t.nontrivial_count)},
    };
}

json local_system_json(const manifold::ManifoldPresentation& p, const LocalSystemEntry& entry,
                       const obstruction::NamedChoice& named, const obstruction::ChoiceReport& cr)
{
    json r{{"name", entry.name}};
    json selections = json::object();
    const std::vector<std::string> labels = p.instance_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        selections[labels[i]] = named.choice.selections[i];
    }
    r["selections"] = std::move(selections);
    if (cr.error || !cr.twisted) {
        r["error"] = cr.error.value_or("twisted invariants unavailable");
        return r;
    }
    const manifold::TwistedInvariants& t = *cr.twisted;
    r["twisted"] = twisted_json(t);

    const manifold::DoubleCoverBetti dc = manifold::double_cover_betti(p, named.choice);
    r["double_cover"] = json{
        {"b0", integer_string(dc.b0t)}, {"b1", integer_string(dc.b1t)}, {"b2", integer_string(dc.b2t)},
        {"b3", integer_string(dc.b3t)}, {"b4", integer_string(dc.b4t)}, {"chi", integer_string(dc.chi)},
    };
    const manifold::GaugeComponents g = manifold::gauge_pi0(p, named.choice);
    r["gauge_pi0"] = json{{"torsion", g.torsion}, {"free_rank", integer_string(g.free_rank)}};
    r["config_space"] = manifold::config_space_descriptor(t.b1l);

    const std::int64_t c1sq = entry.c1sq.value_or(0);
    json vd{{"c1sq", integer_string(c1sq)}};
    try {
        const auto v = obstruction::virtual_dimension(c1sq, t.signl, t.b0l, t.b1l, t.bplusl);
        vd["d"] = integer_string(v.d);
        vd["d_prime"] = integer_string(v.d_prime);
    } catch (const Error& e) {
        vd["error"] = e.what();
    }
    r["virtual_dimension"] = std::move(vd);

    r["spin_cminus_exists"] = manifold::spin_cminus_exists(p, named.choice);
    r["torsion_lift"] = manifold::torsion_lift_holds(p, named.choice);
    const std::optional<lattice::GramLattice> q = manifold::twisted_lattice(p, named.choice);
    json tl{{"materialized", q.has_value()}};
    if (q) {
        tl["form"] = form_json(lattice::validate(*q));
    }
    r["twisted_lattice"] = std::move(tl);
    r["gates"] = gates_json(cr.gates);
    return r;
}

std::string bool_text(bool b)
{
    return b ? "true" : "false";
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

void render_gates(std::ostream& out, const json& gates)
{
    for (const auto& g : gates) {
        out << "    " << pad(g["gate"].get<std::string>(), 20) << pad(g["verdict"].get<std::string>(), 16)
            << g["note"].get<std::string>();
        if (g.contains("error")) {
            out << " [" << g["error"].get<std::string>() << "]";
        }
        out << "\n";
    }
}

std::size_t parse_cap_text(const std::string& text, std::string_view source)
{
    try {
        const Integer v = parse_integer(text);
        if (v < 0 || !v.fits_slong_p()) {
            throw Error(ErrorCode::InvalidArgument, "out of range");
        }
        return static_cast<std::size_t>(v.get_si());
    } catch (const Error&) {
        throw Error(ErrorCode::InvalidArgument,
                    std::string(source) + ": expected a non-negative integer, got '" + text + "'");
    }
}

void print_kv(std::ostream& out, std::string_view key, const std::string& value)
{
    out << key << ": " << value << "\n";
}

std::string vector_text(const IntVector& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + to_decimal(v[i]);
    }
    return s + "]";
}

int cmd_lattice(const std::string& path, bool as_json, const std::optional<std::int64_t>& cap_flag,
                std::ostream& out)
{
    const lattice::GramLattice l(read_gram_file(path));
    const lattice::FormInvariants inv = lattice::validate(l);
    json r = form_json(inv);
    const bool unimodular = abs(inv.determinant) == 1;
    r["unimodular"] = unimodular;
    if (unimodular && lattice::is_definite(inv)) {
        const auto s = charvec::elkies_is_standard(l, resolve_rank_cap(cap_flag, std::nullopt));
        r["standard"] = s.standard;
    }
    if (as_json) {
        out << json_io::canonical_dump(r);
        return 0;
    }
    for (const char* key : {"rank", "signature", "parity", "definiteness", "positive", "negative", "nullity",
                            "determinant"}) {
        print_kv(out, key, r[key].get<std::string>());
    }
    print_kv(out, "unimodular", bool_text(unimodular));
    if (r.contains("standard")) {
        print_kv(out, "standard", bool_text(r["standard"].get<bool>()));
    }
    return 0;
}

int cmd_charvec(const std::string& path, bool oracle, int radius, const std::optional<std::int64_t>& cap_flag,
                bool as_json, std::ostream& out, std::ostream& err)
{
    const lattice::GramLattice l(read_gram_file(path));
    const charvec::CharMinResult m = charvec::min_characteristic_norm(l, resolve_rank_cap(cap_flag, std::nullopt));
    json r{
        {"rank", integer_string(static_cast<std::int64_t>(l.rank()))},
        {"min_char_norm", integer_string(m.min_abs_norm)},
        {"witness", vector_json(m.witness)},
        {"standard", m.min_abs_norm >= static_cast<long>(l.rank())},
        {"node_count", integer_string(Integer(std::to_string(m.node_count)))},
    };
    int status = 0;
    if (oracle) {
        const charvec::CharMinResult b = charvec::brute_force_min_char(l, radius);
        bool in_box = true;
        for (const auto& x : m.witness) {
            in_box = in_box && abs(x) <= radius;
        }
        std::string agreement;
        if (b.min_abs_norm < m.min_abs_norm || (in_box && b.min_abs_norm != m.min_abs_norm)) {
            agreement = "disagree";
            err << "error: DataInconsistency: oracle minimum " << to_decimal(b.min_abs_norm)
                << " differs from enumeration minimum " << to_decimal(m.min_abs_norm) << "\n";
            status = 3;
        } else {
            agreement = b.min_abs_norm == m.min_abs_norm ? "agree" : "inconclusive";
        }
        r["oracle"] = json{{"radius", integer_string(static_cast<std::int64_t>(radius))},
                           {"min_char_norm", integer_string(b.min_abs_norm)},
                           {"agreement", agreement}};
    }
    if (as_json) {
        out << json_io::canonical_dump(r);
        return status;
    }
    print_kv(out, "rank", r["rank"].get<std::string>());
    print_kv(out, "min_char_norm", r["min_char_norm"].get<std::string>());
    print_kv(out, "witness", vector_text(m.witness));
    print_kv(out, "standard", bool_text(r["standard"].get<bool>()));
    if (r.contains("oracle")) {
        print_kv(out, "oracle_radius", r["oracle"]["radius"].get<std::string>());
        print_kv(out, "oracle_min_char_norm", r["oracle"]["min_char_norm"].get<std::string>());
        print_kv(out, "oracle", r["oracle"]["agreement"].get<std::string>());
    }
    return status;
}

int cmd_obstruct(const std::string& path, bool as_json, const std::optional<std::int64_t>& cap_flag,
                 std::ostream& out)
{
    const Manifest m = parse_manifest(json_io::read_file(path));
    const json report = build_report(m, resolve_rank_cap(cap_flag, m.options.rank_cap));
    out << (as_json ? json_io::canonical_dump(report) : render_report_text(report));
    return 0;
}

struct DieckArgs
{
    std::string group = "z4";
    std::string dg = "1";
    std::string plus;
    std::string minus;
    std::int64_t at = 1;
    std::optional<std::int64_t> b;
    std::optional<std::int64_t> k;
    bool as_json = false;
};

int cmd_dieck(const DieckArgs& a, std::ostream& out)
{
    json r;
    if (a.b || a.k) {
        if (!a.b || !a.k) {
            throw Error(ErrorCode::InvalidArgument, "--b and --k must be given together");
        }
        const rep_ring::TenEighthsBound t = rep_ring::ten_eighths_bound(*a.b, *a.k);
        r = json{{"trace", t.trace.to_string()},
                 {"integral", t.integral},
                 {"inequality_holds", t.inequality_holds}};
    } else {
        const int modulus = a.group == "z2" ? 2 : 4;
        const rep_ring::GaussianRational t = rep_ring::tom_dieck_trace(
            parse_integer(a.dg), modulus, parse_line_spec(a.plus), parse_line_spec(a.minus), a.at);
        r = json{{"trace", t.to_string()}, {"integral", t.is_integer()}};
    }
    if (a.as_json) {
        out << json_io::canonical_dump(r);
        return 0;
    }
    print_kv(out, "trace", r["trace"].get<std::string>());
    print_kv(out, "integral", bool_text(r["integral"].get<bool>()));
    if (r.contains("inequality_holds")) {
        print_kv(out, "b >= k", bool_text(r["inequality_holds"].get<bool>()));
    }
    return 0;
}

int cmd_catalog(bool as_json, std::ostream& out)
{
    const manifold::Catalog& catalog = manifold::Catalog::builtin();
    if (as_json) {
        json summands = json::array();
        for (const auto* s : catalog.entries()) {
            summands.push_back(manifold::to_json(*s));
        }
        out << json_io::canonical_dump(json{{"schema_version", catalog.version()}, {"summands", summands}});
        return 0;
    }
    for (const auto* s : catalog.entries()) {
        const lattice::FormInvariants inv = lattice::validate(s->form);
        std::string classes;
        for (const auto& c : s->local_classes) {
            classes += (classes.empty() ? "" : ",") + c.name;
        }
        out << pad(s->name, 8) << " b1=" << s->b1 << " b2=" << inv.rank << " sign=" << inv.signature
            << " spin=" << bool_text(s->spin) << " ks=" << s->ks
            << " h1_two_torsion=" << manifold::to_string(s->h1_two_torsion)
            << " classes=" << (classes.empty() ? "-" : classes) << "\n";
        out << "    " << s->provenance << "\n";
        for (const auto& c : s->local_classes) {
            out << "    [" << c.name << "] " << c.provenance << "\n";
        }
    }
    return 0;
}

}  // namespace

std::string_view tool_version() noexcept
{
    return FORMGATE_VERSION;
}

Manifest parse_manifest(const json& j)
{
    const std::string where = "manifest";
    json_io::reject_unknown_fields(j, {"schema_version", "summands", "local_systems", "options"}, where);
    const std::int64_t version = json_io::as_int64(json_io::require_field(j, "schema_version", where),
                                                   where + ".schema_version");
    if (version != kManifestSchemaVersion) {
        invalid(where + ".schema_version: unsupported version " + std::to_string(version));
    }
    Manifest m;
    const json& summands = require_array(json_io::require_field(j, "summands", where), where + ".summands");
    if (summands.empty()) {
        invalid(where + ".summands: at least one summand is required");
    }
    for (std::size_t i = 0; i < summands.size(); ++i) {
        m.summands.push_back(parse_summand_entry(summands[i], where + ".summands[" + std::to_string(i) + "]"));
    }
    if (j.contains("local_systems")) {
        const json& systems = require_array(j.at("local_systems"), where + ".local_systems");
        std::set<std::string> names;
        for (std::size_t i = 0; i < systems.size(); ++i) {
            LocalSystemEntry ls =
                parse_local_system(systems[i], where + ".local_systems[" + std::to_string(i) + "]");
            if (!names.insert(ls.name).second) {
                invalid(where + ".local_systems: duplicate name '" + ls.name + "'");
            }
            m.local_systems.push_back(std::move(ls));
        }
    }
    if (j.contains("options")) {
        m.options = parse_options(j.at("options"));
    }
    return m;
}

json to_json(const Manifest& m)
{
    json summands = json::array();
    for (const auto& e : m.summands) {
        json entry{{"count", integer_string(e.count)}};
        if (e.catalog) {
            entry["catalog"] = *e.catalog;
        } else {
            entry["custom"] = manifold::to_json(*e.custom);
        }
        summands.push_back(std::move(entry));
    }
    json systems = json::array();
    for (const auto& ls : m.local_systems) {
        json entry{{"name", ls.name}, {"classes", json::object()}};
        for (const auto& [label, cls] : ls.classes) {
            entry["classes"][label] = cls;
        }
        if (ls.c1sq) {
            entry["c1sq"] = integer_string(*ls.c1sq);
        }
        systems.push_back(std::move(entry));
    }
    json options = json::object();
    if (m.options.rank_cap) {
        options["rank_cap"] = integer_string(*m.options.rank_cap);
    }
    if (m.options.oracle_radius) {
        options["oracle_radius"] = integer_string(*m.options.oracle_radius);
    }
    if (m.options.strong_10_8) {
        const auto& q = *m.options.strong_10_8;
        options["strong_10_8"] = json{{"abs_sign_coefficient", to_decimal(q.abs_sign_coefficient)},
                                      {"b1_coefficient", to_decimal(q.b1_coefficient)},
                                      {"constant", to_decimal(q.constant)}};
    }
    return json{{"schema_version", integer_string(kManifestSchemaVersion)},
                {"summands", std::move(summands)},
                {"local_systems", std::move(systems)},
                {"options", std::move(options)}};
}

manifold::ManifoldPresentation build_presentation(const Manifest& m)
{
    manifold::ManifoldPresentation p;
    for (const auto& e : m.summands) {
        const manifold::Summand& s = e.catalog ? manifold::catalog_lookup(*e.catalog) : *e.custom;
        for (std::int64_t i = 0; i < e.count; ++i) {
            p.summands.push_back(s);
        }
    }
    return p;
}

std::vector<obstruction::NamedChoice> build_choices(const Manifest& m, const manifold::ManifoldPresentation& p)
{
    std::vector<obstruction::NamedChoice> choices;
    for (const auto& ls : m.local_systems) {
        try {
            obstruction::NamedChoice named{ls.name, manifold::LocalSystemChoice::from_labels(p, ls.classes)};
            (void)manifold::twisted_invariants(p, named.choice);
            (void)manifold::double_cover_betti(p, named.choice);
            choices.push_back(std::move(named));
        } catch (const Error& e) {
            throw Error(e.code(), "local system '" + ls.name + "': " + e.detail());
        }
    }
    return choices;
}

std::size_t resolve_rank_cap(const std::optional<std::int64_t>& flag, const std::optional<std::int64_t>& manifest_value)
{
    if (flag) {
        if (*flag < 0) {
            throw Error(ErrorCode::InvalidArgument, "--rank-cap must be non-negative");
        }
        return static_cast<std::size_t>(*flag);
    }
    if (const char* env = std::getenv("FORMGATE_RANK_CAP"); env != nullptr && *env != '\0') {
        return parse_cap_text(env, "FORMGATE_RANK_CAP");
    }
    if (manifest_value) {
        return static_cast<std::size_t>(*manifest_value);
    }
    return charvec::kDefaultRankCap;
}

json build_report(const Manifest& m, std::size_t rank_cap)
{
    const manifold::ManifoldPresentation p = build_presentation(m);
    const std::vector<obstruction::NamedChoice> choices = build_choices(m, p);

    obstruction::RunOptions options;
    options.gates.rank_cap = rank_cap;
    if (m.options.oracle_radius) {
        options.gates.oracle_radius = static_cast<int>(*m.options.oracle_radius);
    }
    options.strong_10_8 = m.options.strong_10_8;
    const obstruction::ObstructionReport r = obstruction::run_all(p, choices, options);

    json systems = json::array();
    for (std::size_t i = 0; i < choices.size(); ++i) {
        systems.push_back(local_system_json(p, m.local_systems[i], choices[i], r.choices[i]));
    }
    json certificates = json::array();
    for (const auto& c : r.certificates) {
        certificates.push_back(json{{"local_system", c.local_system}, {"gate", c.gate_id}});
    }
    json labels = json::array();
    for (const auto& label : p.instance_labels()) {
        labels.push_back(label);
    }
    return json{
        {"report_schema_version", std::string(kReportSchemaVersion)},
        {"tool", json{{"name", "formgate"}, {"version", std::string(tool_version())}}},
        {"input", to_json(m)},
        {"summand_instances", std::move(labels)},
        {"untwisted", untwisted_json(r.untwisted)},
        {"untwisted_gates", gates_json(r.untwisted_gates)},
        {"local_systems", std::move(systems)},
        {"verdict", json{{"overall", r.nonsmoothable ? "nonsmoothable" : "no_obstruction_found"},
                         {"certificates", std::move(certificates)}}},
    };
}

std::string render_report_text(const json& report)
{
    std::ostringstream out;
    out << "formgate " << report["tool"]["version"].get<std::string>() << "\n";
    out << "summands:";
    for (const auto& label : report["summand_instances"]) {
        out << " " << label.get<std::string>();
    }
    out << "\n";
    const json& u = report["untwisted"];
    out << "untwisted: b1=" << u["b1"].get<std::string>() << " b2=" << u["b2"].get<std::string>()
        << " b+=" << u["bplus"].get<std::string>() << " b-=" << u["bminus"].get<std::string>()
        << " sign=" << u["sign"].get<std::string>() << " chi=" << u["chi"].get<std::string>()
        << " spin=" << bool_text(u["spin"].get<bool>()) << " ks=" << u["ks"].get<std::string>()
        << " h1_two_torsion=" << u["h1_two_torsion"].get<std::string>()
        << " form=" << u["form"]["parity"].get<std::string>() << "/" << u["form"]["definiteness"].get<std::string>()
        << "\n";
    out << "  gates:\n";
    render_gates(out, report["untwisted_gates"]);
    for (const auto& ls : report["local_systems"]) {
        out << "local system '" << ls["name"].get<std::string>() << "':";
        for (const auto& [label, cls] : ls["selections"].items()) {
            if (cls.get<std::string>() != manifold::kTrivialClass) {
                out << " " << label << "=" << cls.get<std::string>();
            }
        }
        out << "\n";
        if (ls.contains("error")) {
            out << "  error: " << ls["error"].get<std::string>() << "\n";
            continue;
        }
        const json& t = ls["twisted"];
        out << "  twisted: b0=" << t["b0l"].get<std::string>() << " b1=" << t["b1l"].get<std::string>()
            << " b2=" << t["b2l"].get<std::string>() << " b+=" << t["bplusl"].get<std::string>()
            << " b-=" << t["bminusl"].get<std::string>() << " sign=" << t["signl"].get<std::string>() << "\n";
        const json& dc = ls["double_cover"];
        out << "  double cover: b=(" << dc["b0"].get<std::string>() << "," << dc["b1"].get<std::string>() << ","
            << dc["b2"].get<std::string>() << "," << dc["b3"].get<std::string>() << ","
            << dc["b4"].get<std::string>() << ") chi=" << dc["chi"].get<std::string>() << "\n";
        out << "  gauge pi0: " << ls["gauge_pi0"]["torsion"].get<std::string>() << " x Z^"
            << ls["gauge_pi0"]["free_rank"].get<std::string>() << "\n";
        out << "  config space: " << ls["config_space"].get<std::string>() << "\n";
        const json& vd = ls["virtual_dimension"];
        out << "  virtual dimension (c1^2=" << vd["c1sq"].get<std::string>() << "): ";
        if (vd.contains("error")) {
            out << vd["error"].get<std::string>() << "\n";
        } else {
            out << "d=" << vd["d"].get<std::string>() << " d'=" << vd["d_prime"].get<std::string>() << "\n";
        }
        out << "  gates:\n";
        render_gates(out, ls["gates"]);
    }
    out << "verdict: " << report["verdict"]["overall"].get<std::string>() << "\n";
    for (const auto& c : report["verdict"]["certificates"]) {
        const std::string where = c["local_system"].get<std::string>();
        out << "  certificate: " << (where.empty() ? "(untwisted)" : where) << " / " << c["gate"].get<std::string>()
            << "\n";
    }
    return out.str();
}

lattice::IntMatrix read_gram_file(const std::string& path)
{
    json j = json_io::read_file(path);
    if (j.is_object()) {
        json_io::reject_unknown_fields(j, {"gram"}, path);
        j = json_io::require_field(j, "gram", path);
    }
    if (!j.is_array()) {
        throw Error(ErrorCode::InvalidManifest, path + ": expected an array of rows");
    }
    lattice::IntMatrix rows;
    for (const auto& row : j) {
        if (!row.is_array()) {
            throw Error(ErrorCode::InvalidManifest, path + ": expected an array of rows");
        }
        IntVector r;
        for (const auto& x : row) {
            r.push_back(json_io::as_integer(x, path));
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<rep_ring::Line> parse_line_spec(const std::string& text)
{
    std::vector<rep_ring::Line> lines;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        auto bad = [&] {
            return Error(ErrorCode::InvalidArgument, "bad line spec '" + item + "', expected c<k> or c<k>^<m>");
        };
        if (item.size() < 2 || item[0] != 'c') {
            throw bad();
        }
        const std::size_t caret = item.find('^');
        try {
            rep_ring::Line line;
            line.index = to_int64(parse_integer(item.substr(1, caret == std::string::npos ? std::string::npos
                                                                                         : caret - 1)));
            if (caret != std::string::npos) {
                line.multiplicity = to_int64(parse_integer(item.substr(caret + 1)));
            }
            lines.push_back(line);
        } catch (const Error&) {
            throw bad();
        }
    }
    return lines;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"formgate: exact lattice and local-coefficient smoothability gates for 4-manifolds", "formgate"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    std::string path;
    bool as_json = false;
    std::optional<std::int64_t> rank_cap;

    auto* lattice_cmd = app.add_subcommand("lattice", "Invariants of a Gram matrix file");
    lattice_cmd->add_option("gram", path, "JSON Gram matrix")->required();
    lattice_cmd->add_flag("--json", as_json, "Canonical JSON output");
    lattice_cmd->add_option("--rank-cap", rank_cap, "Enumeration rank cap");

    bool oracle = false;
    int radius = 4;
    auto* charvec_cmd = app.add_subcommand("charvec", "Minimum characteristic norm of a definite unimodular form");
    charvec_cmd->add_option("gram", path, "JSON Gram matrix")->required();
    charvec_cmd->add_flag("--oracle", oracle, "Cross-check against the brute-force box scan");
    charvec_cmd->add_option("--radius", radius, "Oracle box radius")->check(CLI::Range(0, 1000));
    charvec_cmd->add_option("--rank-cap", rank_cap, "Enumeration rank cap");
    charvec_cmd->add_flag("--json", as_json, "Canonical JSON output");

    auto* obstruct_cmd = app.add_subcommand("obstruct", "Run every gate on a manifest");
    obstruct_cmd->add_option("manifest", path, "JSON manifest")->required();
    obstruct_cmd->add_flag("--json", as_json, "Canonical JSON report");
    obstruct_cmd->add_option("--rank-cap", rank_cap, "Enumeration rank cap");

    DieckArgs dieck;
    auto* dieck_cmd = app.add_subcommand("dieck", "Trace side of the tom Dieck degree formula");
    dieck_cmd->add_option("--group", dieck.group, "z2 or z4")->check(CLI::IsMember({"z2", "z4"}));
    dieck_cmd->add_option("--dg", dieck.dg, "Degree of the fixed-point map");
    dieck_cmd->add_option("--plus", dieck.plus, "Lines of W-perp, e.g. c2^3,c1");
    dieck_cmd->add_option("--minus", dieck.minus, "Lines of V-perp, e.g. c1^2,c-1^2");
    dieck_cmd->add_option("--at", dieck.at, "Evaluate at g^j");
    dieck_cmd->add_option("--b", dieck.b, "Shorthand: b for the Z/4 bound 2^(b-k)");
    dieck_cmd->add_option("--k", dieck.k, "Shorthand: k for the Z/4 bound 2^(b-k)");
    dieck_cmd->add_flag("--json", dieck.as_json, "Canonical JSON output");

    auto* catalog_cmd = app.add_subcommand("catalog", "List the built-in summands");
    catalog_cmd->add_flag("--json", as_json, "Canonical JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (lattice_cmd->parsed()) {
            return cmd_lattice(path, as_json, rank_cap, out);
        }
        if (charvec_cmd->parsed()) {
            return cmd_charvec(path, oracle, radius, rank_cap, as_json, out, err);
        }
        if (obstruct_cmd->parsed()) {
            return cmd_obstruct(path, as_json, rank_cap, out);
        }
        if (dieck_cmd->parsed()) {
            return cmd_dieck(dieck, out);
        }
        return cmd_catalog(as_json, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: internal: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace formgate::cli
