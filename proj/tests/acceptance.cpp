// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include "formgate/charvec.hpp"
#include "formgate/error.hpp"
#include "formgate/manifold.hpp"
#include "formgate/obstruction.hpp"
#include "formgate/rep_ring.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace formgate;
using manifold::LocalSystemChoice;
using obstruction::Verdict;
using test::build;

struct Check
{
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what)
    {
        if (!condition) {
            if (ok) {
                detail << "first failure: " << what;
            }
            ok = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Integer hyp_int(const obstruction::GateResult& g, const std::string& key)
{
    return std::get<Integer>(g.hypothesis_values.at(key));
}

bool has_certificate(const obstruction::ObstructionReport& r, const std::string& choice, const std::string& gate)
{
    for (const auto& c : r.certificates) {
        if (c.local_system == choice && c.gate_id == gate) {
            return true;
        }
    }
    return false;
}

LocalSystemChoice on_torus(const manifold::ManifoldPresentation& p)
{
    return LocalSystemChoice::on_every(p, "T2xS2", "loop");
}

void criterion1(Check& c)
{
    double worst = 0;
    auto timed = [&](const lattice::GramLattice& l) {
        const auto start = std::chrono::steady_clock::now();
        const auto r = charvec::elkies_is_standard(l);
        const double t = seconds_since(start);
        worst = std::max(worst, t);
        c.require(t < 1.0, "rank " + std::to_string(l.rank()) + " took " + std::to_string(t) + " s");
        return r;
    };
    for (std::size_t n = 1; n <= 12; ++n) {
        const auto r = timed(lattice::diagonal(n, -1));
        c.require(r.standard && r.minimum.min_abs_norm == static_cast<long>(n), "diag(-1)^" + std::to_string(n));
    }
    const auto e8 = timed(lattice::e8());
    c.require(!e8.standard && e8.minimum.min_abs_norm == 0, "-E8");
    const auto two = timed(lattice::repeat(lattice::e8(), 2));
    c.require(!two.standard && two.minimum.min_abs_norm == 0, "2(-E8)");
    if (c.ok) {
        c.detail << "diag(-1)^1..12 standard with min n; -E8 and 2(-E8) nonstandard with min 0; slowest " << worst
                 << " s";
    }
}

void criterion2(Check& c)
{
    const auto start = std::chrono::steady_clock::now();
    const auto corpus = test::definite_corpus(240, 20240601);
    c.require(corpus.size() >= 200, "corpus has only " + std::to_string(corpus.size()) + " lattices");
    std::size_t idx = 0;
    for (const auto& l : corpus) {
        const auto fp = charvec::min_characteristic_norm(l);
        const auto bf = charvec::brute_force_min_char(l, 4);
        c.require(fp.min_abs_norm == bf.min_abs_norm, "lattice " + std::to_string(idx) + ": enumeration " +
                                                          to_decimal(fp.min_abs_norm) + " vs oracle " +
                                                          to_decimal(bf.min_abs_norm));
        const auto inv = lattice::validate(l);
        c.require((fp.min_abs_norm - std::abs(inv.signature)) % 8 == 0,
                  "van der Blij fails on lattice " + std::to_string(idx));
        ++idx;
    }
    const double t = seconds_since(start);
    c.require(t < 60.0, "took " + std::to_string(t) + " s");
    if (c.ok) {
        c.detail << corpus.size() << " scrambled definite unimodular lattices of rank <= 5; enumeration = radius-4 "
                 << "oracle and min = |sign| mod 8 on all; " << t << " s";
    }
}

void criterion3(Check& c)
{
    const auto p = build({{"E8", 2}, {"S2xS2", 1}, {"T2xS2", 1}});
    const auto choice = on_torus(p);
    const auto t = manifold::twisted_invariants(p, choice);
    const auto u = manifold::untwisted_invariants(p);
    const auto g = obstruction::gate_ten_eighths_local(p, choice);
    const auto r = obstruction::run_all(p, {{"l", choice}});
    c.require(t.bplusl == 1, "bplusl = " + std::to_string(t.bplusl));
    c.require(-u.sign == 16 && -u.sign / 8 == 2, "-sign/8 = " + std::to_string(-u.sign / 8));
    c.require(g.applicable && g.verdict == Verdict::Violated, "ten_eighths_local not violated");
    c.require(r.nonsmoothable && has_certificate(r, "l", "ten_eighths_local"), "overall not nonsmoothable");
    if (c.ok) {
        c.detail << "2|E8|#(S2xS2)#(T2xS2), l on torus: bplusl 1 < 2 = -sign/8, ten_eighths_local violated";
    }
}

void criterion4(Check& c)
{
    const auto p = build({{"E8", 3}, {"S2xS2", 1}, {"Sigma1", 1}});
    const auto t = manifold::twisted_invariants(p, LocalSystemChoice::on_every(p, "Sigma1", "alpha"));
    const auto u = manifold::untwisted_invariants(p);
    c.require(t.bplusl == 2 && t.bplusl == u.bplus + 1,
              "bplusl " + std::to_string(t.bplusl) + ", bplus " + std::to_string(u.bplus));
    if (c.ok) {
        c.detail << "3|E8|#(S2xS2)#Sigma1, l = alpha: bplusl 2 = bplus 1 + 1";
    }
}

void criterion5(Check& c)
{
    const auto entries = manifold::Catalog::builtin().entries();
    std::mt19937_64 rng(5005);
    int checked = 0;
    int failures = 0;
    while (checked < 500) {
        manifold::ManifoldPresentation p;
        const std::size_t n = 1 + rng() % 6;
        for (std::size_t i = 0; i < n; ++i) {
            p.summands.push_back(*entries[rng() % entries.size()]);
        }
        LocalSystemChoice choice = LocalSystemChoice::all_trivial(p);
        std::vector<std::size_t> twistable;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& classes = p.summands[i].local_classes;
            if (!classes.empty()) {
                twistable.push_back(i);
                if (rng() % 2 == 0) {
                    choice.selections[i] = classes[rng() % classes.size()].name;
                }
            }
        }
        if (twistable.empty()) {
            continue;
        }
        if (choice.selections == LocalSystemChoice::all_trivial(p).selections) {
            const std::size_t i = twistable[rng() % twistable.size()];
            choice.selections[i] = p.summands[i].local_classes.front().name;
        }
        ++checked;
        try {
            const auto u = manifold::untwisted_invariants(p);
            const auto t = manifold::twisted_invariants(p, choice);
            const auto d = manifold::double_cover_betti(p, choice);
            const bool ok = 1 - u.b1 + u.bplus == -t.b1l + t.bplusl && d.chi == 2 * u.chi &&
                            d.b0t - d.b1t + d.b2t - d.b3t + d.b4t == d.chi;
            failures += ok ? 0 : 1;
        } catch (const Error& e) {
            ++failures;
            c.require(false, e.what());
        }
    }
    c.require(failures == 0, std::to_string(failures) + " failures");
    if (c.ok) {
        c.detail << checked << " random presentations: Euler identity and double-cover chi doubling, 0 failures";
    }
}

void criterion6(Check& c)
{
    const auto e = build({{"E8", 2}, {"T2xS2", 1}});
    const auto re = obstruction::run_all(e, {{"l", on_torus(e)}});
    c.require(re.nonsmoothable && has_certificate(re, "l", "definite_standard"),
              "Q_V = 2(-E8) not certified by definite_standard");
    const auto d = build({{"CP2bar", 16}, {"T2xS2", 1}});
    const auto rd = obstruction::run_all(d, {{"l", on_torus(d)}});
    c.require(!rd.nonsmoothable, "Q_V = diag(-1)^16 reported an obstruction");
    const auto gd = obstruction::gate_definite_standard(d, on_torus(d));
    c.require(gd.applicable && gd.verdict == Verdict::Satisfied, "diag(-1)^16 gate not satisfied");
    if (c.ok) {
        c.detail << "2(-E8)#(T2xS2) certified by definite_standard; diag(-1)^16#(T2xS2) no obstruction";
    }
}

void criterion7(Check& c)
{
    for (std::int64_t b = 0; b <= 10; ++b) {
        for (std::int64_t k = 0; k <= 10; ++k) {
            const auto r = rep_ring::ten_eighths_bound(b, k);
            Rational expected = 1;
            for (std::int64_t i = 0; i < std::abs(b - k); ++i) {
                expected *= 2;
            }
            if (b < k) {
                expected = 1 / expected;
            }
            c.require(r.trace == rep_ring::GaussianRational(expected),
                      "b=" + std::to_string(b) + " k=" + std::to_string(k) + " trace " + r.trace.to_string());
            c.require(r.integral == (b >= k), "integrality at b=" + std::to_string(b) + " k=" + std::to_string(k));
        }
    }
    for (std::int64_t k = 0; k <= 10; ++k) {
        Integer expected = 1;
        for (std::int64_t i = 0; i < 2 * k; ++i) {
            expected *= 2;
        }
        c.require(rep_ring::definite_case_trace(k) == rep_ring::GaussianRational(Rational(expected)),
                  "definite_case_trace(" + std::to_string(k) + ")");
    }
    if (c.ok) {
        c.detail << "2^(b-k) for 0 <= b,k <= 10 with integrality iff b >= k; 2^(2k) for 0 <= k <= 10";
    }
}

void criterion8(Check& c)
{
    const auto v = obstruction::virtual_dimension(0, -16, 0, 0, 2);
    c.require(v.d == 2 && v.d_prime == 4, "virtual_dimension(0,-16,0,0,2)");
    const auto corpus = test::definite_corpus(240, 20240601);
    std::size_t checked = 0;
    for (const auto& l : corpus) {
        manifold::ManifoldPresentation p;
        p.summands.push_back(test::custom_summand("Q", l));
        p.summands.push_back(manifold::catalog_lookup("T2xS2"));
        const auto g = obstruction::gate_theorem_ineq_aggregate(p, on_torus(p));
        const auto n = static_cast<long>(l.rank());
        const Integer m = charvec::min_characteristic_norm(l).min_abs_norm;
        const Integer numerator = Integer(n) - m;
        c.require(g.applicable, "gate not applicable on rank " + std::to_string(n));
        if (!g.applicable) {
            continue;
        }
        c.require(numerator % 4 == 0, "b2 - min not divisible by 4");
        c.require(hyp_int(g, "d_prime") == numerator / 4, "d' mismatch");
        c.require((hyp_int(g, "d_prime") > 0) == (g.verdict == Verdict::Violated), "d' sign vs verdict");
        ++checked;
    }
    for (const auto& q : {lattice::e8(), lattice::repeat(lattice::e8(), 2),
                          lattice::direct_sum(lattice::e8(), lattice::diagonal(1, -1))}) {
        manifold::ManifoldPresentation p;
        p.summands.push_back(test::custom_summand("Q", q));
        p.summands.push_back(manifold::catalog_lookup("T2xS2"));
        const auto g = obstruction::gate_theorem_ineq_aggregate(p, on_torus(p));
        const Integer m = charvec::min_characteristic_norm(q).min_abs_norm;
        c.require(hyp_int(g, "d_prime") == (Integer(static_cast<long>(q.rank())) - m) / 4, "d' on E8 family");
        c.require(g.verdict == Verdict::Violated, "E8 family not violated");
    }
    if (c.ok) {
        c.detail << "d = 2, d' = 4; d' = (b2 - min)/4 and d' > 0 iff violated on " << checked
                 << " corpus lattices and the E8 family";
    }
}

void criterion9(Check& c)
{
    const auto two = obstruction::gate_rohlin(build({{"E8", 2}}));
    c.require(two.applicable && two.verdict == Verdict::Satisfied, "sign -16 spin");
    const auto one = obstruction::gate_rohlin(build({{"E8", 1}}));
    c.require(one.applicable && one.verdict == Verdict::Violated, "sign -8 spin");
    const auto f = obstruction::gate_furuta(build({{"E8", 2}, {"S2xS2", 3}}));
    c.require(f.applicable && f.verdict == Verdict::Satisfied, "Furuta verdict");
    c.require(hyp_int(f, "b2") == 22 && hyp_int(f, "four_b2") == hyp_int(f, "five_abs_sign_plus_8"),
              "Furuta equality 4*22 = 5*16 + 8");
    if (c.ok) {
        c.detail << "Rohlin: -16 satisfied, -8 violated; Furuta on 2|E8|#3(S2xS2): 22 >= 22 with equality";
    }
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"Elkies discrimination", criterion1},
        {"oracle equivalence", criterion2},
        {"ten-eighths gate on 2|E8|#(S2xS2)#(T2xS2)", criterion3},
        {"twisted b+ identity for Sigma1", criterion4},
        {"Euler identity suite", criterion5},
        {"definite-standard gate", criterion6},
        {"tom Dieck traces", criterion7},
        {"virtual dimension", criterion8},
        {"Rohlin and Furuta gates", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": "
                  << c.detail.str() << "\n";
        failed += c.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
