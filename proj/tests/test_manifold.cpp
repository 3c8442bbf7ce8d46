#include "formgate/error.hpp"
#include "formgate/json_io.hpp"
#include "formgate/manifold.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace formgate {
namespace {

using manifold::LocalSystemChoice;
using manifold::TwoTorsion;
using test::build;

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return ErrorCode::ParseError;
}

TEST(Catalog, TorusTimesSphere)
{
    const auto& s = manifold::catalog_lookup("T2xS2");
    EXPECT_EQ(s.b1, 2);
    EXPECT_EQ(s.form, lattice::hyperbolic());
    EXPECT_TRUE(s.spin);
    const auto* loop = s.find_class("loop");
    ASSERT_NE(loop, nullptr);
    EXPECT_TRUE(loop->nontrivial);
    EXPECT_EQ(loop->b1_twisted, 0);
    EXPECT_EQ(loop->b2_twisted, 0);
    EXPECT_TRUE(loop->w1sq_zero);
}

TEST(Catalog, Sigma1)
{
    const auto& s = manifold::catalog_lookup("Sigma1");
    EXPECT_EQ(s.b1, 0);
    EXPECT_EQ(s.form.rank(), 0U);
    EXPECT_FALSE(s.spin);
    EXPECT_EQ(s.ks, 1);
    EXPECT_EQ(s.h1_two_torsion, TwoTorsion::cyclic(1));
    const auto* alpha = s.find_class("alpha");
    ASSERT_NE(alpha, nullptr);
    EXPECT_EQ(alpha->b1_twisted, 0);
    EXPECT_EQ(alpha->b2_twisted, 2);
    EXPECT_EQ(alpha->bplus_twisted, 1);
    EXPECT_EQ(alpha->sign_twisted, 0);
    EXPECT_TRUE(alpha->w1sq_eq_w2);
}

TEST(Catalog, E8)
{
    const auto& s = manifold::catalog_lookup("E8");
    EXPECT_EQ(s.b1, 0);
    EXPECT_EQ(s.form, lattice::e8(-1));
    EXPECT_TRUE(s.spin);
    EXPECT_EQ(s.ks, 1);
}

TEST(Catalog, SortedAndValid)
{
    const auto entries = manifold::Catalog::builtin().entries();
    ASSERT_FALSE(entries.empty());
    for (std::size_t i = 1; i < entries.size(); ++i) {
        EXPECT_LT(entries[i - 1]->name, entries[i]->name);
    }
    for (const auto* s : entries) {
        EXPECT_NO_THROW(manifold::validate_summand(*s)) << s->name;
        if (s->spin) {
            EXPECT_EQ(lattice::validate(s->form).parity, lattice::Parity::Even) << s->name;
        }
    }
}

TEST(Catalog, UnknownName)
{
    EXPECT_EQ(code_of([] { (void)manifold::catalog_lookup("K3"); }), ErrorCode::UnknownSummand);
}

TEST(Catalog, JsonRoundTrip)
{
    for (const auto* s : manifold::Catalog::builtin().entries()) {
        const auto back = manifold::summand_from_json(manifold::to_json(*s));
        EXPECT_EQ(manifold::to_json(back), manifold::to_json(*s));
    }
}

TEST(Summand, RejectsInconsistentData)
{
    auto s = manifold::catalog_lookup("T2xS2");
    s.local_classes[0].bplus_twisted = 1;
    EXPECT_EQ(code_of([&] { manifold::validate_summand(s); }), ErrorCode::DataInconsistency);

    auto t = manifold::catalog_lookup("T2xS2");
    t.local_classes[0].b1_twisted = 1;
    EXPECT_EQ(code_of([&] { manifold::validate_summand(t); }), ErrorCode::EulerIdentityViolation);

    auto u = manifold::catalog_lookup("CP2");
    u.spin = true;
    EXPECT_EQ(code_of([&] { manifold::validate_summand(u); }), ErrorCode::DataInconsistency);
}

TEST(TwoTorsionText, ParseAndCombine)
{
    EXPECT_EQ(manifold::parse_two_torsion("Z/2"), TwoTorsion::cyclic(1));
    EXPECT_EQ(manifold::parse_two_torsion("Z/2^3"), TwoTorsion::cyclic(3));
    EXPECT_EQ(manifold::parse_two_torsion("Z/2+Z/2"), TwoTorsion::klein());
    EXPECT_EQ(manifold::to_string(TwoTorsion::cyclic(3)), "Z/2^3");
    EXPECT_EQ(manifold::combine(TwoTorsion::none(), TwoTorsion::cyclic(2)), TwoTorsion::cyclic(2));
    EXPECT_EQ(manifold::combine(TwoTorsion::cyclic(1), TwoTorsion::cyclic(1)), TwoTorsion::klein());
    EXPECT_EQ(manifold::combine(TwoTorsion::klein(), TwoTorsion::cyclic(1)), TwoTorsion::other());
}

TEST(Untwisted, SphereIsNeutral)
{
    const auto x = build({{"E8", 1}, {"S2xS2", 2}});
    const auto y = manifold::connect_sum(manifold::presentation("S4"), x);
    const auto a = manifold::untwisted_invariants(x);
    const auto b = manifold::untwisted_invariants(y);
    EXPECT_EQ(a.b2, b.b2);
    EXPECT_EQ(a.sign, b.sign);
    EXPECT_EQ(a.chi, b.chi);
    EXPECT_EQ(a.spin, b.spin);
}

TEST(Untwisted, TwoE8PlusHyperbolic)
{
    const auto u = manifold::untwisted_invariants(build({{"E8", 2}, {"S2xS2", 1}}));
    EXPECT_EQ(u.b2, 18);
    EXPECT_EQ(u.sign, -16);
    EXPECT_TRUE(u.spin);
    EXPECT_EQ(u.form_invariants.signature, u.sign);
}

TEST(Untwisted, KirbySiebenmannAdds)
{
    EXPECT_EQ(manifold::untwisted_invariants(build({{"E8", 1}, {"Sigma1", 1}})).ks, 0);
    EXPECT_EQ(manifold::untwisted_invariants(build({{"E8", 1}})).ks, 1);
}

TEST(Untwisted, Examples)
{
    const auto s = manifold::untwisted_invariants(build({{"S2xS2", 1}}));
    EXPECT_EQ(s.b2, 2);
    EXPECT_EQ(s.sign, 0);
    EXPECT_EQ(s.bplus, 1);

    const auto v = manifold::untwisted_invariants(build({{"E8", 3}, {"S2xS2", 1}, {"Sigma1", 1}}));
    EXPECT_EQ(v.b2, 26);
    EXPECT_EQ(v.sign, -24);
    EXPECT_EQ(v.bplus, 1);
    EXPECT_FALSE(v.spin);

    const auto t = manifold::untwisted_invariants(build({{"T4", 1}}));
    EXPECT_EQ(t.b1, 4);
    EXPECT_EQ(t.b2, 6);
    EXPECT_EQ(t.sign, 0);
    EXPECT_EQ(t.chi, 0);
}

TEST(Untwisted, EmptyPresentation)
{
    EXPECT_EQ(code_of([] { (void)manifold::untwisted_invariants({}); }), ErrorCode::InvalidArgument);
}

TEST(Twisted, SigmaRaisesBplus)
{
    const auto p = build({{"E8", 3}, {"S2xS2", 1}, {"Sigma1", 1}});
    const auto t = manifold::twisted_invariants(p, LocalSystemChoice::on_every(p, "Sigma1", "alpha"));
    EXPECT_EQ(t.bplusl, 2);
    EXPECT_EQ(t.bplusl, manifold::untwisted_invariants(p).bplus + 1);
    EXPECT_EQ(t.b0l, 0);
    EXPECT_EQ(t.bplusl + t.bminusl, t.b2l);
    EXPECT_EQ(t.bplusl - t.bminusl, t.signl);
}

TEST(Twisted, TorusKeepsForm)
{
    const auto p = build({{"E8", 2}, {"S2xS2", 1}, {"T2xS2", 1}});
    const auto c = LocalSystemChoice::on_every(p, "T2xS2", "loop");
    const auto t = manifold::twisted_invariants(p, c);
    EXPECT_EQ(t.b2l, 18);
    EXPECT_EQ(t.bplusl, 1);
    const auto q = manifold::twisted_lattice(p, c);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, lattice::direct_sum(lattice::repeat(lattice::e8(), 2), lattice::hyperbolic()));
}

TEST(Twisted, MayerVietorisCorrection)
{
    const auto p = build({{"T2xS2", 2}});
    const auto c = LocalSystemChoice::on_every(p, "T2xS2", "loop");
    EXPECT_EQ(manifold::twisted_invariants(p, c).b1l, 1);
    EXPECT_EQ(manifold::gauge_pi0(p, c).free_rank, 1);
    EXPECT_EQ(manifold::gauge_pi0(p, c).torsion, "Z/2");
    EXPECT_EQ(manifold::config_space_descriptor(p, c), "RP^inf x T^1");
}

TEST(Twisted, Errors)
{
    const auto p = build({{"T2xS2", 1}, {"E8", 1}});
    EXPECT_EQ(code_of([&] { (void)manifold::twisted_invariants(p, LocalSystemChoice::all_trivial(p)); }),
              ErrorCode::AllTrivial);
    EXPECT_EQ(code_of([&] { (void)manifold::twisted_invariants(p, LocalSystemChoice::on_every(p, "E8", "loop")); }),
              ErrorCode::UnknownLocalClass);
    EXPECT_EQ(code_of([&] { (void)LocalSystemChoice::from_labels(p, {{"K3#1", "loop"}}); }),
              ErrorCode::InvalidArgument);
}

TEST(Labels, InstanceNumbering)
{
    const auto p = build({{"E8", 2}, {"T2xS2", 1}, {"E8", 1}});
    EXPECT_EQ(p.instance_labels(), (std::vector<std::string>{"E8#1", "E8#2", "T2xS2#1", "E8#3"}));
    const auto c = LocalSystemChoice::from_labels(p, {{"T2xS2#1", "loop"}});
    EXPECT_EQ(c.selections, (std::vector<std::string>{"trivial", "trivial", "loop", "trivial"}));
}

TEST(DoubleCover, Examples)
{
    const auto t = build({{"T2xS2", 1}});
    const auto dt = manifold::double_cover_betti(t, LocalSystemChoice::on_every(t, "T2xS2", "loop"));
    EXPECT_EQ(dt.b1t, 2);
    EXPECT_EQ(dt.b0t, 1);

    const auto s = build({{"Sigma1", 1}});
    const auto ds = manifold::double_cover_betti(s, LocalSystemChoice::on_every(s, "Sigma1", "alpha"));
    EXPECT_EQ(ds.b2t, 2);
    EXPECT_EQ(ds.chi, 2 * manifold::untwisted_invariants(s).chi);
}

TEST(Gauge, PulledBackTorusClass)
{
    const auto p = build({{"T4", 1}});
    EXPECT_EQ(manifold::gauge_pi0(p, LocalSystemChoice::on_every(p, "T4", "pulled")).free_rank, 0);
}

TEST(SpinCMinus, Examples)
{
    const auto torus = build({{"E8", 2}, {"T2xS2", 1}});
    EXPECT_TRUE(manifold::spin_cminus_exists(torus, LocalSystemChoice::on_every(torus, "T2xS2", "loop")));

    const auto sigma = build({{"E8", 3}, {"S2xS2", 1}, {"Sigma1", 1}});
    EXPECT_TRUE(manifold::spin_cminus_exists(sigma, LocalSystemChoice::on_every(sigma, "Sigma1", "alpha")));

    const auto odd = build({{"CP2bar", 2}, {"T2xS2", 1}});
    EXPECT_FALSE(manifold::spin_cminus_exists(odd, LocalSystemChoice::on_every(odd, "T2xS2", "loop")));

    EXPECT_EQ(code_of([&] {
                  (void)manifold::spin_cminus_exists(torus, LocalSystemChoice::on_every(torus, "T2xS2", "loop"), false);
              }),
              ErrorCode::NotApplicable);
}

TEST(Orientation, ReverseSwapsTwistedSigns)
{
    const auto p = build({{"E8", 3}, {"S2xS2", 1}, {"Sigma1", 1}});
    const auto r = manifold::reverse_orientation(p);
    const auto c = LocalSystemChoice::on_every(p, "Sigma1", "alpha");
    const auto t = manifold::twisted_invariants(p, c);
    const auto tr = manifold::twisted_invariants(r, c);
    EXPECT_EQ(tr.bplusl, t.bminusl);
    EXPECT_EQ(tr.signl, -t.signl);
    EXPECT_EQ(manifold::untwisted_invariants(r).sign, 24);
}

TEST(EulerIdentity, RandomPresentations)
{
    const auto entries = manifold::Catalog::builtin().entries();
    std::mt19937_64 rng(2024);
    int checked = 0;
    while (checked < 300) {
        manifold::ManifoldPresentation p;
        const std::size_t n = 1 + rng() % 6;
        for (std::size_t i = 0; i < n; ++i) {
            p.summands.push_back(*entries[rng() % entries.size()]);
        }
        LocalSystemChoice c = LocalSystemChoice::all_trivial(p);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& classes = p.summands[i].local_classes;
            if (!classes.empty() && rng() % 2 == 0) {
                c.selections[i] = classes[rng() % classes.size()].name;
            }
        }
        if (rng() % 2 == 0) {
            p = manifold::reverse_orientation(p);
        }
        const auto u = manifold::untwisted_invariants(p);
        try {
            const auto t = manifold::twisted_invariants(p, c);
            EXPECT_EQ(1 - u.b1 + u.bplus, -t.b1l + t.bplusl);
            const auto d = manifold::double_cover_betti(p, c);
            EXPECT_EQ(d.chi, 2 * u.chi);
            EXPECT_EQ(d.b0t - d.b1t + d.b2t - d.b3t + d.b4t, d.chi);
            ++checked;
        } catch (const Error& e) {
            ASSERT_EQ(e.code(), ErrorCode::AllTrivial);
        }
    }
}

}  // namespace
}  // namespace formgate
