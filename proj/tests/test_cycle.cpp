#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bracekit/cycle.hpp"

using namespace bracekit;
using doctest::Contains;

namespace {

CycleSpec spec72() {
    CycleSpec s;
    s.primes = {{3, 1, 0}, {2, 1, 0}};
    return s;
}

CycleSpec spec648() {
    CycleSpec s;
    s.primes = {{3, 1, 1}, {2, 1, 0}};
    return s;
}

CycleSpec spec3f() {
    CycleSpec s;
    s.primes = {{3, 1, 0}, {5, 1, 0}, {2, 1, 0}};
    return s;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

TEST_CASE("spec validation rejects malformed data") {
    CycleSpec s;
    s.primes = {{3, 1, 0}, {3, 1, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("distinct"), InputError);

    s.primes = {{2, 1, 0}, {3, 1, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("last factor"), InputError);

    s.primes = {{3, 1, 0}, {2, 2, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("r = 1"), InputError);

    s.primes = {{3, 1, 2}, {2, 1, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("r'_1"), InputError);

    s.primes = {{3, 1, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("two factors"), InputError);

    s.primes = {{3, 0, 0}, {2, 1, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("at least 1"), InputError);

    s.primes = {{9, 1, 0}, {2, 1, 0}};
    CHECK_THROWS_WITH_AS(s.validate(), Contains("not prime"), InputError);

    s = spec72();
    s.overrides.emplace(5, Mat::identity(Modulus(3, 1), 1));
    CHECK_THROWS_WITH_AS(s.validate(), Contains("out of range"), InputError);

    s = spec72();
    CHECK_NOTHROW(s.validate());
    CHECK(s.n_of(1) == 2);
    CHECK(s.n_of(2) == 3);
    CHECK(s.k_of(1) == 1);
    CHECK(s.k_of(2) == 1);
    CHECK_THROWS_AS(s.n_of(0), InputError);
    CHECK(spec648().k_of(1) == 3);
}

TEST_CASE("block matrices of the two factor spec") {
    CycleBlocks b1 = build_blocks(spec72(), 1);
    CHECK(b1.mod.m == 3);
    CHECK(b1.n == 2);
    CHECK(b1.k == 1);
    CHECK(b1.gram);
    CHECK(b1.D.rows() == std::vector<std::vector<i64>>{{2}});
    CHECK(b1.E.rows() == std::vector<std::vector<i64>>{{1}});
    CHECK(b1.Q.U.rows() == std::vector<std::vector<i64>>{{2}});
    CHECK(b1.C == b1.D);
    CHECK(b1.F.is_identity());
    CHECK(b1.v.c == std::vector<i64>{0});
    CHECK(mat_mul(mat_mul(mat_transpose(b1.D), b1.E), b1.D) == b1.E);
    CHECK(mat_order(b1.C) == 2);
    CHECK(mat_is_invertible(mat_sub(b1.C, Mat::identity(b1.mod, 1))));

    CycleBlocks b2 = build_blocks(spec72(), 2);
    CHECK(b2.mod.m == 2);
    CHECK(b2.n == 3);
    CHECK_FALSE(b2.gram);
    CHECK(b2.D.rows() == std::vector<std::vector<i64>>{{0, 1}, {1, 1}});
    CHECK(b2.C == b2.D);
    CHECK(b2.Q.U.rows() == std::vector<std::vector<i64>>{{0, 1}, {0, 0}});
    CHECK(b2.v.c == std::vector<i64>{0, 1});
    CHECK(mat_order(b2.C) == 3);
    CHECK(mat_is_invertible(mat_sub(b2.C, Mat::identity(b2.mod, 2))));

    CHECK(simplicity_criterion(spec72()));
}

TEST_CASE("order-72 brace: simple with zero socle and sylow axes") {
    auto B = build_cycle_brace(spec72());
    REQUIRE(B->order().has_value());
    CHECK(*B->order() == 72);
    CHECK(B->shape().moduli == std::vector<i64>{3, 3, 2, 2, 2});
    CHECK(B->certificate() == SimplicityCertificate::SimpleByCriterion);

    auto rep = verify_brace_axioms(*B);
    CHECK(rep.pass());
    CHECK(rep.exhaustive);

    auto soc = socle(*B);
    REQUIRE(soc.size() == 1);
    CHECK(soc[0] == B->zero());

    auto sim = is_simple(*B);
    CHECK(sim.simple);
    CHECK(B->certificate() == SimplicityCertificate::SimpleExhaustive);

    auto syl = sylow_left_ideals(*B);
    REQUIRE(syl.size() == 2);
    CHECK(syl[0].p == 2);
    CHECK(syl[0].elements.size() == 8);
    CHECK(syl[0].left_ideal);
    CHECK(syl[1].p == 3);
    CHECK(syl[1].elements.size() == 9);
    CHECK(syl[1].left_ideal);

    // the factor axes are left ideals but, by simplicity, not ideals
    std::vector<Element> axis1, axis2;
    for (i64 a = 0; a < 3; ++a)
        for (i64 b = 0; b < 3; ++b) axis1.push_back(Element{a, b, 0, 0, 0});
    for (i64 x = 0; x < 2; ++x)
        for (i64 y = 0; y < 2; ++y)
            for (i64 z = 0; z < 2; ++z) axis2.push_back(Element{0, 0, x, y, z});
    CHECK(is_left_ideal(*B, axis1));
    CHECK_FALSE(is_ideal(*B, axis1));
    CHECK(is_left_ideal(*B, axis2));
    CHECK_FALSE(is_ideal(*B, axis2));

    CHECK(phi_hom_check(spec72(), 1));
    CHECK(phi_hom_check(spec72(), 2));
}

TEST_CASE("order-72 brace: actions, q invariance, pairwise route, swap") {
    IteratedActionsSpec acts = build_actions(spec72());
    ActionGraph g = action_graph(acts);
    REQUIRE(g.edges.size() == 2);
    CHECK(std::count(g.edges.begin(), g.edges.end(), std::make_pair(2, 1)) == 1);
    CHECK(std::count(g.edges.begin(), g.edges.end(), std::make_pair(1, 2)) == 1);

    // factors are prime-power braces, so the verdict machinery must refuse
    auto gv = graph_verdict(acts);
    CHECK(gv.verdict == GraphVerdict::Inapplicable);
    CHECK(gv.reason.find("not simple") != std::string::npos);

    // q of a slice never moves under the other factor's action
    CycleBlocks b1 = build_blocks(spec72(), 1), b2 = build_blocks(spec72(), 2);
    HegedusSpec h1(b1.mod, 1, b1.Q, b1.F), h2(b2.mod, 2, b2.Q, b2.F);
    for (i64 ra = 0; ra < 8; ++ra)
        for (i64 rx = 0; rx < 9; ++rx) {
            Element a = acts.factors[1]->shape().unrank(ra);
            Element x = acts.factors[0]->shape().unrank(rx);
            Element ax = acts.apply(1, 0, a, x);
            CHECK(q_value(h1, Vec(b1.mod, {x[0]}), x[1]) ==
                  q_value(h1, Vec(b1.mod, {ax[0]}), ax[1]));
        }
    for (i64 rx = 0; rx < 9; ++rx)
        for (i64 ra = 0; ra < 8; ++ra) {
            Element x = acts.factors[0]->shape().unrank(rx);
            Element a = acts.factors[1]->shape().unrank(ra);
            Element xa = acts.apply(0, 1, x, a);
            CHECK(q_value(h2, Vec(b2.mod, {a[0], a[1]}), a[2]) ==
                  q_value(h2, Vec(b2.mod, {xa[0], xa[1]}), xa[2]));
        }

    // the two-factor wiring agrees with the pairwise product pointwise
    auto B = build_cycle_brace(spec72());
    MatchedPairSpec mp{acts.factors[0], acts.factors[1], acts.act[1][0], acts.act[0][1]};
    auto Bd = matched_product(mp);
    for (i64 ra = 0; ra < 72; ++ra)
        for (i64 rb = 0; rb < 72; ++rb) {
            Element a = B->shape().unrank(ra), b = B->shape().unrank(rb);
            CHECK(B->lambda(a, b) == Bd->lambda(a, b));
            CHECK(B->lambda_inv(a, b) == Bd->lambda_inv(a, b));
        }

    // swapping the two factors gives an isomorphic brace
    IteratedActionsSpec swapped({acts.factors[1], acts.factors[0]});
    swapped.act[0][1] = acts.act[1][0];
    swapped.act[1][0] = acts.act[0][1];
    auto Bs = iterated_matched_product(swapped);
    auto swap_map = [](const Element& t) {
        return Element{t[3], t[4], t[0], t[1], t[2]};
    };
    CHECK(is_brace_isomorphism(*Bs, *B, swap_map));
}

TEST_CASE("identity overrides collapse to the direct product") {
    CycleSpec s = spec72();
    s.overrides.emplace(1, Mat::identity(Modulus(3, 1), 1));
    s.overrides.emplace(2, Mat::identity(Modulus(2, 1), 2));
    CHECK_FALSE(simplicity_criterion(s));

    CHECK(action_graph(build_actions(s)).edges.empty());
    auto gv = graph_verdict(build_actions(s));
    CHECK(gv.verdict == GraphVerdict::NotSimple);
    CHECK(gv.reason.find("no full oriented cycle") != std::string::npos);

    auto B = build_cycle_brace(s);
    CHECK(*B->order() == 72);
    CHECK(B->certificate() == SimplicityCertificate::Unknown);
    CHECK(verify_brace_axioms(*B).pass());

    std::vector<Element> axis1, axis2;
    for (i64 a = 0; a < 3; ++a)
        for (i64 b = 0; b < 3; ++b) axis1.push_back(Element{a, b, 0, 0, 0});
    for (i64 x = 0; x < 2; ++x)
        for (i64 y = 0; y < 2; ++y)
            for (i64 z = 0; z < 2; ++z) axis2.push_back(Element{0, 0, x, y, z});
    CHECK(is_ideal(*B, axis1));
    CHECK(is_ideal(*B, axis2));

    auto sim = is_simple(*B);
    CHECK_FALSE(sim.simple);
    CHECK(sim.ideal.size() == 2);
}

TEST_CASE("order-648 brace: replica blocks and rotation automorphisms") {
    CycleBlocks b1 = build_blocks(spec648(), 1);
    CHECK(b1.n == 2);
    CHECK(b1.k == 3);
    CHECK(b1.F.rows() == std::vector<std::vector<i64>>{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    CHECK(b1.C.rows() == std::vector<std::vector<i64>>{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    CHECK(b1.Q.U.rows() == std::vector<std::vector<i64>>{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    CHECK(mat_order(b1.F) == 3);
    CHECK(mat_mul(b1.C, b1.F) == mat_mul(b1.F, b1.C));

    auto H1 = build_H(spec648(), 1);
    CHECK(*H1->order() == 81);

    auto B = build_cycle_brace(spec648());
    CHECK(*B->order() == 648);
    CHECK(simplicity_criterion(spec648()));
    CHECK(B->certificate() == SimplicityCertificate::SimpleByCriterion);

    auto rep = verify_brace_axioms(*B);
    CHECK(rep.pass());
    CHECK(rep.exhaustive);
    CHECK(is_simple(*B).simple);

    CHECK(phi_hom_check(spec648(), 1));

    // rotating the three replica blocks is a brace automorphism
    auto psi = psi_sigma(spec648(), 1, 3, {1, 2, 0});
    CHECK(psi.validated);
    Element e{1, 2, 0, 2, 1, 0, 1};
    CHECK(psi.map(e) == Element{2, 0, 1, 2, 1, 0, 1});
    CHECK(psi.inverse(psi.map(e)) == e);

    auto id = psi_sigma(spec648(), 1, 3, {0, 1, 2});
    CHECK(id.validated);
    CHECK(id.map(e) == e);

    // a transposition breaks the cyclic linking and is refused
    CHECK_THROWS_WITH_AS(psi_sigma(spec648(), 1, 3, {1, 0, 2}), Contains("rotation"),
                         InputError);
    CHECK_THROWS_WITH_AS(psi_sigma(spec648(), 1, 2, {1, 0}), Contains("replica blocks"),
                         InputError);
    CHECK_THROWS_WITH_AS(psi_sigma(spec648(), 1, 3, {1, 1, 0}), Contains("permutation"),
                         InputError);
}

TEST_CASE("three factors: sampled build and the corrected wrap action") {
    Caps caps;
    caps.samples = 3000;
    IteratedActionsSpec acts = build_actions(spec3f());
    ActionGraph g = action_graph(acts);
    REQUIRE(g.edges.size() == 3);
    CHECK(std::count(g.edges.begin(), g.edges.end(), std::make_pair(2, 1)) == 1);
    CHECK(std::count(g.edges.begin(), g.edges.end(), std::make_pair(3, 2)) == 1);
    CHECK(std::count(g.edges.begin(), g.edges.end(), std::make_pair(1, 3)) == 1);

    auto B = build_cycle_brace(spec3f(), caps);
    CHECK(*B->order() == 48600);
    CHECK(B->certificate() == SimplicityCertificate::SimpleByCriterion);

    auto rep = verify_brace_axioms(*B, caps);
    CHECK(rep.pass());
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.samples == 3000);

    // wrap action pins: actor (0,0,0,0,1) in the first factor has q = 1, so
    // the third factor is hit by C once plus the correction row (0,1)
    Element actor{0, 0, 0, 0, 1};
    CHECK(acts.apply(0, 2, actor, Element{1, 0, 0}) == Element{0, 1, 0});
    CHECK(acts.apply(0, 2, actor, Element{0, 1, 0}) == Element{1, 1, 1});
    CHECK(acts.apply_inv(0, 2, actor, acts.apply(0, 2, actor, Element{0, 1, 0})) ==
          Element{0, 1, 0});
    // q = 0 actors act as the identity
    CHECK(acts.apply(0, 2, Element{0, 0, 0, 0, 0}, Element{1, 1, 1}) == Element{1, 1, 1});

    auto gv = graph_verdict(acts, "walk-cycle", caps);
    CHECK(gv.verdict == GraphVerdict::Inapplicable);
    CHECK(gv.reason.find("not simple") != std::string::npos);

    Rng rng(caps.seed);
    for (int t = 0; t < 100; ++t) {
        Element a = B->shape().random(rng), b = B->shape().random(rng);
        CHECK(B->lambda_inv(a, B->lambda(a, b)) == b);
        CHECK(B->mul(a, B->inv(a)) == B->zero());
    }
}

TEST_CASE("matched product of two pair braces over four primes") {
    Caps caps;
    caps.samples = 1200;
    CycleSpec sa, sb;
    sa.primes = {{11, 1, 0}, {3, 1, 0}};
    sb.primes = {{7, 1, 0}, {5, 1, 0}};

    TwoPairProduct tp = matched_of_two(sa, sb, caps);
    CHECK(tp.pair_a->shape().dim() == 22);
    CHECK(tp.pair_b->shape().dim() == 20);
    CHECK(*tp.pair_a->order() == ipow(11, 11) * ipow(3, 11));
    CHECK(*tp.pair_b->order() == ipow(7, 13) * ipow(5, 7));
    CHECK(tp.pair_a->certificate() == SimplicityCertificate::SimpleByCriterion);
    CHECK(tp.pair_b->certificate() == SimplicityCertificate::SimpleByCriterion);

    CHECK(tp.product->shape().dim() == 42);
    CHECK_FALSE(tp.product->order().has_value()); // beyond 63-bit range

    // the glue rotates the partner's replica blocks: q = 1 shifts one step
    Element actor(20, 0);
    actor[19] = 1; // mu of the second slice, q4 = 1
    Element t(22, 0);
    t[0] = 1;
    t[1] = 2;
    Element moved = tp.pair.alpha->apply(actor, t);
    Element expect(22, 0);
    expect[2] = 1;
    expect[3] = 2;
    CHECK(moved == expect);
    CHECK(tp.pair.alpha->apply_inv(actor, moved) == t);

    Rng rng(caps.seed);
    for (int i = 0; i < 50; ++i) {
        Element a = tp.product->shape().random(rng), b = tp.product->shape().random(rng);
        CHECK(tp.product->lambda(tp.product->zero(), b) == b);
        CHECK(tp.product->lambda_inv(a, tp.product->lambda(a, b)) == b);
        CHECK(tp.product->mul(a, tp.product->inv(a)) == tp.product->zero());
    }

    // with certified-simple factors of coprime orders the mutual actions
    // realize the positive graph verdict
    IteratedActionsSpec two({tp.pair_a, tp.pair_b});
    two.act[1][0] = tp.pair.alpha;
    two.act[0][1] = tp.pair.beta;
    auto gv = graph_verdict(two, "walk-cycle", caps);
    CHECK(gv.verdict == GraphVerdict::Simple);
    CHECK(gv.reason.find("coprime") != std::string::npos);
    CHECK(graph_verdict(two, "strict-cycle", caps).verdict == GraphVerdict::Simple);

    CycleSpec bad = sa;
    CHECK_THROWS_WITH_AS(matched_of_two(sa, bad, caps), Contains("distinct"), InputError);
    CycleSpec even = spec72();
    CHECK_THROWS_WITH_AS(matched_of_two(sa, even, caps), Contains("odd primes"), InputError);
    CycleSpec deep = sa;
    deep.primes[0].r = 2;
    CHECK_THROWS_WITH_AS(matched_of_two(deep, sb, caps), Contains("r = 1"), InputError);
    CHECK_THROWS_WITH_AS(matched_of_two(sa, spec3f(), caps), Contains("two factors"),
                         InputError);
}

TEST_CASE("order filters") {
    CHECK_FALSE(order_filters(56).possible());
    CHECK(order_filters(56).reason.find("normal Sylow") != std::string::npos);
    CHECK_FALSE(order_filters(12).possible());
    CHECK(order_filters(12).reason.find("normal Sylow") != std::string::npos);

    CHECK(order_filters(72).possible());
    CHECK(order_filters(648).possible());
    CHECK(order_filters(48600).possible());
    CHECK(order_filters(24).possible());

    for (i64 p : {2, 3, 97}) {
        auto r = order_filters(p);
        CHECK(r.possible());
        CHECK(r.reason.find("prime order") != std::string::npos);
    }
    for (i64 n : {4, 8, 9, 729}) {
        auto r = order_filters(n);
        CHECK_FALSE(r.possible());
        CHECK(r.reason.find("prime power") != std::string::npos);
    }

    auto six = order_filters(6);
    CHECK_FALSE(six.possible());
    CHECK(six.reason.find("mod 3") != std::string::npos);
    CHECK_FALSE(order_filters(145).possible()); // 5 * 29, no power hits 1 mod 5

    CHECK_THROWS_AS(order_filters(1), InputError);
    CHECK_THROWS_AS(order_filters(0), InputError);
    CHECK_THROWS_AS(order_filters(i64{2} * 1000 * 1000 * 1000 * 1000 * 1000 * 100),
                    CapExceeded);
}
