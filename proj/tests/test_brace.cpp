#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bracekit/brace.hpp"

using namespace bracekit;

namespace {

// order-8 brace on (Z/2)^3: lambda_(x,mu)(y,mu') = (y, mu' + x1 y2 + x2 y1),
// independently computed ground truth used across this suite
const std::vector<std::vector<std::int32_t>> kLam8 = {
    {0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7},
    {0, 1, 2, 3, 5, 4, 7, 6}, {0, 1, 2, 3, 5, 4, 7, 6},
    {0, 1, 3, 2, 4, 5, 7, 6}, {0, 1, 3, 2, 4, 5, 7, 6},
    {0, 1, 3, 2, 5, 4, 6, 7}, {0, 1, 3, 2, 5, 4, 6, 7}};

const std::vector<std::vector<std::int32_t>> kMul8 = {
    {0, 1, 2, 3, 4, 5, 6, 7}, {1, 0, 3, 2, 5, 4, 7, 6},
    {2, 3, 0, 1, 7, 6, 5, 4}, {3, 2, 1, 0, 6, 7, 4, 5},
    {4, 5, 7, 6, 0, 1, 3, 2}, {5, 4, 6, 7, 1, 0, 2, 3},
    {6, 7, 5, 4, 3, 2, 0, 1}, {7, 6, 4, 5, 2, 3, 1, 0}};

std::shared_ptr<TableBrace> make_b8() {
    return std::make_shared<TableBrace>(AdditiveShape({2, 2, 2}), kLam8, json::object());
}

} // namespace

TEST_CASE("additive shape") {
    AdditiveShape s({2, 3, 4});
    CHECK(s.order() == 24);
    CHECK(s.rank({1, 2, 3}) == 23);
    CHECK(s.unrank(23) == Element{1, 2, 3});
    for (i64 r = 0; r < 24; ++r) CHECK(s.rank(s.unrank(r)) == r);
    CHECK(s.add({1, 2, 3}, {1, 2, 3}) == Element{0, 1, 2});
    CHECK(s.neg({1, 0, 3}) == Element{1, 0, 1});
    CHECK_THROWS_AS(s.check({1, 2}), InputError);
    CHECK_THROWS_AS(s.check({1, 2, 4}), InputError);
    CHECK_THROWS_AS(AdditiveShape({2, 0}), InputError);

    // overflow-safe order
    AdditiveShape big(std::vector<i64>(42, 121));
    CHECK_FALSE(big.order().has_value());
    CHECK_THROWS_AS(big.order_checked(4096), CapExceeded);
}

TEST_CASE("table brace construction and basic ops") {
    auto b8 = make_b8();
    CHECK(b8->order() == 8);
    CHECK(b8->kind() == "table");

    Element a{1, 0, 0}, b{0, 1, 0};
    CHECK(b8->lambda(a, b) == Element{0, 1, 1});
    CHECK(b8->mul(a, b) == Element{1, 1, 1});
    CHECK(b8->inv(a) == a);

    // full multiplication table against ground truth
    DenseView v(*b8, 4096);
    const auto& M = v.mul_table();
    for (i64 i = 0; i < 8; ++i)
        for (i64 j = 0; j < 8; ++j) CHECK(M[i * 8 + j] == kMul8[i][j]);

    // malformed tables are rejected
    auto bad = kLam8;
    bad[3][0] = 1; // duplicates image 1
    CHECK_THROWS_AS(TableBrace(AdditiveShape({2, 2, 2}), bad, json::object()), InputError);
    CHECK_THROWS_AS(TableBrace(AdditiveShape({2, 2}), kLam8, json::object()), InputError);
}

TEST_CASE("axioms verify exhaustively") {
    auto b8 = make_b8();
    VerifyReport rep = verify_brace_axioms(*b8);
    CHECK(rep.pass());
    CHECK(rep.exhaustive);
    CHECK(rep.items.size() == 5);

    // breaking one lambda row must be reported with a witness
    auto bad = kLam8;
    std::swap(bad[4][0], bad[4][1]); // lambda_a(0) != 0 breaks additivity
    TableBrace broken(AdditiveShape({2, 2, 2}), bad, json::object());
    VerifyReport rep2 = verify_brace_axioms(broken);
    CHECK_FALSE(rep2.pass());
    bool witnessed = false;
    for (const auto& it : rep2.items)
        if (!it.pass && !it.witness.empty()) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("socle") {
    auto b8 = make_b8();
    auto soc = socle(*b8);
    REQUIRE(soc.size() == 2);
    CHECK(soc[0] == Element{0, 0, 0});
    CHECK(soc[1] == Element{0, 0, 1});
}

TEST_CASE("ideal closure and simplicity") {
    auto b8 = make_b8();
    auto cl = ideal_closure(*b8, {{0, 0, 1}});
    REQUIRE(cl.size() == 2);
    CHECK(cl[1] == Element{0, 0, 1});

    auto res = is_simple(*b8);
    CHECK_FALSE(res.simple);
    CHECK(res.ideal.size() == 2);
    CHECK(res.generator == Element{0, 0, 1});
    CHECK(b8->certificate() == SimplicityCertificate::NotSimple);

    // ideal membership lemma: b in I implies lambda_b(a) - a in I
    auto mid = ideal_closure(*b8, {{0, 1, 0}});
    CHECK(is_ideal(*b8, mid));
    for (const auto& b : mid)
        for (i64 r = 0; r < 8; ++r) {
            Element a = b8->shape().unrank(r);
            Element diff = b8->sub(b8->lambda(b, a), a);
            CHECK(std::find(mid.begin(), mid.end(), diff) != mid.end());
        }
}

TEST_CASE("conjugation identity") {
    // lambda_c(c^{-1} a c) = lambda_a(c) - c + a
    auto b8 = make_b8();
    for (i64 i = 0; i < 8; ++i)
        for (i64 j = 0; j < 8; ++j) {
            Element a = b8->shape().unrank(i), c = b8->shape().unrank(j);
            Element conj = b8->mul(b8->mul(b8->inv(c), a), c);
            Element lhs = b8->lambda(c, conj);
            Element rhs = b8->add(b8->sub(b8->lambda(a, c), c), a);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("left ideals and sylow subgroups") {
    auto b8 = make_b8();
    auto syl = sylow_left_ideals(*b8);
    REQUIRE(syl.size() == 1);
    CHECK(syl[0].p == 2);
    CHECK(syl[0].elements.size() == 8);
    CHECK(syl[0].left_ideal);

    // socle is a left ideal; a random doubleton is not
    auto soc = socle(*b8);
    CHECK(is_left_ideal(*b8, soc));
    CHECK_FALSE(is_left_ideal(*b8, {{0, 0, 0}, {1, 0, 0}}));
}

TEST_CASE("trivial braces") {
    auto z4 = trivial_brace(AdditiveShape({4}));
    CHECK(verify_brace_axioms(*z4).pass());
    auto res = is_simple(*z4);
    CHECK_FALSE(res.simple);
    CHECK(res.generator == Element{2});
    REQUIRE(res.ideal.size() == 2);
    CHECK(res.ideal[0] == Element{0});
    CHECK(res.ideal[1] == Element{2});

    // socle of a trivial brace is everything
    CHECK(socle(*z4).size() == 4);

    auto z5 = trivial_brace(AdditiveShape({5}));
    CHECK(is_simple(*z5).simple);
    CHECK(z5->certificate() == SimplicityCertificate::SimpleExhaustive);

    auto zero = trivial_brace(AdditiveShape({1}));
    CHECK_FALSE(is_simple(*zero).simple);
    CHECK(socle(*zero).size() == 1);
}

TEST_CASE("formula brace matches its tabulation") {
    auto b8 = make_b8();
    auto lam = [b8](const Element& a, const Element& b) { return b8->lambda(a, b); };
    auto laminv = [b8](const Element& a, const Element& b) { return b8->lambda_inv(a, b); };
    FormulaBrace f(b8->shape(), lam, laminv, json::object());
    CHECK(f.kind() == "formula");
    CHECK(verify_brace_axioms(f).pass());

    auto tab = tabulate(f);
    CHECK(tab->lambda_table() == kLam8);
    CHECK(socle(*tab).size() == 2);
}

TEST_CASE("isomorphism verification") {
    auto b8 = make_b8();
    auto id = [](const Element& x) { return x; };
    CHECK(is_brace_isomorphism(*b8, *b8, id));

    // identity to the trivial brace of the same shape: additive but not multiplicative
    auto t8 = trivial_brace(AdditiveShape({2, 2, 2}));
    CHECK_FALSE(is_brace_isomorphism(*b8, *t8, id));

    // non-bijective map
    auto z4 = trivial_brace(AdditiveShape({4}));
    auto dbl = [&](const Element& x) { return Element{(2 * x[0]) % 4}; };
    CHECK_FALSE(is_brace_isomorphism(*z4, *z4, dbl));

    // scaling by a unit is an automorphism of a trivial brace
    auto tri = [&](const Element& x) { return Element{(3 * x[0]) % 4}; };
    CHECK(is_brace_isomorphism(*z4, *z4, tri));
}

TEST_CASE("sampled verification above the cap") {
    AdditiveShape sh(std::vector<i64>(8, 3)); // order 6561 > 4096
    auto lam = [sh](const Element&, const Element& b) { return b; };
    FormulaBrace big(sh, lam, lam, json::object());
    Caps caps;
    caps.samples = 2000;
    VerifyReport rep = verify_brace_axioms(big, caps);
    CHECK(rep.pass());
    CHECK_FALSE(rep.exhaustive);
    CHECK(rep.samples == 2000);
    CHECK(rep.seed == kDefaultSeed);

    CHECK_THROWS_AS(socle(big, caps), CapExceeded);
    CHECK_THROWS_AS(is_simple(big, caps), CapExceeded);
}
