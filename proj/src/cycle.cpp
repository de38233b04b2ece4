#include "bracekit/cycle.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace bracekit {

namespace {

std::string fi(int i) { return std::to_string(i); }

// desk-scale bounds: factor matrices stay small, power tables stay in memory
constexpr i64 kMaxFactorDim = 4096;
constexpr i64 kMaxTableCells = 50000000;
constexpr i64 kMaxFilterN = 1000000000000000; // 10^15, trial division bound

Vec slice_vec(const Modulus& mod, const Element& t, int off, int len) {
    std::vector<i64> c(t.begin() + off, t.begin() + off + len);
    return Vec(mod, std::move(c));
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.c.begin(), v.c.end(), [](i64 x) { return x == 0; });
}

// C^e for e in [0, period) plus, when v != 0, the partial sums
// id + C + ... + C^{e-1} feeding the correction term
struct PowTables {
    Modulus mod;
    i64 period = 1;
    std::vector<Mat> pows;
    std::vector<Mat> sums; // empty unless corrected
    Vec v;
    bool corrected = false;
    HegedusSpec actor; // q read off the actor element powers the action

    PowTables(const Mat& C, const Vec& v_, i64 period_, HegedusSpec actor_)
        : mod(C.mod), period(period_), v(v_), actor(std::move(actor_)) {
        corrected = !vec_is_zero(v);
        if (period * static_cast<i64>(C.n) * C.n > kMaxTableCells)
            throw CapExceeded("power action table for period " + std::to_string(period) +
                              " and dimension " + std::to_string(C.n) + " is out of desk scale");
        pows.reserve(static_cast<size_t>(period));
        pows.push_back(Mat::identity(mod, C.n));
        for (i64 e = 1; e < period; ++e) pows.push_back(mat_mul(pows.back(), C));
        if (corrected) {
            sums.reserve(static_cast<size_t>(period));
            sums.push_back(Mat(mod, C.n)); // empty sum
            for (i64 e = 1; e < period; ++e) sums.push_back(mat_add(sums.back(), pows[static_cast<size_t>(e - 1)]));
        }
    }

    i64 exponent(const Element& a) const {
        const int d = static_cast<int>(a.size()) - 1;
        i64 q = q_value(actor, slice_vec(actor.mod, a, 0, d), a.back());
        return ((q % period) + period) % period;
    }
};

// alpha_a(x, mu) = (C^{q(a)} x, mu + v.(id + C + ... + C^{q(a)-1}) x)
ActionPtr make_power_action(const Mat& C, const Vec& v, i64 period,
                            const HegedusSpec& actor, json desc) {
    if (C.is_identity()) return nullptr; // degenerate choice: identity action
    auto tab = std::make_shared<const PowTables>(C, v, period, actor);
    auto fwd = [tab](const Element& a, const Element& t) {
        const i64 q = tab->exponent(a);
        const int d = static_cast<int>(t.size()) - 1;
        Vec x = slice_vec(tab->mod, t, 0, d);
        Vec nx = mat_apply(tab->pows[static_cast<size_t>(q)], x);
        i64 mu = t.back();
        if (tab->corrected)
            mu = mod_reduce(mu + vec_dot(tab->v, mat_apply(tab->sums[static_cast<size_t>(q)], x)),
                            tab->mod.m);
        Element out = std::move(nx.c);
        out.push_back(mu);
        return out;
    };
    auto bwd = [tab](const Element& a, const Element& t) {
        const i64 q = tab->exponent(a);
        const int d = static_cast<int>(t.size()) - 1;
        Vec z = slice_vec(tab->mod, t, 0, d);
        Vec x = mat_apply(tab->pows[static_cast<size_t>((tab->period - q) % tab->period)], z);
        i64 mu = t.back();
        if (tab->corrected)
            mu = mod_reduce(mu - vec_dot(tab->v, mat_apply(tab->sums[static_cast<size_t>(q)], x)),
                            tab->mod.m);
        Element out = x.c;
        out.push_back(mu);
        return out;
    };
    return std::make_shared<RuleAction>(std::move(fwd), std::move(bwd), false, std::move(desc));
}

i64 choose2(i64 n) { return n * (n - 1) / 2; }

} // namespace

i64 CycleSpec::n_of(int i) const {
    if (i < 1 || i > s()) throw InputError("factor index " + fi(i) + " out of range");
    const CyclePrime& nx = primes[static_cast<size_t>(i % s())];
    return pow_i64_checked(nx.p, nx.r);
}

i64 CycleSpec::k_of(int i) const {
    if (i < 1 || i > s()) throw InputError("factor index " + fi(i) + " out of range");
    const CyclePrime& cp = primes[static_cast<size_t>(i - 1)];
    return pow_i64_checked(cp.p, cp.rprime);
}

void CycleSpec::validate() const {
    if (s() < 2) throw InputError("a cycle spec needs at least two factors");
    for (int i = 0; i < s(); ++i) {
        const CyclePrime& cp = primes[static_cast<size_t>(i)];
        if (!is_prime_u(cp.p))
            throw InputError("p_" + fi(i + 1) + " = " + std::to_string(cp.p) + " is not prime");
        if (cp.r < 1) throw InputError("r_" + fi(i + 1) + " must be at least 1");
        if (cp.rprime < 0 || cp.rprime > cp.r)
            throw InputError("r'_" + fi(i + 1) + " must lie in [0, r_" + fi(i + 1) + "]");
        if (cp.p == 2 && i + 1 < s())
            throw InputError("only the last factor may use p = 2");
        for (int j = 0; j < i; ++j)
            if (primes[static_cast<size_t>(j)].p == cp.p)
                throw InputError("factor primes must be pairwise distinct");
    }
    const CyclePrime& last = primes[static_cast<size_t>(s() - 1)];
    if (last.p == 2 && last.r != 1)
        throw InputError("the p = 2 factor requires r = 1");
    for (const auto& [idx, M] : overrides) {
        if (idx < 1 || idx > s())
            throw InputError("override index c_" + fi(idx) + " out of range");
        (void)M;
    }
}

CycleBlocks build_blocks(const CycleSpec& spec, int i) {
    spec.validate();
    if (i < 1 || i > spec.s()) throw InputError("factor index " + fi(i) + " out of range");
    const CyclePrime& cp = spec.primes[static_cast<size_t>(i - 1)];

    CycleBlocks bl;
    bl.mod = Modulus(cp.p, cp.r);
    bl.n = spec.n_of(i);
    bl.k = spec.k_of(i);
    bl.gram = (cp.p != 2);
    const i64 dim64 = bl.k * (bl.n - 1);
    if (dim64 < 1 || dim64 > kMaxFactorDim)
        throw CapExceeded("factor " + fi(i) + " needs " + std::to_string(dim64) +
                          " vector coordinates; the desk-scale bound is " +
                          std::to_string(kMaxFactorDim));
    const int dim = static_cast<int>(dim64);

    bl.D = companion_D(static_cast<int>(bl.n), bl.mod);
    bl.F = block_perm_F(static_cast<int>(bl.n - 1), static_cast<int>(bl.k), bl.mod);
    if (bl.gram) {
        bl.E = gram_E(static_cast<int>(bl.n), bl.mod);
        bl.B = block_diag(bl.E, static_cast<int>(bl.k));
        bl.Q = qform_from_gram(bl.B);
    } else {
        QForm per_block = qform_sum_pairs(static_cast<int>(bl.n - 1), bl.mod);
        bl.Q = QForm(bl.mod, block_diag(per_block.U, static_cast<int>(bl.k)));
    }
    if (!is_nondegenerate(bl.Q))
        throw ArithmeticError("factor " + fi(i) + " form is degenerate");

    const auto ov = spec.overrides.find(i);
    const bool overridden = (ov != spec.overrides.end());
    bl.C = overridden ? ov->second : block_diag(bl.D, static_cast<int>(bl.k));
    if (overridden) {
        if (bl.C.mod != bl.mod)
            throw InputError("override c_" + fi(i) + " must live over Z/" +
                             std::to_string(bl.mod.m));
        if (bl.C.n != dim)
            throw InputError("override c_" + fi(i) + " must be " + std::to_string(dim) + " x " +
                             std::to_string(dim));
        if (!mat_is_invertible(bl.C))
            throw InputError("override c_" + fi(i) + " is singular");
        const i64 ordc = mat_order(bl.C);
        if (bl.n % ordc != 0)
            throw InputError("override c_" + fi(i) + " has period " + std::to_string(ordc) +
                             ", which does not divide n_" + fi(i) + " = " + std::to_string(bl.n));
        if (!(mat_mul(bl.C, bl.F) == mat_mul(bl.F, bl.C)))
            throw InputError("override c_" + fi(i) + " must commute with the block shift");
    }

    if (bl.gram) {
        if (!is_orthogonal(bl.C, bl.Q)) {
            if (overridden)
                throw InputError("override c_" + fi(i) + " is not orthogonal for Q_" + fi(i));
            throw ArithmeticError("factor " + fi(i) + " block is not orthogonal");
        }
        bl.v = vec_zero(bl.mod, dim);
    } else {
        // Q(Cx) - Q(x) must be linear: with M = C^t U C - U the mixed
        // coefficients M_ab + M_ba must vanish mod 2, and then v = diag(M)
        Mat M = mat_sub(mat_mul(mat_mul(mat_transpose(bl.C), bl.Q.U), bl.C), bl.Q.U);
        std::vector<i64> vrow(static_cast<size_t>(dim));
        for (int a = 0; a < dim; ++a)
            for (int b = a + 1; b < dim; ++b)
                if ((M.at(a, b) + M.at(b, a)) % 2 != 0) {
                    if (overridden)
                        throw InputError("override c_" + fi(i) +
                                         " does not satisfy the quadratic correction law");
                    throw ArithmeticError("factor " + fi(i) + " correction law failed");
                }
        for (int a = 0; a < dim; ++a) vrow[static_cast<size_t>(a)] = M.at(a, a) % 2;
        bl.v = Vec(bl.mod, vrow);
        if (!overridden) {
            // closed form: per block (0, ..., 0, choose2(n-1)) mod 2
            const int bd = static_cast<int>(bl.n - 1);
            for (int a = 0; a < dim; ++a) {
                const i64 want = (a % bd == bd - 1) ? mod_reduce(choose2(bl.n - 1), 2) : 0;
                if (bl.v.c[static_cast<size_t>(a)] != want)
                    throw ArithmeticError("factor " + fi(i) + " correction row mismatch");
            }
        }
        if (dim <= 20) {
            // belt check: the law holds pointwise over the whole F_2 space
            for (i64 mask = 0; mask < (i64{1} << dim); ++mask) {
                std::vector<i64> xs(static_cast<size_t>(dim));
                for (int a = 0; a < dim; ++a) xs[static_cast<size_t>(a)] = (mask >> a) & 1;
                Vec x(bl.mod, xs);
                const i64 lhs = eval_Q(bl.Q, mat_apply(bl.C, x));
                const i64 rhs = mod_reduce(eval_Q(bl.Q, x) + vec_dot(bl.v, x), 2);
                if (lhs != rhs) {
                    if (overridden)
                        throw ArithmeticError("override c_" + fi(i) +
                                              " correction law failed pointwise");
                    throw ArithmeticError("factor " + fi(i) + " correction law failed pointwise");
                }
            }
        }
    }

    // internal cross-checks on the default blocks
    if (bl.gram) {
        if (!(mat_mul(mat_mul(mat_transpose(bl.D), bl.E), bl.D) == bl.E))
            throw ArithmeticError("factor " + fi(i) + " gram invariance failed");
        if (!(mat_mul(mat_mul(mat_transpose(bl.F), bl.B), bl.F) == bl.B))
            throw ArithmeticError("factor " + fi(i) + " shift invariance failed");
    }
    if (mat_order(bl.F) != bl.k)
        throw ArithmeticError("factor " + fi(i) + " shift order mismatch");
    if (!overridden && mat_order(bl.C) != bl.n)
        throw ArithmeticError("factor " + fi(i) + " block order mismatch");
    return bl;
}

std::shared_ptr<FormulaBrace> build_H(const CycleSpec& spec, int i) {
    CycleBlocks bl = build_blocks(spec, i);
    HegedusSpec hs(bl.mod, static_cast<int>(bl.k * (bl.n - 1)), bl.Q, bl.F);
    return build_hegedus(hs);
}

IteratedActionsSpec build_actions(const CycleSpec& spec) {
    spec.validate();
    const int s = spec.s();
    std::vector<CycleBlocks> blocks;
    std::vector<HegedusSpec> hs;
    std::vector<BracePtr> factors;
    blocks.reserve(static_cast<size_t>(s));
    hs.reserve(static_cast<size_t>(s));
    factors.reserve(static_cast<size_t>(s));
    for (int i = 1; i <= s; ++i) {
        blocks.push_back(build_blocks(spec, i));
        const CycleBlocks& bl = blocks.back();
        hs.emplace_back(bl.mod, static_cast<int>(bl.k * (bl.n - 1)), bl.Q, bl.F);
        factors.push_back(build_hegedus(hs.back()));
    }

    IteratedActionsSpec it(factors);
    auto desc = [&](int actor, int target) {
        const CycleBlocks& bl = blocks[static_cast<size_t>(target - 1)];
        return json{{"type", "power"},
                    {"actor", actor},
                    {"target", target},
                    {"period", bl.n},
                    {"modulus", bl.mod.m},
                    {"corrected", !vec_is_zero(bl.v)}};
    };
    // factor k+1 twists factor k; factor 1 twists factor s (the cycle closer)
    for (int k = 1; k <= s - 1; ++k)
        it.act[static_cast<size_t>(k)][static_cast<size_t>(k - 1)] =
            make_power_action(blocks[static_cast<size_t>(k - 1)].C,
                              blocks[static_cast<size_t>(k - 1)].v,
                              blocks[static_cast<size_t>(k - 1)].n,
                              hs[static_cast<size_t>(k)], desc(k + 1, k));
    it.act[0][static_cast<size_t>(s - 1)] =
        make_power_action(blocks[static_cast<size_t>(s - 1)].C,
                          blocks[static_cast<size_t>(s - 1)].v,
                          blocks[static_cast<size_t>(s - 1)].n, hs[0], desc(1, s));
    return it;
}

std::shared_ptr<FormulaBrace> build_cycle_brace(const CycleSpec& spec, const Caps& caps) {
    IteratedActionsSpec acts = build_actions(spec);
    auto P = iterated_matched_product(acts, caps);
    const bool crit = simplicity_criterion(spec);

    json parr = json::array();
    for (const CyclePrime& cp : spec.primes)
        parr.push_back(json{{"p", cp.p}, {"r", cp.r}, {"rprime", cp.rprime}});
    json over = json::array();
    for (const auto& [idx, M] : spec.overrides) {
        over.push_back(json{{"index", idx}, {"rows", M.rows()}});
    }
    json prov{{"construction", "cycle"},
              {"s", spec.s()},
              {"primes", std::move(parr)},
              {"criterion_simple", crit}};
    if (!over.empty()) prov["overrides"] = std::move(over);

    auto lam = [P](const Element& a, const Element& b) { return P->lambda(a, b); };
    auto laminv = [P](const Element& a, const Element& b) { return P->lambda_inv(a, b); };
    auto R = std::make_shared<FormulaBrace>(P->shape(), std::move(lam), std::move(laminv),
                                            std::move(prov));
    if (crit) R->set_certificate(SimplicityCertificate::SimpleByCriterion);
    return R;
}

bool simplicity_criterion(const CycleSpec& spec) {
    spec.validate();
    for (int i = 1; i <= spec.s(); ++i) {
        CycleBlocks bl = build_blocks(spec, i);
        if (!mat_is_invertible(mat_sub(bl.C, Mat::identity(bl.mod, bl.C.n)))) return false;
    }
    return true;
}

bool phi_hom_check(const CycleSpec& spec, int i, const Caps& caps) {
    spec.validate();
    if (i < 1 || i > spec.s()) throw InputError("factor index " + fi(i) + " out of range");
    CycleBlocks bl = build_blocks(spec, i);
    HegedusSpec hs(bl.mod, static_cast<int>(bl.k * (bl.n - 1)), bl.Q, bl.F);
    int off = 0;
    for (int j = 1; j < i; ++j)
        off += static_cast<int>(spec.k_of(j) * (spec.n_of(j) - 1)) + 1;
    const int d = hs.n; // vector part width of the i-th slice

    auto P = build_cycle_brace(spec, caps);
    auto phi = [&](const Element& t) {
        return q_value(hs, slice_vec(bl.mod, t, off, d), t[static_cast<size_t>(off + d)]);
    };
    auto holds = [&](const Element& a, const Element& b) {
        return phi(P->mul(a, b)) == mod_reduce(phi(a) + phi(b), bl.mod.m);
    };

    auto ord = P->order();
    if (ord && *ord <= caps.exhaustive_cap) {
        for (i64 ra = 0; ra < *ord; ++ra)
            for (i64 rb = 0; rb < *ord; ++rb)
                if (!holds(P->shape().unrank(ra), P->shape().unrank(rb))) return false;
        return true;
    }
    Rng rng(caps.seed);
    for (i64 t = 0; t < caps.samples; ++t)
        if (!holds(P->shape().random(rng), P->shape().random(rng))) return false;
    return true;
}

PsiAutomorphism psi_sigma(const CycleSpec& spec, int i, int m,
                          const std::vector<int>& sigma, const Caps& caps) {
    spec.validate();
    if (i < 1 || i > spec.s()) throw InputError("factor index " + fi(i) + " out of range");
    CycleBlocks bl = build_blocks(spec, i);
    if (m != bl.k)
        throw InputError("factor " + fi(i) + " has " + std::to_string(bl.k) +
                         " replica blocks; m must match");
    if (static_cast<int>(sigma.size()) != m) throw InputError("sigma must have length m");
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (int x : sigma) {
        if (x < 0 || x >= m || seen[static_cast<size_t>(x)])
            throw InputError("sigma is not a permutation of 0..m-1");
        seen[static_cast<size_t>(x)] = 1;
    }
    if (m > 1) {
        bool rotation = true;
        for (int j = 0; j < m; ++j)
            if (sigma[static_cast<size_t>(j)] != (sigma[0] + j) % m) rotation = false;
        if (!rotation)
            throw InputError("block-structure precondition unmet: the replica blocks are "
                             "cyclically linked by the shift, so sigma must be a rotation");
    }

    int off = 0;
    for (int j = 1; j < i; ++j)
        off += static_cast<int>(spec.k_of(j) * (spec.n_of(j) - 1)) + 1;
    const int bd = static_cast<int>(bl.n - 1);
    std::vector<int> sigma_inv(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) sigma_inv[static_cast<size_t>(sigma[static_cast<size_t>(j)])] = j;

    auto permute = [off, bd, m](const Element& t, const std::vector<int>& sg) {
        Element out = t;
        for (int b = 0; b < m; ++b) {
            const int src = sg[static_cast<size_t>(b)];
            for (int c = 0; c < bd; ++c)
                out[static_cast<size_t>(off + b * bd + c)] =
                    t[static_cast<size_t>(off + src * bd + c)];
        }
        return out;
    };
    PsiAutomorphism psi;
    psi.map = [permute, sigma](const Element& t) { return permute(t, sigma); };
    psi.inverse = [permute, sigma_inv](const Element& t) { return permute(t, sigma_inv); };

    auto P = build_cycle_brace(spec, caps);
    psi.validated = is_brace_isomorphism(*P, *P, psi.map, caps);
    return psi;
}

TwoPairProduct matched_of_two(const CycleSpec& spec_a, const CycleSpec& spec_b,
                              const Caps& caps) {
    auto check_pair = [](const CycleSpec& sp, const char* which) {
        sp.validate();
        if (sp.s() != 2)
            throw InputError(std::string(which) + " must have exactly two factors");
        for (const CyclePrime& cp : sp.primes) {
            if (cp.p == 2) throw InputError(std::string(which) + " must use odd primes");
            if (cp.r != 1 || cp.rprime != 0)
                throw InputError(std::string(which) + " must have r = 1 and r' = 0");
        }
        if (!sp.overrides.empty())
            throw InputError(std::string(which) + " must not carry overrides");
    };
    check_pair(spec_a, "the first pair spec");
    check_pair(spec_b, "the second pair spec");
    const i64 p1 = spec_a.primes[0].p, p2 = spec_a.primes[1].p;
    const i64 p3 = spec_b.primes[0].p, p4 = spec_b.primes[1].p;
    for (i64 q : {p3, p4})
        if (q == p1 || q == p2)
            throw InputError("the four primes must be pairwise distinct");

    // one inflated pair: H(pa, m(pb-1), m-fold form, id) glued with
    // H(pb, pa-1, form, id) through companion powers
    struct Pair {
        std::shared_ptr<FormulaBrace> P;
        HegedusSpec h2;      // second factor, q source for the rotations
        int dim1 = 0;        // coordinate width of the inflated first factor
        i64 pb = 0;
    };
    auto build_pair = [&caps](i64 pa, i64 pb, i64 m) {
        Modulus m1(pa, 1), m2(pb, 1);
        const int d1 = static_cast<int>(m * (pb - 1));
        QForm q1(m1, block_diag(qform_from_gram(gram_E(static_cast<int>(pb), m1)).U,
                                static_cast<int>(m)));
        HegedusSpec h1(m1, d1, q1, Mat::identity(m1, d1));
        QForm q2 = qform_from_gram(gram_E(static_cast<int>(pa), m2));
        HegedusSpec h2(m2, static_cast<int>(pa - 1), q2, Mat::identity(m2, static_cast<int>(pa - 1)));

        Mat c1 = block_diag(companion_D(static_cast<int>(pb), m1), static_cast<int>(m));
        Mat d2 = companion_D(static_cast<int>(pa), m2);

        std::vector<BracePtr> fs{build_hegedus(h1), build_hegedus(h2)};
        IteratedActionsSpec it(fs);
        it.act[1][0] = make_power_action(c1, vec_zero(m1, d1), pb, h2,
                                         json{{"type", "power"}, {"period", pb}});
        it.act[0][1] = make_power_action(d2, vec_zero(m2, static_cast<int>(pa - 1)), pa, h1,
                                         json{{"type", "power"}, {"period", pa}});
        auto P = iterated_matched_product(it, caps);
        const bool crit =
            mat_is_invertible(mat_sub(c1, Mat::identity(m1, d1))) &&
            mat_is_invertible(mat_sub(d2, Mat::identity(m2, static_cast<int>(pa - 1))));
        if (crit) P->set_certificate(SimplicityCertificate::SimpleByCriterion);
        return Pair{P, h2, d1 + 1, pb};
    };

    Pair A = build_pair(p1, p2, p4);
    Pair B = build_pair(p3, p4, p2);

    // the pairs act on each other by rotating the partner's replica blocks:
    // t steps right, t = q of the actor's second slice
    auto rotate = [](const Element& t, int nb, int bd, i64 steps) {
        Element out = t;
        const i64 sh = ((steps % nb) + nb) % nb;
        for (int b = 0; b < nb; ++b) {
            const int src = static_cast<int>(((b - sh) % nb + nb) % nb);
            for (int c = 0; c < bd; ++c)
                out[static_cast<size_t>(b * bd + c)] = t[static_cast<size_t>(src * bd + c)];
        }
        return out;
    };
    auto make_rotation = [&rotate](const Pair& actor_pair, int nb, int bd) {
        const HegedusSpec h = actor_pair.h2;
        const int aoff = actor_pair.dim1;
        auto steps_of = [h, aoff](const Element& a) {
            return q_value(h, slice_vec(h.mod, a, aoff, h.n),
                           a[static_cast<size_t>(aoff + h.n)]);
        };
        auto fwd = [rotate, steps_of, nb, bd](const Element& a, const Element& t) {
            return rotate(t, nb, bd, steps_of(a));
        };
        auto bwd = [rotate, steps_of, nb, bd](const Element& a, const Element& t) {
            return rotate(t, nb, bd, -steps_of(a));
        };
        return std::make_shared<RuleAction>(
            fwd, bwd, false,
            json{{"type", "block-rotation"}, {"blocks", nb}, {"blockdim", bd}});
    };

    MatchedPairSpec mp;
    mp.G = A.P;
    mp.H = B.P;
    mp.alpha = make_rotation(B, static_cast<int>(p4), static_cast<int>(p2 - 1));
    mp.beta = make_rotation(A, static_cast<int>(p2), static_cast<int>(p4 - 1));
    auto prod = matched_product(mp, caps);
    return TwoPairProduct{A.P, B.P, prod, mp};
}

OrderFilterResult order_filters(i64 N) {
    if (N < 2) throw InputError("the order filters need N >= 2");
    if (N > kMaxFilterN)
        throw CapExceeded("order filter factorization is bounded to 10^15");

    std::vector<std::pair<i64, int>> fac;
    i64 rest = N;
    for (i64 d = 2; d * d <= rest; d += (d == 2 ? 1 : 2)) {
        if (rest % d) continue;
        int e = 0;
        while (rest % d == 0) { rest /= d; ++e; }
        fac.emplace_back(d, e);
    }
    if (rest > 1) fac.emplace_back(rest, 1);

    if (fac.size() == 1) {
        if (fac[0].second == 1)
            return {OrderVerdict::Possible, "prime order; the one-element-socle trivial brace is simple"};
        return {OrderVerdict::Impossible,
                "proper prime power; simple braces of prime power order have prime order"};
    }

    for (const auto& [q, a] : fac) {
        i64 k = N;
        for (int t = 0; t < a; ++t) k /= q;
        bool ok = false;
        for (const auto& [p, e] : fac) {
            if (p == q) continue;
            i64 pt = 1;
            for (int t = 1; t <= e && !ok; ++t) {
                pt *= p;
                if ((pt - 1) % q == 0) ok = true;
            }
        }
        if (!ok)
            return {OrderVerdict::Impossible,
                    "no prime power dividing " + std::to_string(k) + " is congruent to 1 mod " +
                        std::to_string(q)};
    }

    if (fac.size() == 2) {
        for (int w = 0; w < 2; ++w) {
            const i64 p = fac[static_cast<size_t>(w)].first;
            const int n = fac[static_cast<size_t>(w)].second;
            const i64 q = fac[static_cast<size_t>(1 - w)].first;
            if (fac[static_cast<size_t>(1 - w)].second != 1) continue;
            i64 y = p % q, ordp = 1;
            while (y != 1) {
                y = static_cast<i64>((static_cast<__int128>(y) * (p % q)) % q);
                ++ordp;
            }
            if (ordp == n)
                return {OrderVerdict::Impossible,
                        "normal Sylow obstruction: " + std::to_string(N) + " = " +
                            std::to_string(p) + "^" + std::to_string(n) + " * " +
                            std::to_string(q) + " with the exponent equal to the order of " +
                            std::to_string(p) + " mod " + std::to_string(q)};
        }
    }
    return {OrderVerdict::Possible, "no obstruction found (necessary conditions only)"};
}

} // namespace bracekit
