#include "bracekit/brace.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bracekit {

std::string elem_to_string(const Element& a) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) os << ',';
        os << a[i];
    }
    os << ')';
    return os.str();
}

std::string certificate_name(SimplicityCertificate c) {
    switch (c) {
        case SimplicityCertificate::SimpleExhaustive: return "simple-exhaustive";
        case SimplicityCertificate::SimpleByCriterion: return "simple-by-criterion";
        case SimplicityCertificate::NotSimple: return "not-simple";
        default: return "unknown";
    }
}

// ---------------------------------------------------------------- shape

AdditiveShape::AdditiveShape(std::vector<i64> ms) : moduli(std::move(ms)) {
    for (i64 m : moduli)
        if (m < 1) throw InputError("shape moduli must be positive");
}

std::optional<i64> AdditiveShape::order() const {
    __int128 t = 1;
    for (i64 m : moduli) {
        t *= m;
        if (t > INT64_MAX) return std::nullopt;
    }
    return static_cast<i64>(t);
}

i64 AdditiveShape::order_checked(i64 cap) const {
    auto n = order();
    if (!n || *n > cap)
        throw CapExceeded("order exceeds exhaustive cap " + std::to_string(cap));
    return *n;
}

i64 AdditiveShape::rank(const Element& a) const {
    i64 r = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) r = r * moduli[i] + a[i];
    return r;
}

Element AdditiveShape::unrank(i64 r) const {
    Element a(moduli.size(), 0);
    for (std::size_t i = moduli.size(); i-- > 0;) {
        a[i] = r % moduli[i];
        r /= moduli[i];
    }
    return a;
}

void AdditiveShape::check(const Element& a) const {
    if (a.size() != moduli.size())
        throw InputError("element has " + std::to_string(a.size()) + " coordinates, shape has " +
                         std::to_string(moduli.size()));
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (a[i] < 0 || a[i] >= moduli[i])
            throw InputError("coordinate " + std::to_string(i) + " out of range: " +
                             std::to_string(a[i]));
}

Element AdditiveShape::add(const Element& a, const Element& b) const {
    Element c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = (a[i] + b[i]) % moduli[i];
    return c;
}

Element AdditiveShape::sub(const Element& a, const Element& b) const {
    Element c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = (a[i] - b[i] + moduli[i]) % moduli[i];
    return c;
}

Element AdditiveShape::neg(const Element& a) const {
    Element c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = a[i] == 0 ? 0 : moduli[i] - a[i];
    return c;
}

Element AdditiveShape::random(Rng& rng) const {
    Element c(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) c[i] = rng.below_i64(moduli[i]);
    return c;
}

// ---------------------------------------------------------------- braces

LeftBrace::LeftBrace(AdditiveShape shape, std::string kind, json provenance)
    : shape_(std::move(shape)), kind_(std::move(kind)), provenance_(std::move(provenance)) {}

Element LeftBrace::mul(const Element& a, const Element& b) const {
    return shape_.add(a, lambda(a, b));
}

Element LeftBrace::inv(const Element& a) const {
    return lambda_inv(a, shape_.neg(a));
}

TableBrace::TableBrace(AdditiveShape shape, std::vector<std::vector<std::int32_t>> lam,
                       json provenance)
    : LeftBrace(std::move(shape), "table", std::move(provenance)), lam_(std::move(lam)) {
    const i64 n = this->shape().order_checked(INT32_MAX);
    if (static_cast<i64>(lam_.size()) != n)
        throw InputError("lambda table must have one row per element");
    laminv_.assign(lam_.size(), std::vector<std::int32_t>(n, -1));
    for (i64 a = 0; a < n; ++a) {
        if (static_cast<i64>(lam_[a].size()) != n)
            throw InputError("lambda row " + std::to_string(a) + " has wrong length");
        auto& inv = laminv_[a];
        for (i64 b = 0; b < n; ++b) {
            std::int32_t img = lam_[a][b];
            if (img < 0 || img >= n)
                throw InputError("lambda row " + std::to_string(a) + " image out of range");
            if (inv[img] != -1)
                throw InputError("lambda row " + std::to_string(a) + " is not a permutation");
            inv[img] = static_cast<std::int32_t>(b);
        }
    }
}

Element TableBrace::lambda(const Element& a, const Element& b) const {
    return shape().unrank(lam_[shape().rank(a)][shape().rank(b)]);
}

Element TableBrace::lambda_inv(const Element& a, const Element& b) const {
    return shape().unrank(laminv_[shape().rank(a)][shape().rank(b)]);
}

FormulaBrace::FormulaBrace(AdditiveShape shape, Map2 lam, Map2 laminv, json provenance)
    : LeftBrace(std::move(shape), "formula", std::move(provenance)),
      lam_(std::move(lam)), laminv_(std::move(laminv)) {}

std::shared_ptr<TableBrace> trivial_brace(const AdditiveShape& shape) {
    const i64 n = shape.order_checked(INT32_MAX);
    std::vector<std::int32_t> id_row(n);
    for (i64 i = 0; i < n; ++i) id_row[i] = static_cast<std::int32_t>(i);
    std::vector<std::vector<std::int32_t>> rows(n, id_row);
    json prov;
    prov["construction"] = "trivial";
    return std::make_shared<TableBrace>(shape, std::move(rows), prov);
}

// ---------------------------------------------------------------- dense view

DenseView::DenseView(const LeftBrace& brace, i64 cap) : B(brace) {
    n = brace.shape().order_checked(cap);
    d = brace.shape().dim();
    elems.reserve(n);
    for (i64 r = 0; r < n; ++r) elems.push_back(brace.shape().unrank(r));

    lam.resize(n * n);
    laminv.resize(n * n);
    if (auto* tb = dynamic_cast<const TableBrace*>(&brace)) {
        for (i64 a = 0; a < n; ++a) {
            std::copy(tb->lambda_table()[a].begin(), tb->lambda_table()[a].end(),
                      lam.begin() + a * n);
            std::copy(tb->lambda_inv_table()[a].begin(), tb->lambda_inv_table()[a].end(),
                      laminv.begin() + a * n);
        }
    } else {
        for (i64 a = 0; a < n; ++a)
            for (i64 b = 0; b < n; ++b) {
                lam[a * n + b] =
                    static_cast<std::int32_t>(brace.shape().rank(brace.lambda(elems[a], elems[b])));
                laminv[a * n + b] = static_cast<std::int32_t>(
                    brace.shape().rank(brace.lambda_inv(elems[a], elems[b])));
            }
    }

    negt.resize(n);
    for (i64 a = 0; a < n; ++a)
        negt[a] = static_cast<std::int32_t>(brace.shape().rank(brace.shape().neg(elems[a])));
    invt.resize(n);
    for (i64 a = 0; a < n; ++a) invt[a] = laminv[a * n + negt[a]];

    for (int j = 0; j < d; ++j)
        if (brace.shape().moduli[j] > 1) {
            Element e = brace.shape().zero();
            e[j] = 1;
            gens.push_back(brace.shape().rank(e));
        }
}

std::int32_t DenseView::add(i64 i, i64 j) const {
    const auto& ms = B.shape().moduli;
    const Element& x = elems[i];
    const Element& y = elems[j];
    i64 r = 0;
    for (int k = 0; k < d; ++k) {
        i64 c = x[k] + y[k];
        if (c >= ms[k]) c -= ms[k];
        r = r * ms[k] + c;
    }
    return static_cast<std::int32_t>(r);
}

const std::vector<std::int32_t>& DenseView::mul_table() {
    if (mult_.empty() && n > 0) {
        mult_.resize(n * n);
        for (i64 a = 0; a < n; ++a)
            for (i64 b = 0; b < n; ++b) mult_[a * n + b] = add(a, lam[a * n + b]);
    }
    return mult_;
}

// ---------------------------------------------------------------- reports

bool VerifyReport::pass() const {
    for (const auto& it : items)
        if (!it.pass) return false;
    return true;
}

json VerifyReport::to_json() const {
    json j;
    j["pass"] = pass();
    j["exhaustive"] = exhaustive;
    if (!exhaustive) {
        j["samples"] = samples;
        j["seed"] = seed;
    }
    j["checks"] = json::array();
    for (const auto& it : items) {
        json c;
        c["name"] = it.name;
        c["pass"] = it.pass;
        if (!it.witness.empty()) c["witness"] = it.witness;
        j["checks"].push_back(c);
    }
    return j;
}

// ---------------------------------------------------------------- axioms

namespace {

VerifyReport verify_axioms_dense(DenseView& v) {
    VerifyReport rep;
    const i64 n = v.n;

    // (i) additivity of each row, reduced to unit-vector increments:
    // lambda_a(x + e_j) = lambda_a(x) + lambda_a(e_j) for all x forces
    // additivity on all sums by peeling one unit at a time
    {
        CheckItem it{"lambda_additive", true, ""};
        for (i64 a = 0; a < n && it.pass; ++a) {
            const std::int32_t* row = v.lam.data() + a * n;
            for (i64 g : v.gens) {
                const std::int32_t lg = row[g];
                for (i64 x = 0; x < n; ++x) {
                    if (row[v.add(x, g)] != v.add(row[x], lg)) {
                        it.pass = false;
                        it.witness = "a=" + elem_to_string(v.elems[a]) +
                                     " x=" + elem_to_string(v.elems[x]) +
                                     " e=" + elem_to_string(v.elems[g]);
                        break;
                    }
                }
                if (!it.pass) break;
            }
        }
        rep.items.push_back(std::move(it));
    }

    // (ii) bijectivity and agreement with the declared inverse
    {
        CheckItem it{"lambda_bijective", true, ""};
        std::vector<char> seen(n);
        for (i64 a = 0; a < n && it.pass; ++a) {
            std::fill(seen.begin(), seen.end(), 0);
            const std::int32_t* row = v.lam.data() + a * n;
            const std::int32_t* inv = v.laminv.data() + a * n;
            for (i64 b = 0; b < n; ++b) {
                if (seen[row[b]] || inv[row[b]] != b) {
                    it.pass = false;
                    it.witness = "a=" + elem_to_string(v.elems[a]) +
                                 " b=" + elem_to_string(v.elems[b]);
                    break;
                }
                seen[row[b]] = 1;
            }
        }
        rep.items.push_back(std::move(it));
    }

    // (iii) lambda_{a + lambda_a(b)} = lambda_a . lambda_b
    {
        CheckItem it{"lambda_composition", true, ""};
        for (i64 a = 0; a < n && it.pass; ++a) {
            const std::int32_t* ra = v.lam.data() + a * n;
            for (i64 b = 0; b < n && it.pass; ++b) {
                const i64 c = v.add(a, ra[b]);
                const std::int32_t* rc = v.lam.data() + c * n;
                const std::int32_t* rb = v.lam.data() + b * n;
                for (i64 y = 0; y < n; ++y) {
                    if (rc[y] != ra[rb[y]]) {
                        it.pass = false;
                        it.witness = "a=" + elem_to_string(v.elems[a]) +
                                     " b=" + elem_to_string(v.elems[b]) +
                                     " y=" + elem_to_string(v.elems[y]);
                        break;
                    }
                }
            }
        }
        rep.items.push_back(std::move(it));
    }

    // (iv) the circle operation is a group
    {
        CheckItem it{"mult_associative", true, ""};
        const auto& M = v.mul_table();
        for (i64 a = 0; a < n && it.pass; ++a)
            for (i64 b = 0; b < n && it.pass; ++b) {
                const i64 ab = M[a * n + b];
                for (i64 c = 0; c < n; ++c) {
                    if (M[ab * n + c] != M[a * n + M[b * n + c]]) {
                        it.pass = false;
                        it.witness = "a=" + elem_to_string(v.elems[a]) +
                                     " b=" + elem_to_string(v.elems[b]) +
                                     " c=" + elem_to_string(v.elems[c]);
                        break;
                    }
                }
            }
        rep.items.push_back(std::move(it));

        CheckItem inv{"mult_inverses", true, ""};
        for (i64 a = 0; a < n; ++a) {
            if (M[a * n + v.invt[a]] != 0 || M[v.invt[a] * n + a] != 0) {
                inv.pass = false;
                inv.witness = "a=" + elem_to_string(v.elems[a]);
                break;
            }
        }
        rep.items.push_back(std::move(inv));
    }

    rep.exhaustive = true;
    return rep;
}

VerifyReport verify_axioms_sampled(const LeftBrace& B, const Caps& caps) {
    VerifyReport rep;
    rep.exhaustive = false;
    rep.samples = caps.samples;
    rep.seed = caps.seed;
    const auto& sh = B.shape();

    auto run = [&](const std::string& name, auto&& body) {
        Rng rng(caps.seed);
        CheckItem it{name, true, ""};
        for (i64 s = 0; s < caps.samples && it.pass; ++s) body(rng, it);
        rep.items.push_back(std::move(it));
    };

    run("lambda_additive", [&](Rng& rng, CheckItem& it) {
        Element a = sh.random(rng), x = sh.random(rng), y = sh.random(rng);
        if (B.lambda(a, sh.add(x, y)) != sh.add(B.lambda(a, x), B.lambda(a, y))) {
            it.pass = false;
            it.witness = "a=" + elem_to_string(a) + " x=" + elem_to_string(x) +
                         " y=" + elem_to_string(y);
        }
    });
    run("lambda_bijective", [&](Rng& rng, CheckItem& it) {
        Element a = sh.random(rng), x = sh.random(rng);
        if (B.lambda_inv(a, B.lambda(a, x)) != x || B.lambda(a, B.lambda_inv(a, x)) != x) {
            it.pass = false;
            it.witness = "a=" + elem_to_string(a) + " x=" + elem_to_string(x);
        }
    });
    run("lambda_composition", [&](Rng& rng, CheckItem& it) {
        Element a = sh.random(rng), b = sh.random(rng), y = sh.random(rng);
        Element c = sh.add(a, B.lambda(a, b));
        if (B.lambda(c, y) != B.lambda(a, B.lambda(b, y))) {
            it.pass = false;
            it.witness = "a=" + elem_to_string(a) + " b=" + elem_to_string(b) +
                         " y=" + elem_to_string(y);
        }
    });
    run("mult_associative", [&](Rng& rng, CheckItem& it) {
        Element a = sh.random(rng), b = sh.random(rng), c = sh.random(rng);
        if (B.mul(B.mul(a, b), c) != B.mul(a, B.mul(b, c))) {
            it.pass = false;
            it.witness = "a=" + elem_to_string(a) + " b=" + elem_to_string(b) +
                         " c=" + elem_to_string(c);
        }
    });
    run("mult_inverses", [&](Rng& rng, CheckItem& it) {
        Element a = sh.random(rng);
        Element ia = B.inv(a);
        if (B.mul(a, ia) != sh.zero() || B.mul(ia, a) != sh.zero()) {
            it.pass = false;
            it.witness = "a=" + elem_to_string(a);
        }
    });
    return rep;
}

} // namespace

VerifyReport verify_brace_axioms(const LeftBrace& B, const Caps& caps) {
    auto ord = B.order();
    if (ord && *ord <= caps.exhaustive_cap) {
        DenseView v(B, caps.exhaustive_cap);
        return verify_axioms_dense(v);
    }
    return verify_axioms_sampled(B, caps);
}

// ---------------------------------------------------------------- subsets

namespace {

std::vector<char> rank_mask(const DenseView& v, const std::vector<Element>& subset) {
    std::vector<char> in(v.n, 0);
    for (const auto& e : subset) {
        v.B.shape().check(e);
        in[v.B.shape().rank(e)] = 1;
    }
    return in;
}

std::vector<Element> mask_to_elements(const DenseView& v, const std::vector<char>& in) {
    std::vector<Element> out;
    for (i64 r = 0; r < v.n; ++r)
        if (in[r]) out.push_back(v.elems[r]);
    return out;
}

bool is_left_ideal_mask(DenseView& v, const std::vector<char>& in) {
    if (!in[0]) return false;
    const auto& M = v.mul_table();
    std::vector<i64> members;
    for (i64 r = 0; r < v.n; ++r)
        if (in[r]) members.push_back(r);
    for (i64 x : members) {
        if (!in[v.invt[x]]) return false;
        for (i64 y : members)
            if (!in[M[x * v.n + y]]) return false;
        for (i64 g = 0; g < v.n; ++g)
            if (!in[v.lam[g * v.n + x]]) return false;
    }
    return true;
}

bool is_ideal_mask(DenseView& v, const std::vector<char>& in) {
    if (!is_left_ideal_mask(v, in)) return false;
    const auto& M = v.mul_table();
    for (i64 x = 0; x < v.n; ++x) {
        if (!in[x]) continue;
        for (i64 g = 0; g < v.n; ++g)
            if (!in[M[M[v.invt[g] * v.n + x] * v.n + g]]) return false;
    }
    return true;
}

// breadth-first ideal closure with a sorted work queue (deterministic)
std::vector<char> closure_mask(DenseView& v, const std::vector<i64>& gen_ranks) {
    const auto& M = v.mul_table();
    std::vector<char> in(v.n, 0);
    std::set<i64> pending;
    auto push = [&](i64 r) {
        if (!in[r]) {
            in[r] = 1;
            pending.insert(r);
        }
    };
    push(0);
    for (i64 g : gen_ranks) push(g);
    std::vector<i64> done;
    while (!pending.empty()) {
        const i64 a = *pending.begin();
        pending.erase(pending.begin());
        push(v.invt[a]);
        for (i64 g = 0; g < v.n; ++g) {
            push(v.lam[g * v.n + a]);                          // lambda images
            push(M[M[v.invt[g] * v.n + a] * v.n + g]);         // conjugates
        }
        for (i64 b : done) {
            push(M[a * v.n + b]);
            push(M[b * v.n + a]);
        }
        push(M[a * v.n + a]);
        done.push_back(a);
    }
    return in;
}

} // namespace

std::vector<Element> socle(const LeftBrace& B, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    std::vector<char> in(v.n, 0);
    for (i64 a = 0; a < v.n; ++a) {
        bool cand = true;
        for (i64 g : v.gens)
            if (v.lam[a * v.n + g] != g) {
                cand = false;
                break;
            }
        if (!cand) continue;
        // confirm the full row is the identity
        const std::int32_t* row = v.lam.data() + a * v.n;
        bool id = true;
        for (i64 b = 0; b < v.n; ++b)
            if (row[b] != b) {
                id = false;
                break;
            }
        in[a] = id ? 1 : 0;
    }
    if (!is_ideal_mask(v, in))
        throw ArithmeticError("socle failed ideal verification; brace axioms likely violated");
    return mask_to_elements(v, in);
}

std::vector<Element> ideal_closure(const LeftBrace& B, const std::vector<Element>& gens,
                                   const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    std::vector<i64> ranks;
    for (const auto& g : gens) {
        B.shape().check(g);
        ranks.push_back(B.shape().rank(g));
    }
    return mask_to_elements(v, closure_mask(v, ranks));
}

SimplicityResult is_simple(const LeftBrace& B, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    SimplicityResult res;
    if (v.n == 1) {
        res.simple = false;
        res.certificate = "zero brace (order 1); simplicity requires a nonzero brace";
        B.set_certificate(SimplicityCertificate::NotSimple);
        return res;
    }
    const auto& M = v.mul_table();
    std::vector<char> skip(v.n, 0);
    for (i64 a = 1; a < v.n; ++a) {
        if (skip[a]) continue;
        std::vector<char> in = closure_mask(v, {a});
        i64 count = 0;
        for (i64 r = 0; r < v.n; ++r) count += in[r];
        if (count < v.n) {
            res.simple = false;
            res.certificate = "proper ideal of order " + std::to_string(count) +
                              " generated by " + elem_to_string(v.elems[a]);
            res.ideal = mask_to_elements(v, in);
            res.generator = v.elems[a];
            B.set_certificate(SimplicityCertificate::NotSimple);
            return res;
        }
        // a generates everything; so do its lambda images, conjugates, inverse
        skip[a] = 1;
        skip[v.invt[a]] = 1;
        for (i64 g = 0; g < v.n; ++g) {
            skip[v.lam[g * v.n + a]] = 1;
            skip[M[M[v.invt[g] * v.n + a] * v.n + g]] = 1;
        }
    }
    res.simple = true;
    res.certificate = "exhaustive: every nonzero element generates the whole brace";
    B.set_certificate(SimplicityCertificate::SimpleExhaustive);
    return res;
}

bool is_left_ideal(const LeftBrace& B, const std::vector<Element>& subset, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    return is_left_ideal_mask(v, rank_mask(v, subset));
}

bool is_ideal(const LeftBrace& B, const std::vector<Element>& subset, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    return is_ideal_mask(v, rank_mask(v, subset));
}

std::vector<SylowComponent> sylow_left_ideals(const LeftBrace& B, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    // primes dividing the order, via the shape moduli
    std::vector<i64> primes;
    for (i64 m : B.shape().moduli) {
        for (i64 p = 2; p * p <= m; ++p)
            while (m % p == 0) {
                if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
                m /= p;
            }
        if (m > 1 && std::find(primes.begin(), primes.end(), m) == primes.end()) primes.push_back(m);
    }
    std::sort(primes.begin(), primes.end());

    std::vector<SylowComponent> out;
    for (i64 p : primes) {
        SylowComponent comp;
        comp.p = p;
        // q_i = prime-to-p part of each modulus; the p-part of the group is q_i * Z/m_i
        std::vector<i64> q(B.shape().moduli.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            i64 m = B.shape().moduli[i];
            i64 qu = m;
            while (qu % p == 0) qu /= p;
            q[i] = qu;
        }
        std::vector<char> in(v.n, 0);
        for (i64 r = 0; r < v.n; ++r) {
            bool ok = true;
            for (std::size_t i = 0; i < q.size(); ++i)
                if (v.elems[r][i] % q[i] != 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                in[r] = 1;
                comp.elements.push_back(v.elems[r]);
            }
        }
        comp.left_ideal = is_left_ideal_mask(v, in);
        out.push_back(std::move(comp));
    }
    return out;
}

bool is_brace_isomorphism(const LeftBrace& B1, const LeftBrace& B2,
                          const std::function<Element(const Element&)>& map, const Caps& caps) {
    auto o1 = B1.order(), o2 = B2.order();
    if (o1 && o2 && *o1 != *o2) return false;

    if (o1 && *o1 <= caps.exhaustive_cap) {
        DenseView v1(B1, caps.exhaustive_cap);
        DenseView v2(B2, caps.exhaustive_cap);
        std::vector<i64> img(v1.n);
        std::vector<char> seen(v2.n, 0);
        for (i64 r = 0; r < v1.n; ++r) {
            Element m = map(v1.elems[r]);
            B2.shape().check(m);
            img[r] = B2.shape().rank(m);
            if (seen[img[r]]) return false;
            seen[img[r]] = 1;
        }
        const auto& M1 = v1.mul_table();
        const auto& M2 = v2.mul_table();
        for (i64 a = 0; a < v1.n; ++a)
            for (i64 b = 0; b < v1.n; ++b) {
                if (img[v1.add(a, b)] != v2.add(img[a], img[b])) return false;
                if (img[M1[a * v1.n + b]] != M2[img[a] * v2.n + img[b]]) return false;
            }
        return true;
    }

    // sampled check for braces above the cap
    Rng rng(caps.seed);
    for (i64 s = 0; s < caps.samples; ++s) {
        Element a = B1.shape().random(rng), b = B1.shape().random(rng);
        if (map(B1.add(a, b)) != B2.add(map(a), map(b))) return false;
        if (map(B1.mul(a, b)) != B2.mul(map(a), map(b))) return false;
    }
    return true;
}

std::shared_ptr<TableBrace> tabulate(const LeftBrace& B, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    std::vector<std::vector<std::int32_t>> rows(v.n, std::vector<std::int32_t>(v.n));
    for (i64 a = 0; a < v.n; ++a)
        std::copy(v.lam.begin() + a * v.n, v.lam.begin() + (a + 1) * v.n, rows[a].begin());
    json prov = B.provenance();
    prov["tabulated_from"] = B.kind();
    auto tb = std::make_shared<TableBrace>(B.shape(), std::move(rows), prov);
    VerifyReport rep = verify_brace_axioms(*tb, caps);
    if (!rep.pass()) {
        for (const auto& it : rep.items)
            if (!it.pass)
                throw ArithmeticError("tabulate: axiom check failed: " + it.name +
                                      (it.witness.empty() ? "" : " at " + it.witness));
    }
    tb->set_certificate(B.certificate());
    return tb;
}

} // namespace bracekit
