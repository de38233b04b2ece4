#include "bracekit/hegedus.hpp"

#include <utility>

namespace bracekit {

namespace {

// ord must be p^{r'} with 0 <= r' <= r; returns r' or -1
int p_power_exponent(i64 ord, i64 p, int r) {
    int e = 0;
    while (ord % p == 0) {
        ord /= p;
        ++e;
    }
    return (ord == 1 && e <= r) ? e : -1;
}

} // namespace

HegedusSpec::HegedusSpec(const Modulus& mod_, int n_, QForm Q_, Mat f_)
    : mod(mod_), n(n_), Q(std::move(Q_)), f(std::move(f_)), r_prime(0) {
    if (n < 1) throw InputError("hegedus: n must be positive");
    if (Q.mod.m != mod.m || Q.U.n != n) throw InputError("hegedus: Q has wrong modulus or size");
    if (f.mod.m != mod.m || f.n != n) throw InputError("hegedus: f has wrong modulus or size");
    if (!mat_is_invertible(f)) throw InputError("hegedus: f is not invertible");
    if (!is_orthogonal(f, Q)) throw InputError("hegedus: f does not preserve Q");
    const i64 ord = mat_order(f);
    r_prime = p_power_exponent(ord, mod.p, mod.r);
    if (r_prime < 0)
        throw InputError("hegedus: ord(f) = " + std::to_string(ord) + " is not p^{r'} with r' <= " +
                         std::to_string(mod.r));
}

i64 q_value(const HegedusSpec& spec, const Vec& x, i64 mu) {
    return mod_reduce(mu - eval_Q(spec.Q, x), spec.mod.m);
}

std::shared_ptr<FormulaBrace> build_hegedus(const HegedusSpec& spec) {
    const i64 m = spec.mod.m;
    const int n = spec.n;
    const i64 ord = mat_order(spec.f);

    auto powers = std::make_shared<std::vector<Mat>>();
    powers->reserve(ord);
    powers->push_back(Mat::identity(spec.mod, n));
    for (i64 k = 1; k < ord; ++k) powers->push_back(mat_mul(powers->back(), spec.f));

    const QForm Q = spec.Q;
    const Modulus mod = spec.mod;

    auto split = [n, mod](const Element& a) {
        Vec x(mod, std::vector<i64>(a.begin(), a.begin() + n));
        return std::make_pair(x, a[n]);
    };
    auto joined = [n](const Vec& x, i64 mu) {
        Element e(x.c);
        e.push_back(mu);
        (void)n;
        return e;
    };
    auto qv = [Q, m](const Vec& x, i64 mu) { return mod_reduce(mu - eval_Q(Q, x), m); };

    auto lam = [=](const Element& a, const Element& b) {
        auto [x, mu] = split(a);
        auto [y, mu2] = split(b);
        const i64 e = qv(x, mu) % ord;
        Vec fy = mat_apply((*powers)[e], y);
        return joined(fy, mod_reduce(mu2 + eval_b(Q, x, fy), m));
    };
    auto laminv = [=](const Element& a, const Element& c) {
        auto [x, mu] = split(a);
        auto [z, nu] = split(c);
        const i64 e = qv(x, mu) % ord;
        Vec y = mat_apply((*powers)[(ord - e) % ord], z);
        return joined(y, mod_reduce(nu - eval_b(Q, x, z), m));
    };

    json prov;
    prov["construction"] = "hegedus";
    prov["p"] = spec.mod.p;
    prov["r"] = spec.mod.r;
    prov["n"] = spec.n;
    prov["r_prime"] = spec.r_prime;
    prov["Q"] = spec.Q.U.rows();
    prov["f"] = spec.f.rows();

    AdditiveShape shape(std::vector<i64>(n + 1, m));
    return std::make_shared<FormulaBrace>(shape, lam, laminv, prov);
}

std::vector<Element> predicted_socle(const HegedusSpec& spec) {
    if (!is_nondegenerate(spec.Q))
        throw InputError("predicted_socle: requires a non-degenerate form");
    i64 step = 1;
    for (int k = 0; k < spec.r_prime; ++k) step *= spec.mod.p;
    std::vector<Element> out;
    for (i64 mu = 0; mu < spec.mod.m; mu += step) {
        Element e(spec.n + 1, 0);
        e[spec.n] = mu;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<AdmissiblePair> search_admissible(const Modulus& mod, int n) {
    if (n < 1 || n > 3 || mod.m > 9)
        throw InputError("search_admissible is bounded to 1 <= n <= 3, m <= 9");
    const i64 m = mod.m;

    // all invertible f of p-power order <= p^r, ascending row-major encoding
    struct FCand {
        Mat f;
        int r_prime;
    };
    std::vector<FCand> fs;
    {
        const int cells = n * n;
        std::vector<i64> c(cells, 0);
        while (true) {
            Mat f(mod, n);
            for (int i = 0; i < cells; ++i) f.e[i] = c[i];
            if (mat_is_invertible(f)) {
                i64 ord = mat_order(f);
                int rp = 0;
                i64 t = ord;
                while (t % mod.p == 0) {
                    t /= mod.p;
                    ++rp;
                }
                if (t == 1 && rp <= mod.r) fs.push_back({f, rp});
            }
            int k = cells - 1;
            while (k >= 0 && ++c[k] == m) c[k--] = 0;
            if (k < 0) break;
        }
    }

    std::vector<AdmissiblePair> out;
    const int ucells = n * (n + 1) / 2;
    std::vector<i64> u(ucells, 0);
    while (true) {
        Mat U(mod, n);
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) U.at(i, j) = u[idx++];
        QForm q(mod, U);
        if (is_nondegenerate(q))
            for (const auto& fc : fs)
                if (is_orthogonal(fc.f, q)) out.push_back({q, fc.f, fc.r_prime});
        int k = ucells - 1;
        while (k >= 0 && ++u[k] == m) u[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

} // namespace bracekit
