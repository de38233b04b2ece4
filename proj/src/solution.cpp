#include "bracekit/solution.hpp"

#include <deque>
#include <set>
#include <string>

#include "bracekit/errors.hpp"
#include "bracekit/rng.hpp"

namespace bracekit {

namespace {

// closure state budget: number of stored permutations times their length
constexpr i64 kMaxClosureCells = 8'388'608;

std::string triple_str(i64 x, i64 y, i64 z) {
    return "x=" + std::to_string(x) + ", y=" + std::to_string(y) +
           ", z=" + std::to_string(z);
}

bool row_is_permutation(const std::vector<std::int32_t>& row) {
    std::vector<char> seen(row.size(), 0);
    for (std::int32_t v : row) {
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

// one application of the braid relation at (x, y, z); empty witness on match
bool braid_at(const SetSolution& s, i64 x, i64 y, i64 z) {
    const auto& f = s.f;
    const auto& g = s.g;
    // r12 r23 r12
    std::int32_t a = f[x][y], b = g[y][x];
    std::int32_t c = f[b][z], d = g[z][b];
    std::int32_t l0 = f[a][c], l1 = g[c][a], l2 = d;
    // r23 r12 r23
    std::int32_t u = f[y][z], w = g[z][y];
    std::int32_t e = f[x][u], h = g[u][x];
    std::int32_t r0 = e, r1 = f[h][w], r2 = g[w][h];
    return l0 == r0 && l1 == r1 && l2 == r2;
}

} // namespace

void SetSolution::validate() const {
    if (n < 1) throw InputError("solution needs n >= 1, got " + std::to_string(n));
    auto check_table = [&](const std::vector<std::vector<std::int32_t>>& t,
                           const char* name) {
        if (static_cast<i64>(t.size()) != n)
            throw InputError(std::string(name) + " has " + std::to_string(t.size()) +
                             " rows, expected " + std::to_string(n));
        for (const auto& row : t) {
            if (static_cast<i64>(row.size()) != n)
                throw InputError(std::string(name) + " row has " +
                                 std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(n));
            for (std::int32_t v : row)
                if (v < 0 || v >= n)
                    throw InputError(std::string(name) + " entry " + std::to_string(v) +
                                     " out of range [0, " + std::to_string(n) + ")");
        }
    };
    check_table(f, "f");
    check_table(g, "g");
}

SetSolution canonical_solution(const LeftBrace& B, const Caps& caps) {
    DenseView v(B, caps.exhaustive_cap);
    const i64 n = v.n;

    SetSolution sol;
    sol.n = static_cast<int>(n);
    sol.f.assign(static_cast<std::size_t>(n), std::vector<std::int32_t>(static_cast<std::size_t>(n)));
    sol.g = sol.f;
    for (i64 x = 0; x < n; ++x)
        for (i64 y = 0; y < n; ++y)
            sol.f[x][y] = v.lam[x * n + y];
    // involutivity forces g_y(x) = lambda^{-1}_{lambda_x(y)}(x)
    for (i64 y = 0; y < n; ++y)
        for (i64 x = 0; x < n; ++x)
            sol.g[y][x] = v.laminv[static_cast<i64>(sol.f[x][y]) * n + x];
    sol.provenance = json{{"construction", "canonical-solution"},
                          {"brace", B.provenance()}};

    if (!verify_involutive(sol).pass() || !verify_nondegenerate(sol).pass())
        throw ArithmeticError("canonical solution failed its involutivity or "
                              "non-degeneracy self-check");
    return sol;
}

VerifyReport verify_ybe(const SetSolution& sol, const Caps& caps, bool allow_sampling) {
    sol.validate();
    const i64 n = sol.n;
    const i64 triples = n * n * n;

    VerifyReport rep;
    rep.seed = caps.seed;
    CheckItem item;
    item.name = "braid";
    item.pass = true;

    if (triples <= caps.ybe_budget) {
        rep.exhaustive = true;
        for (i64 x = 0; x < n && item.pass; ++x)
            for (i64 y = 0; y < n && item.pass; ++y)
                for (i64 z = 0; z < n; ++z)
                    if (!braid_at(sol, x, y, z)) {
                        item.pass = false;
                        item.witness = triple_str(x, y, z);
                        break;
                    }
    } else if (!allow_sampling) {
        throw CapExceeded("braid check needs " + std::to_string(triples) +
                          " triples, beyond the budget " +
                          std::to_string(caps.ybe_budget) +
                          "; enable sampling to verify on seeded random triples");
    } else {
        rep.exhaustive = false;
        rep.samples = caps.samples;
        Rng rng(caps.seed);
        for (i64 t = 0; t < caps.samples; ++t) {
            const i64 x = rng.below_i64(n), y = rng.below_i64(n), z = rng.below_i64(n);
            if (!braid_at(sol, x, y, z)) {
                item.pass = false;
                item.witness = triple_str(x, y, z);
                break;
            }
        }
    }
    rep.items.push_back(std::move(item));
    return rep;
}

VerifyReport verify_involutive(const SetSolution& sol) {
    sol.validate();
    const i64 n = sol.n;
    VerifyReport rep;
    CheckItem item;
    item.name = "involutive";
    item.pass = true;
    for (i64 x = 0; x < n && item.pass; ++x)
        for (i64 y = 0; y < n; ++y) {
            const std::int32_t a = sol.f[x][y], b = sol.g[y][x];
            if (sol.f[a][b] != x || sol.g[b][a] != y) {
                item.pass = false;
                item.witness = "x=" + std::to_string(x) + ", y=" + std::to_string(y);
                break;
            }
        }
    rep.items.push_back(std::move(item));
    return rep;
}

VerifyReport verify_nondegenerate(const SetSolution& sol) {
    sol.validate();
    const i64 n = sol.n;
    VerifyReport rep;
    auto check_rows = [&](const std::vector<std::vector<std::int32_t>>& t,
                          const char* label, const char* item_name) {
        CheckItem item;
        item.name = item_name;
        item.pass = true;
        for (i64 i = 0; i < n; ++i)
            if (!row_is_permutation(t[i])) {
                item.pass = false;
                item.witness = std::string(label) + " row " + std::to_string(i) +
                               " is not a permutation";
                break;
            }
        rep.items.push_back(std::move(item));
    };
    check_rows(sol.f, "f", "f_rows_bijective");
    check_rows(sol.g, "g", "g_rows_bijective");
    return rep;
}

PermGroupSummary permutation_group(const SetSolution& sol, const Caps& caps) {
    sol.validate();
    const i64 n = sol.n;
    if (n > caps.exhaustive_cap)
        throw CapExceeded("permutation group closure over " + std::to_string(n) +
                          " points is beyond the cap " +
                          std::to_string(caps.exhaustive_cap));
    for (i64 x = 0; x < n; ++x)
        if (!row_is_permutation(sol.f[x]))
            throw InputError("f row " + std::to_string(x) +
                             " is not a permutation; closure undefined");

    // distinct generators in first-seen order
    std::vector<std::vector<std::int32_t>> gens;
    {
        std::set<std::vector<std::int32_t>> seen;
        for (const auto& row : sol.f)
            if (seen.insert(row).second) gens.push_back(row);
    }

    std::vector<std::int32_t> id(static_cast<std::size_t>(n));
    for (i64 i = 0; i < n; ++i) id[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);

    std::set<std::vector<std::int32_t>> closure{id};
    std::deque<std::vector<std::int32_t>> queue{id};
    std::vector<std::int32_t> next(static_cast<std::size_t>(n));
    while (!queue.empty()) {
        const std::vector<std::int32_t> cur = std::move(queue.front());
        queue.pop_front();
        for (const auto& gen : gens) {
            for (i64 i = 0; i < n; ++i)
                next[static_cast<std::size_t>(i)] = gen[static_cast<std::size_t>(cur[static_cast<std::size_t>(i)])];
            if (closure.insert(next).second) {
                if (static_cast<i64>(closure.size()) * n > kMaxClosureCells)
                    throw CapExceeded("permutation group closure exceeded " +
                                      std::to_string(kMaxClosureCells) +
                                      " stored cells");
                queue.push_back(next);
            }
        }
    }

    PermGroupSummary out;
    out.order = static_cast<i64>(closure.size());
    out.generators = static_cast<int>(gens.size());
    return out;
}

} // namespace bracekit
