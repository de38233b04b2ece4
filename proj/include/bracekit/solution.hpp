#pragma once
// Set-theoretic solutions r(x,y) = (f_x(y), g_y(x)) on rank space: the
// canonical involutive solution of a brace, braid/involutivity/degeneracy
// verifiers, and the permutation group generated by the f rows.

#include <vector>

#include "bracekit/brace.hpp"

namespace bracekit {

struct SetSolution {
    int n = 0;
    std::vector<std::vector<std::int32_t>> f; // f[x][y], first output of r(x,y)
    std::vector<std::vector<std::int32_t>> g; // g[y][x], second output of r(x,y)
    json provenance;

    void validate() const; // shape and range checks; throws InputError
};

// X = the brace's rank space, f_x = lambda_x, and g from involutivity:
// g_y(x) = lambda^{-1}_{lambda_x(y)}(x). Requires order <= cap; the result
// is re-verified (involutive + non-degenerate) before returning.
SetSolution canonical_solution(const LeftBrace& B, const Caps& caps = {});

// braid relation r12 r23 r12 = r23 r12 r23 on X^3. Exhaustive when n^3 is
// within caps.ybe_budget; beyond it, throws CapExceeded unless sampling is
// allowed, in which case caps.samples seeded triples are drawn.
VerifyReport verify_ybe(const SetSolution& sol, const Caps& caps = {},
                        bool allow_sampling = false);

// r(r(x,y)) = (x,y) on all pairs
VerifyReport verify_involutive(const SetSolution& sol);

// every f row and every g row is a permutation
VerifyReport verify_nondegenerate(const SetSolution& sol);

struct PermGroupSummary {
    i64 order = 0;
    int generators = 0; // distinct rows among {f_x}
};

// breadth-first closure of the distinct f rows under composition;
// deterministic first-seen ordering. For the canonical solution of a brace
// the order equals |B| / |socle(B)|.
PermGroupSummary permutation_group(const SetSolution& sol, const Caps& caps = {});

} // namespace bracekit
