#pragma once
// Cyclic chains of quadratic-form braces glued by power actions: per-factor
// block matrices, the det(C - id) simplicity criterion, block-rotation
// automorphisms, a two-pair matched product, and numeric order filters.

#include <map>
#include <vector>

#include "bracekit/hegedus.hpp"
#include "bracekit/matched.hpp"

namespace bracekit {

struct CyclePrime {
    i64 p = 0;     // factor prime
    int r = 1;     // modulus exponent, factor lives over Z/p^r
    int rprime = 0; // replica exponent, k = p^{r'} diagonal blocks
};

// s >= 2 factors over pairwise distinct primes; all but the last odd.
// Factor i is a brace on (Z/p_i^{r_i})^{k_i(n_i-1)+1} where n_i is the next
// factor's p^r (cyclically) and k_i = p_i^{r'_i}. If p_s = 2 then r_s = 1.
struct CycleSpec {
    std::vector<CyclePrime> primes;
    std::map<int, Mat> overrides; // 1-based factor index -> replacement for C_i

    int s() const { return static_cast<int>(primes.size()); }
    i64 n_of(int i) const; // 1-based; p_{i+1}^{r_{i+1}}, wrapping to p_1^{r_1}
    i64 k_of(int i) const; // p_i^{r'_i}
    void validate() const; // throws InputError
};

// the per-factor matrix data; all matrices live over Z/p_i^{r_i}
struct CycleBlocks {
    Modulus mod;
    i64 n = 0;    // exponent period of C (the next factor's modulus)
    i64 k = 1;    // replica count
    Mat D;        // (n-1) x (n-1) companion block of (x^n - 1)/(x - 1)
    Mat F;        // block shift of order k on k(n-1) coordinates
    Mat C;        // k-fold diag(D), or the validated override
    QForm Q;      // form on the k(n-1) vector coordinates
    Vec v;        // correction row with Q(Cx) = Q(x) + v.x; zero for odd p
    bool gram = false; // odd p: Q comes from the invariant gram pair (E, B)
    Mat E;        // gram block with D^t E D = E (only when gram)
    Mat B;        // k-fold diag(E) with F^t B F = B (only when gram)
};

// builds and cross-checks the factor-i matrices (1-based i); overrides for
// C_i are accepted when invertible, of period dividing n_i, commuting with
// F_i, and compatible with Q_i (orthogonal, or the v-correction law mod 2)
CycleBlocks build_blocks(const CycleSpec& spec, int i);

// factor i as a quadratic-form brace: H(p_i^{r_i}, k_i(n_i-1), Q_i, F_i)
std::shared_ptr<FormulaBrace> build_H(const CycleSpec& spec, int i);

// the full cycle of power actions: factor k+1 twists factor k through
// C_k^{q_{k+1}}, and factor 1 twists factor s through C_s^{q_1} plus the
// v_s correction on the last coordinate; every other action is identity
IteratedActionsSpec build_actions(const CycleSpec& spec);

// iterated matched product of all factors along the cycle actions; the
// certificate is set to SimpleByCriterion when simplicity_criterion holds
std::shared_ptr<FormulaBrace> build_cycle_brace(const CycleSpec& spec,
                                                const Caps& caps = {});

// true iff det(C_i - id) is a unit mod p_i for every factor
bool simplicity_criterion(const CycleSpec& spec);

// q_i read off the i-th slice is additive for the product multiplication
// (exhaustive below the cap, sampled above)
bool phi_hom_check(const CycleSpec& spec, int i, const Caps& caps = {});

struct PsiAutomorphism {
    std::function<Element(const Element&)> map;     // on product coordinates
    std::function<Element(const Element&)> inverse;
    bool validated = false; // is_brace_isomorphism of the product onto itself
};

// block permutation of factor i's replica blocks, fixing every other
// coordinate: output block b is input block sigma[b] (0-based, size m = k_i).
// The replica blocks are cyclically linked by F_i, so for m > 1 only
// rotations are structure-compatible; anything else is rejected.
PsiAutomorphism psi_sigma(const CycleSpec& spec, int i, int m,
                          const std::vector<int>& sigma, const Caps& caps = {});

struct TwoPairProduct {
    std::shared_ptr<FormulaBrace> pair_a;  // with the first factor inflated
    std::shared_ptr<FormulaBrace> pair_b;
    std::shared_ptr<FormulaBrace> product; // matched product of the pairs
    MatchedPairSpec pair;                  // the validated glue actions
};

// glues two 2-factor cycle braces over four distinct odd primes (r = 1,
// r' = 0) into one matched product: the first factor of each pair is
// inflated to m replica blocks (m = the partner's second prime) and the
// pairs act on each other by block rotations powered by q of the partner's
// second slice. Validation is sampled once orders pass the cap.
TwoPairProduct matched_of_two(const CycleSpec& spec_a, const CycleSpec& spec_b,
                              const Caps& caps = {});

enum class OrderVerdict { Possible, Impossible };

struct OrderFilterResult {
    OrderVerdict verdict = OrderVerdict::Possible;
    std::string reason;
    bool possible() const { return verdict == OrderVerdict::Possible; }
};

// necessary conditions on the order of a simple brace: prime powers beyond
// the prime fail; each prime factor q needs some prime power p^t | N/q^a
// with p^t = 1 mod q; N = p^n q fails when n = ord(p mod q). "Possible"
// only means no filter fired.
OrderFilterResult order_filters(i64 N);

} // namespace bracekit
