#pragma once
// Braces on (Z/p^r)^{n+1} built from a quadratic form Q and an orthogonal
// matrix f of p-power order: lambda_(x,mu)(y,mu') = (f^q(y), mu' + b(x, f^q(y)))
// with q(x,mu) = mu - Q(x).

#include <memory>
#include <vector>

#include "bracekit/brace.hpp"
#include "bracekit/residue.hpp"

namespace bracekit {

struct HegedusSpec {
    Modulus mod;   // p^r
    int n;         // vector part dimension; mu is the last of n+1 coordinates
    QForm Q;
    Mat f;
    int r_prime;   // ord(f) = p^{r_prime}, computed from f and validated

    // validates: dimensions agree, f invertible and orthogonal for Q,
    // ord(f) a p-power with exponent in [0, r]
    HegedusSpec(const Modulus& mod_, int n_, QForm Q_, Mat f_);
};

// q(x, mu) = mu - Q(x); additive on the brace multiplication (a hom (H,.) -> Z/p^r)
i64 q_value(const HegedusSpec& spec, const Vec& x, i64 mu);

std::shared_ptr<FormulaBrace> build_hegedus(const HegedusSpec& spec);

// {(0,...,0, mu) : mu in p^{r'} Z/p^r}; requires non-degenerate Q
std::vector<Element> predicted_socle(const HegedusSpec& spec);

struct AdmissiblePair {
    QForm Q;
    Mat f;
    int r_prime;
};

// brute-force enumeration of all admissible (Q, f): non-degenerate
// upper-triangular Q and orthogonal f of p-power order <= p^r.
// Test helper, bounded to n <= 3 and m <= 9.
std::vector<AdmissiblePair> search_admissible(const Modulus& mod, int n);

} // namespace bracekit
