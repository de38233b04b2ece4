#pragma once

// Exact arithmetic over Z/(p^r): vectors, matrices, quadratic forms, and the
// explicit companion/gram/block matrices used by the brace constructions.

#include <cstdint>
#include <string>
#include <vector>

#include "bracekit/errors.hpp"

namespace bracekit {

using i64 = std::int64_t;

i64 mod_reduce(i64 v, i64 m);
bool is_prime_u(i64 p);
// modular inverse of a unit mod m; throws ArithmeticError otherwise
i64 unit_inverse(i64 a, i64 m);
i64 pow_i64_checked(i64 base, int exp); // throws InputError on overflow

struct Modulus {
    i64 p = 2; // prime, checked by trial division
    int r = 1; // exponent >= 1
    i64 m = 2; // p^r, cached

    Modulus() = default;
    Modulus(i64 p_, int r_);
    bool operator==(const Modulus& o) const { return p == o.p && r == o.r; }
    bool operator!=(const Modulus& o) const { return !(*this == o); }
};

struct Vec {
    Modulus mod;
    std::vector<i64> c;

    Vec() = default;
    Vec(Modulus mod_, std::vector<i64> coords);
    int dim() const { return static_cast<int>(c.size()); }
    bool operator==(const Vec& o) const { return mod == o.mod && c == o.c; }
};

Vec vec_zero(Modulus mod, int n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_neg(const Vec& a);
i64 vec_dot(const Vec& a, const Vec& b);

struct Mat {
    Modulus mod;
    int n = 0;
    std::vector<i64> e; // row-major n*n, entries in [0, m)

    Mat() = default;
    Mat(Modulus mod_, int n_);                          // zero matrix
    Mat(Modulus mod_, std::vector<std::vector<i64>> rows);
    static Mat identity(Modulus mod, int n);

    i64& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    i64 at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }
    bool is_identity() const;
    bool operator==(const Mat& o) const { return mod == o.mod && n == o.n && e == o.e; }
    std::vector<std::vector<i64>> rows() const;
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
// column convention: (A v)_i = sum_j A[i][j] v[j]
Vec mat_apply(const Mat& a, const Vec& v);
// row-vector action v^t A, used for bilinear pairings
Vec mat_apply_left(const Vec& v, const Mat& a);
Mat mat_pow(const Mat& a, i64 e); // e < 0 inverts first
// determinant mod m via fraction-free (Bareiss) elimination over the integers
i64 mat_det(const Mat& a);
bool mat_is_invertible(const Mat& a); // det a unit mod p
// Gauss-Jordan with unit pivots only, top-down pivot scan; throws ArithmeticError
Mat mat_inv(const Mat& a);
// multiplicative order by iterated powering; throws Undecided past max_steps
i64 mat_order(const Mat& a, i64 max_steps = 1 << 20);

// (n-1)x(n-1) companion matrix of x^{n-1}+...+x+1: subdiagonal 1s, last column -1.
// Has multiplicative order exactly n.
Mat companion_D(int n, Modulus mod);
// (n-1)x(n-1) gram matrix: diagonal n-1, off-diagonal -1; det = n^{n-2},
// D^t E D = E. Closed form, so even moduli are fine.
Mat gram_E(int n, Modulus mod);
// k diagonal copies of M
Mat block_diag(const Mat& M, int k);
// block cyclic shift with identity blocks: order k, F^t = F^{-1}, and
// F commutes with any block_diag(M, k)
Mat block_perm_F(int blockdim, int k, Modulus mod);

// Q(x) = x U x^t with U upper-triangular (zero strictly below the diagonal)
struct QForm {
    Modulus mod;
    int n = 0;
    Mat U;

    QForm() = default;
    QForm(Modulus mod_, Mat U_); // validates shape and triangularity
    Mat bilinear() const;        // U + U^t, the matrix of b
};

// all-pairs form sum_{i<j<=n} x_i x_j on n variables (n >= 1; n = 1 gives 0)
QForm qform_sum_pairs(int n, Modulus mod);
// a Q with bilinear matrix B: strict upper triangle kept, diagonal halved.
// For p = 2 the diagonal must be even (integer halving); else ArithmeticError.
QForm qform_from_gram(const Mat& B);
i64 eval_Q(const QForm& Q, const Vec& x);
// b(x,y) = Q(x+y) - Q(x) - Q(y) = x (U+U^t) y^t
i64 eval_b(const QForm& Q, const Vec& x, const Vec& y);
bool is_nondegenerate(const QForm& Q); // det(U+U^t) a unit mod p

// Function equality Q(f(v)) = Q(v). Coefficient criterion: f^t U f - U must
// have zero diagonal and antisymmetric off-diagonal part. The criterion is
// sufficient for every modulus and necessary for m > 2; for m = 2 a failed
// criterion falls back to exhaustive evaluation when 2^n <= 10^6, else throws
// Undecided.
bool is_orthogonal(const Mat& f, const QForm& Q);

std::string mat_to_string(const Mat& a); // debug/witness formatting

} // namespace bracekit
