#include "bracekit/residue.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bracekit {

using boost::multiprecision::cpp_int;

i64 mod_reduce(i64 v, i64 m) {
    i64 x = v % m;
    return x < 0 ? x + m : x;
}

bool is_prime_u(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

i64 unit_inverse(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, a1 = mod_reduce(a, m);
    while (a1 != 0) {
        i64 q = g / a1;
        g -= q * a1; std::swap(g, a1);
        x -= q * x1; std::swap(x, x1);
    }
    if (g != 1) throw ArithmeticError("not a unit mod " + std::to_string(m));
    return mod_reduce(x, m);
}

i64 pow_i64_checked(i64 base, int exp) {
    i64 v = 1;
    for (int i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(v, base, &v))
            throw InputError("modulus overflows 64-bit range");
    }
    return v;
}

Modulus::Modulus(i64 p_, int r_) : p(p_), r(r_) {
    if (!is_prime_u(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
    if (r < 1) throw InputError("r must be >= 1");
    m = pow_i64_checked(p, r);
}

Vec::Vec(Modulus mod_, std::vector<i64> coords) : mod(mod_), c(std::move(coords)) {
    for (auto& v : c) v = mod_reduce(v, mod.m);
}

Vec vec_zero(Modulus mod, int n) { return Vec(mod, std::vector<i64>(n, 0)); }

static void require_same(const Modulus& a, const Modulus& b) {
    if (a != b) throw InputError("modulus mismatch");
}

Vec vec_add(const Vec& a, const Vec& b) {
    require_same(a.mod, b.mod);
    if (a.dim() != b.dim()) throw InputError("vector dimension mismatch");
    Vec r = a;
    for (int i = 0; i < a.dim(); ++i) r.c[i] = mod_reduce(a.c[i] + b.c[i], a.mod.m);
    return r;
}

Vec vec_neg(const Vec& a) {
    Vec r = a;
    for (auto& v : r.c) v = mod_reduce(-v, a.mod.m);
    return r;
}

i64 vec_dot(const Vec& a, const Vec& b) {
    require_same(a.mod, b.mod);
    if (a.dim() != b.dim()) throw InputError("vector dimension mismatch");
    i64 s = 0;
    for (int i = 0; i < a.dim(); ++i) s = mod_reduce(s + a.c[i] * b.c[i], a.mod.m);
    return s;
}

Mat::Mat(Modulus mod_, int n_) : mod(mod_), n(n_) {
    if (n < 0) throw InputError("negative dimension");
    e.assign(static_cast<size_t>(n) * n, 0);
}

Mat::Mat(Modulus mod_, std::vector<std::vector<i64>> rows) : mod(mod_) {
    n = static_cast<int>(rows.size());
    e.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n) throw InputError("matrix is not square");
        for (i64 v : row) e.push_back(mod_reduce(v, mod.m));
    }
}

Mat Mat::identity(Modulus mod, int n) {
    Mat a(mod, n);
    for (int i = 0; i < n; ++i) a.at(i, i) = 1 % mod.m;
    return a;
}

bool Mat::is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != ((i == j) ? 1 % mod.m : 0)) return false;
    return true;
}

std::vector<std::vector<i64>> Mat::rows() const {
    std::vector<std::vector<i64>> r(n);
    for (int i = 0; i < n; ++i) r[i] = std::vector<i64>(e.begin() + static_cast<size_t>(i) * n,
                                                        e.begin() + static_cast<size_t>(i + 1) * n);
    return r;
}

static void require_compat(const Mat& a, const Mat& b) {
    require_same(a.mod, b.mod);
    if (a.n != b.n) throw InputError("matrix dimension mismatch");
}

Mat mat_mul(const Mat& a, const Mat& b) {
    require_compat(a, b);
    const i64 m = a.mod.m;
    Mat r(a.mod, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const i64 aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < a.n; ++j)
                r.at(i, j) = mod_reduce(r.at(i, j) + aik * b.at(k, j), m);
        }
    return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
    require_compat(a, b);
    Mat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = mod_reduce(a.e[i] + b.e[i], a.mod.m);
    return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
    require_compat(a, b);
    Mat r = a;
    for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = mod_reduce(a.e[i] - b.e[i], a.mod.m);
    return r;
}

Mat mat_transpose(const Mat& a) {
    Mat r(a.mod, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.at(j, i) = a.at(i, j);
    return r;
}

Vec mat_apply(const Mat& a, const Vec& v) {
    require_same(a.mod, v.mod);
    if (a.n != v.dim()) throw InputError("matrix/vector dimension mismatch");
    Vec r = vec_zero(a.mod, a.n);
    for (int i = 0; i < a.n; ++i) {
        i64 s = 0;
        for (int j = 0; j < a.n; ++j) s = mod_reduce(s + a.at(i, j) * v.c[j], a.mod.m);
        r.c[i] = s;
    }
    return r;
}

Vec mat_apply_left(const Vec& v, const Mat& a) {
    require_same(a.mod, v.mod);
    if (a.n != v.dim()) throw InputError("matrix/vector dimension mismatch");
    Vec r = vec_zero(a.mod, a.n);
    for (int j = 0; j < a.n; ++j) {
        i64 s = 0;
        for (int i = 0; i < a.n; ++i) s = mod_reduce(s + v.c[i] * a.at(i, j), a.mod.m);
        r.c[j] = s;
    }
    return r;
}

Mat mat_pow(const Mat& a, i64 e) {
    Mat base = e < 0 ? mat_inv(a) : a;
    std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    Mat r = Mat::identity(a.mod, a.n);
    while (k) {
        if (k & 1) r = mat_mul(r, base);
        base = mat_mul(base, base);
        k >>= 1;
    }
    return r;
}

i64 mat_det(const Mat& a) {
    const int n = a.n;
    if (n == 0) return mod_reduce(1, a.mod.m);
    std::vector<cpp_int> w(a.e.begin(), a.e.end());
    auto at = [&](int i, int j) -> cpp_int& { return w[static_cast<size_t>(i) * n + j]; };
    int sign = 1;
    cpp_int prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    cpp_int d = at(n - 1, n - 1) * sign;
    cpp_int mm(a.mod.m);
    cpp_int res = d % mm;
    if (res < 0) res += mm;
    return res.convert_to<i64>();
}

bool mat_is_invertible(const Mat& a) { return mat_det(a) % a.mod.p != 0; }

Mat mat_inv(const Mat& a) {
    const int n = a.n;
    const i64 m = a.mod.m;
    const i64 p = a.mod.p;
    Mat w = a;
    Mat inv = Mat::identity(a.mod, n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int row = col; row < n; ++row)
            if (w.at(row, col) % p != 0) { piv = row; break; }
        if (piv < 0) throw ArithmeticError("singular matrix: no unit pivot in column " + std::to_string(col));
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(w.at(piv, j), w.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const i64 pi = unit_inverse(w.at(col, col), m);
        for (int j = 0; j < n; ++j) {
            w.at(col, j) = mod_reduce(w.at(col, j) * pi, m);
            inv.at(col, j) = mod_reduce(inv.at(col, j) * pi, m);
        }
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const i64 f = w.at(row, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                w.at(row, j) = mod_reduce(w.at(row, j) - f * w.at(col, j), m);
                inv.at(row, j) = mod_reduce(inv.at(row, j) - f * inv.at(col, j), m);
            }
        }
    }
    return inv;
}

i64 mat_order(const Mat& a, i64 max_steps) {
    if (!mat_is_invertible(a)) throw ArithmeticError("order of a singular matrix");
    Mat g = a;
    for (i64 k = 1; k <= max_steps; ++k) {
        if (g.is_identity()) return k;
        g = mat_mul(g, a);
    }
    throw Undecided("matrix order exceeds " + std::to_string(max_steps));
}

Mat companion_D(int n, Modulus mod) {
    if (n < 2) throw InputError("companion_D needs n >= 2");
    Mat d(mod, n - 1);
    for (int i = 1; i < n - 1; ++i) d.at(i, i - 1) = 1 % mod.m;
    for (int i = 0; i < n - 1; ++i) d.at(i, n - 2) = mod_reduce(-1, mod.m);
    return d;
}

Mat gram_E(int n, Modulus mod) {
    if (n < 2) throw InputError("gram_E needs n >= 2");
    Mat g(mod, n - 1);
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j)
            g.at(i, j) = mod_reduce(i == j ? n - 1 : -1, mod.m);
    return g;
}

Mat block_diag(const Mat& M, int k) {
    if (k < 1) throw InputError("block_diag needs k >= 1");
    Mat r(M.mod, M.n * k);
    for (int b = 0; b < k; ++b)
        for (int i = 0; i < M.n; ++i)
            for (int j = 0; j < M.n; ++j)
                r.at(b * M.n + i, b * M.n + j) = M.at(i, j);
    return r;
}

Mat block_perm_F(int blockdim, int k, Modulus mod) {
    if (k < 1 || blockdim < 1) throw InputError("block_perm_F needs k >= 1, blockdim >= 1");
    Mat r(mod, blockdim * k);
    // block b of the input lands in block b+1 (mod k): identity block at (b+1, b)
    for (int b = 0; b < k; ++b) {
        const int dst = (b + 1) % k;
        for (int i = 0; i < blockdim; ++i) r.at(dst * blockdim + i, b * blockdim + i) = 1 % mod.m;
    }
    return r;
}

QForm::QForm(Modulus mod_, Mat U_) : mod(mod_), n(U_.n), U(std::move(U_)) {
    if (U.mod != mod) throw InputError("form/coefficient modulus mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (U.at(i, j) != 0) throw InputError("U has a nonzero entry below the diagonal");
}

Mat QForm::bilinear() const { return mat_add(U, mat_transpose(U)); }

QForm qform_sum_pairs(int n, Modulus mod) {
    if (n < 1) throw InputError("qform_sum_pairs needs n >= 1");
    Mat U(mod, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) U.at(i, j) = 1 % mod.m;
    return QForm(mod, U);
}

QForm qform_from_gram(const Mat& B) {
    const i64 m = B.mod.m;
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < i; ++j)
            if (B.at(i, j) != B.at(j, i)) throw InputError("gram matrix is not symmetric");
    Mat U(B.mod, B.n);
    for (int i = 0; i < B.n; ++i) {
        const i64 d = B.at(i, i);
        if (B.mod.p == 2) {
            if (d % 2 != 0) throw ArithmeticError("gram diagonal entry is odd in characteristic 2");
            U.at(i, i) = d / 2;
        } else {
            U.at(i, i) = mod_reduce(d * unit_inverse(2, m), m);
        }
        for (int j = i + 1; j < B.n; ++j) U.at(i, j) = B.at(i, j);
    }
    return QForm(B.mod, U);
}

i64 eval_Q(const QForm& Q, const Vec& x) {
    require_same(Q.mod, x.mod);
    if (x.dim() != Q.n) throw InputError("form/vector dimension mismatch");
    const i64 m = Q.mod.m;
    i64 s = 0;
    for (int i = 0; i < Q.n; ++i) {
        if (x.c[i] == 0) continue;
        i64 row = 0;
        for (int j = i; j < Q.n; ++j) row = mod_reduce(row + Q.U.at(i, j) * x.c[j], m);
        s = mod_reduce(s + x.c[i] * row, m);
    }
    return s;
}

i64 eval_b(const QForm& Q, const Vec& x, const Vec& y) {
    require_same(Q.mod, x.mod);
    require_same(Q.mod, y.mod);
    if (x.dim() != Q.n || y.dim() != Q.n) throw InputError("form/vector dimension mismatch");
    const i64 m = Q.mod.m;
    const Mat Bm = Q.bilinear();
    i64 s = 0;
    for (int i = 0; i < Q.n; ++i) {
        if (x.c[i] == 0) continue;
        i64 row = 0;
        for (int j = 0; j < Q.n; ++j) row = mod_reduce(row + Bm.at(i, j) * y.c[j], m);
        s = mod_reduce(s + x.c[i] * row, m);
    }
    return s;
}

bool is_nondegenerate(const QForm& Q) {
    return mat_det(Q.bilinear()) % Q.mod.p != 0;
}

bool is_orthogonal(const Mat& f, const QForm& Q) {
    require_same(f.mod, Q.mod);
    if (f.n != Q.n) throw InputError("matrix/form dimension mismatch");
    const i64 m = Q.mod.m;
    const Mat M = mat_sub(mat_mul(mat_mul(mat_transpose(f), Q.U), f), Q.U);
    bool crit = true;
    for (int i = 0; i < Q.n && crit; ++i)
        if (M.at(i, i) != 0) crit = false;
    for (int i = 0; i < Q.n && crit; ++i)
        for (int j = i + 1; j < Q.n && crit; ++j)
            if (mod_reduce(M.at(i, j) + M.at(j, i), m) != 0) crit = false;
    if (crit) return true;
    if (m > 2) return false;
    // m = 2: x^2 = x as functions, so compare pointwise
    if (Q.n > 20) // 2^n would exceed the 10^6 evaluation budget
        throw Undecided("orthogonality undecided: m = 2 with 2^n > 10^6");
    const i64 count = i64(1) << Q.n;
    for (i64 mask = 0; mask < count; ++mask) {
        Vec v = vec_zero(Q.mod, Q.n);
        for (int i = 0; i < Q.n; ++i) v.c[i] = (mask >> i) & 1;
        if (eval_Q(Q, mat_apply(f, v)) != eval_Q(Q, v)) return false;
    }
    return true;
}

std::string mat_to_string(const Mat& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < a.n; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < a.n; ++j) os << (j ? "," : "") << a.at(i, j);
        os << "]";
    }
    os << "] mod " << a.mod.m;
    return os.str();
}

} // namespace bracekit
