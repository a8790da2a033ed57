#pragma once

#include <algorithm>
#include <vector>

#include "qss/errors.hpp"

namespace qss {

using FieldVector = std::vector<int>;

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime modulus. All arithmetic below is in Z_q with results reduced into [0, q).
struct Prime {
    int q;

    explicit Prime(int value) : q(value) {
        if (!is_prime(value)) throw ParamViolationError("modulus must be prime");
    }

    friend bool operator==(const Prime& a, const Prime& b) { return a.q == b.q; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.q != b.q; }
};

inline int mod_reduce(long long v, const Prime& p) {
    long long r = v % p.q;
    return static_cast<int>(r < 0 ? r + p.q : r);
}

inline int mod_add(int a, int b, const Prime& p) { return (a + b) % p.q; }

inline int mod_mul(int a, int b, const Prime& p) {
    return static_cast<int>(static_cast<long long>(a) * b % p.q);
}

// Convention: 0^0 = 1, matching empty products in evaluation formulas.
inline int mod_pow(int base, int exponent, const Prime& p) {
    if (exponent < 0) throw ParamViolationError("mod_pow: negative exponent");
    int acc = 1;
    int b = mod_reduce(base, p);
    while (exponent > 0) {
        if (exponent & 1) acc = mod_mul(acc, b, p);
        b = mod_mul(b, b, p);
        exponent >>= 1;
    }
    return acc;
}

inline int mod_inverse(int value, const Prime& p) {
    int v = mod_reduce(value, p);
    if (v == 0) throw SingularMatrixError("0 has no inverse mod q");
    return mod_pow(v, p.q - 2, p);
}

// Smallest prime q with max(m, s) <= q <= 2 max(m, s). Such a prime always
// exists in that window (Bertrand), so the scan cannot fall through.
inline Prime choose_prime(int m, int s) {
    if (m < 1 || s < 2) throw ParamViolationError("choose_prime needs m >= 1 and s >= 2");
    int lo = std::max(m, s);
    for (int q = lo; q <= 2 * lo; ++q)
        if (is_prime(q)) return Prime(q);
    throw Error("choose_prime: no prime in window");
}

// Evaluates c_0 + c_1 t + ... + c_{d-1} t^{d-1} mod q by Horner's rule.
inline int poly_eval(const FieldVector& coeffs, int t, const Prime& p) {
    long long acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = mod_reduce(acc * t + *it, p);
    return static_cast<int>(acc);
}

struct FieldMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<int> a;  // row-major

    FieldMatrix() = default;
    FieldMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    static FieldMatrix identity(int d) {
        FieldMatrix m(d, d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const FieldMatrix& x, const FieldMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

// Square matrix with entry (i, j) = points[j]^i. Acting on row vectors it maps
// polynomial coefficients to evaluations: (c M)_j = p_c(points[j]).
inline FieldMatrix vandermonde(const FieldVector& points, int d, const Prime& p) {
    if (static_cast<int>(points.size()) != d)
        throw DimensionMismatchError("vandermonde: need exactly d points");
    FieldMatrix m(d, d);
    for (int j = 0; j < d; ++j) {
        int x = mod_reduce(points[j], p);
        int power = 1;
        for (int i = 0; i < d; ++i) {
            m.at(i, j) = power;
            power = mod_mul(power, x, p);
        }
    }
    return m;
}

inline FieldVector row_times_matrix(const FieldVector& y, const FieldMatrix& m, const Prime& p) {
    if (static_cast<int>(y.size()) != m.rows)
        throw DimensionMismatchError("row_times_matrix: size mismatch");
    FieldVector out(static_cast<std::size_t>(m.cols), 0);
    for (int j = 0; j < m.cols; ++j) {
        long long acc = 0;
        for (int i = 0; i < m.rows; ++i) acc += static_cast<long long>(y[i]) * m.at(i, j);
        out[j] = mod_reduce(acc, p);
    }
    return out;
}

inline FieldMatrix mat_mul(const FieldMatrix& x, const FieldMatrix& y, const Prime& p) {
    if (x.cols != y.rows) throw DimensionMismatchError("mat_mul: shape mismatch");
    FieldMatrix out(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < y.cols; ++c) {
            long long acc = 0;
            for (int t = 0; t < x.cols; ++t)
                acc += static_cast<long long>(x.at(r, t)) * y.at(t, c);
            out.at(r, c) = mod_reduce(acc, p);
        }
    return out;
}

// Gauss-Jordan elimination over Z_q.
inline FieldMatrix mat_inverse(FieldMatrix m, const Prime& p) {
    if (m.rows != m.cols) throw DimensionMismatchError("mat_inverse: matrix must be square");
    const int n = m.rows;
    for (auto& v : m.a) v = mod_reduce(v, p);
    FieldMatrix inv = FieldMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) { pivot = r; break; }
        if (pivot < 0) throw SingularMatrixError("matrix is singular mod q");
        if (pivot != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m.at(pivot, c), m.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        int scale = mod_inverse(m.at(col, col), p);
        for (int c = 0; c < n; ++c) {
            m.at(col, c) = mod_mul(m.at(col, c), scale, p);
            inv.at(col, c) = mod_mul(inv.at(col, c), scale, p);
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            int f = m.at(r, col);
            if (f == 0) continue;
            for (int c = 0; c < n; ++c) {
                m.at(r, c) = mod_reduce(m.at(r, c) - static_cast<long long>(f) * m.at(col, c), p);
                inv.at(r, c) = mod_reduce(inv.at(r, c) - static_cast<long long>(f) * inv.at(col, c), p);
            }
        }
    }
    return inv;
}

}  // namespace qss
