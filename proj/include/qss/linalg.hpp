#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qss/errors.hpp"

namespace qss {

using complexd = std::complex<double>;

struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<complexd> data;  // row-major

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}

    complexd& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    const complexd& operator()(int r, int c) const {
        return data[static_cast<std::size_t>(r) * cols + c];
    }

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatchError("matrix add: shape mismatch");
    CMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] + b.data[i];
    return out;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionMismatchError("matrix sub: shape mismatch");
    CMatrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) out.data[i] = a.data[i] - b.data[i];
    return out;
}

inline CMatrix operator*(const CMatrix& m, complexd scale) {
    CMatrix out = m;
    for (auto& v : out.data) v *= scale;
    return out;
}

inline CMatrix multiply(const CMatrix& a, const CMatrix& b) {
    if (a.cols != b.rows) throw DimensionMismatchError("matrix multiply: shape mismatch");
    CMatrix out(a.rows, b.cols);
    for (int r = 0; r < a.rows; ++r)
        for (int t = 0; t < a.cols; ++t) {
            complexd art = a(r, t);
            if (art == complexd(0.0, 0.0)) continue;
            for (int c = 0; c < b.cols; ++c) out(r, c) += art * b(t, c);
        }
    return out;
}

inline CMatrix adjoint(const CMatrix& m) {
    CMatrix out(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (int ra = 0; ra < a.rows; ++ra)
        for (int ca = 0; ca < a.cols; ++ca) {
            complexd v = a(ra, ca);
            if (v == complexd(0.0, 0.0)) continue;
            for (int rb = 0; rb < b.rows; ++rb)
                for (int cb = 0; cb < b.cols; ++cb)
                    out(ra * b.rows + rb, ca * b.cols + cb) = v * b(rb, cb);
        }
    return out;
}

inline complexd trace_of(const CMatrix& m) {
    if (m.rows != m.cols) throw DimensionMismatchError("trace: matrix must be square");
    complexd acc = 0.0;
    for (int i = 0; i < m.rows; ++i) acc += m(i, i);
    return acc;
}

inline double frobenius_norm(const CMatrix& m) {
    double acc = 0.0;
    for (const auto& v : m.data) acc += std::norm(v);
    return std::sqrt(acc);
}

inline bool is_hermitian(const CMatrix& m, double tol) {
    if (m.rows != m.cols) return false;
    for (int r = 0; r < m.rows; ++r)
        for (int c = r; c < m.cols; ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
}

namespace detail {

// One cyclic-Jacobi rotation zeroing a(p, q); accumulates the rotation into
// `vectors` when eigenvectors are requested.
inline void jacobi_rotate(CMatrix& a, CMatrix* vectors, int p, int q) {
    const int n = a.rows;
    const complexd g = a(p, q);
    const double ag = std::abs(g);
    if (ag == 0.0) return;
    const complexd phase = g / ag;
    const double alpha = a(p, p).real();
    const double beta = a(q, q).real();
    const double tau = (beta - alpha) / (2.0 * ag);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const complexd s_phase = s * phase;
    const complexd s_conj_phase = s * std::conj(phase);

    for (int r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const complexd arp = a(r, p);
        const complexd arq = a(r, q);
        a(r, p) = c * arp - s_conj_phase * arq;
        a(r, q) = s_phase * arp + c * arq;
        a(p, r) = std::conj(a(r, p));
        a(q, r) = std::conj(a(r, q));
    }
    a(p, p) = alpha - t * ag;
    a(q, q) = beta + t * ag;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    if (vectors) {
        CMatrix& v = *vectors;
        for (int r = 0; r < n; ++r) {
            const complexd vrp = v(r, p);
            const complexd vrq = v(r, q);
            v(r, p) = c * vrp - s_conj_phase * vrq;
            v(r, q) = s_phase * vrp + c * vrq;
        }
    }
}

inline double offdiagonal_norm(const CMatrix& a) {
    double acc = 0.0;
    for (int r = 0; r < a.rows; ++r)
        for (int c = r + 1; c < a.cols; ++c) acc += std::norm(a(r, c));
    return std::sqrt(2.0 * acc);
}

inline void jacobi_diagonalize(CMatrix& a, CMatrix* vectors) {
    if (a.rows != a.cols) throw DimensionMismatchError("eigensolver: matrix must be square");
    if (!is_hermitian(a, 1e-10 * std::max(1.0, frobenius_norm(a))))
        throw DimensionMismatchError("eigensolver: matrix must be Hermitian");
    const int n = a.rows;
    // Exact symmetrization so rotations keep the matrix Hermitian to the bit.
    for (int r = 0; r < n; ++r) {
        a(r, r) = a(r, r).real();
        for (int c = r + 1; c < n; ++c) {
            complexd mean = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = mean;
            a(c, r) = std::conj(mean);
        }
    }
    const double scale = std::max(frobenius_norm(a), 1e-300);
    const double skip_floor = 1e-18 * scale;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiagonal_norm(a) <= 1e-14 * scale) break;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > skip_floor) jacobi_rotate(a, vectors, p, q);
    }
}

}  // namespace detail

// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi: slow for very
// large matrices but exact-arithmetic friendly and dependency-free.
inline std::vector<double> hermitian_eigenvalues(CMatrix a) {
    detail::jacobi_diagonalize(a, nullptr);
    std::vector<double> values(static_cast<std::size_t>(a.rows));
    for (int i = 0; i < a.rows; ++i) values[i] = a(i, i).real();
    std::sort(values.begin(), values.end());
    return values;
}

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column i is the eigenvector of values[i]
};

inline HermitianEigensystem hermitian_eigensystem(CMatrix a) {
    CMatrix vectors = CMatrix::identity(a.rows);
    detail::jacobi_diagonalize(a, &vectors);
    const int n = a.rows;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigensystem out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = CMatrix(n, n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]).real();
        for (int r = 0; r < n; ++r) out.vectors(r, i) = vectors(r, order[i]);
    }
    return out;
}

}  // namespace qss
