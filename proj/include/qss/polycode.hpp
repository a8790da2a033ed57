#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qss/errors.hpp"
#include "qss/field.hpp"
#include "qss/hilbert.hpp"

namespace qss {

// Parameters of a quantum polynomial code: basis secrets |t> are mapped to
// uniform superpositions of |p_c(x_0), ..., p_c(x_{m-1})> over all degree
// <= k-1 polynomials p_c with leading coefficient c_{k-1} = t.
struct CodeParams {
    int k;
    int m;
    Prime q;
    int s;
    FieldVector points;

    CodeParams(int threshold, int length, Prime prime, int secret_dim, FieldVector xs)
        : k(threshold), m(length), q(prime), s(secret_dim), points(std::move(xs)) {
        if (k < 1) throw ParamViolationError("code requires k >= 1");
        if (m < k) throw ParamViolationError("code length m must be at least k");
        if (m >= 2 * k)
            throw ParamViolationError("code requires m < 2k; no disentangling map exists otherwise");
        if (s < 2 || s > q.q) throw ParamViolationError("secret dimension must satisfy 2 <= s <= q");
        if (m > q.q) throw ParamViolationError("code length must satisfy m <= q");
        if (static_cast<int>(points.size()) != m)
            throw ParamViolationError("need exactly m evaluation points");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i] < 0 || points[i] >= q.q)
                throw ParamViolationError("evaluation points must lie in [0, q)");
            for (std::size_t j = i + 1; j < points.size(); ++j)
                if (points[i] == points[j])
                    throw ParamViolationError("evaluation points must be pairwise distinct");
        }
    }
};

// Smallest prime q with max(m, s) <= q <= 2 max(m, s), points 0, ..., m-1.
inline CodeParams make_standard_params(int k, int m, int s) {
    Prime q = choose_prime(m, s);
    FieldVector points(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) points[static_cast<std::size_t>(i)] = i;
    return CodeParams(k, m, q, s, std::move(points));
}

namespace detail {

// Walks all q^{k-1} coefficient prefixes (c_0, ..., c_{k-2}) for a fixed
// leading coefficient and hands each resulting basis index to the sink.
template <typename Sink>
void for_each_codeword_index(const CodeParams& params, const RegisterSystem& sys,
                             Index register_base, int leading, Sink&& sink) {
    const int free_count = params.k - 1;
    FieldVector c(static_cast<std::size_t>(params.k), 0);
    c[static_cast<std::size_t>(params.k - 1)] = leading;
    long long total = 1;
    for (int i = 0; i < free_count; ++i) total *= params.q.q;
    for (long long iter = 0; iter < total; ++iter) {
        Index idx = 0;
        for (int j = 0; j < params.m; ++j)
            idx += static_cast<Index>(poly_eval(c, params.points[static_cast<std::size_t>(j)], params.q)) *
                   sys.stride(static_cast<int>(register_base) + j);
        sink(idx);
        for (int i = 0; i < free_count; ++i) {  // odometer over the free coefficients
            if (++c[static_cast<std::size_t>(i)] < params.q.q) break;
            c[static_cast<std::size_t>(i)] = 0;
        }
    }
}

inline double branch_amplitude(const CodeParams& params) {
    return std::pow(static_cast<double>(params.q.q), -0.5 * (params.k - 1));
}

}  // namespace detail

// Isometry from an s-dimensional secret to m registers of dimension q.
// Accepts secrets of dimension up to s (shorter vectors use a subspace of the
// input space); the vector is renormalized exactly after a 1e-9 norm check.
inline PureState encode(const std::vector<complexd>& secret, const CodeParams& params) {
    if (secret.empty() || static_cast<int>(secret.size()) > params.s)
        throw BadSecretDimensionError("secret dimension must lie in [1, s]");
    double norm_sq = 0.0;
    for (const auto& a : secret) norm_sq += std::norm(a);
    if (std::abs(norm_sq - 1.0) > 1e-9) throw BadSecretDimensionError("secret vector must be normalized");
    const double inv = 1.0 / std::sqrt(norm_sq);

    RegisterSystem sys(std::vector<int>(static_cast<std::size_t>(params.m), params.q.q));
    std::vector<complexd> amps(static_cast<std::size_t>(sys.dimension()), complexd(0.0, 0.0));
    const double branch = detail::branch_amplitude(params);
    for (int t = 0; t < static_cast<int>(secret.size()); ++t) {
        const complexd weight = secret[static_cast<std::size_t>(t)] * inv * branch;
        if (weight == complexd(0.0, 0.0)) continue;
        detail::for_each_codeword_index(params, sys, 0, t,
                                        [&](Index idx) { amps[static_cast<std::size_t>(idx)] = weight; });
    }
    return PureState(sys, std::move(amps));
}

// Encodes the LAST register of `joint` through the code while carrying the
// remaining registers along untouched. Output register order: the reference
// registers of `joint` first (unchanged), then the m code registers.
inline PureState encode_with_reference(const PureState& joint, const CodeParams& params) {
    const int r = joint.system.register_count();
    const int secret_dim = joint.system.dims[static_cast<std::size_t>(r - 1)];
    if (secret_dim > params.s)
        throw BadSecretDimensionError("secret register dimension exceeds the code's secret dimension");

    std::vector<int> dims(joint.system.dims.begin(), joint.system.dims.end() - 1);
    dims.insert(dims.end(), static_cast<std::size_t>(params.m), params.q.q);
    RegisterSystem sys(dims);
    const int ref_count = r - 1;

    std::vector<complexd> amps(static_cast<std::size_t>(sys.dimension()), complexd(0.0, 0.0));
    const double branch = detail::branch_amplitude(params);
    Index code_dim = 1;
    for (int j = 0; j < params.m; ++j) code_dim *= params.q.q;
    // Full index = ref_index * code_dim + code_index under the
    // most-significant-first convention with the code block trailing.
    for (Index jidx = 0; jidx < joint.system.dimension(); ++jidx) {
        const complexd amp = joint.amps[static_cast<std::size_t>(jidx)];
        if (amp == complexd(0.0, 0.0)) continue;
        const Index ref_index = jidx / secret_dim;
        const int t = static_cast<int>(jidx % secret_dim);
        const complexd weight = amp * branch;
        detail::for_each_codeword_index(params, sys, ref_count, t, [&](Index idx) {
            amps[static_cast<std::size_t>(ref_index * code_dim + idx)] += weight;
        });
    }
    return PureState(sys, std::move(amps));
}

namespace detail {

// Complement points of the subset, ascending by coordinate, padded with the
// smallest unused field elements up to k-1 entries so the step-3 Vandermonde
// map stays square and invertible even when m < 2k-1.
inline FieldVector complement_points_padded(const CodeParams& params,
                                            const std::vector<int>& subset) {
    FieldVector w;
    for (int j = 0; j < params.m; ++j)
        if (!std::binary_search(subset.begin(), subset.end(), j))
            w.push_back(params.points[static_cast<std::size_t>(j)]);
    const std::size_t need = static_cast<std::size_t>(params.k - 1);
    for (int v = 0; w.size() < need; ++v) {
        if (v >= params.q.q) throw ParamViolationError("field too small to pad decode points");
        if (std::find(w.begin(), w.end(), v) == w.end()) w.push_back(v);
    }
    return w;
}

}  // namespace detail

// Recovers the secret from the k code registers named by `subset` (coordinate
// indices in [0, m), acting on the last m registers of `state`). The circuit
// touches only those k registers:
//   1. invert the subset's Vandermonde map, exposing the coefficients;
//   2. cycle the subset so its lowest register holds the leading coefficient;
//   3. re-evaluate the remaining coefficients at the complement points;
//   4. add the leading coefficient times (complement point)^{k-1} to each,
//      which leaves each of those registers equal to a coordinate the
//      environment already holds.
// Afterwards the subset's lowest register carries the secret, disentangled
// from every other register.
inline PureState decode_subset(const PureState& state, const std::vector<int>& subset,
                               const CodeParams& params) {
    if (static_cast<int>(subset.size()) != params.k)
        throw WrongSubsetSizeError("decoding needs exactly k coordinates");
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= params.m)
            throw WrongSubsetSizeError("subset coordinate out of range");
        if (i + 1 < sorted.size() && sorted[i] == sorted[i + 1])
            throw WrongSubsetSizeError("subset coordinates must be distinct");
    }
    const int base = state.system.register_count() - params.m;
    if (base < 0) throw DimensionMismatchError("state has fewer registers than code coordinates");
    for (int j = 0; j < params.m; ++j)
        if (state.system.dims[static_cast<std::size_t>(base + j)] != params.q.q)
            throw DimensionMismatchError("code registers must have dimension q");

    std::vector<int> regs;
    for (int coord : sorted) regs.push_back(base + coord);

    FieldVector z;
    for (int coord : sorted) z.push_back(params.points[static_cast<std::size_t>(coord)]);
    PureState current =
        apply_label_matrix(state, mat_inverse(vandermonde(z, params.k, params.q), params.q), regs,
                           params.q);

    if (params.k == 1) return current;

    std::vector<int> perm(static_cast<std::size_t>(state.system.register_count()));
    for (int j = 0; j < state.system.register_count(); ++j) perm[static_cast<std::size_t>(j)] = j;
    perm[static_cast<std::size_t>(regs[0])] = regs[static_cast<std::size_t>(params.k - 1)];
    for (int j = 1; j < params.k; ++j)
        perm[static_cast<std::size_t>(regs[static_cast<std::size_t>(j)])] =
            regs[static_cast<std::size_t>(j - 1)];
    current = permute_registers(current, perm);

    const FieldVector w = detail::complement_points_padded(params, sorted);
    std::vector<int> tail(regs.begin() + 1, regs.end());
    current = apply_label_matrix(current, vandermonde(w, params.k - 1, params.q), tail, params.q);

    const int env_count = params.m - params.k;
    for (int j = 0; j < env_count; ++j)
        current = add_scaled_register(current, regs[0], tail[static_cast<std::size_t>(j)],
                                      mod_pow(w[static_cast<std::size_t>(j)], params.k - 1, params.q),
                                      params.q);
    return current;
}

// Encodings of the s basis secrets, in order.
inline std::vector<PureState> code_basis(const CodeParams& params) {
    std::vector<PureState> basis;
    for (int t = 0; t < params.s; ++t) {
        std::vector<complexd> secret(static_cast<std::size_t>(params.s), complexd(0.0, 0.0));
        secret[static_cast<std::size_t>(t)] = 1.0;
        basis.push_back(encode(secret, params));
    }
    return basis;
}

struct ClassicalCode {
    std::vector<FieldVector> codewords;
};

enum class WhichCode { C1, C2 };

// C1: evaluations of all degree <= k-1 polynomials. C2: the sublattice with
// leading coefficient zero.
inline ClassicalCode classical_code(const CodeParams& params, WhichCode which) {
    const int coeff_count = which == WhichCode::C1 ? params.k : params.k - 1;
    long long total = 1;
    for (int i = 0; i < coeff_count; ++i) {
        if (total > (1LL << 20) / params.q.q) throw TooLargeError("codeword enumeration too large");
        total *= params.q.q;
    }
    ClassicalCode code;
    FieldVector c(static_cast<std::size_t>(params.k), 0);
    for (long long iter = 0; iter < total; ++iter) {
        FieldVector word(static_cast<std::size_t>(params.m));
        for (int j = 0; j < params.m; ++j)
            word[static_cast<std::size_t>(j)] =
                poly_eval(c, params.points[static_cast<std::size_t>(j)], params.q);
        code.codewords.push_back(std::move(word));
        for (int i = 0; i < coeff_count; ++i) {
            if (++c[static_cast<std::size_t>(i)] < params.q.q) break;
            c[static_cast<std::size_t>(i)] = 0;
        }
    }
    return code;
}

namespace detail {

inline int weight(const FieldVector& v) {
    int w = 0;
    for (int e : v)
        if (e != 0) ++w;
    return w;
}

}  // namespace detail

// (min weight of C1, min weight of the dual of C2), both by exhaustive
// enumeration. The smaller of the two is the erasure distance m - k + 1.
inline std::pair<int, int> min_distance_check(const CodeParams& params) {
    const ClassicalCode c1 = classical_code(params, WhichCode::C1);
    int dist1 = params.m + 1;
    for (const FieldVector& word : c1.codewords) {
        const int w = detail::weight(word);
        if (w > 0) dist1 = std::min(dist1, w);
    }

    // v is in the dual of C2 iff it annihilates the monomial generators
    // (x_0^i, ..., x_{m-1}^i) for i = 0, ..., k-2.
    std::vector<FieldVector> generators;
    for (int i = 0; i + 1 < params.k; ++i) {
        FieldVector g(static_cast<std::size_t>(params.m));
        for (int j = 0; j < params.m; ++j)
            g[static_cast<std::size_t>(j)] =
                mod_pow(params.points[static_cast<std::size_t>(j)], i, params.q);
        generators.push_back(std::move(g));
    }
    long long total = 1;
    for (int j = 0; j < params.m; ++j) {
        if (total > (1LL << 20) / params.q.q) throw TooLargeError("dual-code enumeration too large");
        total *= params.q.q;
    }
    int dist2 = params.m + 1;
    FieldVector v(static_cast<std::size_t>(params.m), 0);
    for (long long iter = 0; iter < total; ++iter) {
        bool in_dual = true;
        for (const FieldVector& g : generators) {
            long long dot = 0;
            for (int j = 0; j < params.m; ++j)
                dot += static_cast<long long>(g[static_cast<std::size_t>(j)]) *
                       v[static_cast<std::size_t>(j)];
            if (mod_reduce(dot, params.q) != 0) {
                in_dual = false;
                break;
            }
        }
        if (in_dual) {
            const int w = detail::weight(v);
            if (w > 0) dist2 = std::min(dist2, w);
        }
        for (int j = 0; j < params.m; ++j) {
            if (++v[static_cast<std::size_t>(j)] < params.q.q) break;
            v[static_cast<std::size_t>(j)] = 0;
        }
    }
    return {dist1, dist2};
}

}  // namespace qss
