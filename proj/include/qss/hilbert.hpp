#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "qss/errors.hpp"
#include "qss/field.hpp"
#include "qss/linalg.hpp"

namespace qss {

using Index = std::int64_t;

// A row of qudit registers with individual dimensions. Basis index convention:
// register 0 is most significant, i.e.
//     index(y_0, ..., y_{r-1}) = sum_j y_j * prod_{l > j} dims[l].
struct RegisterSystem {
    std::vector<int> dims;

    explicit RegisterSystem(std::vector<int> register_dims) : dims(std::move(register_dims)) {
        if (dims.empty())
            throw DimensionMismatchError("register system needs at least one register");
        total_ = 1;
        for (int d : dims) {
            if (d < 2) throw DimensionMismatchError("register dimension must be >= 2");
            if (total_ > kMaxDimension / d)
                throw TooLargeError("total dimension exceeds dense-storage limit");
            total_ *= d;
        }
        strides_.assign(dims.size(), 1);
        for (int j = static_cast<int>(dims.size()) - 2; j >= 0; --j)
            strides_[j] = strides_[j + 1] * dims[j + 1];
    }

    int register_count() const { return static_cast<int>(dims.size()); }
    Index dimension() const { return total_; }
    Index stride(int reg) const { return strides_[static_cast<std::size_t>(reg)]; }

    int label_at(Index index, int reg) const {
        return static_cast<int>((index / stride(reg)) % dims[static_cast<std::size_t>(reg)]);
    }

    Index index_of(const std::vector<int>& labels) const {
        if (static_cast<int>(labels.size()) != register_count())
            throw LabelOutOfRangeError("index_of: one label per register required");
        Index idx = 0;
        for (int j = 0; j < register_count(); ++j) {
            if (labels[j] < 0 || labels[j] >= dims[static_cast<std::size_t>(j)])
                throw LabelOutOfRangeError("index_of: label exceeds register dimension");
            idx += static_cast<Index>(labels[j]) * stride(j);
        }
        return idx;
    }

    std::vector<int> labels_of(Index index) const {
        if (index < 0 || index >= total_) throw LabelOutOfRangeError("labels_of: index out of range");
        std::vector<int> labels(static_cast<std::size_t>(register_count()));
        for (int j = 0; j < register_count(); ++j) labels[j] = label_at(index, j);
        return labels;
    }

    friend bool operator==(const RegisterSystem& a, const RegisterSystem& b) {
        return a.dims == b.dims;
    }

private:
    std::vector<Index> strides_;
    Index total_ = 0;
    static constexpr Index kMaxDimension = Index(1) << 26;
};

// Normalized state vector over a register system.
struct PureState {
    RegisterSystem system;
    std::vector<complexd> amps;

    PureState(RegisterSystem sys, std::vector<complexd> amplitudes)
        : system(std::move(sys)), amps(std::move(amplitudes)) {
        if (static_cast<Index>(amps.size()) != system.dimension())
            throw DimensionMismatchError("state vector length must equal total dimension");
        if (std::abs(norm_sq() - 1.0) > 1e-12)
            throw Error("state vector must be normalized");
    }

    // Rescales to unit norm before constructing; rejects the zero vector.
    static PureState normalized(RegisterSystem sys, std::vector<complexd> amplitudes) {
        double norm_sq = 0.0;
        for (const auto& a : amplitudes) norm_sq += std::norm(a);
        if (norm_sq <= 0.0) throw Error("cannot normalize the zero vector");
        double inv = 1.0 / std::sqrt(norm_sq);
        for (auto& a : amplitudes) a *= inv;
        return PureState(std::move(sys), std::move(amplitudes));
    }

    double norm_sq() const {
        double acc = 0.0;
        for (const auto& a : amps) acc += std::norm(a);
        return acc;
    }

    // <this|other>
    complexd inner(const PureState& other) const {
        if (!(system == other.system)) throw DimensionMismatchError("inner: systems differ");
        complexd acc = 0.0;
        for (std::size_t i = 0; i < amps.size(); ++i) acc += std::conj(amps[i]) * other.amps[i];
        return acc;
    }
};

inline PureState basis_state(const RegisterSystem& system, const std::vector<int>& labels) {
    std::vector<complexd> amps(static_cast<std::size_t>(system.dimension()), complexd(0.0, 0.0));
    amps[static_cast<std::size_t>(system.index_of(labels))] = 1.0;
    return PureState(system, std::move(amps));
}

namespace detail {

inline void validate_label_registers(const RegisterSystem& system,
                                     const std::vector<int>& registers, const Prime& p) {
    std::vector<int> seen;
    for (int reg : registers) {
        if (reg < 0 || reg >= system.register_count())
            throw DimensionMismatchError("register index out of range");
        if (std::find(seen.begin(), seen.end(), reg) != seen.end())
            throw DimensionMismatchError("register list must be distinct");
        seen.push_back(reg);
        if (system.dims[static_cast<std::size_t>(reg)] != p.q)
            throw DimensionMismatchError("targeted register dimension must equal q");
    }
}

}  // namespace detail

// Relabels basis states on the listed registers by the row-vector action
// |y> -> |y M mod q>; a basis permutation whenever M is invertible mod q
// (which is required and checked).
inline PureState apply_label_matrix(const PureState& state, const FieldMatrix& m,
                                    const std::vector<int>& registers, const Prime& p) {
    const int d = static_cast<int>(registers.size());
    if (m.rows != d || m.cols != d)
        throw DimensionMismatchError("apply_label_matrix: matrix must be d x d for d registers");
    detail::validate_label_registers(state.system, registers, p);
    mat_inverse(m, p);  // invertibility check; throws SingularMatrixError

    const RegisterSystem& sys = state.system;
    const Index total = sys.dimension();
    std::vector<complexd> out(static_cast<std::size_t>(total), complexd(0.0, 0.0));
    FieldVector y(static_cast<std::size_t>(d));
    for (Index idx = 0; idx < total; ++idx) {
        const complexd amp = state.amps[static_cast<std::size_t>(idx)];
        if (amp == complexd(0.0, 0.0)) continue;
        for (int j = 0; j < d; ++j) y[static_cast<std::size_t>(j)] = sys.label_at(idx, registers[j]);
        FieldVector mapped = row_times_matrix(y, m, p);
        Index shifted = idx;
        for (int j = 0; j < d; ++j)
            shifted += static_cast<Index>(mapped[static_cast<std::size_t>(j)] -
                                          y[static_cast<std::size_t>(j)]) *
                       sys.stride(registers[j]);
        out[static_cast<std::size_t>(shifted)] = amp;
    }
    return PureState(sys, std::move(out));
}

// Relabels registers: new register r carries what old register perm[r] held.
// Register dimensions move with their contents.
inline PureState permute_registers(const PureState& state, const std::vector<int>& perm) {
    const RegisterSystem& sys = state.system;
    const int r = sys.register_count();
    if (static_cast<int>(perm.size()) != r)
        throw InvalidPermutationError("permute_registers: one entry per register required");
    std::vector<bool> hit(static_cast<std::size_t>(r), false);
    for (int v : perm) {
        if (v < 0 || v >= r || hit[static_cast<std::size_t>(v)])
            throw InvalidPermutationError("permute_registers: not a permutation");
        hit[static_cast<std::size_t>(v)] = true;
    }
    std::vector<int> new_dims(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) new_dims[static_cast<std::size_t>(j)] = sys.dims[static_cast<std::size_t>(perm[j])];
    RegisterSystem new_sys(new_dims);

    std::vector<complexd> out(static_cast<std::size_t>(sys.dimension()), complexd(0.0, 0.0));
    std::vector<int> labels(static_cast<std::size_t>(r));
    for (Index idx = 0; idx < sys.dimension(); ++idx) {
        const complexd amp = state.amps[static_cast<std::size_t>(idx)];
        if (amp == complexd(0.0, 0.0)) continue;
        Index nidx = 0;
        for (int j = 0; j < r; ++j)
            nidx += static_cast<Index>(sys.label_at(idx, perm[j])) * new_sys.stride(j);
        out[static_cast<std::size_t>(nidx)] = amp;
    }
    return PureState(new_sys, std::move(out));
}

// |..., y_src, ..., y_dst, ...> -> |..., y_src, ..., y_dst + factor * y_src, ...> mod q.
inline PureState add_scaled_register(const PureState& state, int src, int dst, int factor,
                                     const Prime& p) {
    const RegisterSystem& sys = state.system;
    if (src == dst) throw DimensionMismatchError("add_scaled_register: src and dst must differ");
    detail::validate_label_registers(sys, {src, dst}, p);
    const int f = mod_reduce(factor, p);
    std::vector<complexd> out(static_cast<std::size_t>(sys.dimension()), complexd(0.0, 0.0));
    for (Index idx = 0; idx < sys.dimension(); ++idx) {
        const complexd amp = state.amps[static_cast<std::size_t>(idx)];
        if (amp == complexd(0.0, 0.0)) continue;
        const int ys = sys.label_at(idx, src);
        const int yd = sys.label_at(idx, dst);
        const int yd2 = mod_reduce(yd + static_cast<long long>(f) * ys, p);
        out[static_cast<std::size_t>(idx + static_cast<Index>(yd2 - yd) * sys.stride(dst))] = amp;
    }
    return PureState(sys, std::move(out));
}

inline PureState tensor(const PureState& a, const PureState& b) {
    std::vector<int> dims = a.system.dims;
    dims.insert(dims.end(), b.system.dims.begin(), b.system.dims.end());
    RegisterSystem sys(dims);
    std::vector<complexd> out(static_cast<std::size_t>(sys.dimension()));
    const Index db = b.system.dimension();
    for (Index i = 0; i < a.system.dimension(); ++i)
        for (Index j = 0; j < db; ++j)
            out[static_cast<std::size_t>(i * db + j)] =
                a.amps[static_cast<std::size_t>(i)] * b.amps[static_cast<std::size_t>(j)];
    return PureState(sys, std::move(out));
}

// Hermitian, unit-trace operator over a register system. Positivity is not
// re-checked on every construction; call min_eigenvalue() where it matters.
struct DensityMatrix {
    RegisterSystem system;
    CMatrix entries;

    DensityMatrix(RegisterSystem sys, CMatrix m)
        : system(std::move(sys)), entries(std::move(m)) {
        if (entries.rows != entries.cols ||
            static_cast<Index>(entries.rows) != system.dimension())
            throw DimensionMismatchError("density matrix shape must match register system");
        if (!is_hermitian(entries, 1e-12))
            throw Error("density matrix must be Hermitian");
        const complexd tr = trace_of(entries);
        if (std::abs(tr.real() - 1.0) > 1e-12 || std::abs(tr.imag()) > 1e-12)
            throw Error("density matrix must have unit trace");
    }

    double purity() const {
        double acc = 0.0;
        for (const auto& v : entries.data) acc += std::norm(v);
        return acc;  // tr(rho^2) for Hermitian rho
    }

    std::vector<double> eigenvalues() const { return hermitian_eigenvalues(entries); }

    int rank(double tol = 1e-8) const {
        int r = 0;
        for (double v : eigenvalues())
            if (v > tol) ++r;
        return r;
    }

    double min_eigenvalue() const { return eigenvalues().front(); }
};

namespace detail {

struct SplitIndexer {
    std::vector<int> keep;        // ascending register indices
    std::vector<int> kept_dims;
    Index kept_total = 1;
    Index env_total = 1;
    std::vector<Index> kept_strides;  // strides within the kept subsystem
    std::vector<int> env_regs;
    std::vector<Index> env_strides;   // strides within the environment subsystem

    SplitIndexer(const RegisterSystem& sys, std::vector<int> keep_set) : keep(std::move(keep_set)) {
        std::sort(keep.begin(), keep.end());
        keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
        if (keep.empty()) throw EmptyKeepSetError("keep set must be nonempty");
        for (int reg : keep)
            if (reg < 0 || reg >= sys.register_count())
                throw LabelOutOfRangeError("keep set register out of range");
        for (int reg = 0; reg < sys.register_count(); ++reg)
            if (!std::binary_search(keep.begin(), keep.end(), reg)) env_regs.push_back(reg);
        for (int reg : keep) kept_dims.push_back(sys.dims[static_cast<std::size_t>(reg)]);

        kept_strides.assign(keep.size(), 1);
        for (int j = static_cast<int>(keep.size()) - 2; j >= 0; --j)
            kept_strides[static_cast<std::size_t>(j)] =
                kept_strides[static_cast<std::size_t>(j + 1)] * kept_dims[static_cast<std::size_t>(j + 1)];
        for (int d : kept_dims) kept_total *= d;

        env_strides.assign(env_regs.size(), 1);
        for (int j = static_cast<int>(env_regs.size()) - 2; j >= 0; --j)
            env_strides[static_cast<std::size_t>(j)] =
                env_strides[static_cast<std::size_t>(j + 1)] *
                sys.dims[static_cast<std::size_t>(env_regs[static_cast<std::size_t>(j + 1)])];
        for (int reg : env_regs) env_total *= sys.dims[static_cast<std::size_t>(reg)];
    }

    Index kept_index(const RegisterSystem& sys, Index full) const {
        Index acc = 0;
        for (std::size_t j = 0; j < keep.size(); ++j)
            acc += static_cast<Index>(sys.label_at(full, keep[j])) * kept_strides[j];
        return acc;
    }

    Index env_index(const RegisterSystem& sys, Index full) const {
        Index acc = 0;
        for (std::size_t j = 0; j < env_regs.size(); ++j)
            acc += static_cast<Index>(sys.label_at(full, env_regs[j])) * env_strides[j];
        return acc;
    }
};

}  // namespace detail

// Reduced density matrix over the kept registers (ascending index order).
inline DensityMatrix partial_trace(const PureState& state, const std::vector<int>& keep) {
    detail::SplitIndexer split(state.system, keep);
    const Index dk = split.kept_total;
    const Index de = split.env_total;
    std::vector<complexd> m(static_cast<std::size_t>(dk * de), complexd(0.0, 0.0));
    for (Index idx = 0; idx < state.system.dimension(); ++idx) {
        const complexd amp = state.amps[static_cast<std::size_t>(idx)];
        if (amp == complexd(0.0, 0.0)) continue;
        m[static_cast<std::size_t>(split.kept_index(state.system, idx) * de +
                                   split.env_index(state.system, idx))] = amp;
    }
    CMatrix rho(static_cast<int>(dk), static_cast<int>(dk));
    for (Index a = 0; a < dk; ++a)
        for (Index b = 0; b <= a; ++b) {
            complexd acc = 0.0;
            const complexd* ra = &m[static_cast<std::size_t>(a * de)];
            const complexd* rb = &m[static_cast<std::size_t>(b * de)];
            for (Index e = 0; e < de; ++e) acc += ra[e] * std::conj(rb[e]);
            rho(static_cast<int>(a), static_cast<int>(b)) = acc;
            rho(static_cast<int>(b), static_cast<int>(a)) = std::conj(acc);
        }
    return DensityMatrix(RegisterSystem(split.kept_dims), std::move(rho));
}

inline DensityMatrix partial_trace(const DensityMatrix& dm, const std::vector<int>& keep) {
    detail::SplitIndexer split(dm.system, keep);
    const Index dk = split.kept_total;
    const Index de = split.env_total;
    // full index for each (kept, env) pair
    std::vector<Index> full(static_cast<std::size_t>(dk * de));
    for (Index idx = 0; idx < dm.system.dimension(); ++idx)
        full[static_cast<std::size_t>(split.kept_index(dm.system, idx) * de +
                                      split.env_index(dm.system, idx))] = idx;
    CMatrix rho(static_cast<int>(dk), static_cast<int>(dk));
    for (Index a = 0; a < dk; ++a)
        for (Index b = 0; b < dk; ++b) {
            complexd acc = 0.0;
            for (Index e = 0; e < de; ++e)
                acc += dm.entries(static_cast<int>(full[static_cast<std::size_t>(a * de + e)]),
                                  static_cast<int>(full[static_cast<std::size_t>(b * de + e)]));
            rho(static_cast<int>(a), static_cast<int>(b)) = acc;
        }
    return DensityMatrix(RegisterSystem(split.kept_dims), std::move(rho));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> dims = a.system.dims;
    dims.insert(dims.end(), b.system.dims.begin(), b.system.dims.end());
    return DensityMatrix(RegisterSystem(dims), kron(a.entries, b.entries));
}

// <psi| rho |psi>
inline double fidelity(const DensityMatrix& rho, const PureState& psi) {
    if (!(rho.system == psi.system)) throw DimensionMismatchError("fidelity: systems differ");
    const Index n = rho.system.dimension();
    complexd acc = 0.0;
    for (Index r = 0; r < n; ++r) {
        if (psi.amps[static_cast<std::size_t>(r)] == complexd(0.0, 0.0)) continue;
        complexd row = 0.0;
        for (Index c = 0; c < n; ++c)
            row += rho.entries(static_cast<int>(r), static_cast<int>(c)) *
                   psi.amps[static_cast<std::size_t>(c)];
        acc += std::conj(psi.amps[static_cast<std::size_t>(r)]) * row;
    }
    return std::clamp(acc.real(), 0.0, 1.0);
}

// (1/2) * sum of |eigenvalues| of (rho - sigma).
inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!(rho.system == sigma.system)) throw DimensionMismatchError("trace_distance: systems differ");
    const std::vector<double> values = hermitian_eigenvalues(rho.entries - sigma.entries);
    double acc = 0.0;
    for (double v : values) acc += std::abs(v);
    return std::clamp(0.5 * acc, 0.0, 1.0);
}

// Operator on a subset of registers (identity elsewhere). `support` is
// ascending; `matrix` is dense on the support subsystem with the same
// most-significant-first index convention; `support_dims` pins the expected
// dimension of each support register.
struct SubsetOperator {
    std::vector<int> support;
    std::vector<int> support_dims;
    CMatrix matrix;
};

// X^a Z^b on the support registers (all dimension q):
//   (X^a Z^b)|y> = omega^(b . y) |y + a mod q>,  omega = exp(2 pi i / q).
inline SubsetOperator gen_pauli(const FieldVector& shifts, const FieldVector& phases,
                                const std::vector<int>& support, const Prime& p) {
    const int w = static_cast<int>(support.size());
    if (static_cast<int>(shifts.size()) != w || static_cast<int>(phases.size()) != w)
        throw DimensionMismatchError("gen_pauli: need one (shift, phase) pair per support register");
    for (int j = 1; j < w; ++j)
        if (support[j] <= support[j - 1])
            throw DimensionMismatchError("gen_pauli: support must be strictly ascending");
    Index dk = 1;
    for (int j = 0; j < w; ++j) {
        if (dk > (Index(1) << 22) / p.q) throw TooLargeError("gen_pauli: operator too large to materialize");
        dk *= p.q;
    }
    std::vector<complexd> omega_pow(static_cast<std::size_t>(p.q));
    for (int t = 0; t < p.q; ++t) {
        double angle = 6.283185307179586476925287 * t / p.q;
        omega_pow[static_cast<std::size_t>(t)] = complexd(std::cos(angle), std::sin(angle));
    }
    CMatrix m(static_cast<int>(dk), static_cast<int>(dk));
    std::vector<int> u(static_cast<std::size_t>(w), 0);
    for (Index col = 0; col < dk; ++col) {
        Index row = 0;
        long long phase_exp = 0;
        for (int j = 0; j < w; ++j) {
            const int uj = u[static_cast<std::size_t>(j)];
            const int shifted = mod_reduce(uj + shifts[static_cast<std::size_t>(j)], p);
            row = row * p.q + shifted;
            phase_exp += static_cast<long long>(phases[static_cast<std::size_t>(j)]) * uj;
        }
        m(static_cast<int>(row), static_cast<int>(col)) =
            omega_pow[static_cast<std::size_t>(mod_reduce(phase_exp, p))];
        for (int j = w - 1; j >= 0; --j) {  // odometer
            if (++u[static_cast<std::size_t>(j)] < p.q) break;
            u[static_cast<std::size_t>(j)] = 0;
        }
    }
    SubsetOperator op;
    op.support = support;
    op.support_dims.assign(static_cast<std::size_t>(w), p.q);
    op.matrix = std::move(m);
    return op;
}

namespace detail {

inline void validate_support(const RegisterSystem& sys, const SubsetOperator& op) {
    const int w = static_cast<int>(op.support.size());
    if (w == 0) throw DimensionMismatchError("operator support must be nonempty");
    Index dk = 1;
    for (int j = 0; j < w; ++j) {
        const int reg = op.support[static_cast<std::size_t>(j)];
        if (reg < 0 || reg >= sys.register_count())
            throw DimensionMismatchError("operator support register out of range");
        if (j > 0 && reg <= op.support[static_cast<std::size_t>(j - 1)])
            throw DimensionMismatchError("operator support must be strictly ascending");
        const int dim = sys.dims[static_cast<std::size_t>(reg)];
        if (!op.support_dims.empty() && op.support_dims[static_cast<std::size_t>(j)] != dim)
            throw DimensionMismatchError("operator support dimension mismatch");
        dk *= dim;
    }
    if (op.matrix.rows != op.matrix.cols || static_cast<Index>(op.matrix.rows) != dk)
        throw DimensionMismatchError("operator matrix does not match support dimensions");
}

// Offsets of each support-subsystem basis label combination within the full
// index space, plus the support-subsystem index of a full index.
struct SupportIndexer {
    std::vector<Index> offsets;      // size = support subsystem dimension
    std::vector<int> support;
    std::vector<Index> sub_strides;  // strides within the support subsystem

    SupportIndexer(const RegisterSystem& sys, const std::vector<int>& support_regs)
        : support(support_regs) {
        const int w = static_cast<int>(support.size());
        std::vector<int> sdims(static_cast<std::size_t>(w));
        for (int j = 0; j < w; ++j) sdims[static_cast<std::size_t>(j)] = sys.dims[static_cast<std::size_t>(support[j])];
        sub_strides.assign(static_cast<std::size_t>(w), 1);
        for (int j = w - 2; j >= 0; --j)
            sub_strides[static_cast<std::size_t>(j)] =
                sub_strides[static_cast<std::size_t>(j + 1)] * sdims[static_cast<std::size_t>(j + 1)];
        Index dk = 1;
        for (int d : sdims) dk *= d;
        offsets.assign(static_cast<std::size_t>(dk), 0);
        std::vector<int> u(static_cast<std::size_t>(w), 0);
        for (Index t = 0; t < dk; ++t) {
            Index off = 0;
            for (int j = 0; j < w; ++j)
                off += static_cast<Index>(u[static_cast<std::size_t>(j)]) * sys.stride(support[j]);
            offsets[static_cast<std::size_t>(t)] = off;
            for (int j = w - 1; j >= 0; --j) {
                if (++u[static_cast<std::size_t>(j)] < sdims[static_cast<std::size_t>(j)]) break;
                u[static_cast<std::size_t>(j)] = 0;
            }
        }
    }

    Index sub_index(const RegisterSystem& sys, Index full) const {
        Index acc = 0;
        for (std::size_t j = 0; j < support.size(); ++j)
            acc += static_cast<Index>(sys.label_at(full, support[j])) * sub_strides[j];
        return acc;
    }
};

inline std::vector<complexd> apply_matrix_raw(const PureState& state, const CMatrix& m,
                                              const detail::SupportIndexer& indexer) {
    const Index dk = static_cast<Index>(indexer.offsets.size());
    std::vector<complexd> out(state.amps.size(), complexd(0.0, 0.0));
    for (Index idx = 0; idx < state.system.dimension(); ++idx) {
        const complexd amp = state.amps[static_cast<std::size_t>(idx)];
        if (amp == complexd(0.0, 0.0)) continue;
        const Index col = indexer.sub_index(state.system, idx);
        const Index base = idx - indexer.offsets[static_cast<std::size_t>(col)];
        for (Index row = 0; row < dk; ++row) {
            const complexd e = m(static_cast<int>(row), static_cast<int>(col));
            if (e == complexd(0.0, 0.0)) continue;
            out[static_cast<std::size_t>(base + indexer.offsets[static_cast<std::size_t>(row)])] +=
                e * amp;
        }
    }
    return out;
}

}  // namespace detail

// <phi| (E tensor identity) |phi>
inline complexd expectation(const PureState& state, const SubsetOperator& op) {
    detail::validate_support(state.system, op);
    detail::SupportIndexer indexer(state.system, op.support);
    const std::vector<complexd> applied = detail::apply_matrix_raw(state, op.matrix, indexer);
    complexd acc = 0.0;
    for (std::size_t i = 0; i < applied.size(); ++i) acc += std::conj(state.amps[i]) * applied[i];
    return acc;
}

// Applies a unitary on the listed registers (ascending). The result must stay
// normalized, which the PureState constructor enforces.
inline PureState apply_unitary(const PureState& state, const CMatrix& u,
                               const std::vector<int>& registers) {
    SubsetOperator op;
    op.support = registers;
    op.matrix = u;
    detail::validate_support(state.system, op);
    detail::SupportIndexer indexer(state.system, registers);
    return PureState(state.system, detail::apply_matrix_raw(state, u, indexer));
}

}  // namespace qss
