#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qss/errors.hpp"
#include "qss/hilbert.hpp"
#include "qss/polycode.hpp"
#include "qss/scheme.hpp"

namespace qss {

namespace detail {

inline std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

inline std::string join_ints(const std::vector<int>& v) {
    if (v.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

// Advances c to the next size-|c| combination of {0, ..., n-1} in
// lexicographic order; false once exhausted.
inline bool next_combination(std::vector<int>& c, int n) {
    const int r = static_cast<int>(c.size());
    for (int i = r - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < n - (r - i)) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < r; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// |Phi> = sum_t |t, t> / sqrt(s) on register dimensions (dim_a, dim_b),
// dim_a, dim_b >= s.
inline PureState maximally_entangled_pair(int s, int dim_a, int dim_b) {
    if (s < 2 || dim_a < s || dim_b < s)
        throw DimensionMismatchError("entangled pair needs s <= both register dimensions");
    RegisterSystem sys({dim_a, dim_b});
    std::vector<complexd> amps(static_cast<std::size_t>(sys.dimension()), complexd(0.0, 0.0));
    const double r = 1.0 / std::sqrt(static_cast<double>(s));
    for (int t = 0; t < s; ++t)
        amps[static_cast<std::size_t>(sys.index_of({t, t}))] = r;
    return PureState(sys, std::move(amps));
}

// One split per probe secret; the shared family every subset check runs over.
inline std::vector<SharedState> make_probe_family(const SchemeSpec& spec,
                                                  std::uint64_t seed = 42) {
    std::vector<SharedState> family;
    for (const auto& probe : probe_secrets(spec.params.s, seed))
        family.push_back(split(spec, probe));
    return family;
}

// Maximum pairwise trace distance between the reduced states the given
// coordinates see, across the probe family. Zero means the coordinates learn
// nothing that distinguishes the probes.
inline double check_no_information(const std::vector<SharedState>& family,
                                   const std::vector<int>& coords) {
    if (coords.empty() || family.empty()) return 0.0;
    const int base = family.front().reference_count();
    std::vector<DensityMatrix> reduced;
    for (const SharedState& shared : family) {
        std::vector<int> regs;
        for (int c : coords) regs.push_back(base + c);
        reduced.push_back(partial_trace(shared.global, regs));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < reduced.size(); ++i)
        for (std::size_t j = i + 1; j < reduced.size(); ++j)
            worst = std::max(worst, trace_distance(reduced[i], reduced[j]));
    return worst;
}

// Minimum reconstruction fidelity over the probe family from the k
// lowest-indexed of the given coordinates, including an entanglement-fidelity
// variant where the secret is half of a maximally entangled pair.
inline double check_reconstruction(const std::vector<SharedState>& family,
                                   const std::vector<int>& coords) {
    if (family.empty()) throw Error("check_reconstruction: empty probe family");
    const SchemeSpec& spec = family.front().spec;
    if (static_cast<int>(coords.size()) < spec.k)
        throw SubsetTooSmallError("reconstruction needs at least k coordinates");
    std::vector<int> sorted = coords;
    std::sort(sorted.begin(), sorted.end());
    const std::vector<int> subset(sorted.begin(), sorted.begin() + spec.k);

    double worst = 1.0;
    for (const SharedState& shared : family) {
        PureState decoded = decode_subset(shared.global, subset, spec.params);
        const int out_reg = shared.reference_count() + subset.front();
        DensityMatrix rho = partial_trace(decoded, {out_reg});
        if (shared.secret.has_value())
            worst = std::min(worst, fidelity(rho, secret_state(*shared.secret, spec.params.q)));
    }

    const int s = spec.params.s;
    SharedState entangled =
        split_with_reference(spec, maximally_entangled_pair(s, s, s));
    PureState decoded = decode_subset(entangled.global, subset, spec.params);
    const int out_reg = entangled.reference_count() + subset.front();
    DensityMatrix rho = partial_trace(decoded, {0, out_reg});
    worst = std::min(worst, fidelity(rho, maximally_entangled_pair(s, s, spec.params.q.q)));
    return worst;
}

struct SubsetVerdict {
    std::string verdict;  // authorized | unauthorized | intermediate
    double min_fidelity = std::numeric_limits<double>::quiet_NaN();
    double max_trace_distance = std::numeric_limits<double>::quiet_NaN();
};

// Empirical classification: authorized only if every probe reconstructs,
// unauthorized only if no probe pair is distinguishable, anything else is
// intermediate.
inline SubsetVerdict classify_subset(const std::vector<SharedState>& family,
                                     const std::vector<int>& coords, double tol = 1e-9) {
    const SchemeSpec& spec = family.front().spec;
    SubsetVerdict v;
    if (static_cast<int>(coords.size()) >= spec.k) {
        v.min_fidelity = check_reconstruction(family, coords);
        v.verdict = v.min_fidelity >= 1.0 - tol ? "authorized" : "intermediate";
    } else {
        v.max_trace_distance = check_no_information(family, coords);
        v.verdict = v.max_trace_distance <= tol ? "unauthorized" : "intermediate";
    }
    return v;
}

struct ErasureCheckResult {
    bool holds;
    std::string violation;          // empty when holds
    std::vector<complexd> c_table;  // c(E) indexed lexicographically by (shifts, phases)
};

// Erasure-correction conditions on the coordinate set K: over the full
// generalized Pauli basis E = X^a Z^b supported on K, every cross matrix
// element <phi_i|E|phi_j> (i != j) vanishes and every diagonal element
// <phi_i|E|phi_i> equals the same constant c(E). Holding certifies that the
// code corrects erasures on K, i.e. the complement can recover the secret.
// Aborts with the first violating operator when the conditions fail.
inline ErasureCheckResult check_erasure_conditions(const std::vector<PureState>& basis,
                                                   const std::vector<int>& coords,
                                                   const Prime& p, int max_support = 3,
                                                   double tol = 1e-9) {
    if (basis.empty()) throw Error("erasure check needs at least one basis state");
    for (const PureState& st : basis)
        if (!(st.system == basis.front().system))
            throw DimensionMismatchError("erasure check: basis states on different systems");
    std::vector<int> support = coords;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const int w = static_cast<int>(support.size());
    if (w > max_support)
        throw TooLargeError("erasure check support exceeds the operator-basis cap");
    const RegisterSystem& sys = basis.front().system;
    for (int reg : support) {
        if (reg < 0 || reg >= sys.register_count())
            throw LabelOutOfRangeError("erasure check coordinate out of range");
        if (sys.dims[static_cast<std::size_t>(reg)] != p.q)
            throw DimensionMismatchError("erasure check coordinates must have dimension q");
    }

    const std::size_t nb = basis.size();
    struct Entry {
        Index idx;
        complexd amp;
        std::vector<int> labels;
    };
    std::vector<std::vector<Entry>> entries(nb);
    for (std::size_t t = 0; t < nb; ++t)
        for (Index idx = 0; idx < sys.dimension(); ++idx) {
            const complexd amp = basis[t].amps[static_cast<std::size_t>(idx)];
            if (amp == complexd(0.0, 0.0)) continue;
            std::vector<int> labels(static_cast<std::size_t>(w));
            for (int j = 0; j < w; ++j) labels[static_cast<std::size_t>(j)] = sys.label_at(idx, support[static_cast<std::size_t>(j)]);
            entries[t].push_back({idx, amp, std::move(labels)});
        }

    std::vector<complexd> omega_pow(static_cast<std::size_t>(p.q));
    for (int t = 0; t < p.q; ++t) {
        const double angle = 6.283185307179586476925287 * t / p.q;
        omega_pow[static_cast<std::size_t>(t)] = complexd(std::cos(angle), std::sin(angle));
    }

    long long op_side = 1;
    for (int j = 0; j < w; ++j) op_side *= p.q;

    ErasureCheckResult result{true, "", {}};
    result.c_table.reserve(static_cast<std::size_t>(op_side * op_side));
    std::vector<int> a(static_cast<std::size_t>(w), 0);
    std::vector<std::vector<Index>> shifted(nb);
    std::vector<complexd> vals(nb * nb);
    for (long long ia = 0; ia < op_side; ++ia) {
        for (std::size_t t = 0; t < nb; ++t) {
            shifted[t].assign(entries[t].size(), 0);
            for (std::size_t e = 0; e < entries[t].size(); ++e) {
                Index idx = entries[t][e].idx;
                for (int j = 0; j < w; ++j) {
                    const int y = entries[t][e].labels[static_cast<std::size_t>(j)];
                    const int y2 = (y + a[static_cast<std::size_t>(j)]) % p.q;
                    idx += static_cast<Index>(y2 - y) * sys.stride(support[static_cast<std::size_t>(j)]);
                }
                shifted[t][e] = idx;
            }
        }
        std::vector<int> b(static_cast<std::size_t>(w), 0);
        for (long long ib = 0; ib < op_side; ++ib) {
            std::fill(vals.begin(), vals.end(), complexd(0.0, 0.0));
            for (std::size_t j = 0; j < nb; ++j)
                for (std::size_t e = 0; e < entries[j].size(); ++e) {
                    long long dot = 0;
                    for (int t = 0; t < w; ++t)
                        dot += static_cast<long long>(b[static_cast<std::size_t>(t)]) *
                               entries[j][e].labels[static_cast<std::size_t>(t)];
                    const complexd term =
                        omega_pow[static_cast<std::size_t>(dot % p.q)] * entries[j][e].amp;
                    const Index target = shifted[j][e];
                    for (std::size_t i = 0; i < nb; ++i)
                        vals[i * nb + j] +=
                            std::conj(basis[i].amps[static_cast<std::size_t>(target)]) * term;
                }
            for (std::size_t i = 0; i < nb && result.holds; ++i)
                for (std::size_t j = 0; j < nb && result.holds; ++j) {
                    if (i == j) continue;
                    if (std::abs(vals[i * nb + j]) > tol) {
                        result.holds = false;
                        result.violation = "off-diagonal <phi_" + std::to_string(i) + "|E|phi_" +
                                           std::to_string(j) + "> = " +
                                           detail::fmt_g(std::abs(vals[i * nb + j])) +
                                           " for shifts (" + detail::join_ints(a) + ") phases (" +
                                           detail::join_ints(b) + ")";
                    }
                }
            for (std::size_t i = 1; i < nb && result.holds; ++i)
                if (std::abs(vals[i * nb + i] - vals[0]) > tol) {
                    result.holds = false;
                    result.violation = "diagonal <phi_" + std::to_string(i) +
                                       "|E|phi_i> deviates by " +
                                       detail::fmt_g(std::abs(vals[i * nb + i] - vals[0])) +
                                       " for shifts (" + detail::join_ints(a) + ") phases (" +
                                       detail::join_ints(b) + ")";
                }
            if (!result.holds) {
                result.c_table.clear();
                return result;
            }
            result.c_table.push_back(vals[0]);
            for (int j = w - 1; j >= 0; --j) {
                if (++b[static_cast<std::size_t>(j)] < p.q) break;
                b[static_cast<std::size_t>(j)] = 0;
            }
        }
        for (int j = w - 1; j >= 0; --j) {
            if (++a[static_cast<std::size_t>(j)] < p.q) break;
            a[static_cast<std::size_t>(j)] = 0;
        }
    }
    return result;
}

// Structure check for pure schemes: every share subset must be
// the complement of an oppositely classified subset, and a pure threshold
// scheme must have n = 2k-1. Throws NotPureSchemeError when any probe leaves
// the retained coordinates in a mixed state.
inline bool check_pure_state_structure(const SchemeSpec& spec, std::uint64_t seed = 42,
                                       double tol = 1e-9) {
    const std::vector<SharedState> family = make_probe_family(spec, seed);
    if (!spec.discarded.empty()) {
        const std::vector<int> retained = spec.retained_coordinates();
        for (const SharedState& shared : family) {
            DensityMatrix rho = partial_trace(shared.global, retained);
            if (rho.purity() < 1.0 - tol)
                throw NotPureSchemeError("retained state is mixed for some probe secret");
        }
    }

    const int nb = static_cast<int>(spec.bundles.size());
    std::vector<int> cls(static_cast<std::size_t>(1) << nb, 0);  // 1 authorized, 0 unauthorized, -1 other
    for (int mask = 1; mask < (1 << nb); ++mask) {
        std::vector<int> coords;
        for (int b = 0; b < nb; ++b)
            if (mask & (1 << b))
                coords.insert(coords.end(), spec.bundles[static_cast<std::size_t>(b)].coords.begin(),
                              spec.bundles[static_cast<std::size_t>(b)].coords.end());
        std::sort(coords.begin(), coords.end());
        const SubsetVerdict v = classify_subset(family, coords, tol);
        cls[static_cast<std::size_t>(mask)] =
            v.verdict == "authorized" ? 1 : (v.verdict == "unauthorized" ? 0 : -1);
        if (cls[static_cast<std::size_t>(mask)] == -1) return false;
    }
    const int full = (1 << nb) - 1;
    for (int mask = 0; mask <= full; ++mask)
        if ((cls[static_cast<std::size_t>(mask)] == 1) ==
            (cls[static_cast<std::size_t>(full ^ mask)] == 1))
            return false;

    bool all_singleton = true;
    for (const Bundle& b : spec.bundles) all_singleton &= b.coords.size() == 1;
    if (all_singleton && spec.n != 2 * spec.k - 1) return false;
    return true;
}

struct SubsetVerdictReport {
    std::vector<int> share_indices;
    std::vector<int> coordinates;
    SubsetVerdict verdict;
    bool expected_authorized;
};

struct ErasureEquivalenceLine {
    std::vector<int> coords;
    bool holds;
    bool recon;
    bool equiv;
};

struct FullReportOptions {
    double tol = 1e-9;
    int erasure_cap = 3;
    std::uint64_t seed = 42;
    long long dimension_cap = 1000000;
    long long distance_cap = 10000;
};

struct VerificationReport {
    std::string summary;
    std::vector<SubsetVerdictReport> subsets;
    std::vector<ErasureEquivalenceLine> erasure_lines;
    bool subsets_ok = false;
    bool erasure_ok = false;
    bool distance_ok = false;
    bool structure_ok = false;
    bool pure_scheme = false;
    int dist_c1 = -1;
    int dist_c2_dual = -1;
    bool pass = false;
    std::string text;
};

namespace detail {

inline std::string render_spec_summary(const SchemeSpec& spec) {
    std::ostringstream out;
    out << "SCHEME k=" << spec.k << " n=" << spec.n << " q=" << spec.params.q.q
        << " m=" << spec.params.m << " s=" << spec.params.s
        << " points=" << join_ints(spec.params.points)
        << " discarded=" << join_ints(spec.discarded) << " bundles=";
    for (std::size_t i = 0; i < spec.bundles.size(); ++i) {
        if (i > 0) out << ';';
        out << spec.bundles[i].label << ':' << join_ints(spec.bundles[i].coords);
    }
    return out.str();
}

inline std::string fid_or_dash(double v) {
    return std::isnan(v) ? std::string("-") : fmt_g(v);
}

}  // namespace detail

// Exhaustive verification of one scheme: classifies every share subset,
// checks the erasure conditions against complement reconstruction on
// every small coordinate set, validates the classical minimum distance, and
// applies the pure-scheme structure corollaries where they bind.
inline VerificationReport full_report(const SchemeSpec& spec, FullReportOptions opt = {}) {
    long long dim = 1;
    for (int j = 0; j < spec.params.m; ++j) {
        dim *= spec.params.q.q;
        if (dim > opt.dimension_cap) throw TooLargeError("scheme exceeds the verification cap");
    }

    const std::vector<SharedState> family = make_probe_family(spec, opt.seed);
    VerificationReport report;
    report.summary = detail::render_spec_summary(spec);

    // Purity of the retained block decides which structure checks apply.
    report.pure_scheme = true;
    if (!spec.discarded.empty()) {
        const std::vector<int> retained = spec.retained_coordinates();
        for (const SharedState& shared : family) {
            if (partial_trace(shared.global, retained).purity() < 1.0 - opt.tol) {
                report.pure_scheme = false;
                break;
            }
        }
    }

    const int nb = static_cast<int>(spec.bundles.size());
    std::vector<int> cls(static_cast<std::size_t>(1) << nb, 0);
    report.subsets_ok = true;
    for (int size = 1; size <= nb; ++size) {
        std::vector<int> combo(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
        do {
            std::vector<int> coords;
            int mask = 0;
            for (int b : combo) {
                mask |= 1 << b;
                coords.insert(coords.end(), spec.bundles[static_cast<std::size_t>(b)].coords.begin(),
                              spec.bundles[static_cast<std::size_t>(b)].coords.end());
            }
            std::sort(coords.begin(), coords.end());
            SubsetVerdictReport entry;
            entry.share_indices = combo;
            entry.coordinates = coords;
            entry.verdict = classify_subset(family, coords, opt.tol);
            entry.expected_authorized = static_cast<int>(coords.size()) >= spec.k;
            const std::string expected = entry.expected_authorized ? "authorized" : "unauthorized";
            if (entry.verdict.verdict != expected) report.subsets_ok = false;
            cls[static_cast<std::size_t>(mask)] = entry.verdict.verdict == "authorized"
                                                      ? 1
                                                      : (entry.verdict.verdict == "unauthorized" ? 0 : -1);
            report.subsets.push_back(std::move(entry));
        } while (detail::next_combination(combo, nb));
    }

    // Erasure sweep on the underlying code: the conditions on K must hold
    // exactly when the complement of K retains enough coordinates to
    // reconstruct.
    const std::vector<PureState> basis = code_basis(spec.params);
    report.erasure_ok = true;
    for (int size = 0; size <= std::min(spec.params.m, opt.erasure_cap); ++size) {
        std::vector<int> combo(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
        bool more = true;
        while (more) {
            ErasureEquivalenceLine line;
            line.coords = combo;
            line.holds = check_erasure_conditions(basis, combo, spec.params.q, opt.erasure_cap,
                                                  opt.tol)
                             .holds;
            std::vector<int> complement;
            for (int c = 0; c < spec.params.m; ++c)
                if (std::find(combo.begin(), combo.end(), c) == combo.end())
                    complement.push_back(c);
            if (static_cast<int>(complement.size()) >= spec.k) {
                const std::vector<int> subset(complement.begin(), complement.begin() + spec.k);
                double worst = 1.0;
                for (const SharedState& shared : family) {
                    PureState decoded = decode_subset(shared.global, subset, spec.params);
                    DensityMatrix rho = partial_trace(
                        decoded, {shared.reference_count() + subset.front()});
                    worst = std::min(worst,
                                     fidelity(rho, secret_state(*shared.secret, spec.params.q)));
                }
                line.recon = worst >= 1.0 - opt.tol;
            } else {
                line.recon = false;
            }
            line.equiv = line.holds == line.recon;
            if (!line.equiv) report.erasure_ok = false;
            report.erasure_lines.push_back(std::move(line));
            more = size > 0 && detail::next_combination(combo, spec.params.m);
            if (size == 0) more = false;
        }
    }

    long long qk = 1;
    bool distance_done = true;
    for (int i = 0; i < spec.params.k && distance_done; ++i) {
        qk *= spec.params.q.q;
        if (qk > opt.distance_cap) distance_done = false;
    }
    if (distance_done) {
        const auto dists = min_distance_check(spec.params);
        report.dist_c1 = dists.first;
        report.dist_c2_dual = dists.second;
        report.distance_ok =
            std::min(dists.first, dists.second) == spec.params.m - spec.params.k + 1;
    } else {
        report.distance_ok = true;
    }

    if (report.pure_scheme) {
        bool duality = true;
        const int full = (1 << nb) - 1;
        for (int mask = 0; mask <= full; ++mask)
            if ((cls[static_cast<std::size_t>(mask)] == 1) ==
                (cls[static_cast<std::size_t>(full ^ mask)] == 1))
                duality = false;
        bool all_singleton = true;
        for (const Bundle& b : spec.bundles) all_singleton &= b.coords.size() == 1;
        report.structure_ok = duality && (!all_singleton || spec.n == 2 * spec.k - 1);
    } else {
        report.structure_ok = true;
    }

    report.pass =
        report.subsets_ok && report.erasure_ok && report.distance_ok && report.structure_ok;

    std::ostringstream out;
    out << report.summary << '\n';
    out << "PURE " << (report.pure_scheme ? "yes" : "no") << '\n';
    for (const SubsetVerdictReport& entry : report.subsets)
        out << "SUBSET " << detail::join_ints(entry.share_indices) << " VERDICT "
            << entry.verdict.verdict << " FID " << detail::fid_or_dash(entry.verdict.min_fidelity)
            << " TD " << detail::fid_or_dash(entry.verdict.max_trace_distance) << '\n';
    for (const ErasureEquivalenceLine& line : report.erasure_lines)
        out << "ERASURE K=" << detail::join_ints(line.coords) << " CONDITIONS "
            << (line.holds ? "hold" : "fail") << " RECON " << (line.recon ? "yes" : "no")
            << " EQUIV " << (line.equiv ? "ok" : "violated") << '\n';
    if (report.dist_c1 >= 0)
        out << "DISTANCE c1=" << report.dist_c1 << " c2dual=" << report.dist_c2_dual
            << " min=" << std::min(report.dist_c1, report.dist_c2_dual)
            << " expected=" << spec.params.m - spec.params.k + 1 << " "
            << (report.distance_ok ? "ok" : "violated") << '\n';
    else
        out << "DISTANCE skipped\n";
    out << "STRUCTURE " << (report.pure_scheme ? "pure" : "mixed") << " "
        << (report.structure_ok ? "ok" : "violated") << '\n';
    out << "RESULT " << (report.pass ? "PASS" : "FAIL") << '\n';
    report.text = out.str();
    return report;
}

struct DemoReport {
    bool pass;
    std::string text;
};

// The ((2,3)) qutrit scheme: codeword table, reconstruction from every pair,
// blindness of every single share, and the two-step modular-addition
// reconstruction on shares 0 and 1.
inline DemoReport demo_qutrit_233() {
    std::ostringstream out;
    bool pass = true;
    out << "DEMO qutrit-233\n";

    const SchemeSpec spec = build_threshold(2, 3, 3);
    const Prime q = spec.params.q;

    const std::vector<std::vector<Index>> expect_indices = {
        {0, 13, 26}, {5, 15, 19}, {7, 11, 21}};
    const double r = 1.0 / std::sqrt(3.0);
    double table_dev = 0.0;
    const std::vector<PureState> basis = code_basis(spec.params);
    for (int t = 0; t < 3; ++t) {
        for (Index idx = 0; idx < 27; ++idx) {
            const bool hit = std::find(expect_indices[static_cast<std::size_t>(t)].begin(),
                                       expect_indices[static_cast<std::size_t>(t)].end(),
                                       idx) != expect_indices[static_cast<std::size_t>(t)].end();
            table_dev = std::max(table_dev,
                                 std::abs(basis[static_cast<std::size_t>(t)]
                                              .amps[static_cast<std::size_t>(idx)] -
                                          (hit ? complexd(r, 0.0) : complexd(0.0, 0.0))));
        }
    }
    out << "CODEWORD-TABLE max deviation " << detail::fmt_g(table_dev) << '\n';
    pass &= table_dev <= 1e-12;

    const std::vector<SharedState> family = make_probe_family(spec);
    double worst_fid = 1.0;
    for (const std::vector<int>& pair : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}})
        worst_fid = std::min(worst_fid, check_reconstruction(family, pair));
    out << "RECONSTRUCTION pairs min fidelity " << detail::fmt_g(worst_fid) << '\n';
    pass &= worst_fid >= 1.0 - 1e-10;

    double worst_td = 0.0;
    for (int c = 0; c < 3; ++c)
        worst_td = std::max(worst_td, check_no_information(family, {c}));
    out << "NO-INFORMATION singles max trace distance " << detail::fmt_g(worst_td) << '\n';
    pass &= worst_td <= 1e-10;

    // Two modular additions recover the secret on register 0 and leave the
    // ancilla pair in a fixed state, for any secret.
    DeterministicRng rng(7);
    const std::vector<complexd> secret = random_unit_vector(3, rng);
    PureState state = encode(secret, spec.params);
    state = add_scaled_register(state, 0, 1, 1, q);
    state = add_scaled_register(state, 1, 0, 1, q);
    std::vector<complexd> expected_amps(27, complexd(0.0, 0.0));
    for (int t = 0; t < 3; ++t)
        for (Index rest : {Index(0), Index(5), Index(7)})
            expected_amps[static_cast<std::size_t>(9 * t + rest)] =
                secret[static_cast<std::size_t>(t)] * r;
    const PureState expected(state.system, std::move(expected_amps));
    const double overlap = std::abs(expected.inner(state));
    out << "ADD-ADD route overlap with secret x fixed ancilla " << detail::fmt_g(overlap) << '\n';
    pass &= overlap >= 1.0 - 1e-12;

    out << "DEMO-RESULT " << (pass ? "PASS" : "FAIL") << '\n';
    return {pass, out.str()};
}

// The restricted two-qubit encoding |0> -> (|00> - |11>)/sqrt(2),
// |1> -> (|01> + |10>)/sqrt(2): works as a ((2,2)) scheme on real-amplitude
// secrets, but a single share fully distinguishes |0> + i|1> from |0> - i|1>.
inline DemoReport demo_restricted_22() {
    std::ostringstream out;
    bool pass = true;
    out << "DEMO restricted-22\n";

    const RegisterSystem sys({2, 2});
    const double r = 1.0 / std::sqrt(2.0);
    const auto enc = [&](complexd alpha, complexd beta) {
        std::vector<complexd> amps(4);
        amps[0] = alpha * r;
        amps[1] = beta * r;
        amps[2] = beta * r;
        amps[3] = -alpha * r;
        return PureState(sys, std::move(amps));
    };

    const PureState plus_i = enc(r, complexd(0.0, r));
    const PureState minus_i = enc(r, complexd(0.0, -r));
    double dist_complex = 1.0;
    for (int share = 0; share < 2; ++share)
        dist_complex = std::min(dist_complex, trace_distance(partial_trace(plus_i, {share}),
                                                             partial_trace(minus_i, {share})));
    out << "PHASE-PAIR single-share trace distance " << detail::fmt_g(dist_complex) << '\n';
    pass &= std::abs(dist_complex - 1.0) <= 1e-9;

    const std::vector<std::pair<complexd, complexd>> real_probes = {
        {1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}};
    double real_td = 0.0;
    for (int share = 0; share < 2; ++share) {
        std::vector<DensityMatrix> reduced;
        for (const auto& pr : real_probes)
            reduced.push_back(partial_trace(enc(pr.first, pr.second), {share}));
        for (std::size_t i = 0; i < reduced.size(); ++i)
            for (std::size_t j = i + 1; j < reduced.size(); ++j)
                real_td = std::max(real_td, trace_distance(reduced[i], reduced[j]));
    }
    out << "REAL-FAMILY single-share max trace distance " << detail::fmt_g(real_td) << '\n';
    pass &= real_td <= 1e-10;

    // Joint reconstruction: one fixed two-qubit unitary disentangles the
    // secret onto register 0 for every input.
    CMatrix u(4, 4);
    u(0, 0) = r;
    u(0, 3) = -r;
    u(1, 0) = r;
    u(1, 3) = r;
    u(2, 1) = r;
    u(2, 2) = r;
    u(3, 1) = r;
    u(3, 2) = -r;
    std::vector<std::pair<complexd, complexd>> all_probes = real_probes;
    all_probes.push_back({r, complexd(0.0, r)});
    all_probes.push_back({r, complexd(0.0, -r)});
    double min_fid = 1.0;
    for (const auto& pr : all_probes) {
        const PureState recovered = apply_unitary(enc(pr.first, pr.second), u, {0, 1});
        const DensityMatrix rho = partial_trace(recovered, {0});
        const PureState target(RegisterSystem({2}), {pr.first, pr.second});
        min_fid = std::min(min_fid, fidelity(rho, target));
    }
    out << "BOTH-SHARES reconstruction min fidelity " << detail::fmt_g(min_fid) << '\n';
    pass &= min_fid >= 1.0 - 1e-10;

    out << "DEMO-RESULT " << (pass ? "PASS" : "FAIL") << '\n';
    return {pass, out.str()};
}

// The four-qubit code |0> -> (|0000> + |1111>)/sqrt(2),
// |1> -> (|0011> + |1100>)/sqrt(2): a perfect single-erasure code (certified
// coordinate by coordinate) that still leaks the secret to qubits {0, 2},
// hence an erasure code need not be a secret sharing scheme.
inline DemoReport demo_four_qubit_leak() {
    std::ostringstream out;
    bool pass = true;
    out << "DEMO four-qubit-leak\n";

    const Prime two(2);
    const RegisterSystem sys({2, 2, 2, 2});
    const double r = 1.0 / std::sqrt(2.0);
    std::vector<complexd> amps0(16, complexd(0.0, 0.0));
    amps0[0] = r;
    amps0[15] = r;
    std::vector<complexd> amps1(16, complexd(0.0, 0.0));
    amps1[3] = r;
    amps1[12] = r;
    const std::vector<PureState> basis = {PureState(sys, std::move(amps0)),
                                          PureState(sys, std::move(amps1))};

    bool all_singles_hold = true;
    for (int c = 0; c < 4; ++c) {
        const ErasureCheckResult res = check_erasure_conditions(basis, {c}, two);
        out << "ERASURE K=" << c << " " << (res.holds ? "hold" : "fail") << '\n';
        all_singles_hold &= res.holds;
    }
    out << "ERASURE every single coordinate correctable => every 3-coordinate subset recovers\n";
    pass &= all_singles_hold;

    const double leak = trace_distance(partial_trace(basis[0], {0, 2}),
                                       partial_trace(basis[1], {0, 2}));
    out << "LEAK coords=0,2 trace distance " << detail::fmt_g(leak) << '\n';
    pass &= std::abs(leak - 1.0) <= 1e-9;

    const ErasureCheckResult pair_res = check_erasure_conditions(basis, {0, 2}, two);
    out << "ERASURE K=0,2 " << (pair_res.holds ? "hold" : "fail") << '\n';
    pass &= !pair_res.holds;

    double single_td = 0.0;
    for (int c = 0; c < 4; ++c)
        single_td = std::max(single_td, trace_distance(partial_trace(basis[0], {c}),
                                                       partial_trace(basis[1], {c})));
    out << "NO-INFORMATION singles max trace distance " << detail::fmt_g(single_td) << '\n';
    pass &= single_td <= 1e-10;

    out << "DEMO-RESULT " << (pass ? "PASS" : "FAIL") << '\n';
    return {pass, out.str()};
}

// Splitting half of an EPR pair with the ((2,2)) scheme: Alice's qubit stays
// in a product state with each single share, yet Bob and Carol together
// reconstruct a qubit maximally entangled with Alice.
inline DemoReport demo_epr_product() {
    std::ostringstream out;
    bool pass = true;
    out << "DEMO epr\n";

    const SchemeSpec spec = build_threshold(2, 2, 2);
    const SharedState shared = split_with_reference(spec, maximally_entangled_pair(2, 2, 2));
    const int base = shared.reference_count();

    const DensityMatrix rho_a = partial_trace(shared.global, {0});
    CMatrix half(2, 2);
    half(0, 0) = 0.5;
    half(1, 1) = 0.5;
    const double alice_mixed = trace_distance(rho_a, DensityMatrix(RegisterSystem({2}), half));
    out << "ALICE reduced state vs maximally mixed trace distance " << detail::fmt_g(alice_mixed)
        << '\n';
    pass &= alice_mixed <= 1e-12;

    double product_dev = 0.0;
    for (int coord = 0; coord < 2; ++coord) {
        const DensityMatrix joint = partial_trace(shared.global, {0, base + coord});
        const DensityMatrix share = partial_trace(shared.global, {base + coord});
        product_dev = std::max(product_dev, trace_distance(joint, tensor(rho_a, share)));
    }
    out << "PRODUCT Alice x single-share deviation " << detail::fmt_g(product_dev) << '\n';
    pass &= product_dev <= 1e-9;

    const PureState decoded = decode_subset(shared.global, {0, 1}, spec.params);
    const DensityMatrix pair = partial_trace(decoded, {0, base + 0});
    const double ent_fid =
        fidelity(pair, maximally_entangled_pair(2, 2, spec.params.q.q));
    out << "BOB+CAROL entanglement fidelity with Alice " << detail::fmt_g(ent_fid) << '\n';
    pass &= ent_fid >= 1.0 - 1e-9;

    out << "DEMO-RESULT " << (pass ? "PASS" : "FAIL") << '\n';
    return {pass, out.str()};
}

}  // namespace qss
