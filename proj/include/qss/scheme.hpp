#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qss/errors.hpp"
#include "qss/hilbert.hpp"
#include "qss/polycode.hpp"
#include "qss/random.hpp"

namespace qss {

// One share: a label and the code coordinates its holder receives.
struct Bundle {
    std::string label;
    std::vector<int> coords;
};

// A ((k, n)) scheme realized on the length-(2k-1) polynomial code: n retained
// coordinates partitioned into shares, the remaining m - n discarded (kept
// internally as purification environment, never handed to any party).
struct SchemeSpec {
    int k;
    int n;
    CodeParams params;
    std::vector<int> discarded;
    std::vector<Bundle> bundles;

    SchemeSpec(int threshold, int share_count, CodeParams code, std::vector<int> dropped,
               std::vector<Bundle> parts)
        : k(threshold),
          n(share_count),
          params(std::move(code)),
          discarded(std::move(dropped)),
          bundles(std::move(parts)) {
        if (params.m != 2 * k - 1 || params.k != k)
            throw ParamViolationError("scheme requires the length-(2k-1) degree-(k-1) code");
        if (n >= 2 * k) throw NoCloningViolationError("no-cloning violation: n >= 2k");
        if (n < k) throw ParamViolationError("scheme requires n >= k");
        std::sort(discarded.begin(), discarded.end());
        if (static_cast<int>(discarded.size()) != params.m - n)
            throw ParamViolationError("discard set must hold exactly m - n coordinates");
        for (std::size_t i = 0; i < discarded.size(); ++i) {
            if (discarded[i] < 0 || discarded[i] >= params.m)
                throw ParamViolationError("discarded coordinate out of range");
            if (i > 0 && discarded[i] == discarded[i - 1])
                throw ParamViolationError("discarded coordinates must be distinct");
        }
        std::vector<int> covered;
        for (const Bundle& b : bundles) {
            if (b.label.empty()) throw InvalidPartitionError("share labels must be nonempty");
            if (b.coords.empty()) throw InvalidPartitionError("shares must hold at least one coordinate");
            for (int c : b.coords) covered.push_back(c);
        }
        for (std::size_t i = 0; i < bundles.size(); ++i)
            for (std::size_t j = i + 1; j < bundles.size(); ++j)
                if (bundles[i].label == bundles[j].label)
                    throw InvalidPartitionError("share labels must be distinct");
        std::sort(covered.begin(), covered.end());
        if (covered != retained_coordinates())
            throw InvalidPartitionError("shares must partition the retained coordinates exactly");
    }

    std::vector<int> retained_coordinates() const {
        std::vector<int> kept;
        for (int c = 0; c < params.m; ++c)
            if (!std::binary_search(discarded.begin(), discarded.end(), c)) kept.push_back(c);
        return kept;
    }
};

// ((k, n)) threshold scheme for any n < 2k: points 0, ..., m-1, the last
// m - n coordinates discarded, one singleton share per retained coordinate.
inline SchemeSpec build_threshold(int k, int n, int s) {
    if (k < 1 || n < k || s < 2)
        throw ParamViolationError("threshold scheme requires k >= 1, n >= k, s >= 2");
    if (n >= 2 * k) throw NoCloningViolationError("no-cloning violation: n >= 2k");
    const int m = 2 * k - 1;
    CodeParams params = make_standard_params(k, m, s);
    std::vector<int> discarded;
    for (int c = n; c < m; ++c) discarded.push_back(c);
    std::vector<Bundle> bundles;
    for (int c = 0; c < n; ++c) bundles.push_back({std::to_string(c), {c}});
    return SchemeSpec(k, n, std::move(params), std::move(discarded), std::move(bundles));
}

// Drops the highest-indexed retained coordinate (and its share, if that
// leaves the share empty), turning a ((k, n)) scheme into ((k, n-1)).
inline SchemeSpec discard(const SchemeSpec& spec) {
    if (spec.n == spec.k) throw ThresholdFloorError("cannot discard below n = k");
    const int victim = spec.retained_coordinates().back();
    std::vector<int> dropped = spec.discarded;
    dropped.push_back(victim);
    std::vector<Bundle> bundles;
    for (const Bundle& b : spec.bundles) {
        Bundle kept{b.label, {}};
        for (int c : b.coords)
            if (c != victim) kept.coords.push_back(c);
        if (!kept.coords.empty()) bundles.push_back(std::move(kept));
    }
    return SchemeSpec(spec.k, spec.n - 1, spec.params, std::move(dropped), std::move(bundles));
}

// Regroups the retained coordinates into shares labeled A, B, C, ... in
// partition order. The partition must cover the retained coordinates exactly.
inline SchemeSpec bundle(const SchemeSpec& spec, const std::vector<std::vector<int>>& partition) {
    std::vector<Bundle> bundles;
    for (std::size_t g = 0; g < partition.size(); ++g) {
        std::string label = g < 26 ? std::string(1, static_cast<char>('A' + g))
                                   : "S" + std::to_string(g);
        bundles.push_back({std::move(label), partition[g]});
    }
    return SchemeSpec(spec.k, spec.n, spec.params, spec.discarded, std::move(bundles));
}

// The secret as a single q-dimensional register (basis states >= the secret's
// dimension unused).
inline PureState secret_state(const std::vector<complexd>& secret, const Prime& q) {
    if (secret.empty() || static_cast<int>(secret.size()) > q.q)
        throw BadSecretDimensionError("secret does not fit one q-dimensional register");
    std::vector<complexd> amps(static_cast<std::size_t>(q.q), complexd(0.0, 0.0));
    std::copy(secret.begin(), secret.end(), amps.begin());
    return PureState::normalized(RegisterSystem({q.q}), std::move(amps));
}

// The global encoded state: pure on all m coordinates (discarded ones
// included as environment), with possible reference registers in front.
struct SharedState {
    PureState global;
    SchemeSpec spec;
    std::optional<std::vector<complexd>> secret;

    int reference_count() const { return global.system.register_count() - spec.params.m; }
};

inline SharedState split(const SchemeSpec& spec, const std::vector<complexd>& secret) {
    if (static_cast<int>(secret.size()) > spec.params.s)
        throw BadSecretDimensionError("secret dimension exceeds the scheme's secret dimension");
    PureState global = encode(secret, spec.params);
    std::vector<complexd> stored = secret;
    double norm_sq = 0.0;
    for (const auto& a : stored) norm_sq += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : stored) a *= inv;
    return SharedState{std::move(global), spec, std::move(stored)};
}

// Splits the LAST register of `joint`, keeping the other registers as
// external references (they come first in the global state).
inline SharedState split_with_reference(const SchemeSpec& spec, const PureState& joint) {
    return SharedState{encode_with_reference(joint, spec.params), spec, std::nullopt};
}

struct ReconstructionResult {
    bool reconstructible;
    DensityMatrix state;             // output register if reconstructible, else the shares' reduced state
    std::vector<int> coordinates;    // coordinates backing the chosen shares
    int output_coordinate;           // -1 when not reconstructible
    std::optional<double> fidelity_to_secret;
};

namespace detail {

inline std::vector<int> coords_of_labels(const SchemeSpec& spec,
                                         const std::vector<std::string>& labels) {
    std::vector<int> coords;
    for (const std::string& label : labels) {
        const Bundle* found = nullptr;
        for (const Bundle& b : spec.bundles)
            if (b.label == label) found = &b;
        if (found == nullptr) throw UnknownShareLabelError("unknown share label: " + label);
        coords.insert(coords.end(), found->coords.begin(), found->coords.end());
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    return coords;
}

}  // namespace detail

// Reconstructs from the named shares when they jointly hold at least k
// coordinates (the k lowest-indexed ones are used); otherwise returns the
// shares' reduced density matrix for inspection.
inline ReconstructionResult reconstruct(const SharedState& shared,
                                        const std::vector<std::string>& labels) {
    const SchemeSpec& spec = shared.spec;
    const std::vector<int> coords = detail::coords_of_labels(spec, labels);
    const int base = shared.reference_count();

    if (static_cast<int>(coords.size()) < spec.k) {
        std::vector<int> regs;
        for (int c : coords) regs.push_back(base + c);
        return ReconstructionResult{false, partial_trace(shared.global, regs), coords, -1,
                                    std::nullopt};
    }

    const std::vector<int> subset(coords.begin(), coords.begin() + spec.k);
    PureState decoded = decode_subset(shared.global, subset, spec.params);
    const int out_reg = base + subset.front();
    DensityMatrix rho = partial_trace(decoded, {out_reg});
    std::optional<double> fid;
    if (shared.secret.has_value())
        fid = fidelity(rho, secret_state(*shared.secret, spec.params.q));
    return ReconstructionResult{true, std::move(rho), coords, subset.front(), std::move(fid)};
}

// Probe family used by the verifier and property tests: every basis state,
// the superpositions (|0> + |a>)/sqrt(2) and (|0> + i|a>)/sqrt(2) for each
// a >= 1 (complex phases catch leaks that real amplitudes miss), and one
// seeded pseudorandom state.
inline std::vector<std::vector<complexd>> probe_secrets(int s, std::uint64_t seed = 42) {
    std::vector<std::vector<complexd>> probes;
    for (int t = 0; t < s; ++t) {
        std::vector<complexd> v(static_cast<std::size_t>(s), complexd(0.0, 0.0));
        v[static_cast<std::size_t>(t)] = 1.0;
        probes.push_back(std::move(v));
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (int a = 1; a < s; ++a) {
        std::vector<complexd> plus(static_cast<std::size_t>(s), complexd(0.0, 0.0));
        plus[0] = r;
        plus[static_cast<std::size_t>(a)] = r;
        probes.push_back(std::move(plus));
        std::vector<complexd> phase(static_cast<std::size_t>(s), complexd(0.0, 0.0));
        phase[0] = r;
        phase[static_cast<std::size_t>(a)] = complexd(0.0, r);
        probes.push_back(std::move(phase));
    }
    DeterministicRng rng(seed);
    probes.push_back(random_unit_vector(s, rng));
    return probes;
}

}  // namespace qss
