// Acceptance gate: one check per shipped claim, each printed as a single
// [PASS]/[FAIL] line with the measured quantity and elapsed time. The binary
// exits nonzero if any criterion fails. Stated runtime budgets are enforced.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "qss/qss.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;  // 0 = no stated budget
    std::function<bool(std::ostringstream&)> body;
};

bool run_one(const Criterion& c) {
    std::ostringstream detail;
    const auto t0 = Clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = c.body(detail);
    } catch (const std::exception& e) {
        ok = false;
        error = e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && secs >= c.budget_seconds) {
        ok = false;
        detail << "; exceeded " << c.budget_seconds << " s budget";
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name;
    if (!detail.str().empty()) std::cout << " -- " << detail.str();
    if (!error.empty()) std::cout << " -- exception: " << error;
    std::cout << " [" << std::fixed << std::setprecision(2) << secs << " s]\n";
    std::cout.unsetf(std::ios::fixed);
    return ok;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kSchemeGolden =
    "QSS1-SCHEME\n"
    "k=2\n"
    "n=3\n"
    "q=3\n"
    "s=3\n"
    "points=0,1,2\n"
    "discarded=-\n"
    "bundles=0:0;1:1;2:2\n";

// ---- criterion bodies ------------------------------------------------------

// 1. The (k=2, m=3, q=3) codeword table matches the hand-computed amplitudes:
//    each basis secret t maps to an equal superposition of the three
//    evaluation tuples with leading coefficient t, amplitude 1/sqrt(3).
bool criterion_codeword_table(std::ostringstream& detail) {
    const qss::CodeParams params = qss::make_standard_params(2, 3, 3);
    const std::vector<qss::PureState> basis = qss::code_basis(params);
    if (basis.size() != 3) return false;
    const int support[3][3] = {{0, 13, 26}, {5, 15, 19}, {7, 11, 21}};
    const double r = 1.0 / std::sqrt(3.0);
    double dev = 0.0;
    for (int t = 0; t < 3; ++t) {
        for (int idx = 0; idx < 27; ++idx) {
            double expected = 0.0;
            for (int j = 0; j < 3; ++j)
                if (support[t][j] == idx) expected = r;
            dev = std::max(dev, std::abs(basis[static_cast<std::size_t>(t)]
                                             .amps[static_cast<std::size_t>(idx)] -
                                         expected));
        }
    }
    detail << "max amplitude deviation " << dev;
    return dev <= 1e-12;
}

// 2. Two-of-three reconstruction over 200 deterministic random qutrit secrets,
//    plus the no-information property of every single share.
bool criterion_random_reconstruction(std::ostringstream& detail) {
    const qss::SchemeSpec spec = qss::build_threshold(2, 3, 3);
    qss::DeterministicRng rng(271828);
    const std::vector<std::vector<std::string>> pairs = {{"0", "1"}, {"0", "2"}, {"1", "2"}};
    qss::CMatrix third(3, 3);
    for (int i = 0; i < 3; ++i) third(i, i) = 1.0 / 3.0;
    const qss::DensityMatrix mixed(qss::RegisterSystem({3}), third);

    double min_fid = 1.0;
    double max_td = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::vector<qss::complexd> secret = qss::random_unit_vector(3, rng);
        const qss::SharedState shared = qss::split(spec, secret);
        for (const auto& labels : pairs) {
            const qss::ReconstructionResult res = qss::reconstruct(shared, labels);
            if (!res.reconstructible || !res.fidelity_to_secret) return false;
            min_fid = std::min(min_fid, *res.fidelity_to_secret);
        }
        for (int c = 0; c < 3; ++c) {
            const qss::DensityMatrix reduced = qss::partial_trace(shared.global, {c});
            max_td = std::max(max_td, qss::trace_distance(reduced, mixed));
        }
    }
    detail << "min pair fidelity " << std::setprecision(12) << min_fid
           << ", max single-share trace distance to I/3 " << std::setprecision(6) << max_td;
    return min_fid >= 1.0 - 1e-10 && max_td <= 1e-10;
}

// 3. The ((3,5)) scheme over q=5: every 3-subset reconstructs (including the
//    entanglement-fidelity variant), and no 2-subset or singleton can tell any
//    two probe secrets apart.
bool criterion_three_of_five(std::ostringstream& detail) {
    const qss::SchemeSpec spec = qss::build_threshold(3, 5, 5);
    const std::vector<qss::SharedState> family = qss::make_probe_family(spec);

    double min_fid = 1.0;
    int triples = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c) {
                min_fid = std::min(min_fid, qss::check_reconstruction(family, {a, b, c}));
                ++triples;
            }

    double max_td = 0.0;
    int small_sets = 0;
    for (int a = 0; a < 5; ++a) {
        max_td = std::max(max_td, qss::check_no_information(family, {a}));
        ++small_sets;
        for (int b = a + 1; b < 5; ++b) {
            max_td = std::max(max_td, qss::check_no_information(family, {a, b}));
            ++small_sets;
        }
    }
    detail << triples << " triples min fidelity " << std::setprecision(12) << min_fid << "; "
           << small_sets << " small subsets max trace distance " << std::setprecision(6)
           << max_td;
    return triples == 10 && small_sets == 15 && min_fid >= 1.0 - 1e-9 && max_td <= 1e-9;
}

// 4. Share discarding produces working ((3,4)) and ((3,3)) schemes, and the
//    builder rejects every (k, n) with n >= 2k.
bool criterion_discarding_and_bounds(std::ostringstream& detail) {
    const qss::SchemeSpec five = qss::build_threshold(3, 5, 2);
    const qss::SchemeSpec four = qss::discard(five);
    const qss::SchemeSpec three = qss::discard(four);
    const qss::VerificationReport r4 = qss::full_report(four);
    const qss::VerificationReport r3 = qss::full_report(three);

    const auto rejected = [](int k, int n) {
        try {
            qss::build_threshold(k, n, 2);
        } catch (const qss::NoCloningViolationError&) {
            return true;
        } catch (...) {
            return false;
        }
        return false;
    };
    const bool bounds =
        rejected(2, 4) && rejected(3, 6) && rejected(1, 2);
    detail << "((3,4)) report " << (r4.pass ? "PASS" : "FAIL") << ", ((3,3)) report "
           << (r3.pass ? "PASS" : "FAIL") << ", cloning bounds "
           << (bounds ? "enforced" : "violated");
    return r4.pass && r3.pass && bounds;
}

// 5. Structure dichotomy: full-length schemes pass complement duality over all
//    share subsets; the discarded ((3,4)) scheme is genuinely mixed (the
//    retained block has rank >= 2 for the probe secret (|0>+|1>)/sqrt(2)).
bool criterion_structure(std::ostringstream& detail) {
    const bool duality_23 = qss::check_pure_state_structure(qss::build_threshold(2, 3, 3));
    const bool duality_35 = qss::check_pure_state_structure(qss::build_threshold(3, 5, 5));

    const qss::SchemeSpec four = qss::build_threshold(3, 4, 2);
    const double r = 1.0 / std::sqrt(2.0);
    const qss::SharedState shared = qss::split(four, {r, r});
    const qss::DensityMatrix retained =
        qss::partial_trace(shared.global, four.retained_coordinates());
    const int rank = retained.rank(1e-8);

    detail << "duality ((2,3)) " << (duality_23 ? "ok" : "violated") << ", ((3,5)) "
           << (duality_35 ? "ok" : "violated") << ", ((3,4)) retained rank " << rank;
    return duality_23 && duality_35 && rank >= 2;
}

// 6. Erasure conditions: singletons of the (2,3,3) code satisfy them with
//    c(E)=0 for every non-identity operator, pairs violate them, and the
//    condition/reconstruction equivalence holds for every coordinate subset of
//    both full-length schemes.
bool criterion_erasure_conditions(std::ostringstream& detail) {
    const qss::CodeParams code = qss::make_standard_params(2, 3, 3);
    const std::vector<qss::PureState> basis = qss::code_basis(code);

    bool singles_hold = true;
    double max_c = 0.0;
    for (int c = 0; c < 3; ++c) {
        const qss::ErasureCheckResult res = qss::check_erasure_conditions(basis, {c}, code.q);
        if (!res.holds || res.c_table.size() != 9 ||
            std::abs(res.c_table[0] - qss::complexd(1.0)) > 1e-9) {
            singles_hold = false;
            continue;
        }
        for (std::size_t i = 1; i < res.c_table.size(); ++i)
            max_c = std::max(max_c, std::abs(res.c_table[i]));
    }

    bool pairs_fail = true;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs)
        if (qss::check_erasure_conditions(basis, {pr[0], pr[1]}, code.q).holds)
            pairs_fail = false;

    const qss::VerificationReport r23 = qss::full_report(qss::build_threshold(2, 3, 3));
    qss::FullReportOptions opt35;
    opt35.erasure_cap = 5;  // sweep every coordinate subset of the length-5 code
    const qss::VerificationReport r35 = qss::full_report(qss::build_threshold(3, 5, 5), opt35);

    detail << "singleton max non-identity |c(E)| " << max_c << ", pairs "
           << (pairs_fail ? "fail as required" : "unexpectedly hold") << ", equivalence lines "
           << r23.erasure_lines.size() << "+" << r35.erasure_lines.size();
    return singles_hold && max_c <= 1e-9 && pairs_fail && r23.erasure_ok && r35.erasure_ok &&
           r23.erasure_lines.size() == 8 && r35.erasure_lines.size() == 32;
}

// 7. Counterexample demos: the four-qubit code leaks the secret to coordinates
//    {0,2} while every 3-subset reconstructs, and the restricted two-share
//    encoding distinguishes conjugate secrets while hiding real ones.
bool criterion_counterexamples(std::ostringstream& detail) {
    const qss::DemoReport leak = qss::demo_four_qubit_leak();
    const qss::DemoReport restricted = qss::demo_restricted_22();
    detail << "four-qubit leak " << (leak.pass ? "PASS" : "FAIL") << ", restricted two-share "
           << (restricted.pass ? "PASS" : "FAIL");
    return leak.pass && restricted.pass;
}

// 8. Distance of the nested classical codes: min(dist C1, dist C2-dual) equals
//    m-k+1 for both built parameter sets, by exhaustive enumeration.
bool criterion_code_distance(std::ostringstream& detail) {
    const std::pair<int, int> d233 = qss::min_distance_check(qss::make_standard_params(2, 3, 3));
    const std::pair<int, int> d355 = qss::min_distance_check(qss::make_standard_params(3, 5, 5));
    detail << "(2,3,3) -> {" << d233.first << "," << d233.second << "}, (3,5,5) -> {"
           << d355.first << "," << d355.second << "}";
    return std::min(d233.first, d233.second) == 2 && std::min(d355.first, d355.second) == 3 &&
           d233.first == 2 && d233.second == 2 && d355.first == 3 && d355.second == 3;
}

// 9. Entangled-input demo: splitting half of a Bell pair leaves Alice's half
//    exactly maximally mixed, product with each single share, and the two-share
//    reconstruction returns her partner with unit entanglement fidelity.
bool criterion_entangled_input(std::ostringstream& detail) {
    const qss::DemoReport epr = qss::demo_epr_product();
    detail << (epr.pass ? "PASS" : "FAIL");
    return epr.pass;
}

// 10. File formats round-trip byte for byte and the command-line binary honors
//     its exit-code contract (0 success, 1 failed verification, 2 usage/file
//     error, 3 parameter violation).
bool criterion_cli_contract(std::ostringstream& detail) {
    const std::string scheme_path = "acc_scheme.txt";
    const std::string state_path = "acc_state.txt";
    const std::string bad_path = "acc_bad_state.txt";
    const auto cleanup = [&] {
        std::remove(scheme_path.c_str());
        std::remove(state_path.c_str());
        std::remove(bad_path.c_str());
    };
    cleanup();

    bool ok = true;
    const auto expect_exit = [&](const std::string& args, int code) {
        const CliResult res = run_cli(args);
        if (res.exit_code != code) {
            detail << " [" << args << " -> " << res.exit_code << ", want " << code << "]";
            ok = false;
        }
    };

    const CliResult fresh = run_cli("new --k 2 --n 3 --secret-dim 3");
    if (fresh.exit_code != 0 || fresh.output != kSchemeGolden) {
        detail << " [new output mismatch]";
        ok = false;
    }
    expect_exit("new --k 2 --n 4", 3);
    expect_exit("new --k 2", 2);
    expect_exit("new --k 2 --n 3 --secret-dim 3 --out " + scheme_path, 0);
    if (slurp(scheme_path) != kSchemeGolden) {
        detail << " [scheme file mismatch]";
        ok = false;
    }

    // library-level byte round-trips
    {
        std::istringstream in(kSchemeGolden);
        std::ostringstream out;
        qss::write_scheme(out, qss::read_scheme(in));
        if (out.str() != kSchemeGolden) {
            detail << " [scheme round-trip not byte-identical]";
            ok = false;
        }
    }
    expect_exit("split --scheme " + scheme_path + " --secret 1:0,0:0,0:0 --out " + state_path,
                0);
    const std::string state_text = slurp(state_path);
    {
        std::istringstream in(state_text);
        std::ostringstream out;
        qss::write_state(out, qss::read_state(in));
        if (out.str() != state_text || state_text.empty()) {
            detail << " [state round-trip not byte-identical]";
            ok = false;
        }
    }

    expect_exit("reconstruct --state " + state_path + " --shares 1,2 --expect 1:0,0:0,0:0", 0);
    expect_exit("reconstruct --state " + state_path + " --shares 1,2 --expect 0:0,1:0,0:0", 1);
    std::ofstream(bad_path) << "QSS1\nq=3\ndims=3,3,3\ndiscarded=-\nbundles=0:0;1:1;2:2\n"
                               "amp 0 0.2 0\n";
    expect_exit("reconstruct --state " + bad_path + " --shares 0,1", 2);
    expect_exit("verify --demo epr", 0);

    cleanup();
    if (ok) detail << "exit codes 0/1/2/3 and byte-identical round-trips confirmed";
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "hand-computed codeword table, (k=2, m=3, q=3)", 1.0, criterion_codeword_table},
        {2, "two-of-three reconstruction over 200 random secrets", 5.0,
         criterion_random_reconstruction},
        {3, "three-of-five reconstruction and no-information sweep", 120.0,
         criterion_three_of_five},
        {4, "share discarding and the no-cloning bound", 120.0, criterion_discarding_and_bounds},
        {5, "pure/mixed structure dichotomy", 0.0, criterion_structure},
        {6, "erasure conditions and their reconstruction equivalence", 0.0,
         criterion_erasure_conditions},
        {7, "leak and restricted-encoding counterexamples", 0.0, criterion_counterexamples},
        {8, "classical code distances by exhaustive enumeration", 0.0, criterion_code_distance},
        {9, "entangled-input splitting stays product and recoverable", 0.0,
         criterion_entangled_input},
        {10, "file-format round-trip and exit-code contract", 0.0, criterion_cli_contract},
    };

    int passed = 0;
    for (const Criterion& c : criteria) passed += run_one(c) ? 1 : 0;
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria passed\n";
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
