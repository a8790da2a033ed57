#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qss/qss.hpp"

namespace {

std::vector<qss::complexd> parse_secret(const std::string& text) {
    std::vector<qss::complexd> secret;
    for (const std::string& part : qss::detail::split_string(text, ',')) {
        const auto pieces = qss::detail::split_string(part, ':');
        if (pieces.size() != 2)
            throw qss::Error("secret entry '" + part + "' is not re:im");
        secret.emplace_back(qss::detail::parse_double_strict(pieces[0], "secret amplitude"),
                            qss::detail::parse_double_strict(pieces[1], "secret amplitude"));
    }
    double norm_sq = 0.0;
    for (const auto& a : secret) norm_sq += std::norm(a);
    if (norm_sq <= 0.0) throw qss::Error("secret vector has zero norm");
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : secret) a *= inv;
    return secret;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw qss::Error("cannot open output file: " + out_path);
    f << content;
}

qss::SchemeSpec load_scheme(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qss::Error("cannot open scheme file: " + path);
    return qss::read_scheme(f);
}

qss::SharedState load_state(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw qss::Error("cannot open state file: " + path);
    return qss::read_state(f);
}

int cmd_new(int k, int n, int secret_dim, const std::string& out_path) {
    const qss::SchemeSpec spec = qss::build_threshold(k, n, secret_dim);
    std::ostringstream out;
    qss::write_scheme(out, spec);
    emit(out_path, out.str());
    return 0;
}

int cmd_split(const std::string& scheme_path, const std::string& secret_text,
              const std::string& out_path) {
    const qss::SchemeSpec spec = load_scheme(scheme_path);
    const qss::SharedState shared = qss::split(spec, parse_secret(secret_text));
    std::ostringstream out;
    qss::write_state(out, shared);
    emit(out_path, out.str());
    return 0;
}

int cmd_reconstruct(const std::string& state_path, const std::string& shares_text,
                    const std::string& expect_text) {
    const qss::SharedState shared = load_state(state_path);
    std::vector<std::string> labels;
    for (const std::string& part : qss::detail::split_string(shares_text, ','))
        if (!part.empty()) labels.push_back(part);
    if (labels.empty()) throw qss::Error("no share labels given");
    const qss::ReconstructionResult result = qss::reconstruct(shared, labels);

    if (!result.reconstructible) {
        std::cout << "NOT-RECONSTRUCTIBLE coordinates "
                  << qss::detail::join_ints(result.coordinates) << " hold "
                  << result.coordinates.size() << " of k=" << shared.spec.k << '\n';
        const qss::CMatrix& rho = result.state.entries;
        for (int i = 0; i < rho.rows; ++i)
            for (int j = 0; j < rho.cols; ++j) {
                const qss::complexd v = rho(i, j);
                if (std::abs(v) < 1e-15) continue;
                std::cout << "rho " << i << ' ' << j << ' '
                          << qss::detail::render_double(v.real()) << ' '
                          << qss::detail::render_double(v.imag()) << '\n';
            }
        return expect_text.empty() ? 0 : 1;
    }

    std::cout << "RECONSTRUCTED coordinate " << result.output_coordinate << " register-dim "
              << shared.spec.params.q.q << '\n';
    const qss::HermitianEigensystem es = qss::hermitian_eigensystem(result.state.entries);
    const int dom = static_cast<int>(es.values.size()) - 1;
    std::vector<qss::complexd> vec(static_cast<std::size_t>(es.vectors.rows));
    for (int i = 0; i < es.vectors.rows; ++i) vec[static_cast<std::size_t>(i)] = es.vectors(i, dom);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < vec.size(); ++i)
        if (std::abs(vec[i]) > std::abs(vec[pivot])) pivot = i;
    if (std::abs(vec[pivot]) > 0.0) {
        const qss::complexd phase = std::conj(vec[pivot]) / std::abs(vec[pivot]);
        for (auto& v : vec) v *= phase;
    }
    for (std::size_t i = 0; i < vec.size(); ++i) {
        if (std::abs(vec[i]) < 1e-15) continue;
        std::cout << "amp " << i << ' ' << qss::detail::render_double(vec[i].real()) << ' '
                  << qss::detail::render_double(vec[i].imag()) << '\n';
    }

    if (!expect_text.empty()) {
        const std::vector<qss::complexd> expected = parse_secret(expect_text);
        const double fid =
            qss::fidelity(result.state, qss::secret_state(expected, shared.spec.params.q));
        std::cout << "FIDELITY " << qss::detail::fmt_g(fid) << '\n';
        return fid >= 1.0 - 1e-9 ? 0 : 1;
    }
    return 0;
}

int cmd_verify(const std::string& scheme_path, const std::string& demo_name,
               const std::string& report_path) {
    if (scheme_path.empty() == demo_name.empty())
        throw qss::Error("verify needs exactly one of --scheme or --demo");
    bool pass = false;
    std::string text;
    if (!scheme_path.empty()) {
        const qss::VerificationReport report = qss::full_report(load_scheme(scheme_path));
        pass = report.pass;
        text = report.text;
    } else {
        qss::DemoReport report{false, ""};
        if (demo_name == "qutrit-233")
            report = qss::demo_qutrit_233();
        else if (demo_name == "restricted-22")
            report = qss::demo_restricted_22();
        else if (demo_name == "four-qubit-leak")
            report = qss::demo_four_qubit_leak();
        else if (demo_name == "epr")
            report = qss::demo_epr_product();
        else
            throw qss::Error("unknown demo: " + demo_name);
        pass = report.pass;
        text = report.text;
    }
    std::cout << text;
    if (!report_path.empty()) emit(report_path, text);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum threshold secret sharing laboratory"};
    app.require_subcommand(1);

    int opt_k = 0, opt_n = 0, opt_secret_dim = 2;
    std::string opt_out, opt_scheme, opt_secret, opt_state, opt_shares, opt_expect, opt_demo,
        opt_report;
    int exit_code = 0;

    CLI::App* sub_new = app.add_subcommand("new", "build a ((k,n)) threshold scheme");
    sub_new->add_option("--k", opt_k, "threshold")->required();
    sub_new->add_option("--n", opt_n, "number of shares")->required();
    sub_new->add_option("--secret-dim", opt_secret_dim, "secret dimension (default 2)");
    sub_new->add_option("--out", opt_out, "output file (default stdout)");
    sub_new->callback([&] { exit_code = cmd_new(opt_k, opt_n, opt_secret_dim, opt_out); });

    CLI::App* sub_split = app.add_subcommand("split", "encode a secret into shares");
    sub_split->add_option("--scheme", opt_scheme, "scheme file")->required();
    sub_split->add_option("--secret", opt_secret, "secret amplitudes re:im,re:im,...")->required();
    sub_split->add_option("--out", opt_out, "output file (default stdout)");
    sub_split->callback([&] { exit_code = cmd_split(opt_scheme, opt_secret, opt_out); });

    CLI::App* sub_rec = app.add_subcommand("reconstruct", "recover the secret from shares");
    sub_rec->add_option("--state", opt_state, "shared state file")->required();
    sub_rec->add_option("--shares", opt_shares, "comma-separated share labels")->required();
    sub_rec->add_option("--expect", opt_expect, "expected secret re:im,... (checks fidelity)");
    sub_rec->callback([&] { exit_code = cmd_reconstruct(opt_state, opt_shares, opt_expect); });

    CLI::App* sub_verify = app.add_subcommand("verify", "run the verification suite");
    sub_verify->add_option("--scheme", opt_scheme, "scheme file to verify");
    sub_verify->add_option("--demo", opt_demo,
                           "named demo: qutrit-233|restricted-22|four-qubit-leak|epr");
    sub_verify->add_option("--report", opt_report, "also write the report to this file");
    sub_verify->callback([&] { exit_code = cmd_verify(opt_scheme, opt_demo, opt_report); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qss::NoCloningViolationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qss::ThresholdFloorError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qss::ParamViolationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qss::BadSecretDimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qss::NotPureSchemeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const qss::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
