#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "cli_runner.hpp"

namespace {

const std::string kSchemeGolden =
    "QSS1-SCHEME\n"
    "k=2\n"
    "n=3\n"
    "q=3\n"
    "s=3\n"
    "points=0,1,2\n"
    "discarded=-\n"
    "bundles=0:0;1:1;2:2\n";

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Extracts the numeric tokens that follow `prefix` on the first matching line.
std::vector<double> line_numbers(const std::string& output, const std::string& prefix) {
    std::istringstream in(output);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) != 0) continue;
        std::istringstream fields(line.substr(prefix.size()));
        std::vector<double> values;
        double v = 0.0;
        while (fields >> v) values.push_back(v);
        return values;
    }
    FAIL("no line starting with '" + prefix + "' in:\n" + output);
    return {};
}

struct TempFiles {
    std::vector<std::string> paths;
    std::string track(const std::string& p) {
        paths.push_back(p);
        return p;
    }
    ~TempFiles() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
};

}  // namespace

TEST_CASE("new prints the scheme and respects the share bound") {
    const CliResult ok = run_cli("new --k 2 --n 3 --secret-dim 3");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output == kSchemeGolden);

    const CliResult again = run_cli("new --k 2 --n 3 --secret-dim 3");
    CHECK(again.output == ok.output);

    const CliResult cloning = run_cli("new --k 2 --n 4 --secret-dim 3");
    CHECK(cloning.exit_code == 3);
    CHECK(cloning.output.find("no-cloning") != std::string::npos);

    CHECK(run_cli("new --k 0 --n 0").exit_code == 3);
    CHECK(run_cli("new --n 3").exit_code == 2);           // missing --k
    CHECK(run_cli("frobnicate").exit_code == 2);          // unknown subcommand
    CHECK(run_cli("").exit_code == 2);                    // subcommand required
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("split and reconstruct round-trip through files") {
    TempFiles tmp;
    const std::string scheme = tmp.track("cli_scheme.txt");
    const std::string state = tmp.track("cli_state.txt");

    REQUIRE(run_cli("new --k 2 --n 3 --secret-dim 3 --out " + scheme).exit_code == 0);
    CHECK(read_file(scheme) == kSchemeGolden);

    REQUIRE(run_cli("split --scheme " + scheme + " --secret 1:0,0:0,0:0 --out " + state)
                .exit_code == 0);
    const std::string state_text = read_file(state);
    CHECK(state_text.rfind("QSS1\n", 0) == 0);
    CHECK(state_text.find("amp 0 ") != std::string::npos);

    const CliResult rec = run_cli("reconstruct --state " + state + " --shares 0,1");
    CHECK(rec.exit_code == 0);
    CHECK(rec.output.find("RECONSTRUCTED coordinate 0 register-dim 3") != std::string::npos);
    const std::vector<double> amp = line_numbers(rec.output, "amp 0 ");
    REQUIRE(amp.size() == 2);
    CHECK(std::abs(amp[0] - 1.0) < 1e-9);
    CHECK(std::abs(amp[1]) < 1e-9);

    const CliResult good =
        run_cli("reconstruct --state " + state + " --shares 1,2 --expect 1:0,0:0,0:0");
    CHECK(good.exit_code == 0);
    const std::vector<double> fid = line_numbers(good.output, "FIDELITY ");
    REQUIRE(fid.size() == 1);
    CHECK(fid[0] >= 1.0 - 1e-9);

    const CliResult wrong =
        run_cli("reconstruct --state " + state + " --shares 1,2 --expect 0:0,1:0,0:0");
    CHECK(wrong.exit_code == 1);
}

TEST_CASE("too few shares reveal only the maximally mixed state") {
    TempFiles tmp;
    const std::string scheme = tmp.track("cli_scheme_one.txt");
    const std::string state = tmp.track("cli_state_one.txt");
    REQUIRE(run_cli("new --k 2 --n 3 --secret-dim 3 --out " + scheme).exit_code == 0);
    REQUIRE(run_cli("split --scheme " + scheme + " --secret 1:0,0:0,0:0 --out " + state)
                .exit_code == 0);

    const CliResult res = run_cli("reconstruct --state " + state + " --shares 0");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("NOT-RECONSTRUCTIBLE coordinates 0 hold 1 of k=2") !=
          std::string::npos);
    const std::vector<double> d0 = line_numbers(res.output, "rho 0 0 ");
    REQUIRE(d0.size() == 2);
    CHECK(std::abs(d0[0] - 1.0 / 3.0) < 1e-9);
    CHECK(res.output.find("rho 0 1 ") == std::string::npos);

    const CliResult expecting =
        run_cli("reconstruct --state " + state + " --shares 0 --expect 1:0,0:0,0:0");
    CHECK(expecting.exit_code == 1);
}

TEST_CASE("secret parsing errors map to the documented exit codes") {
    TempFiles tmp;
    const std::string scheme = tmp.track("cli_scheme_err.txt");
    REQUIRE(run_cli("new --k 2 --n 3 --secret-dim 3 --out " + scheme).exit_code == 0);

    // a zero vector cannot be normalized: usage error
    CHECK(run_cli("split --scheme " + scheme + " --secret 0:0,0:0").exit_code == 2);
    // four entries exceed the secret dimension of the scheme: parameter violation
    CHECK(run_cli("split --scheme " + scheme + " --secret 1:0,0:0,0:0,0:0").exit_code == 3);
    // unnormalized but nonzero input is accepted and renormalized
    TempFiles tmp2;
    const std::string state = tmp2.track("cli_state_scaled.txt");
    REQUIRE(run_cli("split --scheme " + scheme + " --secret 2:0,0:0,0:0 --out " + state)
                .exit_code == 0);
    CHECK(run_cli("reconstruct --state " + state + " --shares 0,2 --expect 1:0,0:0,0:0")
              .exit_code == 0);
}

TEST_CASE("verify runs demos and scheme reports") {
    const CliResult epr = run_cli("verify --demo epr");
    CHECK(epr.exit_code == 0);
    CHECK(epr.output.find("DEMO-RESULT PASS") != std::string::npos);

    CHECK(run_cli("verify --demo not-a-demo").exit_code == 2);
    CHECK(run_cli("verify").exit_code == 2);

    TempFiles tmp;
    const std::string scheme = tmp.track("cli_scheme_verify.txt");
    REQUIRE(run_cli("new --k 2 --n 3 --secret-dim 3 --out " + scheme).exit_code == 0);
    CHECK(run_cli("verify --scheme " + scheme + " --demo epr").exit_code == 2);

    const std::string report = tmp.track("cli_report.txt");
    const CliResult verified = run_cli("verify --scheme " + scheme + " --report " + report);
    CHECK(verified.exit_code == 0);
    CHECK(verified.output.find("RESULT PASS") != std::string::npos);
    CHECK(read_file(report) == verified.output);

    const CliResult demo1 = run_cli("verify --demo qutrit-233");
    const CliResult demo2 = run_cli("verify --demo qutrit-233");
    CHECK(demo1.exit_code == 0);
    CHECK(demo1.output == demo2.output);
}

TEST_CASE("unreadable and corrupt files exit with the file-error code") {
    CHECK(run_cli("reconstruct --state no_such_file.txt --shares 0,1").exit_code == 2);
    CHECK(run_cli("split --scheme no_such_file.txt --secret 1:0").exit_code == 2);

    TempFiles tmp;
    const std::string bad = tmp.track("cli_bad_state.txt");
    write_file(bad, "QSS1\nq=3\ndims=3,3,3\ndiscarded=-\nbundles=0:0;1:1;2:2\namp 0 0.2 0\n");
    CHECK(run_cli("reconstruct --state " + bad + " --shares 0,1").exit_code == 2);

    // a syntactically valid file with an invalid field dimension is a
    // parameter violation, not a parse error
    const std::string badq = tmp.track("cli_bad_scheme.txt");
    write_file(badq,
               "QSS1-SCHEME\nk=2\nn=3\nq=4\ns=3\npoints=0,1,2\ndiscarded=-\n"
               "bundles=0:0;1:1;2:2\n");
    CHECK(run_cli("verify --scheme " + badq).exit_code == 3);
}
