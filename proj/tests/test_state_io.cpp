#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "qss/state_io.hpp"

using namespace qss;

namespace {

std::string render_scheme(const SchemeSpec& spec) {
    std::ostringstream out;
    write_scheme(out, spec);
    return out.str();
}

std::string render_state(const SharedState& shared) {
    std::ostringstream out;
    write_state(out, shared);
    return out.str();
}

}  // namespace

TEST_CASE("scheme files render exactly and round-trip") {
    const SchemeSpec spec = build_threshold(2, 3, 3);
    const std::string text = render_scheme(spec);
    CHECK(text ==
          "QSS1-SCHEME\n"
          "k=2\n"
          "n=3\n"
          "q=3\n"
          "s=3\n"
          "points=0,1,2\n"
          "discarded=-\n"
          "bundles=0:0;1:1;2:2\n");

    std::istringstream in(text);
    const SchemeSpec back = read_scheme(in);
    CHECK(back.k == spec.k);
    CHECK(back.n == spec.n);
    CHECK(back.params.q.q == spec.params.q.q);
    CHECK(back.params.s == spec.params.s);
    CHECK(back.params.points == spec.params.points);
    CHECK(back.discarded == spec.discarded);
    REQUIRE(back.bundles.size() == spec.bundles.size());
    for (std::size_t i = 0; i < back.bundles.size(); ++i) {
        CHECK(back.bundles[i].label == spec.bundles[i].label);
        CHECK(back.bundles[i].coords == spec.bundles[i].coords);
    }
    CHECK(render_scheme(back) == text);
}

TEST_CASE("mixed and bundled schemes round-trip") {
    const SchemeSpec mixed = build_threshold(3, 4, 2);
    const std::string mixed_text = render_scheme(mixed);
    CHECK(mixed_text.find("discarded=4\n") != std::string::npos);
    std::istringstream in(mixed_text);
    CHECK(render_scheme(read_scheme(in)) == mixed_text);

    const SchemeSpec grouped = bundle(build_threshold(2, 3, 2), {{0, 2}, {1}});
    const std::string grouped_text = render_scheme(grouped);
    CHECK(grouped_text.find("bundles=A:0,2;B:1\n") != std::string::npos);
    std::istringstream gin(grouped_text);
    CHECK(render_scheme(read_scheme(gin)) == grouped_text);
}

TEST_CASE("state files carry the split output and round-trip byte for byte") {
    const SchemeSpec spec = build_threshold(2, 3, 3);
    const SharedState shared = split(spec, {1.0, 0.0, 0.0});
    const std::string text = render_state(shared);

    CHECK(text.rfind("QSS1\n"
                     "q=3\n"
                     "dims=3,3,3\n"
                     "discarded=-\n"
                     "bundles=0:0;1:1;2:2\n",
                     0) == 0);
    // three branch amplitudes at the frozen codeword indices, real value 1/sqrt(3)
    REQUIRE(text.find("amp 0 ") != std::string::npos);
    REQUIRE(text.find("amp 13 ") != std::string::npos);
    REQUIRE(text.find("amp 26 ") != std::string::npos);
    CHECK(text.find("amp 1 ") == std::string::npos);

    std::istringstream in(text);
    const SharedState back = read_state(in);
    CHECK(back.global.system.dims == std::vector<int>{3, 3, 3});
    CHECK(back.spec.k == 2);
    CHECK(back.spec.n == 3);
    CHECK_FALSE(back.secret.has_value());
    const double r = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(back.global.amps[0] - r) < 1e-15);
    CHECK(std::abs(back.global.amps[13] - r) < 1e-15);
    CHECK(std::abs(back.global.amps[26] - r) < 1e-15);

    CHECK(render_state(back) == text);
}

TEST_CASE("state files preserve complex amplitudes") {
    const SchemeSpec spec = build_threshold(2, 2, 3);
    DeterministicRng rng(19);
    const SharedState shared = split(spec, random_unit_vector(3, rng));
    const std::string text = render_state(shared);
    std::istringstream in(text);
    const SharedState back = read_state(in);
    CHECK(back.spec.discarded == std::vector<int>{2});
    CHECK(back.spec.n == 2);
    for (std::size_t i = 0; i < back.global.amps.size(); ++i)
        CHECK(std::abs(back.global.amps[i] - shared.global.amps[i]) < 1e-15);
    CHECK(render_state(back) == text);

    // the rebuilt state still reconstructs
    const ReconstructionResult res = reconstruct(back, {"0", "1"});
    REQUIRE(res.reconstructible);
    CHECK(fidelity(res.state, secret_state(*shared.secret, spec.params.q)) >= 1.0 - 1e-10);
}

TEST_CASE("reference registers cannot be serialized") {
    const SchemeSpec spec = build_threshold(2, 2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    const PureState bell(RegisterSystem({2, 2}), {r, 0.0, 0.0, r});
    const SharedState shared = split_with_reference(spec, bell);
    std::ostringstream out;
    CHECK_THROWS_AS(write_state(out, shared), Error);
}

TEST_CASE("corrupt scheme files are rejected") {
    const auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_scheme(in), Error);
    };
    reject("");
    reject("QSS1\nk=2\n");  // wrong header
    reject("QSS1-SCHEME\nk=2\nn=3\nq=3\ns=3\npoints=0,1,2\ndiscarded=-\n");  // missing bundles
    reject(
        "QSS1-SCHEME\nk=2\nn=3\nq=3\ns=3\npoints=0,1,2\ndiscarded=-\nbundles=0:0;1:1;2:2\nz=1\n");
    reject(
        "QSS1-SCHEME\nk=2\nk=2\nn=3\nq=3\ns=3\npoints=0,1,2\ndiscarded=-\nbundles=0:0;1:1;2:2\n");
    reject("QSS1-SCHEME\nk=x\nn=3\nq=3\ns=3\npoints=0,1,2\ndiscarded=-\nbundles=0:0;1:1;2:2\n");
    reject("QSS1-SCHEME\nk=2\nn=3\nq=4\ns=3\npoints=0,1,2\ndiscarded=-\nbundles=0:0;1:1;2:2\n");
    reject("QSS1-SCHEME\nk=2\nn=3\nq=3\ns=3\npoints=0,1,2\ndiscarded=-\nbundles=0:0;1:1\n");
    reject("QSS1-SCHEME\nk=2\nn=4\nq=3\ns=3\npoints=0,1,2\ndiscarded=-\nbundles=0:0;1:1;2:2\n");
}

TEST_CASE("corrupt state files are rejected") {
    const std::string head =
        "QSS1\nq=3\ndims=3,3,3\ndiscarded=-\nbundles=0:0;1:1;2:2\n";
    const auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_state(in), Error);
    };
    reject("");
    reject("QSS1-SCHEME\n" + head);
    reject(head);                                          // no amplitudes
    reject(head + "amp 0 1 0\namp 0 0 0\n");               // duplicate index
    reject(head + "amp 27 1 0\n");                         // out of range
    reject(head + "amp -1 1 0\n");                         // negative index
    reject(head + "amp 0 0.5 0\n");                        // not normalized
    reject(head + "amp 0 x 0\n");                          // bad number
    reject(head + "amp 0 1 0\nq=3\n");                     // field after amplitudes
    reject("QSS1\nq=3\ndims=3,3\ndiscarded=-\nbundles=0:0;1:1\namp 0 1 0\n");   // even m
    reject("QSS1\nq=3\ndims=3,2,3\ndiscarded=-\nbundles=0:0;1:1;2:2\namp 0 1 0\n");
    reject("QSS1\nq=3\ndims=3,3,3\ndiscarded=-\nbundles=0:0;1:1:2\namp 0 1 0\n");
}

TEST_CASE("state files accept small rounding but reject real norm errors") {
    const std::string head =
        "QSS1\nq=3\ndims=3,3,3\ndiscarded=-\nbundles=0:0;1:1;2:2\n";
    // off by ~1e-11 in norm: accepted and renormalized
    std::istringstream in(head + "amp 0 0.70710678118 0\namp 13 0.70710678118 0\n");
    const SharedState ok = read_state(in);
    CHECK(ok.global.norm_sq() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("negative zero is normalized in rendered amplitudes") {
    CHECK(detail::render_double(-0.0) == "0");
    CHECK(detail::render_double(0.0) == "0");
    CHECK(detail::render_double(-0.25) == "-0.25");
    CHECK(detail::render_double(1.0 / 3.0) == "0.33333333333333331");
}
