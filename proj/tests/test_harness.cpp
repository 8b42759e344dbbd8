#include <doctest.h>

#include "harness/commands.hpp"
#include "harness/document.hpp"
#include "harness/oracles.hpp"
#include "harness/suites.hpp"
#include "starforge/compare.hpp"
#include "starforge/deform.hpp"
#include "starforge/errors.hpp"

#include <random>
#include <set>

using namespace starforge;
using namespace starforge::harness;

namespace {

std::string data(const std::string& name) { return std::string(STARFORGE_TEST_DATA) + "/" + name; }

std::string parse_error_where(const std::string& text) {
    try {
        parse_document(parse_json_text(text));
    } catch (const ParseError& e) {
        return e.where();
    }
    return "<no error>";
}

CommandOptions quiet() {
    CommandOptions o;
    o.threads = 2;
    return o;
}

}  // namespace

TEST_CASE("scalars serialize as reduced fractions") {
    CHECK(emit_scalar(frac(3, 6)) == "1/2");
    CHECK(emit_scalar(Scalar(-4)) == "-4/1");
    CHECK(parse_scalar_at(json("6/4"), "/x") == frac(3, 2));
    CHECK(parse_scalar_at(json(7), "/x") == 7);
    CHECK_THROWS_AS(parse_scalar_at(json("1/0"), "/x"), ParseError);
    CHECK_THROWS_AS(parse_scalar_at(json(0.5), "/x"), ParseError);
}

TEST_CASE("documents round-trip") {
    std::vector<Presentation> fixtures{
        make_congruence_pair_star(1), make_congruence_pair_star(3), make_lines_star({0, 1, 2}),
        make_initial_star(4),         make_planes_deformation({0, 1, -1}, 3),
        random_tower(5, 5, 3).star,
    };
    for (const auto& p : fixtures) {
        const json once = emit_document(p, json{{"note", "x"}});
        const Document d = parse_document(parse_json_text(once.dump()));
        CHECK(d.presentation.frame().levels() == p.frame().levels());
        CHECK(d.presentation.basis() == p.basis());
        CHECK(d.metadata == json{{"note", "x"}});
        CHECK(emit_document(d.presentation, d.metadata) == once);
    }
}

TEST_CASE("builder scripts round-trip") {
    BuilderScript s;
    s.base.fixture = "lines";
    s.base.c = {0, 1, frac(-1, 2)};
    s.steps.push_back({{1, 1, 1}, {BiPoly::monomial(0, 0, 1, 1, 1), BiPoly::monomial(0, 0, 1, 1, 2),
                                   BiPoly::monomial(0, 0, 1, 1, 5)}});
    const json once = emit_script(s);
    CHECK(emit_script(parse_script(once)) == once);

    BuilderScript r;
    r.random = RandomSpec{4, 3};
    r.seed = 9;
    const json rj = emit_script(r);
    CHECK(emit_script(parse_script(rj)) == rj);
    const BuildResult a = run_script(r), b = run_script(parse_script(rj));
    CHECK(a.result.basis() == b.result.basis());
    CHECK_FALSE(a.resolved.random);
    CHECK(run_script(a.resolved).result.basis() == a.result.basis());
}

TEST_CASE("parse errors point at the offending field") {
    CHECK(parse_error_where(R"({"kind":"star","version":1,"levels":[1,1],"basis":[["1/1","x"]]})") == "/basis/0/1");
    CHECK(parse_error_where(R"({"kind":"star","version":1,"basis":[]})") == "/levels");
    CHECK(parse_error_where(R"({"kind":"cake","version":1})") == "/kind");
    CHECK(parse_error_where(R"({"kind":"star","version":7,"levels":[1,1],"basis":[]})") == "/version");
    CHECK(parse_error_where(R"({"kind":"star",,})").find("line 1, column") == 0);
}

TEST_CASE("analyze exit codes") {
    auto ok = cmd_analyze({data("lines_012.json")}, quiet());
    CHECK(ok.exit_code == 0);
    const json& inv = ok.report["results"][0]["invariants"];
    CHECK(inv["spectrum"] == json::parse("[[0,1,1],[1,0,1],[1,1,0]]"));
    CHECK(inv["lambda"] == json::parse(R"(["1/1","-2/1","1/1"])"));
    CHECK(inv["oblate"] == true);

    auto p3 = cmd_analyze({data("pair_p3.json")}, quiet());
    CHECK(p3.report["results"][0]["invariants"]["spectrum"] == json::parse("[[0,3],[3,0]]"));

    auto bad = cmd_analyze({data("corrupted_basis.json")}, quiet());
    CHECK(bad.exit_code == 1);
    CHECK(bad.text.find("multiplicative closure") != std::string::npos);

    auto initial = cmd_analyze({data("initial_4.json")}, quiet());
    CHECK(initial.exit_code == 0);
    CHECK(initial.report["results"][0]["invariants"]["oblate"] == false);
    CHECK(initial.report["results"][0]["invariants"]["embedding_dimension"] == 4);

    CHECK(cmd_analyze({data("missing.json")}, quiet()).exit_code == 2);
}

TEST_CASE("build command") {
    auto built = cmd_build({data("tower_step.json")}, quiet());
    REQUIRE(built.exit_code == 0);
    const Document d = parse_document(built.report["results"][0]["document"]);
    CHECK(d.presentation.n() == 3);
    CHECK(d.presentation.basis().dim() == 3);
    CHECK(d.metadata.contains("provenance"));

    auto refused = cmd_build({data("refused_step.json")}, quiet());
    CHECK(refused.exit_code == 1);
    CHECK(refused.report["results"][0]["error"]["kind"] == "DegenerateExtension");
    CHECK(refused.text.find("= 0/1") != std::string::npos);
}

TEST_CASE("compare command") {
    auto strict = cmd_compare({data("pair_p2.json"), data("pair_p1.json")}, quiet());
    CHECK(strict.exit_code == 0);
    CHECK(strict.report["result"]["verdict"] == "strictly-included");
    CHECK(strict.report["result"]["witness"]["phi"] == json::parse(R"(["0/1","1/1"])"));
    CHECK(cmd_compare({data("pair_p1.json"), data("pair_p1.json")}, quiet()).report["result"]["verdict"] == "identical");
    CHECK(cmd_compare({data("pair_p1.json"), data("lines_012.json")}, quiet()).exit_code == 2);
    CHECK(cmd_compare({data("pair_p1.json")}, quiet()).exit_code == 2);
}

TEST_CASE("verify is deterministic and rejects unknown suites") {
    CommandOptions a = quiet(), b = quiet();
    a.seed = b.seed = 42;
    a.trials = b.trials = 30;
    a.threads = 1;
    b.threads = 3;
    auto ra = cmd_verify({"ultrametric", "kernel-flatness"}, a);
    auto rb = cmd_verify({"ultrametric", "kernel-flatness"}, b);
    CHECK(ra.exit_code == 0);
    CHECK(without_timing(ra.report) == without_timing(rb.report));
    CHECK(cmd_verify({"no-such-suite"}, a).exit_code == 2);
}

TEST_CASE("trial seeds and ordering") {
    std::set<std::uint64_t> seen;
    for (int k = 0; k < 100; ++k) seen.insert(trial_seed(1, "s", k));
    CHECK(seen.size() == 100);
    CHECK(trial_seed(1, "a", 0) != trial_seed(1, "b", 0));

    auto failures = run_trials(50, 4, [](int k) -> std::optional<TrialFailure> {
        if (k % 7 == 0) return TrialFailure{k, "x", nullptr};
        return std::nullopt;
    });
    REQUIRE(failures.size() == 8);
    for (size_t i = 0; i < failures.size(); ++i) CHECK(failures[i].trial == static_cast<int>(7 * i));
}

TEST_CASE("shrinking keeps the failure and drops the rest") {
    const Tower t = random_tower(11, 5, 3);
    REQUIRE(t.steps.size() == 3);
    BuilderScript s;
    s.base.p = t.base_p;
    s.steps = t.steps;
    auto at_least_three = [](const Presentation& p) { return p.n() >= 3; };
    const BuilderScript small = shrink_script(s, at_least_three);
    CHECK(small.steps.size() == 1);
    CHECK(small.base.p == 1);
    CHECK(at_least_three(run_script(small).result));
    for (size_t k = 0; k < small.steps.front().p_new.size(); ++k)
        CHECK(small.steps.front().p_new[k] <= s.steps.front().p_new[k]);
}

TEST_CASE("freeness oracle on small modules") {
    // t acting on K^2 as a single Jordan block: free of rank 1 over K[t]/(t^2).
    CHECK(naive_free_over_line({{0, 0}, {1, 0}}, 2));
    CHECK_FALSE(naive_free_over_line({{0, 0}, {0, 0}}, 2));
    CHECK(naive_free_over_line({{0, 0}, {0, 0}}, 1));
    std::mt19937_64 rng(3);
    for (int k = 0; k < 100; ++k) {
        const NilpotentModule m = random_nilpotent_module(rng, 8);
        const bool free = std::all_of(m.blocks.begin(), m.blocks.end(), [&](int b) { return b == m.q; });
        CHECK(naive_free_over_line(m.t, m.q) == free);
        CHECK(flatness_over_line(m.t, m.q) == free);
    }
}

TEST_CASE("linear spaces agree with naive elimination") {
    std::mt19937_64 rng(8);
    for (int k = 0; k < 200; ++k) CHECK(cross_check_linear_space(rng) == "");
}
