#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "biinterp/cli.hpp"
#include "biinterp/corpus.hpp"

using namespace biinterp;

namespace {

std::string tmp_path(const std::string& name) { return "cli_test_" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json slurp_json(const std::string& path) { return nlohmann::json::parse(slurp(path)); }

}  // namespace

TEST_CASE("verify: a passing instance exits 0 and writes the report") {
    auto out = tmp_path("verify_s3.json");
    int code = run_cli({"verify", "--group", "symmetric:3", "--kappa", "exists y. y*y = x",
                        "--out", out});
    CHECK(code == 0);
    auto j = slurp_json(out);
    CHECK(j["report"]["verdict"] == "bi-interpretable");
    CHECK(j["report"]["steps"].size() == 6);
    CHECK(j["index"] == 2);
    std::remove(out.c_str());
}

TEST_CASE("verify: forced standard mode records the collision and exits 1") {
    auto out = tmp_path("verify_c4_standard.json");
    int code = run_cli({"verify", "--group", "cyclic:4", "--kappa", "exists y. y*y = x",
                        "--mode", "standard", "--out", out});
    CHECK(code == 1);
    auto j = slurp_json(out);
    CHECK(j["report"]["verdict"] == "not-bi-interpretable");
    auto step = j["report"]["steps"][1];
    CHECK(step["name"] == "tuple_encoding_isomorphism");
    CHECK(step["pass"] == false);
    CHECK(step["counterexample"]["collisions"].size() == 2);
    std::remove(out.c_str());
}

TEST_CASE("verify: malformed inputs exit 2") {
    auto out = tmp_path("verify_bad.json");
    CHECK(run_cli({"verify", "--group", "symmetric:3", "--kappa", "x*"}) == 2);
    CHECK(run_cli({"verify", "--group", "nonsense:7", "--kappa", "x = 1"}) == 2);
    CHECK(run_cli({"verify", "--group", "symmetric:3", "--kappa", "x*@q = @q*x"}) == 2);
    CHECK(run_cli({"verify"}) == 2);  // missing required flags
    CHECK(run_cli({"verify", "--group", "symmetric:3", "--kappa", "x*", "--out", out}) == 2);
    CHECK(slurp_json(out)["verdict"] == "input-error");
    std::remove(out.c_str());
}

TEST_CASE("verify: kappa defining a non-subgroup is a verification failure") {
    // squares of D4 form {e, r^2}? no: squares = {0, 2}; that IS a subgroup.
    // pick a formula cutting out a non-closed set: the non-identity involutions plus 1
    int code = run_cli({"verify", "--group", "dihedral:4", "--kappa", "x*x = 1"});
    CHECK(code == 1);
}

TEST_CASE("translate: equivalence verified on a small instance") {
    auto out = tmp_path("translate_s3.json");
    int code = run_cli({"translate", "--group", "symmetric:3", "--kappa", "exists y. y*y = x",
                        "--phi", "forall x. forall y. x*y = y*x", "--out", out});
    CHECK(code == 0);
    auto j = slurp_json(out);
    CHECK(j["source_true"] == false);
    CHECK(j["target_true"] == false);
    CHECK(j["equivalent"] == true);
    std::remove(out.c_str());

    CHECK(run_cli({"translate", "--group", "symmetric:3", "--kappa", "exists y. y*y = x",
                   "--phi", "1 = 1"}) == 0);
}

TEST_CASE("translate: rejects non-sentences and bad formulas") {
    CHECK(run_cli({"translate", "--group", "symmetric:3", "--kappa", "exists y. y*y = x",
                   "--phi", "x = 1"}) == 2);
    CHECK(run_cli({"translate", "--group", "symmetric:3", "--kappa", "exists y. y*y = x",
                   "--phi", "x*"}) == 2);
}

TEST_CASE("translate: a rank-3 sentence on S4/V4 trips the complexity cap") {
    auto out = tmp_path("translate_cap.json");
    int code = run_cli({"translate", "--group", "symmetric:4", "--kappa",
                        "x*x = 1 & (forall y. (y*x*y^-1)*x = x*(y*x*y^-1))", "--phi",
                        "forall x. forall y. forall z. (x*y)*z = x*(y*z)", "--budget", "1000000",
                        "--out", out});
    CHECK(code == 1);
    auto j = slurp_json(out);
    CHECK(j.contains("complexity_cap"));
    CHECK(j["complexity_cap"]["limit"] == 1000000);
    std::remove(out.c_str());
}

TEST_CASE("axiomatize and check-axiom round trip through a certificate file") {
    auto cert = tmp_path("c2.cert.json");
    CHECK(run_cli({"axiomatize", "--group", "cyclic:2", "--tuple", "1", "--out", cert}) == 0);
    auto j = slurp_json(cert);
    CHECK(j["tuple_arity"] == 1);
    CHECK(j["sentence"].is_string());

    CHECK(run_cli({"check-axiom", "--cert", cert, "--group", "cyclic:2", "--tuple", "1"}) == 0);
    CHECK(run_cli({"check-axiom", "--cert", cert, "--group", "cyclic:2", "--tuple", "0"}) == 1);
    CHECK(run_cli({"check-axiom", "--cert", cert, "--group", "cyclic:3", "--tuple", "1"}) == 1);
    CHECK(run_cli({"check-axiom", "--cert", cert, "--group", "cyclic:2", "--tuple", "1,0"}) == 2);
    CHECK(run_cli({"check-axiom", "--cert", "no_such_file.json", "--group", "cyclic:2",
                   "--tuple", "1"}) == 2);
    std::remove(cert.c_str());

    CHECK(run_cli({"axiomatize", "--group", "cyclic:4", "--tuple", "2"}) == 2);  // not generating
}

TEST_CASE("corpus subsets, the empty filter, and the fault fixture") {
    auto out = tmp_path("corpus_sub.json");
    CHECK(run_cli({"corpus", "--instances", "S3_A3,C4_C2", "--out", out}) == 0);
    auto j = slurp_json(out);
    CHECK(j["instances"].size() == 2);
    std::remove(out.c_str());

    CHECK(run_cli({"corpus", "--instances", "", "--out", out}) == 0);
    CHECK(slurp_json(out)["instances"].empty());
    std::remove(out.c_str());

    CHECK(run_cli({"corpus", "--instances", "C6_C3", "--fault", "C6_C3", "--out", out}) == 1);
    auto fj = slurp_json(out);
    auto steps = fj["instances"][0]["report"]["steps"];
    CHECK(steps[0]["name"] == "extension_identities");
    CHECK(steps[0]["pass"] == false);
    CHECK(steps[0]["counterexample"]["identity"] == "defining_identity");
    CHECK(steps[0]["counterexample"]["i"] == 2);
    CHECK(steps[0]["counterexample"]["j"] == 2);
    std::remove(out.c_str());
}

TEST_CASE("corpus reports are byte-stable across runs with the same seed") {
    auto out1 = tmp_path("corpus_det1.json");
    auto out2 = tmp_path("corpus_det2.json");
    CHECK(run_cli({"corpus", "--instances", "S3_A3,Q8_center", "--seed", "9", "--suite-size",
                   "10", "--out", out1}) == 0);
    CHECK(run_cli({"corpus", "--instances", "S3_A3,Q8_center", "--seed", "9", "--suite-size",
                   "10", "--out", out2}) == 0);
    CHECK(slurp(out1) == slurp(out2));

    auto j = slurp_json(out1);
    CHECK(j["instances"][0]["translation_suite"]["failed"] == 0);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("group files load through the CLI") {
    auto path = tmp_path("c6.json");
    {
        std::ofstream f(path);
        f << group_to_json(*cyclic(6)).dump();
    }
    CHECK(run_cli({"verify", "--group", path, "--kappa", "exists y. y*y = x"}) == 0);
    std::remove(path.c_str());
}
