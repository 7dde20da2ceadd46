#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using bargmann::cli::json;

namespace {

struct Invocation {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Invocation run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = bargmann::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(CliEval, Examples)
{
    EXPECT_EQ(run({"eval", "d1^2", "z1^4"}).out, "12*z1^2\n");
    EXPECT_EQ(run({"eval", "z1*d1", "z1^3"}).out, "3*z1^3\n");
    EXPECT_EQ(run({"eval", "d1*d2", "z1^2*z2^3"}).out, "6*z1*z2^2\n");
    const Invocation r = run({"--json", "eval", "d1*d2", "z1^2*z2^3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.doc()["result"], "6*z1*z2^2");
    EXPECT_EQ(r.doc()["n"], 2);
}

TEST(CliCheck, RandomIdentities)
{
    const Invocation c = run({"--json", "check", "comm11", "--random", "100", "--seed", "7"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.doc()["passed"], 100);
    EXPECT_EQ(c.doc()["seed"], 7);

    const Invocation d = run({"--json", "check", "d_squared", "--family", "d1*d2; d1^2+d2^2", "--random", "50"});
    EXPECT_EQ(d.code, 0);
    EXPECT_EQ(d.doc()["passed"], 50);

    for (const char* id : {"hamil", "hamil2", "duality", "energy"}) {
        const Invocation r = run({"--json", "--trials", "30", "check", id});
        EXPECT_EQ(r.code, 0) << id << r.out;
        EXPECT_EQ(r.doc()["failed"], 0) << id;
    }
}

TEST(CliCheck, SingleInstances)
{
    const Invocation e = run({"--json", "check", "energy", "--family", "d1^2+d2; d1+d2^2", "--form", "z2^8; -z2^7"});
    EXPECT_EQ(e.code, 0);
    const json report = e.doc()["instance"]["inputs"]["report"];
    EXPECT_EQ(report["commutator_form"], "115920");
    EXPECT_EQ(report["unit"], "pi^2");
    EXPECT_EQ(report["lhs"], report["rhs"]);

    const Invocation c = run({"--json", "check", "comm11", "--coeffs", "1, i, 2", "--poly", "1 + z1^2"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.doc()["trials"], 1);
    EXPECT_EQ(c.doc()["instance"]["lhs"], c.doc()["instance"]["rhs"]);
}

TEST(CliCheck, FormFromFile)
{
    const auto path = std::filesystem::temp_directory_path() / "bargmann_cli_form.json";
    {
        std::ofstream f(path);
        f << R"({"n": 2, "p": 1, "components": [
                  {"J": [1], "poly": [{"alpha": [0, 8], "re": "1"}]},
                  {"J": [2], "poly": [{"alpha": [0, 7], "re": "-1"}]}]})";
    }
    const Invocation e = run({"--json", "check", "energy", "--family", "d1^2+d2; d1+d2^2", "--form-file", path.string()});
    EXPECT_EQ(e.code, 0) << e.out;
    EXPECT_EQ(e.doc()["instance"]["inputs"]["report"]["commutator_form"], "115920");
    std::filesystem::remove(path);
}

TEST(CliConditions, Examples)
{
    const Invocation a = run({"--json", "conditions", "--family", "d1*d2; d1^2+d2^2"});
    EXPECT_EQ(a.code, 0);
    const json va = a.doc()["verdicts"][0];
    EXPECT_EQ(va["theorem"], "dim2");
    EXPECT_EQ(va["passed"], true);
    EXPECT_EQ(va["sign"], 1);
    EXPECT_EQ(va["C1"], "1");
    EXPECT_EQ(va["C2"], "4");

    const Invocation c = run({"--json", "conditions", "--family", "d1^2; d2^2", "--theorem", "dim23"});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.doc()["verdicts"].size(), 1u);
    EXPECT_EQ(c.doc()["verdicts"][0]["C1"], "2");
    EXPECT_EQ(c.doc()["verdicts"][0]["estimate_constant"], "1/2");

    const Invocation d = run({"--json", "conditions", "--family", "d1^2+d2; d1+d2^2"});
    EXPECT_EQ(d.code, 1);
    for (const auto& v : d.doc()["verdicts"]) {
        EXPECT_EQ(v["passed"], false);
        EXPECT_FALSE(v["failures"].empty());
    }
    // the mixed family does not satisfy the dim23 identities
    EXPECT_EQ(run({"conditions", "--family", "d1*d2; d1^2+d2^2", "--theorem", "dim23"}).code, 1);
}

TEST(CliScan, Examples)
{
    const Invocation a = run({"--json", "scan", "--family", "d1*d2; d1^2+d2^2", "--max-degree", "6"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.doc()["count"], 0);

    const Invocation neg = run({"--json", "scan", "--family", "d1*d2 + d1; d2^2", "--max-degree", "3"});
    EXPECT_EQ(neg.code, 1);
    EXPECT_EQ(neg.doc()["hits"][0]["value"], "-2");

    const Invocation d = run({"--json", "scan", "--family", "d1^2+d2; d1+d2^2", "--max-degree", "8"});
    EXPECT_EQ(d.code, 0);
    EXPECT_EQ(d.doc()["count"], 0);
}

TEST(CliSolve, Examples)
{
    auto coefficient = [](const json& doc, std::size_t k) {
        return doc["solution"]["u0_monomial"]["coefficients"][k][0].get<double>();
    };
    const Invocation r1 = run({"--json", "solve", "--coeffs", "0,1", "--alpha", "1", "--cutoff", "16"});
    EXPECT_EQ(r1.code, 0);
    EXPECT_NEAR(coefficient(r1.doc(), 1), 1.0, 1e-9);
    EXPECT_LT(r1.doc()["solution"]["residual_norm"].get<double>(), 1e-12);

    const Invocation r2 = run({"--json", "solve", "--coeffs", "0,0,1", "--alpha", "1", "--cutoff", "16"});
    EXPECT_EQ(r2.code, 0);
    EXPECT_NEAR(coefficient(r2.doc(), 2), 0.5, 1e-9);

    const Invocation r3 = run({"--json", "solve", "--coeffs", "1", "--alpha", "z1", "--cutoff", "16"});
    EXPECT_EQ(r3.code, 0);
    EXPECT_NEAR(coefficient(r3.doc(), 1), 1.0, 1e-9);

    EXPECT_NE(run({"solve", "--coeffs", "0,1"}).out.find("(1, 0)*z^1"), std::string::npos);
}

TEST(CliExamples, SuitePasses)
{
    const Invocation r = run({"--json", "examples"});
    EXPECT_EQ(r.code, 0);
    const json ex = r.doc()["examples"];
    ASSERT_EQ(ex.size(), 4u);
    EXPECT_EQ(ex[0]["sample_value"], "14");
    EXPECT_EQ(ex[3]["family_values"][0]["value"], "115920");
}

TEST(CliOutput, DeterministicJson)
{
    const std::vector<std::string> args{"--json", "--seed", "42", "--trials", "40", "check", "energy"};
    EXPECT_EQ(run(args).out, run(args).out);
    EXPECT_EQ(run({"--json", "examples"}).out, run({"--json", "examples"}).out);
}

TEST(CliErrors, StructuredAndExitTwo)
{
    const Invocation p = run({"--json", "eval", "d1 +", "z1"});
    EXPECT_EQ(p.code, 2);
    EXPECT_EQ(p.doc()["error"]["kind"], "parse_error");
    EXPECT_EQ(p.doc()["error"]["position"], 4);

    const Invocation dim = run({"--json", "--dim", "3", "check", "energy", "--family", "d1; d2"});
    EXPECT_EQ(dim.code, 2);
    EXPECT_EQ(dim.doc()["error"]["kind"], "dimension_conflict");

    const Invocation mismatch = run({"--json", "check", "energy", "--family", "d1; d2", "--form", "z1; z2; z3"});
    EXPECT_EQ(mismatch.code, 2);
    EXPECT_EQ(mismatch.doc()["error"]["kind"], "dimension_conflict");

    const Invocation idx = run({"--json", "conditions", "--family", "d1; d3"});
    EXPECT_EQ(idx.code, 2);
    EXPECT_EQ(idx.doc()["error"]["position"], 0);

    EXPECT_EQ(run({"check", "bogus"}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"scan", "--family", "d1"}).code, 2);
    EXPECT_EQ(run({"conditions", "--family", "d1^3; d2"}).code, 2);
    EXPECT_EQ(run({"solve", "--coeffs", "1,0"}).code, 2);
    EXPECT_EQ(run({"solve", "--coeffs", "0,1", "--alpha", "z1^20"}).code, 2);
    const Invocation coeffs = run({"--json", "solve", "--coeffs", "1, 2x"});
    EXPECT_EQ(coeffs.code, 2);
    EXPECT_EQ(coeffs.doc()["error"]["kind"], "parse_error");

    const Invocation text = run({"eval", "z0", "z1"});
    EXPECT_EQ(text.code, 2);
    EXPECT_TRUE(text.out.empty());
    EXPECT_NE(text.err.find("error:"), std::string::npos);
}

TEST(CliHelp, ExitsZero)
{
    const Invocation h = run({"--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE(h.out.find("examples"), std::string::npos);
}
