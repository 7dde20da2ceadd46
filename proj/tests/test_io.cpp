#include <bargmann/io.hpp>
#include <bargmann/parse.hpp>
#include <bargmann/random.hpp>

#include <gtest/gtest.h>

using namespace bargmann;
using bargmann::io::json;

TEST(Json, ScalarCarriesUnit)
{
    const json j = io::to_json(FockScalar{GaussianRational(Rational(1, 2), Rational(-3)), 2});
    EXPECT_EQ(j["value"], "1/2 - 3*i");
    EXPECT_EQ(j["re"], "1/2");
    EXPECT_EQ(j["im"], "-3");
    EXPECT_EQ(j["unit"], "pi^2");
}

TEST(Json, FormRoundTripRandomized)
{
    RandomSource rs(601);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        const std::size_t p = static_cast<std::size_t>(rs.uniform(0, static_cast<int>(n)));
        const PForm f = rs.form(n, p, 4);
        const json j = io::to_json(f);
        EXPECT_EQ(io::pform_from_json(json::parse(j.dump())), f) << j.dump();
    }
}

TEST(Json, FormReaderErrors)
{
    EXPECT_THROW(io::pform_from_json(json::parse(R"({"n":2,"p":1,"components":[{"J":[0],"poly":[]}]})")),
                 std::invalid_argument);
    EXPECT_THROW(io::fock_poly_from_json(json::parse(R"([{"alpha":[1],"re":"1"}])"), 2), DimensionError);
    EXPECT_THROW(io::fock_poly_from_json(json::parse(R"({"alpha":[1]})"), 1), std::invalid_argument);
    EXPECT_THROW(io::fock_poly_from_json(json::parse(R"([{"alpha":[1],"re":"1/0"}])"), 1), ParseError);
}

TEST(Json, Reports)
{
    const SymbolPoly p1 = parse_symbol("d1*d2", 2), p2 = parse_symbol("d1^2 + d2^2", 2);
    const auto v = check_conditions_dim2(p1, p2);
    const json jv = io::to_json(v);
    EXPECT_EQ(jv["theorem"], "dim2");
    EXPECT_EQ(jv["passed"], true);
    EXPECT_EQ(jv["sign"], 1);
    EXPECT_EQ(jv["C2"], "4");
    EXPECT_EQ(jv["estimate_constant"], "1");

    const auto vd = check_conditions_dim2(parse_symbol("d1^2 + d2", 2), parse_symbol("d1 + d2^2", 2));
    const json jd = io::to_json(vd);
    EXPECT_EQ(jd["estimate_constant"], "not applicable");
    EXPECT_TRUE(jd["sign"].is_null());
    EXPECT_FALSE(jd["failures"].empty());

    const PForm u = PForm::one_form({parse_polynomial("z1", 2), parse_polynomial("z2", 2)});
    const json jq = io::to_json(decompose_quadratic_form(p1, p2, u, v));
    EXPECT_EQ(jq["value"], "14");
    EXPECT_EQ(jq["unit"], "pi^2");
    EXPECT_EQ(jq["per_pair"].size(), 4u);
    EXPECT_EQ(jq["decomposition"].size(), 4u);

    const json je = io::to_json(energy_identity_check(OperatorFamily({p1, p2}), u));
    EXPECT_EQ(je["equal"], true);
    EXPECT_EQ(je["lhs"], je["rhs"]);

    const std::vector<spectral::Complex> a{0.0, 1.0}, alpha{1.0};
    const json js = io::to_json(spectral::solve_canonical_1d(a, alpha, 16));
    EXPECT_EQ(js["cutoff"], 16);
    EXPECT_EQ(js["u0_monomial"]["basis"], "monomial");
    EXPECT_NEAR(js["u0_monomial"]["coefficients"][1][0].get<double>(), 1.0, 1e-9);
    EXPECT_TRUE(js["convergence_estimate"].is_number());
    EXPECT_TRUE(io::to_json(spectral::solve_canonical_1d(a, alpha, 1))["convergence_estimate"].is_null());
}
