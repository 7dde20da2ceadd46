#ifndef BARGMANN_IO_HPP
#define BARGMANN_IO_HPP

// JSON forms of the exact objects and reports. Exact values are strings
// ("p/q"); inner products carry their "unit": "pi^n".

#include "estimates.hpp"
#include "fock.hpp"
#include "forms.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"
#include "spectral.hpp"
#include "weyl.hpp"

#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace bargmann::io {

using json = nlohmann::json;

inline json to_json(const FockScalar& s)
{
    return json{{"value", s.value.str()}, {"re", to_string(s.value.real())}, {"im", to_string(s.value.imag())},
                {"unit", s.unit()}};
}

inline json to_json(const FockPoly& p)
{
    json terms = json::array();
    for (const auto& [alpha, c] : p.terms())
        terms.push_back({{"alpha", alpha.entries()}, {"re", to_string(c.real())}, {"im", to_string(c.imag())}});
    return terms;
}

inline FockPoly fock_poly_from_json(const json& j, std::size_t n)
{
    if (!j.is_array())
        throw std::invalid_argument("polynomial JSON must be a list of terms");
    FockPoly p(n);
    for (const auto& t : j) {
        const auto entries = t.at("alpha").get<std::vector<unsigned>>();
        if (entries.size() != n)
            throw DimensionError("term exponent has length " + std::to_string(entries.size()) + ", expected " +
                                 std::to_string(n));
        const Rational re = t.contains("re") ? parse_rational(t.at("re").get<std::string>()) : Rational(0);
        const Rational im = t.contains("im") ? parse_rational(t.at("im").get<std::string>()) : Rational(0);
        p.add_term(MultiIndex(entries), GaussianRational(re, im));
    }
    return p;
}

inline json to_json(const PForm& f)
{
    json comps = json::array();
    for (const auto& [J, u] : f.components()) {
        std::vector<std::size_t> one_based;
        for (std::size_t j : J)
            one_based.push_back(j + 1);
        comps.push_back({{"J", one_based}, {"poly", to_json(u)}});
    }
    return json{{"n", f.dimension()}, {"p", f.degree()}, {"components", comps}};
}

inline PForm pform_from_json(const json& j)
{
    const auto n = j.at("n").get<std::size_t>();
    const auto p = j.at("p").get<std::size_t>();
    PForm f(n, p);
    for (const auto& c : j.at("components")) {
        IncreasingIndex J;
        for (auto idx : c.at("J").get<std::vector<std::size_t>>()) {
            if (idx == 0)
                throw std::invalid_argument("form component indices are 1-based");
            J.push_back(idx - 1);
        }
        f.add(J, fock_poly_from_json(c.at("poly"), n));
    }
    return f;
}

inline json to_json(const WeylOp& op) { return op.str(); }

inline json to_json(const QuadraticFormReport& r)
{
    json pairs = json::array();
    for (const auto& [jk, v] : r.per_pair)
        pairs.push_back({{"j", jk.first + 1}, {"k", jk.second + 1}, {"value", v.value.str()}});
    json out{{"value", r.value.value.str()}, {"unit", r.value.unit()}, {"sign", r.sign()}, {"per_pair", pairs}};
    if (!r.decomposition.empty()) {
        json pieces = json::array();
        for (const auto& piece : r.decomposition)
            pieces.push_back({{"name", piece.name}, {"value", piece.value.value.str()}});
        out["decomposition"] = pieces;
    }
    return out;
}

inline json to_json(const ConditionVerdict& v)
{
    json failures = json::array();
    for (const auto& f : v.failures)
        failures.push_back({{"identity", f.identity}, {"lhs", f.lhs.str()}, {"rhs", f.rhs.str()}});
    return json{{"theorem", to_string(v.theorem)},
                {"passed", v.passed()},
                {"sign", v.sign ? json(*v.sign) : json(nullptr)},
                {"first_order_ok", v.first_order_ok},
                {"second_order_ok", v.second_order_ok},
                {"degenerate", v.degenerate},
                {"C1", to_string(v.C1)},
                {"C2", to_string(v.C2)},
                {"estimate_constant", v.estimate_constant ? json(to_string(*v.estimate_constant))
                                                          : json("not applicable")},
                {"failures", failures},
                {"notes", v.notes}};
}

inline json to_json(const EnergyReport& r)
{
    return json{{"equal", r.equal},
                {"unit", r.d_norm_sq.unit()},
                {"Du_norm_sq", r.d_norm_sq.value.str()},
                {"Dstar_u_norm_sq", r.dstar_norm_sq.value.str()},
                {"sum_pk_uj_norm_sq", r.derivative_norms.value.str()},
                {"commutator_form", r.commutator_form.value.str()},
                {"lhs", r.lhs().value.str()},
                {"rhs", r.rhs().value.str()}};
}

inline json to_json(const OneVariableReport& r)
{
    return json{{"equal", r.equal}, {"unit", r.lhs.unit()}, {"lhs", r.lhs.value.str()}, {"rhs", r.rhs.value.str()}};
}

inline json to_json(const DualityReport& r)
{
    return json{{"equal", r.equal}, {"unit", r.lhs.unit()}, {"lhs", r.lhs.value.str()}, {"rhs", r.rhs.value.str()}};
}

inline json complex_vector(const std::vector<spectral::Complex>& v)
{
    json out = json::array();
    for (const auto& c : v)
        out.push_back({c.real(), c.imag()});
    return out;
}

inline json complex_vector(const spectral::Vector& v)
{
    std::vector<spectral::Complex> tmp(v.data(), v.data() + v.size());
    return complex_vector(tmp);
}

inline json nullable(double x) { return std::isnan(x) ? json(nullptr) : json(x); }

inline json to_json(const spectral::CanonicalSolution& s)
{
    return json{{"cutoff", s.cutoff},
                {"order", s.order},
                {"alpha", {{"basis", "orthonormal"}, {"coefficients", complex_vector(s.alpha)}}},
                {"u0", {{"basis", "orthonormal"}, {"coefficients", complex_vector(s.u0)}}},
                {"u0_monomial", {{"basis", "monomial"}, {"coefficients", complex_vector(s.u0_monomial())}}},
                {"residual_norm", s.residual_norm},
                {"orthogonality_defect", s.orthogonality_defect},
                {"kernel_dimension", s.kernel_dimension},
                {"convergence_estimate", nullable(s.convergence_estimate)},
                {"constant_C", s.constant},
                {"norm_ratio", s.norm_ratio},
                {"norm_bound_holds", s.norm_bound_holds},
                {"bound_form", "squared: ||u||^2 <= C ||D*u||^2"},
                {"norm_unit", "sqrt(pi)"}};
}

inline json to_json(const spectral::CoercivityResult& r)
{
    return json{{"lambda_min", r.lambda_min}, {"bound", r.bound}, {"holds", r.holds},
                {"bound_form", "squared: ||u||^2 <= C ||D*u||^2"}};
}

}  // namespace bargmann::io

#endif  // BARGMANN_IO_HPP
