#ifndef BARGMANN_ESTIMATES_HPP
#define BARGMANN_ESTIMATES_HPP

#include "fock.hpp"
#include "forms.hpp"
#include "multiindex.hpp"
#include "polynomial.hpp"
#include "weyl.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bargmann {

struct QuadraticPiece {
    std::string name;
    FockScalar value;
};

/// Q(u) = sum_{j,k} ([p_k, p_j*] u_j, u_k) and its pieces.
struct QuadraticFormReport {
    FockScalar value;
    /// (j, k), 0-based -> ([p_k, p_j*] u_j, u_k)
    std::map<std::pair<std::size_t, std::size_t>, FockScalar> per_pair;
    /// Present only after decompose_quadratic_form.
    std::vector<QuadraticPiece> decomposition;

    int sign() const { return sgn(value.value.real()); }
};

/// The n x n table of commutators [p_k, p_j*], indexed (j, k).
class CommutatorTable {
public:
    explicit CommutatorTable(const OperatorFamily& F) : n_(F.dimension())
    {
        table_.reserve(n_ * n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k)
                table_.push_back(commutator(F.op(k), F.adjoint_op(j)));
    }

    std::size_t dimension() const noexcept { return n_; }
    const WeylOp& at(std::size_t j, std::size_t k) const { return table_.at(j * n_ + k); }

private:
    std::size_t n_;
    std::vector<WeylOp> table_;
};

namespace detail {
inline void require_one_form(const OperatorFamily& F, const PForm& u)
{
    check_family(F, u);
    if (u.degree() != 1)
        throw std::invalid_argument("expected a (1,0)-form, got degree " + std::to_string(u.degree()));
}
}  // namespace detail

inline QuadraticFormReport quadratic_form(const CommutatorTable& table, const PForm& u)
{
    if (u.degree() != 1 || u.dimension() != table.dimension())
        throw DimensionError("quadratic_form: expected a (1,0)-form of dimension " +
                             std::to_string(table.dimension()));
    const std::size_t n = table.dimension();
    QuadraticFormReport r;
    r.value = FockScalar{GaussianRational(), n};
    for (std::size_t j = 0; j < n; ++j) {
        const FockPoly uj = u.component({j});
        for (std::size_t k = 0; k < n; ++k) {
            const FockScalar v = fock_inner(table.at(j, k).apply(uj), u.component({k}));
            r.per_pair[{j, k}] = v;
            r.value += v;
        }
    }
    if (!r.value.value.is_real())
        throw std::logic_error("commutator quadratic form has nonzero imaginary part: " + r.value.value.str());
    return r;
}

inline QuadraticFormReport quadratic_form(const OperatorFamily& F, const PForm& u)
{
    detail::require_one_form(F, u);
    return quadratic_form(CommutatorTable(F), u);
}

/// The four quantities of ||Du||^2 + ||D*u||^2 = sum_{j,k} ||p_k(u_j)||^2 + Q(u).
struct EnergyReport {
    bool equal = false;
    FockScalar d_norm_sq;          // ||Du||^2
    FockScalar dstar_norm_sq;      // ||D*u||^2
    FockScalar derivative_norms;   // sum_{j,k} ||p_k(u_j)||^2
    FockScalar commutator_form;    // Q(u)

    FockScalar lhs() const { return d_norm_sq + dstar_norm_sq; }
    FockScalar rhs() const { return derivative_norms + commutator_form; }
};

inline EnergyReport energy_identity_check(const OperatorFamily& F, const PForm& u)
{
    detail::require_one_form(F, u);
    const std::size_t n = F.dimension();
    EnergyReport r;
    r.d_norm_sq = n >= 2 ? form_norm_sq(d_apply(F, u)) : FockScalar{GaussianRational(), n};
    r.dstar_norm_sq = form_norm_sq(dstar_apply(F, u));
    r.derivative_norms = FockScalar{GaussianRational(), n};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            r.derivative_norms += norm_sq(F.op(k).apply(u.component({j})));
    r.commutator_form = quadratic_form(F, u).value;
    r.equal = r.lhs() == r.rhs();
    return r;
}

struct OneVariableReport {
    bool equal = false;
    FockScalar lhs;  // ([p_m, p_m*] u, u)
    FockScalar rhs;  // sum_l l! ||sum_{k>=l} C(k,l) a_k u^(k-l)||^2
};

/// One-variable identity for p_m = sum_k a_k d^k: the commutator form equals
/// a positive combination of squared norms of derivatives of u.
inline OneVariableReport commutator_identity_1d(const std::vector<GaussianRational>& coeffs, const FockPoly& u)
{
    if (u.dimension() != 1)
        throw DimensionError("commutator_identity_1d expects a polynomial in one variable");
    SymbolPoly p(1);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        p.add_term(MultiIndex{static_cast<unsigned>(k)}, coeffs[k]);

    OneVariableReport r;
    const WeylOp c = commutator(WeylOp::differential(p), WeylOp::conjugate_multiplication(p));
    r.lhs = fock_inner(c.apply(u), u);

    r.rhs = FockScalar{GaussianRational(), 1};
    const std::size_t m = coeffs.empty() ? 0 : coeffs.size() - 1;
    for (std::size_t l = 1; l <= m; ++l) {
        FockPoly inner(1);
        for (std::size_t k = l; k <= m; ++k) {
            const GaussianRational w = coeffs[k] * GaussianRational(Rational(binomial(k, l)));
            inner += u.derivative(MultiIndex{static_cast<unsigned>(k - l)}) * w;
        }
        FockScalar term = norm_sq(inner);
        term.value *= GaussianRational(Rational(factorial(l)));
        r.rhs += term;
    }
    r.equal = r.lhs == r.rhs;
    return r;
}

/// [p(d), q*(z)] = sum_{|alpha|>=1} (1/alpha!) q^(alpha)*(z) p^(alpha)(d), assembled from
/// symbol derivatives.
inline WeylOp commutator_expansion(const SymbolPoly& p, const SymbolPoly& q)
{
    if (p.dimension() != q.dimension())
        throw DimensionError("commutator_expansion: symbol dimensions differ");
    const std::size_t n = p.dimension();
    WeylOp r(n);
    if (p.is_zero() || q.is_zero())
        return r;
    MultiIndex bound = p.max_exponents();
    const MultiIndex qmax = q.max_exponents();
    for (std::size_t j = 0; j < n; ++j)
        bound[j] = std::min(bound[j], qmax[j]);
    for (const MultiIndex& alpha : multiindices_below(bound)) {
        if (alpha.is_zero())
            continue;
        const SymbolPoly dq = q.derivative(alpha).conj();
        const SymbolPoly dp = p.derivative(alpha);
        if (dq.is_zero() || dp.is_zero())
            continue;
        const GaussianRational w(Rational(1) / Rational(alpha.factorial()));
        for (const auto& [za, zc] : dq.terms())
            for (const auto& [db, dc] : dp.terms())
                r.add_term({za, db}, w * zc * dc);
    }
    return r;
}

enum class Theorem { dim2, dim23 };

inline std::string to_string(Theorem t) { return t == Theorem::dim2 ? "dim2" : "dim23"; }

struct IdentityFailure {
    std::string identity;
    WeylOp lhs;
    WeylOp rhs;
};

/// Outcome of checking the first- and second-order sufficient conditions for
/// coercivity of the commutator form in two variables.
struct ConditionVerdict {
    Theorem theorem = Theorem::dim2;
    std::optional<int> sign;
    bool first_order_ok = false;
    bool second_order_ok = false;
    bool degenerate = false;  // some C_j == 0
    Rational C1 = 0;
    Rational C2 = 0;
    std::optional<Rational> estimate_constant;  // 1 / min(C1, C2)
    std::vector<IdentityFailure> failures;
    std::vector<std::string> notes;

    bool passed() const { return estimate_constant.has_value(); }
};

namespace detail {

inline std::string derivative_label(std::size_t j, std::size_t e)
{
    return "p" + std::to_string(j + 1) + "^(e" + std::to_string(e + 1) + ")";
}

/// q^(alpha)*(z) p^(alpha)(d) for one alpha, as a normal-ordered operator.
inline WeylOp adjoint_product(const SymbolPoly& q_alpha, const SymbolPoly& p_alpha)
{
    return multiply(WeylOp::conjugate_multiplication(q_alpha), WeylOp::differential(p_alpha));
}

}  // namespace detail

/// Checks the sign identities and second-order orthogonality conditions for p1, p2 in two
/// variables. `which` selects the pairing of first-order identities:
///   dim2 : p2^(e1)* p1^(e1) = s p1^(e2)* p2^(e2),  p1^(e1)* p2^(e1) = s p2^(e2)* p1^(e2)
///   dim23: p2^(e1)* p1^(e1) = s p1^(e1)* p2^(e1),  p1^(e2)* p2^(e2) = s p2^(e2)* p1^(e2)
/// A single sign s must serve both identities.
inline ConditionVerdict check_conditions_dim2(const SymbolPoly& p1, const SymbolPoly& p2,
                                              Theorem which = Theorem::dim2)
{
    if (p1.dimension() != 2 || p2.dimension() != 2)
        throw DimensionError("condition checks are defined for two variables only");
    for (const SymbolPoly* p : {&p1, &p2})
        if (p->degree().value_or(0) > 2)
            throw std::invalid_argument("condition checks require symbols of degree <= 2");

    ConditionVerdict v;
    v.theorem = which;
    const SymbolPoly* ps[2] = {&p1, &p2};
    SymbolPoly first[2][2];  // first[j][e] = p_j^(e_e)
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t e = 0; e < 2; ++e)
            first[j][e] = ps[j]->derivative(MultiIndex::unit(2, e));

    struct Identity {
        std::string text;
        WeylOp lhs;
        WeylOp rhs;
    };
    auto product = [&](std::size_t a, std::size_t ea, std::size_t b, std::size_t eb) {
        return detail::adjoint_product(first[a][ea], first[b][eb]);
    };
    auto label = [](std::size_t a, std::size_t ea, std::size_t b, std::size_t eb) {
        return detail::derivative_label(a, ea) + "* " + detail::derivative_label(b, eb);
    };
    std::vector<Identity> ids;
    if (which == Theorem::dim2) {
        ids.push_back({label(1, 0, 0, 0) + " = s " + label(0, 1, 1, 1), product(1, 0, 0, 0), product(0, 1, 1, 1)});
        ids.push_back({label(0, 0, 1, 0) + " = s " + label(1, 1, 0, 1), product(0, 0, 1, 0), product(1, 1, 0, 1)});
    } else {
        ids.push_back({label(1, 0, 0, 0) + " = s " + label(0, 0, 1, 0), product(1, 0, 0, 0), product(0, 0, 1, 0)});
        ids.push_back({label(0, 1, 1, 1) + " = s " + label(1, 1, 0, 1), product(0, 1, 1, 1), product(1, 1, 0, 1)});
    }

    auto holds = [](const Identity& id, int s) { return id.lhs == id.rhs * GaussianRational(s); };
    for (int s : {+1, -1}) {
        if (std::all_of(ids.begin(), ids.end(), [&](const Identity& id) { return holds(id, s); })) {
            v.sign = s;
            break;
        }
    }
    v.first_order_ok = v.sign.has_value();
    if (!v.first_order_ok) {
        std::vector<int> individual;
        for (const auto& id : ids) {
            if (holds(id, +1))
                individual.push_back(+1);
            else if (holds(id, -1))
                individual.push_back(-1);
            else
                individual.push_back(0);
        }
        const bool mixed = std::none_of(individual.begin(), individual.end(), [](int s) { return s == 0; });
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (individual[i] == 0 || mixed)
                v.failures.push_back({ids[i].text, ids[i].lhs, ids[i].rhs});
        }
        if (mixed)
            v.notes.push_back("mixed signs: each first-order identity holds, but with different signs; "
                              "a single sign is required");
    }

    // Second order: p_j^(alpha)* p_k^(alpha) = delta_jk c_{j,alpha} for |alpha| = 2.
    v.second_order_ok = true;
    Rational C[2] = {0, 0};
    for (const MultiIndex& alpha : multiindices_of_degree(2, 2)) {
        const Rational inv_fact = Rational(1) / Rational(alpha.factorial());
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                const WeylOp prod =
                    detail::adjoint_product(ps[j]->derivative(alpha), ps[k]->derivative(alpha));
                GaussianRational c;
                const bool constant = prod.is_scalar(&c);
                const std::string text = "p" + std::to_string(j + 1) + "^" + alpha.str() + "* p" +
                                         std::to_string(k + 1) + "^" + alpha.str();
                if (j != k) {
                    if (!prod.is_zero()) {
                        v.second_order_ok = false;
                        v.failures.push_back({text + " = 0", prod, WeylOp(2)});
                    }
                } else if (!constant || !c.is_real() || sgn(c.real()) < 0) {
                    v.second_order_ok = false;
                    v.failures.push_back({text + " = c, c real >= 0", prod, WeylOp(2)});
                } else {
                    C[j] += c.real() * inv_fact;
                }
            }
        }
    }
    v.C1 = C[0];
    v.C2 = C[1];
    v.degenerate = sgn(v.C1) == 0 || sgn(v.C2) == 0;
    if (v.degenerate)
        v.notes.push_back("second order degenerate: C1 or C2 vanishes, no estimate constant");
    if (v.first_order_ok && v.second_order_ok && !v.degenerate)
        v.estimate_constant = Rational(Rational(1) / std::min(v.C1, v.C2));
    return v;
}

/// Q(u) = C1||u1||^2 + C2||u2||^2 + ||p1^(e1)u1 + s p2^(e1)u2||^2 + ||p1^(e2)u1 + s p2^(e2)u2||^2,
/// valid once the conditions hold with sign s.
inline QuadraticFormReport decompose_quadratic_form(const SymbolPoly& p1, const SymbolPoly& p2, const PForm& u,
                                                    const ConditionVerdict& verdict)
{
    if (!verdict.passed() || !verdict.sign)
        throw std::invalid_argument("decompose_quadratic_form requires a passing condition verdict");
    const OperatorFamily F({p1, p2});
    QuadraticFormReport r = quadratic_form(F, u);
    const FockPoly u1 = u.component({0});
    const FockPoly u2 = u.component({1});
    const GaussianRational s(*verdict.sign);
    const std::string sign_text = *verdict.sign > 0 ? "+" : "-";

    auto scaled = [](FockScalar x, const Rational& c) {
        x.value *= GaussianRational(c);
        return x;
    };
    r.decomposition.push_back({"C1*||u1||^2", scaled(norm_sq(u1), verdict.C1)});
    r.decomposition.push_back({"C2*||u2||^2", scaled(norm_sq(u2), verdict.C2)});
    for (std::size_t e = 0; e < 2; ++e) {
        const MultiIndex unit = MultiIndex::unit(2, e);
        const FockPoly w = WeylOp::differential(p1.derivative(unit)).apply(u1) +
                           WeylOp::differential(p2.derivative(unit)).apply(u2) * s;
        const std::string name = "||" + detail::derivative_label(0, e) + " u1 " + sign_text + " " +
                                 detail::derivative_label(1, e) + " u2||^2";
        r.decomposition.push_back({name, norm_sq(w)});
    }
    return r;
}

enum class CoefficientSet { roots_of_unity, rational_grid };

inline std::vector<GaussianRational> scan_coefficients(CoefficientSet set)
{
    const GaussianRational i = GaussianRational::i();
    if (set == CoefficientSet::roots_of_unity)
        return {1, -1, i, -i};
    std::vector<GaussianRational> out;
    for (const Rational& q : {Rational(1), Rational(2), Rational(1, 2)})
        for (const GaussianRational& unit : {GaussianRational(1), GaussianRational(-1), i, -i})
            out.push_back(unit * GaussianRational(q));
    return out;
}

struct CounterexampleHit {
    PForm form;
    FockScalar value;
};

/// Enumerates u = c1 z^a dz1 + c2 z^b dz2 with |a|, |b| <= max_degree and c1, c2 drawn from
/// the coefficient set, returning every form with Q(u) < 0, sorted by value (ties keep
/// enumeration order). Q is evaluated exactly from precomputed sesquilinear blocks.
inline std::vector<CounterexampleHit> scan_counterexample(const SymbolPoly& p1, const SymbolPoly& p2,
                                                          unsigned max_degree,
                                                          CoefficientSet set = CoefficientSet::roots_of_unity)
{
    if (p1.dimension() != 2 || p2.dimension() != 2)
        throw DimensionError("scan_counterexample is defined for two variables");
    const OperatorFamily F({p1, p2});
    const CommutatorTable T(F);
    const auto monos = multiindices_up_to(2, max_degree);
    const std::size_t M = monos.size();
    std::map<MultiIndex, std::size_t> position;
    for (std::size_t a = 0; a < M; ++a)
        position.emplace(monos[a], a);

    // block[j][k][a][b] = (T_jk z^{m_a}, z^{m_b}) / pi^2.
    using Matrix = std::vector<std::vector<GaussianRational>>;
    Matrix block[2][2];
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t k = 0; k < 2; ++k) {
            block[j][k].assign(M, std::vector<GaussianRational>(M));
            for (std::size_t a = 0; a < M; ++a) {
                const FockPoly image = T.at(j, k).apply(FockPoly::monomial(2, monos[a]));
                for (const auto& [gamma, c] : image.terms()) {
                    auto it = position.find(gamma);
                    if (it != position.end())
                        block[j][k][a][it->second] = c * GaussianRational(Rational(gamma.factorial()));
                }
            }
        }
    }

    const auto coeffs = scan_coefficients(set);
    struct Raw {
        std::size_t a, b, c1, c2;
        Rational value;
    };
    std::vector<Raw> raw;
    for (std::size_t a = 0; a < M; ++a) {
        for (std::size_t b = 0; b < M; ++b) {
            const GaussianRational& A = block[0][0][a][a];
            const GaussianRational& B = block[1][1][b][b];
            const GaussianRational& X = block[0][1][a][b];
            const GaussianRational& Y = block[1][0][b][a];
            for (std::size_t i1 = 0; i1 < coeffs.size(); ++i1) {
                for (std::size_t i2 = 0; i2 < coeffs.size(); ++i2) {
                    const GaussianRational& c1 = coeffs[i1];
                    const GaussianRational& c2 = coeffs[i2];
                    const GaussianRational q = GaussianRational(c1.norm_sq()) * A +
                                               GaussianRational(c2.norm_sq()) * B + c1 * c2.conj() * X +
                                               c2 * c1.conj() * Y;
                    if (!q.is_real())
                        throw std::logic_error("scan: non-real quadratic form value");
                    if (sgn(q.real()) < 0)
                        raw.push_back({a, b, i1, i2, q.real()});
                }
            }
        }
    }
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) { return x.value < y.value; });

    std::vector<CounterexampleHit> hits;
    hits.reserve(raw.size());
    for (const Raw& h : raw) {
        PForm u(2, 1);
        u.add({0}, FockPoly::monomial(2, monos[h.a], coeffs[h.c1]));
        u.add({1}, FockPoly::monomial(2, monos[h.b], coeffs[h.c2]));
        hits.push_back({std::move(u), FockScalar{GaussianRational(h.value), 2}});
    }
    return hits;
}

}  // namespace bargmann

#endif  // BARGMANN_ESTIMATES_HPP
