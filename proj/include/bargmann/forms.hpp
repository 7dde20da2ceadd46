#ifndef BARGMANN_FORMS_HPP
#define BARGMANN_FORMS_HPP

#include "fock.hpp"
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

/// Strictly increasing tuple J = (j_1 < ... < j_p) of 0-based variable indices.
using IncreasingIndex = std::vector<std::size_t>;

/// All increasing J of length p in {0..n-1}, lexicographic.
inline std::vector<IncreasingIndex> increasing_indices(std::size_t n, std::size_t p)
{
    std::vector<IncreasingIndex> out;
    if (p > n)
        return out;
    IncreasingIndex cur(p);
    auto rec = [&](auto&& self, std::size_t slot, std::size_t from) -> void {
        if (slot == p) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = from; j + (p - slot) <= n; ++j) {
            cur[slot] = j;
            self(self, slot + 1, j + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// dz_k ^ dz_J = sign * dz_{sort(k,J)}; empty when k is already in J.
/// The sign is (-1)^{#{j in J : j < k}}.
inline std::optional<std::pair<int, IncreasingIndex>> wedge_front(std::size_t k, const IncreasingIndex& J)
{
    if (std::find(J.begin(), J.end(), k) != J.end())
        return std::nullopt;
    IncreasingIndex merged;
    merged.reserve(J.size() + 1);
    int sign = 1;
    bool placed = false;
    for (std::size_t j : J) {
        if (!placed && k < j) {
            merged.push_back(k);
            placed = true;
        }
        if (j < k)
            sign = -sign;
        merged.push_back(j);
    }
    if (!placed)
        merged.push_back(k);
    return std::make_pair(sign, std::move(merged));
}

/// (p,0)-form sum'_J u_J dz_J with polynomial coefficients over increasing J.
class PForm {
public:
    using Components = std::map<IncreasingIndex, FockPoly>;

    PForm() = default;
    PForm(std::size_t dimension, std::size_t degree) : n_(dimension), p_(degree)
    {
        if (degree > dimension)
            throw std::invalid_argument("form degree " + std::to_string(degree) + " exceeds dimension " +
                                        std::to_string(dimension));
    }

    /// A 0-form is just a polynomial.
    static PForm function(const FockPoly& u)
    {
        PForm f(u.dimension(), 0);
        f.add(IncreasingIndex{}, u);
        return f;
    }

    /// sum_j u_j dz_j from a full list of n components.
    static PForm one_form(const std::vector<FockPoly>& components)
    {
        if (components.empty())
            throw std::invalid_argument("one_form needs at least one component");
        PForm f(components.size(), 1);
        for (std::size_t j = 0; j < components.size(); ++j)
            f.add({j}, components[j]);
        return f;
    }

    std::size_t dimension() const noexcept { return n_; }
    std::size_t degree() const noexcept { return p_; }
    const Components& components() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }

    FockPoly component(const IncreasingIndex& J) const
    {
        auto it = c_.find(J);
        return it == c_.end() ? FockPoly(n_) : it->second;
    }

    void add(const IncreasingIndex& J, const FockPoly& u)
    {
        validate(J);
        if (u.dimension() != n_)
            throw DimensionError("form component has dimension " + std::to_string(u.dimension()) +
                                 ", form has " + std::to_string(n_));
        if (u.is_zero())
            return;
        auto [it, inserted] = c_.try_emplace(J, u);
        if (!inserted) {
            it->second += u;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    PForm& operator+=(const PForm& o)
    {
        check_shape(o);
        for (const auto& [J, u] : o.c_)
            add(J, u);
        return *this;
    }
    PForm& operator-=(const PForm& o)
    {
        check_shape(o);
        for (const auto& [J, u] : o.c_)
            add(J, -u);
        return *this;
    }
    PForm& operator*=(const GaussianRational& s)
    {
        if (s.is_zero())
            c_.clear();
        for (auto& [J, u] : c_)
            u *= s;
        return *this;
    }
    friend PForm operator+(PForm a, const PForm& b) { return a += b; }
    friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
    friend PForm operator*(const GaussianRational& s, PForm a) { return a *= s; }

    friend bool operator==(const PForm& a, const PForm& b)
    {
        return a.n_ == b.n_ && a.p_ == b.p_ && a.c_ == b.c_;
    }

    std::string str() const
    {
        if (c_.empty())
            return "0";
        std::string out;
        for (const auto& [J, u] : c_) {
            std::string basis;
            for (std::size_t j : J)
                basis += (basis.empty() ? "dz" : "^dz") + std::to_string(j + 1);
            if (!out.empty())
                out += " + ";
            out += basis.empty() ? "(" + u.str() + ")" : "(" + u.str() + ")*" + basis;
        }
        return out;
    }

private:
    void validate(const IncreasingIndex& J) const
    {
        if (J.size() != p_)
            throw std::invalid_argument("component index length " + std::to_string(J.size()) +
                                        " does not match form degree " + std::to_string(p_));
        for (std::size_t i = 0; i < J.size(); ++i) {
            if (J[i] >= n_)
                throw std::invalid_argument("component index out of range");
            if (i && J[i - 1] >= J[i])
                throw std::invalid_argument("component indices must be strictly increasing");
        }
    }
    void check_shape(const PForm& o) const
    {
        if (o.n_ != n_ || o.p_ != p_)
            throw DimensionError("form shape mismatch");
    }

    std::size_t n_ = 0;
    std::size_t p_ = 0;
    Components c_;
};

/// (u, v) = sum'_J (u_J, v_J), in units of pi^n.
inline FockScalar form_inner(const PForm& u, const PForm& v)
{
    if (u.dimension() != v.dimension() || u.degree() != v.degree())
        throw DimensionError("form_inner: shape mismatch");
    FockScalar r{GaussianRational(), u.dimension()};
    for (const auto& [J, uj] : u.components()) {
        auto it = v.components().find(J);
        if (it != v.components().end())
            r += fock_inner(uj, it->second);
    }
    return r;
}

inline FockScalar form_norm_sq(const PForm& u)
{
    FockScalar r{GaussianRational(), u.dimension()};
    for (const auto& [J, uj] : u.components())
        r += norm_sq(uj);
    return r;
}

/// The tuple (p_1, ..., p_n) of constant-coefficient operators defining D.
class OperatorFamily {
public:
    OperatorFamily() = default;
    explicit OperatorFamily(std::vector<SymbolPoly> symbols) : symbols_(std::move(symbols))
    {
        if (symbols_.empty())
            throw std::invalid_argument("operator family must not be empty");
        for (const auto& s : symbols_)
            if (s.dimension() != symbols_.size())
                throw DimensionError("operator family of length " + std::to_string(symbols_.size()) +
                                     " contains a symbol of dimension " + std::to_string(s.dimension()));
        for (const auto& s : symbols_) {
            diff_.push_back(WeylOp::differential(s));
            mult_.push_back(WeylOp::conjugate_multiplication(s));
        }
    }

    std::size_t dimension() const noexcept { return symbols_.size(); }
    const std::vector<SymbolPoly>& symbols() const noexcept { return symbols_; }
    const SymbolPoly& symbol(std::size_t j) const { return symbols_.at(j); }

    /// p_j(d/dz)
    const WeylOp& op(std::size_t j) const { return diff_.at(j); }
    /// p_j*(z)
    const WeylOp& adjoint_op(std::size_t j) const { return mult_.at(j); }

    std::string str() const
    {
        std::string s;
        for (std::size_t j = 0; j < symbols_.size(); ++j)
            s += (j ? "; " : "") + symbols_[j].str();
        return s;
    }

private:
    std::vector<SymbolPoly> symbols_;
    std::vector<WeylOp> diff_;
    std::vector<WeylOp> mult_;
};

namespace detail {
inline void check_family(const OperatorFamily& F, const PForm& u)
{
    if (F.dimension() != u.dimension())
        throw DimensionError("operator family dimension " + std::to_string(F.dimension()) +
                             " does not match form dimension " + std::to_string(u.dimension()));
}
}  // namespace detail

/// Du = sum'_J sum_k p_k(u_J) dz_k ^ dz_J.
inline PForm d_apply(const OperatorFamily& F, const PForm& u)
{
    detail::check_family(F, u);
    if (u.degree() >= u.dimension())
        throw std::domain_error("D is not defined on top-degree forms (p = n = " + std::to_string(u.dimension()) +
                                ")");
    PForm r(u.dimension(), u.degree() + 1);
    for (const auto& [J, uJ] : u.components()) {
        for (std::size_t k = 0; k < u.dimension(); ++k) {
            auto w = wedge_front(k, J);
            if (!w)
                continue;
            FockPoly t = F.op(k).apply(uJ);
            if (w->first < 0)
                t = -t;
            r.add(w->second, t);
        }
    }
    return r;
}

/// D*v = sum'_K sum_j p_j*(z) v_{jK} dz_K, with v_{jK} = sign * v_{sort(j,K)}.
inline PForm dstar_apply(const OperatorFamily& F, const PForm& v)
{
    detail::check_family(F, v);
    if (v.degree() == 0)
        throw std::domain_error("D* is not defined on 0-forms");
    PForm r(v.dimension(), v.degree() - 1);
    for (const auto& K : increasing_indices(v.dimension(), v.degree() - 1)) {
        for (std::size_t j = 0; j < v.dimension(); ++j) {
            auto w = wedge_front(j, K);
            if (!w)
                continue;
            const FockPoly vjK = v.component(w->second);
            if (vjK.is_zero())
                continue;
            FockPoly t = F.adjoint_op(j).apply(vjK);
            if (w->first < 0)
                t = -t;
            r.add(K, t);
        }
    }
    return r;
}

/// D*D + DD*, dropping the piece that does not exist at p = 0 or p = n.
inline PForm box_apply(const OperatorFamily& F, const PForm& u)
{
    detail::check_family(F, u);
    PForm r(u.dimension(), u.degree());
    if (u.degree() < u.dimension())
        r += dstar_apply(F, d_apply(F, u));
    if (u.degree() > 0)
        r += d_apply(F, dstar_apply(F, u));
    return r;
}

struct DualityReport {
    bool equal = false;
    FockScalar lhs;  // (Du, v)
    FockScalar rhs;  // (u, D*v)
};

inline DualityReport duality_check(const OperatorFamily& F, const PForm& u, const PForm& v)
{
    detail::check_family(F, u);
    detail::check_family(F, v);
    if (v.degree() != u.degree() + 1)
        throw std::invalid_argument("duality_check: v must have degree p+1 = " + std::to_string(u.degree() + 1));
    DualityReport r;
    r.lhs = form_inner(d_apply(F, u), v);
    r.rhs = form_inner(u, dstar_apply(F, v));
    r.equal = r.lhs == r.rhs;
    return r;
}

}  // namespace bargmann

#endif  // BARGMANN_FORMS_HPP
