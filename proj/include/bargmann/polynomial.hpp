#ifndef BARGMANN_POLYNOMIAL_HPP
#define BARGMANN_POLYNOMIAL_HPP

#include "multiindex.hpp"
#include "scalar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bargmann {

namespace detail {

inline std::string monomial_string(char letter, const MultiIndex& alpha)
{
    std::string s;
    for (std::size_t j = 0; j < alpha.dimension(); ++j) {
        if (alpha[j] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += letter + std::to_string(j + 1);
        if (alpha[j] > 1)
            s += "^" + std::to_string(alpha[j]);
    }
    return s;
}

inline std::string term_string(const GaussianRational& c, const std::string& monomial)
{
    if (monomial.empty())
        return c.str();
    if (c == GaussianRational(1))
        return monomial;
    if (c == GaussianRational(-1))
        return "-" + monomial;
    if (c.is_real() || sgn(c.real()) == 0)
        return c.str() + "*" + monomial;
    return "(" + c.str() + ")*" + monomial;
}

inline void append_term(std::string& out, const std::string& term)
{
    if (out.empty())
        out = term;
    else if (term.front() == '-')
        out += " - " + term.substr(1);
    else
        out += " + " + term;
}

}  // namespace detail

struct FockTag {
    static constexpr char letter = 'z';
};
struct SymbolTag {
    static constexpr char letter = 'd';
};

/// Sparse polynomial in n variables over Q(i). Zero coefficients are never stored,
/// so equality is map equality. The tag separates function-space elements from
/// operator symbols; the arithmetic is shared.
template <class Tag>
class Polynomial {
public:
    using Terms = std::map<MultiIndex, GaussianRational, GradedOrder>;

    Polynomial() = default;
    explicit Polynomial(std::size_t dimension) : n_(dimension) {}

    static Polynomial constant(std::size_t dimension, const GaussianRational& c)
    {
        return monomial(dimension, MultiIndex(dimension), c);
    }
    static Polynomial monomial(std::size_t dimension, const MultiIndex& alpha, const GaussianRational& c = 1)
    {
        Polynomial p(dimension);
        p.add_term(alpha, c);
        return p;
    }
    static Polynomial variable(std::size_t dimension, std::size_t j)
    {
        return monomial(dimension, MultiIndex::unit(dimension, j));
    }

    std::size_t dimension() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    GaussianRational coefficient(const MultiIndex& alpha) const
    {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// Total degree; nullopt for the zero polynomial.
    std::optional<unsigned> degree() const
    {
        if (terms_.empty())
            return std::nullopt;
        return terms_.rbegin()->first.degree();
    }

    /// Componentwise maximum exponent over all stored terms.
    MultiIndex max_exponents() const
    {
        MultiIndex m(n_);
        for (const auto& [alpha, c] : terms_)
            for (std::size_t j = 0; j < n_; ++j)
                m[j] = std::max(m[j], alpha[j]);
        return m;
    }

    void add_term(const MultiIndex& alpha, const GaussianRational& c)
    {
        if (alpha.dimension() != n_)
            throw DimensionError("term dimension " + std::to_string(alpha.dimension()) +
                                 " does not match polynomial dimension " + std::to_string(n_));
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Polynomial conj() const
    {
        Polynomial r(n_);
        for (const auto& [alpha, c] : terms_)
            r.terms_.emplace(alpha, c.conj());
        return r;
    }

    /// d^alpha p, the alpha-th partial derivative.
    Polynomial derivative(const MultiIndex& alpha) const
    {
        check_dim(alpha.dimension());
        Polynomial r(n_);
        for (const auto& [gamma, c] : terms_) {
            if (!alpha.divides(gamma))
                continue;
            Integer f = 1;
            for (std::size_t j = 0; j < n_; ++j)
                f *= falling_factorial(gamma[j], alpha[j]);
            r.add_term(gamma - alpha, c * GaussianRational(Rational(f)));
        }
        return r;
    }

    Polynomial operator-() const
    {
        Polynomial r(n_);
        for (const auto& [alpha, c] : terms_)
            r.terms_.emplace(alpha, -c);
        return r;
    }

    Polynomial& operator+=(const Polynomial& o)
    {
        check_dim(o.n_);
        for (const auto& [alpha, c] : o.terms_)
            add_term(alpha, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o)
    {
        check_dim(o.n_);
        for (const auto& [alpha, c] : o.terms_)
            add_term(alpha, -c);
        return *this;
    }
    Polynomial& operator*=(const GaussianRational& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [alpha, c] : terms_)
            c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const GaussianRational& s) { return a *= s; }
    friend Polynomial operator*(const GaussianRational& s, Polynomial a) { return a *= s; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check_dim(b.n_);
        Polynomial r(a.n_);
        for (const auto& [alpha, c] : a.terms_)
            for (const auto& [beta, d] : b.terms_)
                r.add_term(alpha + beta, c * d);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [alpha, c] : terms_)
            detail::append_term(out, detail::term_string(c, detail::monomial_string(Tag::letter, alpha)));
        return out;
    }

private:
    void check_dim(std::size_t other) const
    {
        if (other != n_)
            throw DimensionError("polynomial dimension mismatch: " + std::to_string(n_) + " vs " +
                                 std::to_string(other));
    }

    std::size_t n_ = 0;
    Terms terms_;
};

/// A polynomial u(z) viewed as an element of the Segal-Bargmann space.
using FockPoly = Polynomial<FockTag>;

/// The symbol p(w) of the constant-coefficient operator p(d/dz_1, ..., d/dz_n).
using SymbolPoly = Polynomial<SymbolTag>;

inline SymbolPoly symbol_derivative(const SymbolPoly& p, const MultiIndex& alpha) { return p.derivative(alpha); }

/// Reinterpret coefficients under a different tag (same exponents, same values).
template <class To, class From>
Polynomial<To> retag(const Polynomial<From>& p)
{
    Polynomial<To> r(p.dimension());
    for (const auto& [alpha, c] : p.terms())
        r.add_term(alpha, c);
    return r;
}

}  // namespace bargmann

#endif  // BARGMANN_POLYNOMIAL_HPP
