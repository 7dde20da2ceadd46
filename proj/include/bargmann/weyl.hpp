#ifndef BARGMANN_WEYL_HPP
#define BARGMANN_WEYL_HPP

#include "multiindex.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"

#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace bargmann {

/// Key of a normal-ordered term z^z_part d^d_part.
struct WeylKey {
    MultiIndex z;
    MultiIndex d;

    friend bool operator==(const WeylKey&, const WeylKey&) = default;
};

/// Total degree, then descending lex on the concatenation (z, d).
struct WeylKeyOrder {
    bool operator()(const WeylKey& a, const WeylKey& b) const
    {
        const unsigned da = a.z.degree() + a.d.degree();
        const unsigned db = b.z.degree() + b.d.degree();
        if (da != db)
            return da < db;
        if (a.z != b.z)
            return b.z < a.z;
        return b.d < a.d;
    }
};

namespace detail {

/// Normal form of d^b z^c in one variable as {(k, l) -> coefficient of z^k d^l}.
/// Obtained by completing the rewrite d z -> z d + 1:
/// d^b z^c = (d^{b-1} z^c) d + c d^{b-1} z^{c-1}.
class OneVariableOrdering {
public:
    using Expansion = std::vector<std::pair<std::pair<unsigned, unsigned>, Integer>>;

    static const Expansion& get(unsigned b, unsigned c)
    {
        static std::mutex mutex;
        static std::map<std::pair<unsigned, unsigned>, Expansion> cache;
        std::lock_guard lock(mutex);
        return compute(cache, b, c);
    }

private:
    static const Expansion& compute(std::map<std::pair<unsigned, unsigned>, Expansion>& cache, unsigned b,
                                    unsigned c)
    {
        auto key = std::make_pair(b, c);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
        std::map<std::pair<unsigned, unsigned>, Integer> acc;
        if (b == 0 || c == 0) {
            acc[{c, b}] = 1;
        } else {
            for (const auto& [kl, coeff] : compute(cache, b - 1, c))
                acc[{kl.first, kl.second + 1}] += coeff;
            for (const auto& [kl, coeff] : compute(cache, b - 1, c - 1))
                acc[kl] += coeff * c;
        }
        Expansion e;
        for (auto& [kl, coeff] : acc)
            if (coeff != 0)
                e.emplace_back(kl, coeff);
        return cache.emplace(key, std::move(e)).first->second;
    }
};

}  // namespace detail

/// Element of the Weyl algebra in n variables, stored as a normal-ordered sum
/// of terms c z^alpha d^beta (every multiplication left of every derivative).
class WeylOp {
public:
    using Terms = std::map<WeylKey, GaussianRational, WeylKeyOrder>;

    WeylOp() = default;
    explicit WeylOp(std::size_t dimension) : n_(dimension) {}

    static WeylOp identity(std::size_t n) { return scalar(n, 1); }
    static WeylOp scalar(std::size_t n, const GaussianRational& c)
    {
        WeylOp r(n);
        r.add_term({MultiIndex(n), MultiIndex(n)}, c);
        return r;
    }
    static WeylOp z(std::size_t n, std::size_t j)
    {
        WeylOp r(n);
        r.add_term({MultiIndex::unit(n, j), MultiIndex(n)}, 1);
        return r;
    }
    static WeylOp d(std::size_t n, std::size_t j)
    {
        WeylOp r(n);
        r.add_term({MultiIndex(n), MultiIndex::unit(n, j)}, 1);
        return r;
    }
    static WeylOp term(const MultiIndex& z_part, const MultiIndex& d_part, const GaussianRational& c)
    {
        WeylOp r(z_part.dimension());
        r.add_term({z_part, d_part}, c);
        return r;
    }

    /// p(d/dz): the symbol acting as a constant-coefficient differential operator.
    static WeylOp differential(const SymbolPoly& p)
    {
        WeylOp r(p.dimension());
        for (const auto& [beta, c] : p.terms())
            r.add_term({MultiIndex(p.dimension()), beta}, c);
        return r;
    }

    /// p(z) taken as a multiplication operator.
    static WeylOp multiplication(const SymbolPoly& p)
    {
        WeylOp r(p.dimension());
        for (const auto& [alpha, c] : p.terms())
            r.add_term({alpha, MultiIndex(p.dimension())}, c);
        return r;
    }

    /// p*(z): multiplication by p with conjugated coefficients, the adjoint of p(d/dz).
    static WeylOp conjugate_multiplication(const SymbolPoly& p) { return multiplication(p.conj()); }

    std::size_t dimension() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    GaussianRational coefficient(const MultiIndex& z_part, const MultiIndex& d_part) const
    {
        auto it = terms_.find(WeylKey{z_part, d_part});
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// True when the operator is c * identity; c is written to *value.
    bool is_scalar(GaussianRational* value = nullptr) const
    {
        if (terms_.empty()) {
            if (value)
                *value = 0;
            return true;
        }
        if (terms_.size() != 1)
            return false;
        const auto& [key, c] = *terms_.begin();
        if (!key.z.is_zero() || !key.d.is_zero())
            return false;
        if (value)
            *value = c;
        return true;
    }

    void add_term(const WeylKey& key, const GaussianRational& c)
    {
        if (key.z.dimension() != n_ || key.d.dimension() != n_)
            throw DimensionError("Weyl term dimension does not match operator dimension " + std::to_string(n_));
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    WeylOp operator-() const
    {
        WeylOp r(n_);
        for (const auto& [k, c] : terms_)
            r.terms_.emplace(k, -c);
        return r;
    }
    WeylOp& operator+=(const WeylOp& o)
    {
        check_dim(o);
        for (const auto& [k, c] : o.terms_)
            add_term(k, c);
        return *this;
    }
    WeylOp& operator-=(const WeylOp& o)
    {
        check_dim(o);
        for (const auto& [k, c] : o.terms_)
            add_term(k, -c);
        return *this;
    }
    WeylOp& operator*=(const GaussianRational& s)
    {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_)
            c *= s;
        return *this;
    }

    friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
    friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
    friend WeylOp operator*(WeylOp a, const GaussianRational& s) { return a *= s; }
    friend WeylOp operator*(const GaussianRational& s, WeylOp a) { return a *= s; }

    /// Composition P∘Q, normal ordered.
    friend WeylOp operator*(const WeylOp& p, const WeylOp& q) { return multiply(p, q); }

    friend bool operator==(const WeylOp& a, const WeylOp& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

    static WeylOp multiply(const WeylOp& p, const WeylOp& q)
    {
        p.check_dim(q);
        const std::size_t n = p.n_;
        WeylOp r(n);
        for (const auto& [pk, pc] : p.terms_) {
            for (const auto& [qk, qc] : q.terms_) {
                // z^a d^b z^c d^e: reorder the middle d^b z^c one variable at a time.
                std::vector<std::pair<WeylKey, Integer>> partial{{WeylKey{pk.z, qk.d}, Integer(1)}};
                for (std::size_t j = 0; j < n; ++j) {
                    const auto& expansion = detail::OneVariableOrdering::get(pk.d[j], qk.z[j]);
                    if (expansion.size() == 1 && expansion.front().second == 1) {
                        for (auto& [key, coeff] : partial) {
                            key.z[j] += expansion.front().first.first;
                            key.d[j] += expansion.front().first.second;
                        }
                        continue;
                    }
                    std::vector<std::pair<WeylKey, Integer>> next;
                    next.reserve(partial.size() * expansion.size());
                    for (const auto& [key, coeff] : partial) {
                        for (const auto& [kl, e] : expansion) {
                            WeylKey k = key;
                            k.z[j] += kl.first;
                            k.d[j] += kl.second;
                            next.emplace_back(std::move(k), coeff * e);
                        }
                    }
                    partial = std::move(next);
                }
                const GaussianRational c = pc * qc;
                for (const auto& [key, coeff] : partial)
                    r.add_term(key, c * GaussianRational(Rational(coeff)));
            }
        }
        return r;
    }

    /// Formal adjoint in the Fock inner product: z_j <-> d_j, conjugated coefficients.
    /// (z^a d^b)* = z^b d^a is already normal ordered.
    WeylOp adjoint() const
    {
        WeylOp r(n_);
        for (const auto& [k, c] : terms_)
            r.add_term({k.d, k.z}, c.conj());
        return r;
    }

    FockPoly apply(const FockPoly& f) const
    {
        if (f.dimension() != n_)
            throw DimensionError("cannot apply operator of dimension " + std::to_string(n_) +
                                 " to polynomial of dimension " + std::to_string(f.dimension()));
        FockPoly r(n_);
        for (const auto& [k, c] : terms_) {
            for (const auto& [gamma, fc] : f.terms()) {
                if (!k.d.divides(gamma))
                    continue;
                Integer weight = 1;
                for (std::size_t j = 0; j < n_; ++j)
                    weight *= falling_factorial(gamma[j], k.d[j]);
                r.add_term(gamma - k.d + k.z, c * fc * GaussianRational(Rational(weight)));
            }
        }
        return r;
    }

    /// Normal-ordered terms in graded order, e.g. `1 + z1*d1`.
    std::string str() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [k, c] : terms_) {
            std::string mono = detail::monomial_string('z', k.z);
            std::string dpart = detail::monomial_string('d', k.d);
            if (!mono.empty() && !dpart.empty())
                mono += "*";
            mono += dpart;
            detail::append_term(out, detail::term_string(c, mono));
        }
        return out;
    }

private:
    void check_dim(const WeylOp& o) const
    {
        if (o.n_ != n_)
            throw DimensionError("operator dimension mismatch: " + std::to_string(n_) + " vs " +
                                 std::to_string(o.n_));
    }

    std::size_t n_ = 0;
    Terms terms_;
};

inline WeylOp multiply(const WeylOp& p, const WeylOp& q) { return WeylOp::multiply(p, q); }
inline WeylOp adjoint(const WeylOp& p) { return p.adjoint(); }
inline WeylOp commutator(const WeylOp& p, const WeylOp& q) { return multiply(p, q) - multiply(q, p); }
inline FockPoly apply(const WeylOp& p, const FockPoly& f) { return p.apply(f); }

/// Q(d) P(z) = sum_alpha (1/alpha!) P^(alpha)(z) Q^(alpha)(d), assembled term by term
/// from symbol derivatives. No normal ordering of the composition is performed: each
/// summand is already a multiplication followed by a differentiation.
inline WeylOp hamil_expansion(const SymbolPoly& q, const SymbolPoly& p)
{
    if (q.dimension() != p.dimension())
        throw DimensionError("hamil_expansion: symbol dimensions differ");
    const std::size_t n = q.dimension();
    WeylOp r(n);
    if (q.is_zero() || p.is_zero())
        return r;
    MultiIndex bound = q.max_exponents();
    const MultiIndex pmax = p.max_exponents();
    for (std::size_t j = 0; j < n; ++j)
        bound[j] = std::min(bound[j], pmax[j]);
    for (const MultiIndex& alpha : multiindices_below(bound)) {
        const SymbolPoly dp = p.derivative(alpha);
        const SymbolPoly dq = q.derivative(alpha);
        if (dp.is_zero() || dq.is_zero())
            continue;
        const GaussianRational w(Rational(1, 1) / Rational(alpha.factorial()));
        for (const auto& [za, zc] : dp.terms())
            for (const auto& [db, dc] : dq.terms())
                r.add_term({za, db}, w * zc * dc);
    }
    return r;
}

}  // namespace bargmann

#endif  // BARGMANN_WEYL_HPP
