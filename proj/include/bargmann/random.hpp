#ifndef BARGMANN_RANDOM_HPP
#define BARGMANN_RANDOM_HPP

#include "forms.hpp"
#include "multiindex.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"
#include "weyl.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace bargmann {

/// Deterministic generator of small exact test objects. Identical seeds give identical streams.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937_64& engine() noexcept { return rng_; }

    /// Small Gaussian rational, possibly zero, with denominators up to 4.
    GaussianRational scalar()
    {
        auto part = [&] {
            if (coin(0.3))
                return Rational(0);
            const int num = uniform(-5, 5);
            const int den = uniform(1, 4);
            return Rational(num, den);
        };
        Rational re = part(), im = part();
        re.canonicalize();
        im.canonicalize();
        return {re, im};
    }

    GaussianRational nonzero_scalar()
    {
        for (;;) {
            GaussianRational c = scalar();
            if (!c.is_zero())
                return c;
        }
    }

    MultiIndex multiindex(std::size_t n, unsigned max_degree)
    {
        const unsigned d = static_cast<unsigned>(uniform(0, static_cast<int>(max_degree)));
        MultiIndex m(n);
        for (unsigned t = 0; t < d; ++t)
            ++m[static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1))];
        return m;
    }

    template <class Tag>
    Polynomial<Tag> polynomial(std::size_t n, unsigned max_degree, int max_terms = 4)
    {
        Polynomial<Tag> p(n);
        const int terms = uniform(0, max_terms);
        for (int t = 0; t < terms; ++t) {
            const MultiIndex alpha = multiindex(n, max_degree);
            p.add_term(alpha, scalar());
        }
        return p;
    }

    FockPoly fock(std::size_t n, unsigned max_degree, int max_terms = 4)
    {
        return polynomial<FockTag>(n, max_degree, max_terms);
    }

    SymbolPoly symbol(std::size_t n, unsigned max_degree, int max_terms = 3)
    {
        return polynomial<SymbolTag>(n, max_degree, max_terms);
    }

    /// Mixed operator with terms z^a d^b, |a| + |b| <= max_degree.
    WeylOp weyl(std::size_t n, unsigned max_degree, int max_terms = 3)
    {
        WeylOp op(n);
        const int terms = uniform(0, max_terms);
        for (int t = 0; t < terms; ++t) {
            const MultiIndex a = multiindex(n, max_degree);
            const MultiIndex b = multiindex(n, max_degree - a.degree());
            op.add_term({a, b}, scalar());
        }
        return op;
    }

    OperatorFamily family(std::size_t n, unsigned max_degree)
    {
        std::vector<SymbolPoly> ps;
        for (std::size_t j = 0; j < n; ++j)
            ps.push_back(symbol(n, max_degree));
        return OperatorFamily(std::move(ps));
    }

    PForm form(std::size_t n, std::size_t p, unsigned max_degree, int max_terms = 3)
    {
        PForm f(n, p);
        for (const auto& J : increasing_indices(n, p))
            if (coin(0.8))
                f.add(J, fock(n, max_degree, max_terms));
        return f;
    }

    /// Coefficients a_0..a_m of a one-variable operator with a_m != 0.
    std::vector<GaussianRational> coefficients(std::size_t m)
    {
        std::vector<GaussianRational> a(m + 1);
        for (std::size_t k = 0; k < m; ++k)
            a[k] = scalar();
        a[m] = nonzero_scalar();
        return a;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace bargmann

#endif  // BARGMANN_RANDOM_HPP
