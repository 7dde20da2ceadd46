#ifndef BARGMANN_FOCK_HPP
#define BARGMANN_FOCK_HPP

#include "polynomial.hpp"
#include "scalar.hpp"

#include <cstddef>
#include <string>

namespace bargmann {

/// An inner product value in units of pi^n: the integral equals value * pi^n.
struct FockScalar {
    GaussianRational value;
    std::size_t dimension = 0;

    std::string unit() const { return "pi^" + std::to_string(dimension); }
    std::string str() const { return value.str() + " " + unit(); }

    friend FockScalar operator+(FockScalar a, const FockScalar& b)
    {
        a.value += b.value;
        return a;
    }
    FockScalar& operator+=(const FockScalar& b)
    {
        value += b.value;
        return *this;
    }
    friend bool operator==(const FockScalar& a, const FockScalar& b) { return a.value == b.value; }
};

/// (u, v) / pi^n = sum_alpha u_alpha conj(v_alpha) alpha!.
/// Monomials are orthogonal with ||z^alpha||^2 = pi^n alpha!, so no integration is needed.
inline FockScalar fock_inner(const FockPoly& u, const FockPoly& v)
{
    if (u.dimension() != v.dimension())
        throw DimensionError("fock_inner: dimension mismatch " + std::to_string(u.dimension()) + " vs " +
                             std::to_string(v.dimension()));
    FockScalar r{GaussianRational(), u.dimension()};
    const FockPoly& small = u.size() <= v.size() ? u : v;
    const FockPoly& large = u.size() <= v.size() ? v : u;
    for (const auto& [alpha, c] : small.terms()) {
        auto it = large.terms().find(alpha);
        if (it == large.terms().end())
            continue;
        const GaussianRational& uc = (&small == &u) ? c : it->second;
        const GaussianRational& vc = (&small == &u) ? it->second : c;
        r.value += uc * vc.conj() * GaussianRational(Rational(alpha.factorial()));
    }
    return r;
}

inline FockScalar norm_sq(const FockPoly& u)
{
    FockScalar r{GaussianRational(), u.dimension()};
    Rational acc = 0;
    for (const auto& [alpha, c] : u.terms())
        acc += c.norm_sq() * Rational(alpha.factorial());
    r.value = GaussianRational(acc);
    return r;
}

}  // namespace bargmann

#endif  // BARGMANN_FOCK_HPP
