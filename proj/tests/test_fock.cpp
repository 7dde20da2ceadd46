#include <bargmann/fock.hpp>
#include <bargmann/parse.hpp>
#include <bargmann/random.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace bargmann;

TEST(FockInner, MonomialNormsMatchGaussianMoments)
{
    // ||z^k||^2 / pi against numerical quadrature of the radial integral
    for (unsigned k = 0; k <= 6; ++k) {
        const FockPoly zk = FockPoly::monomial(1, MultiIndex{k});
        const double exact = norm_sq(zk).value.real().get_d();
        EXPECT_NEAR(exact, oracle::gaussian_moment(k), 1e-8 * exact);
    }
}

TEST(FockInner, Examples)
{
    const FockPoly z1sq = parse_polynomial("z1^2", 1);
    EXPECT_EQ(fock_inner(z1sq, z1sq).value, GaussianRational(2));
    EXPECT_EQ(fock_inner(z1sq, z1sq).unit(), "pi^1");
    EXPECT_EQ(fock_inner(parse_polynomial("z1", 2), parse_polynomial("z2", 2)).value, GaussianRational(0));
    const FockPoly z1z2 = parse_polynomial("z1*z2", 2);
    EXPECT_EQ(fock_inner(z1z2, z1z2).value, GaussianRational(1));
    EXPECT_THROW(fock_inner(z1sq, z1z2), DimensionError);
}

TEST(NormSq, Examples)
{
    EXPECT_EQ(norm_sq(FockPoly(2)).value, GaussianRational(0));
    EXPECT_EQ(norm_sq(parse_polynomial("z2^8", 2)).value, GaussianRational(40320));
    EXPECT_EQ(norm_sq(parse_polynomial("1 + z1", 1)).value, GaussianRational(2));
    EXPECT_EQ(norm_sq(parse_polynomial("i*z1 - 1/2", 1)).value, GaussianRational(Rational(5, 4)));
}

TEST(FockInner, SesquilinearRandomized)
{
    RandomSource rs(201);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        const FockPoly u = rs.fock(n, 5), w = rs.fock(n, 5), v = rs.fock(n, 5);
        const GaussianRational a = rs.scalar(), b = rs.scalar();
        EXPECT_EQ(fock_inner(u * a + w * b, v).value, a * fock_inner(u, v).value + b * fock_inner(w, v).value);
        EXPECT_EQ(fock_inner(u, v * a).value, a.conj() * fock_inner(u, v).value);
        EXPECT_EQ(fock_inner(v, u).value, fock_inner(u, v).value.conj());
    }
}

TEST(FockInner, PositiveDefiniteRandomized)
{
    RandomSource rs(202);
    for (int t = 0; t < 200; ++t) {
        const FockPoly u = rs.fock(static_cast<std::size_t>(rs.uniform(1, 3)), 5);
        const FockScalar s = norm_sq(u);
        EXPECT_TRUE(s.value.is_real());
        EXPECT_EQ(fock_inner(u, u), s);
        if (u.is_zero())
            EXPECT_EQ(sgn(s.value.real()), 0);
        else
            EXPECT_GT(sgn(s.value.real()), 0);
    }
}
