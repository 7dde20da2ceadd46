#ifndef BARGMANN_SPECTRAL_HPP
#define BARGMANN_SPECTRAL_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace bargmann::spectral {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double assertion_tolerance = 1e-9;
inline constexpr double adjoint_tolerance = 1e-12;
inline constexpr double rank_tolerance = 1e-12;

/// Matrix of an operator between spans of the orthonormal basis
/// phi_k = z^k / sqrt(pi k!), k in [0, source_max] -> [0, target_max].
struct TruncatedOperator {
    std::size_t source_max = 0;
    std::size_t target_max = 0;
    Matrix matrix;
};

/// sqrt((j+k)! / j!), computed as a product so nothing overflows.
inline double raising_weight(std::size_t j, std::size_t k)
{
    double w = 1.0;
    for (std::size_t t = j + 1; t <= j + k; ++t)
        w *= std::sqrt(static_cast<double>(t));
    return w;
}

namespace detail {
inline std::size_t order(std::span<const Complex> a)
{
    if (a.empty())
        throw std::invalid_argument("coefficient list must not be empty");
    return a.size() - 1;
}
inline void require_leading(std::span<const Complex> a)
{
    if (a.back() == Complex(0.0, 0.0))
        throw std::invalid_argument("leading coefficient a_m must be nonzero");
}
}  // namespace detail

/// Multiplication by p*(z) = sum conj(a_k) z^k, degrees <= N into degrees <= N + m.
inline TruncatedOperator assemble_dstar_1d(std::span<const Complex> a, std::size_t N)
{
    const std::size_t m = detail::order(a);
    TruncatedOperator op{N, N + m, Matrix::Zero(static_cast<Eigen::Index>(N + m + 1), static_cast<Eigen::Index>(N + 1))};
    for (std::size_t j = 0; j <= N; ++j)
        for (std::size_t k = 0; k <= m; ++k)
            op.matrix(static_cast<Eigen::Index>(j + k), static_cast<Eigen::Index>(j)) += std::conj(a[k]) * raising_weight(j, k);
    return op;
}

/// p(d/dz) = sum a_k d^k on degrees <= N (maps into the same span).
inline TruncatedOperator assemble_d_1d(std::span<const Complex> a, std::size_t N)
{
    const std::size_t m = detail::order(a);
    TruncatedOperator op{N, N, Matrix::Zero(static_cast<Eigen::Index>(N + 1), static_cast<Eigen::Index>(N + 1))};
    for (std::size_t j = 0; j <= N; ++j)
        for (std::size_t k = 0; k <= std::min(m, j); ++k)
            op.matrix(static_cast<Eigen::Index>(j - k), static_cast<Eigen::Index>(j)) += a[k] * raising_weight(j - k, k);
    return op;
}

/// max |D - (D*)^H| over the block where both are defined: D on degrees <= N + m,
/// restricted to target rows <= N, against the adjoint of D* on degrees <= N.
inline double adjoint_consistency_deviation(std::span<const Complex> a, std::size_t N)
{
    const std::size_t m = detail::order(a);
    const Matrix d = assemble_d_1d(a, N + m).matrix.topRows(static_cast<Eigen::Index>(N + 1));
    const Matrix dstar_h = assemble_dstar_1d(a, N).matrix.adjoint();
    return (d - dstar_h).cwiseAbs().maxCoeff();
}

struct CoercivityResult {
    double lambda_min = 0.0;
    double bound = 0.0;  // m! |a_m|^2
    bool holds = false;  // lambda_min >= bound - tolerance
};

/// Smallest eigenvalue of (D*)^H D* on polynomials of degree <= N. The range keeps all
/// N + m + 1 degrees, so the Gram matrix is exact on the trial space and the lower bound
/// m! |a_m|^2 must hold at every cutoff.
inline CoercivityResult coercivity_bound_1d(std::span<const Complex> a, std::size_t N)
{
    const std::size_t m = detail::order(a);
    detail::require_leading(a);
    if (N < m)
        throw std::invalid_argument("cutoff N must be at least the order m");
    const Matrix s = assemble_dstar_1d(a, N).matrix;
    const Matrix gram = s.adjoint() * s;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    CoercivityResult r;
    r.lambda_min = solver.eigenvalues().minCoeff();
    double mf = 1.0;
    for (std::size_t t = 2; t <= m; ++t)
        mf *= static_cast<double>(t);
    r.bound = mf * std::norm(a.back());
    r.holds = r.lambda_min >= r.bound - assertion_tolerance;
    return r;
}

/// Monomial coefficients <-> orthonormal coefficients (the common sqrt(pi) factor is dropped).
inline Vector monomial_to_orthonormal(std::span<const Complex> monomial, std::size_t size)
{
    Vector v = Vector::Zero(static_cast<Eigen::Index>(size));
    for (std::size_t k = 0; k < monomial.size() && k < size; ++k)
        v(static_cast<Eigen::Index>(k)) = monomial[k] * raising_weight(0, k);
    for (std::size_t k = size; k < monomial.size(); ++k)
        if (monomial[k] != Complex(0.0, 0.0))
            throw std::invalid_argument("polynomial degree exceeds the truncated space");
    return v;
}

inline std::vector<Complex> orthonormal_to_monomial(const Vector& v)
{
    std::vector<Complex> out(static_cast<std::size_t>(v.size()));
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = v(static_cast<Eigen::Index>(k)) / raising_weight(0, k);
    return out;
}

struct CanonicalSolution {
    std::size_t cutoff = 0;
    std::size_t order = 0;
    Vector alpha;  // orthonormal coefficients, degrees <= N + m
    Vector u0;     // orthonormal coefficients, degrees <= N + m
    double residual_norm = 0.0;           // ||D u0 - alpha||
    double orthogonality_defect = 0.0;    // ||P_ker(D) u0||
    double convergence_estimate = std::numeric_limits<double>::quiet_NaN();  // ||u0(N) - u0(N/2)||
    std::size_t kernel_dimension = 0;
    double constant = 0.0;                // C = 1 / (m! |a_m|^2)
    double norm_ratio = 0.0;              // ||u0||^2 / ||alpha||^2 (0 when alpha = 0)
    bool norm_bound_holds = false;        // ||u0||^2 <= C ||alpha||^2

    std::vector<Complex> u0_monomial() const { return orthonormal_to_monomial(u0); }
};

namespace detail {

struct RawSolve {
    Vector alpha;
    Vector u0;
    Matrix d;
};

inline RawSolve solve_truncated(std::span<const Complex> a, std::span<const Complex> alpha_monomial, std::size_t N)
{
    const std::size_t m = order(a);
    const std::size_t big = N + m;
    const Matrix s = assemble_dstar_1d(a, N).matrix;  // (N+m+1) x (N+1)
    const Matrix d = assemble_d_1d(a, big).matrix;    // (N+m+1) x (N+m+1)
    RawSolve r{monomial_to_orthonormal(alpha_monomial, big + 1), Vector(), d};
    const Matrix box = d * s;
    const Eigen::CompleteOrthogonalDecomposition<Matrix> cod = [&] {
        Eigen::CompleteOrthogonalDecomposition<Matrix> c;
        c.setThreshold(rank_tolerance);
        c.compute(box);
        return c;
    }();
    const Vector v = cod.solve(r.alpha);
    r.u0 = s * v;
    return r;
}

}  // namespace detail

/// Canonical solution of D u = alpha for D u = p(d/dz) u dz in one variable:
/// solve D D* v = alpha in least squares on degrees <= N, then u0 = D* v.
inline CanonicalSolution solve_canonical_1d(std::span<const Complex> a, std::span<const Complex> alpha_monomial,
                                            std::size_t N)
{
    const std::size_t m = detail::order(a);
    detail::require_leading(a);
    std::size_t alpha_degree = 0;
    for (std::size_t k = 0; k < alpha_monomial.size(); ++k)
        if (alpha_monomial[k] != Complex(0.0, 0.0))
            alpha_degree = k;
    if (N < m || alpha_degree > N - m)
        throw std::invalid_argument("cutoff too small: need deg(alpha) <= N - m");

    CanonicalSolution out;
    out.cutoff = N;
    out.order = m;
    auto raw = detail::solve_truncated(a, alpha_monomial, N);
    out.alpha = raw.alpha;
    out.u0 = raw.u0;
    out.residual_norm = (raw.d * out.u0 - out.alpha).norm();

    Eigen::JacobiSVD<Matrix> svd(raw.d, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv.maxCoeff() : 0.0;
    std::vector<Eigen::Index> kernel_columns;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= rank_tolerance * std::max(smax, 1.0))
            kernel_columns.push_back(i);
    out.kernel_dimension = kernel_columns.size();
    Vector projection = Vector::Zero(out.u0.size());
    for (Eigen::Index col : kernel_columns) {
        const Vector k = svd.matrixV().col(col);
        projection += k * k.dot(out.u0);
    }
    out.orthogonality_defect = projection.norm();

    const std::size_t half = N / 2;
    if (half >= m && alpha_degree <= half - m) {
        const auto coarse = detail::solve_truncated(a, alpha_monomial, half);
        Vector padded = Vector::Zero(out.u0.size());
        padded.head(coarse.u0.size()) = coarse.u0;
        out.convergence_estimate = (out.u0 - padded).norm();
    }

    double mf = 1.0;
    for (std::size_t t = 2; t <= m; ++t)
        mf *= static_cast<double>(t);
    out.constant = 1.0 / (mf * std::norm(a.back()));
    const double alpha_sq = out.alpha.squaredNorm();
    const double u0_sq = out.u0.squaredNorm();
    out.norm_ratio = alpha_sq > 0.0 ? u0_sq / alpha_sq : 0.0;
    out.norm_bound_holds = u0_sq <= out.constant * alpha_sq * (1.0 + assertion_tolerance) + assertion_tolerance;
    return out;
}

}  // namespace bargmann::spectral

#endif  // BARGMANN_SPECTRAL_HPP
