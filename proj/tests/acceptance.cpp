// Acceptance checks, one line per criterion:  acceptance [N|all]
// Exit status is 0 iff every requested criterion passed.

#include <bargmann/bargmann.hpp>
#include <bargmann/random.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"

using namespace bargmann;

namespace {

// pinned tolerances
constexpr double spectral_tol = 1e-9;   // eigenvalue bound, residuals, orthogonality
constexpr double runtime_1_s = 1.0;     // criterion 1
constexpr double runtime_9_s = 10.0;    // criterion 9

struct Verdict {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

SymbolPoly sym(const char* s) { return parse_symbol(s, 2); }

struct Pair {
    SymbolPoly p1, p2;
    OperatorFamily F() const { return OperatorFamily({p1, p2}); }
};
Pair mixed() { return {sym("d1*d2"), sym("d1^2 + d2^2")}; }
Pair mixed_i() { return {sym("i*d1*d2"), sym("d1^2 + d2^2")}; }
Pair squares() { return {sym("d1^2"), sym("d2^2")}; }
Pair skew() { return {sym("d1^2 + d2"), sym("d1 + d2^2")}; }

PForm skew_form(unsigned n)
{
    return PForm::one_form({FockPoly::monomial(2, MultiIndex{0, n}), FockPoly::monomial(2, MultiIndex{0, n - 1}, -1)});
}

// 1. Skew family on z2^n dz1 - z2^(n-1) dz2 equals (n-1)!(7-n) exactly, n = 8, 9, 10.
Verdict criterion_1()
{
    Verdict v;
    std::ostringstream os;
    const auto t0 = Clock::now();
    const OperatorFamily F = skew().F();
    for (unsigned n : {8u, 9u, 10u}) {
        const GaussianRational got = quadratic_form(F, skew_form(n)).value.value;
        const Integer claimed = factorial(n - 1) * (7 - static_cast<long>(n));
        const bool ok = got == GaussianRational(Rational(claimed));
        v.pass = v.pass && ok;
        os << "n=" << n << " got " << got.str() << " expected " << claimed.get_str() << (ok ? "" : " (mismatch)")
           << "; ";
    }
    const double dt = seconds_since(t0);
    v.pass = v.pass && dt < runtime_1_s;
    os << "time " << dt << " s";
    v.detail = os.str();
    return v;
}

// 2. Closed forms for the mixed, mixed_i and squares families on 50 random forms, degree <= 4.
Verdict criterion_2()
{
    RandomSource rs(1002);
    int bad = 0;
    for (int t = 0; t < 50; ++t) {
        const FockPoly u1 = rs.fock(2, 4), u2 = rs.fock(2, 4);
        const PForm u = PForm::one_form({u1, u2});
        bad += quadratic_form(mixed().F(), u).value.value != GaussianRational(oracle::closed_form_mixed(u1, u2));
        bad += quadratic_form(mixed_i().F(), u).value.value != GaussianRational(oracle::closed_form_mixed_i(u1, u2));
        bad += quadratic_form(squares().F(), u).value.value != GaussianRational(oracle::closed_form_squares(u1, u2));
    }
    return {bad == 0, "150 comparisons, " + std::to_string(bad) + " mismatches"};
}

// 3. Condition checkers with their constants.
Verdict criterion_3()
{
    std::ostringstream os;
    auto check = [&](const char* label, const Pair& P, Theorem th, Rational C1, Rational C2) {
        const auto v = check_conditions_dim2(P.p1, P.p2, th);
        const bool ok = v.passed() && v.C1 == C1 && v.C2 == C2;
        os << label << " " << to_string(th) << (ok ? " ok" : " WRONG") << " (C1=" << v.C1 << ", C2=" << v.C2
           << "); ";
        return ok;
    };
    bool pass = check("mixed", mixed(), Theorem::dim2, 1, 4);
    pass = check("mixed_i", mixed_i(), Theorem::dim2, 1, 4) && pass;
    pass = check("squares", squares(), Theorem::dim23, 2, 2) && pass;
    const auto d2 = check_conditions_dim2(skew().p1, skew().p2, Theorem::dim2);
    const auto d23 = check_conditions_dim2(skew().p1, skew().p2, Theorem::dim23);
    const bool skew_fails = !d2.passed() && !d23.passed() && !d2.failures.empty() && !d23.failures.empty();
    os << "skew fails both: " << (skew_fails ? "yes" : "NO");
    return {pass && skew_fails, os.str()};
}

// 4. One-variable commutator identity, 200 trials, m <= 4, deg u <= 6.
Verdict criterion_4()
{
    RandomSource rs(1004);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        const auto a = rs.coefficients(static_cast<std::size_t>(rs.uniform(0, 4)));
        const FockPoly u = rs.fock(1, 6);
        const auto r = commutator_identity_1d(a, u);
        SymbolPoly p(1);
        for (std::size_t k = 0; k < a.size(); ++k)
            p.add_term(MultiIndex{static_cast<unsigned>(k)}, a[k]);
        const GaussianRational direct =
            norm_sq(oracle::symbol_z(p, u)).value - norm_sq(oracle::symbol_d(p, u)).value;
        bad += !r.equal || r.lhs.value != direct;
    }
    return {bad == 0, "200 trials, " + std::to_string(bad) + " failures"};
}

// 5. Symbol expansions of products and commutators, 200 trials each, n <= 3, deg <= 3.
Verdict criterion_5()
{
    RandomSource rs(1005);
    int bad_product = 0, bad_commutator = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        const SymbolPoly q = rs.symbol(n, 3), p = rs.symbol(n, 3);
        bad_product += hamil_expansion(q, p) != multiply(WeylOp::differential(q), WeylOp::multiplication(p));
    }
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        const SymbolPoly p = rs.symbol(n, 3), q = rs.symbol(n, 3);
        bad_commutator +=
            commutator_expansion(p, q) != commutator(WeylOp::differential(p), WeylOp::conjugate_multiplication(q));
    }
    return {bad_product == 0 && bad_commutator == 0,
            "product " + std::to_string(bad_product) + "/200 failures, commutator " + std::to_string(bad_commutator) +
                "/200 failures"};
}

// 6. D^2 = 0 and (Du, v) = (u, D*v), 200 trials, n <= 3, all degrees.
Verdict criterion_6()
{
    RandomSource rs(1006);
    int bad_sq = 0, bad_dual = 0, sq_cases = 0, dual_cases = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        const OperatorFamily F = rs.family(n, 2);
        for (std::size_t p = 0; p <= n; ++p) {
            const PForm u = rs.form(n, p, 4);
            if (p + 2 <= n) {
                ++sq_cases;
                bad_sq += !d_apply(F, d_apply(F, u)).is_zero();
            }
            if (p + 1 <= n) {
                ++dual_cases;
                bad_dual += !duality_check(F, u, rs.form(n, p + 1, 4)).equal;
            }
        }
    }
    return {bad_sq == 0 && bad_dual == 0 && sq_cases > 0,
            "D^2=0: " + std::to_string(bad_sq) + "/" + std::to_string(sq_cases) + " failures; duality: " +
                std::to_string(bad_dual) + "/" + std::to_string(dual_cases) + " failures"};
}

// 7. Energy identity, 200 trials, n <= 3.
Verdict criterion_7()
{
    RandomSource rs(1007);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = static_cast<std::size_t>(rs.uniform(1, 3));
        bad += !energy_identity_check(rs.family(n, 2), rs.form(n, 1, 4)).equal;
    }
    return {bad == 0, "200 trials, " + std::to_string(bad) + " failures"};
}

// 8. Q(u) >= min(C1, C2) ||u||^2 on 100 random forms per family; scan to degree 6 is empty.
Verdict criterion_8()
{
    RandomSource rs(1008);
    std::ostringstream os;
    bool pass = true;
    const std::pair<const char*, std::pair<Pair, Theorem>> cases[] = {
        {"mixed", {mixed(), Theorem::dim2}}, {"mixed_i", {mixed_i(), Theorem::dim2}}, {"squares", {squares(), Theorem::dim23}}};
    for (const auto& [label, c] : cases) {
        const auto& [P, th] = c;
        const auto v = check_conditions_dim2(P.p1, P.p2, th);
        const Rational lower = std::min(v.C1, v.C2);
        int bad = 0;
        for (int t = 0; t < 100; ++t) {
            const PForm u = rs.form(2, 1, 4);
            bad += quadratic_form(P.F(), u).value.value.real() < lower * form_norm_sq(u).value.real();
        }
        const std::size_t hits = scan_counterexample(P.p1, P.p2, 6).size();
        pass = pass && v.passed() && bad == 0 && hits == 0;
        os << label << ": " << bad << "/100 below bound, " << hits << " scan hits; ";
    }
    return {pass, os.str()};
}

// 9. lambda_min((D*)^H D*) >= m!|a_m|^2 - tol, 20 random coefficient vectors, m <= 3, N in {8, 16, 24}.
Verdict criterion_9()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int bad = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 20; ++t) {
        const std::size_t m = static_cast<std::size_t>(t % 4);
        std::vector<spectral::Complex> a(m + 1);
        for (auto& c : a)
            c = {u(rng), u(rng)};
        while (std::abs(a.back()) < 0.25)
            a.back() = {u(rng), u(rng)};
        for (std::size_t N : {8u, 16u, 24u}) {
            const auto r = spectral::coercivity_bound_1d(a, N);
            bad += r.lambda_min < r.bound - spectral_tol;
            worst = std::min(worst, r.lambda_min - r.bound);
        }
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "60 cases, " << bad << " below bound, min(lambda_min - bound) = " << worst << ", time " << dt << " s";
    return {bad == 0 && dt < runtime_9_s, os.str()};
}

// 10. Canonical solution: exact cases at cutoff 16, plus norm bound and convergence on 50 random data.
Verdict criterion_10()
{
    std::ostringstream os;
    bool pass = true;
    auto exact = [&](const char* label, std::vector<spectral::Complex> a, std::size_t power, double coeff) {
        const std::vector<spectral::Complex> alpha{1.0};
        const auto s = spectral::solve_canonical_1d(a, alpha, 16);
        const auto mono = s.u0_monomial();
        double err = 0.0;
        for (std::size_t k = 0; k < mono.size(); ++k)
            err = std::max(err, std::abs(mono[k] - (k == power ? spectral::Complex(coeff) : spectral::Complex(0.0))));
        const bool ok = err < spectral_tol && s.residual_norm < spectral_tol && s.orthogonality_defect < spectral_tol;
        pass = pass && ok;
        os << label << ": coefficient error " << err << ", residual " << s.residual_norm << ", defect "
           << s.orthogonality_defect << "; ";
    };
    exact("d, u0 = z", {0.0, 1.0}, 1, 1.0);
    exact("d^2, u0 = z^2/2", {0.0, 0.0, 1.0}, 2, 0.5);

    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int bound_failures = 0;
    double worst_change = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 1 + static_cast<std::size_t>(t % 3);
        std::vector<spectral::Complex> a(m + 1), alpha(1 + static_cast<std::size_t>(t % 5));
        for (auto& c : a)
            c = {2 * u(rng), 2 * u(rng)};
        while (std::abs(a.back()) < 0.25)
            a.back() = {2 * u(rng), 2 * u(rng)};
        for (auto& c : alpha)
            c = {u(rng), u(rng)};
        const auto s = spectral::solve_canonical_1d(a, alpha, 16);
        bound_failures += !s.norm_bound_holds;
        worst_change = std::max(worst_change, s.convergence_estimate);
    }
    pass = pass && bound_failures == 0;
    os << "random data: " << bound_failures << "/50 violate ||u0||^2 <= C||alpha||^2, largest N/2-vs-N change "
       << worst_change;
    return {pass, os.str()};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::function<Verdict()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                         criterion_5, criterion_6, criterion_7, criterion_8,
                                                         criterion_9, criterion_10};
    const std::string which = argc > 1 ? argv[1] : "all";
    bool all_pass = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (which != "all" && which != std::to_string(k + 1))
            continue;
        Verdict v;
        try {
            v = criteria[k]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        all_pass = all_pass && v.pass;
        std::cout << "criterion " << (k + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail << std::endl;
    }
    return all_pass ? 0 : 1;
}
