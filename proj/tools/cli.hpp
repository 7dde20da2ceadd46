#ifndef BARGMANN_TOOLS_CLI_HPP
#define BARGMANN_TOOLS_CLI_HPP

// Command-line front end. Everything is a plain function so the tests can drive
// it without a process: run() takes the argument list and two streams and
// returns the exit code (0 all checks passed, 1 some check failed, 2 bad job).

#include <bargmann/bargmann.hpp>
#include <bargmann/io.hpp>
#include <bargmann/random.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bargmann::cli {

using json = nlohmann::json;

inline constexpr std::uint64_t default_seed = 1;
inline constexpr int default_trials = 100;

/// A job that cannot run: bad flags, unparsable DSL, inconsistent dimensions.
class UsageError : public std::runtime_error {
public:
    UsageError(std::string kind, const std::string& message, std::string input = {},
               std::optional<std::size_t> position = std::nullopt)
        : std::runtime_error(message), kind_(std::move(kind)), input_(std::move(input)), position_(position) {}

    json to_json() const
    {
        json e{{"kind", kind_}, {"message", what()}};
        if (!input_.empty())
            e["input"] = input_;
        if (position_)
            e["position"] = *position_;
        return json{{"error", e}};
    }

private:
    std::string kind_;
    std::string input_;
    std::optional<std::size_t> position_;
};

struct JobSpec {
    std::string command;
    std::vector<std::string> positional;  // eval: operator, operand; check: identity name
    std::optional<std::size_t> dim;
    std::string family;
    std::string form;
    std::string form_file;
    std::string poly;
    std::string coeffs;
    std::string alpha = "1";
    std::string theorem = "any";
    unsigned max_degree = 6;
    std::size_t cutoff = 16;
    std::uint64_t seed = default_seed;
    int trials = default_trials;
    bool json_output = false;
    bool grid = false;
};

/// Result of a command: machine report, rendered text, overall verdict.
struct Outcome {
    bool ok = true;
    json report;
    std::string text;
};

namespace detail {

inline std::string fmt_double(double x)
{
    if (std::isnan(x))
        return "n/a";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class Table {
public:
    Table& row(const std::string& key, const std::string& value)
    {
        rows_.emplace_back(key, value);
        return *this;
    }
    Table& blank()
    {
        rows_.emplace_back("", "");
        return *this;
    }
    std::string str() const
    {
        std::size_t w = 0;
        for (const auto& [k, v] : rows_)
            w = std::max(w, k.size());
        std::ostringstream os;
        for (const auto& [k, v] : rows_) {
            if (k.empty() && v.empty())
                os << '\n';
            else
                os << std::left << std::setw(static_cast<int>(w + 2)) << k << v << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& t : out) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    }
    return out;
}

template <class F>
auto parsed(const std::string& what, const std::string& text, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ParseError& e) {
        throw UsageError("parse_error", what + ": " + e.what(), text, e.position());
    } catch (const DimensionError& e) {
        throw UsageError("dimension_error", what + ": " + e.what(), text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("invalid_argument", what + ": " + e.what(), text);
    }
}

inline std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace detail

/// Inputs after validation: DSL parsed, dimension settled.
struct ResolvedJob {
    JobSpec spec;
    std::optional<std::size_t> n;
    std::optional<OperatorFamily> family;
    std::optional<PForm> form;
    std::optional<FockPoly> poly;
    std::vector<GaussianRational> coeffs;
};

inline std::vector<GaussianRational> parse_coefficients(const std::string& text)
{
    std::vector<GaussianRational> out;
    std::size_t offset = 0;
    for (const auto& piece : detail::split(text, ',')) {
        try {
            out.push_back(GaussianRational::parse(piece));
        } catch (const ParseError& e) {
            throw UsageError("parse_error", std::string("--coeffs: ") + e.what(), text, offset + e.position());
        }
        offset += piece.size() + 1;
    }
    return out;
}

/// Settles n from --dim, the family length and the form length; any disagreement is an error.
inline ResolvedJob validate(const JobSpec& spec)
{
    ResolvedJob job{spec, spec.dim, std::nullopt, std::nullopt, std::nullopt, {}};
    auto settle = [&](std::size_t n, const std::string& source) {
        if (job.n && *job.n != n)
            throw UsageError("dimension_conflict", source + " implies n = " + std::to_string(n) +
                                                       " but n = " + std::to_string(*job.n) + " was already fixed");
        job.n = n;
    };
    if (spec.dim && *spec.dim == 0)
        throw UsageError("invalid_argument", "--dim must be at least 1");
    if (spec.trials < 1)
        throw UsageError("invalid_argument", "--trials must be at least 1");

    if (!spec.family.empty()) {
        const auto parts = detail::split(spec.family, ';');
        settle(parts.size(), "--family");
        std::vector<SymbolPoly> ps;
        for (const auto& p : parts)
            ps.push_back(detail::parsed("--family", p, [&] { return parse_symbol(p, *job.n); }));
        job.family.emplace(std::move(ps));
    }
    if (!spec.form.empty() && !spec.form_file.empty())
        throw UsageError("invalid_argument", "give either --form or --form-file, not both");
    if (!spec.form.empty()) {
        const auto parts = detail::split(spec.form, ';');
        settle(parts.size(), "--form");
        std::vector<FockPoly> us;
        for (const auto& p : parts)
            us.push_back(detail::parsed("--form", p, [&] { return parse_polynomial(p, *job.n); }));
        job.form = PForm::one_form(us);
    }
    if (!spec.form_file.empty()) {
        std::ifstream in(spec.form_file);
        if (!in)
            throw UsageError("io_error", "cannot open " + spec.form_file);
        try {
            job.form = io::pform_from_json(json::parse(in));
        } catch (const json::exception& e) {
            throw UsageError("parse_error", std::string("--form-file: ") + e.what(), spec.form_file);
        } catch (const std::exception& e) {
            throw UsageError("invalid_argument", std::string("--form-file: ") + e.what(), spec.form_file);
        }
        settle(job.form->dimension(), "--form-file");
    }
    if (!spec.coeffs.empty())
        job.coeffs = parse_coefficients(spec.coeffs);
    if (!spec.poly.empty()) {
        settle(1, "--poly");
        job.poly = detail::parsed("--poly", spec.poly, [&] { return parse_polynomial(spec.poly, 1); });
    }

    const std::string& c = spec.command;
    if (c == "eval") {
        if (spec.positional.size() != 2)
            throw UsageError("invalid_argument", "eval takes an operator and an operand");
        std::size_t top = 1;
        for (const auto& s : spec.positional)
            top = std::max(top, detail::parsed("eval", s, [&] { return max_variable_index(s); }));
        if (!job.n)
            job.n = top;
        else if (*job.n < top)
            throw UsageError("dimension_conflict", "--dim " + std::to_string(*job.n) + " but input uses index " +
                                                       std::to_string(top));
    } else if (c == "check") {
        static const std::vector<std::string> names{"hamil", "hamil2", "comm11", "energy", "duality", "d_squared"};
        if (spec.positional.size() != 1 ||
            std::find(names.begin(), names.end(), spec.positional[0]) == names.end())
            throw UsageError("invalid_argument",
                             "check needs one of: hamil, hamil2, comm11, energy, duality, d_squared",
                             spec.positional.empty() ? std::string() : spec.positional[0]);
        const std::string& id = spec.positional[0];
        if (id == "comm11" && job.poly && job.coeffs.empty())
            throw UsageError("invalid_argument", "check comm11 with --poly also needs --coeffs");
        if (id == "energy" && job.form && !job.family)
            throw UsageError("invalid_argument", "check energy with --form also needs --family");
        if (job.form && job.form->degree() != 1)
            throw UsageError("invalid_argument", "--form must be a 1-form here");
        if (id == "d_squared" && job.n && *job.n < 2)
            throw UsageError("invalid_argument", "d_squared needs n >= 2");
        if ((id == "hamil" || id == "hamil2" || id == "comm11") && job.family)
            throw UsageError("invalid_argument", "--family does not apply to check " + id);
    } else if (c == "conditions" || c == "scan") {
        if (!job.family)
            throw UsageError("invalid_argument", c + " needs --family \"p1; p2\"");
        if (*job.n != 2)
            throw UsageError("dimension_error", c + " is defined for n = 2 only");
        if (c == "conditions" && spec.theorem != "any" && spec.theorem != "dim2" && spec.theorem != "dim23")
            throw UsageError("invalid_argument", "--theorem must be dim2, dim23 or any", spec.theorem);
        if (c == "conditions")
            for (const auto& p : job.family->symbols())
                if (p.degree().value_or(0) > 2)
                    throw UsageError("invalid_argument", "conditions needs symbols of degree <= 2", p.str());
    } else if (c == "solve") {
        if (job.coeffs.empty())
            throw UsageError("invalid_argument", "solve needs --coeffs \"a0,...,am\"");
        if (job.coeffs.back().is_zero())
            throw UsageError("invalid_argument", "leading coefficient a_m must be nonzero", spec.coeffs);
        job.poly = detail::parsed("--alpha", spec.alpha, [&] { return parse_polynomial(spec.alpha, 1); });
        const std::size_t m = job.coeffs.size() - 1;
        const unsigned deg = job.poly->degree().value_or(0);
        if (spec.cutoff < m || deg > spec.cutoff - m)
            throw UsageError("invalid_argument", "--cutoff too small: need deg(alpha) <= cutoff - m");
    } else if (c != "examples") {
        throw UsageError("invalid_argument", "unknown command", c);
    }
    return job;
}

// ---------------------------------------------------------------------------
// commands

inline Outcome cmd_eval(const ResolvedJob& job)
{
    const std::size_t n = *job.n;
    const std::string& op_text = job.spec.positional[0];
    const std::string& arg_text = job.spec.positional[1];
    const WeylOp op = detail::parsed("operator", op_text, [&] { return parse_operator(op_text, n); });
    const FockPoly u = detail::parsed("operand", arg_text, [&] { return parse_polynomial(arg_text, n); });
    const FockPoly r = op.apply(u);
    Outcome out;
    out.report = {{"n", n}, {"operator", op.str()}, {"operand", u.str()}, {"result", r.str()},
                  {"terms", io::to_json(r)}};
    out.text = r.str() + "\n";
    return out;
}

namespace detail {

/// One instance of an identity: both sides, plus a description of the inputs.
struct Instance {
    bool equal;
    std::string lhs, rhs;
    json inputs;
};

inline Outcome run_trials(const std::string& name, int trials, const std::function<Instance(int)>& one)
{
    int passed = 0;
    std::optional<Instance> first_failure, only;
    for (int t = 0; t < trials; ++t) {
        Instance inst = one(t);
        if (trials == 1)
            only = inst;
        if (inst.equal)
            ++passed;
        else if (!first_failure)
            first_failure = std::move(inst);
    }
    Outcome out;
    out.ok = passed == trials;
    out.report = {{"identity", name}, {"trials", trials}, {"passed", passed}, {"failed", trials - passed}};
    Table t;
    t.row("identity", name).row("trials", std::to_string(trials)).row("passed", std::to_string(passed));
    if (only) {
        // a single given instance: show what was computed, not just the count
        out.report["instance"] = {{"lhs", only->lhs}, {"rhs", only->rhs}, {"inputs", only->inputs}};
        bool sides_shown = false;
        for (const auto& [key, value] : only->inputs.items()) {
            if (value.is_string())
                t.row(key, value.get<std::string>());
            else if (value.is_object())
                for (const auto& [k2, v2] : value.items()) {
                    t.row(k2, v2.is_string() ? v2.get<std::string>() : v2.dump());
                    sides_shown = sides_shown || k2 == "lhs";
                }
        }
        if (!sides_shown)
            t.row("lhs", only->lhs).row("rhs", only->rhs);
    }
    if (first_failure) {
        out.report["first_failure"] = {
            {"lhs", first_failure->lhs}, {"rhs", first_failure->rhs}, {"inputs", first_failure->inputs}};
        t.row("first failure lhs", first_failure->lhs).row("first failure rhs", first_failure->rhs);
    }
    t.row("verdict", pass_fail(out.ok));
    out.text = t.str();
    return out;
}

inline std::size_t pick_n(const ResolvedJob& job, RandomSource& rs, int lo = 1)
{
    return job.n ? *job.n : static_cast<std::size_t>(rs.uniform(lo, 3));
}

}  // namespace detail

inline Outcome cmd_check(const ResolvedJob& job)
{
    const std::string& id = job.spec.positional[0];
    RandomSource rs(job.spec.seed);
    using detail::Instance;
    auto family_for = [&](std::size_t n) { return job.family ? *job.family : rs.family(n, 2); };

    if (id == "hamil" || id == "hamil2") {
        return detail::run_trials(id, job.spec.trials, [&](int) {
            const std::size_t n = detail::pick_n(job, rs);
            const SymbolPoly q = rs.symbol(n, 3), p = rs.symbol(n, 3);
            const WeylOp lhs = id == "hamil" ? hamil_expansion(q, p) : commutator_expansion(q, p);
            const WeylOp rhs = id == "hamil" ? multiply(WeylOp::differential(q), WeylOp::multiplication(p))
                                             : commutator(WeylOp::differential(q), WeylOp::conjugate_multiplication(p));
            return Instance{lhs == rhs, lhs.str(), rhs.str(), {{"n", n}, {"q", q.str()}, {"p", p.str()}}};
        });
    }
    if (id == "comm11") {
        const bool single = job.poly.has_value();
        return detail::run_trials(id, single ? 1 : job.spec.trials, [&](int) {
            const std::vector<GaussianRational> a =
                job.coeffs.empty() ? rs.coefficients(static_cast<std::size_t>(rs.uniform(0, 4))) : job.coeffs;
            const FockPoly u = single ? *job.poly : rs.fock(1, 6);
            const auto r = commutator_identity_1d(a, u);
            json coeffs = json::array();
            for (const auto& c : a)
                coeffs.push_back(c.str());
            return Instance{r.equal, r.lhs.str(), r.rhs.str(), {{"coeffs", coeffs}, {"u", u.str()}}};
        });
    }
    if (id == "energy") {
        const bool single = job.form.has_value();
        return detail::run_trials(id, single ? 1 : job.spec.trials, [&](int) {
            const std::size_t n = detail::pick_n(job, rs);
            const OperatorFamily F = family_for(n);
            const PForm u = single ? *job.form : rs.form(n, 1, 4);
            const auto r = energy_identity_check(F, u);
            json inputs{{"family", F.str()}, {"form", u.str()}, {"report", io::to_json(r)}};
            return Instance{r.equal, r.lhs().str(), r.rhs().str(), inputs};
        });
    }
    if (id == "duality") {
        return detail::run_trials(id, job.spec.trials, [&](int) {
            const std::size_t n = detail::pick_n(job, rs);
            const OperatorFamily F = family_for(n);
            const std::size_t p = static_cast<std::size_t>(rs.uniform(0, static_cast<int>(n) - 1));
            const PForm u = rs.form(n, p, 4), v = rs.form(n, p + 1, 4);
            const auto r = duality_check(F, u, v);
            return Instance{r.equal, r.lhs.str(), r.rhs.str(),
                            {{"family", F.str()}, {"u", u.str()}, {"v", v.str()}}};
        });
    }
    // d_squared
    return detail::run_trials(id, job.spec.trials, [&](int) {
        const std::size_t n = detail::pick_n(job, rs, 2);
        const OperatorFamily F = family_for(n);
        const std::size_t p = static_cast<std::size_t>(rs.uniform(0, static_cast<int>(n) - 2));
        const PForm u = rs.form(n, p, 4);
        const PForm dd = d_apply(F, d_apply(F, u));
        return Instance{dd.is_zero(), dd.str(), "0", {{"family", F.str()}, {"u", u.str()}}};
    });
}

namespace detail {

inline void render_verdict(Table& t, const ConditionVerdict& v)
{
    std::string line = pass_fail(v.passed());
    if (v.sign)
        line += std::string("  sign ") + (*v.sign > 0 ? "+1" : "-1");
    line += "  C1 " + to_string(v.C1) + "  C2 " + to_string(v.C2);
    line += "  constant " + (v.estimate_constant ? to_string(*v.estimate_constant) : std::string("n/a"));
    t.row(to_string(v.theorem), line);
    for (const auto& f : v.failures)
        t.row("  violated", f.identity + ": " + f.lhs.str() + " vs " + f.rhs.str());
    for (const auto& note : v.notes)
        t.row("  note", note);
}

}  // namespace detail

inline Outcome cmd_conditions(const ResolvedJob& job)
{
    const SymbolPoly& p1 = job.family->symbol(0);
    const SymbolPoly& p2 = job.family->symbol(1);
    std::vector<ConditionVerdict> verdicts;
    if (job.spec.theorem != "dim23")
        verdicts.push_back(check_conditions_dim2(p1, p2, Theorem::dim2));
    if (job.spec.theorem != "dim2")
        verdicts.push_back(check_conditions_dim2(p1, p2, Theorem::dim23));

    Outcome out;
    out.ok = std::any_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.passed(); });
    json list = json::array();
    detail::Table t;
    t.row("family", job.family->str());
    for (const auto& v : verdicts) {
        list.push_back(io::to_json(v));
        detail::render_verdict(t, v);
    }
    t.row("verdict", detail::pass_fail(out.ok));
    out.report = {{"family", job.family->str()}, {"requested", job.spec.theorem}, {"verdicts", list},
                  {"passed", out.ok}};
    out.text = t.str();
    return out;
}

inline Outcome cmd_scan(const ResolvedJob& job)
{
    const auto set = job.spec.grid ? CoefficientSet::rational_grid : CoefficientSet::roots_of_unity;
    const auto hits = scan_counterexample(job.family->symbol(0), job.family->symbol(1), job.spec.max_degree, set);
    Outcome out;
    out.ok = hits.empty();
    json list = json::array();
    detail::Table t;
    t.row("family", job.family->str())
        .row("max degree", std::to_string(job.spec.max_degree))
        .row("coefficients", job.spec.grid ? "rational grid" : "roots of unity")
        .row("negative forms", std::to_string(hits.size()));
    for (const auto& h : hits) {
        list.push_back({{"form", h.form.str()}, {"value", h.value.value.str()}, {"unit", h.value.unit()},
                        {"form_json", io::to_json(h.form)}});
        t.row("  " + h.value.str(), h.form.str());
    }
    t.row("verdict", hits.empty() ? "no negative form found" : "negative forms found");
    out.report = {{"family", job.family->str()}, {"max_degree", job.spec.max_degree},
                  {"coefficients", job.spec.grid ? "rational_grid" : "roots_of_unity"}, {"hits", list},
                  {"count", hits.size()}};
    out.text = t.str();
    return out;
}

inline Outcome cmd_solve(const ResolvedJob& job)
{
    std::vector<spectral::Complex> a;
    for (const auto& c : job.coeffs)
        a.emplace_back(c.real().get_d(), c.imag().get_d());
    const unsigned deg = job.poly->degree().value_or(0);
    std::vector<spectral::Complex> alpha(deg + 1);
    for (const auto& [k, c] : job.poly->terms())
        alpha[k[0]] = {c.real().get_d(), c.imag().get_d()};

    const auto s = spectral::solve_canonical_1d(a, alpha, job.spec.cutoff);
    const auto cb = spectral::coercivity_bound_1d(a, job.spec.cutoff);

    Outcome out;
    out.ok = s.norm_bound_holds && s.residual_norm < spectral::assertion_tolerance && cb.holds;
    out.report = {{"solution", io::to_json(s)}, {"coercivity", io::to_json(cb)}, {"passed", out.ok}};

    std::string u0;
    const auto mono = s.u0_monomial();
    for (std::size_t k = 0; k < mono.size(); ++k) {
        if (std::abs(mono[k]) < spectral::assertion_tolerance)
            continue;
        if (!u0.empty())
            u0 += " + ";
        u0 += "(" + detail::fmt_double(mono[k].real()) + ", " + detail::fmt_double(mono[k].imag()) + ")";
        if (k)
            u0 += "*z^" + std::to_string(k);
    }
    detail::Table t;
    t.row("order m", std::to_string(s.order))
        .row("cutoff N", std::to_string(s.cutoff))
        .row("u0 (monomial basis)", u0.empty() ? "0" : u0)
        .row("residual", detail::fmt_double(s.residual_norm))
        .row("orthogonality defect", detail::fmt_double(s.orthogonality_defect))
        .row("kernel dimension", std::to_string(s.kernel_dimension))
        .row("change from N/2", detail::fmt_double(s.convergence_estimate))
        .row("||u0||^2/||alpha||^2", detail::fmt_double(s.norm_ratio))
        .row("C = 1/(m!|a_m|^2)", detail::fmt_double(s.constant))
        .row("lambda_min", detail::fmt_double(cb.lambda_min))
        .row("m!|a_m|^2", detail::fmt_double(cb.bound))
        .row("verdict", detail::pass_fail(out.ok));
    out.text = t.str();
    return out;
}

/// The four two-variable families, their expected verdicts, and the forms
/// z2^n dz1 - z2^(n-1) dz2 on the last one.
inline Outcome cmd_examples(const ResolvedJob& job)
{
    struct Case {
        std::string label, p1, p2;
        std::optional<Theorem> passes;
        std::optional<int> sign;
        Rational C1, C2;
    };
    const std::vector<Case> cases{
        {"mixed", "d1*d2", "d1^2 + d2^2", Theorem::dim2, 1, 1, 4},
        {"mixed_i", "i*d1*d2", "d1^2 + d2^2", Theorem::dim2, -1, 1, 4},
        {"squares", "d1^2", "d2^2", Theorem::dim23, std::nullopt, 2, 2},
        {"skew", "d1^2 + d2", "d1 + d2^2", std::nullopt, std::nullopt, 0, 0},
    };
    Outcome out;
    json list = json::array();
    detail::Table t;
    const PForm sample = PForm::one_form({parse_polynomial("z1", 2), parse_polynomial("z2", 2)});
    for (const Case& c : cases) {
        const SymbolPoly p1 = parse_symbol(c.p1, 2), p2 = parse_symbol(c.p2, 2);
        const OperatorFamily F({p1, p2});
        const auto v2 = check_conditions_dim2(p1, p2, Theorem::dim2);
        const auto v23 = check_conditions_dim2(p1, p2, Theorem::dim23);
        bool ok;
        if (c.passes) {
            const ConditionVerdict& v = *c.passes == Theorem::dim2 ? v2 : v23;
            ok = v.passed() && v.C1 == c.C1 && v.C2 == c.C2 && (!c.sign || v.sign == c.sign);
        } else {
            ok = !v2.passed() && !v23.passed();
        }
        const auto q = quadratic_form(F, sample);
        json entry{{"label", c.label},
                   {"family", F.str()},
                   {"dim2", io::to_json(v2)},
                   {"dim23", io::to_json(v23)},
                   {"sample_form", sample.str()},
                   {"sample_value", q.value.value.str()},
                   {"unit", q.value.unit()}};
        t.row("family " + c.label, F.str());
        detail::render_verdict(t, v2);
        detail::render_verdict(t, v23);
        t.row("Q(" + sample.str() + ")", q.value.str());

        if (c.passes) {
            const auto hits = scan_counterexample(p1, p2, job.spec.max_degree);
            ok = ok && hits.empty();
            entry["scan"] = {{"max_degree", job.spec.max_degree}, {"count", hits.size()}};
            t.row("scan to degree " + std::to_string(job.spec.max_degree), std::to_string(hits.size()) +
                                                                              " negative forms");
        } else {
            json values = json::array();
            for (unsigned n : {8u, 9u, 10u}) {
                const PForm u = PForm::one_form({FockPoly::monomial(2, MultiIndex{0, n}),
                                                 FockPoly::monomial(2, MultiIndex{0, n - 1}, -1)});
                const auto e = energy_identity_check(F, u);
                ok = ok && e.equal;
                values.push_back({{"n", n}, {"form", u.str()}, {"value", e.commutator_form.value.str()},
                                  {"energy_identity", e.equal}});
                t.row("Q(" + u.str() + ")", e.commutator_form.str());
            }
            entry["family_values"] = values;
        }
        entry["as_expected"] = ok;
        t.row("expected verdicts", detail::pass_fail(ok)).blank();
        out.ok = out.ok && ok;
        list.push_back(entry);
    }
    out.report = {{"examples", list}, {"passed", out.ok}};
    out.text = t.str();
    return out;
}

inline Outcome execute(const ResolvedJob& job)
{
    const std::string& c = job.spec.command;
    if (c == "eval")
        return cmd_eval(job);
    if (c == "check")
        return cmd_check(job);
    if (c == "conditions")
        return cmd_conditions(job);
    if (c == "scan")
        return cmd_scan(job);
    if (c == "solve")
        return cmd_solve(job);
    return cmd_examples(job);
}

// ---------------------------------------------------------------------------
// argument parsing

inline void build_app(CLI::App& app, JobSpec& spec)
{
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.add_flag("--json", spec.json_output, "Emit JSON instead of a table");
    app.add_option("--seed", spec.seed, "Seed for randomized checks")->capture_default_str();
    app.add_option("--trials,--random", spec.trials, "Number of randomized trials")->capture_default_str();
    app.add_option("--dim", spec.dim, "Number of variables n (inferred when omitted)");

    auto* eval = app.add_subcommand("eval", "Apply an operator to a polynomial");
    eval->add_option("operands", spec.positional, "OPERATOR OPERAND")->expected(2)->required();

    auto* check = app.add_subcommand("check", "Verify an identity on given or random inputs");
    check->add_option("identity", spec.positional, "hamil | hamil2 | comm11 | energy | duality | d_squared")
        ->expected(1)
        ->required();
    check->add_option("--family", spec.family, "Symbols p1; ...; pn");
    check->add_option("--form", spec.form, "1-form components u1; ...; un");
    check->add_option("--form-file", spec.form_file, "Form as JSON");
    check->add_option("--coeffs", spec.coeffs, "comm11: a0,...,am");
    check->add_option("--poly", spec.poly, "comm11: polynomial u in z1");

    auto* cond = app.add_subcommand("conditions", "Check the sign and second-order conditions for n = 2");
    cond->add_option("--family", spec.family, "p1; p2")->required();
    cond->add_option("--theorem", spec.theorem, "dim2 | dim23 | any")->capture_default_str();

    auto* scan = app.add_subcommand("scan", "Search monomial 1-forms with negative commutator form");
    scan->add_option("--family", spec.family, "p1; p2")->required();
    scan->add_option("--max-degree", spec.max_degree, "Largest monomial degree")->capture_default_str();
    scan->add_flag("--grid", spec.grid, "Use the rational coefficient grid");

    auto* solve = app.add_subcommand("solve", "Canonical solution of p(d/dz) u = alpha in one variable");
    solve->add_option("--coeffs", spec.coeffs, "a0,...,am")->required();
    solve->add_option("--alpha", spec.alpha, "Polynomial datum in z1")->capture_default_str();
    solve->add_option("--cutoff", spec.cutoff, "Degree cutoff N")->capture_default_str();

    auto* ex = app.add_subcommand("examples", "Run the two-variable example suite");
    ex->add_option("--max-degree", spec.max_degree, "Scan degree")->capture_default_str();

    for (auto* sub : {eval, check, cond, scan, solve, ex})
        sub->callback([&spec, sub] { spec.command = sub->get_name(); });
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    JobSpec spec;
    CLI::App app{"Exact computations for polynomial differential operators on Fock space", "bargmann"};
    build_app(app, spec);
    const bool want_json = std::find(args.begin(), args.end(), "--json") != args.end();

    auto fail = [&](const UsageError& e) {
        if (want_json)
            out << e.to_json().dump(2) << '\n';
        else
            err << "error: " << e.what() << '\n';
        return 2;
    };

    std::vector<const char*> argv{"bargmann"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail(UsageError("usage", e.what()));
    }

    try {
        const ResolvedJob job = validate(spec);
        const Outcome result = execute(job);
        if (spec.json_output) {
            json doc = result.report;
            doc["command"] = spec.command;
            doc["ok"] = result.ok;
            if (spec.command == "check")
                doc["seed"] = spec.seed;
            out << doc.dump(2) << '\n';
        } else {
            out << result.text;
        }
        return result.ok ? 0 : 1;
    } catch (const UsageError& e) {
        return fail(e);
    } catch (const DimensionError& e) {
        return fail(UsageError("dimension_error", e.what()));
    } catch (const std::invalid_argument& e) {
        return fail(UsageError("invalid_argument", e.what()));
    } catch (const std::domain_error& e) {
        return fail(UsageError("domain_error", e.what()));
    }
}

}  // namespace bargmann::cli

#endif  // BARGMANN_TOOLS_CLI_HPP
