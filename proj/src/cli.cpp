#include "nilzeta/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nilzeta/building.hpp"
#include "nilzeta/cones.hpp"
#include "nilzeta/errors.hpp"
#include "nilzeta/presentation_io.hpp"

namespace nilzeta {

namespace {

struct RunConfig {
    std::string input;
    std::vector<std::int64_t> primes;
    int order = 4;
    double budget = 2e7;
    unsigned jobs = 0;
    std::string format = "text";
    bool exhaustive = false;
    bool trivial_bound = false;
    std::string paths = "oracle,walk,formula";
};

enum class Family { Odd, Even, BlockSum, Curve, User, None };

Family classify(const InputFile& in) {
    if (in.formula)
        return Family::User;
    const auto& P = in.P;
    if (P.has_blocks()) {
        if (P.blocks.size() > 1)
            return Family::BlockSum;
        return P.blocks[0].kind == BlockInfo::Kind::Odd ? Family::Odd : Family::Even;
    }
    if (P.R && P.R->rows() >= 2 && P.R->nvars() == 3)
        return Family::Curve;
    return Family::None;
}

std::string fe_string(const std::optional<FunctionalEquation>& fe) {
    if (!fe)
        return "none";
    std::ostringstream os;
    os << (fe->sign < 0 ? "-" : "+") << "X^" << fe->a << " Y^" << fe->b;
    return os.str();
}

/// Y = p^-s, so X^a Y^b reads p^(a - b s).
std::string zeta_fe_string(const std::optional<FunctionalEquation>& fe) {
    if (!fe)
        return "none";
    std::ostringstream os;
    os << (fe->sign < 0 ? "-" : "+") << "p^(" << fe->a << " - " << fe->b << "s)";
    return os.str();
}

/// Closed-form A(p, T) at p, or nullopt when its hypotheses fail at p.
std::optional<GeoRatFun> closed_form_at(const InputFile& in, std::int64_t p, std::string& why) {
    const auto& P = in.P;
    try {
        switch (classify(in)) {
        case Family::User:
            return *in.formula;
        case Family::Odd:
            return prop32(P.blocks[0].r);
        case Family::Even:
            return prop34(P.blocks[0].r, P.blocks[0].e).at(n_fp(P.blocks[0].f, p));
        case Family::BlockSum: {
            std::vector<IntPoly> F;
            auto md = multiplicity_data(P, F);
            return assemble_A(md, F, p);
        }
        case Family::Curve: {
            CurveSpec cs(*P.R);
            int r = cs.degree();
            if (p + 1 <= r) {
                why = "p + 1 <= r";
                return std::nullopt;
            }
            if (!is_smooth_mod_p(cs, p)) {
                why = "curve is singular mod p";
                return std::nullopt;
            }
            return thm11_closed(r).at(count_points_P2(cs, p));
        }
        case Family::None:
            break;
        }
    } catch (const BadPrime& e) {
        why = e.what();
        return std::nullopt;
    } catch (const RamifiedPrime& e) {
        why = e.what();
        return std::nullopt;
    }
    throw UnsupportedFamily("no closed form is known for this presentation; use walk or oracle");
}

void check_primes(const RunConfig& cfg) {
    if (cfg.primes.empty())
        throw BadParams("at least one prime is required (-p)");
    for (auto p : cfg.primes)
        if (!is_prime(p))
            throw BadParams(std::to_string(p) + " is not prime");
    if (cfg.order < 0)
        throw BadParams("order must be nonnegative");
}

void warn_bad(const InputFile& in, std::int64_t p, std::ostream& err) {
    auto bad = bad_primes(in.P);
    if (bad.count(p))
        err << "warning: p = " << p << " is a bad prime for this presentation\n";
    if (!in.P.has_blocks() && !in.P.R)
        err << "warning: torsion-freeness of L/L' at p is not checked for raw matrices\n";
}

// ---------------------------------------------------------------- commands

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_primes(cfg);
    auto in = load_input(cfg.input);
    OracleOptions opt;
    opt.budget = cfg.budget;
    opt.jobs = cfg.jobs;
    opt.exhaustive = cfg.exhaustive;
    bool csv = cfg.format == "csv";
    if (csv)
        out << "p,k,coefficient\n";
    for (auto p : cfg.primes) {
        warn_bad(in, p, err);
        auto a = oracle_count(in.P, p, cfg.order, opt);
        if (!csv)
            out << "# oracle p=" << p << " " << in.P.describe() << "\n";
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (csv)
                out << p << "," << k << "," << a[k] << "\n";
            else
                out << k << "\t" << a[k] << "\n";
        }
    }
    return kExitOk;
}

int cmd_walk(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_primes(cfg);
    auto in = load_input(cfg.input);
    WalkOptions opt;
    opt.jobs = cfg.jobs;
    opt.bound = cfg.trivial_bound ? CompletenessBound::Trivial : CompletenessBound::Rank;
    bool csv = cfg.format == "csv";
    if (csv)
        out << "p,k,A,zeta\n";
    for (auto p : cfg.primes) {
        warn_bad(in, p, err);
        auto s = building_series(in.P, p, cfg.order, opt);
        auto z = assemble_zeta(s.coeffs, p, in.P.d, in.P.dprime);
        if (!csv)
            out << "# walk p=" << p << " " << in.P.describe() << " vertices=" << s.vertices << " max_w=" << s.max_w << "\n"
                << "k\tA\tzeta\n";
        for (std::size_t k = 0; k < z.size(); ++k) {
            if (csv)
                out << p << "," << k << "," << s.coeffs[k] << "," << z[k] << "\n";
            else
                out << k << "\t" << s.coeffs[k] << "\t" << z[k] << "\n";
        }
    }
    return kExitOk;
}

void print_series(const GeoRatFun& A, const InputFile& in, std::int64_t p, int K, bool csv, std::ostream& out) {
    auto a = series_at(A, p, K);
    auto z = assemble_zeta(a, p, in.P.d, in.P.dprime);
    if (!csv)
        out << "# series p=" << p << "\nk\tA\tzeta\n";
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (csv)
            out << p << "," << k << "," << a[k] << "," << z[k] << "\n";
        else
            out << k << "\t" << a[k] << "\t" << z[k] << "\n";
    }
}

int cmd_formula(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto in = load_input(cfg.input);
    const auto& P = in.P;
    Family fam = classify(in);
    bool csv = cfg.format == "csv";
    auto line = [&](const std::string& name, const std::string& value) {
        if (!csv)
            out << name << " = " << value << "\n";
    };
    if (!csv)
        out << "# " << P.describe() << "\n";
    switch (fam) {
    case Family::User:
        line("A", display_form(*in.formula));
        break;
    case Family::Odd:
        line("A", display_form(prop32(P.blocks[0].r)));
        break;
    case Family::Even: {
        auto pr = prop34(P.blocks[0].r, P.blocks[0].e);
        line("A_1", display_form(pr.part1));
        line("A_2", display_form(pr.part2));
        if (!csv)
            out << "A = A_1 + n_{f,p} A_2\n";
        break;
    }
    case Family::BlockSum: {
        std::vector<IntPoly> F;
        auto md = multiplicity_data(P, F);
        line("(p+1)A_empty", display_form(a_empty(md.d(), md.odd_count) * GeoRatFun::polynomial(BivarPoly::from_terms({{{0, 0}, 1}, {{1, 0}, 1}}))));
        std::size_t m = md.mult.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            std::vector<int> I;
            std::string name = "A_{";
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1) {
                    I.push_back(static_cast<int>(i + 1));
                    name += (I.size() > 1 ? "," : "") + std::to_string(i + 1);
                }
            line(name + "}", display_form(cone_gf(cone_data(md, I))));
        }
        if (!csv)
            out << "A = (p+1)A_empty + sum_I c_{p,I} (A_I - A_empty)\n";
        break;
    }
    case Family::Curve: {
        int r = P.R->rows();
        auto t = thm11_closed(r);
        line("A_1", display_form(t.A1));
        line("A_2", display_form(t.A2));
        auto w = w_factored(r);
        line("W_1", w.W1.numerator_string() + " / " + w.W1.denominator_string());
        line("W_2", w.W2.numerator_string() + " / " + w.W2.denominator_string());
        if (!csv)
            out << "A = A_1 + |C(F_p)| A_2\n";
        break;
    }
    case Family::None:
        throw UnsupportedFamily("no closed form is known for this presentation; use walk or oracle");
    }
    if (csv && !cfg.primes.empty())
        out << "p,k,A,zeta\n";
    for (auto p : cfg.primes) {
        if (!is_prime(p))
            throw BadParams(std::to_string(p) + " is not prime");
        std::string why;
        auto A = closed_form_at(in, p, why);
        if (!A) {
            err << "warning: closed form not claimed at p = " << p << ": " << why << "\n";
            continue;
        }
        print_series(*A, in, p, cfg.order, csv, out);
    }
    return kExitOk;
}

int cmd_funeq(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    auto in = load_input(cfg.input);
    const auto& P = in.P;
    const int d = P.d, dp = P.dprime;
    auto report = [&](const std::string& name, const GeoRatFun& A) {
        auto fa = check_functional_equation(A);
        auto fz = check_functional_equation(assemble_zeta(A, d, dp));
        out << name << ": " << fe_string(fa) << "  zeta: " << zeta_fe_string(fz) << "\n";
        return fz;
    };
    out << "# " << P.describe() << "\n";
    switch (classify(in)) {
    case Family::User:
        report("A", *in.formula);
        break;
    case Family::Odd:
        report("A", prop32(P.blocks[0].r));
        break;
    case Family::Even: {
        auto pr = prop34(P.blocks[0].r, P.blocks[0].e);
        report("A_1", pr.part1);
        report("A_2", pr.part2);
        break;
    }
    case Family::BlockSum: {
        std::vector<IntPoly> F;
        auto md = multiplicity_data(P, F);
        GeoRatFun Ae = a_empty(md.d(), md.odd_count);
        report("(p+1)A_empty", Ae * GeoRatFun::polynomial(BivarPoly::from_terms({{{0, 0}, 1}, {{1, 0}, 1}})));
        std::size_t m = md.mult.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
            std::vector<int> I;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1)
                    I.push_back(static_cast<int>(i + 1));
            std::string name = "A_{";
            for (std::size_t i = 0; i < I.size(); ++i)
                name += (i ? "," : "") + std::to_string(I[i]);
            out << name << "} - A_empty: " << fe_string(check_functional_equation(cone_gf(cone_data(md, I)) - Ae)) << "\n";
        }
        for (auto p : cfg.primes) {
            std::string why;
            if (auto A = closed_form_at(in, p, why))
                report("A at p=" + std::to_string(p), *A);
        }
        break;
    }
    case Family::Curve: {
        int r = P.R->rows();
        auto t = thm11_closed(r);
        auto f1 = report("A_1", t.A1);
        auto f2 = report("A_2", t.A2);
        // |C(F_p)| -> p^-1 |C(F_p)| under inversion of the Frobenius eigenvalues
        if (f1 && f2 && f1->sign == f2->sign && f1->b == f2->b && f2->a == f1->a + 1)
            out << "zeta (|C| -> p^-1 |C|): " << zeta_fe_string(f1) << "\n";
        else
            out << "zeta (|C| -> p^-1 |C|): none\n";
        break;
    }
    case Family::None:
        throw UnsupportedFamily("no closed form is known for this presentation");
    }
    return kExitOk;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    check_primes(cfg);
    auto in = load_input(cfg.input);
    if (!in.P.R)
        throw BadParams("curve needs an R-form input");
    CurveSpec cs(*in.P.R);
    bool csv = cfg.format == "csv";
    out << (csv ? "p,points,smooth\n" : "p\tpoints\tsmooth\n");
    for (auto p : cfg.primes) {
        char sep = csv ? ',' : '\t';
        out << p << sep << count_points_P2(cs, p) << sep << (is_smooth_mod_p(cs, p) ? "yes" : "no") << "\n";
    }
    return kExitOk;
}

int cmd_bad_primes(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    auto in = load_input(cfg.input);
    auto bad = bad_primes(in.P);
    bool first = true;
    for (auto p : bad) {
        out << (first ? "" : cfg.format == "csv" ? "\n" : " ") << p;
        first = false;
    }
    out << "\n";
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    check_primes(cfg);
    auto in = load_input(cfg.input);
    const auto& P = in.P;
    auto want = [&](const char* name) { return ("," + cfg.paths + ",").find(std::string(",") + name + ",") != std::string::npos; };
    bool csv = cfg.format == "csv";
    bool mismatch = false;
    if (csv)
        out << "p,k,oracle,walk,formula,status\n";
    for (auto p : cfg.primes) {
        const std::size_t n = static_cast<std::size_t>(cfg.order) + 1;
        std::optional<std::vector<Integer>> oracle, walk, formula;
        if (want("oracle")) {
            OracleOptions opt;
            opt.budget = cfg.budget;
            opt.jobs = cfg.jobs;
            try {
                oracle = oracle_count(P, p, cfg.order, opt);
            } catch (const BudgetExceeded& e) {
                err << "note: oracle skipped at p = " << p << ": " << e.what() << "\n";
            }
        }
        if (want("walk")) {
            WalkOptions opt;
            opt.jobs = cfg.jobs;
            try {
                walk = assemble_zeta(building_series(P, p, cfg.order, opt).coeffs, p, P.d, P.dprime);
            } catch (const NotFull& e) {
                err << "note: walk skipped at p = " << p << ": " << e.what() << "\n";
            }
        }
        if (want("formula")) {
            try {
                std::string why;
                if (auto A = closed_form_at(in, p, why))
                    formula = assemble_zeta(series_at(*A, p, cfg.order), p, P.d, P.dprime);
                else
                    err << "note: formula skipped at p = " << p << ": " << why << "\n";
            } catch (const UnsupportedFamily& e) {
                err << "note: formula skipped: " << e.what() << "\n";
            }
        }
        int have = int(oracle.has_value()) + int(walk.has_value()) + int(formula.has_value());
        if (have < 2)
            throw UnsupportedFamily("fewer than two paths available at p = " + std::to_string(p));

        if (!csv)
            out << "# compare p=" << p << " " << P.describe() << "\nk\toracle\twalk\tformula\tstatus\n";
        auto cell = [&](const std::optional<std::vector<Integer>>& v, std::size_t k) { return v ? (*v)[k].get_str() : std::string("-"); };
        int bad_rows = 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Integer> vals;
            for (const auto* v : {&oracle, &walk, &formula})
                if (*v)
                    vals.push_back((**v)[k]);
            bool ok = std::all_of(vals.begin(), vals.end(), [&](const Integer& x) { return x == vals[0]; });
            if (!ok)
                ++bad_rows;
            char sep = csv ? ',' : '\t';
            if (csv)
                out << p << ",";
            out << k << sep << cell(oracle, k) << sep << cell(walk, k) << sep << cell(formula, k) << sep << (ok ? "ok" : "MISMATCH") << "\n";
        }
        if (bad_rows)
            mismatch = true;
        if (!csv)
            out << "# p=" << p << ": " << (bad_rows ? std::to_string(bad_rows) + " mismatching coefficients" : "all paths agree") << "\n";
    }
    return mismatch ? kExitMismatch : kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local normal zeta functions of class-2 nilpotent Lie rings"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub, bool needs_order) {
        sub->add_option("input", cfg.input, "Presentation file (JSON)")->required();
        sub->add_option("-p,--prime", cfg.primes, "Prime (repeatable)");
        if (needs_order)
            sub->add_option("-K,--order", cfg.order, "Truncation order in T")->check(CLI::NonNegativeNumber);
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
        sub->add_option("--jobs", cfg.jobs, "Worker threads (0: all cores)");
    };

    auto* oracle = app.add_subcommand("oracle", "Count ideals of index p^k by enumeration");
    common(oracle, true);
    oracle->add_option("--budget", cfg.budget, "Maximal number of ideal tests");
    oracle->add_flag("--exhaustive", cfg.exhaustive, "Enumerate all sublattices instead of the factored scheme");

    auto* walk = app.add_subcommand("walk", "Sum over maximal lattices of the derived ring");
    common(walk, true);
    walk->add_flag("--trivial-bound", cfg.trivial_bound, "Enumerate up to index p^K instead of the rank bound");

    auto* formula = app.add_subcommand("formula", "Print the closed form and its series");
    common(formula, true);

    auto* funeq = app.add_subcommand("funeq", "Check the functional equations of the closed form");
    common(funeq, false);

    auto* curve = app.add_subcommand("curve", "Point count and smoothness of the curve det R = 0");
    common(curve, false);

    auto* bad = app.add_subcommand("bad-primes", "Primes at which closed forms are not claimed");
    common(bad, false);

    auto* compare = app.add_subcommand("compare", "Compare oracle, walk and closed form");
    common(compare, true);
    compare->add_option("--budget", cfg.budget, "Maximal number of ideal tests for the oracle");
    compare->add_option("--paths", cfg.paths, "Comma-separated subset of oracle,walk,formula");

    std::vector<const char*> argv{"nilzeta"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (oracle->parsed())
            return cmd_oracle(cfg, out, err);
        if (walk->parsed())
            return cmd_walk(cfg, out, err);
        if (formula->parsed())
            return cmd_formula(cfg, out, err);
        if (funeq->parsed())
            return cmd_funeq(cfg, out, err);
        if (curve->parsed())
            return cmd_curve(cfg, out, err);
        if (bad->parsed())
            return cmd_bad_primes(cfg, out, err);
        return cmd_compare(cfg, out, err);
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const UnsupportedFamily& e) {
        err << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace nilzeta
