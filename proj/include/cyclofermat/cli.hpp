#pragma once

/**
 * @file cli.hpp
 * @brief Command-line surface: one builder function per subcommand returning a
 *        CommandResult (JSON payload + human-readable text), and run(), which
 *        parses arguments, dispatches, and reports through a caller-supplied
 *        stream so tests can drive the tool in-process.
 *
 * Exit codes: 0 success, 1 a verification report failed, 2 usage or argument
 * error. JSON output carries a top-level "schema_version" and is byte-identical
 * for identical inputs.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "criterion.hpp"
#include "descent.hpp"
#include "frey.hpp"
#include "json_out.hpp"
#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"
#include "sunit.hpp"

namespace cyclofermat::cli {

struct CommandResult {
    std::string command;    // subcommand name, echoed into the JSON envelope
    bool ok = true;         // false exactly when a verification report failed
    nlohmann::json payload; // structured data, schema fixed per command
    std::string text;       // human-readable rendering
};

namespace detail {

inline Int parse_big(const std::string& s, const std::string& name) {
    static const std::regex pat("^[+-]?[0-9]+$");
    if (!std::regex_match(s, pat))
        throw std::invalid_argument(name + " must be an integer, got '" + s + "'");
    return Int(s[0] == '+' ? s.substr(1) : s);
}

inline std::string prime_text(const PrimeIdealFactor& q) {
    return "(p = " + std::to_string(q.p) + ", e = " + std::to_string(q.e) +
           ", f = " + std::to_string(q.f) + ", g = " + q.gen_poly.to_string() + ")";
}

inline std::string ideal_product_text(const std::vector<PrimeIdealFactor>& qs) {
    if (qs.empty()) return "(1)";
    std::string out;
    for (const auto& q : qs) out += (out.empty() ? "" : " * ") + prime_text(q);
    return out;
}

} // namespace detail

/// Path of the narrow class table: explicit flag, then the environment variable
/// CYCLOFERMAT_HPLUS_TABLE, then the table shipped with the build.
inline std::string resolve_table_path(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CYCLOFERMAT_HPLUS_TABLE"); env != nullptr && *env != '\0')
        return env;
#ifdef CYCLOFERMAT_DEFAULT_TABLE
    return CYCLOFERMAT_DEFAULT_TABLE;
#else
    throw std::invalid_argument(
        "no narrow class table: pass --table PATH or set CYCLOFERMAT_HPLUS_TABLE");
#endif
}

inline CommandResult field_command(std::uint64_t r) {
    RealCyclotomicField f = build_field(r);
    Int res = f.discriminant_resultant();
    // P is monic, so disc(P) = (-1)^{d(d-1)/2} resultant(P, P').
    Int disc = (f.degree() * (f.degree() - 1) / 2) % 2 == 0 ? res : Int(-res);
    bool only_r = f.discriminant_supported_only_at_r();

    CommandResult out;
    out.command = "field";
    out.payload = nlohmann::json{{"r", r},
                                 {"degree", static_cast<std::uint64_t>(f.degree())},
                                 {"min_poly", jsonio::poly_json(f.min_poly())},
                                 {"disc_resultant", res.get_str()},
                                 {"disc", disc.get_str()},
                                 {"disc_sign", disc > 0 ? 1 : -1},
                                 {"disc_supported_only_at_r", only_r}};
    std::ostringstream os;
    os << "real cyclotomic field Q(zeta_r + zeta_r^-1), r = " << r << ", degree d = "
       << f.degree() << "\n"
       << "P(x) = " << f.min_poly().to_string() << "\n"
       << "disc(P) = " << disc.get_str() << " (sign " << (disc > 0 ? "+1" : "-1")
       << ", supported only at r: " << (only_r ? "yes" : "no") << ")\n"
       << "resultant(P, P') = " << res.get_str() << "\n";
    out.text = os.str();
    return out;
}

inline CommandResult split_command(std::uint64_t r, std::uint64_t p) {
    RealCyclotomicField f = build_field(r);
    if (!is_prime_u64(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    std::vector<PrimeIdealFactor> factors = split_prime(f, p);
    bool inert = factors.size() == 1 && factors[0].e == 1 && factors[0].f == f.degree();

    CommandResult out;
    out.command = "split";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& q : factors) rows.push_back(jsonio::prime_json(q));
    out.payload = nlohmann::json{{"r", r},
                                 {"p", p},
                                 {"degree", static_cast<std::uint64_t>(f.degree())},
                                 {"factors", rows},
                                 {"inert", inert}};
    std::ostringstream os;
    os << "splitting of p = " << p << " in the degree-" << f.degree()
       << " field at r = " << r << "\n";
    for (const auto& q : factors) os << "  " << detail::prime_text(q) << "\n";
    os << "p is inert: " << (inert ? "yes" : "no") << "\n";
    out.text = os.str();
    return out;
}

inline CommandResult lemma21_command(std::uint64_t r) {
    Report rep = verify_lemma_cycl(build_field(r));
    CommandResult out;
    out.command = "lemma21";
    out.ok = rep.all_pass();
    out.payload = nlohmann::json{{"r", r}, {"report", jsonio::report_json(rep)}};
    out.text = rep.to_string();
    return out;
}

inline CommandResult descent_command(std::uint64_t r, const Int& a0, const Int& b0) {
    RealCyclotomicField f = build_field(r);
    DescentWitness w = make_witness(f, a0, b0);
    Report rep = verify_descent(f, a0, b0);

    CommandResult out;
    out.command = "descent";
    out.ok = rep.all_pass();
    nlohmann::json betas = nlohmann::json::array();
    for (const auto& b : w.betas) betas.push_back(jsonio::element_json(b));
    out.payload = nlohmann::json{{"r", r},
                                 {"a0", a0.get_str()},
                                 {"b0", b0.get_str()},
                                 {"A", w.A.get_str()},
                                 {"B", w.B.get_str()},
                                 {"c", w.c.get_str()},
                                 {"case", w.r_divides_a() ? "r_div_a" : "r_ndiv_a"},
                                 {"betas", betas},
                                 {"report", jsonio::report_json(rep)}};
    std::ostringstream os;
    os << "descent witness at r = " << r << ": (a0, b0) = (" << a0.get_str() << ", "
       << b0.get_str() << ")\n"
       << "(a0 + b0*i)^r = A + B*i with A = " << w.A.get_str() << ", B = " << w.B.get_str()
       << "\n"
       << "c = a0^2 + b0^2 = " << w.c.get_str() << "\n";
    for (std::size_t i = 0; i < w.betas.size(); ++i)
        os << "beta_" << (i + 1) << " = " << w.betas[i].to_string() << "\n";
    os << rep.to_string();
    out.text = os.str();
    return out;
}

struct FreyOptions {
    std::string forced_case; // "", "r_div_a", or "r_ndiv_a"
    std::uint64_t p = 5;     // residual exponent
    int n = 0;               // synthetic 2-adic pattern
    bool power_content = false;
};

inline CommandResult frey_command(std::uint64_t r, const Int& a0, const Int& b0, int j, int k,
                                  const FreyOptions& opt = {}) {
    RealCyclotomicField f = build_field(r);
    DescentWitness w = make_witness(f, a0, b0);

    FreyCase kase;
    if (opt.forced_case.empty())
        kase = w.r_divides_a() ? FreyCase::r_div_a : FreyCase::r_ndiv_a;
    else if (opt.forced_case == "r_div_a")
        kase = FreyCase::r_div_a;
    else if (opt.forced_case == "r_ndiv_a")
        kase = FreyCase::r_ndiv_a;
    else
        throw std::invalid_argument("case must be r_div_a or r_ndiv_a, got '" +
                                    opt.forced_case + "'");

    int k_r = 1;
    if (kase == FreyCase::r_div_a && a0 != 0) {
        k_r = 0;
        for (Int t = a0; t % Int(static_cast<unsigned long>(r)) == 0;
             t /= Int(static_cast<unsigned long>(r)))
            ++k_r;
        if (k_r == 0) k_r = 1; // unreachable guard; frey_parameters re-checks the case
    }

    FreyParameters P = frey_parameters(f, w, j, k, kase, opt.p, opt.n, k_r);
    FreyCurve E = frey_curve(P);
    ConductorLevel cl = conductor_and_level(E, opt.power_content);

    std::vector<PrimeIdealFactor> rows = cl.conductor;
    PrimeIdealFactor rad = unique_prime_above_r(f);
    if (std::find(rows.begin(), rows.end(), rad) == rows.end()) rows.push_back(rad);
    std::sort(rows.begin(), rows.end(), cyclofermat::detail::prime_ideal_before);

    CommandResult out;
    out.command = "frey";
    nlohmann::json red = nlohmann::json::array();
    for (const auto& q : rows)
        red.push_back(nlohmann::json{{"prime", jsonio::prime_json(q)},
                                     {"type", to_string(classify_reduction(E, q))}});
    nlohmann::json cond = nlohmann::json::array();
    for (const auto& q : cl.conductor) cond.push_back(jsonio::prime_json(q));
    nlohmann::json lvl = nlohmann::json::array();
    for (const auto& q : cl.level) lvl.push_back(jsonio::prime_json(q));
    out.payload = nlohmann::json{{"r", r},
                                 {"a0", a0.get_str()},
                                 {"b0", b0.get_str()},
                                 {"j", j},
                                 {"k", k},
                                 {"case", kase == FreyCase::r_div_a ? "r_div_a" : "r_ndiv_a"},
                                 {"p_exponent", opt.p},
                                 {"n", opt.n},
                                 {"k_r", k_r},
                                 {"delta", P.delta},
                                 {"A", jsonio::element_json(P.A)},
                                 {"B", jsonio::element_json(P.B)},
                                 {"C", jsonio::element_json(P.C)},
                                 {"c4", jsonio::element_json(E.c4)},
                                 {"disc", jsonio::element_json(E.disc)},
                                 {"j_inv", jsonio::element_json(E.j_inv)},
                                 {"reduction", red},
                                 {"conductor", cond},
                                 {"level", lvl},
                                 {"power_content_hypothesis", cl.power_content_hypothesis},
                                 {"unfactored_residue", cl.unfactored_residue.get_str()}};
    std::ostringstream os;
    os << "Frey curve at r = " << r << " from witness (" << a0.get_str() << ", " << b0.get_str()
       << "), indices (j, k) = (" << j << ", " << k << "), case " << to_string(kase) << "\n"
       << "exponents: p = " << opt.p << ", n = " << opt.n << ", k_r = " << k_r
       << ", delta = " << P.delta << "\n"
       << "A = " << P.A.to_string() << "\n"
       << "B = " << P.B.to_string() << "\n"
       << "C = " << P.C.to_string() << "\n"
       << "c4 = " << E.c4.to_string() << "\n"
       << "Delta = " << E.disc.to_string() << "\n"
       << "j = " << E.j_inv.to_string() << "\n"
       << "reduction types:\n";
    for (const auto& q : rows)
        os << "  " << detail::prime_text(q) << ": " << to_string(classify_reduction(E, q))
           << "\n";
    os << "conductor support: " << detail::ideal_product_text(cl.conductor) << "\n"
       << "level support:     " << detail::ideal_product_text(cl.level) << "\n"
       << "power-content hypothesis: " << (cl.power_content_hypothesis ? "on" : "off") << "\n";
    if (cl.unfactored_residue != 1)
        os << "unfactored residue: " << cl.unfactored_residue.get_str() << "\n";
    out.text = os.str();
    return out;
}

inline CommandResult sunit_command(std::uint64_t r, SUnitSet s, int bound,
                                   const std::string& gens_path = "") {
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    RealCyclotomicField f = build_field(r);
    SUnitGeneratorSet gs =
        gens_path.empty() ? default_generators(f, s) : load_generator_file(f, s, gens_path);
    std::vector<SUnitSolution> sols = enumerate_solutions(gs, bound);
    Report rep = certify_field(gs, bound);

    CommandResult out;
    out.command = "sunit";
    out.ok = rep.all_pass();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& sol : sols)
        rows.push_back(nlohmann::json{{"lambda", jsonio::element_json(sol.lambda)},
                                      {"mu", jsonio::element_json(sol.mu)},
                                      {"orbit_rep", jsonio::element_json(sol.orbit_rep)},
                                      {"orbit_id", static_cast<std::uint64_t>(sol.orbit_id)}});
    out.payload = nlohmann::json{{"r", r},
                                 {"set", to_string(s)},
                                 {"bound", bound},
                                 {"generator_count", static_cast<std::uint64_t>(gs.gens.size())},
                                 {"best_effort", gs.best_effort},
                                 {"user_certified", gs.user_certified},
                                 {"solutions", rows},
                                 {"report", jsonio::report_json(rep)}};
    std::ostringstream os;
    os << rep.to_string() << "solutions (" << sols.size() << "):\n";
    for (const auto& sol : sols)
        os << "  orbit " << sol.orbit_id << ": lambda = " << sol.lambda.to_string()
           << ", mu = " << sol.mu.to_string() << "\n";
    out.text = os.str();
    return out;
}

inline CommandResult eligible_command(std::uint64_t r, const NarrowClassTable& table) {
    EligibilityRecord rec = eligibility(r, table);
    CommandResult out;
    out.command = "eligible";
    out.payload = jsonio::record_json(rec);
    std::ostringstream os;
    os << "eligibility of r = " << rec.r << "\n"
       << "two-inert:      " << (rec.two_inert ? "yes" : "no") << "\n"
       << "h+ odd:         " << to_string(rec.h_plus_odd) << "\n"
       << "r mod 8:        " << rec.r_mod_8 << "\n"
       << "case r ndiv a:  " << to_string(rec.case_r_ndiv_a) << "\n"
       << "case r div a:   " << to_string(rec.case_r_div_a) << "\n"
       << "overall:        " << to_string(rec.overall) << "\n";
    out.text = os.str();
    return out;
}

inline CommandResult scan_command(std::uint64_t r_max, const NarrowClassTable& table) {
    std::vector<EligibilityRecord> recs = scan(r_max, table);
    std::vector<std::uint64_t> elig = eligible_r(recs);

    CommandResult out;
    out.command = "scan";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& rec : recs) rows.push_back(jsonio::record_json(rec));
    out.payload = nlohmann::json{{"max", r_max}, {"records", rows}, {"eligible", elig}};
    std::ostringstream os;
    os << "scan of primes 5 <= r <= " << r_max << "\n"
       << "   r  inert  h+odd    r%8  ndiv     div      overall\n";
    for (const auto& rec : recs)
        os << std::setw(4) << rec.r << "  " << std::left << std::setw(5)
           << (rec.two_inert ? "yes" : "no") << "  " << std::setw(7)
           << to_string(rec.h_plus_odd) << "  " << std::right << std::setw(3) << rec.r_mod_8
           << "  " << std::left << std::setw(7) << to_string(rec.case_r_ndiv_a) << "  "
           << std::setw(7) << to_string(rec.case_r_div_a) << "  " << to_string(rec.overall)
           << std::right << "\n";
    os << "eligible r (" << elig.size() << "):";
    for (std::uint64_t r : elig) os << " " << r;
    os << "\n";
    out.text = os.str();
    return out;
}

/// Parses and runs one invocation. `args` excludes the program name; everything
/// the tool prints goes to `out`.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"exact arithmetic for Frey curves and S-unit equations over real cyclotomic "
                 "fields",
                 "cyclofermat"};
    app.require_subcommand(1);

    bool json_flag = false;
    std::string table_path;
    auto add_global = [&](CLI::App* a) {
        a->add_flag("--json", json_flag, "emit a JSON document instead of text");
        a->add_option("--table", table_path,
                      "narrow class number table (CSV r,h_plus,source); defaults to "
                      "$CYCLOFERMAT_HPLUS_TABLE, then the bundled table");
    };
    add_global(&app);

    std::uint64_t r = 0, p = 0, max_r = 0, p_exp = 5;
    std::string a0s, b0s, case_s, set_s, gens_path;
    int j = 0, k = 0, n = 0, bound = 0;
    bool power_content = false;

    CLI::App* c_field = app.add_subcommand("field", "minimal polynomial and discriminant data");
    c_field->add_option("r", r, "prime r >= 5")->required();

    CLI::App* c_split = app.add_subcommand("split", "prime ideal factorization of p");
    c_split->add_option("r", r, "prime r >= 5")->required();
    c_split->add_option("p", p, "rational prime to split")->required();

    CLI::App* c_lemma = app.add_subcommand("lemma21", "unit and norm identities of the theta_j");
    c_lemma->add_option("r", r, "prime r >= 5")->required();

    CLI::App* c_descent = app.add_subcommand("descent", "Gaussian-integer descent of a witness");
    c_descent->add_option("r", r, "prime r >= 5")->required();
    c_descent->add_option("a0", a0s, "first witness coordinate")->required();
    c_descent->add_option("b0", b0s, "second witness coordinate")->required();

    CLI::App* c_frey = app.add_subcommand("frey", "Frey curve invariants, reduction types, "
                                                  "conductor and level");
    c_frey->add_option("r", r, "prime r >= 5")->required();
    c_frey->add_option("a0", a0s, "first witness coordinate")->required();
    c_frey->add_option("b0", b0s, "second witness coordinate")->required();
    c_frey->add_option("j", j, "first conjugation index")->required();
    c_frey->add_option("k", k, "second conjugation index")->required();
    c_frey->add_option("--case", case_s, "force the construction case")
        ->check(CLI::IsMember({"r_div_a", "r_ndiv_a"}));
    c_frey->add_option("--p", p_exp, "residual exponent p (prime >= 5, default 5)");
    c_frey->add_option("--n", n, "synthetic 2-adic pattern v_2(a0) = p*n (default 0)");
    c_frey->add_flag("--power-content", power_content,
                     "assume odd primes away from 2r drop out of the level");

    CLI::App* c_sunit = app.add_subcommand("sunit", "bounded S-unit equation survey");
    c_sunit->add_option("r", r, "prime r >= 5")->required();
    c_sunit->add_option("--set", set_s, "S = primes above 2 (\"2\") or above 2 and r (\"2r\")")
        ->required()
        ->check(CLI::IsMember({"2", "2r"}));
    c_sunit->add_option("--bound", bound, "exponent box half-width")->required();
    c_sunit->add_option("--gens", gens_path, "generator file overriding the built-in set");

    CLI::App* c_eligible = app.add_subcommand("eligible", "eligibility of one prime r");
    c_eligible->add_option("r", r, "prime r >= 5")->required();

    CLI::App* c_scan = app.add_subcommand("scan", "eligibility of every prime r <= max");
    c_scan->add_option("--max", max_r, "upper bound of the scan")->required();

    for (CLI::App* sub : {c_field, c_split, c_lemma, c_descent, c_frey, c_sunit, c_eligible,
                          c_scan})
        add_global(sub);

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("cyclofermat");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        CommandResult res;
        if (app.got_subcommand(c_field)) {
            res = field_command(r);
        } else if (app.got_subcommand(c_split)) {
            res = split_command(r, p);
        } else if (app.got_subcommand(c_lemma)) {
            res = lemma21_command(r);
        } else if (app.got_subcommand(c_descent)) {
            res = descent_command(r, detail::parse_big(a0s, "a0"), detail::parse_big(b0s, "b0"));
        } else if (app.got_subcommand(c_frey)) {
            FreyOptions opt;
            opt.forced_case = case_s;
            opt.p = p_exp;
            opt.n = n;
            opt.power_content = power_content;
            res = frey_command(r, detail::parse_big(a0s, "a0"), detail::parse_big(b0s, "b0"), j,
                               k, opt);
        } else if (app.got_subcommand(c_sunit)) {
            res = sunit_command(r, set_s == "2" ? SUnitSet::S2 : SUnitSet::S2r, bound,
                                gens_path);
        } else if (app.got_subcommand(c_eligible)) {
            res = eligible_command(r, load_narrow_class_table(resolve_table_path(table_path)));
        } else {
            res = scan_command(max_r, load_narrow_class_table(resolve_table_path(table_path)));
        }

        if (json_flag) {
            nlohmann::json doc;
            doc["schema_version"] = static_cast<std::uint64_t>(1);
            doc["command"] = res.command;
            doc["status"] = res.ok ? "ok" : "failed";
            doc["payload"] = res.payload;
            out << doc.dump(2) << "\n";
        } else {
            out << res.text;
        }
        return res.ok ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        out << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace cyclofermat::cli
