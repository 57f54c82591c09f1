#pragma once

/**
 * @file json_out.hpp
 * @brief JSON serialization of every result type the command-line tool emits,
 *        plus an in-repo schema validator. Arbitrary-precision integers and
 *        rationals travel as decimal strings so no precision is lost; object
 *        keys are emitted sorted, making output byte-identical across runs.
 */

#include <cstdint>
#include <regex>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "criterion.hpp"
#include "descent.hpp"
#include "frey.hpp"
#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"
#include "report.hpp"
#include "sunit.hpp"

namespace cyclofermat::jsonio {

using nlohmann::json;

inline json int_json(const Int& v) { return v.get_str(); }

inline json rat_json(const Rat& v) { return v.get_str(); } // "n" or "n/d", canonical

inline json poly_json(const IntPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
    return json{{"coeffs", coeffs}, {"text", p.to_string()}};
}

inline json element_json(const FieldElement& x) {
    json num = json::array();
    for (const auto& c : x.num().coeffs()) num.push_back(c.get_str());
    return json{{"num", num}, {"den", x.den().get_str()}, {"text", x.to_string()}};
}

inline json prime_json(const PrimeIdealFactor& q) {
    return json{{"p", q.p}, {"e", q.e}, {"f", q.f}, {"gen_poly", q.gen_poly.to_string()}};
}

inline json report_json(const Report& rep) {
    json checks = json::array();
    for (const auto& l : rep.lines) checks.push_back(json{{"label", l.label}, {"pass", l.pass}});
    return json{{"title", rep.title}, {"checks", checks}, {"all_pass", rep.all_pass()}};
}

inline json record_json(const EligibilityRecord& rec) {
    return json{{"r", rec.r},
                {"two_inert", rec.two_inert},
                {"h_plus_odd", to_string(rec.h_plus_odd)},
                {"r_mod_8", rec.r_mod_8},
                {"case_r_ndiv_a", to_string(rec.case_r_ndiv_a)},
                {"case_r_div_a", to_string(rec.case_r_div_a)},
                {"overall", to_string(rec.overall)}};
}

// ---------------------------------------------------------------------------
// Schema validation. validate_payload throws std::invalid_argument naming the
// first violated constraint; validate_result additionally checks the envelope.
// ---------------------------------------------------------------------------

namespace detail {

inline void need(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("payload validation: " + what);
}

inline const json& key(const json& j, const std::string& k, const std::string& ctx) {
    need(j.is_object(), ctx + " must be an object");
    auto it = j.find(k);
    need(it != j.end(), ctx + " is missing key '" + k + "'");
    return *it;
}

inline void need_int_string(const json& j, const std::string& ctx) {
    static const std::regex pat("^-?[0-9]+$");
    need(j.is_string() && std::regex_match(j.get<std::string>(), pat),
         ctx + " must be a decimal integer string");
}

inline void need_string(const json& j, const std::string& ctx) {
    need(j.is_string(), ctx + " must be a string");
}

inline void need_bool(const json& j, const std::string& ctx) {
    need(j.is_boolean(), ctx + " must be a boolean");
}

inline void need_unsigned(const json& j, const std::string& ctx) {
    need(j.is_number_unsigned(), ctx + " must be a nonnegative integer");
}

inline void need_integer(const json& j, const std::string& ctx) {
    need(j.is_number_integer(), ctx + " must be an integer");
}

inline const json& need_array(const json& j, const std::string& ctx) {
    need(j.is_array(), ctx + " must be an array");
    return j;
}

inline void need_enum(const json& j, std::initializer_list<const char*> allowed,
                      const std::string& ctx) {
    need_string(j, ctx);
    for (const char* a : allowed)
        if (j.get<std::string>() == a) return;
    need(false, ctx + " has unexpected value '" + j.get<std::string>() + "'");
}

inline void validate_poly(const json& j, const std::string& ctx) {
    for (const auto& c : need_array(key(j, "coeffs", ctx), ctx + ".coeffs"))
        need_int_string(c, ctx + ".coeffs[]");
    need_string(key(j, "text", ctx), ctx + ".text");
}

inline void validate_element(const json& j, const std::string& ctx) {
    for (const auto& c : need_array(key(j, "num", ctx), ctx + ".num"))
        need_int_string(c, ctx + ".num[]");
    need_int_string(key(j, "den", ctx), ctx + ".den");
    need(key(j, "den", ctx).get<std::string>() != "0", ctx + ".den must be nonzero");
    need_string(key(j, "text", ctx), ctx + ".text");
}

inline void validate_prime(const json& j, const std::string& ctx) {
    need_unsigned(key(j, "p", ctx), ctx + ".p");
    need_integer(key(j, "e", ctx), ctx + ".e");
    need_integer(key(j, "f", ctx), ctx + ".f");
    need(key(j, "e", ctx).get<long>() >= 1 && key(j, "f", ctx).get<long>() >= 1,
         ctx + " must have e >= 1 and f >= 1");
    need_string(key(j, "gen_poly", ctx), ctx + ".gen_poly");
}

inline void validate_report(const json& j, const std::string& ctx) {
    need_string(key(j, "title", ctx), ctx + ".title");
    need_bool(key(j, "all_pass", ctx), ctx + ".all_pass");
    bool conj = true;
    for (const auto& c : need_array(key(j, "checks", ctx), ctx + ".checks")) {
        need_string(key(c, "label", ctx + ".checks[]"), ctx + ".checks[].label");
        need_bool(key(c, "pass", ctx + ".checks[]"), ctx + ".checks[].pass");
        conj = conj && c.at("pass").get<bool>();
    }
    need(key(j, "all_pass", ctx).get<bool>() == conj,
         ctx + ".all_pass must equal the conjunction of the checks");
}

inline void validate_tristate(const json& j, const std::string& ctx) {
    need_enum(j, {"yes", "no", "unknown"}, ctx);
}

inline void validate_record(const json& j, const std::string& ctx) {
    need_unsigned(key(j, "r", ctx), ctx + ".r");
    need_bool(key(j, "two_inert", ctx), ctx + ".two_inert");
    validate_tristate(key(j, "h_plus_odd", ctx), ctx + ".h_plus_odd");
    need_integer(key(j, "r_mod_8", ctx), ctx + ".r_mod_8");
    need(key(j, "r_mod_8", ctx).get<long>() >= 0 && key(j, "r_mod_8", ctx).get<long>() < 8,
         ctx + ".r_mod_8 must lie in [0, 8)");
    validate_tristate(key(j, "case_r_ndiv_a", ctx), ctx + ".case_r_ndiv_a");
    validate_tristate(key(j, "case_r_div_a", ctx), ctx + ".case_r_div_a");
    validate_tristate(key(j, "overall", ctx), ctx + ".overall");
}

} // namespace detail

/// Validates the payload object of one subcommand against its schema; throws
/// std::invalid_argument naming the first violation.
inline void validate_payload(const std::string& command, const json& p) {
    using namespace detail;
    const std::string ctx = command;
    if (command == "field") {
        need_unsigned(key(p, "r", ctx), "r");
        need_unsigned(key(p, "degree", ctx), "degree");
        validate_poly(key(p, "min_poly", ctx), "min_poly");
        need_int_string(key(p, "disc_resultant", ctx), "disc_resultant");
        need_int_string(key(p, "disc", ctx), "disc");
        need_integer(key(p, "disc_sign", ctx), "disc_sign");
        need(key(p, "disc_sign", ctx).get<long>() == 1 || key(p, "disc_sign", ctx).get<long>() == -1,
             "disc_sign must be 1 or -1");
        need_bool(key(p, "disc_supported_only_at_r", ctx), "disc_supported_only_at_r");
    } else if (command == "split") {
        need_unsigned(key(p, "r", ctx), "r");
        need_unsigned(key(p, "p", ctx), "p");
        need_unsigned(key(p, "degree", ctx), "degree");
        long efsum = 0;
        const json& factors = need_array(key(p, "factors", ctx), "factors");
        need(!factors.empty(), "factors must be nonempty");
        for (const auto& f : factors) {
            validate_prime(f, "factors[]");
            efsum += f.at("e").get<long>() * f.at("f").get<long>();
        }
        need(efsum == key(p, "degree", ctx).get<long>(),
             "sum of e*f over factors must equal the degree");
        need_bool(key(p, "inert", ctx), "inert");
    } else if (command == "lemma21") {
        need_unsigned(key(p, "r", ctx), "r");
        validate_report(key(p, "report", ctx), "report");
    } else if (command == "descent") {
        need_unsigned(key(p, "r", ctx), "r");
        need_int_string(key(p, "a0", ctx), "a0");
        need_int_string(key(p, "b0", ctx), "b0");
        need_int_string(key(p, "A", ctx), "A");
        need_int_string(key(p, "B", ctx), "B");
        need_int_string(key(p, "c", ctx), "c");
        need_enum(key(p, "case", ctx), {"r_div_a", "r_ndiv_a"}, "case");
        for (const auto& b : need_array(key(p, "betas", ctx), "betas"))
            validate_element(b, "betas[]");
        validate_report(key(p, "report", ctx), "report");
    } else if (command == "frey") {
        need_unsigned(key(p, "r", ctx), "r");
        need_int_string(key(p, "a0", ctx), "a0");
        need_int_string(key(p, "b0", ctx), "b0");
        need_integer(key(p, "j", ctx), "j");
        need_integer(key(p, "k", ctx), "k");
        need_enum(key(p, "case", ctx), {"r_div_a", "r_ndiv_a"}, "case");
        need_unsigned(key(p, "p_exponent", ctx), "p_exponent");
        need_integer(key(p, "n", ctx), "n");
        need_integer(key(p, "k_r", ctx), "k_r");
        need_integer(key(p, "delta", ctx), "delta");
        for (const char* name : {"A", "B", "C", "c4", "disc", "j_inv"})
            validate_element(key(p, name, ctx), name);
        for (const auto& row : need_array(key(p, "reduction", ctx), "reduction")) {
            validate_prime(key(row, "prime", "reduction[]"), "reduction[].prime");
            need_enum(key(row, "type", "reduction[]"),
                      {"good", "multiplicative", "potentially_multiplicative", "unknown"},
                      "reduction[].type");
        }
        for (const auto& q : need_array(key(p, "conductor", ctx), "conductor"))
            validate_prime(q, "conductor[]");
        for (const auto& q : need_array(key(p, "level", ctx), "level"))
            validate_prime(q, "level[]");
        need_bool(key(p, "power_content_hypothesis", ctx), "power_content_hypothesis");
        need_int_string(key(p, "unfactored_residue", ctx), "unfactored_residue");
    } else if (command == "sunit") {
        need_unsigned(key(p, "r", ctx), "r");
        need_enum(key(p, "set", ctx), {"S2", "S2r"}, "set");
        need_integer(key(p, "bound", ctx), "bound");
        need_unsigned(key(p, "generator_count", ctx), "generator_count");
        need_bool(key(p, "best_effort", ctx), "best_effort");
        need_bool(key(p, "user_certified", ctx), "user_certified");
        for (const auto& s : need_array(key(p, "solutions", ctx), "solutions")) {
            validate_element(key(s, "lambda", "solutions[]"), "solutions[].lambda");
            validate_element(key(s, "mu", "solutions[]"), "solutions[].mu");
            validate_element(key(s, "orbit_rep", "solutions[]"), "solutions[].orbit_rep");
            need_unsigned(key(s, "orbit_id", "solutions[]"), "solutions[].orbit_id");
        }
        validate_report(key(p, "report", ctx), "report");
    } else if (command == "eligible") {
        detail::validate_record(p, "eligible");
    } else if (command == "scan") {
        need_unsigned(key(p, "max", ctx), "max");
        for (const auto& rec : need_array(key(p, "records", ctx), "records"))
            validate_record(rec, "records[]");
        const json& elig = need_array(key(p, "eligible", ctx), "eligible");
        std::uint64_t prev = 0;
        for (const auto& v : elig) {
            need_unsigned(v, "eligible[]");
            need(v.get<std::uint64_t>() > prev, "eligible must be strictly ascending");
            prev = v.get<std::uint64_t>();
        }
    } else {
        detail::need(false, "unknown command '" + command + "'");
    }
}

/// Validates a full JSON document as printed by the tool: envelope plus payload.
inline void validate_result(const json& doc) {
    using namespace detail;
    need(key(doc, "schema_version", "result").is_number_unsigned() &&
             doc.at("schema_version").get<std::uint64_t>() == 1,
         "schema_version must be 1");
    need_string(key(doc, "command", "result"), "command");
    need_enum(key(doc, "status", "result"), {"ok", "failed"}, "status");
    validate_payload(doc.at("command").get<std::string>(), key(doc, "payload", "result"));
}

} // namespace cyclofermat::jsonio
