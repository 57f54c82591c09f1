#pragma once

/**
 * @file sunit.hpp
 * @brief Bounded search for solutions of the S-unit equation lambda + mu = 1 over K,
 *        the six-element orbit structure of its solutions, the 2-adic valuation bound
 *        max(|v_P(lambda)|, |v_P(mu)|) <= 4 v_P(2), the Legendre j-maps, and the
 *        parity descent step that trades a unit nu for a pair with large valuation.
 *
 * The default generator lists are cyclotomic-unit families plus the obvious
 * S-generators; they are not proven to generate the full S-unit group, so every
 * result derived from them is flagged best-effort ("bounded-search evidence, not a
 * proof"). A user-supplied generator file asserts completeness and clears the flag.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"
#include "report.hpp"

namespace cyclofermat {

enum class SUnitSet { S2, S2r };

inline std::string to_string(SUnitSet s) { return s == SUnitSet::S2 ? "S2" : "S2r"; }

/// Rational primes under the places of S: {2} or {2, r}.
inline std::vector<Int> rational_primes(const RealCyclotomicField& field, SUnitSet s) {
    std::vector<Int> out{Int(2)};
    if (s == SUnitSet::S2r) out.push_back(Int(static_cast<unsigned long>(field.r())));
    return out;
}

struct SUnitGeneratorSet {
    RealCyclotomicField field;
    SUnitSet set_kind;
    std::vector<FieldElement> gens;
    bool best_effort = true;     // generators not proven to span the full S-unit group
    bool user_certified = false; // loaded from a file whose author asserts completeness
};

/// -1, the units theta_j (j >= 2) and theta_j + 2 (all j), the S-generator 2,
/// and theta_1 - 2 when the ramified prime belongs to S.
inline SUnitGeneratorSet default_generators(const RealCyclotomicField& field, SUnitSet s) {
    std::vector<FieldElement> gens;
    gens.push_back(FieldElement::from_int(field, Int(-1)));
    for (int j = 2; j <= field.degree(); ++j) gens.push_back(theta(field, j));
    FieldElement two = FieldElement::from_int(field, Int(2));
    for (int j = 1; j <= field.degree(); ++j) gens.push_back(theta(field, j) + two);
    gens.push_back(two);
    if (s == SUnitSet::S2r) gens.push_back(theta(field, 1) - two);
    return SUnitGeneratorSet{field, s, std::move(gens), true, false};
}

/// x is supported only at places above the given rational primes.
inline bool is_s_unit(const FieldElement& x, const std::vector<Int>& sprimes) {
    if (x.is_zero()) return false;
    Int den = x.den();
    for (const Int& ell : sprimes)
        while (den % ell == 0) den /= ell;
    if (den != 1) return false;
    Int nn = abs(resultant(x.field().min_poly(), x.num()));
    for (const Int& ell : sprimes)
        while (nn % ell == 0) nn /= ell;
    return nn == 1;
}

/**
 * Generator file format: one element per line as comma-separated integer
 * coefficients (constant term first) with an optional "/den" suffix, e.g.
 * "-1,1" for theta - 1 and "1,1/2" for (theta + 1)/2. '#' starts a comment.
 * Loading a file asserts that the listed elements generate the full group of
 * S-units, so the best-effort flag is cleared and user_certified is set.
 */
inline SUnitGeneratorSet load_generator_file(const RealCyclotomicField& field, SUnitSet s,
                                             std::istream& in) {
    std::vector<FieldElement> gens;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("generator file line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;

        std::string coeff_part = line, den_part;
        auto slash = line.find('/');
        if (slash != std::string::npos) {
            coeff_part = line.substr(0, slash);
            den_part = line.substr(slash + 1);
            if (den_part.empty()) fail("missing denominator after '/'");
        }
        std::vector<Int> coeffs;
        std::stringstream ss(coeff_part);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok.erase(tok.begin(), std::find_if(tok.begin(), tok.end(),
                                                [](unsigned char c) { return !std::isspace(c); }));
            tok.erase(std::find_if(tok.rbegin(), tok.rend(),
                                   [](unsigned char c) { return !std::isspace(c); })
                          .base(),
                      tok.end());
            if (tok.empty()) fail("empty coefficient");
            try {
                coeffs.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                fail("'" + tok + "' is not an integer");
            }
        }
        if (coeffs.empty()) fail("no coefficients");
        Int den(1);
        if (!den_part.empty()) {
            try {
                den = Int(den_part);
            } catch (const std::invalid_argument&) {
                fail("'" + den_part + "' is not an integer");
            }
            if (den == 0) fail("zero denominator");
        }
        FieldElement g(field, IntPoly(std::move(coeffs)), den);
        if (g.is_zero()) fail("zero element cannot generate units");
        gens.push_back(std::move(g));
    }
    if (gens.empty()) throw std::invalid_argument("generator file contains no generators");
    return SUnitGeneratorSet{field, s, std::move(gens), false, true};
}

inline SUnitGeneratorSet load_generator_file(const RealCyclotomicField& field, SUnitSet s,
                                             const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open generator file: " + path);
    return load_generator_file(field, s, in);
}

namespace detail {

struct ElementLess {
    bool operator()(const FieldElement& a, const FieldElement& b) const {
        if (a.den() != b.den()) return a.den() < b.den();
        const auto& ca = a.num().coeffs();
        const auto& cb = b.num().coeffs();
        if (ca.size() != cb.size()) return ca.size() < cb.size();
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (ca[i] != cb[i]) return ca[i] < cb[i];
        return false;
    }
};

/// The six Moebius images permuting {lambda, mu = 1 - lambda} solutions.
inline std::vector<FieldElement> six_orbit(const FieldElement& lam) {
    FieldElement one = FieldElement::one(lam.field());
    FieldElement mu = one - lam;
    return {lam, invert(lam), mu, invert(mu), -(lam / mu), -(mu / lam)};
}

} // namespace detail

struct SUnitSolution {
    FieldElement lambda;
    FieldElement mu;        // 1 - lambda
    FieldElement orbit_rep; // smallest orbit member under a fixed total order
    std::size_t orbit_id;   // orbits numbered in order of their representatives
};

/**
 * All lambda = prod gens[i]^{e_i} with e in the box [-B, B]^g (the exponent of a
 * generator equal to -1 only needs {0, 1}) such that mu = 1 - lambda is an S-unit,
 * deduplicated and closed under the six-element orbit action. Closure can pull in
 * solutions whose exponent vectors lie outside the box; they are genuine solutions
 * and are included. Sorted by (orbit_id, order on lambda).
 */
inline std::vector<SUnitSolution> enumerate_solutions(const SUnitGeneratorSet& gs, int bound) {
    if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
    const RealCyclotomicField& field = gs.field;
    FieldElement one = FieldElement::one(field);
    FieldElement minus_one = FieldElement::from_int(field, Int(-1));
    std::vector<Int> sprimes = rational_primes(field, gs.set_kind);

    // per-generator powers g^e, e in [-B, B] (or {0,1} for -1)
    std::vector<std::vector<FieldElement>> powers;
    std::vector<int> lo;
    for (const auto& g : gs.gens) {
        if (g.is_zero()) throw std::invalid_argument("zero generator");
        std::vector<FieldElement> row;
        int start = (g == minus_one) ? 0 : -bound;
        int stop = (g == minus_one) ? 1 : bound;
        for (int e = start; e <= stop; ++e) row.push_back(pow(g, e));
        powers.push_back(std::move(row));
        lo.push_back(start);
    }

    std::set<FieldElement, detail::ElementLess> found;
    auto descend = [&](auto&& self, std::size_t depth, const FieldElement& partial) -> void {
        if (depth == powers.size()) {
            if (partial == one) return;
            if (found.count(partial)) return;
            if (is_s_unit(one - partial, sprimes)) found.insert(partial);
            return;
        }
        for (const auto& pw : powers[depth]) self(self, depth + 1, partial * pw);
    };
    descend(descend, 0, one);

    // orbit closure: every Moebius image of a solution is again a solution
    std::vector<FieldElement> queue(found.begin(), found.end());
    while (!queue.empty()) {
        FieldElement lam = queue.back();
        queue.pop_back();
        for (const auto& im : detail::six_orbit(lam)) {
            if (found.count(im)) continue;
            if (!is_s_unit(im, sprimes) || !is_s_unit(one - im, sprimes))
                throw std::logic_error("orbit image is not an S-unit solution");
            found.insert(im);
            queue.push_back(im);
        }
    }

    // canonical representatives and orbit numbering
    detail::ElementLess less;
    std::map<FieldElement, std::size_t, detail::ElementLess> rep_ids;
    std::vector<SUnitSolution> out;
    for (const auto& lam : found) {
        FieldElement rep = lam;
        for (const auto& im : detail::six_orbit(lam))
            if (less(im, rep)) rep = im;
        rep_ids.emplace(rep, 0);
        out.push_back(SUnitSolution{lam, one - lam, rep, 0});
    }
    std::size_t next = 0;
    for (auto& [rep, id] : rep_ids) id = next++;
    for (auto& sol : out) sol.orbit_id = rep_ids.at(sol.orbit_rep);
    std::sort(out.begin(), out.end(), [&](const SUnitSolution& a, const SUnitSolution& b) {
        if (a.orbit_id != b.orbit_id) return a.orbit_id < b.orbit_id;
        return less(a.lambda, b.lambda);
    });
    return out;
}

struct ValuationBound {
    bool within;  // max(|v_lambda|, |v_mu|) <= bound
    int v_lambda;
    int v_mu;
    int bound;    // 4 v_P(2)
};

inline ValuationBound check_valuation_bound(const FieldElement& lambda, const FieldElement& mu,
                                            const PrimeIdealFactor& P) {
    if (lambda.is_zero() || mu.is_zero())
        throw std::invalid_argument("lambda and mu must be nonzero");
    if (!(lambda + mu == FieldElement::one(lambda.field())))
        throw std::invalid_argument("lambda + mu must equal 1");
    int vl = valuation(lambda, P);
    int vm = valuation(mu, P);
    int b = 4 * valuation(FieldElement::from_int(lambda.field(), Int(2)), P);
    return ValuationBound{std::max(std::abs(vl), std::abs(vm)) <= b, vl, vm, b};
}

/// j = 2^8 (lambda^2 - lambda + 1)^3 / (lambda^2 (1 - lambda)^2).
inline FieldElement legendre_j(const FieldElement& lam) {
    FieldElement one = FieldElement::one(lam.field());
    if (lam.is_zero() || lam == one)
        throw std::invalid_argument("lambda must avoid 0 and 1");
    FieldElement num = pow(lam * lam - lam + one, 3);
    FieldElement den = pow(lam, 2) * pow(one - lam, 2);
    return Int(256) * (num / den);
}

/// The same j written symmetrically in a pair with lambda + mu = 1:
/// j = 2^8 (1 - lambda mu)^3 / (lambda mu)^2.
inline FieldElement legendre_j_sym(const FieldElement& lam, const FieldElement& mu) {
    FieldElement one = FieldElement::one(lam.field());
    if (!(lam + mu == one)) throw std::invalid_argument("lambda + mu must equal 1");
    if (lam.is_zero() || mu.is_zero())
        throw std::invalid_argument("lambda must avoid 0 and 1");
    FieldElement x = lam * mu;
    return Int(256) * (pow(one - x, 3) / (x * x));
}

struct ParityStep {
    FieldElement lambda; // the branch with the large valuation: v_P(lambda) = 2 s0 - 4 v_P(2)
    FieldElement mu;     // lambda + mu = 1
    int s0;              // v_P(1 - nu^2)
    int v_lambda;
};

/**
 * Parity descent: a unit nu at P with s0 = v_P(1 - nu^2) >= 5 yields the pair
 * { (1+nu)^2/(4 nu), -(1-nu)^2/(4 nu) } summing to 1; lambda is the member with
 * valuation 2 s0 - 4 v_P(2). `force` runs the construction below the threshold.
 */
inline ParityStep parity_descent_step(const FieldElement& nu, const PrimeIdealFactor& P,
                                      bool force = false) {
    if (nu.is_zero()) throw std::invalid_argument("nu must be nonzero");
    const RealCyclotomicField& field = nu.field();
    FieldElement one = FieldElement::one(field);
    if (valuation(nu, P) != 0) throw std::invalid_argument("nu must be a unit at P");
    FieldElement omsq = one - nu * nu;
    if (omsq.is_zero()) throw std::invalid_argument("nu must not be a square root of 1");
    int s0 = valuation(omsq, P);
    if (s0 < 5 && !force) throw std::invalid_argument("descent hypothesis requires s_0 >= 5");

    FieldElement plus = one + nu, minus = one - nu;
    FieldElement four_nu = Int(4) * nu;
    int vp = valuation(plus, P), vm = valuation(minus, P);
    FieldElement lambda = one, mu = one;
    if (vp > vm) {
        lambda = (plus * plus) / four_nu;
        mu = -((minus * minus) / four_nu);
    } else if (vm > vp) {
        lambda = -((minus * minus) / four_nu);
        mu = (plus * plus) / four_nu;
    } else {
        throw std::logic_error("cannot split 1 - nu^2 into branches");
    }
    if (!((lambda + mu) == one)) throw std::logic_error("parity branches do not sum to 1");
    return ParityStep{lambda, mu, s0, valuation(lambda, P)};
}

/**
 * Bounded-search certification of the S-unit criterion over one field: enumerate
 * solutions up to the exponent bound, then check the orbit closure, the valuation
 * bound max(|v_P(lambda)|, |v_P(mu)|) <= 4 v_P(2), and the resulting integrality
 * v_P(j') = 8 v_P(2) - 2 t >= 0 of the symmetric Legendre j at every prime above 2.
 * With default generators the title carries the best-effort disclaimer.
 */
inline Report certify_field(const SUnitGeneratorSet& gs, int bound) {
    const RealCyclotomicField& field = gs.field;
    SUnitSet s = gs.set_kind;
    std::vector<SUnitSolution> sols = enumerate_solutions(gs, bound);
    std::vector<PrimeIdealFactor> above2 = split_prime(field, 2);
    std::vector<Int> sprimes = rational_primes(field, s);
    FieldElement one = FieldElement::one(field);

    std::string title = "S-unit equation survey, r = " + std::to_string(field.r()) + ", S = " +
                        to_string(s) + ", exponent bound " + std::to_string(bound);
    if (gs.best_effort) title += " (bounded-search evidence, not a proof)";
    Report rep{title, {}};

    rep.lines.push_back({"search found solutions (" + std::to_string(sols.size()) + ")",
                         !sols.empty()});

    bool pairs_ok = true, sunits_ok = true, closure_ok = true;
    std::set<FieldElement, detail::ElementLess> lambdas;
    for (const auto& sol : sols) lambdas.insert(sol.lambda);
    for (const auto& sol : sols) {
        if (!(sol.lambda + sol.mu == one)) pairs_ok = false;
        if (!is_s_unit(sol.lambda, sprimes) || !is_s_unit(sol.mu, sprimes)) sunits_ok = false;
        for (const auto& im : detail::six_orbit(sol.lambda))
            if (!lambdas.count(im)) closure_ok = false;
    }
    rep.lines.push_back({"lambda + mu = 1 for every solution", pairs_ok});
    rep.lines.push_back({"lambda and mu are S-units in every solution", sunits_ok});
    rep.lines.push_back({"solution list is closed under the six-element orbit", closure_ok});

    for (const auto& P : above2) {
        bool bound_ok = true, jval_ok = true;
        for (const auto& sol : sols) {
            ValuationBound vb = check_valuation_bound(sol.lambda, sol.mu, P);
            if (!vb.within) bound_ok = false;
            int t = std::max(std::abs(vb.v_lambda), std::abs(vb.v_mu));
            int vj = valuation(legendre_j_sym(sol.lambda, sol.mu), P);
            if (vj < 2 * vb.bound - 2 * t || 2 * vb.bound - 2 * t < 0) jval_ok = false;
        }
        std::string where = above2.size() == 1 ? "the prime above 2"
                                               : "a prime above 2 (f = " + std::to_string(P.f) + ")";
        rep.lines.push_back(
            {"max(|v_P(lambda)|, |v_P(mu)|) <= 4 v_P(2) at " + where, bound_ok});
        rep.lines.push_back({"v_P(j') >= 8 v_P(2) - 2 t >= 0 at " + where, jval_ok});
    }
    return rep;
}

inline Report certify_field(const RealCyclotomicField& field, SUnitSet s, int bound) {
    return certify_field(default_generators(field, s), bound);
}

} // namespace cyclofermat
