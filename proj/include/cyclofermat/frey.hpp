#pragma once

/**
 * @file frey.hpp
 * @brief Frey curve Y^2 = X(X - A)(X + B) attached to a descent witness, its exact
 *        invariants c4, Delta, j over K, reduction classification at prime ideals,
 *        and the conductor / level computation.
 *
 * Two curve shapes exist, chosen by whether r divides the first Gaussian coordinate:
 *
 *   case r does not divide a:  alpha = 1,
 *                              beta  = -(theta_j - 2)/(theta_k - 2),
 *                              gamma = 4(theta_j - theta_k)/(theta_k - 2);
 *   case r divides a:          alpha = 1/(theta_j - 2),
 *                              beta  = -1/(theta_k - 2),
 *                              gamma = 4(theta_j - theta_k)/((theta_j - 2)(theta_k - 2)).
 *
 * With A = alpha*beta_j, B = beta*beta_k, C = gamma*a0^2 these satisfy A + B + C = 0
 * exactly (the sign of beta is fixed by that identity) and all three are integral.
 */

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "descent.hpp"
#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"

namespace cyclofermat {

enum class FreyCase { r_ndiv_a, r_div_a };

inline std::string to_string(FreyCase c) {
    return c == FreyCase::r_ndiv_a ? "r_ndiv_a" : "r_div_a";
}

struct FreyParameters {
    FreyCase curve_case;
    int j, k;                        // conjugation indices, distinct, in 1..d
    FieldElement alpha, beta, gamma; // coefficients multiplying beta_j, beta_k, a0^2
    FieldElement A, B, C;            // integral, A + B + C = 0
    Int a0, b0;
    std::uint64_t p;                 // synthetic residual exponent
    int n;                           // synthetic 2-adic pattern: v_2(a0) = p*n
    int k_r;                         // synthetic r-adic level: v_r(a0) (case r | a)
    long delta;                      // (k_r*p - 1)(r - 1) - 1, case r | a only, else 0

    const RealCyclotomicField& field() const { return alpha.field(); }
};

inline FreyParameters frey_parameters(const RealCyclotomicField& field, const DescentWitness& w,
                                      int j, int k, FreyCase kase, std::uint64_t p = 5,
                                      int n = 0, int k_r = 1) {
    if (j < 1 || j > field.degree() || k < 1 || k > field.degree())
        throw std::invalid_argument("conjugation index out of range");
    if (j == k) throw std::invalid_argument("indices j and k must be distinct");
    if (!is_prime_u64(p) || p < 5) throw std::invalid_argument("p must be a prime >= 5");
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    if (k_r < 1) throw std::invalid_argument("k_r must be positive");
    if (w.r != field.r()) throw std::invalid_argument("witness belongs to a different field");
    bool div = w.r_divides_a();
    if (div != (kase == FreyCase::r_div_a))
        throw std::invalid_argument("requested case is inconsistent with the r-valuation of the witness");

    FieldElement one = FieldElement::one(field);
    FieldElement tj = theta(field, j), tk = theta(field, k);
    FieldElement two = FieldElement::from_int(field, Int(2));
    FieldElement tjm = tj - two, tkm = tk - two;

    FieldElement alpha = one, beta = one, gamma = one;
    if (kase == FreyCase::r_ndiv_a) {
        alpha = one;
        beta = -(tjm / tkm);
        gamma = Int(4) * ((tj - tk) / tkm);
    } else {
        alpha = invert(tjm);
        beta = -invert(tkm);
        gamma = Int(4) * ((tj - tk) / (tjm * tkm));
    }

    const FieldElement& bj = w.betas[static_cast<std::size_t>(j - 1)];
    const FieldElement& bk = w.betas[static_cast<std::size_t>(k - 1)];
    FieldElement A = alpha * bj;
    FieldElement B = beta * bk;
    FieldElement C = Int(w.a0 * w.a0) * gamma;

    if (!(A + B + C).is_zero()) throw std::logic_error("Frey pieces do not sum to zero");
    if (!A.is_integral() || !B.is_integral() || !C.is_integral())
        throw std::logic_error("Frey pieces are not integral");

    long delta = 0;
    if (kase == FreyCase::r_div_a)
        delta = (static_cast<long>(k_r) * static_cast<long>(p) - 1) *
                    (static_cast<long>(field.r()) - 1) -
                1;

    return FreyParameters{kase, j, k, alpha, beta, gamma, A, B, C, w.a0, w.b0, p, n, k_r, delta};
}

struct FreyCurve {
    FreyParameters params;
    FieldElement c4;    // 2^4 (A^2 - BC)
    FieldElement disc;  // 2^4 (ABC)^2
    FieldElement j_inv; // c4^3 / disc
};

/// Invariants of Y^2 = X(X - A)(X + B), computed through the standard b-invariant
/// chain of the long Weierstrass form (not from the closed displays, so the two
/// derivations cross-check each other in the tests).
inline FreyCurve frey_curve(const FreyParameters& P) {
    // x(x - A)(x + B) = x^3 + (B - A) x^2 - AB x
    FieldElement a2 = P.B - P.A;
    FieldElement a4 = -(P.A * P.B);
    FieldElement b2 = Int(4) * a2;
    FieldElement b4 = Int(2) * a4;
    FieldElement b8 = -(a4 * a4);
    FieldElement c4 = b2 * b2 - Int(24) * b4;
    FieldElement disc = -(b2 * b2 * b8) - Int(8) * (b4 * b4 * b4);
    if (disc.is_zero()) throw std::invalid_argument("degenerate witness: discriminant is zero");
    return FreyCurve{P, c4, disc, pow(c4, 3) / disc};
}

enum class Reduction { good, multiplicative, potentially_multiplicative, unknown };

inline std::string to_string(Reduction red) {
    switch (red) {
        case Reduction::good: return "good";
        case Reduction::multiplicative: return "multiplicative";
        case Reduction::potentially_multiplicative: return "potentially_multiplicative";
        default: return "unknown";
    }
}

/**
 * Reduction type of the curve at q. Away from 2 the model is minimal wherever it
 * matters (v_q(c4) and v_q(Delta) cannot both be positive at odd q for admissible
 * witnesses), so valuations of Delta and c4 decide good vs multiplicative. At
 * primes above 2 the model is never minimal; a negative j-valuation certifies
 * potentially multiplicative reduction, and anything else is left unknown.
 */
inline Reduction classify_reduction(const FreyCurve& E, const PrimeIdealFactor& q) {
    if (q.p == 2)
        return valuation(E.j_inv, q) < 0 ? Reduction::potentially_multiplicative
                                         : Reduction::unknown;
    int vD = valuation(E.disc, q);
    if (vD == 0) return Reduction::good;
    if (valuation(E.c4, q) == 0) return Reduction::multiplicative;
    return Reduction::unknown;
}

struct ConductorLevel {
    std::vector<PrimeIdealFactor> conductor; // primes dividing the conductor, each with exponent 1
    std::vector<PrimeIdealFactor> level;     // primes kept after removing q with p | v_q(Delta_q)
    bool power_content_hypothesis = false;   // stray odd primes away from 2r removed by assumption
    Int unfactored_residue{1};               // > 1 when trial division could not finish a norm
};

namespace detail {

inline bool prime_ideal_before(const PrimeIdealFactor& a, const PrimeIdealFactor& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.f != b.f) return a.f < b.f;
    return lex_less(a.gen_poly, b.gen_poly);
}

} // namespace detail

/**
 * Conductor n of the curve (a squarefree product of prime ideals: the primes above 2,
 * the ramified prime in case r | a, and every other odd prime at which Delta has
 * positive valuation) and the level n_p obtained by deleting the primes q with
 * p | v_q(Delta_q), where Delta_q is the minimal discriminant at q. At primes above 2
 * the model is non-minimal and v_q(Delta_q) = -v_q(j) is used when v_q(j) < 0; a
 * prime above 2 with v_q(j) >= 0 is conservatively kept in the level.
 *
 * For synthetic witnesses the stray odd primes away from 2 and r generically carry
 * v_q(Delta) = 2, which no p >= 5 divides; `assume_power_content` removes them from
 * the level anyway, modelling the p-th-power ideal shape that genuine solutions
 * force on the beta factors. The flag is echoed in the result.
 */
inline ConductorLevel conductor_and_level(const FreyCurve& E, bool assume_power_content = false) {
    const FreyParameters& P = E.params;
    const RealCyclotomicField& F = P.field();
    std::uint64_t p = P.p;
    ConductorLevel out;
    out.power_content_hypothesis = assume_power_content;

    // primes above 2: always in the conductor (the curve has full 2-torsion and
    // even Delta), removable from the level only with a certified j-valuation
    for (const auto& q : split_prime(F, 2)) {
        out.conductor.push_back(q);
        int vj = valuation(E.j_inv, q);
        bool removable = vj < 0 && static_cast<std::uint64_t>(-vj) % p == 0;
        if (!removable) out.level.push_back(q);
    }

    // the ramified prime, in case r | a only (case r ndiv a has v_r(Delta) = 0)
    PrimeIdealFactor rad = unique_prime_above_r(F);
    if (P.curve_case == FreyCase::r_div_a) {
        out.conductor.push_back(rad);
        int vD = valuation(E.disc, rad);
        if (static_cast<std::uint64_t>(vD) % p != 0) out.level.push_back(rad);
    }

    // stray odd primes: at odd q away from r, v_q(Delta) = 2 v_q(ABC), so the odd
    // support of Delta is read off |N(ABC)| and refined by exact valuations
    FieldElement x = P.A * P.B * P.C;
    Rat nx = norm(x);
    Int nn = abs(nx.get_num());
    TrialFactorization tf = trial_factor(nn);
    out.unfactored_residue = tf.residue;
    std::vector<PrimeIdealFactor> stray;
    for (const auto& [ell, mult] : tf.factors) {
        if (ell == 2 || ell == Int(static_cast<unsigned long>(F.r()))) continue;
        (void)mult;
        for (const auto& q : split_prime(F, ell.get_ui())) {
            int v = valuation(x, q);
            if (v <= 0) continue;
            stray.push_back(q);
            int vD = valuation(E.disc, q);
            bool removable = assume_power_content ||
                             (vD > 0 && static_cast<std::uint64_t>(vD) % p == 0);
            if (!removable) out.level.push_back(q);
        }
    }
    std::sort(stray.begin(), stray.end(), detail::prime_ideal_before);
    out.conductor.insert(out.conductor.end(), stray.begin(), stray.end());

    std::sort(out.conductor.begin(), out.conductor.end(), detail::prime_ideal_before);
    std::sort(out.level.begin(), out.level.end(), detail::prime_ideal_before);
    return out;
}

/**
 * The 2-adic valuation law for the j-invariant on witnesses with v_2(a0) = p*n and
 * odd b0 (n >= 1): v_P(j) = 4(1 - p*n) v_P(2) at every prime P above 2, and p never
 * divides that valuation since p > v_P(2). The boundary n = 0 (odd a0, even b0)
 * falls outside the law and lands at v_P(j) = 4 v_P(2) >= 0 instead.
 */
inline Report j_valuation_check(const RealCyclotomicField& field, const PrimeIdealFactor& P,
                                std::uint64_t p, int n) {
    if (P.p != 2) throw std::invalid_argument("P must lie above 2");
    if (!is_prime_u64(p) || p < 5) throw std::invalid_argument("p must be a prime >= 5");
    if (n < 0) throw std::invalid_argument("n must be nonnegative");

    Int a0, b0;
    if (n >= 1) {
        a0 = Int(1) << static_cast<unsigned long>(p * static_cast<std::uint64_t>(n));
        b0 = 1;
    } else {
        a0 = 1;
        b0 = 2;
    }
    DescentWitness w = make_witness(field, a0, b0);
    FreyCurve E = frey_curve(frey_parameters(field, w, 1, 2, FreyCase::r_ndiv_a, p, n));

    int vP2 = valuation(FieldElement::from_int(field, Int(2)), P);
    long expected = 4 * (1 - static_cast<long>(p) * n) * vP2;
    int vj = valuation(E.j_inv, P);

    Report rep{"j-valuation at a prime above 2, r = " + std::to_string(field.r()) +
                   ", p = " + std::to_string(p) + ", n = " + std::to_string(n),
               {}};
    rep.lines.push_back({"v_P(j) = 4(1 - p n) v_P(2)", vj == expected});
    if (n >= 1)
        rep.lines.push_back({"p does not divide v_P(j) (p > v_P(2))",
                             Int(vj) % Int(static_cast<unsigned long>(p)) != 0});
    else
        rep.lines.push_back({"n = 0 lies outside the law: v_P(j) >= 0", vj >= 0});
    return rep;
}

} // namespace cyclofermat
