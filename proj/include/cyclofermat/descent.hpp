#pragma once

/**
 * @file descent.hpp
 * @brief Gaussian-integer powering (a0 + b0*i)^r = A + B*i and the factorization
 *        A = a0 * prod_j beta_j over K, with beta_j = (theta_j+2)a0^2 + (theta_j-2)b0^2.
 *
 * Witnesses (a0, b0) are free inputs: every identity here is polynomial in (a0, b0),
 * so it is testable without a genuine solution of the Fermat equation. The p-th-power
 * ideal shape of the beta_j is deliberately NOT asserted; only the coprimality and
 * r-adic valuation patterns are.
 */

#include <cstdint>
#include <utility>
#include <vector>

#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"

namespace cyclofermat {

/// Exact (a0 + b0*i)^r by binary powering in Z[i].
inline std::pair<Int, Int> gaussian_power(const Int& a0, const Int& b0, std::uint64_t r) {
    Int xa(1), xb(0); // accumulator
    Int ba = a0, bb = b0;
    std::uint64_t e = r;
    while (e) {
        if (e & 1) {
            Int na = xa * ba - xb * bb;
            Int nb = xa * bb + xb * ba;
            xa = std::move(na);
            xb = std::move(nb);
        }
        Int sa = ba * ba - bb * bb;
        Int sb = 2 * ba * bb;
        ba = std::move(sa);
        bb = std::move(sb);
        e >>= 1;
    }
    return {xa, xb};
}

inline void require_admissible(const Int& a0, const Int& b0) {
    if (gcd(a0, b0) != 1) throw std::invalid_argument("a0 and b0 must be coprime");
    if ((a0 + b0) % 2 == 0) throw std::invalid_argument("a0 + b0 must be odd");
}

/// beta_j = (theta_j + 2) a0^2 + (theta_j - 2) b0^2 for j = 1..d.
inline std::vector<FieldElement> beta_values(const RealCyclotomicField& field, const Int& a0,
                                             const Int& b0) {
    require_admissible(a0, b0);
    std::vector<FieldElement> betas;
    betas.reserve(static_cast<std::size_t>(field.degree()));
    Int a2 = a0 * a0, b2 = b0 * b0;
    FieldElement two = FieldElement::from_int(field, Int(2));
    for (int j = 1; j <= field.degree(); ++j) {
        FieldElement tj = theta(field, j);
        betas.push_back(a2 * (tj + two) + b2 * (tj - two));
    }
    return betas;
}

struct DescentWitness {
    Int a0, b0;
    std::uint64_t r = 0;
    Int A, B; // (a0 + b0 i)^r = A + B i
    Int c;    // a0^2 + b0^2 (odd for admissible witnesses)
    std::vector<FieldElement> betas;
    bool r_divides_a() const { return A % Int(static_cast<unsigned long>(r)) == 0; }
};

inline DescentWitness make_witness(const RealCyclotomicField& field, const Int& a0,
                                   const Int& b0) {
    DescentWitness w;
    w.a0 = a0;
    w.b0 = b0;
    w.r = field.r();
    auto [A, B] = gaussian_power(a0, b0, field.r());
    w.A = A;
    w.B = B;
    w.c = a0 * a0 + b0 * b0;
    w.betas = beta_values(field, a0, b0);
    return w;
}

/**
 * Checks on one witness: the product identity A = a0 * prod beta_j, pairwise
 * coprimality of the (beta_j) away from the ramified prime, and the r-adic
 * valuation pattern separating the two cases r | A and r does not divide A.
 */
inline Report verify_descent(const RealCyclotomicField& field, const Int& a0, const Int& b0) {
    DescentWitness w = make_witness(field, a0, b0);
    Report rep{"descent of (" + a0.get_str() + ", " + b0.get_str() + ") at r = " +
                   std::to_string(field.r()),
               {}};
    Int rz(static_cast<unsigned long>(field.r()));

    FieldElement prod = FieldElement::from_int(field, w.a0);
    for (const auto& b : w.betas) prod = prod * b;
    rep.lines.push_back({"A = a0 * prod(beta_j)", prod == FieldElement::from_int(field, w.A)});

    // pairwise coprime away from r: the norm of (beta_j) + (beta_k) is a power of r
    bool coprime_ok = true;
    for (std::size_t j = 0; j + 1 < w.betas.size(); ++j)
        for (std::size_t k = j + 1; k < w.betas.size(); ++k) {
            Rat n = sum(principal_ideal(w.betas[j]), principal_ideal(w.betas[k])).norm();
            Int v = n.get_num();
            while (v % rz == 0) v /= rz;
            if (!(n.get_den() == 1 && v == 1)) coprime_ok = false;
        }
    rep.lines.push_back({"(beta_j), (beta_k) share no prime outside r", coprime_ok});

    PrimeIdealFactor rad = unique_prime_above_r(field);
    bool pattern_ok = true;
    int expect = w.r_divides_a() ? 1 : 0;
    for (const auto& b : w.betas)
        if (valuation(b, rad) != expect) pattern_ok = false;
    rep.lines.push_back({std::string("v_r(beta_j) = ") + (expect ? "1" : "0") + " for all j " +
                             (w.r_divides_a() ? "(case r | A)" : "(case r does not divide A)"),
                         pattern_ok});
    return rep;
}

} // namespace cyclofermat
