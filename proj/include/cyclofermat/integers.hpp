#pragma once

/**
 * @file integers.hpp
 * @brief Arbitrary-precision integers/rationals (GMP-backed) and small prime utilities.
 */

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cyclofermat {

using Int = mpz_class;
using Rat = mpq_class;

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline std::uint64_t next_prime_u64(std::uint64_t n) {
    n += (n % 2 == 0) ? 1 : 2;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

/// Exponent of prime p in n (n != 0).
inline int valuation_int(const Int& n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero undefined");
    Int m = abs(n);
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++v;
    }
    return v;
}

inline int valuation_rat(const Rat& x, const Int& p) {
    if (x == 0) throw std::invalid_argument("valuation of zero undefined");
    return valuation_int(Int(x.get_num()), p) - valuation_int(Int(x.get_den()), p);
}

/// Trial-division factorization of |n| up to `bound`; `residue` keeps whatever is left (1 if none).
struct TrialFactorization {
    std::map<Int, int> factors;
    Int residue = 1;
    bool complete() const { return residue == 1; }
};

inline TrialFactorization trial_factor(const Int& n, std::uint64_t bound = 1000000) {
    if (n == 0) throw std::invalid_argument("cannot factor zero");
    TrialFactorization out;
    Int m = abs(n);
    for (std::uint64_t p = 2; p <= bound && m > 1; p = (p == 2) ? 3 : p + 2) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        int v = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++v;
        }
        out.factors[Int(static_cast<unsigned long>(p))] = v;
        // Once the cofactor is below bound^2 it is prime or 1.
        if (m > 1 && m < Int(static_cast<unsigned long>(p)) * Int(static_cast<unsigned long>(p))) {
            out.factors[m] = 1;
            m = 1;
        }
    }
    if (m > 1) {
        if (is_prime(m)) out.factors[m] = 1;
        else out.residue = m;
    }
    return out;
}

} // namespace cyclofermat
