#pragma once

/**
 * @file int_poly.hpp
 * @brief Dense univariate polynomials over Z and Q, plus an exact integer resultant.
 *
 * Coefficients are stored lowest degree first; the zero polynomial has an empty
 * coefficient vector and degree -1. Degrees stay small (<= a few hundred), so all
 * products are schoolbook.
 */

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "integers.hpp"

namespace cyclofermat {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }
    static IntPoly constant(Int v) { return IntPoly(std::vector<Int>{std::move(v)}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& operator[](std::size_t i) const {
        static const Int zero(0);
        return i < c_.size() ? c_[i] : zero;
    }
    const Int& leading() const {
        if (c_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> out(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
        return IntPoly(std::move(out));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> out(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
        return IntPoly(std::move(out));
    }
    friend IntPoly operator-(const IntPoly& a) {
        std::vector<Int> out(a.c_);
        for (auto& v : out) v = -v;
        return IntPoly(std::move(out));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> out(a.c_.size() + b.c_.size() - 1, Int(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(out));
    }
    friend IntPoly operator*(const Int& s, const IntPoly& a) {
        if (s == 0) return IntPoly();
        std::vector<Int> out(a.c_);
        for (auto& v : out) v *= s;
        return IntPoly(std::move(out));
    }

    /// Exact division with remainder; the divisor must be monic.
    friend std::pair<IntPoly, IntPoly> divmod(const IntPoly& a, const IntPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
        if (!b.is_monic()) throw std::invalid_argument("requires monic divisor");
        std::vector<Int> rem(a.c_);
        int db = b.degree();
        if (a.degree() < db) return {IntPoly(), a};
        std::vector<Int> quot(a.degree() - db + 1, Int(0));
        for (int i = a.degree(); i >= db; --i) {
            Int q = rem[i];
            if (q == 0) continue;
            quot[i - db] = q;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
        }
        return {IntPoly(std::move(quot)), IntPoly(std::move(rem))};
    }

    Int eval(const Int& x) const {
        Int acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Int content() const {
        Int g(0);
        for (const auto& v : c_) g = gcd(g, v);
        return g;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<Int> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = Int(static_cast<unsigned long>(i)) * c_[i];
        return IntPoly(std::move(out));
    }

    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            const Int& v = c_[i];
            if (v == 0) continue;
            Int a = abs(v);
            if (first) { if (v < 0) os << "-"; first = false; }
            else os << (v < 0 ? " - " : " + ");
            if (i == 0 || a != 1) os << a.get_str();
            if (i > 0) {
                if (a != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    std::vector<Int> c_;
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

/// Polynomials over Q; only what the field inverse needs (division, extended gcd).
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { normalize(); }
    explicit RatPoly(const IntPoly& p) {
        c_.reserve(p.coeffs().size());
        for (const auto& v : p.coeffs()) c_.emplace_back(v);
    }
    static RatPoly constant(Rat v) { return RatPoly(std::vector<Rat>{std::move(v)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rat>& coeffs() const { return c_; }
    const Rat& leading() const { return c_.back(); }

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < a.c_.size()) out[i] += a.c_[i];
            if (i < b.c_.size()) out[i] += b.c_[i];
        }
        return RatPoly(std::move(out));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> out(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i < a.c_.size()) out[i] += a.c_[i];
            if (i < b.c_.size()) out[i] -= b.c_[i];
        }
        return RatPoly(std::move(out));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rat> out(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                out[i + j] += a.c_[i] * b.c_[j];
        return RatPoly(std::move(out));
    }
    friend RatPoly operator*(const Rat& s, const RatPoly& a) {
        std::vector<Rat> out(a.c_);
        for (auto& v : out) v *= s;
        return RatPoly(std::move(out));
    }

    friend std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
        std::vector<Rat> rem(a.c_);
        int db = b.degree();
        if (a.degree() < db) return {RatPoly(), a};
        std::vector<Rat> quot(a.degree() - db + 1, Rat(0));
        for (int i = a.degree(); i >= db; --i) {
            if (rem[i] == 0) continue;
            Rat q = rem[i] / b.c_[db];
            quot[i - db] = q;
            for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.c_[j];
        }
        return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
    }
    friend RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }
    friend RatPoly operator/(const RatPoly& a, const RatPoly& b) { return divmod(a, b).first; }

private:
    std::vector<Rat> c_;
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

/// Extended Euclid over Q[x]: returns (g, u, v) with u*a + v*b = g.
inline std::tuple<RatPoly, RatPoly, RatPoly> extended_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly u0 = RatPoly::constant(Rat(1)), u1;
    RatPoly v0, v1 = RatPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        RatPoly u2 = u0 - q * u1;
        RatPoly v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    return {r0, u0, v0};
}

namespace detail {

/// Resultant of two polynomials over F_p via a Euclidean remainder sequence.
inline std::uint64_t resultant_mod_p(std::vector<std::uint64_t> f, std::vector<std::uint64_t> g,
                                     std::uint64_t p) {
    auto deg = [](const std::vector<std::uint64_t>& v) { return static_cast<int>(v.size()) - 1; };
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(f); trim(g);
    if (f.empty() || g.empty()) return 0;
    std::uint64_t res = 1;
    while (deg(g) > 0) {
        // r = f mod g
        std::vector<std::uint64_t> r = f;
        std::uint64_t lg_inv = powmod_u64(g.back(), p - 2, p);
        for (int i = deg(r); i >= deg(g); --i) {
            std::uint64_t q = mulmod_u64(r[i], lg_inv, p);
            if (q == 0) continue;
            for (int j = 0; j <= deg(g); ++j) {
                std::uint64_t t = mulmod_u64(q, g[j], p);
                std::uint64_t& cell = r[i - deg(g) + j];
                cell = (cell >= t) ? cell - t : cell + p - t;
            }
        }
        trim(r);
        if ((static_cast<std::uint64_t>(deg(f)) * static_cast<std::uint64_t>(deg(g))) & 1)
            res = (p - res) % p;
        int drop = deg(f) - (r.empty() ? 0 : deg(r));
        if (r.empty()) return 0;
        res = mulmod_u64(res, powmod_u64(g.back(), static_cast<std::uint64_t>(drop), p), p);
        f = std::move(g);
        g = std::move(r);
    }
    // g is a nonzero constant.
    return mulmod_u64(res, powmod_u64(g[0], static_cast<std::uint64_t>(deg(f)), p), p);
}

/// i-th element of a fixed pool of 62-bit primes, grown on demand.
inline std::uint64_t crt_prime(std::size_t i) {
    static std::vector<std::uint64_t> cache;
    while (cache.size() <= i)
        cache.push_back(next_prime_u64(cache.empty() ? (1ull << 62) - 1 : cache.back()));
    return cache[i];
}

} // namespace detail

/**
 * Exact resultant over Z by Chinese remaindering against 62-bit primes;
 * the prime count is driven by the Hadamard bound on the Sylvester determinant.
 * Requires deg f >= 1 and deg g >= 0.
 */
inline Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) return Int(0);
    int df = f.degree(), dg = g.degree();
    if (df < 1) throw std::invalid_argument("resultant: first argument must have degree >= 1");
    if (dg == 0) {
        Int out;
        mpz_pow_ui(out.get_mpz_t(), g[0].get_mpz_t(), static_cast<unsigned long>(df));
        return out;
    }
    // bound^2 = (sum f_i^2)^dg * (sum g_i^2)^df  >= resultant^2
    Int sf(0), sg(0);
    for (const auto& v : f.coeffs()) sf += v * v;
    for (const auto& v : g.coeffs()) sg += v * v;
    Int bound2;
    {
        Int a, b;
        mpz_pow_ui(a.get_mpz_t(), sf.get_mpz_t(), static_cast<unsigned long>(dg));
        mpz_pow_ui(b.get_mpz_t(), sg.get_mpz_t(), static_cast<unsigned long>(df));
        bound2 = a * b;
    }
    Int modulus(1), acc(0);
    for (std::size_t i = 0; modulus * modulus <= 4 * bound2; ++i) {
        std::uint64_t p = detail::crt_prime(i);
        // Skip primes killing a leading coefficient (degree would drop).
        if (mpz_fdiv_ui(f.leading().get_mpz_t(), p) == 0) continue;
        if (mpz_fdiv_ui(g.leading().get_mpz_t(), p) == 0) continue;
        std::vector<std::uint64_t> fp(f.coeffs().size()), gp(g.coeffs().size());
        for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
        for (std::size_t i = 0; i < gp.size(); ++i) gp[i] = mpz_fdiv_ui(g.coeffs()[i].get_mpz_t(), p);
        std::uint64_t rp = detail::resultant_mod_p(std::move(fp), std::move(gp), p);
        // CRT: acc <- acc + modulus * ((rp - acc) / modulus mod p)
        Int pz(static_cast<unsigned long>(p));
        Int delta = (Int(static_cast<unsigned long>(rp)) - acc) % pz;
        if (delta < 0) delta += pz;
        Int minv;
        Int mred = modulus % pz;
        if (mpz_invert(minv.get_mpz_t(), mred.get_mpz_t(), pz.get_mpz_t()) == 0)
            throw std::logic_error("CRT modulus collision");
        Int t = (delta * minv) % pz;
        acc += modulus * t;
        modulus *= pz;
    }
    if (2 * acc > modulus) acc -= modulus;
    return acc;
}

} // namespace cyclofermat
