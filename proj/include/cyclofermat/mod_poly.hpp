#pragma once

/**
 * @file mod_poly.hpp
 * @brief Dense polynomials over prime residue fields F_p (p < 2^63) and their
 *        factorization (squarefree / distinct-degree / equal-degree stages).
 *
 * Randomized splitting steps run on a fixed-seed xorshift generator and results
 * are sorted by (degree, coefficient sequence), so output is fully deterministic.
 */

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "int_poly.hpp"
#include "integers.hpp"

namespace cyclofermat {

class ModPoly {
    struct unchecked_t {};
    ModPoly(unchecked_t, std::uint64_t p, std::vector<std::uint64_t> coeffs)
        : p_(p), c_(std::move(coeffs)) {
        normalize();
    }

public:
    ModPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        if (!is_prime_u64(p_)) throw std::invalid_argument("modulus is not prime");
        for (auto& v : c_) v %= p_;
        normalize();
    }
    static ModPoly zero(std::uint64_t p) { return ModPoly(p, {}); }
    static ModPoly constant(std::uint64_t p, std::uint64_t v) { return ModPoly(p, {v}); }
    static ModPoly x(std::uint64_t p) { return ModPoly(p, {0, 1}); }
    static ModPoly reduce(const IntPoly& f, std::uint64_t p) {
        std::vector<std::uint64_t> c(f.coeffs().size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
        return ModPoly(p, std::move(c));
    }

    std::uint64_t modulus() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t leading() const {
        if (c_.empty()) throw std::invalid_argument("zero polynomial has no leading coefficient");
        return c_.back();
    }

    /// Lift to Z with coefficients in [0, p).
    IntPoly lift() const {
        std::vector<Int> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = Int(static_cast<unsigned long>(c_[i]));
        return IntPoly(std::move(c));
    }

    friend bool operator==(const ModPoly& a, const ModPoly& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    friend bool operator!=(const ModPoly& a, const ModPoly& b) { return !(a == b); }

    /// Canonical order: degree first, then the coefficient sequence (low to high).
    friend bool lex_less(const ModPoly& a, const ModPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.c_ < b.c_;
    }

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        std::vector<std::uint64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::uint64_t s = a[i] + b[i]; // p < 2^63 keeps the sum below 2^64
            out[i] = s >= a.p_ ? s - a.p_ : s;
        }
        return ModPoly(unchecked_t{}, a.p_, std::move(out));
    }
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        std::vector<std::uint64_t> out(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            std::uint64_t x = a[i], y = b[i];
            out[i] = x >= y ? x - y : x + a.p_ - y;
        }
        return ModPoly(unchecked_t{}, a.p_, std::move(out));
    }
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        if (a.is_zero() || b.is_zero()) return ModPoly(unchecked_t{}, a.p_, {});
        std::vector<std::uint64_t> out(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                std::uint64_t t = mulmod_u64(a.c_[i], b.c_[j], a.p_);
                std::uint64_t s = out[i + j] + t;
                out[i + j] = s >= a.p_ ? s - a.p_ : s;
            }
        }
        return ModPoly(unchecked_t{}, a.p_, std::move(out));
    }
    friend ModPoly operator*(std::uint64_t s, const ModPoly& a) {
        s %= a.p_;
        std::vector<std::uint64_t> out(a.c_);
        for (auto& v : out) v = mulmod_u64(v, s, a.p_);
        return ModPoly(unchecked_t{}, a.p_, std::move(out));
    }

    friend std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
        int db = b.degree();
        if (a.degree() < db) return {ModPoly(unchecked_t{}, a.p_, {}), a};
        std::uint64_t p = a.p_;
        std::uint64_t lb_inv = powmod_u64(b.leading(), p - 2, p);
        std::vector<std::uint64_t> rem(a.c_);
        std::vector<std::uint64_t> quot(a.degree() - db + 1, 0);
        for (int i = a.degree(); i >= db; --i) {
            std::uint64_t q = mulmod_u64(rem[i], lb_inv, p);
            if (q == 0) continue;
            quot[i - db] = q;
            for (int j = 0; j <= db; ++j) {
                std::uint64_t t = mulmod_u64(q, b.c_[j], p);
                std::uint64_t& cell = rem[i - db + j];
                cell = cell >= t ? cell - t : cell + p - t;
            }
        }
        return {ModPoly(unchecked_t{}, p, std::move(quot)),
                ModPoly(unchecked_t{}, p, std::move(rem))};
    }
    friend ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
    friend ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

    ModPoly monic() const {
        if (is_zero() || leading() == 1) return *this;
        return powmod_u64(leading(), p_ - 2, p_) * *this;
    }

    friend ModPoly gcd(const ModPoly& a, const ModPoly& b) {
        a.check_same(b);
        ModPoly f = a, g = b;
        while (!g.is_zero()) {
            ModPoly r = f % g;
            f = std::move(g);
            g = std::move(r);
        }
        return f.monic();
    }

    std::uint64_t eval(std::uint64_t x) const {
        x %= p_;
        std::uint64_t acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = mulmod_u64(acc, x, p_) + *it;
            if (acc >= p_) acc -= p_;
        }
        return acc;
    }

    ModPoly derivative() const {
        if (c_.size() <= 1) return ModPoly(unchecked_t{}, p_, {});
        std::vector<std::uint64_t> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = mulmod_u64(c_[i], i % p_, p_);
        return ModPoly(unchecked_t{}, p_, std::move(out));
    }

    std::string to_string(const std::string& var = "x") const { return lift().to_string(var); }

private:
    std::uint64_t p_ = 2;
    std::vector<std::uint64_t> c_;
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    void check_same(const ModPoly& o) const {
        if (p_ != o.p_) throw std::invalid_argument("mixed moduli");
    }
};

/// base^exp mod f, with an arbitrary-precision exponent.
inline ModPoly powmod(const ModPoly& base, const Int& exp, const ModPoly& f) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    ModPoly acc = ModPoly::constant(base.modulus(), 1);
    ModPoly b = base % f;
    std::size_t bits = mpz_sizeinbase(exp.get_mpz_t(), 2);
    if (exp == 0) return acc;
    for (std::size_t i = bits; i-- > 0;) {
        acc = (acc * acc) % f;
        if (mpz_tstbit(exp.get_mpz_t(), i)) acc = (acc * b) % f;
    }
    return acc;
}

namespace detail {

struct Xorshift64 {
    std::uint64_t s;
    explicit Xorshift64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

/// Trace map h + h^2 + h^4 + ... + h^(2^(m-1)) mod f, used to split over F_2.
inline ModPoly trace_map_f2(const ModPoly& h, int m, const ModPoly& f) {
    ModPoly acc = h % f;
    ModPoly pow = acc;
    for (int i = 1; i < m; ++i) {
        pow = (pow * pow) % f;
        acc = acc + pow;
    }
    return acc;
}

/// Split f (product of >= 2 distinct irreducibles, all of degree m) into irreducibles.
inline void equal_degree_split(const ModPoly& f, int m, std::vector<ModPoly>& out,
                               Xorshift64& rng) {
    if (f.degree() == m) {
        out.push_back(f.monic());
        return;
    }
    std::uint64_t p = f.modulus();
    Int half_order; // (p^m - 1) / 2 for odd p
    if (p != 2) {
        Int pm;
        mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m));
        half_order = (pm - 1) / 2;
    }
    for (int attempt = 0; attempt < 4096; ++attempt) {
        // random poly of degree < deg f, not constant
        std::vector<std::uint64_t> hc(static_cast<std::size_t>(f.degree()), 0);
        for (auto& v : hc) v = rng.next() % p;
        ModPoly h(p, std::move(hc));
        if (h.degree() < 1) continue;
        ModPoly g = gcd(h, f);
        if (g.degree() == 0) {
            if (p == 2) g = gcd(trace_map_f2(h, m, f), f);
            else {
                ModPoly e = powmod(h, half_order, f);
                g = gcd(e - ModPoly::constant(p, 1), f);
            }
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, m, out, rng);
            equal_degree_split((f / g).monic(), m, out, rng);
            return;
        }
    }
    throw std::logic_error("equal-degree splitting did not converge");
}

/// Distinct-degree stage: f squarefree monic; appends (irreducible, 1)-to-be factors.
inline void distinct_degree_factor(ModPoly f, std::vector<ModPoly>& out, Xorshift64& rng) {
    std::uint64_t p = f.modulus();
    ModPoly h = ModPoly::x(p) % f;
    int i = 0;
    while (f.degree() >= 2 * (i + 1)) {
        ++i;
        h = powmod(h, Int(static_cast<unsigned long>(p)), f);
        ModPoly g = gcd(h - ModPoly::x(p), f);
        if (g.degree() > 0) {
            equal_degree_split(g, i, out, rng);
            f = (f / g).monic();
            h = h % f;
        }
    }
    if (f.degree() > 0) out.push_back(f.monic());
}

/// p-th root of g in F_p[x], valid when g = sum a_i x^(p*i) (i.e. g' = 0).
inline ModPoly pth_root(const ModPoly& g) {
    std::uint64_t p = g.modulus();
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i * p <= static_cast<std::size_t>(g.degree()); ++i)
        out.push_back(g[i * p]); // a^p = a in F_p, so coefficients carry over
    return ModPoly(p, std::move(out));
}

inline void squarefree_factor(const ModPoly& f, int mult, std::vector<std::pair<ModPoly, int>>& out,
                              Xorshift64& rng) {
    std::uint64_t p = f.modulus();
    ModPoly c = gcd(f, f.derivative());
    ModPoly w = (f / c).monic();
    int i = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, c);
        ModPoly fac = (w / y).monic();
        if (fac.degree() > 0) {
            std::vector<ModPoly> irr;
            distinct_degree_factor(fac, irr, rng);
            for (auto& q : irr) out.emplace_back(std::move(q), mult * i);
        }
        w = std::move(y);
        c = (c / w).monic();
        ++i;
    }
    if (c.degree() > 0) squarefree_factor(pth_root(c), mult * static_cast<int>(p), out, rng);
}

} // namespace detail

/**
 * Full factorization over F_p. Returns monic irreducible factors with multiplicities,
 * sorted by (degree, coefficient sequence); the unit scalar is discarded.
 */
inline std::vector<std::pair<ModPoly, int>> factor_mod_p(const ModPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
    std::vector<std::pair<ModPoly, int>> out;
    if (f.degree() == 0) return out;
    detail::Xorshift64 rng(0x5779d93e9f2c41a1ull);
    detail::squarefree_factor(f.monic(), 1, out, rng);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return lex_less(a.first, b.first);
        return a.second < b.second;
    });
    return out;
}

} // namespace cyclofermat
