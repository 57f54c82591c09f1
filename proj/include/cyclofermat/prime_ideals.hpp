#pragma once

/**
 * @file prime_ideals.hpp
 * @brief Prime splitting in O_K = Z[theta] (Kummer-Dedekind), ideals in Hermite
 *        normal form, and exact valuations of elements and ideals.
 *
 * A prime q above p is stored as (p, g(theta)) with g a monic irreducible factor of
 * the minimal polynomial mod p. Valuations use the standard anti-uniformizer: a lift
 * b of a nonzero kernel vector of multiplication-by-g(theta) on O_K/pO_K satisfies
 * b*q <= pO_K and b not in pO_K, i.e. b lies in p*q^-1 with v_q(b) = e-1 exactly;
 * dividing y*b by p then strips one power of q per step.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mod_poly.hpp"
#include "real_cyclotomic.hpp"

namespace cyclofermat {

struct PrimeIdealFactor {
    std::uint64_t p = 0; // rational prime below
    ModPoly gen_poly;    // monic irreducible factor of P_r mod p
    int e = 1;           // ramification index
    int f = 1;           // residue degree = deg gen_poly

    friend bool operator==(const PrimeIdealFactor& a, const PrimeIdealFactor& b) {
        return a.p == b.p && a.gen_poly == b.gen_poly && a.e == b.e && a.f == b.f;
    }
};

/// Kummer-Dedekind splitting of p in O_K; factors sorted by (f, coefficients).
inline std::vector<PrimeIdealFactor> split_prime(const RealCyclotomicField& field,
                                                 std::uint64_t p) {
    ModPoly pmod = ModPoly::reduce(field.min_poly(), p); // constructor rejects composite p
    std::vector<PrimeIdealFactor> out;
    int efsum = 0;
    for (auto& [g, mult] : factor_mod_p(pmod)) {
        PrimeIdealFactor q{p, g, mult, g.degree()};
        efsum += q.e * q.f;
        out.push_back(std::move(q));
    }
    if (efsum != field.degree()) throw std::logic_error("splitting does not fill the degree");
    return out;
}

/// The unique (totally ramified) prime above r.
inline PrimeIdealFactor unique_prime_above_r(const RealCyclotomicField& field) {
    auto factors = split_prime(field, field.r());
    if (factors.size() != 1 || factors[0].e != field.degree() || factors[0].f != 1)
        throw std::logic_error("r is not totally ramified");
    return factors[0];
}

/**
 * Inertness of 2, computed two independent ways that must agree:
 * a single splitting factor with f = d, and the multiplicative order of the
 * image of 2 in the quotient of (Z/rZ)* by plus-minus-one equal to d.
 */
inline bool is_two_inert(const RealCyclotomicField& field) {
    auto factors = split_prime(field, 2);
    bool by_splitting =
        factors.size() == 1 && factors[0].e == 1 && factors[0].f == field.degree();

    std::uint64_t r = field.r();
    std::uint64_t pw = 2 % r;
    int order = 1;
    while (pw != 1 && pw != r - 1) {
        pw = mulmod_u64(pw, 2, r);
        ++order;
    }
    bool by_order = order == field.degree();

    if (by_splitting != by_order)
        throw std::logic_error("inertness criteria disagree at r = " + std::to_string(r));
    return by_splitting;
}

namespace detail {

/**
 * Canonical HNF of the span of the rows together with modulus*Z^d: d rows, row i
 * with pivot at column i, pivots positive, entries below a pivot reduced into
 * [0, pivot). All arithmetic is done modulo `modulus`, a known positive integer
 * of the lattice (valid because every lattice here is an O_K-ideal, so
 * modulus*Z^d is contained in it); this caps coefficient growth.
 */
inline std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> work, int d,
                                              const Int& modulus) {
    if (modulus <= 0) throw std::invalid_argument("zero ideal");
    auto reduce = [&modulus](Int& v) { mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t()); };
    for (auto& row : work)
        for (auto& v : row) reduce(v);
    for (int i = 0; i < d; ++i) {
        std::vector<Int> row(static_cast<std::size_t>(d), Int(0));
        row[static_cast<std::size_t>(i)] = modulus;
        work.push_back(std::move(row));
    }
    std::vector<std::optional<std::vector<Int>>> piv(static_cast<std::size_t>(d));
    auto top_col = [](const std::vector<Int>& v) {
        for (int c = static_cast<int>(v.size()) - 1; c >= 0; --c)
            if (v[static_cast<std::size_t>(c)] != 0) return c;
        return -1;
    };
    while (!work.empty()) {
        std::vector<Int> v = std::move(work.back());
        work.pop_back();
        int c = top_col(v);
        if (c < 0) continue;
        auto& slot = piv[static_cast<std::size_t>(c)];
        if (!slot) {
            slot = std::move(v); // entries already in [0, modulus)
            continue;
        }
        // combine so the slot keeps gcd of the two leading entries
        Int a = (*slot)[static_cast<std::size_t>(c)], b = v[static_cast<std::size_t>(c)];
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        std::vector<Int> u(static_cast<std::size_t>(d), Int(0));
        for (std::size_t i = 0; i <= static_cast<std::size_t>(c); ++i) {
            u[i] = s * (*slot)[i] + t * v[i];
            reduce(u[i]);
        }
        u[static_cast<std::size_t>(c)] = g; // exact, not reduced: g may equal modulus
        Int qa = a / g, qb = b / g;
        for (std::size_t i = 0; i < static_cast<std::size_t>(c); ++i) {
            (*slot)[i] -= qa * u[i];
            v[i] -= qb * u[i];
            reduce((*slot)[i]);
            reduce(v[i]);
        }
        (*slot)[static_cast<std::size_t>(c)] = 0;
        v[static_cast<std::size_t>(c)] = 0;
        std::vector<Int> leftover = std::move(*slot);
        *slot = std::move(u);
        if (top_col(leftover) >= 0) work.push_back(std::move(leftover));
        if (top_col(v) >= 0) work.push_back(std::move(v));
    }
    std::vector<std::vector<Int>> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        if (!piv[static_cast<std::size_t>(i)]) throw std::logic_error("modular HNF lost a pivot");
        out.push_back(std::move(*piv[static_cast<std::size_t>(i)]));
    }
    // reduce entries below each pivot
    for (int i = 1; i < d; ++i)
        for (int j = i - 1; j >= 0; --j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].get_mpz_t(),
                       out[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)].get_mpz_t());
            if (q == 0) continue;
            for (int k = 0; k <= j; ++k)
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] -=
                    q * out[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        }
    return out;
}

} // namespace detail

/// Nonzero (possibly fractional) ideal of O_K as 1/den times an integral HNF lattice.
class IdealHNF {
    /// Trusted path: `modulus` is a known positive integer of the row lattice.
    IdealHNF(RealCyclotomicField field, std::vector<std::vector<Int>> generator_rows, Int den,
             const Int& modulus)
        : field_(std::move(field)), den_(std::move(den)) {
        if (den_ == 0) throw std::invalid_argument("zero denominator");
        if (den_ < 0) den_ = -den_;
        for (auto& row : generator_rows)
            row.resize(static_cast<std::size_t>(field_.degree()), Int(0));
        mat_ = detail::hnf_rows(std::move(generator_rows), field_.degree(), modulus);
        normalize();
    }
    static Int diag_product(const std::vector<std::vector<Int>>& mat) {
        Int prod(1);
        for (std::size_t i = 0; i < mat.size(); ++i) prod *= mat[i][i];
        return prod;
    }

public:
    /// The rows must Z-span a nonzero ideal of O_K (an O_K-submodule, not just a lattice).
    IdealHNF(const RealCyclotomicField& field, std::vector<std::vector<Int>> generator_rows,
             Int den = Int(1))
        : IdealHNF(field, generator_rows, std::move(den), [&] {
              // the norm of any nonzero row is a positive integer of the ideal
              for (const auto& row : generator_rows) {
                  IntPoly p{std::vector<Int>(row)};
                  if (!p.is_zero()) return Int(abs(resultant(field.min_poly(), p)));
              }
              return Int(0); // rejected inside hnf_rows
          }()) {}

    static IdealHNF whole_ring(const RealCyclotomicField& f) {
        std::vector<std::vector<Int>> rows;
        for (int i = 0; i < f.degree(); ++i) {
            std::vector<Int> row(static_cast<std::size_t>(f.degree()), Int(0));
            row[static_cast<std::size_t>(i)] = 1;
            rows.push_back(std::move(row));
        }
        return {f, std::move(rows), Int(1), Int(1)};
    }

    /// Principal ideal xO_K (x != 0): rows are the coordinates of x * theta^i.
    static IdealHNF principal(const FieldElement& x) {
        if (x.is_zero()) throw std::invalid_argument("zero ideal");
        const RealCyclotomicField& f = x.field();
        std::vector<std::vector<Int>> rows;
        IntPoly cur = x.num();
        for (int i = 0; i < f.degree(); ++i) {
            std::vector<Int> row(static_cast<std::size_t>(f.degree()), Int(0));
            for (int k = 0; k <= cur.degree(); ++k) row[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k)];
            rows.push_back(std::move(row));
            cur = divmod(cur * IntPoly::x(), f.min_poly()).second;
        }
        return {f, std::move(rows), x.den(), abs(resultant(f.min_poly(), x.num()))};
    }

    /// The ideal (p, g(theta)) of a splitting factor.
    static IdealHNF from_prime(const RealCyclotomicField& f, const PrimeIdealFactor& q) {
        std::vector<std::vector<Int>> rows;
        Int p(static_cast<unsigned long>(q.p));
        for (int i = 0; i < f.degree(); ++i) {
            std::vector<Int> row(static_cast<std::size_t>(f.degree()), Int(0));
            row[static_cast<std::size_t>(i)] = p;
            rows.push_back(std::move(row));
        }
        IntPoly g = q.gen_poly.lift();
        IntPoly cur = divmod(g, f.min_poly()).second;
        for (int i = 0; i < f.degree(); ++i) {
            std::vector<Int> row(static_cast<std::size_t>(f.degree()), Int(0));
            for (int k = 0; k <= cur.degree(); ++k) row[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k)];
            rows.push_back(std::move(row));
            cur = divmod(cur * IntPoly::x(), f.min_poly()).second;
        }
        return {f, std::move(rows), Int(1), p};
    }

    const RealCyclotomicField& field() const { return field_; }
    const std::vector<std::vector<Int>>& matrix() const { return mat_; }
    const Int& den() const { return den_; }
    bool is_integral() const { return den_ == 1; }
    bool is_whole_ring() const {
        if (den_ != 1) return false;
        for (int i = 0; i < field_.degree(); ++i)
            for (int j = 0; j < field_.degree(); ++j)
                if (mat_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                    (i == j ? 1 : 0))
                    return false;
        return true;
    }

    friend bool operator==(const IdealHNF& a, const IdealHNF& b) {
        return a.field_ == b.field_ && a.den_ == b.den_ && a.mat_ == b.mat_;
    }
    friend bool operator!=(const IdealHNF& a, const IdealHNF& b) { return !(a == b); }

    /// Absolute norm: product of the HNF diagonal over den^d.
    Rat norm() const {
        Int prod(1);
        for (int i = 0; i < field_.degree(); ++i)
            prod *= mat_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        Int dpow;
        mpz_pow_ui(dpow.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(field_.degree()));
        Rat out(prod);
        out /= Rat(dpow);
        return out;
    }

    /// Ideal product: HNF of all pairwise basis products.
    friend IdealHNF operator*(const IdealHNF& a, const IdealHNF& b) {
        a.check_same(b);
        const RealCyclotomicField& f = a.field_;
        std::vector<std::vector<Int>> rows;
        rows.reserve(static_cast<std::size_t>(f.degree()) * static_cast<std::size_t>(f.degree()));
        for (const auto& ra : a.mat_) {
            IntPoly pa{std::vector<Int>(ra)};
            for (const auto& rb : b.mat_) {
                IntPoly prod = divmod(pa * IntPoly{std::vector<Int>(rb)}, f.min_poly()).second;
                std::vector<Int> row(static_cast<std::size_t>(f.degree()), Int(0));
                for (int k = 0; k <= prod.degree(); ++k) row[static_cast<std::size_t>(k)] = prod[static_cast<std::size_t>(k)];
                rows.push_back(std::move(row));
            }
        }
        // norms of the two integral factors multiply into the product lattice
        return {f, std::move(rows), a.den_ * b.den_, diag_product(a.mat_) * diag_product(b.mat_)};
    }

    /// Ideal sum (the gcd of ideals): union of generators.
    friend IdealHNF sum(const IdealHNF& a, const IdealHNF& b) {
        a.check_same(b);
        std::vector<std::vector<Int>> rows;
        for (const auto& r : a.mat_) {
            std::vector<Int> row(r);
            for (auto& v : row) v *= b.den_;
            rows.push_back(std::move(row));
        }
        for (const auto& r : b.mat_) {
            std::vector<Int> row(r);
            for (auto& v : row) v *= a.den_;
            rows.push_back(std::move(row));
        }
        return {a.field_, std::move(rows), a.den_ * b.den_,
                gcd(b.den_ * diag_product(a.mat_), a.den_ * diag_product(b.mat_))};
    }

    /// Membership x in the ideal, exact triangular solve.
    bool contains(const FieldElement& x) const {
        if (x.field() != field_) throw std::invalid_argument("elements of different fields");
        if (x.is_zero()) return true;
        // x in (1/den)L  <=>  den*x in L; den*x has coordinates den*num/x.den.
        std::vector<Int> v(static_cast<std::size_t>(field_.degree()), Int(0));
        for (int k = 0; k <= x.num().degree(); ++k) {
            Int scaled = den_ * x.num()[static_cast<std::size_t>(k)];
            if (scaled % x.den() != 0) return false;
            v[static_cast<std::size_t>(k)] = scaled / x.den();
        }
        for (int c = field_.degree() - 1; c >= 0; --c) {
            const Int& pivot = mat_[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            if (v[static_cast<std::size_t>(c)] % pivot != 0) return false;
            Int t = v[static_cast<std::size_t>(c)] / pivot;
            if (t == 0) continue;
            for (int k = 0; k <= c; ++k)
                v[static_cast<std::size_t>(k)] -= t * mat_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
        }
        return true;
    }

private:
    RealCyclotomicField field_;
    std::vector<std::vector<Int>> mat_;
    Int den_;

    void normalize() {
        if (den_ == 1) return;
        Int g = den_;
        for (const auto& row : mat_)
            for (const auto& v : row) g = gcd(g, v);
        if (g > 1) {
            for (auto& row : mat_)
                for (auto& v : row) v /= g;
            den_ /= g;
        }
    }
    void check_same(const IdealHNF& o) const {
        if (field_ != o.field_) throw std::invalid_argument("ideals of different fields");
    }
};

inline IdealHNF principal_ideal(const FieldElement& x) { return IdealHNF::principal(x); }

namespace detail {

/// Anti-uniformizer for q = (p, g): lift of a nonzero kernel vector of
/// multiplication-by-g(theta) on O_K/pO_K.
inline IntPoly anti_uniformizer(const RealCyclotomicField& field, const PrimeIdealFactor& q) {
    std::uint64_t p = q.p;
    int d = field.degree();
    ModPoly pmin = ModPoly::reduce(field.min_poly(), p);
    // columns of M: coordinates of g(theta)*theta^i mod (p, P_r)
    std::vector<std::vector<std::uint64_t>> m(static_cast<std::size_t>(d),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(d), 0));
    ModPoly cur = q.gen_poly % pmin;
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k <= cur.degree(); ++k) m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(k)];
        cur = (cur * ModPoly::x(p)) % pmin;
    }
    // Gaussian elimination to row echelon; record pivot column per row.
    std::vector<int> pivot_col(static_cast<std::size_t>(d), -1);
    int row = 0;
    for (int col = 0; col < d && row < d; ++col) {
        int sel = -1;
        for (int i = row; i < d; ++i)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m[static_cast<std::size_t>(sel)], m[static_cast<std::size_t>(row)]);
        std::uint64_t inv = powmod_u64(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)], p - 2, p);
        for (int k = col; k < d; ++k)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)] =
                mulmod_u64(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)], inv, p);
        for (int i = 0; i < d; ++i) {
            if (i == row) continue;
            std::uint64_t c = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
            if (c == 0) continue;
            for (int k = col; k < d; ++k) {
                std::uint64_t t = mulmod_u64(c, m[static_cast<std::size_t>(row)][static_cast<std::size_t>(k)], p);
                std::uint64_t& cell = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                cell = cell >= t ? cell - t : cell + p - t;
            }
        }
        pivot_col[static_cast<std::size_t>(row)] = col;
        ++row;
    }
    // first free column gives a kernel vector
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int i = 0; i < row; ++i) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] = true;
    int free_col = -1;
    for (int c = 0; c < d; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) { free_col = c; break; }
    if (free_col < 0) throw std::logic_error("multiplication map has no kernel");
    std::vector<Int> kern(static_cast<std::size_t>(d), Int(0));
    kern[static_cast<std::size_t>(free_col)] = 1;
    for (int i = 0; i < row; ++i) {
        std::uint64_t c = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(free_col)];
        if (c != 0)
            kern[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(i)])] =
                -Int(static_cast<unsigned long>(c));
    }
    return IntPoly(std::move(kern));
}

} // namespace detail

/// v_q(x) for a nonzero field element; exact for any sign of the valuation.
inline int valuation(const FieldElement& x, const PrimeIdealFactor& q) {
    if (x.is_zero()) throw std::invalid_argument("valuation of zero undefined");
    const RealCyclotomicField& f = x.field();
    Int p(static_cast<unsigned long>(q.p));
    IntPoly b = detail::anti_uniformizer(f, q);
    auto all_div = [&](const IntPoly& y) {
        for (const auto& c : y.coeffs())
            if (c % p != 0) return false;
        return true;
    };
    auto div_all = [&](const IntPoly& y) {
        std::vector<Int> c(y.coeffs());
        for (auto& v : c) v /= p;
        return IntPoly(std::move(c));
    };
    int v = 0;
    IntPoly y = x.num();
    while (true) {
        IntPoly z = divmod(y * b, f.min_poly()).second;
        if (!all_div(z)) break;
        y = div_all(z);
        ++v;
    }
    return v - q.e * valuation_int(x.den(), p);
}

/// v_q of a nonzero ideal: minimum over the HNF basis rows.
inline int valuation(const IdealHNF& a, const PrimeIdealFactor& q) {
    const RealCyclotomicField& f = a.field();
    int best = 0;
    bool first = true;
    for (const auto& row : a.matrix()) {
        FieldElement x(f, IntPoly{std::vector<Int>(row)});
        int v = valuation(x, q);
        if (first || v < best) best = v;
        first = false;
    }
    return best - q.e * valuation_int(a.den(), Int(static_cast<unsigned long>(q.p)));
}

} // namespace cyclofermat
