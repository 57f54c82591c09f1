#pragma once

/**
 * @file real_cyclotomic.hpp
 * @brief The real cyclotomic field K = Q(zeta_r + zeta_r^-1) for prime r >= 5:
 *        exact power-basis arithmetic, conjugates theta_j, norms, traces, inverses.
 *
 * Convention: theta = theta_1 = zeta_r + zeta_r^-1; d = [K:Q] = (r-1)/2; elements are
 * num(theta)/den with num of degree < d over Z and den a positive integer coprime to
 * the content of num. The order Z[theta] is the full ring of integers here, so den = 1
 * characterizes integral elements.
 */

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "int_poly.hpp"
#include "integers.hpp"
#include "report.hpp"

namespace cyclofermat {

namespace detail {

struct FieldData {
    std::uint64_t r = 0;
    int d = 0;
    IntPoly min_poly;               // P_r, monic of degree d
    std::vector<IntPoly> conj_poly; // V_0..V_d with V_k(theta_1) = theta_k (unreduced)
};

} // namespace detail

class RealCyclotomicField {
public:
    explicit RealCyclotomicField(std::uint64_t r) {
        if (r < 5 || !is_prime_u64(r))
            throw std::invalid_argument(std::to_string(r) + " is not a prime >= 5");
        auto data = std::make_shared<detail::FieldData>();
        data->r = r;
        data->d = static_cast<int>((r - 1) / 2);
        // V_0 = 2, V_1 = x, V_{k+1} = x*V_k - V_{k-1}; these satisfy V_k(theta_1) = theta_k.
        data->conj_poly.reserve(data->d + 1);
        data->conj_poly.push_back(IntPoly::constant(Int(2)));
        data->conj_poly.push_back(IntPoly::x());
        for (int k = 1; k < data->d; ++k)
            data->conj_poly.push_back(IntPoly::x() * data->conj_poly[k] -
                                      data->conj_poly[k - 1]);
        IntPoly p = IntPoly::constant(Int(1));
        for (int k = 1; k <= data->d; ++k) p = p + data->conj_poly[k];
        data->min_poly = p;
        // Construction-time sanity: monic of the right degree, and the two
        // evaluations that pin down ramification and the unit family.
        if (data->min_poly.degree() != data->d || !data->min_poly.is_monic())
            throw std::logic_error("minimal polynomial malformed");
        if (data->min_poly.eval(Int(2)) != Int(static_cast<unsigned long>(r)))
            throw std::logic_error("minimal polynomial fails value test at 2");
        if (abs(data->min_poly.eval(Int(-2))) != 1)
            throw std::logic_error("minimal polynomial fails value test at -2");
        if (data->min_poly.eval(Int(1)) == 0 || data->min_poly.eval(Int(-1)) == 0)
            throw std::logic_error("minimal polynomial has a rational root");
        data_ = std::move(data);
    }

    std::uint64_t r() const { return data_->r; }
    int degree() const { return data_->d; }
    const IntPoly& min_poly() const { return data_->min_poly; }
    /// V_k with V_k(theta_1) = theta_k, 0 <= k <= d (not reduced mod the minimal polynomial).
    const IntPoly& conj_poly(int k) const {
        if (k < 0 || k > data_->d) throw std::invalid_argument("conjugation index out of range");
        return data_->conj_poly[static_cast<std::size_t>(k)];
    }

    /// disc(P_r) up to sign: resultant of P_r and its derivative (P_r is monic).
    Int discriminant_resultant() const { return resultant(data_->min_poly, data_->min_poly.derivative()); }
    /// Defensive ramification check: |disc| must be a power of r (r totally ramified, 2 unramified...).
    bool discriminant_supported_only_at_r() const {
        Int v = abs(discriminant_resultant());
        Int rz(static_cast<unsigned long>(data_->r));
        while (v % rz == 0) v /= rz;
        return v == 1;
    }

    friend bool operator==(const RealCyclotomicField& a, const RealCyclotomicField& b) {
        return a.data_->r == b.data_->r;
    }
    friend bool operator!=(const RealCyclotomicField& a, const RealCyclotomicField& b) {
        return !(a == b);
    }

private:
    std::shared_ptr<const detail::FieldData> data_;
};

inline RealCyclotomicField build_field(std::uint64_t r) { return RealCyclotomicField(r); }

class FieldElement {
public:
    FieldElement(RealCyclotomicField field, IntPoly num, Int den = Int(1))
        : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
        if (den_ == 0) throw std::invalid_argument("zero denominator");
        if (num_.degree() >= field_.degree()) num_ = divmod(num_, field_.min_poly()).second;
        normalize();
    }
    static FieldElement zero(const RealCyclotomicField& f) { return {f, IntPoly()}; }
    static FieldElement one(const RealCyclotomicField& f) { return {f, IntPoly::constant(Int(1))}; }
    static FieldElement from_int(const RealCyclotomicField& f, Int v) {
        return {f, IntPoly::constant(std::move(v))};
    }
    static FieldElement from_rat(const RealCyclotomicField& f, const Rat& v) {
        return {f, IntPoly::constant(v.get_num()), v.get_den()};
    }

    const RealCyclotomicField& field() const { return field_; }
    const IntPoly& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_integral() const { return den_ == 1; }
    /// Power-basis coordinate of theta^i in the numerator (0 for i >= deg).
    const Int& num_coeff(std::size_t i) const { return num_[i]; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        return {a.field_, b.den_ * a.num_ + a.den_ * b.num_, a.den_ * b.den_};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        return {a.field_, b.den_ * a.num_ - a.den_ * b.num_, a.den_ * b.den_};
    }
    friend FieldElement operator-(const FieldElement& a) { return {a.field_, -a.num_, a.den_}; }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same(b);
        return {a.field_, a.num_ * b.num_, a.den_ * b.den_};
    }
    friend FieldElement operator*(const Int& s, const FieldElement& a) {
        return {a.field_, s * a.num_, a.den_};
    }
    friend FieldElement operator*(const Rat& s, const FieldElement& a) {
        return {a.field_, s.get_num() * a.num_, a.den_ * s.get_den()};
    }

    std::string to_string(const std::string& var = "theta") const {
        std::string s = num_.to_string(var);
        if (den_ != 1) s = "(" + s + ")/" + den_.get_str();
        return s;
    }

private:
    RealCyclotomicField field_;
    IntPoly num_;
    Int den_;

    void normalize() {
        if (num_.is_zero()) {
            den_ = 1;
            return;
        }
        if (den_ < 0) {
            den_ = -den_;
            num_ = -num_;
        }
        Int g = gcd(num_.content(), den_);
        if (g > 1) {
            std::vector<Int> c(num_.coeffs());
            for (auto& v : c) v /= g;
            num_ = IntPoly(std::move(c));
            den_ /= g;
        }
    }
    void check_same(const FieldElement& o) const {
        if (field_ != o.field_) throw std::invalid_argument("elements of different fields");
    }
};

/// theta_j as a field element (j = 0 gives the rational 2).
inline FieldElement theta(const RealCyclotomicField& f, int j) {
    return {f, f.conj_poly(j)};
}

/// Apply the embedding theta_1 -> theta_j (a field automorphism of K).
inline FieldElement conjugate(const FieldElement& x, int j) {
    const RealCyclotomicField& f = x.field();
    if (j < 1 || j > f.degree()) throw std::invalid_argument("conjugation index out of range");
    if (j == 1) return x;
    // Compose the numerator with V_j, reducing mod P_r at every Horner step.
    const IntPoly& v = f.conj_poly(j);
    IntPoly acc;
    for (int i = x.num().degree(); i >= 0; --i) {
        acc = acc * v + IntPoly::constant(x.num()[static_cast<std::size_t>(i)]);
        acc = divmod(acc, f.min_poly()).second;
    }
    return {f, std::move(acc), x.den()};
}

/// Field norm N(x) = product of the d conjugates, signed (no absolute value).
inline Rat norm(const FieldElement& x) {
    if (x.is_zero()) return Rat(0);
    Int res = resultant(x.field().min_poly(), x.num());
    Int dpow;
    mpz_pow_ui(dpow.get_mpz_t(), x.den().get_mpz_t(),
               static_cast<unsigned long>(x.field().degree()));
    Rat out(res);
    out /= Rat(dpow);
    return out;
}

/// Field trace via Newton power sums of the minimal polynomial.
inline Rat trace(const FieldElement& x) {
    const IntPoly& p = x.field().min_poly();
    int d = x.field().degree();
    // t_k = trace(theta^k): t_0 = d, and Newton's identity on P_r = x^d + a_{d-1}x^{d-1} + ...
    std::vector<Int> t(static_cast<std::size_t>(x.num().degree()) + 1);
    Rat out(0);
    for (int k = 0; k <= x.num().degree(); ++k) {
        if (k == 0) {
            t[0] = d;
        } else {
            Int s = Int(-k) * p[static_cast<std::size_t>(d - k)];
            for (int i = 1; i < k; ++i) s -= p[static_cast<std::size_t>(d - i)] * t[static_cast<std::size_t>(k - i)];
            t[static_cast<std::size_t>(k)] = s;
        }
        out += Rat(x.num()[static_cast<std::size_t>(k)] * t[static_cast<std::size_t>(k)]);
    }
    out /= Rat(x.den());
    return out;
}

/// Multiplicative inverse via the extended Euclidean algorithm mod P_r.
inline FieldElement invert(const FieldElement& x) {
    if (x.is_zero()) throw std::invalid_argument("cannot invert zero");
    auto [g, u, v] = extended_gcd(RatPoly(x.num()), RatPoly(x.field().min_poly()));
    (void)v;
    if (g.degree() != 0) throw std::logic_error("minimal polynomial not coprime to numerator");
    // inverse of num(theta) is u/g; clear rational coefficients to (IntPoly, den).
    Rat scale = Rat(1) / g.coeffs()[0];
    Int common_den(1);
    for (const auto& c : u.coeffs()) {
        Rat cs = c * scale;
        common_den = lcm(common_den, cs.get_den());
    }
    std::vector<Int> numch(u.coeffs().size());
    for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
        Rat cs = u.coeffs()[i] * scale * Rat(common_den);
        numch[i] = cs.get_num(); // exact: denominator divides common_den
    }
    return {x.field(), x.den() * IntPoly(std::move(numch)), common_den};
}

inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * invert(b);
}

/// Integral unit test: integral with norm of absolute value 1.
inline bool is_unit(const FieldElement& x) {
    if (!x.is_integral() || x.is_zero()) return false;
    Rat n = norm(x);
    return n == 1 || n == -1;
}

inline FieldElement pow(const FieldElement& x, long e) {
    if (e < 0) return invert(pow(x, -e));
    FieldElement acc = FieldElement::one(x.field());
    FieldElement base = x;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) acc = acc * base;
        base = base * base;
        u >>= 1;
    }
    return acc;
}

/**
 * Check the four norm/unit families of the theta_j identities:
 * theta_j and theta_j+2 are units; |N(theta_j-2)| = |N(theta_j-theta_k)| = r.
 */
inline Report verify_lemma_cycl(const RealCyclotomicField& f) {
    Report rep{"theta_j unit and norm identities, r = " + std::to_string(f.r()), {}};
    Rat rval(static_cast<unsigned long>(f.r()));
    FieldElement two = FieldElement::from_int(f, Int(2));
    std::vector<FieldElement> th;
    th.reserve(static_cast<std::size_t>(f.degree()) + 1);
    th.push_back(FieldElement::zero(f)); // unused slot 0
    for (int j = 1; j <= f.degree(); ++j) th.push_back(theta(f, j));
    for (int j = 1; j <= f.degree(); ++j) {
        std::string tj = "theta_" + std::to_string(j);
        rep.lines.push_back({tj + " is a unit", is_unit(th[static_cast<std::size_t>(j)])});
        rep.lines.push_back({tj + " + 2 is a unit", is_unit(th[static_cast<std::size_t>(j)] + two)});
        Rat nm = norm(th[static_cast<std::size_t>(j)] - two);
        rep.lines.push_back({"|N(" + tj + " - 2)| = r", nm == rval || nm == -rval});
    }
    for (int j = 1; j <= f.degree(); ++j)
        for (int k = j + 1; k <= f.degree(); ++k) {
            Rat nm = norm(th[static_cast<std::size_t>(j)] - th[static_cast<std::size_t>(k)]);
            rep.lines.push_back({"|N(theta_" + std::to_string(j) + " - theta_" +
                                     std::to_string(k) + ")| = r",
                                 nm == rval || nm == -rval});
        }
    return rep;
}

} // namespace cyclofermat
