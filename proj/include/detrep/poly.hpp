/*
   Copyright 2026 The detrep authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "detrep/gaussian.hpp"
#include "detrep/rational.hpp"

namespace detrep {

/// Dense univariate polynomial over exact rationals. Coefficient index equals
/// the degree of the monomial; the highest stored coefficient is nonzero and
/// the zero polynomial stores no coefficients at all. The degree of the zero
/// polynomial is not an integer (it is "minus infinity"), hence degree()
/// returns an empty optional for it.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }
    Poly(long constant) : Poly(Rational(constant)) {}
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rational(1)); }
    static Poly x() { return monomial(1, Rational(1)); }
    static Poly monomial(int deg, const Rational& coeff) {
        if (deg < 0) throw std::invalid_argument("Poly::monomial: negative degree");
        if (coeff.is_zero()) return Poly();
        std::vector<Rational> c(static_cast<size_t>(deg) + 1);
        c.back() = coeff;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }

    /// Empty optional encodes deg(0) = -infinity.
    std::optional<int> degree() const {
        if (c_.empty()) return std::nullopt;
        return static_cast<int>(c_.size()) - 1;
    }

    /// Degree of a known-nonzero polynomial.
    int degree_nonzero() const {
        if (c_.empty()) throw std::logic_error("Poly: degree of the zero polynomial");
        return static_cast<int>(c_.size()) - 1;
    }

    const Rational& leading_coefficient() const {
        if (c_.empty()) throw std::logic_error("Poly: leading coefficient of the zero polynomial");
        return c_.back();
    }

    /// Coefficient of x^k; zero beyond the degree.
    const Rational& coefficient(int k) const {
        static const Rational kZero(0);
        if (k < 0 || static_cast<size_t>(k) >= c_.size()) return kZero;
        return c_[static_cast<size_t>(k)];
    }

    std::span<const Rational> coefficients() const { return c_; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator-(const Poly& a) {
        std::vector<Rational> c(a.c_.size());
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = -a.c_[i];
        return Poly(std::move(c));
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend Poly operator*(const Poly& a, const Rational& s) {
        if (s.is_zero()) return Poly();
        std::vector<Rational> c(a.c_.size());
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i] * s;
        return Poly(std::move(c));
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
    friend Poly operator/(const Poly& a, const Rational& s) { return a * s.inverse(); }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor). Throws on a zero divisor.
    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::invalid_argument("Poly: division by the zero polynomial");
        if (a.is_zero() || a.c_.size() < b.c_.size()) return {Poly(), a};
        std::vector<Rational> rem = a.c_;
        std::vector<Rational> quot(a.c_.size() - b.c_.size() + 1);
        const Rational lead_inv = b.c_.back().inverse();
        for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
            const size_t top = static_cast<size_t>(k) + b.c_.size() - 1;
            if (rem[top].is_zero()) continue;
            const Rational q = rem[top] * lead_inv;
            quot[static_cast<size_t>(k)] = q;
            for (size_t j = 0; j < b.c_.size(); ++j) rem[static_cast<size_t>(k) + j] -= q * b.c_[j];
        }
        return {Poly(std::move(quot)), Poly(std::move(rem))};
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rational> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return Poly(std::move(c));
    }

    /// Horner evaluation; works for Rational and GaussianRational points.
    template <class Scalar>
    Scalar eval(const Scalar& x) const {
        Scalar acc{};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + Scalar(c_[i]);
        return acc;
    }
    Rational operator()(const Rational& x) const { return eval(x); }
    GaussianRational operator()(const GaussianRational& z) const { return eval(z); }

    Poly monic() const {
        if (is_zero()) throw std::invalid_argument("Poly: monic of the zero polynomial");
        return *this * c_.back().inverse();
    }

    /// Positive rational c with *this = c * primitive_part(); primitive_part
    /// has coprime integer coefficients and the sign of the original.
    Rational content() const {
        if (is_zero()) return Rational(0);
        mpz_class den_lcm(1);
        for (const auto& q : c_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.den().get_mpz_t());
        mpz_class num_gcd(0);
        for (const auto& q : c_) {
            mpz_class n = q.num() * (den_lcm / q.den());
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        }
        return Rational(num_gcd, den_lcm);
    }

    Poly primitive_part() const {
        if (is_zero()) return Poly();
        return *this / content();
    }

    Poly pow(int e) const {
        if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
        Poly result = Poly::one();
        Poly base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base = (e >>= 1) ? base * base : base;
        }
        return result;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

namespace detail {

/// One sign-preserving pseudo-remainder step: returns a positive rational
/// multiple of rem(a, b), reduced to its primitive integer part. Inputs are
/// expected primitive-integer; then no fractions appear mid-division.
inline Poly positive_prem_primitive(const Poly& a, const Poly& b) {
    const int delta = a.degree_nonzero() - b.degree_nonzero();
    Rational m = b.leading_coefficient().abs().pow(delta + 1);
    Poly r = divrem(a * m, b).second;
    if (r.is_zero()) return r;
    return r.primitive_part();
}

}  // namespace detail

/// Monic gcd computed by a content-stripped polynomial remainder sequence
/// (each pseudo-remainder is reduced to its primitive integer part, which
/// keeps coefficient growth linear instead of exponential).
inline Poly gcd(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw std::invalid_argument("Poly gcd: both inputs are zero");
    if (f.is_zero()) return g.monic();
    if (g.is_zero()) return f.monic();
    Poly a = f.primitive_part();
    Poly b = g.primitive_part();
    if (a.degree_nonzero() < b.degree_nonzero()) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.is_constant()) return Poly::one();
        Poly r = detail::positive_prem_primitive(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline bool is_squarefree(const Poly& p) {
    if (p.is_zero()) return false;
    if (p.is_constant()) return true;
    return gcd(p, p.derivative()).is_constant();
}

/// Gcd-radical chain [f1, f2, ...]: f1 = p/gcd(p, p'), then the same applied
/// to gcd(p, p') recursively. Every element is monic and squarefree, each
/// divides its predecessor, and the product of all elements is monic(p)
/// (multiplicities become repeated later elements).
inline std::vector<Poly> squarefree_chain(const Poly& p) {
    if (p.is_zero() || p.is_constant())
        throw std::invalid_argument("squarefree_chain: input must have degree >= 1");
    std::vector<Poly> chain;
    Poly cur = p.monic();
    while (!cur.is_constant()) {
        const Poly g = gcd(cur, cur.derivative());
        auto [quot, rem] = divrem(cur, g);
        if (!rem.is_zero()) throw std::logic_error("squarefree_chain: inexact radical division");
        chain.push_back(quot.monic());
        cur = g;
    }
    return chain;
}

/// Cauchy bound M = 1 + max_i |a_i| / |a_d|; every real root lies in (-M, M].
inline Rational cauchy_bound(const Poly& p) {
    if (p.is_zero() || p.is_constant())
        throw std::invalid_argument("cauchy_bound: input must have degree >= 1");
    const Rational lead = p.leading_coefficient().abs();
    Rational best(0);
    for (int i = 0; i < p.degree_nonzero(); ++i) {
        Rational t = p.coefficient(i).abs() / lead;
        if (t > best) best = std::move(t);
    }
    return best + Rational(1);
}

/// Coefficient reversal x^d * p(1/x); requires p(0) != 0 so the degree is
/// preserved. This is the bridge between det(xJ - A) and det(J - xA).
inline Poly reciprocal(const Poly& p) {
    if (p.coefficient(0).is_zero())
        throw std::invalid_argument("reciprocal: p(0) = 0, the reciprocal form is unavailable");
    auto span = p.coefficients();
    std::vector<Rational> rev(span.rbegin(), span.rend());
    return Poly(std::move(rev));
}

/// Product of a list of polynomials via a balanced tree; keeps intermediate
/// degrees (and coefficient sizes) near-minimal.
inline Poly balanced_product(const std::vector<Poly>& factors) {
    if (factors.empty()) return Poly::one();
    std::vector<Poly> layer = factors;
    while (layer.size() > 1) {
        std::vector<Poly> next;
        next.reserve(layer.size() / 2 + 1);
        for (size_t i = 0; i + 1 < layer.size(); i += 2) next.push_back(layer[i] * layer[i + 1]);
        if (layer.size() % 2 == 1) next.push_back(layer.back());
        layer = std::move(next);
    }
    return layer.front();
}

}  // namespace detrep
