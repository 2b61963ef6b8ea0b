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

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace detrep {

/// Exact rational number. Always kept in canonical form: reduced to lowest
/// terms, denominator > 0, zero is 0/1. Backed by GMP.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long num, long den) : v_(num, den) { canonicalize_checked(); }
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) { canonicalize_checked(); }
    explicit Rational(mpq_class q) : v_(std::move(q)) { canonicalize_checked(); }

    /// Parses "a/b" or "a" with optional leading sign. Throws std::invalid_argument.
    static Rational from_string(std::string_view s) {
        const auto slash = s.find('/');
        try {
            if (slash == std::string_view::npos) {
                mpz_class n(std::string(s), 10);
                return Rational(mpq_class(n));
            }
            mpz_class n(std::string(s.substr(0, slash)), 10);
            mpz_class d(std::string(s.substr(slash + 1)), 10);
            return Rational(n, d);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational::from_string: malformed input '" + std::string(s) + "'");
        }
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const { return Rational(mpq_class(::abs(v_)), already_canonical{}); }
    Rational negated() const { return Rational(mpq_class(-v_), already_canonical{}); }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        mpq_class r(v_.get_den(), v_.get_num());
        r.canonicalize();  // fixes the sign of the denominator
        return Rational(std::move(r), already_canonical{});
    }

    /// Integer power; negative exponents invert (zero base then throws).
    Rational pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        mpq_class r;
        mpz_pow_ui(r.get_num().get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
        mpz_pow_ui(r.get_den().get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
        return Rational(std::move(r), already_canonical{});
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return a.negated(); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    /// "a" for integers, "a/b" otherwise.
    std::string to_string() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    /// Always "a/b", including a unit denominator ("-1/1").
    std::string to_fraction_string() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}

    void canonicalize_checked() {
        if (v_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }

    mpq_class v_;
};

}  // namespace detrep
