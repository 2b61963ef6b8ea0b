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

#include <ostream>
#include <stdexcept>
#include <string>

#include "detrep/rational.hpp"

namespace detrep {

/// Exact complex rational a + b*I with I^2 = -1.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    GaussianRational conj() const { return GaussianRational(re, -im); }
    Rational norm() const { return re * re + im * im; }  // |z|^2

    GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        const Rational n = o.norm();
        GaussianRational t = *this;
        t *= o.conj();
        re = t.re / n;
        im = t.im / n;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { a += b; return a; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { a -= b; return a; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { a *= b; return a; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { a /= b; return a; }
    friend GaussianRational operator-(const GaussianRational& a) { return GaussianRational(-a.re, -a.im); }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    std::string to_string() const { return re.to_string() + (im.sign() < 0 ? " - " : " + ") + im.abs().to_string() + "*I"; }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }
};

}  // namespace detrep
