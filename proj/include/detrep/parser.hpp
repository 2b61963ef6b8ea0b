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

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "detrep/poly.hpp"

namespace detrep {

/// Syntax error with the byte offset of the offending character.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, size_t offset)
        : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    size_t offset() const { return offset_; }

private:
    size_t offset_;
};

namespace detail {

// Grammar (single variable x, whitespace insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' nat)?
//   primary := number | 'x' | '(' expr ')'
//   number  := digits ('/' digits | '.' digits)?
// Exponents are nonnegative integer literals, capped to keep dense storage
// sane under fuzzing. Nesting depth is capped for the same reason.
class PolyParser {
public:
    static constexpr int kMaxExponent = 4096;
    static constexpr int kMaxDepth = 256;

    explicit PolyParser(std::string_view text) : text_(text) {}

    Poly parse() {
        Poly p = expr(0);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly expr(int depth) {
        Poly acc = term(depth);
        for (;;) {
            skip_ws();
            if (accept('+')) acc += term(depth);
            else if (accept('-')) acc -= term(depth);
            else return acc;
        }
    }

    Poly term(int depth) {
        Poly acc = unary(depth);
        for (;;) {
            skip_ws();
            if (accept('*')) acc *= unary(depth);
            else return acc;
        }
    }

    Poly unary(int depth) {
        skip_ws();
        if (accept('-')) return -unary(depth);
        if (accept('+')) return unary(depth);
        return power(depth);
    }

    Poly power(int depth) {
        Poly base = primary(depth);
        skip_ws();
        if (!accept('^')) return base;
        skip_ws();
        if (peek() == '-') fail("negative exponent");
        if (!std::isdigit(peek())) fail("exponent must be a nonnegative integer literal");
        long e = 0;
        while (std::isdigit(peek())) {
            e = e * 10 + (next() - '0');
            if (e > kMaxExponent) fail("exponent too large");
        }
        return base.pow(static_cast<int>(e));
    }

    Poly primary(int depth) {
        skip_ws();
        if (depth >= kMaxDepth) fail("expression nested too deeply");
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Poly inner = expr(depth + 1);
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'x') {
            ++pos_;
            return Poly::x();
        }
        if (std::isdigit(c)) return Poly(number());
        if (std::isalpha(c)) fail("only the variable x is supported");
        fail(pos_ == text_.size() ? "unexpected end of input" : "unexpected character");
    }

    Rational number() {
        const size_t start = pos_;
        while (std::isdigit(peek())) ++pos_;
        if (peek() == '/') {
            ++pos_;
            const size_t den_start = pos_;
            while (std::isdigit(peek())) ++pos_;
            if (den_start == pos_) fail("expected denominator digits");
            mpz_class num(std::string(text_.substr(start, den_start - 1 - start)), 10);
            mpz_class den(std::string(text_.substr(den_start, pos_ - den_start)), 10);
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        if (peek() == '.') {
            ++pos_;
            const size_t frac_start = pos_;
            while (std::isdigit(peek())) ++pos_;
            if (frac_start == pos_) fail("expected digits after decimal point");
            // Decimal literals convert exactly: a.b -> (a*10^k + b) / 10^k.
            mpz_class ipart(std::string(text_.substr(start, frac_start - 1 - start)), 10);
            const std::string frac(text_.substr(frac_start, pos_ - frac_start));
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            mpz_class fpart(frac, 10);
            return Rational(ipart * scale + fpart, scale);
        }
        return Rational(mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)), 10)));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char next() { return text_[pos_++]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    std::string_view text_;
    size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial expression in x into an exact Poly.
/// Throws ParseError (never crashes) on malformed input.
inline Poly parse_poly(std::string_view src) { return detail::PolyParser(src).parse(); }

/// Canonical descending-degree form, e.g. "x^3 - x" or "1/2*x^2 - 3".
/// parse_poly(serialize_poly(p)) == p for every p.
inline std::string serialize_poly(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree_nonzero(); k >= 0; --k) {
        const Rational& c = p.coefficient(k);
        if (c.is_zero()) continue;
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        const Rational mag = c.abs();
        const bool unit = mag == Rational(1);
        if (k == 0) {
            out += mag.to_string();
        } else {
            if (!unit) out += mag.to_string() + "*";
            out += (k == 1) ? "x" : "x^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace detrep
