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

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <mpfr.h>

#include "detrep/certify.hpp"
#include "detrep/poly.hpp"
#include "detrep/represent.hpp"
#include "detrep/sturm.hpp"

namespace detrep {

/// Binary floating-point number of configurable precision (MPFR-backed,
/// round-to-nearest). Binary operations carry the larger operand precision.
class BigFloat {
public:
    explicit BigFloat(long precision_bits = 64) {
        mpfr_init2(v_, clamp(precision_bits));
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const Rational& q, long precision_bits) {
        mpfr_init2(v_, clamp(precision_bits));
        mpfr_set_q(v_, q.raw().get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    long precision() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string() const {
        // Enough decimal digits to round-trip the precision.
        const long digits = static_cast<long>(static_cast<double>(precision()) * 0.30103) + 3;
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    BigFloat abs() const {
        BigFloat r(precision());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    /// Nonnegative square root; throws on negative input.
    BigFloat sqrt() const {
        if (sign() < 0) throw std::domain_error("BigFloat::sqrt: negative input");
        BigFloat r(precision());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

private:
    static mpfr_prec_t clamp(long bits) {
        if (bits < MPFR_PREC_MIN) return MPFR_PREC_MIN;
        return static_cast<mpfr_prec_t>(bits);
    }
    mpfr_t v_;
};

/// Which exact datum a realized matrix entry was rounded from.
enum class DatumKind { lambda, tail_e, mu, nu, sqrt_h_sq, sqrt_square_re, sqrt_square_im };

inline std::string to_string(DatumKind k) {
    switch (k) {
        case DatumKind::lambda: return "lambda";
        case DatumKind::tail_e: return "e";
        case DatumKind::mu: return "mu";
        case DatumKind::nu: return "nu";
        case DatumKind::sqrt_h_sq: return "sqrt(h_sq)";
        case DatumKind::sqrt_square_re: return "Re(sqrt(square))";
        case DatumKind::sqrt_square_im: return "Im(sqrt(square))";
    }
    return "unknown";
}

/// Source pointer for one matrix entry: block index, datum kind, node index
/// within the block (-1 for the special node and for e).
struct Provenance {
    int block = 0;
    DatumKind kind = DatumKind::tail_e;
    int index = -1;

    std::string to_string() const {
        return "block " + std::to_string(block) + " " + detrep::to_string(kind) +
               (index >= 0 ? " #" + std::to_string(index) : "");
    }
};

/// Floating realization of a representation: symmetric A with the
/// arrow-diagonal sparsity pattern, the +-1 diagonal of J, and per-entry
/// provenance. Off-pattern entries are exact zeros.
struct NumericRealization {
    int dimension = 0;
    long precision_bits = 64;
    std::vector<int> j_diag;
    std::vector<std::vector<BigFloat>> a;
    std::map<std::pair<int, int>, Provenance> provenance;
};

namespace detail {

/// Principal square root of sq_re + I*sq_im: Re >= 0, and Im >= 0 when
/// Re = 0. Any branch realizes the same squared data; fixing one keeps
/// realizations reproducible.
inline std::pair<BigFloat, BigFloat> principal_complex_sqrt(const Rational& sq_re,
                                                            const Rational& sq_im, long bits) {
    const BigFloat a(sq_re, bits);
    const BigFloat b(sq_im, bits);
    const BigFloat mod = (a * a + b * b).sqrt();
    BigFloat re = ((mod + a) / BigFloat(Rational(2), bits)).sqrt();
    BigFloat im = ((mod - a) / BigFloat(Rational(2), bits)).sqrt();
    if (sq_im.sign() < 0) im = -im;
    if (re.is_zero() && im.sign() < 0) im = -im;
    return {std::move(re), std::move(im)};
}

}  // namespace detail

/// Converts certified squared data to a floating symmetric matrix pair
/// (A, J): h_i is the nonnegative root of h_i^2 and the complex border pair
/// is the principal root of the stored square. Negated blocks realize
/// (-A_b, -J_b). Throws on corrupt input (negative squares).
inline NumericRealization realize_numeric(const Representation& rep, long precision_bits = 64) {
    NumericRealization out;
    out.dimension = rep.dimension();
    out.precision_bits = precision_bits;
    out.j_diag.assign(static_cast<size_t>(out.dimension), 1);
    out.a.assign(static_cast<size_t>(out.dimension),
                 std::vector<BigFloat>(static_cast<size_t>(out.dimension), BigFloat(precision_bits)));

    int base = 0;
    for (size_t bi = 0; bi < rep.blocks.size(); ++bi) {
        const ArrowBlock& b = rep.blocks[bi];
        const int dim = b.dimension();
        const int corner = base + dim - 1;
        const int flip = b.negated ? -1 : 1;
        const Rational rflip(static_cast<long>(flip));
        auto set = [&](int i, int j, const BigFloat& val, DatumKind kind, int index) {
            out.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = val;
            out.a[static_cast<size_t>(j)][static_cast<size_t>(i)] = val;
            out.provenance[{i, j}] = Provenance{static_cast<int>(bi), kind, index};
            if (i != j) out.provenance[{j, i}] = Provenance{static_cast<int>(bi), kind, index};
        };

        int row = base;
        for (size_t j = 0; j < b.complex_nodes.size(); ++j) {
            const ComplexNode& n = b.complex_nodes[j];
            out.j_diag[static_cast<size_t>(row)] = flip;
            out.j_diag[static_cast<size_t>(row) + 1] = -flip;
            set(row, row, BigFloat(rflip * n.mu, precision_bits), DatumKind::mu, static_cast<int>(j));
            set(row + 1, row + 1, BigFloat(rflip * -n.mu, precision_bits), DatumKind::mu, static_cast<int>(j));
            set(row, row + 1, BigFloat(rflip * n.nu, precision_bits), DatumKind::nu, static_cast<int>(j));
            auto [k, l] = detail::principal_complex_sqrt(n.sq_re, n.sq_im, precision_bits);
            if (b.negated) {
                k = -k;
                l = -l;
            }
            set(row, corner, k, DatumKind::sqrt_square_re, static_cast<int>(j));
            set(row + 1, corner, l, DatumKind::sqrt_square_im, static_cast<int>(j));
            row += 2;
        }
        for (size_t i = 0; i < b.real_nodes.size(); ++i) {
            const RealNode& n = b.real_nodes[i];
            if (n.h_sq.sign() < 0) throw std::invalid_argument("realize_numeric: negative h^2");
            out.j_diag[static_cast<size_t>(row)] = flip;
            set(row, row, BigFloat(rflip * n.lambda, precision_bits), DatumKind::lambda, static_cast<int>(i));
            BigFloat h = BigFloat(n.h_sq, precision_bits).sqrt();
            if (b.negated) h = -h;
            set(row, corner, h, DatumKind::sqrt_h_sq, static_cast<int>(i));
            ++row;
        }
        if (b.special) {
            if (b.special->h_sq.sign() < 0) throw std::invalid_argument("realize_numeric: negative h^2");
            out.j_diag[static_cast<size_t>(row)] = -flip;
            set(row, row, BigFloat(rflip * b.special->lambda, precision_bits), DatumKind::lambda, -1);
            BigFloat h = BigFloat(b.special->h_sq, precision_bits).sqrt();
            if (b.negated) h = -h;
            set(row, corner, h, DatumKind::sqrt_h_sq, -1);
            ++row;
        }
        out.j_diag[static_cast<size_t>(corner)] = flip;
        set(corner, corner, BigFloat(rflip * b.tail_e, precision_bits), DatumKind::tail_e, -1);
        base += dim;
    }
    return out;
}

/// Determinant by LU with partial pivoting at the matrix's own precision.
inline BigFloat numeric_det(std::vector<std::vector<BigFloat>> m, long precision_bits) {
    const size_t n = m.size();
    BigFloat det(Rational(1), precision_bits);
    for (size_t k = 0; k < n; ++k) {
        size_t pivot = k;
        for (size_t i = k + 1; i < n; ++i)
            if (m[i][k].abs() > m[pivot][k].abs()) pivot = i;
        if (m[pivot][k].is_zero()) return BigFloat(precision_bits);  // singular
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            det = -det;
        }
        det = det * m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            const BigFloat factor = m[i][k] / m[k][k];
            for (size_t j = k; j < n; ++j) m[i][j] = m[i][j] - factor * m[k][j];
        }
    }
    return det;
}

/// Max over the samples of |det(xJ - A) - p(x)/scale| / (1 + |p(x)/scale|),
/// the numeric determinant evaluated at the realization precision.
inline BigFloat residual_check(const NumericRealization& real, const Poly& p, const Rational& scale,
                               const std::vector<Rational>& sample_points) {
    if (sample_points.empty()) throw std::invalid_argument("residual_check: empty sample set");
    const long bits = real.precision_bits;
    BigFloat worst(bits);
    for (const Rational& x : sample_points) {
        std::vector<std::vector<BigFloat>> m = real.a;
        const size_t n = m.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m[i][j] = -m[i][j];
        const BigFloat xf(x, bits);
        for (size_t i = 0; i < n; ++i) {
            const BigFloat jx = (real.j_diag[i] == 1) ? xf : -xf;
            m[i][i] = m[i][i] + jx;
        }
        const BigFloat det = numeric_det(std::move(m), bits);
        const BigFloat expect(p.eval(x) / scale, bits);
        const BigFloat residual = (det - expect).abs() / (BigFloat(Rational(1), bits) + expect.abs());
        if (worst < residual) worst = residual;
    }
    return worst;
}

using QMatrix = std::vector<std::vector<Rational>>;

/// Adjoint with respect to the bilinear form of the signature matrix J:
/// J * B^T * J. An involution; reduces to plain transposition when J = Id.
inline QMatrix adjoint_wrt_J(const QMatrix& b, const std::vector<int>& j_diag) {
    const size_t n = j_diag.size();
    if (b.size() != n) throw std::invalid_argument("adjoint_wrt_J: dimension mismatch");
    for (const auto& row : b)
        if (row.size() != n) throw std::invalid_argument("adjoint_wrt_J: matrix is not square");
    QMatrix out(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            out[i][j] = Rational(j_diag[i]) * b[j][i] * Rational(j_diag[j]);
    return out;
}

/// Exact symmetric pencil (J, A) with rational entries.
struct Pencil {
    std::vector<int> j_diag;
    QMatrix a;

    int dimension() const { return static_cast<int>(j_diag.size()); }
};

/// det(x*J - A) computed exactly by fraction-free Bareiss elimination over
/// polynomial entries (exact divisions asserted), with row pivoting.
inline Poly pencil_char_poly(const Pencil& pencil) {
    const size_t n = pencil.j_diag.size();
    if (pencil.a.size() != n) throw std::invalid_argument("pencil_char_poly: dimension mismatch");
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i) {
        if (pencil.a[i].size() != n) throw std::invalid_argument("pencil_char_poly: matrix is not square");
        for (size_t j = 0; j < n; ++j) {
            m[i][j] = -Poly(pencil.a[i][j]);
            if (i == j) m[i][j] += Poly::monomial(1, Rational(pencil.j_diag[i]));
        }
    }
    int sign = 1;
    Poly prev = Poly::one();
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k;
            for (size_t i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row == k) return Poly();  // zero column: singular pencil
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = detail::exact_quotient(num, prev);
            }
            m[i][k] = Poly();
        }
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

struct EigenCountCheck {
    int r_claimed = 0;  // p_plus - p_minus
    int r_found = 0;    // real roots of det(xJ - A), with multiplicity
    bool pass = false;  // r_found >= r_claimed
};

/// Lower bound on real eigenvalues of a J-self-adjoint pencil: the pencil
/// determinant of signature (p_plus, p_minus) must have at least
/// p_plus - p_minus real roots counted with multiplicity.
inline EigenCountCheck real_eigen_count_lower_bound_check(const Pencil& pencil) {
    EigenCountCheck out;
    for (int j : pencil.j_diag) out.r_claimed += (j == 1) ? 1 : -1;
    const Poly det = pencil_char_poly(pencil);
    if (det.is_zero()) throw std::invalid_argument("real_eigen_count_lower_bound_check: singular pencil");
    out.r_found = det.is_constant() ? 0 : count_real_roots_with_multiplicity(det);
    out.pass = out.r_found >= out.r_claimed;
    return out;
}

/// Same check on a certified representation; the determinant is taken from
/// the certified closed-form expansion (exact), so r_found equals the real
/// root count of p itself.
inline EigenCountCheck real_eigen_count_lower_bound_check(const Representation& rep) {
    EigenCountCheck out;
    out.r_claimed = rep.declared_signature.plus - rep.declared_signature.minus;
    const Poly det = reconstruct(rep) / rep.scale;
    out.r_found = det.is_constant() ? 0 : count_real_roots_with_multiplicity(det);
    out.pass = out.r_found >= out.r_claimed;
    return out;
}

}  // namespace detrep
