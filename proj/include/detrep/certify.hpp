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

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "detrep/poly.hpp"
#include "detrep/represent.hpp"

namespace detrep {

/// Closed-form expansion of det(x*J_b - A_b) over the rationals. With
///   u(x)  = prod_i (x - lambda_i),          u_i = u / (x - lambda_i),
///   v(x)  = prod_j -((x - mu_j)^2 + nu_j^2), v_j = v / own factor,
/// the main branch expands to
///   q = (x - e) u v - v * sum_i h_i^2 u_i
///       - u * sum_j [-(x - mu_j) sq_re_j + nu_j sq_im_j] v_j
/// (the border identity (-x+mu) k^2 + 2 nu k l + (x-mu) l^2 =
/// -(x-mu)(k^2-l^2) + nu (2kl) reduces everything to the stored squares),
/// and the no_real branch, whose special diagonal entry delta sits under a
/// -1 of J, to
///   q = (-x - delta) (x - e) v
///       - (-x - delta) * sum_j [-(x - mu_j) sq_re_j + nu_j sq_im_j] v_j
///       - h^2 v.
/// A negated block contributes (-1)^dim times the canonical expansion.
inline Poly expand_block(const ArrowBlock& b) {
    const Poly x = Poly::x();
    std::vector<std::pair<Rational, Rational>> cpoints;
    cpoints.reserve(b.complex_nodes.size());
    for (const auto& n : b.complex_nodes) cpoints.emplace_back(n.mu, n.nu);
    const Poly v = detail::complex_node_product(cpoints);

    Poly border_complex;  // sum_j [-(x - mu_j) sq_re_j + nu_j sq_im_j] v_j
    for (const auto& n : b.complex_nodes) {
        const Poly factor = -((x - Poly(n.mu)) * (x - Poly(n.mu)) + Poly(n.nu * n.nu));
        const Poly vj = detail::exact_quotient(v, factor);
        border_complex += (-(x - Poly(n.mu)) * Poly(n.sq_re) + Poly(n.nu * n.sq_im)) * vj;
    }

    Poly q;
    if (b.branch == BlockBranch::main) {
        std::vector<Rational> lambdas;
        lambdas.reserve(b.real_nodes.size());
        for (const auto& n : b.real_nodes) lambdas.push_back(n.lambda);
        const Poly u = detail::real_node_product(lambdas);
        Poly border_real;  // sum_i h_i^2 u_i
        for (const auto& n : b.real_nodes) {
            const Poly ui = detail::exact_quotient(u, x - Poly(n.lambda));
            border_real += Poly(n.h_sq) * ui;
        }
        q = (x - Poly(b.tail_e)) * u * v - v * border_real - u * border_complex;
    } else {
        if (!b.special) throw std::invalid_argument("expand_block: no_real block without special node");
        const Poly w = -x - Poly(b.special->lambda);
        q = w * (x - Poly(b.tail_e)) * v - w * border_complex - Poly(b.special->h_sq) * v;
    }
    if (b.negated && b.dimension() % 2 != 0) q = -q;
    return q;
}

/// Independent oracle for the all-real arrow determinant (Schur cofactor
/// form): (x - d) * prod_i (x - lambda_i) - sum_i h_i k_i prod_{j != i} (x - lambda_j).
inline Poly expand_arrow_real(const std::vector<Rational>& lambdas, const std::vector<Rational>& h,
                              const std::vector<Rational>& k, const Rational& d) {
    if (lambdas.size() != h.size() || h.size() != k.size())
        throw std::invalid_argument("expand_arrow_real: length mismatch");
    const Poly x = Poly::x();
    const Poly u = detail::real_node_product(lambdas);
    Poly q = (x - Poly(d)) * u;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        const Poly ui = detail::exact_quotient(u, x - Poly(lambdas[i]));
        q -= Poly(h[i] * k[i]) * ui;
    }
    return q;
}

/// Scaled product of all block expansions; the polynomial the representation
/// stands for.
inline Poly reconstruct(const Representation& rep) {
    std::vector<Poly> expansions;
    expansions.reserve(rep.blocks.size());
    for (const auto& b : rep.blocks) expansions.push_back(expand_block(b));
    return rep.scale * balanced_product(expansions);
}

struct CertifyResult {
    bool ok = false;
    int first_mismatch_degree = -1;  // meaningful only when !ok
    Rational expected;               // coefficient of p
    Rational got;                    // coefficient of the reconstruction

    std::string diagnostic() const {
        if (ok) return "exact match";
        return "coefficient mismatch at degree " + std::to_string(first_mismatch_degree) +
               ": expected " + expected.to_string() + ", got " + got.to_string();
    }
};

/// Exact symbolic verification that p = scale * prod_b det(x*J_b - A_b),
/// coefficient by coefficient. Never throws on mismatch; the result carries
/// the first differing coefficient.
inline CertifyResult certify_representation(const Poly& p, const Representation& rep) {
    const Poly q = reconstruct(rep);
    const int dp = p.is_zero() ? -1 : p.degree_nonzero();
    const int dq = q.is_zero() ? -1 : q.degree_nonzero();
    for (int k = 0; k <= std::max(dp, dq); ++k) {
        if (p.coefficient(k) != q.coefficient(k))
            return {false, k, p.coefficient(k), q.coefficient(k)};
    }
    return {true, -1, Rational(0), Rational(0)};
}

}  // namespace detrep
