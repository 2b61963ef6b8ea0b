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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detrep/gaussian.hpp"
#include "detrep/poly.hpp"
#include "detrep/rational.hpp"
#include "detrep/sturm.hpp"

namespace detrep {

/// Diagonal entry lambda of the arrow matrix together with the squared border
/// entry h^2. Storing the square keeps every certified quantity rational; the
/// square root is only ever taken when a floating realization is requested.
struct RealNode {
    Rational lambda;
    Rational h_sq;

    friend bool operator==(const RealNode& a, const RealNode& b) {
        return a.lambda == b.lambda && a.h_sq == b.h_sq;
    }
};

/// One 2x2 rotation-like diagonal block [[mu, nu], [nu, -mu]] plus the squared
/// border pair: sq_re + I*sq_im = (k + I*l)^2 for the border entries (k, l).
/// Any rational pair (sq_re, sq_im) is realizable since every complex number
/// is a square.
struct ComplexNode {
    Rational mu;
    Rational nu;      // nonzero
    Rational sq_re;   // k^2 - l^2
    Rational sq_im;   // 2*k*l

    GaussianRational point() const { return GaussianRational(mu, nu); }
    GaussianRational square() const { return GaussianRational(sq_re, sq_im); }

    friend bool operator==(const ComplexNode& a, const ComplexNode& b) {
        return a.mu == b.mu && a.nu == b.nu && a.sq_re == b.sq_re && a.sq_im == b.sq_im;
    }
};

enum class BlockBranch { main, no_real };

/// Signature of a diagonal +-1 matrix: counts of +1 and -1 entries.
struct Signature {
    int plus = 0;
    int minus = 0;

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.plus == b.plus && a.minus == b.minus;
    }
    Signature swapped() const { return {minus, plus}; }
};

/// Squared data of one arrow block of the pencil x*J_b - A_b.
///
/// Layout of A_b: the 2x2 complex blocks, then the real diagonal entries,
/// then (no_real branch only) the special diagonal entry, then the corner e;
/// the border row/column carries the (k_j, l_j) pairs and the h_i.
/// J_b is diag(+1, -1) per complex block, +1 per real entry, -1 on the
/// special entry and +1 on the corner.
///
/// `negated` means the block stands for the pencil x*(-J_b) - (-A_b); its
/// determinant is (-1)^dim times the canonical one and its signature is
/// swapped. This is the exact form produced by the "multiply by -Id"
/// signature shift.
struct ArrowBlock {
    BlockBranch branch = BlockBranch::main;
    std::vector<ComplexNode> complex_nodes;
    std::vector<RealNode> real_nodes;        // main branch only
    std::optional<RealNode> special;         // engaged iff branch == no_real
    Rational tail_e;
    bool negated = false;

    int dimension() const {
        int d = 2 * static_cast<int>(complex_nodes.size()) + static_cast<int>(real_nodes.size()) + 1;
        if (branch == BlockBranch::no_real) d += 1;
        return d;
    }

    Signature signature() const {
        const int c = static_cast<int>(complex_nodes.size());
        Signature sig;
        if (branch == BlockBranch::main) {
            sig = {static_cast<int>(real_nodes.size()) + c + 1, c};
        } else {
            sig = {c + 1, c + 1};
        }
        return negated ? sig.swapped() : sig;
    }
};

/// Arrow-diagonal representation p(x) = scale * prod_b det(x*J_b - A_b).
struct Representation {
    std::vector<ArrowBlock> blocks;
    Rational scale{1};
    Signature declared_signature;

    int dimension() const {
        int d = 0;
        for (const auto& b : blocks) d += b.dimension();
        return d;
    }
};

/// Structural invariants of a block (node distinctness, nonzero nu,
/// nonnegative squared border entries, branch consistency).
inline void validate_block(const ArrowBlock& b) {
    if ((b.branch == BlockBranch::no_real) != b.special.has_value())
        throw std::invalid_argument("ArrowBlock: special node engaged iff branch is no_real");
    if (b.branch == BlockBranch::no_real && !b.real_nodes.empty())
        throw std::invalid_argument("ArrowBlock: no_real branch carries no real nodes");
    for (const auto& n : b.complex_nodes)
        if (n.nu.is_zero()) throw std::invalid_argument("ArrowBlock: complex node with nu = 0");
    for (const auto& n : b.real_nodes)
        if (n.h_sq.sign() < 0) throw std::invalid_argument("ArrowBlock: negative h^2");
    if (b.special && b.special->h_sq.sign() < 0)
        throw std::invalid_argument("ArrowBlock: negative special h^2");
    for (size_t i = 0; i < b.real_nodes.size(); ++i)
        for (size_t j = i + 1; j < b.real_nodes.size(); ++j)
            if (b.real_nodes[i].lambda == b.real_nodes[j].lambda)
                throw std::invalid_argument("ArrowBlock: coincident real nodes");
    for (size_t i = 0; i < b.complex_nodes.size(); ++i)
        for (size_t j = i + 1; j < b.complex_nodes.size(); ++j)
            if (b.complex_nodes[i].mu == b.complex_nodes[j].mu &&
                b.complex_nodes[i].nu.abs() == b.complex_nodes[j].nu.abs())
                throw std::invalid_argument("ArrowBlock: coincident complex nodes");
}

inline void validate_representation(const Representation& rep) {
    if (rep.scale.is_zero()) throw std::invalid_argument("Representation: zero scale");
    Signature total;
    for (const auto& b : rep.blocks) {
        validate_block(b);
        const Signature s = b.signature();
        total.plus += s.plus;
        total.minus += s.minus;
    }
    if (!(total == rep.declared_signature))
        throw std::invalid_argument("Representation: declared signature does not match blocks");
}

/// Rescales p so its leading coefficient becomes (-1)^s_total:
/// returns (p_norm, scale) with p = scale * p_norm and
/// scale = lc(p) * (-1)^s_total.
inline std::pair<Poly, Rational> normalize_target(const Poly& p, int s_total) {
    if (p.is_zero() || p.is_constant())
        throw std::invalid_argument("normalize_target: input must have degree >= 1");
    Rational scale = p.leading_coefficient();
    if (s_total % 2 != 0) scale = -scale;
    return {p / scale, scale};
}

namespace detail {

/// v(x) = prod_j -((x - mu_j)^2 + nu_j^2) over the given complex nodes.
inline Poly complex_node_product(const std::vector<std::pair<Rational, Rational>>& nodes) {
    std::vector<Poly> factors;
    factors.reserve(nodes.size());
    const Poly x = Poly::x();
    for (const auto& [mu, nu] : nodes) {
        const Poly shifted = x - Poly(mu);
        factors.push_back(-(shifted * shifted + Poly(nu * nu)));
    }
    return balanced_product(factors);
}

inline Poly real_node_product(const std::vector<Rational>& lambdas) {
    std::vector<Poly> factors;
    factors.reserve(lambdas.size());
    for (const auto& l : lambdas) factors.push_back(Poly::x() - Poly(l));
    return balanced_product(factors);
}

inline Poly exact_quotient(const Poly& a, const Poly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw std::logic_error("exact_quotient: division was not exact");
    return q;
}

/// Trace condition: e such that the x^(d-1) coefficient of the expansion
/// matches the target. That coefficient equals -(-1)^s * tr(J*A) and
/// tr(J*A) = e + sum lambda_i + sum 2 mu_j - special_diag_entry (the special
/// slot sits under a -1 of J).
inline Rational solve_tail_from_trace(const Poly& target, int s,
                                      const std::vector<Rational>& lambdas,
                                      const std::vector<Rational>& mus,
                                      const Rational& special_diag_entry = Rational(0)) {
    const int d = target.degree_nonzero();
    Rational lhs = target.coefficient(d - 1);
    if (s % 2 != 0) lhs = -lhs;
    Rational e = -lhs;
    for (const auto& l : lambdas) e -= l;
    for (const auto& m : mus) e -= Rational(2) * m;
    e += special_diag_entry;
    return e;
}

}  // namespace detail

/// Builds the arrow block for a squarefree factor f with r >= 1 real roots,
/// normalized so lc(f) = (-1)^s where s = nodes_complex.size().
/// nodes_real are the r-1 interlacing nodes; nodes_complex the s free points
/// (mu_j, nu_j) with nu_j != 0. The squared data come out of exact
/// interpolation:
///   h_i^2            = -f(lambda_i) / (v(lambda_i) * u_i(lambda_i))
///   sq_re + I*sq_im  =  f(mu_j + I*nu_j) / (I*nu_j * u(z_j) * v_j(z_j))
/// and e is solved from the x^(d-1) coefficient.
inline ArrowBlock build_block_main(const Poly& f, const std::vector<Rational>& nodes_real,
                                   const std::vector<std::pair<Rational, Rational>>& nodes_complex) {
    const int s = static_cast<int>(nodes_complex.size());
    const int r = static_cast<int>(nodes_real.size()) + 1;
    if (f.is_zero() || f.degree_nonzero() != r + 2 * s)
        throw std::invalid_argument("build_block_main: degree does not match r + 2s");
    {
        const Rational want = (s % 2 == 0) ? Rational(1) : Rational(-1);
        if (f.leading_coefficient() != want)
            throw std::invalid_argument("build_block_main: leading coefficient must be (-1)^s");
    }
    for (const auto& [mu, nu] : nodes_complex)
        if (nu.is_zero()) throw std::invalid_argument("build_block_main: nu = 0");

    const Poly u = detail::real_node_product(nodes_real);
    const Poly v = detail::complex_node_product(nodes_complex);

    ArrowBlock block;
    block.branch = BlockBranch::main;
    block.real_nodes.reserve(nodes_real.size());
    for (size_t i = 0; i < nodes_real.size(); ++i) {
        const Rational& lambda = nodes_real[i];
        const Poly u_i = detail::exact_quotient(u, Poly::x() - Poly(lambda));
        const Rational denom = v.eval(lambda) * u_i.eval(lambda);
        if (denom.is_zero()) throw std::invalid_argument("build_block_main: coincident nodes");
        const Rational h_sq = -f.eval(lambda) / denom;
        if (h_sq.sign() < 0)
            throw std::invalid_argument(
                "build_block_main: negative h^2 at node " + lambda.to_string() +
                " (nodes do not interlace the real roots)");
        block.real_nodes.push_back({lambda, h_sq});
    }
    block.complex_nodes.reserve(nodes_complex.size());
    for (size_t j = 0; j < nodes_complex.size(); ++j) {
        const auto& [mu, nu] = nodes_complex[j];
        const GaussianRational z(mu, nu);
        const Poly vj = detail::exact_quotient(
            v, -( (Poly::x() - Poly(mu)) * (Poly::x() - Poly(mu)) + Poly(nu * nu)));
        const GaussianRational denom =
            GaussianRational(Rational(0), nu) * u.eval(z) * vj.eval(z);
        if (denom.is_zero()) throw std::invalid_argument("build_block_main: coincident complex nodes");
        const GaussianRational square = f.eval(z) / denom;
        block.complex_nodes.push_back({mu, nu, square.re, square.im});
    }

    std::vector<Rational> mus;
    for (const auto& [mu, nu] : nodes_complex) mus.push_back(mu);
    block.tail_e = detail::solve_tail_from_trace(f, s, nodes_real, mus);
    return block;
}

/// Builds the block for a factor with no claimed real roots (degree 2s,
/// lc = (-1)^s, s = nodes_complex.size() + 1). `special_node` is the
/// interpolation point sigma; the stored special diagonal entry is -sigma
/// (its J entry is -1, so the pencil carries -x + sigma there) and
///   h^2 = -f(sigma) / v(sigma),
/// which the caller must have arranged to be >= 0 by choosing sigma.
inline ArrowBlock build_block_no_real(const Poly& f,
                                      const std::vector<std::pair<Rational, Rational>>& nodes_complex,
                                      const Rational& special_node) {
    const int s = static_cast<int>(nodes_complex.size()) + 1;
    if (f.is_zero() || f.degree_nonzero() != 2 * s)
        throw std::invalid_argument("build_block_no_real: degree does not match 2s");
    {
        const Rational want = (s % 2 == 0) ? Rational(1) : Rational(-1);
        if (f.leading_coefficient() != want)
            throw std::invalid_argument("build_block_no_real: leading coefficient must be (-1)^s");
    }
    const Poly v = detail::complex_node_product(nodes_complex);
    const Rational h_sq = -f.eval(special_node) / v.eval(special_node);
    if (h_sq.sign() < 0)
        throw std::invalid_argument(
            "build_block_no_real: negative h^2 for special node " + special_node.to_string());

    ArrowBlock block;
    block.branch = BlockBranch::no_real;
    block.special = RealNode{-special_node, h_sq};
    block.complex_nodes.reserve(nodes_complex.size());
    for (size_t j = 0; j < nodes_complex.size(); ++j) {
        const auto& [mu, nu] = nodes_complex[j];
        const GaussianRational z(mu, nu);
        const Poly vj = detail::exact_quotient(
            v, -((Poly::x() - Poly(mu)) * (Poly::x() - Poly(mu)) + Poly(nu * nu)));
        const GaussianRational denom = GaussianRational(Rational(0), nu) *
                                       (GaussianRational(special_node) - z) * vj.eval(z);
        if (denom.is_zero()) throw std::invalid_argument("build_block_no_real: coincident complex nodes");
        const GaussianRational square = f.eval(z) / denom;
        block.complex_nodes.push_back({mu, nu, square.re, square.im});
    }

    std::vector<Rational> mus;
    for (const auto& [mu, nu] : nodes_complex) mus.push_back(mu);
    // The special entry sits under a -1 of J, so it enters the trace with the
    // opposite sign of a real node.
    block.tail_e = detail::solve_tail_from_trace(f, s, {}, mus, /*special*/ -special_node);
    return block;
}

namespace detail {

/// Default free complex points: mu = 0 and nu = 1, 2, 3, ... skipping any
/// value that lands on a root of the target (a collision would interpolate a
/// zero square and, when the colliding factor also divides v, degrade the
/// node count; skipping keeps the construction uniform).
inline std::vector<std::pair<Rational, Rational>> default_complex_nodes(const Poly& target, int count) {
    std::vector<std::pair<Rational, Rational>> nodes;
    long nu = 0;
    while (static_cast<int>(nodes.size()) < count) {
        ++nu;
        const GaussianRational z(Rational(0), Rational(nu));
        if (target.eval(z).is_zero()) continue;
        nodes.emplace_back(Rational(0), Rational(nu));
    }
    return nodes;
}

/// Deterministic special-node candidates: 0, +-1, +-1/2, +-2, +-1/4, +-4, ...
/// (alternating halving and doubling); beyond 64 candidates the magnitude
/// keeps doubling.
inline Rational special_node_candidate(int n) {
    if (n == 0) return Rational(0);
    const int m = (n - 1) / 2;
    const bool negative = ((n - 1) % 2) != 0;
    Rational mag;
    if (m < 32) {
        mag = (m % 2 == 1) ? Rational(1, 2).pow((m + 1) / 2) : Rational(2).pow(m / 2);
    } else {
        mag = Rational(2).pow(m - 16);
    }
    return negative ? -mag : mag;
}

/// First candidate sigma whose interpolated h^2 = -f(sigma)/v(sigma) is
/// nonnegative. Exists because f has constant-sign leading behaviour, so the
/// condition holds for all large |sigma| of one sign.
inline Rational search_special_node(const Poly& f, const Poly& v) {
    for (int n = 0; n < 400; ++n) {
        const Rational sigma = special_node_candidate(n);
        const Rational h_sq = -f.eval(sigma) / v.eval(sigma);
        if (h_sq.sign() >= 0) return sigma;
    }
    throw std::runtime_error("search_special_node: no admissible special node within budget");
}

}  // namespace detail

/// The full construction: squarefree chain, per-factor root isolation and
/// interlacing nodes, default complex points, exact interpolation. Returns a
/// representation with p(x) = scale * prod_b det(x*J_b - A_b), of signature
/// (r + s, s) where r counts the real roots of p with multiplicity.
/// Deterministic: identical input produces an identical representation.
inline Representation represent(const Poly& p) {
    if (p.is_zero() || p.is_constant())
        throw std::invalid_argument("represent: input must have degree >= 1");

    Representation rep;
    rep.scale = p.leading_coefficient();
    for (const Poly& f : squarefree_chain(p)) {
        const int d = f.degree_nonzero();
        const int r = count_real_roots(f);
        const int s = (d - r) / 2;
        const Poly target = (s % 2 == 0) ? f : -f;
        if (s % 2 != 0) rep.scale = -rep.scale;

        ArrowBlock block;
        if (r >= 1) {
            const auto intervals = isolate_real_roots(f);
            const auto nodes = select_interlacing_nodes(intervals);
            const auto complex_nodes = detail::default_complex_nodes(target, s);
            block = build_block_main(target, nodes, complex_nodes);
        } else {
            const auto complex_nodes = detail::default_complex_nodes(target, s - 1);
            const Poly v = detail::complex_node_product(complex_nodes);
            const Rational sigma = detail::search_special_node(target, v);
            block = build_block_no_real(target, complex_nodes, sigma);
        }
        const Signature bs = block.signature();
        rep.declared_signature.plus += bs.plus;
        rep.declared_signature.minus += bs.minus;
        rep.blocks.push_back(std::move(block));
    }
    return rep;
}

/// The affine form p(x) = scale * prod_b det(J_b - x*A_b), available whenever
/// p(0) != 0: it is the pencil form of the reciprocal polynomial, with the
/// same scale.
inline Representation represent_affine(const Poly& p) {
    return represent(reciprocal(p));
}

}  // namespace detrep
