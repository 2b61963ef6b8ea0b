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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "detrep/certify.hpp"
#include "detrep/poly.hpp"
#include "detrep/represent.hpp"
#include "detrep/sturm.hpp"

namespace detrep {

enum class ShiftMethod { case_a, case_b_formula, case_c_formula, reinterpolation };

inline std::string to_string(ShiftMethod m) {
    switch (m) {
        case ShiftMethod::case_a: return "case_a";
        case ShiftMethod::case_b_formula: return "case_b_formula";
        case ShiftMethod::case_c_formula: return "case_c_formula";
        case ShiftMethod::reinterpolation: return "reinterpolation";
    }
    return "unknown";
}

struct ShiftReport {
    ShiftMethod method = ShiftMethod::reinterpolation;
    bool certified = false;
    std::optional<std::string> erratum_note;
};

/// Global multiplication by -Id: every block flips to its negated form and
/// the scale absorbs (-1)^d. The signature swaps, the certified polynomial
/// is unchanged. Applying it twice restores the original representation.
inline Representation negate_representation(Representation rep) {
    for (auto& b : rep.blocks) b.negated = !b.negated;
    if (rep.dimension() % 2 != 0) rep.scale = -rep.scale;
    rep.declared_signature = rep.declared_signature.swapped();
    return rep;
}

/// The r = 1 shift: p(x) = (-1)^d det(x(-J) - (-A)).
inline Representation shift_case_a(const Representation& rep) { return negate_representation(rep); }

inline int claimed_real_count(const ArrowBlock& b) {
    const Signature s = b.signature();
    return s.plus - s.minus;
}

inline int claimed_real_count(const Representation& rep) {
    return rep.declared_signature.plus - rep.declared_signature.minus;
}

/// Outcome of attempting the closed-form shift: either a certified
/// representation or a rejection diagnostic. Rejection is a value, not a
/// failure; the dispatcher falls back to re-interpolation.
struct FormulaOutcome {
    std::optional<Representation> rep;
    ShiftMethod method = ShiftMethod::reinterpolation;
    std::string diagnostic;
};

/// Applies the closed-form block rewrite on the first block whose claimed
/// real count is at least 2, then gates the result through the exact
/// certifier.
///
/// With r = 2 the lone real node moves under a -1 of J (diagonal entry
/// -lambda), h'^2 = h^2 and every complex square flips sign (the printed
/// substitution k' = l, l' = -k squares to -(k + Il)^2). With r >= 3 the two
/// smallest nodes are consumed, a fresh complex point is added, and the
/// retained squares are rescaled by the exact interpolation ratios; the
/// replacement block targets the negated expansion (one extra -1 in J flips
/// the leading coefficient), so every rescaled square stays nonnegative.
/// In both cases e' is recomputed from the x^(d-1) coefficient.
inline FormulaOutcome shift_formula(const Representation& rep) {
    int idx = -1;
    for (size_t i = 0; i < rep.blocks.size(); ++i) {
        if (claimed_real_count(rep.blocks[i]) >= 2) {
            idx = static_cast<int>(i);
            break;
        }
    }
    if (idx < 0) return {std::nullopt, ShiftMethod::reinterpolation, "no block with claimed r >= 2"};

    const ArrowBlock& old = rep.blocks[static_cast<size_t>(idx)];
    const Poly target_new = -expand_block(old);
    const int s_old = static_cast<int>(old.complex_nodes.size());
    const int s_new = s_old + 1;

    ArrowBlock nb;
    ShiftMethod method;
    std::vector<Rational> mus;
    for (const auto& c : old.complex_nodes) mus.push_back(c.mu);

    if (old.real_nodes.size() == 1) {
        method = ShiftMethod::case_b_formula;
        nb.branch = BlockBranch::no_real;
        nb.special = RealNode{-old.real_nodes[0].lambda, old.real_nodes[0].h_sq};
        for (const auto& c : old.complex_nodes)
            nb.complex_nodes.push_back({c.mu, c.nu, -c.sq_re, -c.sq_im});
        nb.tail_e = detail::solve_tail_from_trace(target_new, s_new, {}, mus, nb.special->lambda);
    } else {
        method = ShiftMethod::case_c_formula;
        std::vector<RealNode> sorted = old.real_nodes;
        std::sort(sorted.begin(), sorted.end(),
                  [](const RealNode& a, const RealNode& b) { return a.lambda < b.lambda; });
        const Rational l1 = sorted[0].lambda;
        const Rational l2 = sorted[1].lambda;

        // Fresh complex point (0, nu) with nu the smallest positive integer
        // distinct from the existing nodes.
        Rational nu_new(static_cast<long>(s_old) + 1);
        auto collides = [&](const Rational& nu) {
            for (const auto& c : old.complex_nodes)
                if (c.mu.is_zero() && c.nu.abs() == nu) return true;
            return false;
        };
        while (collides(nu_new)) nu_new += Rational(1);

        nb.branch = BlockBranch::main;
        std::vector<Rational> retained;
        for (size_t i = 2; i < sorted.size(); ++i) {
            const Rational& li = sorted[i].lambda;
            const Rational ratio = (li - l1) * (li - l2) / (li * li + nu_new * nu_new);
            nb.real_nodes.push_back({li, sorted[i].h_sq * ratio});
            retained.push_back(li);
        }
        for (const auto& c : old.complex_nodes) {
            const GaussianRational z = c.point();
            const GaussianRational ratio =
                (z - GaussianRational(l1)) * (z - GaussianRational(l2)) /
                (z * z + GaussianRational(nu_new * nu_new));
            const GaussianRational sq = c.square() * ratio;
            nb.complex_nodes.push_back({c.mu, c.nu, sq.re, sq.im});
        }
        const GaussianRational z_new(Rational(0), nu_new);
        const Poly u_new = detail::real_node_product(retained);
        std::vector<std::pair<Rational, Rational>> old_points;
        for (const auto& c : old.complex_nodes) old_points.emplace_back(c.mu, c.nu);
        const Poly v_old = detail::complex_node_product(old_points);
        const GaussianRational denom =
            GaussianRational(Rational(0), nu_new) * u_new.eval(z_new) * v_old.eval(z_new);
        const GaussianRational sq_new = target_new.eval(z_new) / denom;
        nb.complex_nodes.push_back({Rational(0), nu_new, sq_new.re, sq_new.im});

        mus.push_back(Rational(0));
        nb.tail_e = detail::solve_tail_from_trace(target_new, s_new, retained, mus);
    }

    Representation candidate = rep;
    candidate.blocks[static_cast<size_t>(idx)] = std::move(nb);
    candidate.scale = -candidate.scale;
    candidate.declared_signature.plus -= 1;
    candidate.declared_signature.minus += 1;

    const Poly p = reconstruct(rep);
    const CertifyResult cert = certify_representation(p, candidate);
    if (cert.ok) return {std::move(candidate), method, "closed form certified"};
    return {std::nullopt, method, to_string(method) + " failed certification: " + cert.diagnostic()};
}

/// Block construction for an arbitrary admissible per-factor signature
/// (plus, minus), plus + minus = deg f. Returns the block and the rational
/// gamma with f = gamma * det-expansion. Signatures with plus < minus are
/// built as the negated mirror.
struct BuiltBlock {
    ArrowBlock block;
    Rational gamma;
};

inline BuiltBlock build_block_for_signature(const Poly& f_monic, int plus, int minus) {
    const int d = f_monic.degree_nonzero();
    if (plus + minus != d || plus < 0 || minus < 0)
        throw std::invalid_argument("build_block_for_signature: signature does not fit the degree");
    if (plus < minus) {
        BuiltBlock mirror = build_block_for_signature(f_monic, minus, plus);
        mirror.block.negated = true;
        if (d % 2 != 0) mirror.gamma = -mirror.gamma;
        return mirror;
    }
    const int r_claim = plus - minus;
    const int s = minus;
    const Rational gamma = (s % 2 == 0) ? Rational(1) : Rational(-1);
    const Poly target = gamma * f_monic;

    if (r_claim == 0) {
        const auto cnodes = detail::default_complex_nodes(target, s - 1);
        const Poly v = detail::complex_node_product(cnodes);
        const Rational sigma = detail::search_special_node(target, v);
        return {build_block_no_real(target, cnodes, sigma), gamma};
    }

    const int real_count = count_real_roots(f_monic);
    if (real_count < r_claim)
        throw std::invalid_argument("build_block_for_signature: fewer real roots than claimed");
    const auto cnodes = detail::default_complex_nodes(target, s);
    const Poly v = detail::complex_node_product(cnodes);
    const auto boundaries = select_interlacing_nodes(isolate_real_roots(f_monic));
    const int pool = static_cast<int>(boundaries.size());  // real_count - 1 candidates
    const int m = r_claim - 1;

    // Lexicographic scan over m-subsets of the candidate nodes; the first
    // subset whose interpolated squares are all nonnegative wins. A feasible
    // subset appears early (the parity pattern of signs guarantees one), but
    // exhaustion is reported rather than assumed impossible.
    std::vector<int> comb(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) comb[static_cast<size_t>(i)] = i;
    long scanned = 0;
    constexpr long kScanBudget = 200000;
    for (;;) {
        ++scanned;
        bool feasible = true;
        for (int i = 0; i < m && feasible; ++i) {
            const Rational& li = boundaries[static_cast<size_t>(comb[static_cast<size_t>(i)])];
            Rational ui(1);
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                ui *= li - boundaries[static_cast<size_t>(comb[static_cast<size_t>(j)])];
            }
            const Rational h_sq = -target.eval(li) / (v.eval(li) * ui);
            if (h_sq.sign() < 0) feasible = false;
        }
        if (feasible) {
            std::vector<Rational> nodes;
            nodes.reserve(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i) nodes.push_back(boundaries[static_cast<size_t>(comb[static_cast<size_t>(i)])]);
            return {build_block_main(target, nodes, cnodes), gamma};
        }
        // next combination
        int i = m - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] == pool - m + i) --i;
        if (i < 0 || scanned >= kScanBudget)
            throw std::runtime_error(
                "build_block_for_signature: no sign-feasible node subset among " +
                std::to_string(scanned) + " scanned candidates");
        ++comb[static_cast<size_t>(i)];
        for (int j = i + 1; j < m; ++j) comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
    }
}

/// Rebuilds a representation of p at the requested total signature by
/// re-running the construction with a reduced real-node budget. The unit
/// signature decrements are absorbed by the earliest squarefree-chain blocks
/// that can take them (each block can move from its natural (R+s, s) down to
/// the mirror (s, R+s) in steps of (-1, +1)).
inline Representation shift_reinterpolate(const Poly& p, const Signature& target) {
    if (p.is_zero() || p.is_constant())
        throw std::invalid_argument("shift_reinterpolate: input must have degree >= 1");
    const int d = p.degree_nonzero();
    if (target.plus + target.minus != d)
        throw std::invalid_argument("shift_reinterpolate: signature does not fit the degree");

    const std::vector<Poly> chain = squarefree_chain(p);
    std::vector<int> plus_b, minus_b, smin_b;
    int natural_plus = 0;
    for (const Poly& f : chain) {
        const int df = f.degree_nonzero();
        const int rf = count_real_roots(f);
        plus_b.push_back(rf + (df - rf) / 2);
        minus_b.push_back((df - rf) / 2);
        smin_b.push_back((df - rf) / 2);
        natural_plus += plus_b.back();
    }
    int deficit = natural_plus - target.plus;
    if (deficit < 0)
        throw std::invalid_argument(
            "shift_reinterpolate: target exceeds the maximal signature (p has too few real roots)");
    for (size_t b = 0; b < chain.size() && deficit > 0; ++b) {
        const int capacity = plus_b[b] - smin_b[b];
        const int take = std::min(deficit, capacity);
        plus_b[b] -= take;
        minus_b[b] += take;
        deficit -= take;
    }
    if (deficit > 0)
        throw std::invalid_argument("shift_reinterpolate: p has fewer real roots than the target claims");

    Representation rep;
    rep.scale = p.leading_coefficient();
    for (size_t b = 0; b < chain.size(); ++b) {
        BuiltBlock built = build_block_for_signature(chain[b], plus_b[b], minus_b[b]);
        rep.scale *= built.gamma;
        const Signature bs = built.block.signature();
        rep.declared_signature.plus += bs.plus;
        rep.declared_signature.minus += bs.minus;
        rep.blocks.push_back(std::move(built.block));
    }
    if (!(rep.declared_signature == target))
        throw std::logic_error("shift_reinterpolate: assembled signature mismatch");
    const CertifyResult cert = certify_representation(p, rep);
    if (!cert.ok) throw std::logic_error("shift_reinterpolate: construction failed certification: " + cert.diagnostic());
    return rep;
}

/// One step down the signature hierarchy: (plus, minus) -> (plus-1, minus+1),
/// certified. Dispatch: r = 1 negates globally; r >= 2 tries the closed-form
/// rewrite and falls back to re-interpolation when the certifier rejects it.
/// Requires claimed r >= 1.
inline std::pair<Representation, ShiftReport> shift(const Representation& rep) {
    const int r = claimed_real_count(rep);
    if (r < 1)
        throw std::invalid_argument("shift: claimed real-root count must be >= 1 (r = " +
                                    std::to_string(r) + ")");
    if (r == 1) {
        return {shift_case_a(rep), ShiftReport{ShiftMethod::case_a, true, std::nullopt}};
    }
    FormulaOutcome outcome = shift_formula(rep);
    if (outcome.rep) {
        return {std::move(*outcome.rep), ShiftReport{outcome.method, true, std::nullopt}};
    }
    const Poly p = reconstruct(rep);
    Representation shifted = shift_reinterpolate(
        p, Signature{rep.declared_signature.plus - 1, rep.declared_signature.minus + 1});
    return {std::move(shifted), ShiftReport{ShiftMethod::reinterpolation, true, outcome.diagnostic}};
}

struct ChainStep {
    Representation rep;
    std::optional<ShiftReport> report;  // absent on the initial element
};

/// The whole signature hierarchy of p: r+1 certified representations from the
/// maximal signature (r+s, s) down to (s, r+s), consecutive signatures
/// differing by exactly (-1, +1). Steps run through shift() while the claimed
/// real count stays positive; the remaining signatures are exact mirrors
/// (global negations) of earlier elements.
inline std::vector<ChainStep> shift_chain(const Poly& p) {
    std::vector<ChainStep> steps;
    steps.push_back({represent(p), std::nullopt});
    const int r_total = claimed_real_count(steps.front().rep);
    while (claimed_real_count(steps.back().rep) >= 1) {
        auto [rep, report] = shift(steps.back().rep);
        steps.push_back({std::move(rep), report});
    }
    while (static_cast<int>(steps.size()) < r_total + 1) {
        const int k = static_cast<int>(steps.size());
        ChainStep step;
        step.rep = negate_representation(steps[static_cast<size_t>(r_total - k)].rep);
        step.report = ShiftReport{ShiftMethod::case_a, true,
                                  "signature mirror of chain element " + std::to_string(r_total - k)};
        steps.push_back(std::move(step));
    }
    return steps;
}

}  // namespace detrep
