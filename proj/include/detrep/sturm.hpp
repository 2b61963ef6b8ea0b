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

#include <stdexcept>
#include <vector>

#include "detrep/poly.hpp"

namespace detrep {

/// Half-open isolating interval (lo, hi] with rational endpoints.
struct RootInterval {
    Rational lo;
    Rational hi;

    friend bool operator==(const RootInterval& a, const RootInterval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

/// Signed remainder sequence p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k),
/// each element reduced to its primitive integer part (a positive rational
/// rescaling, which leaves every sign-variation count unchanged). Terminates
/// at a nonzero constant for squarefree input.
class SturmSequence {
public:
    /// Requires p squarefree of degree >= 1; throws otherwise.
    static SturmSequence build(const Poly& p) {
        if (p.is_zero() || p.is_constant())
            throw std::invalid_argument("SturmSequence: input must have degree >= 1");
        SturmSequence seq;
        seq.polys_.push_back(p.primitive_part());
        seq.polys_.push_back(p.derivative().primitive_part());
        while (!seq.polys_.back().is_constant()) {
            const Poly& a = seq.polys_[seq.polys_.size() - 2];
            const Poly& b = seq.polys_.back();
            Poly r = detail::positive_prem_primitive(a, b);
            if (r.is_zero()) {
                // Terminating on a nonconstant element means gcd(p, p') != 1.
                throw std::invalid_argument("SturmSequence: input is not squarefree (gcd(p, p') != 1)");
            }
            seq.polys_.push_back(-r);
        }
        return seq;
    }

    const std::vector<Poly>& polys() const { return polys_; }

    /// Sign variations of the sequence evaluated at x, zeros skipped. With
    /// that convention V(a) - V(b) counts the roots in the half-open (a, b]
    /// even when one endpoint is itself a root.
    int variations_at(const Rational& x) const {
        int count = 0;
        int prev = 0;
        for (const Poly& q : polys_) {
            const int s = q.eval(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    /// Distinct real roots in (a, b]; requires a < b.
    int count_in(const Rational& a, const Rational& b) const {
        if (!(a < b)) throw std::invalid_argument("SturmSequence::count_in: requires a < b");
        return variations_at(a) - variations_at(b);
    }

    /// Distinct real roots on the whole line, via signs at the Cauchy bound.
    int count_all() const {
        const Rational bound = cauchy_bound(polys_.front());
        return count_in(-bound, bound);
    }

private:
    SturmSequence() = default;
    std::vector<Poly> polys_;
};

/// Number of distinct real roots of a squarefree p (whole line).
inline int count_real_roots(const Poly& p) { return SturmSequence::build(p).count_all(); }

/// Number of distinct real roots of a squarefree p in (a, b].
/// Requires a < b and p(a) != 0 != p(b).
inline int count_real_roots(const Poly& p, const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("count_real_roots: requires a < b");
    if (p.eval(a).is_zero() || p.eval(b).is_zero())
        throw std::invalid_argument("count_real_roots: interval endpoints must not be roots");
    return SturmSequence::build(p).count_in(a, b);
}

/// Real roots counted with multiplicity, for arbitrary p of degree >= 1,
/// via the squarefree chain.
inline int count_real_roots_with_multiplicity(const Poly& p) {
    int total = 0;
    for (const Poly& f : squarefree_chain(p)) total += count_real_roots(f);
    return total;
}

namespace detail {

inline void isolate_recurse(const SturmSequence& seq, const Poly& p, const Rational& lo,
                            const Rational& hi, int count, std::vector<RootInterval>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.push_back({lo, hi});
        return;
    }
    const Rational half(1, 2);
    const Rational mid = (lo + hi) * half;
    if (!p.eval(mid).is_zero()) {
        const int left = seq.count_in(lo, mid);
        isolate_recurse(seq, p, lo, mid, left, out);
        isolate_recurse(seq, p, mid, hi, count - left, out);
        return;
    }
    // The midpoint is a root: split around it so no interval boundary is a
    // root (boundaries double as interlacing nodes downstream).
    Rational w = (hi - lo) * Rational(1, 8);
    while (p.eval(mid - w).is_zero() || p.eval(mid + w).is_zero()) w = w * half;
    const int left = seq.count_in(lo, mid - w);
    const int middle = seq.count_in(mid - w, mid + w);
    isolate_recurse(seq, p, lo, mid - w, left, out);
    isolate_recurse(seq, p, mid - w, mid + w, middle, out);
    isolate_recurse(seq, p, mid + w, hi, count - left - middle, out);
}

}  // namespace detail

/// Isolates the real roots of a squarefree p into pairwise disjoint half-open
/// intervals with rational endpoints, sorted increasingly, one root each.
/// No interval boundary is a root of p, so consecutive intervals may share an
/// endpoint and that endpoint always lies strictly between the two roots.
inline std::vector<RootInterval> isolate_real_roots(const Poly& p) {
    const SturmSequence seq = SturmSequence::build(p);
    const Rational bound = cauchy_bound(p);
    std::vector<RootInterval> out;
    detail::isolate_recurse(seq, p, -bound, bound, seq.count_in(-bound, bound), out);
    return out;
}

/// Interlacing node between each pair of consecutive isolating intervals:
/// the midpoint of the boundary gap, which degenerates to the shared boundary
/// point when the intervals touch. Each node is strictly between the two
/// roots and is itself never a root. Fewer than two intervals yield no nodes.
inline std::vector<Rational> select_interlacing_nodes(const std::vector<RootInterval>& intervals) {
    std::vector<Rational> nodes;
    if (intervals.size() < 2) return nodes;
    nodes.reserve(intervals.size() - 1);
    for (size_t i = 0; i + 1 < intervals.size(); ++i)
        nodes.push_back((intervals[i].hi + intervals[i + 1].lo) * Rational(1, 2));
    return nodes;
}

}  // namespace detrep
