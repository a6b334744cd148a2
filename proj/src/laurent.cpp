/*
   Copyright 2026 the reclab authors

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

#include "reclab/laurent.hpp"

#include <algorithm>

namespace reclab {

namespace {
constexpr int kBig = 1 << 28;

int coeff_vlow(const FieldElement& c) {
    auto v = c.valuation_opt();
    return v ? *v : c.precision();
}
} // namespace

LaurentElement::LaurentElement(LaurentField fld, int tail)
    : fld_(std::move(fld)), tail_lo_(tail), tail_hi_(tail) {}

LaurentElement::LaurentElement(LaurentField fld, int tail_lo, int tail_hi)
    : fld_(std::move(fld)), tail_lo_(tail_lo), tail_hi_(tail_hi) {}

LaurentElement LaurentElement::from_coeff(const LaurentField& fld, const FieldElement& c) {
    if (!c.field().same_field(fld.coeff)) fail(Errc::ambient_mismatch, "coefficient from a different field");
    int t = std::min(c.precision(), fld.coeff.prec_cap());
    LaurentElement r(fld, t);
    r.insert(MultiIndex((size_t)fld.nvars, 0), c);
    r.normalize();
    return r;
}

LaurentElement LaurentElement::monomial(const LaurentField& fld, const FieldElement& c, const MultiIndex& idx) {
    if ((int)idx.size() != fld.nvars) fail(Errc::config_error, "monomial index has wrong arity");
    int t = std::min(c.precision(), fld.coeff.prec_cap());
    LaurentElement r(fld, t);
    r.insert(idx, c);
    r.normalize();
    return r;
}

FieldElement LaurentElement::coefficient(const MultiIndex& idx) const {
    auto it = c_.find(idx);
    if (it != c_.end()) return it->second;
    // side-aware bound for the absent coefficient
    int bound = tail();
    if (fld_.nvars == 1 && !c_.empty()) {
        int lo = c_.begin()->first[0], hi = c_.rbegin()->first[0];
        if (idx[0] < lo) bound = tail_lo_;
        else if (idx[0] > hi) bound = tail_hi_;
        else bound = std::min(tail_lo_, tail_hi_);
    }
    return fld_.coeff.zero().with_precision(bound);
}

void LaurentElement::insert(const MultiIndex& idx, const FieldElement& v) {
    auto it = c_.find(idx);
    if (it == c_.end()) c_.emplace(idx, v);
    else it->second += v;
}

void LaurentElement::normalize() {
    // tails can never certify beyond the coefficient precision cap
    int pcap = fld_.coeff.prec_cap();
    tail_lo_ = std::min(tail_lo_, pcap);
    tail_hi_ = std::min(tail_hi_, pcap);
    // prune coefficients whose whole content is covered by the tails: either
    // the valuation clears both bounds, or the coefficient is zero at its own
    // precision and the bound applicable to its position absorbs it
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = c_.begin(); it != c_.end();) {
            const FieldElement& c = it->second;
            int vl = coeff_vlow(c);
            bool drop = vl >= std::max(tail_lo_, tail_hi_);
            if (!drop && c.is_zero()) {
                int bound;
                if (fld_.nvars == 1 && c_.size() > 1) {
                    bool lo_edge = it == c_.begin();
                    bool hi_edge = std::next(it) == c_.end();
                    if (lo_edge) bound = tail_lo_;
                    else if (hi_edge) bound = tail_hi_;
                    else bound = std::min(tail_lo_, tail_hi_);
                } else {
                    bound = std::min(tail_lo_, tail_hi_);
                }
                drop = vl >= bound;
            }
            if (drop) {
                it = c_.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    int cap = fld_.hard_cap();
    for (const auto& [idx, c] : c_) {
        for (int v : idx) {
            if (v > cap || v < -cap)
                fail(Errc::window_overflow,
                     "support exceeds the window hard cap with coefficients of small valuation");
        }
    }
}

LaurentElement LaurentElement::operator+(const LaurentElement& o) const {
    if (!fld_.same(o.fld_)) fail(Errc::ambient_mismatch, "tower element ambient mismatch");
    LaurentElement r(fld_, std::min(tail_lo_, o.tail_lo_), std::min(tail_hi_, o.tail_hi_));
    r.c_ = c_;
    for (const auto& [idx, c] : o.c_) r.insert(idx, c);
    r.normalize();
    return r;
}

LaurentElement LaurentElement::operator-() const {
    LaurentElement r(fld_, tail_lo_, tail_hi_);
    for (const auto& [idx, c] : c_) r.c_.emplace(idx, -c);
    return r;
}

LaurentElement LaurentElement::operator-(const LaurentElement& o) const { return *this + (-o); }

int LaurentElement::vlow() const {
    int m = tail();
    for (const auto& [idx, c] : c_) m = std::min(m, coeff_vlow(c));
    return m;
}

LaurentElement LaurentElement::operator*(const LaurentElement& o) const {
    if (!fld_.same(o.fld_)) fail(Errc::ambient_mismatch, "tower element ambient mismatch");
    const LaurentElement& A = *this;
    const LaurentElement& B = o;
    int vA = A.vlow(), vB = B.vlow();
    int tlA = A.tail_lo_, thA = A.tail_hi_, tlB = B.tail_lo_, thB = B.tail_hi_;
    // cross products of two omitted tails can land anywhere
    int cross = std::min({tlA + tlB, tlA + thB, thA + tlB, thA + thB});
    int out_lo = std::min({tlA + vB, tlB + vA, cross});
    int out_hi = std::min({thA + vB, thB + vA, cross});
    LaurentElement r(fld_, out_lo, out_hi);
    for (const auto& [ia, ca] : A.c_) {
        for (const auto& [ib, cb] : B.c_) {
            MultiIndex k((size_t)fld_.nvars);
            for (int t = 0; t < fld_.nvars; ++t) k[(size_t)t] = ia[(size_t)t] + ib[(size_t)t];
            r.insert(k, ca * cb);
        }
    }
    // pollution of stored coefficients by omitted tails
    if (fld_.nvars == 1 && !A.c_.empty() && !B.c_.empty()) {
        int loA = A.c_.begin()->first[0], hiA = A.c_.rbegin()->first[0];
        int loB = B.c_.begin()->first[0], hiB = B.c_.rbegin()->first[0];
        for (auto& [k, c] : r.c_) {
            int bound = cross;
            int bAlo = kBig, bAhi = kBig;
            for (const auto& [ib, cb] : B.c_) {
                int a = k[0] - ib[0];
                if (a < loA) bAlo = std::min(bAlo, coeff_vlow(cb));
                if (a > hiA) bAhi = std::min(bAhi, coeff_vlow(cb));
            }
            if (bAlo < kBig) bound = std::min(bound, tlA + bAlo);
            if (bAhi < kBig) bound = std::min(bound, thA + bAhi);
            int bBlo = kBig, bBhi = kBig;
            for (const auto& [ia, ca] : A.c_) {
                int b = k[0] - ia[0];
                if (b < loB) bBlo = std::min(bBlo, coeff_vlow(ca));
                if (b > hiB) bBhi = std::min(bBhi, coeff_vlow(ca));
            }
            if (bBlo < kBig) bound = std::min(bound, tlB + bBlo);
            if (bBhi < kBig) bound = std::min(bound, thB + bBhi);
            if (bound < c.precision()) c = c.with_precision(bound);
        }
    } else if (fld_.nvars > 1) {
        int bound = std::min({tlA + vB, thA + vB, tlB + vA, thB + vA, cross});
        for (auto& [k, c] : r.c_) {
            if (bound < c.precision()) c = c.with_precision(bound);
        }
    }
    r.normalize();
    return r;
}

LaurentElement LaurentElement::scale(const FieldElement& cc) const {
    int vc = coeff_vlow(cc);
    LaurentElement r(fld_, tail_lo_ + vc, tail_hi_ + vc);
    for (const auto& [idx, c] : c_) r.c_.emplace(idx, c * cc);
    r.normalize();
    return r;
}

LaurentElement LaurentElement::shift(const MultiIndex& by) const {
    LaurentElement r(fld_, tail_lo_, tail_hi_);
    for (const auto& [idx, c] : c_) {
        MultiIndex k = idx;
        for (int t = 0; t < fld_.nvars; ++t) k[(size_t)t] += by[(size_t)t];
        r.c_.emplace(std::move(k), c);
    }
    r.normalize();
    return r;
}

std::optional<int> LaurentElement::valuation_opt() const {
    int best = kBig;
    for (const auto& [idx, c] : c_) {
        auto v = c.valuation_opt();
        if (v) best = std::min(best, *v);
    }
    if (best >= tail()) return std::nullopt;
    return best;
}

int LaurentElement::valuation() const {
    auto v = valuation_opt();
    if (!v) fail(Errc::precision_exhausted, "tower valuation indistinguishable at this precision");
    return *v;
}

bool LaurentElement::equals_mod(const LaurentElement& o, int piv) const {
    LaurentElement d = *this - o;
    bool uncertain = d.tail() < piv;
    for (const auto& [idx, c] : d.c_) {
        auto v = c.valuation_opt();
        if (v && *v < piv) return false;
        if (!v && c.precision() < piv) uncertain = true;
    }
    if (uncertain) fail(Errc::precision_exhausted, "tower comparison beyond certified precision");
    return true;
}

LaurentElement LaurentElement::truncated_tail(int new_tail) const {
    LaurentElement r = *this;
    r.tail_lo_ = std::min(tail_lo_, new_tail);
    r.tail_hi_ = std::min(tail_hi_, new_tail);
    r.normalize();
    return r;
}

LaurentElement LaurentElement::inv() const {
    auto vo = valuation_opt();
    if (!vo) fail(Errc::non_invertible, "inverse of an element indistinguishable from 0");
    int v = *vo;
    const MultiIndex* lead = nullptr;
    for (const auto& [idx, c] : c_) {
        auto cv = c.valuation_opt();
        if (cv && *cv == v) {
            lead = &idx;
            break; // lexicographic order = leading monomial
        }
    }
    MultiIndex i0 = *lead;
    FieldElement c0 = c_.at(i0);
    MultiIndex mi0 = i0;
    for (auto& t : mi0) t = -t;
    LaurentElement y = shift(mi0).scale(c0.inv());
    LaurentElement one = from_coeff(fld_, fld_.coeff.one());
    LaurentElement z = y - one;
    LaurentElement acc = one;
    LaurentElement term = one;
    int dropped_lo = kBig, dropped_hi = kBig;
    int cap = fld_.window;
    int max_iter = 4 * (fld_.coeff.prec_cap() + fld_.window + 4);
    for (int it = 0; it < max_iter && !term.c_.empty(); ++it) {
        term = -(term * z);
        LaurentElement trimmed(fld_, term.tail_lo_, term.tail_hi_);
        for (const auto& [idx, c] : term.c_) {
            bool hi = false, lo = false;
            for (int t : idx) {
                if (t > cap) hi = true;
                if (t < -cap) lo = true;
            }
            if (hi) dropped_hi = std::min(dropped_hi, coeff_vlow(c));
            else if (lo) dropped_lo = std::min(dropped_lo, coeff_vlow(c));
            else trimmed.c_.emplace(idx, c);
        }
        term = std::move(trimmed);
        acc += term;
    }
    if (!term.c_.empty())
        fail(Errc::window_overflow, "inversion did not stabilize within the window");
    if (dropped_lo < kBig || dropped_hi < kBig) {
        acc.tail_lo_ = std::min(acc.tail_lo_, dropped_lo);
        acc.tail_hi_ = std::min(acc.tail_hi_, dropped_hi);
        acc.normalize();
    }
    return acc.scale(c0.inv()).shift(mi0);
}

LaurentElement LaurentElement::pow(i64 n) const {
    if (n < 0) return inv().pow(-n);
    LaurentElement r = from_coeff(fld_, fld_.coeff.one());
    LaurentElement b = *this;
    u64 e = (u64)n;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

LaurentElement LaurentElement::partial_t(int k) const {
    if (k < 1 || k > fld_.nvars) fail(Errc::config_error, "partial_t variable out of range");
    LaurentElement r(fld_, tail_lo_, tail_hi_);
    for (const auto& [idx, c] : c_) {
        int ik = idx[(size_t)k - 1];
        if (ik == 0) continue;
        MultiIndex j = idx;
        j[(size_t)k - 1] -= 1;
        r.insert(j, c.scaled(ik));
    }
    r.normalize();
    return r;
}

LaurentElement LaurentElement::partial_pi() const {
    LaurentElement r(fld_, tail_lo_ - 1, tail_hi_ - 1);
    for (const auto& [idx, c] : c_) r.insert(idx, c.derivative_dtop());
    r.normalize();
    return r;
}

LaurentElement LaurentElement::embed_coeff_to(const LaurentField& bigger) const {
    if (!bigger.coeff.same_tower(fld_.coeff) || bigger.coeff.top() < fld_.coeff.top() ||
        bigger.nvars != fld_.nvars)
        fail(Errc::not_a_subfield, "tower embedding mismatch");
    int scale = bigger.coeff.e() / fld_.coeff.e();
    LaurentElement r(bigger, tail_lo_ * scale, tail_hi_ * scale);
    for (const auto& [idx, c] : c_) r.c_.emplace(idx, c.embed_to(bigger.coeff));
    r.normalize();
    return r;
}

LaurentElement LaurentElement::trace_coeff_to(const LaurentField& smaller) const {
    if (!smaller.coeff.same_tower(fld_.coeff) || smaller.coeff.top() > fld_.coeff.top() ||
        smaller.nvars != fld_.nvars)
        fail(Errc::not_a_subfield, "tower trace mismatch");
    int scale = fld_.coeff.e() / smaller.coeff.e();
    auto fdiv = [&](int a) { return a >= 0 ? a / scale : -((-a + scale - 1) / scale); };
    LaurentElement r(smaller, fdiv(tail_lo_), fdiv(tail_hi_));
    for (const auto& [idx, c] : c_) r.c_.emplace(idx, c.trace_to(smaller.coeff));
    r.normalize();
    return r;
}

FieldElement coefficient_map_c(const LaurentElement& x) {
    return x.coefficient(MultiIndex((size_t)x.parent().nvars, 0));
}

FieldElement product_coefficient(const LaurentElement& A, const LaurentElement& B, const MultiIndex& k) {
    if (!A.parent().same(B.parent())) fail(Errc::ambient_mismatch, "product across different ambients");
    const LaurentField& fld = A.parent();
    FieldElement acc = fld.coeff.zero();
    for (const auto& [ia, ca] : A.coeffs()) {
        MultiIndex b((size_t)fld.nvars);
        for (int t = 0; t < fld.nvars; ++t) b[(size_t)t] = k[(size_t)t] - ia[(size_t)t];
        auto it = B.coeffs().find(b);
        if (it != B.coeffs().end()) acc += ca * it->second;
    }
    int tlA = A.tail_lo(), thA = A.tail_hi(), tlB = B.tail_lo(), thB = B.tail_hi();
    int bound = std::min({tlA + tlB, tlA + thB, thA + tlB, thA + thB});
    auto cvlow = [](const FieldElement& c) {
        auto v = c.valuation_opt();
        return v ? *v : c.precision();
    };
    if (fld.nvars == 1 && !A.coeffs().empty() && !B.coeffs().empty()) {
        int loA = A.coeffs().begin()->first[0], hiA = A.coeffs().rbegin()->first[0];
        int loB = B.coeffs().begin()->first[0], hiB = B.coeffs().rbegin()->first[0];
        int m;
        m = 1 << 28;
        for (const auto& [ib, cb] : B.coeffs())
            if (k[0] - ib[0] < loA) m = std::min(m, cvlow(cb));
        if (m < (1 << 28)) bound = std::min(bound, tlA + m);
        m = 1 << 28;
        for (const auto& [ib, cb] : B.coeffs())
            if (k[0] - ib[0] > hiA) m = std::min(m, cvlow(cb));
        if (m < (1 << 28)) bound = std::min(bound, thA + m);
        m = 1 << 28;
        for (const auto& [ia, ca] : A.coeffs())
            if (k[0] - ia[0] < loB) m = std::min(m, cvlow(ca));
        if (m < (1 << 28)) bound = std::min(bound, tlB + m);
        m = 1 << 28;
        for (const auto& [ia, ca] : A.coeffs())
            if (k[0] - ia[0] > hiB) m = std::min(m, cvlow(ca));
        if (m < (1 << 28)) bound = std::min(bound, thB + m);
    } else if (fld.nvars != 1) {
        bound = std::min({bound, tlA + B.vlow(), thA + B.vlow(), tlB + A.vlow(), thB + A.vlow()});
    }
    return acc.with_precision(std::min(acc.precision(), bound));
}

FieldElement generalized_trace(const LaurentElement& x, const LocalField& S) {
    return coefficient_map_c(x).trace_to(S);
}

int mu1_bound(const LaurentField& L) {
    int vp = L.coeff.e();
    return vp / ((int)L.coeff.p() - 1) + 1;
}

int rl1_bound(const LaurentField& L, const LocalField& S) {
    int vD = different_valuation(L.coeff, S);
    int vp = L.coeff.e();
    return -vD - vp / ((int)L.coeff.p() - 1) - 1;
}

int rl1_prime_bound(const LaurentField& L, const LocalField& S) { return rl1_bound(L, S) + 1; }

} // namespace reclab
