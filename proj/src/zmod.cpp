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

#include "reclab/zmod.hpp"

#include <algorithm>

namespace reclab {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::ok: return "Ok";
        case Errc::precision_exhausted: return "PrecisionExhausted";
        case Errc::non_invertible: return "NonInvertible";
        case Errc::not_a_subfield: return "NotASubfield";
        case Errc::invalid_prime: return "InvalidPrime";
        case Errc::window_overflow: return "WindowOverflow";
        case Errc::not_lubin_tate: return "NotLubinTate";
        case Errc::non_convergent: return "NonConvergent";
        case Errc::not_in_maximal_ideal: return "NotInMaximalIdeal";
        case Errc::all_coefficients_non_unit: return "AllCoefficientsNonUnit";
        case Errc::root_not_found: return "RootNotFound";
        case Errc::ambient_too_small: return "AmbientTooSmall";
        case Errc::division_mismatch: return "DivisionMismatch";
        case Errc::no_representation: return "NoRepresentation";
        case Errc::annihilator_violation: return "AnnihilatorViolation";
        case Errc::zero_entry: return "ZeroEntry";
        case Errc::ambient_mismatch: return "AmbientMismatch";
        case Errc::shape_not_supported: return "ShapeNotSupported";
        case Errc::domain_violation: return "DomainViolation";
        case Errc::representation_mismatch: return "RepresentationMismatch";
        case Errc::plan_invalid: return "PlanInvalid";
        case Errc::invariant_missing: return "InvariantMissing";
        case Errc::torsion_missing: return "TorsionMissing";
        case Errc::index_mismatch: return "IndexMismatch";
        case Errc::unramified_assumption_violated: return "UnramifiedAssumptionViolated";
        case Errc::config_error: return "ConfigError";
    }
    return "Unknown";
}

i64 pow_checked(i64 base, int exp) {
    i64 r = 1;
    const i64 limit = (i64)1 << 62;
    for (int i = 0; i < exp; ++i) {
        if (r > limit / base) fail(Errc::config_error, "modulus p^m exceeds 2^62; lower the working precision");
        r *= base;
    }
    return r;
}

i64 powmod(i64 a, u64 e, i64 q) {
    i64 r = 1 % q;
    a %= q;
    if (a < 0) a += q;
    while (e) {
        if (e & 1) r = mulmod(r, a, q);
        a = mulmod(a, a, q);
        e >>= 1;
    }
    return r;
}

int val_p(i64 x, i64 p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

i64 invmod_unit(i64 a, i64 p, int m) {
    i64 q = pow_checked(p, m);
    a %= q;
    if (a < 0) a += q;
    if (a % p == 0) fail(Errc::non_invertible, "inverse of non-unit mod p^m");
    // invert mod p by Fermat, then Newton-lift: x <- x(2 - ax) doubles digits
    i64 x = powmod(a % p, (u64)(p - 2), p);
    int k = 1;
    while (k < m) {
        k *= 2;
        i64 qq = k >= m ? q : pow_checked(p, k);
        x = mulmod(x, submod(2 % qq, mulmod(a % qq, x % qq, qq), qq), qq);
    }
    return x;
}

std::vector<i64> to_digits(i64 x, i64 p, int m) {
    std::vector<i64> d((size_t)m);
    for (int i = 0; i < m; ++i) {
        d[(size_t)i] = x % p;
        x /= p;
    }
    return d;
}

i64 from_digits(const std::vector<i64>& d, i64 p, int m) {
    i64 q = pow_checked(p, m);
    i64 x = 0, pw = 1;
    for (size_t i = 0; i < d.size(); ++i) {
        i64 di = d[i] % p;
        if (di < 0) di += p;
        if ((int)i < m) x = (x + mulmod(di, pw, q)) % q;
        if ((int)i + 1 < m) pw = mulmod(pw, p, q);
    }
    return x;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n % d == 0) return n == d;
    }
    u64 r = n - 1;
    int s = 0;
    while (r % 2 == 0) {
        r /= 2;
        ++s;
    }
    auto mul = [&](u64 a, u64 b) { return (u64)((unsigned __int128)a * b % n); };
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        u64 x = 1, e = r, base = a % n;
        while (e) {
            if (e & 1) x = mul(x, base);
            base = mul(base, base);
            e >>= 1;
        }
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

BigNat BigNat::from_u64(u64 x) {
    BigNat b;
    if (x) b.w.push_back(x);
    return b;
}

BigNat BigNat::mul(const BigNat& o) const {
    BigNat r;
    if (w.empty() || o.w.empty()) return r;
    r.w.assign(w.size() + o.w.size(), 0);
    for (size_t i = 0; i < w.size(); ++i) {
        unsigned __int128 carry = 0;
        for (size_t j = 0; j < o.w.size(); ++j) {
            unsigned __int128 cur = (unsigned __int128)w[i] * o.w[j] + r.w[i + j] + carry;
            r.w[i + j] = (u64)cur;
            carry = cur >> 64;
        }
        size_t k = i + o.w.size();
        while (carry) {
            unsigned __int128 cur = (unsigned __int128)r.w[k] + carry;
            r.w[k] = (u64)cur;
            carry = cur >> 64;
            ++k;
        }
    }
    while (!r.w.empty() && r.w.back() == 0) r.w.pop_back();
    return r;
}

BigNat BigNat::pow(u64 base, u64 exp) {
    BigNat r = from_u64(1);
    BigNat b = from_u64(base);
    while (exp) {
        if (exp & 1) r = r.mul(b);
        b = b.mul(b);
        exp >>= 1;
    }
    return r;
}

int BigNat::cmp(const BigNat& o) const {
    if (w.size() != o.w.size()) return w.size() < o.w.size() ? -1 : 1;
    for (size_t i = w.size(); i-- > 0;) {
        if (w[i] != o.w[i]) return w[i] < o.w[i] ? -1 : 1;
    }
    return 0;
}

} // namespace reclab
