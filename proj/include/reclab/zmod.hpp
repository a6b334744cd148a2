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

#ifndef RECLAB_ZMOD_HPP
#define RECLAB_ZMOD_HPP

#include <cstdint>
#include <vector>

#include "reclab/errors.hpp"

namespace reclab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

// Arithmetic mod q = p^m with q < 2^62. Everything the tower layers do
// bottoms out here; products go through __int128.

inline i64 addmod(i64 a, i64 b, i64 q) {
    i64 s = a + b;
    if (s >= q) s -= q;
    return s;
}

inline i64 submod(i64 a, i64 b, i64 q) {
    i64 s = a - b;
    if (s < 0) s += q;
    return s;
}

inline i64 mulmod(i64 a, i64 b, i64 q) { return (i64)((i128)a * b % q); }

inline i64 negmod(i64 a, i64 q) { return a == 0 ? 0 : q - a; }

i64 pow_checked(i64 base, int exp); // throws config_error on overflow past 2^62
i64 powmod(i64 a, u64 e, i64 q);

/// v_p of a residue representative in [0, q); returns `cap` for 0.
int val_p(i64 x, i64 p, int cap);

/// Inverse of a mod q = p^m; requires p does not divide a.
i64 invmod_unit(i64 a, i64 p, int m);

/// Little-endian base-p digits, exactly m of them.
std::vector<i64> to_digits(i64 x, i64 p, int m);
i64 from_digits(const std::vector<i64>& d, i64 p, int m);

bool is_prime_u64(u64 n);

// Plan arithmetic needs exact comparisons of huge integer powers
// (a^e vs b^f); a tiny magnitude-only bignum keeps that exact.
struct BigNat {
    std::vector<u64> w; // little-endian 64-bit limbs, no leading zeros

    static BigNat from_u64(u64 x);
    static BigNat pow(u64 base, u64 exp);
    BigNat mul(const BigNat& o) const;
    int cmp(const BigNat& o) const; // -1, 0, 1
};

} // namespace reclab

#endif
