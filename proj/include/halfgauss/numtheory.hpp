// Copyright 2026 The halfgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hg {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Largest modulus accepted anywhere in the library (exclusive).
inline constexpr u64 kModulusCap = u64{1} << 62;

/// Nonnegative residue of `a` modulo `m` (m > 0).
inline u64 mod(i64 a, u64 m) {
    if (m == 0) {
        throw std::invalid_argument("mod: zero modulus");
    }
    if (a >= 0) {
        return static_cast<u64>(a) % m;
    }
    u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids overflow at INT64_MIN
    return m - 1 - r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    if (m <= (u64{1} << 32)) {
        return (a % m) * (b % m) % m;
    }
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
    return a >= b ? a - b : a + (m - b);
}

inline u64 powmod(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) {
            r = mulmod(r, base, m);
        }
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

inline u64 gcd(u64 a, u64 b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

inline u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    return a / gcd(a, b) * b;
}

/// Exact integer power; throws on overflow.
inline u64 ipow(u64 base, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; i++) {
        if (base != 0 && r > std::numeric_limits<u64>::max() / base) {
            throw std::overflow_error("ipow overflow");
        }
        r *= base;
    }
    return r;
}

/// Exponent of the prime p in x (x != 0).
inline int valuation(u64 x, u64 p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        v++;
    }
    return v;
}

struct Bezout {
    i64 g;
    i64 u;
    i64 v;
};

/// g = gcd(a, b) >= 0 together with u*a + v*b = g.
inline Bezout extended_gcd(i64 a, i64 b) {
    if (a == 0 && b == 0) {
        throw std::invalid_argument("extended_gcd(0, 0) is undefined");
    }
    __int128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        __int128 q = r0 / r1;
        __int128 tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - q * s1;
        s0 = s1;
        s1 = tmp;
        tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    return {static_cast<i64>(r0), static_cast<i64>(s0), static_cast<i64>(t0)};
}

/// Inverse of a modulo m; throws if gcd(a, m) != 1.
inline u64 inverse_mod(i64 a, u64 m) {
    if (m == 1) {
        return 0;
    }
    auto [g, u, v] = extended_gcd(static_cast<i64>(mod(a, m)), static_cast<i64>(m));
    (void)v;
    if (g != 1) {
        throw std::invalid_argument("inverse_mod: " + std::to_string(a) + " is not invertible modulo " +
                                    std::to_string(m));
    }
    return mod(u, m);
}

/// Jacobi symbol (a/n) for odd n >= 1, by the reciprocity iteration.
inline int jacobi_symbol(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) {
        throw std::invalid_argument("jacobi_symbol: n must be odd and positive, got " + std::to_string(n));
    }
    u64 x = mod(a, static_cast<u64>(n));
    u64 m = static_cast<u64>(n);
    int result = 1;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            u64 r = m % 8;
            if (r == 3 || r == 5) {
                result = -result;
            }
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) {
            result = -result;
        }
        x %= m;
    }
    return m == 1 ? result : 0;
}

/// Decomposition d = b*c with b the full power of two in d and c odd, plus Bezout
/// coefficients n1*c + n2*b = 1.
struct CrtSplit {
    i64 b;
    i64 c;
    i64 n1;
    i64 n2;
};

inline CrtSplit crt_split(i64 d) {
    if (d < 2 || d % 2 != 0) {
        throw std::invalid_argument("crt_split: expected an even d >= 2, got " + std::to_string(d));
    }
    i64 b = 1;
    i64 c = d;
    while (c % 2 == 0) {
        c /= 2;
        b *= 2;
    }
    auto [g, u, v] = extended_gcd(c, b);
    (void)g;
    return {b, c, u, v};
}

using Factorization = std::vector<std::pair<u64, int>>;

/// Sorted prime factorization by trial division. Inputs are capped below 2^63.
inline Factorization factorize(u64 d) {
    if (d == 0) {
        throw std::invalid_argument("factorize: d must be positive");
    }
    if (d >= (u64{1} << 63)) {
        throw std::invalid_argument("factorize: " + std::to_string(d) + " exceeds the 2^63 cap");
    }
    Factorization out;
    for (u64 p = 2; p * p <= d; p += (p == 2 ? 1 : 2)) {
        if (d % p == 0) {
            int e = 0;
            while (d % p == 0) {
                d /= p;
                e++;
            }
            out.emplace_back(p, e);
        }
    }
    if (d > 1) {
        out.emplace_back(d, 1);
    }
    return out;
}

/// Largest squarefree s with x = s * r^2; returns {s, r}.
inline std::pair<u64, u64> squarefree_decompose(u64 x) {
    u64 s = 1, r = 1;
    for (auto [p, e] : factorize(x)) {
        r *= ipow(p, static_cast<unsigned>(e / 2));
        if (e % 2) {
            s *= p;
        }
    }
    return {s, r};
}

}  // namespace hg
