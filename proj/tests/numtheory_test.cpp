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


#include <gtest/gtest.h>

#include <random>

#include "halfgauss/numtheory.hpp"

namespace hg {
namespace {

// Legendre symbol by Euler's criterion.
int legendre_direct(i64 a, u64 p) {
    u64 r = powmod(mod(a, p), (p - 1) / 2, p);
    return r == 0 ? 0 : r == 1 ? 1 : -1;
}

int jacobi_direct(i64 a, u64 n) {
    int s = 1;
    for (auto [p, k] : factorize(n)) {
        for (int i = 0; i < k; i++) {
            s *= legendre_direct(a, p);
        }
    }
    return s;
}

TEST(Numtheory, ModAndArithmetic) {
    EXPECT_EQ(mod(-1, 5), 4u);
    EXPECT_EQ(mod(10, 5), 0u);
    EXPECT_EQ(mod(INT64_MIN, 7), static_cast<u64>((INT64_MIN % 7 + 7) % 7));
    const u64 big = (u64{1} << 61) - 1;
    EXPECT_EQ(mulmod(big - 1, big - 1, big), 1u);
    EXPECT_EQ(addmod(big - 1, 5, big), 4u);
    EXPECT_EQ(submod(3, 5, 7), 5u);
    EXPECT_EQ(powmod(3, 200, 1000003), powmod(9, 100, 1000003));
}

TEST(Numtheory, GcdLcmPowValuation) {
    EXPECT_EQ(gcd(12, 18), 6u);
    EXPECT_EQ(gcd(0, 7), 7u);
    EXPECT_EQ(lcm(4, 6), 12u);
    EXPECT_EQ(ipow(3, 4), 81u);
    EXPECT_THROW(ipow(10, 30), std::overflow_error);
    EXPECT_EQ(valuation(48, 2), 4);
    EXPECT_EQ(valuation(45, 3), 2);
    EXPECT_EQ(valuation(7, 2), 0);
}

TEST(Numtheory, ExtendedGcdExamples) {
    Bezout b = extended_gcd(4, 3);
    EXPECT_EQ(b.g, 1);
    EXPECT_EQ(b.u, 1);
    EXPECT_EQ(b.v, -1);
    b = extended_gcd(1, 0);
    EXPECT_EQ(b.g, 1);
    EXPECT_EQ(b.u, 1);
    EXPECT_EQ(b.v, 0);
    b = extended_gcd(6, 4);
    EXPECT_EQ(b.g, 2);
    EXPECT_EQ(b.u, 1);
    EXPECT_EQ(b.v, -1);
    EXPECT_THROW(extended_gcd(0, 0), std::invalid_argument);
}

TEST(Numtheory, ExtendedGcdIdentityOnRandomPairs) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; i++) {
        i64 a = static_cast<i64>(rng() % 2000001) - 1000000;
        i64 b = static_cast<i64>(rng() % 2000001) - 1000000;
        if (a == 0 && b == 0) {
            continue;
        }
        Bezout r = extended_gcd(a, b);
        EXPECT_EQ(r.u * a + r.v * b, r.g);
        EXPECT_EQ(static_cast<u64>(r.g), gcd(static_cast<u64>(a < 0 ? -a : a), static_cast<u64>(b < 0 ? -b : b)));
    }
}

TEST(Numtheory, InverseMod) {
    for (u64 m = 2; m < 60; m++) {
        for (i64 a = -static_cast<i64>(m); a < static_cast<i64>(2 * m); a++) {
            if (gcd(mod(a, m), m) != 1) {
                EXPECT_THROW(inverse_mod(a, m), std::invalid_argument);
                continue;
            }
            EXPECT_EQ(mulmod(mod(a, m), inverse_mod(a, m), m), 1 % m);
        }
    }
}

TEST(Numtheory, JacobiExamples) {
    EXPECT_EQ(jacobi_symbol(1, 9), 1);
    EXPECT_EQ(jacobi_symbol(2, 15), 1);
    EXPECT_EQ(jacobi_symbol(3, 9), 0);
    EXPECT_THROW(jacobi_symbol(1, 8), std::invalid_argument);
    EXPECT_THROW(jacobi_symbol(1, -3), std::invalid_argument);
}

TEST(Numtheory, JacobiMatchesEulerCriterionProduct) {
    for (u64 n = 1; n < 400; n += 2) {
        for (i64 a = -30; a < 90; a++) {
            ASSERT_EQ(jacobi_symbol(a, static_cast<i64>(n)), jacobi_direct(a, n)) << a << "/" << n;
        }
    }
}

TEST(Numtheory, CrtSplitExamples) {
    CrtSplit s = crt_split(12);
    EXPECT_EQ(s.b, 4);
    EXPECT_EQ(s.c, 3);
    EXPECT_EQ(s.n1, -1);
    EXPECT_EQ(s.n2, 1);
    s = crt_split(2);
    EXPECT_EQ(s.b, 2);
    EXPECT_EQ(s.c, 1);
    EXPECT_EQ(s.n1 * s.c + s.n2 * s.b, 1);
    s = crt_split(8);
    EXPECT_EQ(s.b, 8);
    EXPECT_EQ(s.c, 1);
    EXPECT_THROW(crt_split(9), std::invalid_argument);
}

TEST(Numtheory, CrtSplitBezoutForAllEven) {
    for (i64 d = 2; d < 5000; d += 2) {
        CrtSplit s = crt_split(d);
        EXPECT_EQ(s.b * s.c, d);
        EXPECT_EQ(s.c % 2, 1);
        EXPECT_EQ(s.b & (s.b - 1), 0);
        EXPECT_EQ(s.n1 * s.c + s.n2 * s.b, 1);
    }
}

TEST(Numtheory, Factorize) {
    EXPECT_EQ(factorize(12), (Factorization{{2, 2}, {3, 1}}));
    EXPECT_TRUE(factorize(1).empty());
    EXPECT_EQ(factorize(97), (Factorization{{97, 1}}));
    for (u64 n = 1; n < 3000; n++) {
        u64 prod = 1;
        u64 last = 0;
        for (auto [p, k] : factorize(n)) {
            EXPECT_GT(p, last);
            last = p;
            for (u64 q = 2; q * q <= p; q++) {
                EXPECT_NE(p % q, 0u);
            }
            prod *= ipow(p, k);
        }
        EXPECT_EQ(prod, n);
    }
}

TEST(Numtheory, SquarefreeDecompose) {
    auto [s, r] = squarefree_decompose(72);
    EXPECT_EQ(s, 2u);
    EXPECT_EQ(r, 6u);
    for (u64 x = 1; x < 2000; x++) {
        auto [sf, root] = squarefree_decompose(x);
        EXPECT_EQ(sf * root * root, x);
        for (auto [p, k] : factorize(sf)) {
            EXPECT_EQ(k, 1);
        }
    }
}

}  // namespace
}  // namespace hg
