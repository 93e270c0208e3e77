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

#include "halfgauss/gauss.hpp"

namespace hg {
namespace {

using CN = CyclotomicNumber;

CN zeta(u64 n, i64 t) { return CN::root_of_unity(n, t); }
CN sqrt_of(u64 x) { return SurdMonomial::sqrt_of(x).to_cyclotomic(); }
const CN I = zeta(4, 1);

// sum over x in Z_d of exp(2 pi i e x^2 / N) by enumeration
CN enumerate(u64 d, u64 N, i64 e) {
    CN s;
    for (u64 x = 0; x < d; x++) {
        s += zeta(N, static_cast<i64>(mulmod(mod(e, N), mulmod(x, x, N), N)));
    }
    return s;
}

TEST(Gauss, GaussSumExamples) {
    EXPECT_EQ(gauss_sum(1, 5), sqrt_of(5));
    EXPECT_EQ(gauss_sum(1, 3), I * sqrt_of(3));
    EXPECT_EQ(gauss_sum(2, 3), -(I * sqrt_of(3)));
    EXPECT_EQ(gauss_sum(1, 1), CN(1));
    EXPECT_EQ(gauss_sum(1, 4), CN(2) + I * CN(2));
}

TEST(Gauss, HalfGaussSumExamples) {
    EXPECT_EQ(half_gauss_sum(1, 2), CN(1) + I);
    EXPECT_EQ(half_gauss_sum(3, 4), zeta(8, 3) * CN(2));
    EXPECT_EQ(half_gauss_sum(1, 3), gauss_sum(2, 3));
    EXPECT_EQ(half_gauss_sum(1, 3), -(I * sqrt_of(3)));
    EXPECT_EQ(half_gauss_sum(1, 8), (CN(1) + I) * CN(2));
}

TEST(Gauss, TwoPowerBaseCases) {
    for (i64 a = 1; a < 16; a += 2) {
        // 1 + i^a and 2 omega_8^a
        EXPECT_EQ(half_gauss_sum(a, 2), CN(1) + zeta(4, a));
        EXPECT_EQ(half_gauss_sum(a, 4), zeta(8, a) * CN(2));
    }
}

TEST(Gauss, QConstantExamples) {
    EXPECT_EQ(q_constant(2), zeta(8, 1));
    EXPECT_EQ(q_constant(4), zeta(8, 1));
    EXPECT_EQ(q_constant(3), half_gauss_sum(1, 3) * sqrt_of(3).scaled(mpq_class(1, 3)));
    for (u64 d = 2; d <= 30; d++) {
        CN q = q_constant(d);
        EXPECT_EQ(q * q.conj(), CN(1)) << d;
    }
}

TEST(Gauss, GaussSumMatchesEnumeration) {
    for (u64 d = 1; d <= 48; d++) {
        for (i64 a = -3; a < static_cast<i64>(2 * d); a++) {
            if (gcd(mod(a, d), d) != 1) {
                continue;
            }
            ASSERT_EQ(gauss_sum(a, d), enumerate(d, d, a)) << "a=" << a << " d=" << d;
        }
    }
}

TEST(Gauss, LargeTwoPowersMatchEnumeration) {
    for (int k = 1; k <= 11; k++) {
        u64 d = u64{1} << k;
        for (i64 a : {1, 3, 5, 7, 2047}) {
            EXPECT_EQ(gauss_sum(a, d), enumerate(d, d, a)) << a << " " << d;
            EXPECT_EQ(half_gauss_sum(a, d), enumerate(d, 2 * d, a)) << a << " " << d;
        }
    }
}

TEST(Gauss, HalfGaussSumMatchesEnumerationBothConventions) {
    for (u64 d = 2; d <= 48; d++) {
        for (i64 a = 1; a < static_cast<i64>(2 * d); a++) {
            if (gcd(mod(a, d), d) != 1) {
                continue;
            }
            ASSERT_EQ(half_gauss_sum(a, d, SignConvention::Default), direct_half_gauss_sum(a, d, SignConvention::Default));
            ASSERT_EQ(half_gauss_sum(a, d, SignConvention::MinusForEven), direct_half_gauss_sum(a, d, SignConvention::MinusForEven));
            // independent enumeration with xi = zeta_{2d}^{e}
            i64 e = static_cast<i64>(xi_exponent(d, SignConvention::Default));
            ASSERT_EQ(half_gauss_sum(a, d), enumerate(d, 2 * d, a * e)) << "a=" << a << " d=" << d;
            if (d % 2 == 0) {
                ASSERT_EQ(half_gauss_sum(a, d, SignConvention::MinusForEven), enumerate(d, 2 * d, a * (static_cast<i64>(d) + 1)));
            }
        }
    }
}

TEST(Gauss, RejectsNonCoprime) {
    EXPECT_THROW(gauss_sum(2, 4), std::invalid_argument);
    EXPECT_THROW(half_gauss_sum(3, 6), std::invalid_argument);
}

}  // namespace
}  // namespace hg
