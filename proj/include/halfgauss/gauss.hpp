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

#include <array>
#include <stdexcept>
#include <string>

#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/numtheory.hpp"

namespace hg {

/// Sum over x in Z_d of zeta_{phase}^{a x^2}, term by term.
inline CyclotomicNumber direct_quadratic_sum(i64 a, u64 d, u64 phase) {
    std::vector<i64> counts(phase, 0);
    u64 am = mod(a, phase);
    for (u64 x = 0; x < d; x++) {
        counts[mulmod(am, mulmod(x, x, phase), phase)]++;
    }
    return CyclotomicNumber::from_counts(phase, counts);
}

/// G(a, d) by direct summation.
inline CyclotomicNumber direct_gauss_sum(i64 a, u64 d) {
    return direct_quadratic_sum(a, d, d);
}

/// G_{1/2}(a, d) by direct summation under the given convention.
inline CyclotomicNumber direct_half_gauss_sum(i64 a, u64 d, SignConvention conv) {
    u64 e = xi_exponent(d, conv);
    return direct_quadratic_sum(static_cast<i64>(mulmod(mod(a, 2 * d), e, 2 * d)), d, 2 * d);
}

namespace detail {

inline void require_coprime(i64 a, u64 d, const char *who) {
    if (d == 0) {
        throw std::invalid_argument(std::string(who) + ": d must be positive");
    }
    if (gcd(mod(a, d), d) != 1 && d != 1) {
        throw std::invalid_argument(std::string(who) + ": gcd(" + std::to_string(a) + ", " + std::to_string(d) +
                                    ") != 1");
    }
}

// G(a, 2^k) for k <= 3 and odd a, keyed by a mod 8.
inline const SurdMonomial &two_power_gauss_base(u64 a, int k) {
    static const auto table = [] {
        std::array<std::array<SurdMonomial, 8>, 4> t;
        for (int kk = 0; kk <= 3; kk++) {
            for (u64 r = 1; r < 8; r += 2) {
                t[kk][r] = *as_surd_monomial(direct_gauss_sum(static_cast<i64>(r), u64{1} << kk));
            }
        }
        return t;
    }();
    return table[k][a % 8];
}

// G_{1/2}(a, 2^m) for m <= 2 and odd a, keyed by a mod 8.
inline const SurdMonomial &two_power_half_base(u64 a, int m) {
    static const auto table = [] {
        std::array<std::array<SurdMonomial, 8>, 3> t;
        for (int mm = 0; mm <= 2; mm++) {
            for (u64 r = 1; r < 8; r += 2) {
                t[mm][r] = *as_surd_monomial(
                    direct_half_gauss_sum(static_cast<i64>(r), u64{1} << mm, SignConvention::Default));
            }
        }
        return t;
    }();
    return table[m][a % 8];
}

inline SurdMonomial gauss_two_power(u64 a, int k) {
    SurdMonomial scale;
    while (k >= 4) {
        scale *= SurdMonomial::rational(2);
        k -= 2;
    }
    return scale * two_power_gauss_base(a, k);
}

inline SurdMonomial half_two_power(u64 a, int m) {
    SurdMonomial scale;
    while (m >= 3) {
        scale *= SurdMonomial::rational(2);
        m -= 2;
    }
    return scale * two_power_half_base(a, m);
}

inline SurdMonomial gauss_odd(i64 a, u64 c) {
    if (c == 1) {
        return SurdMonomial();
    }
    SurdMonomial g = SurdMonomial::sqrt_of(c);
    if (c % 4 == 3) {
        g *= SurdMonomial::root(1, 4);
    }
    if (jacobi_symbol(static_cast<i64>(mod(a, c)), static_cast<i64>(c)) < 0) {
        g *= SurdMonomial::root(1, 2);
    }
    return g;
}

}  // namespace detail

/// G(a, d) as a monomial value.
inline SurdMonomial gauss_sum_monomial(i64 a, u64 d) {
    detail::require_coprime(a, d, "gauss_sum");
    u64 b = 1, c = d;
    int k = 0;
    while (c % 2 == 0) {
        c /= 2;
        b *= 2;
        k++;
    }
    if (b == 1) {
        return detail::gauss_odd(a, c);
    }
    // G(a, bc) = G(ab, c) G(ac, b)
    u64 ab = mulmod(mod(a, c), b % c, c);
    u64 ac = mulmod(mod(a, b), c % b, b);
    return detail::gauss_odd(static_cast<i64>(ab), c) * detail::gauss_two_power(ac, k);
}

inline CyclotomicNumber gauss_sum(i64 a, u64 d) {
    return gauss_sum_monomial(a, d).to_cyclotomic();
}

/// G_{1/2}(a, d) as a monomial value.
inline SurdMonomial half_gauss_sum_monomial(i64 a, u64 d, SignConvention conv = SignConvention::Default) {
    detail::require_coprime(a, d, "half_gauss_sum");
    if (d % 2 == 1) {
        return gauss_sum_monomial(static_cast<i64>(mulmod(mod(a, d), (d + 1) / 2, d)), d);
    }
    if (conv == SignConvention::MinusForEven) {
        // -omega_{2d} = omega_{2d}^{d+1}
        u64 am = mulmod(mod(a, 2 * d), d + 1, 2 * d);
        return half_gauss_sum_monomial(static_cast<i64>(am), d, SignConvention::Default);
    }
    CrtSplit sp = crt_split(static_cast<i64>(d));
    u64 b = static_cast<u64>(sp.b), c = static_cast<u64>(sp.c);
    int m = valuation(b, 2);
    // G_{1/2}(a, d) = G_{1/2}(a (N1 + b N2), b) G_{1/2}(a N2, c)
    u64 mult_b = mod(sp.n1 + static_cast<i64>(b) * sp.n2, 2 * b);
    SurdMonomial first = detail::half_two_power(mulmod(mod(a, 2 * b), mult_b, 2 * b), m);
    if (c == 1) {
        return first;
    }
    u64 ac = mulmod(mod(a, c), mod(sp.n2, c), c);
    return first * half_gauss_sum_monomial(static_cast<i64>(ac), c, conv);
}

inline CyclotomicNumber half_gauss_sum(i64 a, u64 d, SignConvention conv = SignConvention::Default) {
    return half_gauss_sum_monomial(a, d, conv).to_cyclotomic();
}

/// q_d = G_{1/2}(1, d) / sqrt(d).
inline SurdMonomial q_constant_monomial(u64 d, SignConvention conv = SignConvention::Default) {
    if (d < 2) {
        throw std::invalid_argument("q_constant: d must be at least 2");
    }
    return half_gauss_sum_monomial(1, d, conv) * SurdMonomial::sqrt_of(d).inverse();
}

inline CyclotomicNumber q_constant(u64 d, SignConvention conv = SignConvention::Default) {
    return q_constant_monomial(d, conv).to_cyclotomic();
}

}  // namespace hg
