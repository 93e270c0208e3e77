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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/polynomial.hpp"

namespace hg {

inline constexpr u64 kDefaultBudget = 10'000'000;

namespace detail {
inline std::atomic<u64> &budget_slot() {
    static std::atomic<u64> slot{0};
    return slot;
}
}  // namespace detail

/// Term budget for brute-force engines: explicit setting, else HG_BUDGET, else 10^7.
inline u64 brute_budget() {
    u64 v = detail::budget_slot().load();
    if (v != 0) {
        return v;
    }
    if (const char *env = std::getenv("HG_BUDGET")) {
        try {
            u64 e = std::stoull(env);
            if (e > 0) {
                return e;
            }
        } catch (const std::exception &) {
        }
    }
    return kDefaultBudget;
}

inline void set_brute_budget(u64 terms) {
    detail::budget_slot().store(terms);
}

class BudgetExceeded : public std::runtime_error {
   public:
    BudgetExceeded(const std::string &what, long double required, u64 budget)
        : std::runtime_error(what + ": needs " + format(required) + " terms, budget is " + std::to_string(budget)),
          required_(required),
          budget_(budget) {}

    long double required() const { return required_; }
    u64 budget() const { return budget_; }

   private:
    long double required_;
    u64 budget_;

    static std::string format(long double x) {
        if (x < 1e18L) {
            return std::to_string(static_cast<unsigned long long>(x));
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3Le", x);
        return buf;
    }
};

/// d^n, or throws BudgetExceeded when it passes the budget.
inline u64 require_budget(u64 d, int n, const std::string &who) {
    u64 budget = brute_budget();
    long double need = 1;
    for (int i = 0; i < n; i++) {
        need *= static_cast<long double>(d);
    }
    if (need > static_cast<long double>(budget)) {
        throw BudgetExceeded(who, need, budget);
    }
    return static_cast<u64>(need + 0.5L);
}

/// Z_I(d, b, f): variables over Z_d, phases at the b-th roots of unity.
struct SumDescriptor {
    u64 domain_modulus = 2;
    u64 phase_modulus = 4;
    IntPolynomial poly;
};

/// counts[j] = #{x in Z_d^n : f(x) = j mod m}.
inline std::vector<i64> value_histogram(u64 d, const IntPolynomial &f, u64 m) {
    int n = f.n;
    require_budget(d, n, "brute force");
    std::vector<i64> counts(m, 0);
    std::vector<i64> x(n, 0);
    // flatten terms for the inner loop
    std::vector<std::pair<u64, std::vector<int>>> terms;
    for (const auto &[mono, c] : f.terms) {
        std::vector<int> idx;
        for (int v : mono) {
            idx.push_back(v - 1);
        }
        terms.emplace_back(mod(c, m), std::move(idx));
    }
    for (;;) {
        u64 acc = 0;
        for (const auto &[c, idx] : terms) {
            u64 t = c;
            for (int v : idx) {
                t = mulmod(t, static_cast<u64>(x[v]), m);
            }
            acc = addmod(acc, t, m);
        }
        counts[acc]++;
        int k = 0;
        while (k < n && ++x[k] == static_cast<i64>(d)) {
            x[k] = 0;
            k++;
        }
        if (k == n) {
            break;
        }
    }
    return counts;
}

/// Same histogram for a quadratic form, with a tighter inner loop.
inline std::vector<i64> value_histogram(u64 d, const QuadraticForm &f, u64 m) {
    int n = f.n;
    require_budget(d, n, "brute force");
    std::vector<i64> counts(m, 0);
    std::vector<std::tuple<int, int, u64>> quad;
    std::vector<std::pair<int, u64>> lin;
    for (const auto &[ij, v] : f.alpha) {
        if (u64 r = mod(v, m)) {
            quad.emplace_back(ij.first - 1, ij.second - 1, r);
        }
    }
    for (const auto &[i, v] : f.beta) {
        if (u64 r = mod(v, m)) {
            lin.emplace_back(i - 1, r);
        }
    }
    u64 c0 = mod(f.gamma0, m);
    std::vector<u64> x(n, 0);
    for (;;) {
        u64 acc = c0;
        for (const auto &[i, j, c] : quad) {
            acc = addmod(acc, mulmod(c, mulmod(x[i], x[j], m), m), m);
        }
        for (const auto &[i, c] : lin) {
            acc = addmod(acc, mulmod(c, x[i], m), m);
        }
        counts[acc]++;
        int k = 0;
        while (k < n && ++x[k] == d) {
            x[k] = 0;
            k++;
        }
        if (k == n) {
            break;
        }
    }
    return counts;
}

inline CyclotomicNumber brute_sum(const SumDescriptor &s) {
    if (s.domain_modulus == 0 || s.phase_modulus == 0) {
        throw std::invalid_argument("brute_sum: moduli must be positive");
    }
    if (s.domain_modulus > s.phase_modulus) {
        throw std::invalid_argument("brute_sum: domain modulus must not exceed phase modulus");
    }
    return CyclotomicNumber::from_counts(s.phase_modulus,
                                         value_histogram(s.domain_modulus, s.poly, s.phase_modulus));
}

/// Z_{1/2}(d, f) term by term, any f (periodic or not).
inline CyclotomicNumber brute_half_gauss(u64 d, const QuadraticForm &f,
                                         SignConvention conv = SignConvention::Default) {
    u64 e = xi_exponent(d, conv);
    std::vector<i64> h = value_histogram(d, f, 2 * d);
    std::vector<i64> counts(2 * d, 0);
    for (u64 j = 0; j < 2 * d; j++) {
        counts[mulmod(j, e, 2 * d)] += h[j];
    }
    return CyclotomicNumber::from_counts(2 * d, counts);
}

/// Z(q, g) term by term.
inline CyclotomicNumber brute_gauss(u64 q, const QuadraticForm &g) {
    return CyclotomicNumber::from_counts(q, value_histogram(q, g, q));
}

inline u64 count_solutions(u64 d, const IntPolynomial &f, i64 j, u64 modulus) {
    std::vector<i64> h = value_histogram(d, f, modulus);
    return static_cast<u64>(h[mod(j, modulus)]);
}

/// #{x : f(x) = j mod M} from M half Gauss sums of k f, M = 2d for even d
/// and d for odd d.
inline CyclotomicNumber fourier_zero_count(u64 d, const QuadraticForm &f, i64 j) {
    const u64 M = d % 2 == 0 ? 2 * d : d;
    const u64 D2 = 2 * d;
    const u64 e = xi_exponent(d, SignConvention::Default);
    CyclotomicNumber rhs;
    for (u64 k = 0; k < M; k++) {
        QuadraticForm kf = f.scaled(static_cast<i64>(k));
        if (!check_periodicity(d, kf)) {
            throw AperiodicError("fourier_zero_count: f fails the periodicity condition");
        }
        SumValue z = eval_half_gauss(d, kf, SignConvention::Default, false);
        // xi^{-kj} = zeta_{2d}^{-e k j}
        u64 ph = mulmod(mulmod(e, k, D2), mod(j, D2), D2);
        rhs += (SurdMonomial::root(-static_cast<i64>(ph), static_cast<i64>(D2)) * z.monomial).to_cyclotomic();
    }
    return rhs.scaled(mpq_class(1) / mpz_class(std::to_string(M)));
}

/// Checks the Fourier count against direct counting mod 2d (even d) or d (odd d).
inline bool fourier_zero_identity_check(u64 d, const QuadraticForm &f, i64 j) {
    const u64 M = d % 2 == 0 ? 2 * d : d;
    u64 lhs = count_solutions(d, IntPolynomial::from_quadratic(f), j, M);
    return fourier_zero_count(d, f, j) == CyclotomicNumber(mpq_class(static_cast<long>(lhs)));
}

}  // namespace hg
