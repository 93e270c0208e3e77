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

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halfgauss/numtheory.hpp"

namespace hg {

/// f(x) = sum_{i<=j} alpha_ij x_i x_j + sum_i beta_i x_i + gamma0, 1-indexed.
struct QuadraticForm {
    int n = 0;
    std::map<std::pair<int, int>, i64> alpha;
    std::map<int, i64> beta;
    i64 gamma0 = 0;

    QuadraticForm() = default;
    explicit QuadraticForm(int vars) : n(vars) {}

    i64 a(int i, int j) const {
        if (i > j) {
            std::swap(i, j);
        }
        auto it = alpha.find({i, j});
        return it == alpha.end() ? 0 : it->second;
    }

    i64 b(int i) const {
        auto it = beta.find(i);
        return it == beta.end() ? 0 : it->second;
    }

    QuadraticForm &add_alpha(int i, int j, i64 v) {
        if (i > j) {
            std::swap(i, j);
        }
        check_index(i);
        check_index(j);
        i64 &slot = alpha[{i, j}];
        slot += v;
        if (slot == 0) {
            alpha.erase({i, j});
        }
        return *this;
    }

    QuadraticForm &add_beta(int i, i64 v) {
        check_index(i);
        i64 &slot = beta[i];
        slot += v;
        if (slot == 0) {
            beta.erase(i);
        }
        return *this;
    }

    /// Value at an integer point, reduced mod m.
    u64 eval_mod(const std::vector<i64> &x, u64 m) const {
        u64 acc = mod(gamma0, m);
        for (const auto &[ij, v] : alpha) {
            u64 t = mulmod(mod(v, m), mulmod(mod(x[ij.first - 1], m), mod(x[ij.second - 1], m), m), m);
            acc = addmod(acc, t, m);
        }
        for (const auto &[i, v] : beta) {
            acc = addmod(acc, mulmod(mod(v, m), mod(x[i - 1], m), m), m);
        }
        return acc;
    }

    QuadraticForm scaled(i64 s) const {
        QuadraticForm out(n);
        if (s == 0) {
            return out;
        }
        for (const auto &[k, v] : alpha) {
            out.alpha[k] = v * s;
        }
        for (const auto &[k, v] : beta) {
            out.beta[k] = v * s;
        }
        out.gamma0 = gamma0 * s;
        return out;
    }

    /// Copy with every coefficient reduced to [0, m) and zeros dropped.
    QuadraticForm reduced(u64 m) const {
        QuadraticForm out(n);
        for (const auto &[k, v] : alpha) {
            u64 r = mod(v, m);
            if (r) {
                out.alpha[k] = static_cast<i64>(r);
            }
        }
        for (const auto &[k, v] : beta) {
            u64 r = mod(v, m);
            if (r) {
                out.beta[k] = static_cast<i64>(r);
            }
        }
        out.gamma0 = static_cast<i64>(mod(gamma0, m));
        return out;
    }

    friend bool operator==(const QuadraticForm &x, const QuadraticForm &y) {
        return x.n == y.n && x.alpha == y.alpha && x.beta == y.beta && x.gamma0 == y.gamma0;
    }

   private:
    void check_index(int i) const {
        if (i < 1 || i > n) {
            throw std::out_of_range("variable index " + std::to_string(i) + " outside [1, " + std::to_string(n) +
                                    "]");
        }
    }
};

/// Sparse integer polynomial of arbitrary degree. A monomial is the sorted
/// multiset of its (1-indexed) variables, e.g. x1^2*x3 -> {1, 1, 3}.
struct IntPolynomial {
    using Monomial = std::vector<int>;

    int n = 0;
    std::map<Monomial, i64> terms;

    IntPolynomial() = default;
    explicit IntPolynomial(int vars) : n(vars) {}

    IntPolynomial &add(Monomial mono, i64 c) {
        std::sort(mono.begin(), mono.end());
        for (int v : mono) {
            if (v < 1) {
                throw std::out_of_range("variable index must be >= 1");
            }
            n = std::max(n, v);
        }
        i64 &slot = terms[mono];
        slot += c;
        if (slot == 0) {
            terms.erase(mono);
        }
        return *this;
    }

    int degree() const {
        int d = 0;
        for (const auto &[m, c] : terms) {
            d = std::max(d, static_cast<int>(m.size()));
        }
        return d;
    }

    u64 eval_mod(const std::vector<i64> &x, u64 m) const {
        u64 acc = 0;
        for (const auto &[mono, c] : terms) {
            u64 t = mod(c, m);
            for (int v : mono) {
                t = mulmod(t, mod(x[v - 1], m), m);
            }
            acc = addmod(acc, t, m);
        }
        return acc;
    }

    /// Over {0,1} domains x^p = x; merges repeated variables.
    IntPolynomial multilinear() const {
        IntPolynomial out(n);
        for (const auto &[mono, c] : terms) {
            Monomial m = mono;
            m.erase(std::unique(m.begin(), m.end()), m.end());
            out.add(m, c);
        }
        out.n = n;
        return out;
    }

    IntPolynomial scaled(i64 s) const {
        IntPolynomial out(n);
        for (const auto &[m, c] : terms) {
            out.add(m, c * s);
        }
        out.n = n;
        return out;
    }

    std::optional<QuadraticForm> as_quadratic() const {
        if (degree() > 2) {
            return std::nullopt;
        }
        QuadraticForm q(n);
        for (const auto &[m, c] : terms) {
            if (m.empty()) {
                q.gamma0 += c;
            } else if (m.size() == 1) {
                q.add_beta(m[0], c);
            } else {
                q.add_alpha(m[0], m[1], c);
            }
        }
        return q;
    }

    static IntPolynomial from_quadratic(const QuadraticForm &q) {
        IntPolynomial p(q.n);
        for (const auto &[ij, v] : q.alpha) {
            p.add({ij.first, ij.second}, v);
        }
        for (const auto &[i, v] : q.beta) {
            p.add({i}, v);
        }
        if (q.gamma0 != 0) {
            p.add({}, q.gamma0);
        }
        p.n = q.n;
        return p;
    }

    friend bool operator==(const IntPolynomial &x, const IntPolynomial &y) {
        return x.n == y.n && x.terms == y.terms;
    }
};

}  // namespace hg
