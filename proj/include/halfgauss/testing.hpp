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

// Random instance generators and exhaustive oracle sweeps shared by the
// test suites and the selftest command.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "halfgauss/clifford.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/holant.hpp"
#include "halfgauss/oracle.hpp"
#include "halfgauss/text.hpp"

namespace hg {

inline i64 random_below(std::mt19937_64 &rng, u64 bound) {
    return static_cast<i64>(rng() % bound);
}

/// Coefficients in [0, 2d); cross and linear ones even when d is even.
inline QuadraticForm random_periodic_quadratic(u64 d, int n, std::mt19937_64 &rng, double density = 1.0) {
    QuadraticForm f(n);
    const u64 B = 2 * d;
    std::uniform_real_distribution<double> coin(0, 1);
    auto even = [&](i64 v) { return d % 2 == 0 ? v & ~i64{1} : v; };
    for (int i = 1; i <= n; i++) {
        if (coin(rng) < density) {
            f.add_alpha(i, i, random_below(rng, B));
        }
        for (int j = i + 1; j <= n; j++) {
            if (coin(rng) < density) {
                f.add_alpha(i, j, even(random_below(rng, B)));
            }
        }
        if (coin(rng) < density) {
            f.add_beta(i, even(random_below(rng, B)));
        }
    }
    return f;
}

/// Random circuit over {X, Y, Z, F, FDAG, G, CZ}.
inline Circuit random_clifford_circuit(u64 d, int m, int gates, std::mt19937_64 &rng) {
    static const GateKind kinds[] = {GateKind::X, GateKind::Y,    GateKind::Z, GateKind::F,
                                     GateKind::FDAG, GateKind::G, GateKind::CZ};
    Circuit c{d, m, {}};
    for (int i = 0; i < gates; i++) {
        GateKind k = kinds[rng() % (m >= 2 ? 7 : 6)];
        int a = static_cast<int>(rng() % m);
        u64 rep = 1 + rng() % (2 * d);
        if (k == GateKind::CZ) {
            int b = static_cast<int>(rng() % (m - 1));
            if (b >= a) {
                b++;
            }
            c.add(k, {a, b}, rep);
        } else {
            c.add(k, {a}, rep);
        }
    }
    return c;
}

inline std::vector<u64> random_digits(u64 d, int m, std::mt19937_64 &rng) {
    std::vector<u64> v(m);
    for (auto &x : v) {
        x = rng() % d;
    }
    return v;
}

/// Edges of a random hypergraph: each edge meets one to three vertices.
inline std::vector<std::vector<int>> random_incidence(int vertices, int edges, std::mt19937_64 &rng) {
    std::vector<std::vector<int>> inc(vertices);
    for (int e = 0; e < edges; e++) {
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; i++) {
            inc[rng() % vertices].push_back(e);
        }
    }
    return inc;
}

inline SignatureGrid random_affine_grid(u64 d, int edges, int max_rows, std::mt19937_64 &rng) {
    SignatureGrid g;
    g.d = d;
    for (int e = 0; e < edges; e++) {
        g.edges.push_back("e" + std::to_string(e + 1));
    }
    int V = 1 + static_cast<int>(rng() % 4);
    auto inc = random_incidence(V, edges, rng);
    int rows_left = max_rows;
    for (int v = 0; v < V; v++) {
        AffineSignature s;
        s.arity = static_cast<int>(inc[v].size());
        s.lambda = CyclotomicNumber(static_cast<long>(1 + rng() % 3));
        int rows = rows_left > 0 && s.arity > 0 ? static_cast<int>(rng() % (std::min(rows_left, 2) + 1)) : 0;
        rows_left -= rows;
        for (int r = 0; r < rows; r++) {
            std::vector<i64> row(s.arity);
            for (auto &x : row) {
                x = random_below(rng, d);
            }
            s.A.push_back(row);
            s.c.push_back(random_below(rng, d));
        }
        s.g = random_periodic_quadratic(d, s.arity, rng, 0.6);
        g.vertices.push_back({inc[v], s});
    }
    return g;
}

inline SignatureGrid random_product_grid(u64 d, int edges, std::mt19937_64 &rng) {
    SignatureGrid g;
    g.d = d;
    for (int e = 0; e < edges; e++) {
        g.edges.push_back("e" + std::to_string(e + 1));
    }
    int V = 1 + static_cast<int>(rng() % 4);
    auto inc = random_incidence(V, edges, rng);
    for (int v = 0; v < V; v++) {
        ProductSignature s;
        s.arity = static_cast<int>(inc[v].size());
        // random partition into blocks
        std::vector<int> label(s.arity);
        int blocks = 0;
        for (int p = 0; p < s.arity; p++) {
            label[p] = static_cast<int>(rng() % (blocks + 1));
            if (label[p] == blocks) {
                s.blocks.emplace_back();
                blocks++;
            }
            s.blocks[label[p]].push_back(p);
        }
        s.unary.resize(s.arity);
        for (int p = 0; p < s.arity; p++) {
            if (rng() % 2) {
                std::vector<CyclotomicNumber> tab;
                for (u64 x = 0; x < d; x++) {
                    i64 r = random_below(rng, 4);
                    tab.push_back(r == 3 ? CyclotomicNumber::root_of_unity(d, random_below(rng, d))
                                         : CyclotomicNumber(static_cast<long>(r)));
                }
                s.unary[p] = std::move(tab);
            }
        }
        g.vertices.push_back({inc[v], s});
    }
    return g;
}

struct SweepReport {
    u64 cases = 0;
    u64 failures = 0;
    std::vector<std::string> witnesses;

    void fail(std::string w) {
        failures++;
        if (witnesses.size() < 20) {
            witnesses.push_back(std::move(w));
        }
    }
    SweepReport &operator+=(const SweepReport &o) {
        cases += o.cases;
        failures += o.failures;
        for (const auto &w : o.witnesses) {
            if (witnesses.size() < 20) {
                witnesses.push_back(w);
            }
        }
        return *this;
    }
};

/// Calls fn on every periodic quadratic form in n variables with
/// coefficients in [0, 2d).
template <class Fn>
void for_each_periodic_quadratic(u64 d, int n, Fn fn) {
    std::vector<std::pair<int, int>> slots;  // (i, j); j == 0 marks a linear slot
    for (int i = 1; i <= n; i++) {
        for (int j = i; j <= n; j++) {
            slots.emplace_back(i, j);
        }
        slots.emplace_back(i, 0);
    }
    const u64 B = 2 * d;
    std::vector<u64> step(slots.size()), value(slots.size(), 0);
    for (size_t s = 0; s < slots.size(); s++) {
        bool diag = slots[s].first == slots[s].second;
        step[s] = d % 2 == 0 && !diag ? 2 : 1;
    }
    for (;;) {
        QuadraticForm f(n);
        for (size_t s = 0; s < slots.size(); s++) {
            if (value[s] == 0) {
                continue;
            }
            if (slots[s].second == 0) {
                f.add_beta(slots[s].first, static_cast<i64>(value[s]));
            } else {
                f.add_alpha(slots[s].first, slots[s].second, static_cast<i64>(value[s]));
            }
        }
        fn(f);
        size_t s = 0;
        for (; s < slots.size(); s++) {
            value[s] += step[s];
            if (value[s] < B) {
                break;
            }
            value[s] = 0;
        }
        if (s == slots.size()) {
            return;
        }
    }
}

/// eval_half_gauss against term-by-term summation.
inline bool half_gauss_matches_brute(u64 d, const QuadraticForm &f, SignConvention conv) {
    SumValue z = eval_half_gauss(d, f, conv, false);
    return z.monomial.to_cyclotomic() == brute_half_gauss(d, f, conv);
}

inline SweepReport sweep_half_gauss_exhaustive(u64 d, int n, SignConvention conv = SignConvention::Default) {
    SweepReport rep;
    for_each_periodic_quadratic(d, n, [&](const QuadraticForm &f) {
        rep.cases++;
        if (!half_gauss_matches_brute(d, f, conv)) {
            rep.fail("d=" + std::to_string(d) + " f=" + format_polynomial(f) + " convention=" + convention_name(conv));
        }
    });
    return rep;
}

inline SweepReport sweep_half_gauss_random(u64 d_lo, u64 d_hi, int max_n, u64 count, u64 seed) {
    SweepReport rep;
    std::mt19937_64 rng(seed);
    for (u64 i = 0; i < count; i++) {
        u64 d = d_lo + rng() % (d_hi - d_lo + 1);
        int n = 1 + static_cast<int>(rng() % max_n);
        QuadraticForm f = random_periodic_quadratic(d, n, rng);
        f.gamma0 = random_below(rng, 2 * d);
        rep.cases++;
        if (!half_gauss_matches_brute(d, f, SignConvention::Default)) {
            rep.fail("d=" + std::to_string(d) + " f=" + format_polynomial(f));
        }
    }
    return rep;
}

/// Full Gauss sums Z(q, g) against brute force, every quadratic g with
/// coefficients in [0, q).
inline SweepReport sweep_full_exhaustive(u64 q, int n) {
    SweepReport rep;
    std::vector<std::pair<int, int>> slots;
    for (int i = 1; i <= n; i++) {
        for (int j = i; j <= n; j++) {
            slots.emplace_back(i, j);
        }
        slots.emplace_back(i, 0);
    }
    std::vector<u64> value(slots.size(), 0);
    for (;;) {
        QuadraticForm g(n);
        for (size_t s = 0; s < slots.size(); s++) {
            if (value[s]) {
                if (slots[s].second == 0) {
                    g.add_beta(slots[s].first, static_cast<i64>(value[s]));
                } else {
                    g.add_alpha(slots[s].first, slots[s].second, static_cast<i64>(value[s]));
                }
            }
        }
        rep.cases++;
        if (!(eval_gauss_quadratic(q, g, false).monomial.to_cyclotomic() == brute_gauss(q, g))) {
            rep.fail("q=" + std::to_string(q) + " g=" + format_polynomial(g));
        }
        size_t s = 0;
        for (; s < slots.size(); s++) {
            if (++value[s] < q) {
                break;
            }
            value[s] = 0;
        }
        if (s == slots.size()) {
            return rep;
        }
    }
}

}  // namespace hg
