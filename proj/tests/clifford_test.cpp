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

#include <algorithm>
#include <random>

#include "halfgauss/clifford.hpp"
#include "halfgauss/testing.hpp"
#include "halfgauss/text.hpp"

namespace hg {
namespace {

using CN = CyclotomicNumber;

CN zeta(u64 n, i64 t) { return CN::root_of_unity(n, t); }

NormalizedCircuit sandwich(u64 d, int m, std::vector<Gate> inner) {
    return detail::make_normalized(d, m, std::move(inner));
}

std::vector<u64> digits_of(u64 idx, u64 d, int m) {
    std::vector<u64> b(m);
    for (int r = m - 1; r >= 0; r--) {
        b[r] = idx % d;
        idx /= d;
    }
    return b;
}

TEST(Clifford, NormalizeExamples) {
    NormalizedCircuit e = normalize(Circuit{3, 1, {}});
    EXPECT_EQ(e.h, 2);
    EXPECT_EQ(e.n, 1);
    EXPECT_TRUE(e.inner.empty());

    Circuit x{3, 1, {}};
    x.add(GateKind::X, {0});
    NormalizedCircuit nx = normalize(x);
    EXPECT_EQ(nx.h, 2);
    EXPECT_EQ(nx.n, 1);
    EXPECT_EQ(statevector(nx, {1}), statevector(x, {1}));

    Circuit cz{4, 2, {}};
    cz.add(GateKind::CZ, {0, 1});
    NormalizedCircuit ncz = normalize(cz);
    EXPECT_EQ(ncz.h, 2 * ncz.m + ncz.internal_f(0) + ncz.internal_f(1));
    EXPECT_EQ(ncz.n, ncz.h - ncz.m);
    EXPECT_EQ(std::count_if(ncz.inner.begin(), ncz.inner.end(), [](const Gate &g) { return g.kind == GateKind::CZ; }), 1);
    for (u64 a = 0; a < 16; a++) {
        std::vector<u64> in{a / 4, a % 4};
        EXPECT_EQ(statevector(ncz, in), statevector(cz, in));
    }
}

TEST(Clifford, NormalizePreservesUnitary) {
    std::mt19937_64 rng(2);
    for (int it = 0; it < 60; it++) {
        u64 d = 2 + rng() % 5;
        int m = 1 + static_cast<int>(rng() % 2);
        Circuit c = random_clifford_circuit(d, m, 1 + static_cast<int>(rng() % 12), rng);
        NormalizedCircuit nc = normalize(c);
        for (const Gate &g : nc.inner) {
            EXPECT_TRUE(g.kind == GateKind::Z || g.kind == GateKind::G || g.kind == GateKind::F ||
                        g.kind == GateKind::CZ);
        }
        std::vector<u64> a = random_digits(d, m, rng);
        ASSERT_EQ(statevector(nc, a), statevector(c, a)) << format_circuit(c);
    }
}

TEST(Clifford, PhasePolynomialExamples) {
    auto [s0, l0] = phase_polynomial(sandwich(3, 1, {}));
    EXPECT_EQ(format_polynomial(s0), "0");
    EXPECT_EQ(l0.segments.size(), 1u);
    EXPECT_EQ(l0.segments[0].size(), 1u);

    auto [s1, l1] = phase_polynomial(sandwich(3, 1, {{GateKind::G, {0}, 1}}));
    EXPECT_EQ(format_polynomial(s1), "x1^2");

    auto [s2, l2] = phase_polynomial(sandwich(3, 2, {{GateKind::CZ, {0, 1}, 1}}));
    EXPECT_EQ(format_polynomial(s2), "2*x1*x2");
    EXPECT_EQ(l2.inceptive, (std::vector<int>{1, 2}));
    EXPECT_EQ(l2.terminal, (std::vector<int>{1, 2}));
}

TEST(Clifford, InternalFourierCreatesSegments) {
    auto [s, l] = phase_polynomial(sandwich(5, 1, {{GateKind::F, {0}, 1}, {GateKind::Z, {0}, 2}}));
    EXPECT_EQ(format_polynomial(s), "2*x1*x2 + 4*x2");
    EXPECT_EQ(l.inceptive, (std::vector<int>{1}));
    EXPECT_EQ(l.terminal, (std::vector<int>{2}));
    EXPECT_TRUE(l.internal.empty());
}

TEST(Clifford, CircuitFromPolynomialExamples) {
    Circuit c = circuit_from_polynomial(parse_quadratic("x1^2"), 3);
    EXPECT_EQ(format_circuit(c), "dim 3\nqudits 1\nF 0\nG 0\nFDAG 0\n");
    Circuit c2 = circuit_from_polynomial(parse_quadratic("2*x1*x2"), 3);
    int czs = 0;
    for (const Gate &g : c2.gates) {
        czs += g.kind == GateKind::CZ;
    }
    EXPECT_EQ(czs, 1);
    Circuit c3 = circuit_from_polynomial(QuadraticForm(3), 4);
    EXPECT_EQ(c3.m, 3);
    EXPECT_EQ(c3.gates.size(), 6u);
    EXPECT_THROW(circuit_from_polynomial(parse_quadratic("x1*x2"), 4), AperiodicError);
}

TEST(Clifford, RoundTrip) {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 100; it++) {
        u64 d = 2 + rng() % 7;
        int n = 1 + static_cast<int>(rng() % 4);
        QuadraticForm S = random_periodic_quadratic(d, n, rng);
        auto [T, L] = phase_polynomial(normalize(circuit_from_polynomial(S, d)));
        // xi_d has order 2d for even d and d for odd d
        const u64 M = d % 2 == 0 ? 2 * d : d;
        EXPECT_EQ(T.reduced(M), S.reduced(M)) << format_polynomial(S);
    }
}

TEST(Clifford, AmplitudeExamples) {
    EXPECT_EQ(amplitude(sandwich(3, 1, {}), {0}, {0}), CN(1));
    EXPECT_EQ(amplitude(sandwich(2, 1, {{GateKind::G, {0}, 1}}), {0}, {0}),
              (CN(1) + zeta(4, 1)).scaled(mpq_class(1, 2)));
    EXPECT_EQ(amplitude(sandwich(3, 1, {{GateKind::Z, {0}, 1}}), {0}, {0}), CN(0));
}

TEST(Clifford, StatevectorExamples) {
    Circuit f{2, 1, {}};
    f.add(GateKind::F, {0});
    CN h = SurdMonomial::sqrt_of(2).inverse().to_cyclotomic();
    EXPECT_EQ(statevector(f, {0}), (std::vector<CN>{h, h}));

    Circuit g{3, 1, {}};
    g.add(GateKind::G, {0});
    // xi_3 = zeta_6^4
    EXPECT_EQ(statevector(g, {1}), (std::vector<CN>{CN(0), zeta(6, 4), CN(0)}));

    Circuit z{3, 1, {}};
    z.add(GateKind::Z, {0});
    EXPECT_EQ(statevector(z, {2}), (std::vector<CN>{CN(0), CN(0), zeta(3, 2)}));

    Circuit big{4, 7, {}};
    EXPECT_THROW(statevector(big, std::vector<u64>(7, 0)), BudgetExceeded);
}

TEST(Clifford, AmplitudeMatchesStatevector) {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 60; it++) {
        u64 d = 2 + rng() % 5;
        int m = 1 + static_cast<int>(rng() % 3);
        Circuit c = random_clifford_circuit(d, m, static_cast<int>(rng() % 16), rng);
        NormalizedCircuit nc = normalize(c);
        std::vector<u64> a = random_digits(d, m, rng);
        auto sv = statevector(c, a);
        for (u64 idx = 0; idx < sv.size(); idx++) {
            ASSERT_EQ(amplitude(nc, a, digits_of(idx, d, m)), sv[idx]) << format_circuit(c);
        }
    }
}

TEST(Clifford, ProbabilityExamples) {
    EXPECT_EQ(probability_marginal(sandwich(2, 1, {}), {0}, {0}), 1);
    NormalizedCircuit four = sandwich(3, 1, {{GateKind::F, {0}, 1}});
    for (u64 b = 0; b < 3; b++) {
        EXPECT_EQ(probability_marginal(four, {0}, {b}), mpq_class(1, 3));
    }
    NormalizedCircuit cz = sandwich(2, 2, {{GateKind::CZ, {0, 1}, 1}});
    auto sv = statevector(cz, {0, 0});
    mpq_class p0 = 0;
    for (u64 idx = 0; idx < 2; idx++) {
        p0 += *(sv[idx] * sv[idx].conj()).as_rational();
    }
    EXPECT_EQ(probability_marginal(cz, {0, 0}, {0}), p0);
    EXPECT_EQ(p0, mpq_class(1, 2));
}

TEST(Clifford, MarginalsMatchStatevector) {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 25; it++) {
        u64 d = 2 + rng() % 4;
        int m = 1 + static_cast<int>(rng() % 3);
        Circuit c = random_clifford_circuit(d, m, static_cast<int>(rng() % 14), rng);
        NormalizedCircuit nc = normalize(c);
        std::vector<u64> a = random_digits(d, m, rng);
        auto sv = statevector(c, a);
        for (int k = 1; k <= m; k++) {
            u64 outcomes = ipow(d, static_cast<unsigned>(k)), rest = ipow(d, static_cast<unsigned>(m - k));
            mpq_class total = 0;
            for (u64 o = 0; o < outcomes; o++) {
                mpq_class expect = 0;
                for (u64 t = 0; t < rest; t++) {
                    const CN &v = sv[o * rest + t];
                    expect += *(v * v.conj()).as_rational();
                }
                mpq_class p = probability_marginal(nc, a, digits_of(o, d, k));
                ASSERT_EQ(p, expect) << format_circuit(c);
                total += p;
            }
            EXPECT_EQ(total, 1);
        }
    }
}

TEST(Clifford, SamplingIsDeterministic) {
    NormalizedCircuit id = normalize(Circuit{3, 1, {}});
    for (const auto &s : sample(id, {2}, 1, 50, 3)) {
        EXPECT_EQ(s, (std::vector<u64>{2}));
    }
    std::mt19937_64 rng(10);
    Circuit c = random_clifford_circuit(3, 2, 10, rng);
    NormalizedCircuit nc = normalize(c);
    EXPECT_EQ(sample(nc, {0, 1}, 2, 40, 99), sample(nc, {0, 1}, 2, 40, 99));
}

TEST(Clifford, GateRelations) {
    for (u64 d = 2; d <= 8; d++) {
        auto checks = verify_gate_relations(d);
        EXPECT_GE(checks.size(), 10u);
        for (const auto &c : checks) {
            EXPECT_TRUE(c.holds) << "d=" << d << " " << c.name;
        }
    }
}

TEST(Clifford, InvalidCircuitsAreRejected) {
    Circuit c{3, 2, {}};
    c.add(GateKind::CZ, {0, 0});
    EXPECT_THROW(c.validate(), std::invalid_argument);
    Circuit h{3, 1, {}};
    h.add(GateKind::H, {0});
    EXPECT_THROW(normalize(h), std::invalid_argument);
    EXPECT_THROW(amplitude(normalize(Circuit{3, 1, {}}), {3}, {0}), std::invalid_argument);
}

}  // namespace
}  // namespace hg
