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
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfgauss/clifford.hpp"
#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/oracle.hpp"
#include "halfgauss/polynomial.hpp"

namespace hg {

/// 2^{k-1} | alpha_ii, 2^k | alpha_ij (i < j), 2^k | beta_i.
inline bool check_periodicity_2k(const QuadraticForm &f, int k) {
    if (k < 1 || k > 60) {
        throw std::invalid_argument("check_periodicity_2k: k must lie in [1, 60]");
    }
    const i64 full = i64{1} << k, half = i64{1} << (k - 1);
    for (const auto &[ij, v] : f.alpha) {
        if (v % (ij.first == ij.second ? half : full) != 0) {
            return false;
        }
    }
    for (const auto &[i, v] : f.beta) {
        if (v % full != 0) {
            return false;
        }
    }
    return true;
}

/// Z_{1/2^k}(2, f): x over Z_2^n, phases omega_{2^{k+1}}^{f(x)}.
struct TwoPowerSum {
    int k = 0;
    IntPolynomial poly;
};

struct TwoPowerValue {
    CyclotomicNumber value;
    /// "half-gauss-reduction", "linear-product", "gap" or "brute-force".
    std::string path;
    bool exponential = false;
};

/// Evaluates by the fastest route the instance qualifies for; anything else
/// is summed term by term and marked exponential.
inline TwoPowerValue eval_two_power(const TwoPowerSum &s) {
    if (s.k < 0 || s.k > 60) {
        throw std::invalid_argument("eval_two_power: k must lie in [0, 60]");
    }
    const u64 M = u64{1} << (s.k + 1);
    const int n = s.poly.n;
    TwoPowerValue out;
    std::optional<QuadraticForm> q = s.poly.as_quadratic();
    if (q && s.k >= 1 && check_periodicity_2k(*q, s.k)) {
        // omega_{2^{k+1}}^{2^{k-1} f'} = i^{f'} = xi_2^{f'}
        const i64 div = i64{1} << (s.k - 1);
        QuadraticForm f = q->scaled(1);
        f.gamma0 = 0;
        for (auto &[ij, v] : f.alpha) {
            v /= div;
        }
        for (auto &[i, v] : f.beta) {
            v /= div;
        }
        SumValue z = eval_half_gauss(2, f, SignConvention::Default, false);
        out.value = (z.monomial * SurdMonomial::root(q->gamma0, static_cast<i64>(M))).to_cyclotomic();
        out.path = "half-gauss-reduction";
        return out;
    }
    IntPolynomial ml = s.poly.multilinear();
    if (ml.degree() <= 1) {
        // omega^gamma * prod_i (1 + omega^{beta_i})
        std::vector<i64> beta(n + 1, 0);
        i64 gamma = 0;
        for (const auto &[mono, c] : ml.terms) {
            if (mono.empty()) {
                gamma += c;
            } else {
                beta[mono[0]] += c;
            }
        }
        CyclotomicNumber v = CyclotomicNumber::root_of_unity(M, gamma);
        for (int i = 1; i <= n; i++) {
            v *= CyclotomicNumber(1) + CyclotomicNumber::root_of_unity(M, beta[i]);
        }
        out.value = v;
        out.path = "linear-product";
        return out;
    }
    if (q && s.k == 0) {
        out.value = CyclotomicNumber(mpq_class(gap2(*q)));
        out.path = "gap";
        return out;
    }
    out.value = CyclotomicNumber::from_counts(M, value_histogram(2, s.poly, M));
    out.path = "brute-force";
    out.exponential = true;
    return out;
}

/// Sandwich F^n, D^j, (F^dag)^n around a diagonal circuit, each gate
/// repeated j times.
inline Circuit diagonal_power_circuit(const Circuit &D, u64 j) {
    Circuit c{D.d, D.m, {}};
    for (int r = 0; r < D.m; r++) {
        c.add(GateKind::F, {r});
    }
    if (j > 0) {
        for (const Gate &g : D.gates) {
            c.add(g.kind, g.targets, g.repeat * j);
        }
    }
    for (int r = 0; r < D.m; r++) {
        c.add(GateKind::FDAG, {r});
    }
    return c;
}

inline void require_diagonal(const Circuit &D) {
    D.validate();
    for (const Gate &g : D.gates) {
        if (g.kind != GateKind::Z && g.kind != GateKind::G && g.kind != GateKind::CZ && g.kind != GateKind::CCZ) {
            throw std::invalid_argument(std::string("diagonal circuit may not contain ") + gate_name(g.kind));
        }
    }
}

/// The cubic xi-exponent of a diagonal circuit over {Z, G, CZ, CCZ}.
inline IntPolynomial diagonal_phase_polynomial(const Circuit &D) {
    require_diagonal(D);
    IntPolynomial f(D.m);
    for (const Gate &g : D.gates) {
        const i64 r = static_cast<i64>(g.repeat);
        IntPolynomial::Monomial mono;
        for (int t : g.targets) {
            mono.push_back(t + 1);
        }
        switch (g.kind) {
            case GateKind::G: f.add({mono[0], mono[0]}, r); break;
            default: f.add(mono, 2 * r); break;
        }
    }
    f.n = D.m;
    return f;
}

/// The counting modulus of the zero-count demo: d for odd d, 2d for even d.
inline u64 degree3_count_modulus(u64 d) {
    return d % 2 == 0 ? 2 * d : d;
}

/// #{x : f(x) = k} for the phase polynomial f of D, recovered from the
/// amplitudes <0|(F^dag)^n D^j F^n|0> by an inverse Fourier transform.
inline u64 degree3_zero_count_demo(const Circuit &D, i64 k) {
    require_diagonal(D);
    const u64 d = D.d;
    const u64 M = degree3_count_modulus(d);
    const u64 N = 2 * d;
    const u64 e = xi_exponent(d, SignConvention::Default);
    std::vector<u64> zero(D.m, 0);
    require_budget(d, D.m, "degree3_zero_count_demo");
    CyclotomicNumber acc;
    for (u64 j = 0; j < M; j++) {
        CyclotomicNumber amp = statevector(diagonal_power_circuit(D, j), zero, brute_budget())[0];
        u64 ph = mulmod(mulmod(e, j, N), mod(k, N), N);
        acc += CyclotomicNumber::root_of_unity(N, -static_cast<i64>(ph)) * amp;
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), d, static_cast<unsigned long>(D.m - 1));
    mpq_class factor = d % 2 == 0 ? mpq_class(scale, 2) : mpq_class(scale);
    factor.canonicalize();
    auto r = acc.scaled(factor).as_rational();
    if (!r || r->get_den() != 1 || *r < 0) {
        throw ConsistencyFault("degree3_zero_count_demo: Fourier inversion gave a non-count");
    }
    return r->get_num().get_ui();
}

/// Rewrites CZ, CCZ and CX over {H, Z, CS}.
inline Circuit translate_to_hzcs(const Circuit &c) {
    if (c.d != 2) {
        throw std::invalid_argument("translate_to_hzcs: qubit circuits only");
    }
    c.validate();
    Circuit out{2, c.m, {}};
    auto cz = [&](int a, int b) { out.add(GateKind::CS, {a, b}, 2); };
    auto cx = [&](int a, int b) {
        out.add(GateKind::H, {b});
        cz(a, b);
        out.add(GateKind::H, {b});
    };
    for (const Gate &g : c.gates) {
        for (u64 rep = 0; rep < g.repeat; rep++) {
            switch (g.kind) {
                case GateKind::H:
                case GateKind::Z:
                case GateKind::CS: out.add(g.kind, g.targets); break;
                case GateKind::CZ: cz(g.targets[0], g.targets[1]); break;
                case GateKind::CX: cx(g.targets[0], g.targets[1]); break;
                case GateKind::CCZ: {
                    int a = g.targets[0], b = g.targets[1], t = g.targets[2];
                    out.add(GateKind::CS, {b, t});
                    cx(a, b);
                    out.add(GateKind::CS, {b, t}, 3);
                    cx(a, b);
                    out.add(GateKind::CS, {a, t});
                    break;
                }
                default:
                    throw std::invalid_argument(std::string("translate_to_hzcs: unsupported gate ") +
                                                gate_name(g.kind));
            }
        }
    }
    return out;
}

/// Columns U|a> of a small circuit's unitary.
inline std::vector<std::vector<CyclotomicNumber>> circuit_unitary(const Circuit &c) {
    u64 dim = require_budget(c.d, c.m, "circuit_unitary");
    std::vector<std::vector<CyclotomicNumber>> cols;
    for (u64 idx = 0; idx < dim; idx++) {
        std::vector<u64> a(c.m);
        u64 t = idx;
        for (int r = c.m - 1; r >= 0; r--) {
            a[r] = t % c.d;
            t /= c.d;
        }
        cols.push_back(statevector(c, a, dim));
    }
    return cols;
}

inline bool same_unitary(const Circuit &x, const Circuit &y) {
    return circuit_unitary(x) == circuit_unitary(y);
}

/// Random circuit over {H, Z, CZ, CCZ} on m qubits.
inline Circuit random_hzccz_circuit(int m, int gates, std::mt19937_64 &rng) {
    Circuit c{2, m, {}};
    for (int i = 0; i < gates; i++) {
        int kind = static_cast<int>(rng() % (m >= 3 ? 4 : m == 2 ? 3 : 2));
        std::vector<int> regs(m);
        std::iota(regs.begin(), regs.end(), 0);
        std::shuffle(regs.begin(), regs.end(), rng);
        switch (kind) {
            case 0: c.add(GateKind::H, {regs[0]}); break;
            case 1: c.add(GateKind::Z, {regs[0]}); break;
            case 2: c.add(GateKind::CZ, {regs[0], regs[1]}); break;
            default: c.add(GateKind::CCZ, {regs[0], regs[1], regs[2]}); break;
        }
    }
    return c;
}

/// Exact checks of the {H, Z, CS} identities, the CCZ gadget and a random
/// rebuilt circuit.
inline std::vector<RelationCheck> verify_gadgets(u64 seed = 1) {
    std::vector<RelationCheck> out;
    auto add = [&](std::string name, const Circuit &a, const Circuit &b) {
        out.push_back({std::move(name), same_unitary(a, b)});
    };
    Circuit cz{2, 2, {}}, cs2{2, 2, {}};
    cz.add(GateKind::CZ, {0, 1});
    cs2.add(GateKind::CS, {0, 1}).add(GateKind::CS, {0, 1});
    add("CZ = (CS)^2", cz, cs2);

    // C(S^dag) = diag(1, 1, 1, -i)
    Circuit cs3{2, 2, {}};
    cs3.add(GateKind::CS, {0, 1}).add(GateKind::CS, {0, 1}).add(GateKind::CS, {0, 1});
    auto csdag = circuit_unitary(Circuit{2, 2, {}});
    csdag[3][3] = CyclotomicNumber::root_of_unity(4, 3);
    out.push_back({"C(S^dag) = (CS)^3", circuit_unitary(cs3) == csdag});

    Circuit cx{2, 2, {}}, hczh{2, 2, {}};
    cx.add(GateKind::CX, {0, 1});
    hczh.add(GateKind::H, {1}).add(GateKind::CZ, {0, 1}).add(GateKind::H, {1});
    add("CX_12 = H_2 CZ_12 H_2", cx, hczh);

    Circuit ccz{2, 3, {}}, gadget{2, 3, {}};
    ccz.add(GateKind::CCZ, {0, 1, 2});
    gadget.add(GateKind::CS, {1, 2})
        .add(GateKind::CX, {0, 1})
        .add(GateKind::CS, {1, 2}, 3)
        .add(GateKind::CX, {0, 1})
        .add(GateKind::CS, {0, 2});
    add("CCZ = CS_23 CX_12 C(S^dag)_23 CX_12 CS_13", ccz, gadget);

    std::mt19937_64 rng(seed);
    Circuit rnd = random_hzccz_circuit(3, 12, rng);
    add("random {H,Z,CZ,CCZ} circuit = its {H,Z,CS} rebuild", rnd, translate_to_hzcs(rnd));
    return out;
}

struct ClassificationRow {
    std::string cell;
    bool periodic = false;
    int degree = 0;
    int k = 0;
    int n = 0;
    std::string expected;
    std::string path;
    bool exponential = false;
    double seconds = 0;
    std::string value;

    /// A tractable cell ran on a polynomial path, a hard one on brute force.
    bool consistent() const { return exponential == (expected != "FP"); }
};

/// Representative instances of each classification cell with the path each one took.
inline std::vector<ClassificationRow> classification_evidence(int max_n, u64 seed = 7) {
    if (max_n < 3 || max_n > 20) {
        throw std::invalid_argument("classification_evidence: max_n must lie in [3, 20]");
    }
    std::mt19937_64 rng(seed);
    const int n = max_n;
    auto rnd = [&](i64 bound) { return static_cast<i64>(rng() % static_cast<u64>(bound)); };
    auto linear = [&](i64 mult, i64 bound) {
        IntPolynomial p(n);
        for (int i = 1; i <= n; i++) {
            p.add({i}, mult * (1 + rnd(bound)));
        }
        p.n = n;
        return p;
    };
    auto quadratic = [&](i64 diag_mult, i64 cross_mult, i64 bound) {
        IntPolynomial p = linear(cross_mult, bound);
        for (int i = 1; i <= n; i++) {
            p.add({i, i}, diag_mult * rnd(bound));
            for (int j = i + 1; j <= n; j++) {
                p.add({i, j}, cross_mult * rnd(bound));
            }
        }
        p.n = n;
        return p;
    };
    auto cubic = [&](i64 mult, i64 bound) {
        IntPolynomial p = quadratic(mult, mult, bound);
        for (int i = 1; i + 2 <= n; i++) {
            p.add({i, i + 1, i + 2}, mult * (1 + rnd(bound)));
        }
        p.n = n;
        return p;
    };
    struct Spec {
        const char *cell;
        bool periodic;
        int degree;
        int k;
        const char *expected;
        IntPolynomial poly;
    };
    std::vector<Spec> specs;
    specs.push_back({"periodic, deg 1, k = 0", true, 1, 0, "FP", linear(1, 5)});
    specs.push_back({"periodic, deg 1, k = 2", true, 1, 2, "FP", linear(4, 5)});
    specs.push_back({"periodic, deg 2, k = 0", true, 2, 0, "FP", quadratic(1, 1, 5)});
    specs.push_back({"periodic, deg 2, k = 1", true, 2, 1, "FP", quadratic(1, 2, 5)});
    specs.push_back({"periodic, deg 2, k = 3", true, 2, 3, "FP", quadratic(4, 8, 5)});
    specs.push_back({"periodic, deg 3, k = 1", true, 3, 1, "#P-hard", cubic(2, 5)});
    specs.push_back({"aperiodic, deg 1, k = 3", false, 1, 3, "FP", linear(1, 15)});
    {
        IntPolynomial p = quadratic(1, 2, 5);
        p.add({1, 2}, 1);
        specs.push_back({"aperiodic, deg 2, k = 1", false, 2, 1, "#P-hard", p});
    }
    specs.push_back({"aperiodic, deg 3, k = 1", false, 3, 1, "#P-hard", cubic(1, 5)});
    std::vector<ClassificationRow> rows;
    for (auto &s : specs) {
        ClassificationRow r;
        r.cell = s.cell;
        r.periodic = s.periodic;
        r.degree = s.degree;
        r.k = s.k;
        r.n = n;
        r.expected = s.expected;
        auto t0 = std::chrono::steady_clock::now();
        TwoPowerValue v = eval_two_power({s.k, s.poly});
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.path = v.path;
        r.exponential = v.exponential;
        r.value = to_string(v.value);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace hg
