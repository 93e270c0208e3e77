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

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/gauss.hpp"
#include "halfgauss/oracle.hpp"
#include "halfgauss/polynomial.hpp"

namespace hg {

enum class GateKind { X, Y, Z, F, FDAG, G, CZ, H, S, SDAG, CS, CX, CCZ };

inline const char *gate_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::F: return "F";
        case GateKind::FDAG: return "FDAG";
        case GateKind::G: return "G";
        case GateKind::CZ: return "CZ";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::SDAG: return "SDAG";
        case GateKind::CS: return "CS";
        case GateKind::CX: return "CX";
        case GateKind::CCZ: return "CCZ";
    }
    return "?";
}

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::CZ:
        case GateKind::CS:
        case GateKind::CX: return 2;
        case GateKind::CCZ: return 3;
        default: return 1;
    }
}

inline bool is_qubit_only(GateKind k) {
    return k == GateKind::H || k == GateKind::S || k == GateKind::SDAG || k == GateKind::CS || k == GateKind::CX;
}

struct Gate {
    GateKind kind = GateKind::Z;
    std::vector<int> targets;
    u64 repeat = 1;

    friend bool operator==(const Gate &a, const Gate &b) {
        return a.kind == b.kind && a.targets == b.targets && a.repeat == b.repeat;
    }
};

/// Gates in time order (the first gate acts first).
struct Circuit {
    u64 d = 2;
    int m = 1;
    std::vector<Gate> gates;

    void validate() const {
        if (d < 2) {
            throw std::invalid_argument("circuit dimension must be at least 2");
        }
        if (m < 1) {
            throw std::invalid_argument("circuit needs at least one register");
        }
        for (const Gate &g : gates) {
            if (static_cast<int>(g.targets.size()) != gate_arity(g.kind)) {
                throw std::invalid_argument(std::string(gate_name(g.kind)) + " takes " +
                                            std::to_string(gate_arity(g.kind)) + " register(s)");
            }
            for (size_t a = 0; a < g.targets.size(); a++) {
                if (g.targets[a] < 0 || g.targets[a] >= m) {
                    throw std::invalid_argument("register " + std::to_string(g.targets[a]) + " outside [0, " +
                                                std::to_string(m) + ")");
                }
                for (size_t b = 0; b < a; b++) {
                    if (g.targets[a] == g.targets[b]) {
                        throw std::invalid_argument(std::string(gate_name(g.kind)) + " needs distinct registers");
                    }
                }
            }
            if (g.repeat == 0) {
                throw std::invalid_argument("repeat count must be positive");
            }
            if (is_qubit_only(g.kind) && d != 2) {
                throw std::invalid_argument(std::string(gate_name(g.kind)) + " is defined only for d = 2");
            }
        }
    }

    Circuit &add(GateKind k, std::vector<int> t, u64 r = 1) {
        gates.push_back({k, std::move(t), r});
        return *this;
    }
};

/// (F^dag)^{m} C' F^{m} with C' over {Z, G, F, CZ}. `inner` holds C'.
struct NormalizedCircuit {
    u64 d = 2;
    int m = 1;
    std::vector<Gate> inner;
    int h = 0;
    int n = 0;

    /// The whole sandwich as a plain circuit.
    Circuit full() const {
        Circuit c{d, m, {}};
        for (int r = 0; r < m; r++) {
            c.add(GateKind::F, {r});
        }
        c.gates.insert(c.gates.end(), inner.begin(), inner.end());
        for (int r = 0; r < m; r++) {
            c.add(GateKind::FDAG, {r});
        }
        return c;
    }

    int internal_f(int reg) const {
        int k = 0;
        for (const Gate &g : inner) {
            if (g.kind == GateKind::F && g.targets[0] == reg) {
                k++;
            }
        }
        return k;
    }
};

struct Labeling {
    /// Segment variables (1-indexed) of each register in time order.
    std::vector<std::vector<int>> segments;
    std::vector<int> inceptive;
    std::vector<int> terminal;
    std::vector<int> internal;
};

class ConsistencyFault : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void compile_gate(const Gate &g, u64 d, std::vector<Gate> &out) {
    const int q = g.targets[0];
    auto emit = [&](GateKind k, u64 r) {
        if (r != 0) {
            if (k == GateKind::F) {
                for (u64 i = 0; i < r; i++) {
                    out.push_back({GateKind::F, {q}, 1});
                }
            } else {
                out.push_back({k, {q}, r});
            }
        }
    };
    switch (g.kind) {
        case GateKind::Z: emit(GateKind::Z, g.repeat % d); break;
        case GateKind::G: emit(GateKind::G, g.repeat % (2 * d)); break;
        case GateKind::F: emit(GateKind::F, g.repeat % 4); break;
        case GateKind::FDAG: emit(GateKind::F, (3 * (g.repeat % 4)) % 4); break;
        case GateKind::CZ:
            if (g.repeat % d != 0) {
                out.push_back({GateKind::CZ, g.targets, g.repeat % d});
            }
            break;
        case GateKind::X: {
            // X = F^{-1} Z F
            u64 r = g.repeat % d;
            if (r != 0) {
                emit(GateKind::F, 1);
                emit(GateKind::Z, r);
                emit(GateKind::F, 3);
            }
            break;
        }
        case GateKind::Y: {
            // Y^{-1} = G X G^{-1}, so Y^r = G X^{d-r} G^{-1}
            u64 r = g.repeat % d;
            if (r != 0) {
                emit(GateKind::G, 2 * d - 1);
                emit(GateKind::F, 1);
                emit(GateKind::Z, d - r);
                emit(GateKind::F, 3);
                emit(GateKind::G, 1);
            }
            break;
        }
        default:
            throw std::invalid_argument(std::string("normalize: ") + gate_name(g.kind) +
                                        " is not a Clifford generator of this module");
    }
}

// Drops every run of four F gates on a register with nothing else on that
// register in between.
inline std::vector<Gate> cancel_f4(const std::vector<Gate> &gates, int m) {
    std::vector<Gate> out;
    std::vector<char> dead;
    std::vector<std::vector<size_t>> run(m);
    for (const Gate &g : gates) {
        if (g.kind == GateKind::F) {
            auto &r = run[g.targets[0]];
            if (r.size() == 3) {
                for (size_t pos : r) {
                    dead[pos] = 1;
                }
                r.clear();
                continue;
            }
            r.push_back(out.size());
            out.push_back(g);
            dead.push_back(0);
            continue;
        }
        for (int t : g.targets) {
            run[t].clear();
        }
        out.push_back(g);
        dead.push_back(0);
    }
    std::vector<Gate> kept;
    for (size_t i = 0; i < out.size(); i++) {
        if (!dead[i]) {
            kept.push_back(out[i]);
        }
    }
    return kept;
}

inline NormalizedCircuit make_normalized(u64 d, int m, std::vector<Gate> inner) {
    NormalizedCircuit nc;
    nc.d = d;
    nc.m = m;
    nc.inner = std::move(inner);
    int f = 0;
    for (const Gate &g : nc.inner) {
        f += g.kind == GateKind::F;
    }
    nc.h = 2 * m + f;
    nc.n = nc.h - m;
    return nc;
}

}  // namespace detail

/// Rewrites c as (F^dag)^m C' F^m with C' over {Z, G, F, CZ}; the unitary,
/// global phase included, is unchanged.
inline NormalizedCircuit normalize(const Circuit &c) {
    c.validate();
    std::vector<Gate> inner;
    // C' = F U F^dag, written in time order as F^3, U, F
    for (int r = 0; r < c.m; r++) {
        for (int i = 0; i < 3; i++) {
            inner.push_back({GateKind::F, {r}, 1});
        }
    }
    for (const Gate &g : c.gates) {
        detail::compile_gate(g, c.d, inner);
    }
    for (int r = 0; r < c.m; r++) {
        inner.push_back({GateKind::F, {r}, 1});
    }
    return detail::make_normalized(c.d, c.m, detail::cancel_f4(inner, c.m));
}

/// Same circuit with F^4 appended to every register that has no internal F.
inline NormalizedCircuit pad_internal_f(const NormalizedCircuit &nc) {
    std::vector<Gate> inner = nc.inner;
    bool changed = false;
    for (int r = 0; r < nc.m; r++) {
        if (nc.internal_f(r) == 0) {
            for (int i = 0; i < 4; i++) {
                inner.push_back({GateKind::F, {r}, 1});
            }
            changed = true;
        }
    }
    if (!changed) {
        return nc;
    }
    return detail::make_normalized(nc.d, nc.m, std::move(inner));
}

/// S_C and the segment labels of a normalized circuit.
inline std::pair<QuadraticForm, Labeling> phase_polynomial(const NormalizedCircuit &nc) {
    QuadraticForm S(nc.n);
    Labeling L;
    L.segments.resize(nc.m);
    std::vector<int> cur(nc.m);
    int next = 0;
    for (int r = 0; r < nc.m; r++) {
        cur[r] = ++next;
        L.segments[r].push_back(cur[r]);
    }
    for (const Gate &g : nc.inner) {
        const i64 rep = static_cast<i64>(g.repeat);
        switch (g.kind) {
            case GateKind::F: {
                int r = g.targets[0];
                int fresh = ++next;
                S.add_alpha(cur[r], fresh, 2);
                cur[r] = fresh;
                L.segments[r].push_back(fresh);
                break;
            }
            case GateKind::Z: S.add_beta(cur[g.targets[0]], 2 * rep); break;
            case GateKind::G: S.add_alpha(cur[g.targets[0]], cur[g.targets[0]], rep); break;
            case GateKind::CZ: S.add_alpha(cur[g.targets[0]], cur[g.targets[1]], 2 * rep); break;
            default: throw std::invalid_argument("phase_polynomial: circuit is not normalized");
        }
    }
    if (next != nc.n) {
        throw std::logic_error("phase_polynomial: segment count disagrees with h - m");
    }
    for (int r = 0; r < nc.m; r++) {
        L.inceptive.push_back(L.segments[r].front());
        L.terminal.push_back(L.segments[r].back());
        for (size_t k = 1; k + 1 < L.segments[r].size(); k++) {
            L.internal.push_back(L.segments[r][k]);
        }
    }
    std::sort(L.internal.begin(), L.internal.end());
    return {S, L};
}

/// A sandwich circuit whose phase polynomial is S (constant term ignored).
/// For odd d, xi_d has order d and S is matched modulo d.
inline Circuit circuit_from_polynomial(const QuadraticForm &S, u64 d) {
    if (!check_periodicity(d, S)) {
        throw AperiodicError("circuit_from_polynomial: cross and linear coefficients must be even");
    }
    // r with 2r = v: v/2 mod d for even d, v (d+1)/2 mod d for odd d
    auto half = [&](i64 v) { return d % 2 == 0 ? mod(v / 2, d) : mulmod(mod(v, d), (d + 1) / 2, d); };
    Circuit c{d, std::max(S.n, 1), {}};
    for (int r = 0; r < c.m; r++) {
        c.add(GateKind::F, {r});
    }
    for (int i = 1; i <= S.n; i++) {
        u64 a = mod(S.a(i, i), 2 * d);
        if (a) {
            c.add(GateKind::G, {i - 1}, a);
        }
    }
    for (const auto &[ij, v] : S.alpha) {
        if (ij.first != ij.second) {
            if (u64 r = half(v)) {
                c.add(GateKind::CZ, {ij.first - 1, ij.second - 1}, r);
            }
        }
    }
    for (const auto &[i, v] : S.beta) {
        if (u64 r = half(v)) {
            c.add(GateKind::Z, {i - 1}, r);
        }
    }
    for (int r = 0; r < c.m; r++) {
        c.add(GateKind::FDAG, {r});
    }
    return c;
}

/// d^{-h/2}
inline SurdMonomial inverse_sqrt_power(u64 d, int h) {
    SurdMonomial s = SurdMonomial::sqrt_of(d).inverse();
    SurdMonomial out;
    for (int i = 0; i < h; i++) {
        out *= s;
    }
    return out;
}

inline void check_digits(const std::vector<u64> &v, u64 d, size_t len, const char *what) {
    if (v.size() != len) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(len) + " digits, got " +
                                    std::to_string(v.size()));
    }
    for (u64 x : v) {
        if (x >= d) {
            throw std::invalid_argument(std::string(what) + ": digit " + std::to_string(x) + " outside Z_" +
                                        std::to_string(d));
        }
    }
}

/// The exponent S_C + 2 a.x_I + 2 (d - b).x_T of the amplitude <b|C|a>.
inline QuadraticForm amplitude_polynomial(const NormalizedCircuit &nc, const std::vector<u64> &a,
                                          const std::vector<u64> &b) {
    auto [S, L] = phase_polynomial(nc);
    for (int r = 0; r < nc.m; r++) {
        if (a[r]) {
            S.add_beta(L.inceptive[r], 2 * static_cast<i64>(a[r]));
        }
        if (b[r]) {
            S.add_beta(L.terminal[r], 2 * static_cast<i64>(nc.d - b[r]));
        }
    }
    return S;
}

/// <b|C|a> as a monomial.
inline SurdMonomial amplitude_monomial(const NormalizedCircuit &nc, const std::vector<u64> &a,
                                       const std::vector<u64> &b) {
    check_digits(a, nc.d, nc.m, "input");
    check_digits(b, nc.d, nc.m, "output");
    SumValue z = eval_half_gauss(nc.d, amplitude_polynomial(nc, a, b), SignConvention::Default, false);
    return z.monomial * inverse_sqrt_power(nc.d, nc.h);
}

inline CyclotomicNumber amplitude(const NormalizedCircuit &nc, const std::vector<u64> &a, const std::vector<u64> &b) {
    return amplitude_monomial(nc, a, b).to_cyclotomic();
}

/// P(b | a) for the first k = b.size() registers measured.
inline mpq_class probability_marginal(const NormalizedCircuit &nc0, const std::vector<u64> &a,
                                      const std::vector<u64> &b) {
    check_digits(a, nc0.d, nc0.m, "input");
    const int k = static_cast<int>(b.size());
    if (k < 1 || k > nc0.m) {
        throw std::invalid_argument("measure between 1 and m registers");
    }
    check_digits(b, nc0.d, b.size(), "outcome");
    NormalizedCircuit nc = pad_internal_f(nc0);
    const u64 d = nc.d;
    auto [S, L] = phase_polynomial(nc);
    const int n = nc.n;
    // y-copy: index n + i, except unmeasured terminal segments shared with x
    std::vector<int> ymap(n + 1);
    for (int i = 1; i <= n; i++) {
        ymap[i] = n + i;
    }
    for (int r = k; r < nc.m; r++) {
        ymap[L.terminal[r]] = L.terminal[r];
    }
    std::vector<int> compact(2 * n + 1, 0);
    int vars = 0;
    for (int i = 1; i <= n; i++) {
        compact[i] = ++vars;
    }
    for (int i = 1; i <= n; i++) {
        if (ymap[i] > n) {
            compact[ymap[i]] = ++vars;
        }
    }
    QuadraticForm phi(vars);
    const i64 dd = static_cast<i64>(d);
    for (const auto &[ij, v] : S.alpha) {
        phi.add_alpha(compact[ij.first], compact[ij.second], v);
        phi.add_alpha(compact[ymap[ij.first]], compact[ymap[ij.second]], -v);
    }
    for (const auto &[i, v] : S.beta) {
        phi.add_beta(compact[i], v);
        phi.add_beta(compact[ymap[i]], -v);
    }
    for (int r = 0; r < nc.m; r++) {
        i64 ar = static_cast<i64>(a[r]);
        if (ar) {
            phi.add_beta(compact[L.inceptive[r]], 2 * ar);
            phi.add_beta(compact[ymap[L.inceptive[r]]], -2 * ar);
        }
    }
    for (int r = 0; r < k; r++) {
        i64 br = static_cast<i64>(b[r]);
        if (br) {
            phi.add_beta(compact[L.terminal[r]], 2 * (dd - br));
            phi.add_beta(compact[ymap[L.terminal[r]]], -2 * (dd - br));
        }
    }
    SumValue z = eval_half_gauss(d, phi, SignConvention::Default, false);
    SurdMonomial p = z.monomial;
    if (!p.is_zero()) {
        if (p.s != 1 || (p.t.den != 1 && p.t.den != 2)) {
            throw ConsistencyFault("probability_marginal: value " + p.pretty() + " is not rational");
        }
    }
    mpq_class value = p.is_zero() ? mpq_class(0) : (p.t.den == 2 ? mpq_class(-p.r) : p.r);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), d, static_cast<unsigned long>(n + k));
    value /= scale;
    value.canonicalize();
    if (value < 0 || value > 1) {
        throw ConsistencyFault("probability_marginal: value " + value.get_str() + " outside [0, 1]");
    }
    return value;
}

/// Draws measurement outcomes for the first k registers from the Born rule
/// with exact rational thresholds.
class Sampler {
   public:
    Sampler(NormalizedCircuit nc, std::vector<u64> a, int k) : nc_(pad_internal_f(nc)), a_(std::move(a)), k_(k) {
        check_digits(a_, nc_.d, nc_.m, "input");
        if (k < 1 || k > nc_.m) {
            throw std::invalid_argument("measure between 1 and m registers");
        }
    }

    const mpq_class &prob(const std::vector<u64> &prefix) {
        auto it = cache_.find(prefix);
        if (it != cache_.end()) {
            return it->second;
        }
        mpq_class p = prefix.empty() ? mpq_class(1) : probability_marginal(nc_, a_, prefix);
        return cache_.emplace(prefix, p).first->second;
    }

    std::vector<u64> draw(std::mt19937_64 &rng) {
        std::vector<u64> prefix;
        mpz_class two64 = mpz_class(1) << 64;
        for (int j = 0; j < k_; j++) {
            mpq_class total = prob(prefix);
            // u / 2^64 < cum / total
            mpz_class u(std::to_string(rng()));
            mpq_class cum = 0;
            u64 chosen = nc_.d - 1;
            for (u64 v = 0; v < nc_.d; v++) {
                prefix.push_back(v);
                cum += prob(prefix);
                prefix.pop_back();
                if (mpq_class(u) * total < cum * two64) {
                    chosen = v;
                    break;
                }
            }
            prefix.push_back(chosen);
        }
        return prefix;
    }

   private:
    NormalizedCircuit nc_;
    std::vector<u64> a_;
    int k_;
    std::map<std::vector<u64>, mpq_class> cache_;
};

inline std::vector<std::vector<u64>> sample(const NormalizedCircuit &nc, const std::vector<u64> &a, int k,
                                            u64 count, u64 seed) {
    Sampler s(nc, a, k);
    std::mt19937_64 rng(seed);
    std::vector<std::vector<u64>> out;
    out.reserve(count);
    for (u64 i = 0; i < count; i++) {
        out.push_back(s.draw(rng));
    }
    return out;
}

inline constexpr u64 kStatevectorBudget = 4096;

/// Dense exact state C|a>, register 0 the most significant digit. Values
/// live in Z[x]/(x^{2d} - 1), x = zeta_{2d}, with the 1/sqrt(d) factors of
/// the Fourier gates counted separately.
class StateVector {
   public:
    StateVector(u64 d, int m, const std::vector<u64> &a, u64 budget = kStatevectorBudget) : d_(d), m_(m) {
        long double size = 1;
        for (int i = 0; i < m; i++) {
            size *= static_cast<long double>(d);
        }
        if (size > static_cast<long double>(budget)) {
            throw BudgetExceeded("statevector", size, budget);
        }
        dim_ = static_cast<u64>(size + 0.5L);
        N_ = 2 * d;
        amp_.assign(dim_, std::vector<mpz_class>(N_));
        check_digits(a, d, m, "input");
        u64 idx = 0;
        for (int r = 0; r < m; r++) {
            idx = idx * d + a[r];
        }
        amp_[idx][0] = 1;
        stride_.resize(m);
        u64 s = 1;
        for (int r = m - 1; r >= 0; r--) {
            stride_[r] = s;
            s *= d;
        }
    }

    void apply(const Gate &g) {
        const u64 d = d_;
        const int q = g.targets[0];
        const u64 e = xi_exponent(d, SignConvention::Default);
        switch (g.kind) {
            case GateKind::X: permute(q, [&](u64 k) { return (k + g.repeat) % d; }); break;
            case GateKind::Y:
                for (u64 i = 0; i < g.repeat % d; i++) {
                    // Y|k> = xi^{1-2k} |k-1>
                    diagonal1(q, [&](u64 k) { return mulmod(e, mod(1 - 2 * static_cast<i64>(k), N_), N_); });
                    permute(q, [&](u64 k) { return (k + d - 1) % d; });
                }
                break;
            case GateKind::Z: diagonal1(q, [&](u64 k) { return mulmod(2 * (g.repeat % d), k, N_); }); break;
            case GateKind::G:
                diagonal1(q, [&](u64 k) { return mulmod(e, mulmod(g.repeat % N_, k * k, N_), N_); });
                break;
            case GateKind::F:
            case GateKind::H:
                for (u64 i = 0; i < (g.kind == GateKind::F ? g.repeat % 4 : g.repeat % 2); i++) {
                    fourier(q, false);
                }
                break;
            case GateKind::FDAG:
                for (u64 i = 0; i < g.repeat % 4; i++) {
                    fourier(q, true);
                }
                break;
            case GateKind::CZ:
                diagonal_n(g.targets, [&](const std::vector<u64> &k) {
                    return mulmod(2 * (g.repeat % d), k[0] * k[1], N_);
                });
                break;
            case GateKind::CCZ:
                diagonal_n(g.targets, [&](const std::vector<u64> &k) {
                    return mulmod(2 * (g.repeat % d), k[0] * k[1] % d * k[2], N_);
                });
                break;
            // qubit gates: N = 4, i = x^1
            case GateKind::S: diagonal1(q, [&](u64 k) { return (g.repeat % 4) * k % 4; }); break;
            case GateKind::SDAG: diagonal1(q, [&](u64 k) { return (3 * (g.repeat % 4)) * k % 4; }); break;
            case GateKind::CS:
                diagonal_n(g.targets, [&](const std::vector<u64> &k) { return (g.repeat % 4) * k[0] * k[1] % 4; });
                break;
            case GateKind::CX:
                if (g.repeat % 2) {
                    int c = g.targets[0], t = g.targets[1];
                    std::vector<std::vector<mpz_class>> out(dim_);
                    for (u64 idx = 0; idx < dim_; idx++) {
                        u64 cv = (idx / stride_[c]) % 2;
                        u64 tv = (idx / stride_[t]) % 2;
                        u64 to = idx - tv * stride_[t] + ((tv + cv) % 2) * stride_[t];
                        out[to] = std::move(amp_[idx]);
                    }
                    amp_ = std::move(out);
                }
                break;
        }
    }

    void run(const Circuit &c) {
        c.validate();
        for (const Gate &g : c.gates) {
            apply(g);
        }
    }

    /// Amplitudes as field elements.
    std::vector<CyclotomicNumber> values() const {
        SurdMonomial norm = inverse_sqrt_power(d_, fourier_count_);
        CyclotomicNumber nv = norm.to_cyclotomic();
        std::vector<CyclotomicNumber> out;
        out.reserve(dim_);
        for (const auto &v : amp_) {
            std::vector<mpq_class> acc(N_);
            bool any = false;
            for (u64 j = 0; j < N_; j++) {
                if (v[j] != 0) {
                    acc[j] = v[j];
                    any = true;
                }
            }
            out.push_back(any ? CyclotomicNumber::from_dense(N_, std::move(acc)) * nv : CyclotomicNumber());
        }
        return out;
    }

    u64 dimension() const { return dim_; }

   private:
    u64 d_;
    int m_;
    u64 dim_ = 1;
    u64 N_ = 4;
    int fourier_count_ = 0;
    std::vector<u64> stride_;
    std::vector<std::vector<mpz_class>> amp_;

    static void rotate_add(std::vector<mpz_class> &dst, const std::vector<mpz_class> &src, u64 shift, u64 N) {
        for (u64 j = 0; j < N; j++) {
            if (src[j] != 0) {
                u64 t = j + shift;
                if (t >= N) {
                    t -= N;
                }
                dst[t] += src[j];
            }
        }
    }

    static std::vector<mpz_class> rotated(const std::vector<mpz_class> &src, u64 shift, u64 N) {
        std::vector<mpz_class> out(N);
        rotate_add(out, src, shift, N);
        return out;
    }

    template <class Fn>
    void permute(int q, Fn f) {
        std::vector<std::vector<mpz_class>> out(dim_);
        for (u64 idx = 0; idx < dim_; idx++) {
            u64 k = (idx / stride_[q]) % d_;
            u64 to = idx - k * stride_[q] + f(k) * stride_[q];
            out[to] = std::move(amp_[idx]);
        }
        amp_ = std::move(out);
    }

    template <class Fn>
    void diagonal1(int q, Fn f) {
        for (u64 idx = 0; idx < dim_; idx++) {
            u64 sh = f((idx / stride_[q]) % d_) % N_;
            if (sh) {
                amp_[idx] = rotated(amp_[idx], sh, N_);
            }
        }
    }

    template <class Fn>
    void diagonal_n(const std::vector<int> &qs, Fn f) {
        std::vector<u64> k(qs.size());
        for (u64 idx = 0; idx < dim_; idx++) {
            for (size_t a = 0; a < qs.size(); a++) {
                k[a] = (idx / stride_[qs[a]]) % d_;
            }
            u64 sh = f(k) % N_;
            if (sh) {
                amp_[idx] = rotated(amp_[idx], sh, N_);
            }
        }
    }

    // out_l = sum_k omega^{+-kl} in_k (unnormalized)
    void fourier(int q, bool dagger) {
        std::vector<std::vector<mpz_class>> out(dim_, std::vector<mpz_class>(N_));
        const u64 s = stride_[q];
        for (u64 idx = 0; idx < dim_; idx++) {
            u64 k = (idx / s) % d_;
            if (k != 0) {
                continue;
            }
            for (u64 kk = 0; kk < d_; kk++) {
                const auto &src = amp_[idx + kk * s];
                for (u64 l = 0; l < d_; l++) {
                    u64 ex = mulmod(2, kk * l % d_, N_);
                    if (dagger) {
                        ex = (N_ - ex) % N_;
                    }
                    rotate_add(out[idx + l * s], src, ex, N_);
                }
            }
        }
        amp_ = std::move(out);
        fourier_count_++;
    }
};

inline std::vector<CyclotomicNumber> statevector(const Circuit &c, const std::vector<u64> &a,
                                                 u64 budget = kStatevectorBudget) {
    StateVector sv(c.d, c.m, a, budget);
    sv.run(c);
    return sv.values();
}

inline std::vector<CyclotomicNumber> statevector(const NormalizedCircuit &nc, const std::vector<u64> &a,
                                                 u64 budget = kStatevectorBudget) {
    return statevector(nc.full(), a, budget);
}

using Matrix = std::vector<std::vector<CyclotomicNumber>>;

inline Matrix identity_matrix(u64 d) {
    Matrix m(d, std::vector<CyclotomicNumber>(d));
    for (u64 i = 0; i < d; i++) {
        m[i][i] = CyclotomicNumber(1);
    }
    return m;
}

inline Matrix operator*(const Matrix &a, const Matrix &b) {
    const size_t d = a.size();
    Matrix c(d, std::vector<CyclotomicNumber>(d));
    for (size_t i = 0; i < d; i++) {
        for (size_t k = 0; k < d; k++) {
            if (a[i][k].is_zero()) {
                continue;
            }
            for (size_t j = 0; j < d; j++) {
                if (!b[k][j].is_zero()) {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    return c;
}

inline Matrix adjoint(const Matrix &a) {
    const size_t d = a.size();
    Matrix c(d, std::vector<CyclotomicNumber>(d));
    for (size_t i = 0; i < d; i++) {
        for (size_t j = 0; j < d; j++) {
            c[j][i] = a[i][j].conj();
        }
    }
    return c;
}

inline Matrix matrix_power(const Matrix &a, u64 e) {
    Matrix r = identity_matrix(a.size());
    for (u64 i = 0; i < e; i++) {
        r = r * a;
    }
    return r;
}

inline Matrix scalar_matrix(u64 d, const CyclotomicNumber &z) {
    Matrix m(d, std::vector<CyclotomicNumber>(d));
    for (u64 i = 0; i < d; i++) {
        m[i][i] = z;
    }
    return m;
}

/// Single-qudit generator matrices, entry [row][column] = <row|U|column>.
inline Matrix gate_matrix(GateKind k, u64 d) {
    Matrix m(d, std::vector<CyclotomicNumber>(d));
    const u64 N = 2 * d;
    const u64 e = xi_exponent(d, SignConvention::Default);
    for (u64 c = 0; c < d; c++) {
        switch (k) {
            case GateKind::X: m[(c + 1) % d][c] = CyclotomicNumber(1); break;
            case GateKind::Z: m[c][c] = CyclotomicNumber::root_of_unity(d, static_cast<i64>(c)); break;
            case GateKind::Y:
                m[(c + d - 1) % d][c] =
                    CyclotomicNumber::root_of_unity(N, static_cast<i64>(mulmod(e, mod(1 - 2 * static_cast<i64>(c), N), N)));
                break;
            case GateKind::G:
                m[c][c] = CyclotomicNumber::root_of_unity(N, static_cast<i64>(mulmod(e, c * c % N, N)));
                break;
            case GateKind::F: {
                CyclotomicNumber s = inverse_sqrt_power(d, 1).to_cyclotomic();
                for (u64 r = 0; r < d; r++) {
                    m[r][c] = CyclotomicNumber::root_of_unity(d, static_cast<i64>(r * c % d)) * s;
                }
                break;
            }
            default: throw std::invalid_argument("gate_matrix: single-qudit generators only");
        }
    }
    return m;
}

struct RelationCheck {
    std::string name;
    bool holds = false;
};

/// The defining relations of the single-qudit Clifford generators, checked
/// exactly on d x d matrices.
inline std::vector<RelationCheck> verify_gate_relations(u64 d) {
    if (d < 2) {
        throw std::invalid_argument("verify_gate_relations: d must be at least 2");
    }
    const Matrix X = gate_matrix(GateKind::X, d), Y = gate_matrix(GateKind::Y, d), Z = gate_matrix(GateKind::Z, d),
                 F = gate_matrix(GateKind::F, d), G = gate_matrix(GateKind::G, d);
    const Matrix I = identity_matrix(d);
    const Matrix Xi = adjoint(X), Yi = adjoint(Y), Zi = adjoint(Z), Fi = adjoint(F), Gi = adjoint(G);
    const CyclotomicNumber omega = CyclotomicNumber::root_of_unity(d, 1);
    const CyclotomicNumber xi =
        CyclotomicNumber::root_of_unity(2 * d, static_cast<i64>(xi_exponent(d, SignConvention::Default)));
    const CyclotomicNumber qinv = q_constant_monomial(d).inverse().to_cyclotomic();
    Matrix FG = F * G;
    std::vector<RelationCheck> out;
    auto add = [&](std::string name, const Matrix &lhs, const Matrix &rhs) {
        out.push_back({std::move(name), lhs == rhs});
    };
    add("X^d = I", matrix_power(X, d), I);
    add("Y^d = I", matrix_power(Y, d), I);
    add("Z^d = I", matrix_power(Z, d), I);
    add("F^4 = I", matrix_power(F, 4), I);
    add("G^2d = I", matrix_power(G, 2 * d), I);
    add("(FG)^3 q_d^-1 = I", scalar_matrix(d, qinv) * (FG * FG * FG), I);
    add("X Y X^-1 Y^-1 = omega I", X * Y * Xi * Yi, scalar_matrix(d, omega));
    add("Y Z Y^-1 Z^-1 = omega I", Y * Z * Yi * Zi, scalar_matrix(d, omega));
    add("Z X Z^-1 X^-1 = omega I", Z * X * Zi * Xi, scalar_matrix(d, omega));
    add("X Y Z = xi I", X * Y * Z, scalar_matrix(d, xi));
    add("F X F^-1 = Z", F * X * Fi, Z);
    add("G X G^-1 = Y^-1", G * X * Gi, Yi);
    return out;
}

}  // namespace hg
