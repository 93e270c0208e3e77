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

// Exact evaluation of quadratic exponential sums
//
//     Z(q, g)        = sum_{x in Z_q^n} omega_q^{g(x)}
//     Z_{1/2}(d, f)  = sum_{x in Z_d^n} xi_d^{f(x)}
//
// Every value produced here is a monomial r * sqrt(s) * zeta, and the
// evaluation records a certificate whose leaf factors multiply back to it.
//
// Prime powers are handled by eliminating one variable (or, for p = 2, one
// hyperbolic pair of variables) at a time. The pivot is the coefficient of
// least p-adic weight in the Gram matrix (2 alpha_ii on the diagonal,
// alpha_ij off it). A diagonal pivot is cleared by completing the square;
// an off-diagonal pivot is either turned into a diagonal one (odd p) or
// split off as a 2x2 block (p = 2). Each step is a unimodular change of
// variables, so the loop is O(n^3) with no branching.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/gauss.hpp"
#include "halfgauss/numtheory.hpp"
#include "halfgauss/polynomial.hpp"

namespace hg {

struct CertificateStep {
    std::string rule;
    std::string detail;
    std::optional<SurdMonomial> factor;
};

struct SumValue {
    CyclotomicNumber value;
    SurdMonomial monomial;
    std::vector<CertificateStep> certificate;
    bool brute_fallback = false;

    /// Product of all leaf factors in the certificate.
    SurdMonomial replay() const {
        SurdMonomial acc;
        for (const auto &s : certificate) {
            if (s.factor) {
                acc *= *s.factor;
            }
        }
        return acc;
    }

    std::map<std::string, int> rule_counts() const {
        std::map<std::string, int> out;
        for (const auto &s : certificate) {
            out[s.rule]++;
        }
        return out;
    }
};

class AperiodicError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Even cross and linear coefficients, or any f when d is odd.
inline bool check_periodicity(u64 d, const QuadraticForm &f) {
    if (d % 2 == 1) {
        return true;
    }
    for (const auto &[ij, v] : f.alpha) {
        if (ij.first != ij.second && v % 2 != 0) {
            return false;
        }
    }
    for (const auto &[i, v] : f.beta) {
        if (v % 2 != 0) {
            return false;
        }
    }
    return true;
}

namespace detail {

struct Trace {
    std::vector<CertificateStep> *steps;
    SurdMonomial product;
    bool record = true;

    void note(const std::string &rule, const std::string &detail) {
        if (record) {
            steps->push_back({rule, detail, std::nullopt});
        }
    }

    void factor(const std::string &rule, const std::string &detail, const SurdMonomial &m) {
        product *= m;
        if (record) {
            steps->push_back({rule, detail, m});
        }
    }

    bool zero() const { return product.is_zero(); }
};

// Symmetric coefficient matrix over Z_M. q[i*n+i] holds the x_i^2
// coefficient and q[i*n+j] (i != j) the x_i x_j coefficient.
struct DenseForm {
    int n = 0;
    u64 M = 1;
    std::vector<u64> q;
    std::vector<u64> lin;
    u64 c = 0;
    std::vector<int> alive;

    static DenseForm from(const QuadraticForm &f, u64 scale, u64 M, bool with_constant) {
        DenseForm D;
        D.n = f.n;
        D.M = M;
        D.q.assign(static_cast<size_t>(f.n) * f.n, 0);
        D.lin.assign(f.n, 0);
        scale %= M;
        for (const auto &[ij, v] : f.alpha) {
            u64 r = mulmod(mod(v, M), scale, M);
            int i = ij.first - 1, j = ij.second - 1;
            D.at(i, j) = addmod(D.at(i, j), r, M);
            if (i != j) {
                D.at(j, i) = D.at(i, j);
            }
        }
        for (const auto &[i, v] : f.beta) {
            D.lin[i - 1] = addmod(D.lin[i - 1], mulmod(mod(v, M), scale, M), M);
        }
        if (with_constant) {
            D.c = mulmod(mod(f.gamma0, M), scale, M);
        }
        for (int i = 0; i < f.n; i++) {
            D.alive.push_back(i);
        }
        return D;
    }

    u64 &at(int i, int j) { return q[static_cast<size_t>(i) * n + j]; }
    u64 at(int i, int j) const { return q[static_cast<size_t>(i) * n + j]; }

    void kill(int i) {
        for (size_t k = 0; k < alive.size(); k++) {
            if (alive[k] == i) {
                alive.erase(alive.begin() + static_cast<long>(k));
                break;
            }
        }
        for (int l : alive) {
            at(i, l) = 0;
            at(l, i) = 0;
        }
        at(i, i) = 0;
        lin[i] = 0;
    }

    // x_i = x_i' + sum_l t[l] x_l + t0 over the live variables l != i.
    void substitute(int i, const std::vector<u64> &t, u64 t0) {
        const u64 qii = at(i, i);
        const u64 li = lin[i];
        const u64 two_qii = addmod(qii, qii, M);
        std::vector<int> others;
        others.reserve(alive.size());
        for (int l : alive) {
            if (l != i) {
                others.push_back(l);
            }
        }
        const size_t m = others.size();
        std::vector<u64> T(m), Qi(m), U(m);
        for (size_t k = 0; k < m; k++) {
            T[k] = t[others[k]] % M;
            Qi[k] = at(i, others[k]);
            U[k] = addmod(mulmod(two_qii, T[k], M), Qi[k], M);
        }
        // pair (l, r): += t_l (2 q_ii t_r + q_ir) + t_r q_il
        const bool small = M <= (u64{1} << 31);
        for (size_t a = 0; a < m; a++) {
            const u64 Ta = T[a], Qa = Qi[a];
            const int l = others[a];
            u64 *row = &q[static_cast<size_t>(l) * n];
            for (size_t b = a + 1; b < m; b++) {
                const u64 Tb = T[b];
                if (Ta == 0 && Tb == 0) {
                    continue;
                }
                u64 delta;
                if (small) {
                    delta = (Ta * U[b] + Tb * Qa) % M;
                } else {
                    delta = addmod(mulmod(Ta, U[b], M), mulmod(Tb, Qa, M), M);
                }
                if (delta == 0) {
                    continue;
                }
                const int r = others[b];
                u64 v = addmod(row[r], delta, M);
                row[r] = v;
                at(r, l) = v;
            }
        }
        for (size_t a = 0; a < m; a++) {
            const int l = others[a];
            const u64 Ta = T[a], Qa = Qi[a];
            if (Ta != 0) {
                // q_ll += q_ii t_l^2 + t_l q_il
                u64 dl = addmod(mulmod(qii, mulmod(Ta, Ta, M), M), mulmod(Ta, Qa, M), M);
                at(l, l) = addmod(at(l, l), dl, M);
                lin[l] = addmod(lin[l], mulmod(li, Ta, M), M);
            }
            if (t0 != 0) {
                u64 dl = addmod(mulmod(two_qii, mulmod(Ta, t0, M), M), mulmod(Qa, t0, M), M);
                lin[l] = addmod(lin[l], dl, M);
            }
        }
        for (size_t a = 0; a < m; a++) {
            const int l = others[a];
            u64 v = addmod(Qi[a], mulmod(two_qii, T[a], M), M);
            at(i, l) = v;
            at(l, i) = v;
        }
        if (t0 != 0) {
            c = addmod(c, addmod(mulmod(qii, mulmod(t0, t0, M), M), mulmod(li, t0, M), M), M);
            lin[i] = addmod(li, mulmod(two_qii, t0, M), M);
        }
    }

    bool row_clear(int i) const {
        for (int l : alive) {
            if (l != i && at(i, l) != 0) {
                return false;
            }
        }
        return true;
    }
};

// s * f with coefficients reduced to [0, m)
inline QuadraticForm scale_mod(const QuadraticForm &f, u64 s, u64 m) {
    QuadraticForm out(f.n);
    s %= m;
    for (const auto &[ij, v] : f.alpha) {
        if (u64 r = mulmod(mod(v, m), s, m)) {
            out.alpha[ij] = static_cast<i64>(r);
        }
    }
    for (const auto &[i, v] : f.beta) {
        if (u64 r = mulmod(mod(v, m), s, m)) {
            out.beta[i] = static_cast<i64>(r);
        }
    }
    out.gamma0 = static_cast<i64>(mulmod(mod(f.gamma0, m), s, m));
    return out;
}

inline int vp(u64 x, u64 p, int cap) {
    if (x == 0) {
        return cap;
    }
    if (p == 2) {
        return std::min(__builtin_ctzll(x), cap);
    }
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        v++;
    }
    return v;
}

inline std::string var_name(int i) {
    return "x" + std::to_string(i + 1);
}

// sum_{x in Z_{p^k}} omega_{p^k}^{a x^2 + b x}
inline SurdMonomial univariate_full(u64 p, int k, u64 a, u64 b) {
    const u64 Q = ipow(p, static_cast<unsigned>(k));
    a %= Q;
    b %= Q;
    if (a == 0) {
        return b == 0 ? SurdMonomial::rational(mpz_class(std::to_string(Q))) : SurdMonomial::zero();
    }
    int v = vp(a, p, k);
    u64 pv = ipow(p, static_cast<unsigned>(v));
    if (b % pv != 0) {
        return SurdMonomial::zero();
    }
    int k1 = k - v;
    u64 Q1 = Q / pv;
    u64 a1 = (a / pv) % Q1, b1 = (b / pv) % Q1;
    SurdMonomial scale = SurdMonomial::rational(mpz_class(std::to_string(pv)));
    if (p == 2) {
        if (b1 % 2 == 1) {
            return k1 == 1 ? scale * SurdMonomial::rational(2) : SurdMonomial::zero();
        }
        u64 e = b1 / 2;
        u64 ph = mulmod(inverse_mod(static_cast<i64>(a1), Q1), mulmod(e, e, Q1), Q1);
        return scale * SurdMonomial::root(-static_cast<i64>(ph), static_cast<i64>(Q1)) *
               gauss_sum_monomial(static_cast<i64>(a1), Q1);
    }
    u64 inv4a = inverse_mod(static_cast<i64>(mulmod(4 % Q1, a1, Q1)), Q1);
    u64 ph = mulmod(mulmod(b1, b1, Q1), inv4a, Q1);
    return scale * SurdMonomial::root(-static_cast<i64>(ph), static_cast<i64>(Q1)) *
           gauss_sum_monomial(static_cast<i64>(a1), Q1);
}

// sum_{x in Z_{2^k}} omega_{2^{k+1}}^{a x^2 + b x} for odd a and even b
inline SurdMonomial univariate_half(int k, u64 a, u64 b) {
    const u64 M = u64{2} << k;
    u64 e = (b % M) / 2;
    u64 ph = mulmod(inverse_mod(static_cast<i64>(a % M), M), mulmod(e, e, M), M);
    return SurdMonomial::root(-static_cast<i64>(ph), static_cast<i64>(M)) *
           half_gauss_sum_monomial(static_cast<i64>(a % M), M / 2);
}

// sum over Z_{2^k}^2 of omega_{2^k}^{a x^2 + c x y + b y^2 + b1 x + b2 y}
// where v_2(c) = w <= v_2(a), v_2(b).
inline SurdMonomial block_2x2(int k, u64 a, u64 b, u64 c, u64 b1, u64 b2) {
    const u64 Q = u64{1} << k;
    int w = vp(c, 2, k);
    u64 pw = u64{1} << w;
    if (b1 % pw != 0 || b2 % pw != 0) {
        return SurdMonomial::zero();
    }
    int k1 = k - w;
    u64 Q1 = Q >> w;
    u64 a1 = (a >> w) % Q1, bb = (b >> w) % Q1, c1 = (c >> w) % Q1;
    u64 l1 = (b1 >> w) % Q1, l2 = (b2 >> w) % Q1;
    // [[2a, c], [c, 2b]] s = -l
    u64 m11 = (2 * a1) % Q1, m22 = (2 * bb) % Q1;
    u64 det = submod(mulmod(m11, m22, Q1), mulmod(c1, c1, Q1), Q1);
    u64 inv = inverse_mod(static_cast<i64>(det), Q1);
    u64 r1 = (Q1 - l1) % Q1, r2 = (Q1 - l2) % Q1;
    u64 s1 = mulmod(inv, submod(mulmod(m22, r1, Q1), mulmod(c1, r2, Q1), Q1), Q1);
    u64 s2 = mulmod(inv, submod(mulmod(m11, r2, Q1), mulmod(c1, r1, Q1), Q1), Q1);
    u64 cst = mulmod(a1, mulmod(s1, s1, Q1), Q1);
    cst = addmod(cst, mulmod(c1, mulmod(s1, s2, Q1), Q1), Q1);
    cst = addmod(cst, mulmod(bb, mulmod(s2, s2, Q1), Q1), Q1);
    cst = addmod(cst, mulmod(l1, s1, Q1), Q1);
    cst = addmod(cst, mulmod(l2, s2, Q1), Q1);
    SurdMonomial out = SurdMonomial::rational(mpz_class(std::to_string(pw)) * mpz_class(std::to_string(pw)) *
                                              mpz_class(std::to_string(Q1)));
    if (a1 % 2 == 1 && bb % 2 == 1 && k1 % 2 == 1) {
        out *= SurdMonomial::root(1, 2);
    }
    return out * SurdMonomial::root(static_cast<i64>(cst), static_cast<i64>(Q1));
}

// Boolean quadratic form over GF(2), cleared by linear restriction.
inline mpz_class gap2_dense(DenseForm D) {
    for (int i : D.alive) {
        D.lin[i] = (D.lin[i] + D.at(i, i)) & 1;
        D.at(i, i) = 0;
        for (int j : D.alive) {
            D.at(i, j) &= 1;
        }
    }
    D.M = 2;
    D.c &= 1;
    mpz_class value = 1;
    while (!D.alive.empty()) {
        int i = D.alive.front();
        int j = -1;
        for (int l : D.alive) {
            if (l != i && D.at(i, l)) {
                j = l;
                break;
            }
        }
        if (j < 0) {
            if (D.lin[i]) {
                return 0;
            }
            value *= 2;
            D.kill(i);
            continue;
        }
        // x_i ranges freely: restrict to l_i(x) = lin_i + sum_l q_il x_l = 0,
        // i.e. x_j = lin_i + sum_{l != j} q_il x_l.
        std::vector<u64> t(D.n, 0);
        for (int l : D.alive) {
            if (l != i && l != j) {
                t[l] = D.at(i, l);
            }
        }
        u64 t0 = D.lin[i];
        D.kill(i);
        D.substitute(j, t, t0);
        D.kill(j);
        for (int l : D.alive) {
            D.lin[l] = (D.lin[l] + D.at(l, l)) & 1;
            D.at(l, l) = 0;
        }
        value *= 2;
    }
    return D.c ? mpz_class(-value) : value;
}

// Z(p^k, g) for g held in D (modulus p^k, no constant).
inline void full_prime_power(u64 p, int k, DenseForm D, Trace &tr) {
    const u64 Q = D.M;
    if (p == 2 && k == 1) {
        size_t vars = D.alive.size();
        mpz_class g = gap2_dense(std::move(D));
        tr.factor("gap2", std::to_string(vars) + " vars", SurdMonomial::rational(g));
        return;
    }
    std::vector<u64> t(D.n, 0);
    while (!D.alive.empty() && !tr.zero()) {
        // pivot search: least weight, diagonal preferred on ties
        int best_i = -1, best_j = -1, best_w = 1 << 30;
        bool best_diag = false;
        const int diag_shift = p == 2 ? 1 : 0;
        const int floor_w = 0;
        for (int i : D.alive) {
            u64 a = D.at(i, i);
            if (a == 0) {
                continue;
            }
            int w = vp(a, p, k) + diag_shift;
            if (w < best_w) {
                best_w = w;
                best_i = i;
                best_diag = true;
                if (w == floor_w) {
                    break;
                }
            }
        }
        if (best_w > floor_w) {
            for (size_t x = 0; x < D.alive.size() && best_w > floor_w; x++) {
                int i = D.alive[x];
                const u64 *row = &D.q[static_cast<size_t>(i) * D.n];
                for (size_t y = x + 1; y < D.alive.size(); y++) {
                    int j = D.alive[y];
                    u64 a = row[j];
                    if (a == 0) {
                        continue;
                    }
                    int w = vp(a, p, k);
                    if (w < best_w) {
                        best_w = w;
                        best_i = i;
                        best_j = j;
                        best_diag = false;
                        if (w == floor_w) {
                            break;
                        }
                    }
                }
            }
        }
        if (best_i < 0) {
            // no quadratic part left
            for (int i : std::vector<int>(D.alive)) {
                tr.factor(D.lin[i] == 0 ? "free" : "linear", var_name(i) + " mod " + std::to_string(Q),
                          univariate_full(p, k, 0, D.lin[i]));
                D.kill(i);
                if (tr.zero()) {
                    return;
                }
            }
            return;
        }
        if (best_diag) {
            int i = best_i;
            u64 a = D.at(i, i);
            int v = vp(a, p, k);
            u64 pv = ipow(p, static_cast<unsigned>(v));
            u64 Qv = Q / pv;
            bool need = false;
            for (int l : D.alive) {
                t[l] = 0;
                if (l == i || D.at(i, l) == 0) {
                    continue;
                }
                u64 cl;
                if (p == 2) {
                    // 2 a c = q_il  (mod 2^k)
                    cl = mulmod((D.at(i, l) >> (v + 1)) % Qv, inverse_mod(static_cast<i64>((a >> v) % Qv), Qv), Qv);
                } else {
                    u64 unit = mulmod(2, a / pv, Qv);
                    cl = mulmod((D.at(i, l) / pv) % Qv, inverse_mod(static_cast<i64>(unit), Qv), Qv);
                }
                t[l] = (Q - cl) % Q;
                need = need || t[l] != 0;
            }
            if (need) {
                D.substitute(i, t, 0);
            }
            if (!D.row_clear(i)) {
                throw std::logic_error("full_prime_power: square completion left cross terms");
            }
            tr.factor("square", var_name(i) + " a=" + std::to_string(a) + " mod " + std::to_string(Q),
                      univariate_full(p, k, a, D.lin[i]));
            D.kill(i);
            continue;
        }
        int i = best_i, j = best_j;
        if (p != 2) {
            // x_j -> x_j + x_i moves the cross coefficient onto the diagonal of x_i
            for (int l : D.alive) {
                t[l] = 0;
            }
            t[i] = 1;
            D.substitute(j, t, 0);
            t[i] = 0;
            tr.note("shift", var_name(j) + " += " + var_name(i));
            continue;
        }
        // p = 2: split off the pair (i, j)
        int w = best_w;
        u64 pw = u64{1} << w;
        u64 Qw = Q >> w;
        u64 m11 = ((2 * D.at(i, i)) >> w) % Qw, m22 = ((2 * D.at(j, j)) >> w) % Qw;
        u64 c1 = (D.at(i, j) >> w) % Qw;
        u64 det = submod(mulmod(m11, m22, Qw), mulmod(c1, c1, Qw), Qw);
        u64 inv = inverse_mod(static_cast<i64>(det), Qw);
        std::vector<u64> si(D.n, 0), sj(D.n, 0);
        bool need = false;
        for (int l : D.alive) {
            if (l == i || l == j) {
                continue;
            }
            u64 r1 = (Q - D.at(i, l)) % Q, r2 = (Q - D.at(j, l)) % Q;
            if (r1 % pw || r2 % pw) {
                throw std::logic_error("full_prime_power: pivot weight is not minimal");
            }
            r1 = (r1 >> w) % Qw;
            r2 = (r2 >> w) % Qw;
            si[l] = mulmod(inv, submod(mulmod(m22, r1, Qw), mulmod(c1, r2, Qw), Qw), Qw);
            sj[l] = mulmod(inv, submod(mulmod(m11, r2, Qw), mulmod(c1, r1, Qw), Qw), Qw);
            need = need || si[l] || sj[l];
        }
        if (need) {
            D.substitute(i, si, 0);
            D.substitute(j, sj, 0);
        }
        for (int l : D.alive) {
            if (l != i && l != j && (D.at(i, l) != 0 || D.at(j, l) != 0)) {
                throw std::logic_error("full_prime_power: block split left couplings");
            }
        }
        tr.factor("block", var_name(i) + "," + var_name(j) + " mod " + std::to_string(Q),
                  block_2x2(k, D.at(i, i), D.at(j, j), D.at(i, j), D.lin[i], D.lin[j]));
        D.kill(i);
        D.kill(j);
    }
}

// Z(q, g) for g without constant term, splitting q over its prime powers.
inline void full_sum(u64 q, const QuadraticForm &g, Trace &tr) {
    if (q == 1) {
        return;
    }
    for (auto [p, k] : factorize(q)) {
        u64 pk = ipow(p, static_cast<unsigned>(k));
        u64 mult = inverse_mod(static_cast<i64>((q / pk) % pk), pk);
        tr.note("prime-power", std::to_string(p) + "^" + std::to_string(k) + " scale " + std::to_string(mult));
        full_prime_power(p, k, DenseForm::from(g, mult, pk, false), tr);
        if (tr.zero()) {
            return;
        }
    }
}

// Z_{1/2}(2^m, F) for periodic F held in D (modulus 2^{m+1}, no constant).
inline void half_two_power(int m, DenseForm D, Trace &tr) {
    const u64 M = D.M;
    const u64 Q = M / 2;
    std::vector<u64> t(D.n, 0);
    for (;;) {
        int i = -1;
        for (int l : D.alive) {
            if (D.at(l, l) % 2 == 1) {
                i = l;
                break;
            }
        }
        if (i < 0) {
            break;
        }
        u64 a = D.at(i, i);
        u64 ainv = inverse_mod(static_cast<i64>(a % Q), Q);
        bool need = false;
        for (int l : D.alive) {
            t[l] = 0;
            if (l == i || D.at(i, l) == 0) {
                continue;
            }
            u64 cl = mulmod(D.at(i, l) / 2, ainv, Q);
            t[l] = (M - cl) % M;
            need = need || t[l] != 0;
        }
        if (need) {
            D.substitute(i, t, 0);
        }
        if (!D.row_clear(i)) {
            throw std::logic_error("half_two_power: square completion left cross terms");
        }
        tr.factor("odd-diagonal", var_name(i) + " a=" + std::to_string(a) + " mod " + std::to_string(M),
                  univariate_half(m, a, D.lin[i]));
        D.kill(i);
        if (tr.zero()) {
            return;
        }
    }
    // all coefficients even: omega_{2^{m+1}}^{2h} = omega_{2^m}^{h}
    DenseForm H;
    H.n = D.n;
    H.M = Q;
    H.q.assign(D.q.size(), 0);
    H.lin.assign(D.n, 0);
    H.alive = D.alive;
    for (int i : D.alive) {
        H.lin[i] = D.lin[i] / 2;
        for (int j : D.alive) {
            H.q[static_cast<size_t>(i) * D.n + j] = D.at(i, j) / 2;
        }
    }
    tr.note("halve", std::to_string(H.alive.size()) + " vars mod " + std::to_string(Q));
    full_prime_power(2, m, std::move(H), tr);
}

inline SumValue finish(std::vector<CertificateStep> steps, const SurdMonomial &m) {
    SumValue out;
    out.monomial = m;
    out.value = m.to_cyclotomic();
    out.certificate = std::move(steps);
    return out;
}

}  // namespace detail

/// Z(q, g) = sum_{x in Z_q^n} omega_q^{g(x)} for any quadratic g.
inline SumValue eval_gauss_quadratic(u64 q, const QuadraticForm &g, bool record = true) {
    if (q == 0 || q >= kModulusCap) {
        throw std::invalid_argument("eval_gauss_quadratic: modulus out of range");
    }
    std::vector<CertificateStep> steps;
    detail::Trace tr{&steps, SurdMonomial(), record};
    QuadraticForm h = g.reduced(q);
    if (h.gamma0 != 0) {
        tr.factor("constant", "omega_" + std::to_string(q) + "^" + std::to_string(h.gamma0),
                  SurdMonomial::root(h.gamma0, static_cast<i64>(q)));
    }
    h.gamma0 = 0;
    detail::full_sum(q, h, tr);
    return detail::finish(std::move(steps), tr.product);
}

/// Z_{1/2}(d, f) = sum_{x in Z_d^n} xi_d^{f(x)} for periodic quadratic f.
inline SumValue eval_half_gauss(u64 d, const QuadraticForm &f, SignConvention conv = SignConvention::Default,
                                bool record = true) {
    if (d == 0 || 2 * d >= kModulusCap) {
        throw std::invalid_argument("eval_half_gauss: dimension out of range");
    }
    if (!check_periodicity(d, f)) {
        throw AperiodicError("eval_half_gauss: f is not periodic modulo " + std::to_string(d) +
                             " (odd cross or linear coefficient)");
    }
    std::vector<CertificateStep> steps;
    detail::Trace tr{&steps, SurdMonomial(), record};
    const u64 D2 = 2 * d;
    QuadraticForm g = f.reduced(D2);
    if (d % 2 == 0 && conv == SignConvention::MinusForEven) {
        // -omega_{2d} = omega_{2d}^{d+1}
        g = detail::scale_mod(g, d + 1, D2);
        tr.note("minus-convention", "scale by " + std::to_string(d + 1));
    }
    u64 e = xi_exponent(d, SignConvention::Default);
    if (g.gamma0 != 0) {
        u64 ph = mulmod(static_cast<u64>(g.gamma0), e, D2);
        tr.factor("constant", "xi_" + std::to_string(d) + "^" + std::to_string(g.gamma0),
                  SurdMonomial::root(static_cast<i64>(ph), static_cast<i64>(D2)));
    }
    g.gamma0 = 0;
    if (d % 2 == 1) {
        // xi_d = omega_d^{(d+1)/2}
        tr.note("odd-modulus", "scale by " + std::to_string((d + 1) / 2));
        detail::full_sum(d, detail::scale_mod(g, (d + 1) / 2, d), tr);
        return detail::finish(std::move(steps), tr.product);
    }
    CrtSplit sp = crt_split(static_cast<i64>(d));
    u64 b = static_cast<u64>(sp.b), c = static_cast<u64>(sp.c);
    int m = valuation(b, 2);
    u64 mult_b = mod(sp.n1 + static_cast<i64>(b) * sp.n2, 2 * b);
    if (c > 1) {
        tr.note("crt-even", std::to_string(b) + " x " + std::to_string(c));
    }
    detail::half_two_power(m, detail::DenseForm::from(g, mult_b, 2 * b, false), tr);
    if (c > 1 && !tr.zero()) {
        u64 mult_c = mulmod(mod(sp.n2, c), (c + 1) / 2, c);
        tr.note("odd-modulus", std::to_string(c) + " scale " + std::to_string(mult_c));
        detail::full_sum(c, detail::scale_mod(g, mult_c, c), tr);
    }
    return detail::finish(std::move(steps), tr.product);
}

/// sum_{x in Z_2^n} (-1)^{g(x)}, coefficients read mod 2 and x^2 folded into x.
inline mpz_class gap2(const QuadraticForm &g) {
    detail::DenseForm D = detail::DenseForm::from(g, 1, 2, true);
    return detail::gap2_dense(std::move(D));
}

}  // namespace hg
