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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "halfgauss.hpp"
#include "halfgauss/jsonio.hpp"
#include "halfgauss/testing.hpp"

namespace {

using namespace hg;
using CN = CyclotomicNumber;
using Clock = std::chrono::steady_clock;

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &why) {
        if (!cond && ok) {
            ok = false;
            detail = why;
        }
    }
};

CN zeta(u64 n, i64 t) { return CN::root_of_unity(n, t); }

// sum over x in Z_d of zeta_N^{e x^2}
CN enumerate_quadratic(u64 d, u64 N, u64 e) {
    std::vector<i64> counts(N, 0);
    for (u64 x = 0; x < d; x++) {
        counts[mulmod(e % N, mulmod(x, x, N), N)]++;
    }
    return CN::from_counts(N, counts);
}

std::vector<u64> digits_of(u64 idx, u64 d, int m) {
    std::vector<u64> b(m);
    for (int r = m - 1; r >= 0; r--) {
        b[r] = idx % d;
        idx /= d;
    }
    return b;
}

mpq_class norm2(const CN &v) { return *(v * v.conj()).as_rational(); }

// Marginal distribution of the first k registers from the dense state.
std::vector<mpq_class> dense_marginal(const std::vector<CN> &sv, u64 d, int m, int k) {
    u64 rest = ipow(d, static_cast<unsigned>(m - k));
    std::vector<mpq_class> p(ipow(d, static_cast<unsigned>(k)), 0);
    for (u64 idx = 0; idx < sv.size(); idx++) {
        if (!sv[idx].is_zero()) {
            p[idx / rest] += norm2(sv[idx]);
        }
    }
    return p;
}

Verdict univariate_closed_forms() {
    Verdict v;
    u64 checked = 0;
    for (u64 d = 2; d <= 64; d++) {
        for (i64 a = 1; a < static_cast<i64>(2 * d); a++) {
            if (gcd(static_cast<u64>(a) % d, d) != 1) {
                continue;
            }
            const u64 am = static_cast<u64>(a);
            v.require(gauss_sum(a, d) == enumerate_quadratic(d, d, am),
                      "G(" + std::to_string(a) + ", " + std::to_string(d) + ")");
            // default: xi = zeta_{2d} (even d), zeta_{2d}^{d+1} (odd d)
            u64 e_default = d % 2 == 0 ? 1 : d + 1;
            v.require(half_gauss_sum(a, d, SignConvention::Default) == enumerate_quadratic(d, 2 * d, am * e_default),
                      "G_1/2(" + std::to_string(a) + ", " + std::to_string(d) + ")");
            v.require(half_gauss_sum(a, d, SignConvention::MinusForEven) == enumerate_quadratic(d, 2 * d, am * (d + 1)),
                      "G_1/2(" + std::to_string(a) + ", " + std::to_string(d) + ")_-");
            checked += 3;
        }
    }
    for (i64 a = 1; a < 16; a += 2) {
        v.require(half_gauss_sum(a, 2) == CN(1) + zeta(4, a), "1 + i^a");
        v.require(half_gauss_sum(a, 4) == zeta(8, a) * CN(2), "2 omega_8^a");
    }
    v.detail = v.ok ? std::to_string(checked) + " sums exact" : v.detail;
    return v;
}

Verdict half_gauss_sweep() {
    Verdict v;
    SweepReport total;
    for (u64 d = 2; d <= 8; d++) {
        for (int n = 1; n <= 2; n++) {
            total += sweep_half_gauss_exhaustive(d, n);
        }
    }
    SweepReport rnd = sweep_half_gauss_random(9, 16, 4, 10000, 2026);
    total += rnd;
    v.require(total.failures == 0, total.witnesses.empty() ? "mismatch" : total.witnesses[0]);
    v.require(rnd.cases == 10000, "random sweep incomplete");
    if (v.ok) {
        v.detail = std::to_string(total.cases) + " cases, 0 mismatches";
    }
    return v;
}

Verdict tractability() {
    Verdict v;
    const std::string cmd = std::string(HALFGAUSS_CLI_PATH) + " bench --n 500 --d 720";
    auto t0 = Clock::now();
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        v.require(false, "cannot start the CLI");
        return v;
    }
    std::string text;
    std::array<char, 4096> buf{};
    while (size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
        text.append(buf.data(), got);
    }
    int status = pclose(pipe);
    double wall = std::chrono::duration<double>(Clock::now() - t0).count();
    v.require(status == 0, "bench exited with status " + std::to_string(status));
    if (!v.ok) {
        return v;
    }
    json j = json::parse(text);
    v.require(j["brute_fallback"] == false, "certificate contains a brute-force fallback");
    v.require(j["branching"] == 0, "branching reported");
    v.require(j["replay_matches"] == true, "certificate replay differs from the value");
    v.require(j["brute_force"]["attempted"] == false, "brute force was attempted");
    v.require(j["brute_force"]["within_budget"] == false, "brute force not reported as infeasible");
    v.require(wall < 10.0, "bench took " + std::to_string(wall) + " s");
    if (v.ok) {
        std::ostringstream os;
        os << "eval " << j["seconds"].get<double>() << " s, brute force " << j["brute_force"]["terms"].get<std::string>()
           << " terms not attempted, rules " << j["rule_counts"].dump();
        v.detail = os.str();
    }
    return v;
}

Verdict strong_simulation() {
    Verdict v;
    std::mt19937_64 rng(404);
    u64 amplitudes = 0;
    for (u64 d = 2; d <= 6 && v.ok; d++) {
        for (int it = 0; it < 200 && v.ok; it++) {
            int m = 1 + static_cast<int>(rng() % 3);
            Circuit c = random_clifford_circuit(d, m, static_cast<int>(rng() % 31), rng);
            NormalizedCircuit nc = normalize(c);
            std::vector<u64> a = random_digits(d, m, rng);
            auto sv = statevector(c, a);
            for (u64 idx = 0; idx < sv.size(); idx++) {
                amplitudes++;
                if (!(amplitude(nc, a, digits_of(idx, d, m)) == sv[idx])) {
                    v.require(false, "amplitude mismatch on\n" + format_circuit(c));
                    break;
                }
            }
        }
    }
    if (v.ok) {
        v.detail = "1000 circuits, " + std::to_string(amplitudes) + " amplitudes exact";
    }
    return v;
}

Verdict marginals() {
    Verdict v;
    std::mt19937_64 rng(505);
    u64 probabilities = 0;
    for (int it = 0; it < 50 && v.ok; it++) {
        u64 d = 2 + rng() % 5;
        int m = 1 + static_cast<int>(rng() % 3);
        Circuit c = random_clifford_circuit(d, m, static_cast<int>(rng() % 31), rng);
        NormalizedCircuit nc = normalize(c);
        std::vector<u64> a = random_digits(d, m, rng);
        auto sv = statevector(c, a);
        for (int k : {1, m}) {
            auto expect = dense_marginal(sv, d, m, k);
            mpq_class total = 0;
            for (u64 o = 0; o < expect.size(); o++) {
                mpq_class p = probability_marginal(nc, a, digits_of(o, d, k));
                probabilities++;
                v.require(p >= 0 && p <= 1, "probability outside [0, 1]");
                v.require(p == expect[o], "marginal differs from the statevector on\n" + format_circuit(c));
                total += p;
            }
            v.require(total == 1, "marginals do not sum to 1");
        }
    }
    if (v.ok) {
        v.detail = "50 circuits, " + std::to_string(probabilities) + " rational marginals exact, sums = 1";
    }
    return v;
}

Verdict weak_simulation() {
    Verdict v;
    std::mt19937_64 rng(606);
    const u64 draws = 9000;
    double worst = 0;
    for (int it = 0; it < 10 && v.ok; it++) {
        u64 d = 2 + rng() % 4;
        int m = 1 + static_cast<int>(rng() % 3);
        Circuit c = random_clifford_circuit(d, m, 5 + static_cast<int>(rng() % 20), rng);
        NormalizedCircuit nc = normalize(c);
        std::vector<u64> a = random_digits(d, m, rng);
        auto got = sample(nc, a, m, draws, 1000 + static_cast<u64>(it));
        v.require(got == sample(nc, a, m, draws, 1000 + static_cast<u64>(it)), "sampler is not reproducible");
        std::map<std::vector<u64>, u64> freq;
        for (const auto &s : got) {
            freq[s]++;
        }
        u64 outcomes = ipow(d, static_cast<unsigned>(m));
        for (u64 o = 0; o < outcomes; o++) {
            auto b = digits_of(o, d, m);
            double p = probability_marginal(nc, a, b).get_d();
            double n = static_cast<double>(freq.count(b) ? freq[b] : 0);
            double sigma = std::sqrt(draws * p * (1 - p));
            double dev = std::abs(n - draws * p);
            if (p == 0) {
                v.require(n == 0, "sampled an outcome of probability 0");
            } else if (sigma > 0) {
                worst = std::max(worst, dev / sigma);
                v.require(dev <= 4 * sigma, "frequency outside 4 sigma on\n" + format_circuit(c));
            } else {
                v.require(n == draws, "certain outcome not always sampled");
            }
        }
    }
    if (v.ok) {
        std::ostringstream os;
        os << "10 circuits x " << draws << " draws, worst deviation " << worst << " sigma";
        v.detail = os.str();
    }
    return v;
}

Verdict gate_algebra() {
    Verdict v;
    int count = 0;
    bool saw_fg3 = false;
    for (u64 d = 2; d <= 8; d++) {
        for (const auto &r : verify_gate_relations(d)) {
            count++;
            saw_fg3 = saw_fg3 || r.name.find("(FG)^3") != std::string::npos;
            v.require(r.holds, "d = " + std::to_string(d) + ": " + r.name);
        }
    }
    v.require(saw_fg3, "(FG)^3 relation missing");
    if (v.ok) {
        v.detail = std::to_string(count) + " relations exact for d = 2..8";
    }
    return v;
}

Verdict round_trip() {
    Verdict v;
    std::mt19937_64 rng(808);
    for (int it = 0; it < 100 && v.ok; it++) {
        u64 d = 2 + rng() % 11;
        int n = 1 + static_cast<int>(rng() % 5);
        QuadraticForm S = random_periodic_quadratic(d, n, rng);
        auto [T, L] = phase_polynomial(normalize(circuit_from_polynomial(S, d)));
        // xi_d has order 2d for even d and d for odd d
        const u64 M = d % 2 == 0 ? 2 * d : d;
        v.require(T.reduced(M) == S.reduced(M), "d = " + std::to_string(d) + ": " + format_polynomial(S) + " came back as " +
                                                    format_polynomial(T));
    }
    if (v.ok) {
        v.detail = "100 polynomials recovered exactly";
    }
    return v;
}

Verdict fourier_identity() {
    Verdict v;
    u64 cases = 0;
    for (u64 d = 2; d <= 6; d++) {
        for (int n = 1; n <= 2; n++) {
            for_each_periodic_quadratic(d, n, [&](const QuadraticForm &f) {
                for (i64 j : {0, 1}) {
                    cases++;
                    if (!fourier_zero_identity_check(d, f, j)) {
                        v.require(false, "d = " + std::to_string(d) + " f = " + format_polynomial(f));
                    }
                }
            });
        }
    }
    if (v.ok) {
        v.detail = std::to_string(cases) + " identities, odd and even d";
    }
    return v;
}

Verdict two_power_reduction() {
    Verdict v;
    u64 fast = 0, total = 0;
    for (int k = 0; k <= 3; k++) {
        const i64 M = i64{2} << k;
        for (int n = 1; n <= 2; n++) {
            const int slots = n == 1 ? 2 : 5;
            std::vector<i64> c(slots, 0);
            for (;;) {
                IntPolynomial f(n);
                f.add({1, 1}, c[0]).add({1}, c[1]);
                if (n == 2) {
                    f.add({2, 2}, c[2]).add({1, 2}, c[3]).add({2}, c[4]);
                }
                f.n = n;
                auto q = f.as_quadratic();
                bool qualifies = k == 0 || check_periodicity_2k(*q, k);
                if (qualifies) {
                    total++;
                    TwoPowerValue t = eval_two_power({k, f});
                    fast += !t.exponential;
                    v.require(!t.exponential, "qualifying instance took the brute-force path");
                    v.require(t.value == brute_sum({2, static_cast<u64>(M), f}),
                              "k = " + std::to_string(k) + " f = " + format_polynomial(f));
                }
                int s = 0;
                while (s < slots && ++c[s] == M) {
                    c[s++] = 0;
                }
                if (s == slots) {
                    break;
                }
            }
        }
    }
    std::string table;
    for (const auto &r : classification_evidence(18)) {
        v.require(r.consistent(), "classification cell '" + r.cell + "' ran on " + r.path);
        table += " [" + r.cell + ": " + r.path + "]";
    }
    if (v.ok) {
        v.detail = std::to_string(total) + " qualifying sums exact (" + std::to_string(fast) + " fast);" + table;
    }
    return v;
}

Verdict degree3_and_gadgets() {
    Verdict v;
    std::mt19937_64 rng(1111);
    for (int it = 0; it < 50 && v.ok; it++) {
        u64 d = 2 + rng() % 2;
        int m = 1 + static_cast<int>(rng() % 3);
        Circuit D{d, m, {}};
        int gates = 1 + static_cast<int>(rng() % 6);
        for (int g = 0; g < gates; g++) {
            u64 r = 1 + rng() % (2 * d);
            int kind = static_cast<int>(rng() % (m >= 3 ? 4 : m == 2 ? 3 : 2));
            int q0 = static_cast<int>(rng() % m);
            switch (kind) {
                case 0: D.add(GateKind::Z, {q0}, r); break;
                case 1: D.add(GateKind::G, {q0}, r); break;
                case 2: D.add(GateKind::CZ, {q0, (q0 + 1) % m}, r); break;
                default: D.add(GateKind::CCZ, {0, 1, 2}, r); break;
            }
        }
        if (m == 3 && rng() % 2) {
            D.add(GateKind::CCZ, {0, 1, 2});
        }
        IntPolynomial f = diagonal_phase_polynomial(D);
        u64 M = degree3_count_modulus(d);
        i64 k = static_cast<i64>(rng() % M);
        v.require(degree3_zero_count_demo(D, k) == count_solutions(d, f, k, M), "count differs on\n" + format_circuit(D));
    }
    int holds = 0;
    for (const auto &c : verify_gadgets(1)) {
        v.require(c.holds, "gadget " + c.name);
        holds += c.holds;
    }
    if (v.ok) {
        v.detail = "50 cubic counts exact, " + std::to_string(holds) + " gadget identities hold";
    }
    return v;
}

Verdict holant_suite() {
    Verdict v;
    std::mt19937_64 rng(1212);
    for (int it = 0; it < 200 && v.ok; it++) {
        u64 d = 2 + rng() % 4;
        SignatureGrid g = random_affine_grid(d, 1 + static_cast<int>(rng() % 6), 3, rng);
        if (d % 2 == 0 && rng() % 2) {
            g.convention = SignConvention::MinusForEven;
        }
        CN value = holant_affine(g);
        v.require(value == holant_brute(g), "affine grid " + std::to_string(it));
        // lambda-linearity
        if (it % 4 == 0) {
            CN lambda = zeta(static_cast<u64>(2 + rng() % 10), 1) + CN(static_cast<long>(rng() % 3));
            SignatureGrid h = g;
            auto &s = std::get<AffineSignature>(h.vertices[0].signature);
            s.lambda = s.lambda * lambda;
            v.require(holant_affine(h) == value * lambda, "lambda-linearity");
        }
    }
    for (int it = 0; it < 200 && v.ok; it++) {
        u64 d = 2 + rng() % 4;
        SignatureGrid g = random_product_grid(d, 1 + static_cast<int>(rng() % 6), rng);
        v.require(holant_product(g) == holant_brute(g), "product grid " + std::to_string(it));
    }
    // closure of the affine class under pointwise product
    int closure = 0;
    for (int it = 0; closure < 100 && it < 5000 && v.ok; it++) {
        u64 d = 2 + rng() % 4;
        SignatureGrid g1 = random_affine_grid(d, 3, 2, rng), g2 = random_affine_grid(d, 3, 2, rng);
        const auto &s = std::get<AffineSignature>(g1.vertices[0].signature);
        const auto &t = std::get<AffineSignature>(g2.vertices[0].signature);
        if (s.arity != t.arity) {
            continue;
        }
        AffineSignature st = affine_product(s, t);
        u64 total = ipow(d, static_cast<unsigned>(s.arity));
        for (u64 idx = 0; idx < total; idx++) {
            auto x = digits_of(idx, d, s.arity);
            v.require(signature_value(st, d, x) == signature_value(s, d, x) * signature_value(t, d, x), "closure");
        }
        closure++;
    }
    v.require(closure == 100, "too few equal-arity signature pairs");
    if (v.ok) {
        v.detail = "200 affine + 200 product grids exact, lambda-linearity on 50, closure on " + std::to_string(closure);
    }
    return v;
}

struct Criterion {
    int id;
    const char *name;
    double limit;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "univariate closed forms", 30, univariate_closed_forms},
        {2, "multivariate half Gauss sweep", 300, half_gauss_sweep},
        {3, "tractability evidence", 10, tractability},
        {4, "Clifford strong simulation", 120, strong_simulation},
        {5, "marginal probabilities", 600, marginals},
        {6, "weak simulation", 600, weak_simulation},
        {7, "gate algebra", 600, gate_algebra},
        {8, "phase polynomial round trip", 600, round_trip},
        {9, "Fourier zero-count identity", 600, fourier_identity},
        {10, "two-power reduction and classification table", 600, two_power_reduction},
        {11, "degree-3 counts and gadgets", 600, degree3_and_gadgets},
        {12, "Holant evaluators", 600, holant_suite},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        auto t0 = Clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception &e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (v.ok && secs >= c.limit) {
            v.ok = false;
            v.detail = "exceeded the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
        }
        failures += !v.ok;
        std::printf("%s %2d %s (%.2f s): %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
