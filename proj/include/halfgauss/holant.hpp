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
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "halfgauss/clifford.hpp"
#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/oracle.hpp"
#include "halfgauss/polynomial.hpp"

namespace hg {

/// lambda * [A x + c = 0 mod d] * xi_d^{g(x)}; g is indexed by input position
/// (1-based).
struct AffineSignature {
    int arity = 0;
    CyclotomicNumber lambda{1};
    std::vector<std::vector<i64>> A;
    std::vector<i64> c;
    QuadraticForm g;
};

/// Unary weights joined by equalities: positions in one block must carry
/// equal values, and position i contributes unary[i](x_i) when present.
struct ProductSignature {
    int arity = 0;
    std::vector<std::vector<int>> blocks;
    std::vector<std::optional<std::vector<CyclotomicNumber>>> unary;
};

/// Explicit values, first input the most significant digit.
struct TableSignature {
    int arity = 0;
    std::vector<CyclotomicNumber> values;
};

using Signature = std::variant<AffineSignature, ProductSignature, TableSignature>;

inline int signature_arity(const Signature &s) {
    return std::visit([](const auto &x) { return x.arity; }, s);
}

struct GridVertex {
    std::vector<int> edges;
    Signature signature;
};

struct SignatureGrid {
    u64 d = 2;
    std::vector<std::string> edges;
    std::vector<GridVertex> vertices;
    /// Which xi_d the affine signatures use for even d.
    SignConvention convention = SignConvention::Default;

    void validate() const {
        if (d < 2) {
            throw std::invalid_argument("grid: d must be at least 2");
        }
        for (size_t v = 0; v < vertices.size(); v++) {
            const GridVertex &gv = vertices[v];
            const int arity = signature_arity(gv.signature);
            const std::string where = "vertex " + std::to_string(v);
            if (arity != static_cast<int>(gv.edges.size())) {
                throw std::invalid_argument(where + ": signature arity " + std::to_string(arity) + " but " +
                                            std::to_string(gv.edges.size()) + " incident edges");
            }
            for (int e : gv.edges) {
                if (e < 0 || e >= static_cast<int>(edges.size())) {
                    throw std::invalid_argument(where + ": unknown edge index " + std::to_string(e));
                }
            }
            std::visit([&](const auto &s) { check(s, where); }, gv.signature);
        }
    }

   private:
    void check(const AffineSignature &s, const std::string &where) const {
        if (s.c.size() != s.A.size()) {
            throw std::invalid_argument(where + ": A and c have different row counts");
        }
        for (const auto &row : s.A) {
            if (static_cast<int>(row.size()) != s.arity) {
                throw std::invalid_argument(where + ": constraint row length differs from arity");
            }
        }
        if (s.g.n > s.arity) {
            throw std::invalid_argument(where + ": g uses more variables than the arity");
        }
        if (!check_periodicity(d, s.g)) {
            throw AperiodicError(where + ": g fails the periodicity condition");
        }
    }

    void check(const ProductSignature &s, const std::string &where) const {
        std::vector<int> seen(s.arity, 0);
        for (const auto &b : s.blocks) {
            for (int p : b) {
                if (p < 0 || p >= s.arity || seen[p]++) {
                    throw std::invalid_argument(where + ": blocks must partition the input positions");
                }
            }
        }
        if (static_cast<int>(s.unary.size()) != s.arity) {
            throw std::invalid_argument(where + ": one unary slot per input position required");
        }
        for (const auto &u : s.unary) {
            if (u && u->size() != d) {
                throw std::invalid_argument(where + ": unary tables need d entries");
            }
        }
    }

    void check(const TableSignature &s, const std::string &where) const {
        long double need = 1;
        for (int i = 0; i < s.arity; i++) {
            need *= static_cast<long double>(d);
        }
        if (static_cast<long double>(s.values.size()) != need) {
            throw std::invalid_argument(where + ": table needs d^arity entries");
        }
    }
};

/// Value of one signature on a local assignment.
inline CyclotomicNumber signature_value(const Signature &sig, u64 d, const std::vector<u64> &x,
                                        SignConvention conv = SignConvention::Default) {
    if (const auto *a = std::get_if<AffineSignature>(&sig)) {
        for (size_t r = 0; r < a->A.size(); r++) {
            u64 acc = mod(a->c[r], d);
            for (int j = 0; j < a->arity; j++) {
                acc = addmod(acc, mulmod(mod(a->A[r][j], d), x[j], d), d);
            }
            if (acc != 0) {
                return CyclotomicNumber();
            }
        }
        std::vector<i64> xi(x.begin(), x.end());
        xi.resize(std::max<size_t>(xi.size(), a->g.n));
        u64 N = 2 * d;
        u64 ex = mulmod(a->g.eval_mod(xi, N), xi_exponent(d, conv), N);
        return a->lambda * CyclotomicNumber::root_of_unity(N, static_cast<i64>(ex));
    }
    if (const auto *p = std::get_if<ProductSignature>(&sig)) {
        for (const auto &b : p->blocks) {
            for (int q : b) {
                if (x[q] != x[b.front()]) {
                    return CyclotomicNumber();
                }
            }
        }
        CyclotomicNumber v(1);
        for (int i = 0; i < p->arity; i++) {
            if (p->unary[i]) {
                v *= (*p->unary[i])[x[i]];
            }
        }
        return v;
    }
    const auto &t = std::get<TableSignature>(sig);
    u64 idx = 0;
    for (u64 xv : x) {
        idx = idx * d + xv;
    }
    return t.values[idx];
}

/// Sum over all edge assignments, term by term.
inline CyclotomicNumber holant_brute(const SignatureGrid &grid) {
    grid.validate();
    const u64 d = grid.d;
    const int E = static_cast<int>(grid.edges.size());
    u64 total = require_budget(d, E, "holant_brute");
    // local value tables per vertex, indexed by its distinct edges
    std::vector<std::vector<int>> distinct;
    std::vector<std::vector<CyclotomicNumber>> tables;
    for (const auto &v : grid.vertices) {
        std::vector<int> ds = v.edges;
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        const int r = static_cast<int>(ds.size());
        std::vector<int> slot;
        for (int e : v.edges) {
            slot.push_back(static_cast<int>(std::lower_bound(ds.begin(), ds.end(), e) - ds.begin()));
        }
        u64 size = 1;
        for (int i = 0; i < r; i++) {
            size *= d;
        }
        std::vector<CyclotomicNumber> tab(size);
        std::vector<u64> y(r, 0), x(v.edges.size(), 0);
        for (u64 idx = 0; idx < size; idx++) {
            u64 t = idx;
            for (int i = r - 1; i >= 0; i--) {
                y[i] = t % d;
                t /= d;
            }
            for (size_t p = 0; p < x.size(); p++) {
                x[p] = y[slot[p]];
            }
            tab[idx] = signature_value(v.signature, d, x, grid.convention);
        }
        distinct.push_back(std::move(ds));
        tables.push_back(std::move(tab));
    }
    CyclotomicNumber sum;
    std::vector<u64> sigma(E, 0);
    for (u64 step = 0; step < total; step++) {
        CyclotomicNumber term(1);
        for (size_t v = 0; v < grid.vertices.size() && !term.is_zero(); v++) {
            u64 idx = 0;
            for (int e : distinct[v]) {
                idx = idx * d + sigma[e];
            }
            const CyclotomicNumber &f = tables[v][idx];
            if (f.is_zero()) {
                term = CyclotomicNumber();
            } else if (!(f == CyclotomicNumber(1))) {
                term *= f;
            }
        }
        if (!term.is_zero()) {
            sum += term;
        }
        for (int e = 0; e < E; e++) {
            if (++sigma[e] < d) {
                break;
            }
            sigma[e] = 0;
        }
    }
    return sum;
}

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Every signature in the product class: each equality-connected component
/// of edges takes one shared value.
inline CyclotomicNumber holant_product(const SignatureGrid &grid) {
    grid.validate();
    const u64 d = grid.d;
    const int E = static_cast<int>(grid.edges.size());
    detail::UnionFind uf(E);
    for (const auto &v : grid.vertices) {
        const auto *p = std::get_if<ProductSignature>(&v.signature);
        if (!p) {
            throw std::invalid_argument("holant_product: every signature must be a product signature");
        }
        for (const auto &b : p->blocks) {
            for (int q : b) {
                uf.unite(v.edges[q], v.edges[b.front()]);
            }
        }
    }
    // weights[root][value]
    std::vector<std::vector<CyclotomicNumber>> weight(E);
    for (const auto &v : grid.vertices) {
        const auto &p = std::get<ProductSignature>(v.signature);
        for (int i = 0; i < p.arity; i++) {
            if (!p.unary[i]) {
                continue;
            }
            auto &w = weight[uf.find(v.edges[i])];
            if (w.empty()) {
                w.assign(d, CyclotomicNumber(1));
            }
            for (u64 x = 0; x < d; x++) {
                w[x] *= (*p.unary[i])[x];
            }
        }
    }
    CyclotomicNumber total(1);
    for (int e = 0; e < E; e++) {
        if (uf.find(e) != e) {
            continue;
        }
        if (weight[e].empty()) {
            total *= CyclotomicNumber(static_cast<long>(d));
            continue;
        }
        CyclotomicNumber s;
        for (u64 x = 0; x < d; x++) {
            s += weight[e][x];
        }
        total *= s;
    }
    return total;
}

/// The single half Gauss sum exponent of an affine grid: edge variables
/// x_1..x_|E| followed by one Fourier variable per constraint row.
struct AffineCompilation {
    QuadraticForm exponent;
    int rows = 0;
    CyclotomicNumber lambda{1};
};

inline AffineCompilation compile_affine(const SignatureGrid &grid) {
    grid.validate();
    const int E = static_cast<int>(grid.edges.size());
    int R = 0;
    for (const auto &v : grid.vertices) {
        const auto *a = std::get_if<AffineSignature>(&v.signature);
        if (!a) {
            throw std::invalid_argument("holant_affine: every signature must be affine");
        }
        R += static_cast<int>(a->A.size());
    }
    AffineCompilation out;
    out.exponent = QuadraticForm(E + R);
    out.rows = R;
    QuadraticForm &G = out.exponent;
    int y = E;
    for (const auto &v : grid.vertices) {
        const auto &a = std::get<AffineSignature>(v.signature);
        out.lambda *= a.lambda;
        auto var = [&](int pos) { return v.edges[pos - 1] + 1; };
        for (const auto &[ij, c] : a.g.alpha) {
            G.add_alpha(var(ij.first), var(ij.second), c);
        }
        for (const auto &[i, c] : a.g.beta) {
            G.add_beta(var(i), c);
        }
        G.gamma0 += a.g.gamma0;
        for (size_t r = 0; r < a.A.size(); r++) {
            ++y;
            // xi^{2 y (A x + c)} = omega^{y (A x + c)}
            for (int j = 0; j < a.arity; j++) {
                if (a.A[r][j] != 0) {
                    G.add_alpha(y, v.edges[j] + 1, 2 * static_cast<i64>(mod(a.A[r][j], grid.d)));
                }
            }
            if (mod(a.c[r], grid.d) != 0) {
                G.add_beta(y, 2 * static_cast<i64>(mod(a.c[r], grid.d)));
            }
        }
    }
    return out;
}

/// Every signature affine: (prod lambda) d^{-R} Z_{1/2}(d, G_total).
inline CyclotomicNumber holant_affine(const SignatureGrid &grid) {
    AffineCompilation comp = compile_affine(grid);
    SumValue z = eval_half_gauss(grid.d, comp.exponent, grid.convention, false);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), grid.d, static_cast<unsigned long>(comp.rows));
    return (z.monomial * SurdMonomial::rational(mpq_class(1) / mpq_class(scale))).to_cyclotomic() * comp.lambda;
}

/// Pointwise product of two affine signatures of equal arity.
inline AffineSignature affine_product(const AffineSignature &s, const AffineSignature &t) {
    if (s.arity != t.arity) {
        throw std::invalid_argument("affine_product: arities differ");
    }
    AffineSignature out;
    out.arity = s.arity;
    out.lambda = s.lambda * t.lambda;
    out.A = s.A;
    out.A.insert(out.A.end(), t.A.begin(), t.A.end());
    out.c = s.c;
    out.c.insert(out.c.end(), t.c.begin(), t.c.end());
    out.g = QuadraticForm(std::max(s.g.n, t.g.n));
    for (const QuadraticForm *f : {&s.g, &t.g}) {
        for (const auto &[ij, v] : f->alpha) {
            out.g.add_alpha(ij.first, ij.second, v);
        }
        for (const auto &[i, v] : f->beta) {
            out.g.add_beta(i, v);
        }
        out.g.gamma0 += f->gamma0;
    }
    return out;
}

/// Picks the tractable evaluator the grid qualifies for, else brute force.
inline CyclotomicNumber holant(const SignatureGrid &grid, std::string *path = nullptr) {
    bool all_affine = true, all_product = true;
    for (const auto &v : grid.vertices) {
        all_affine = all_affine && std::holds_alternative<AffineSignature>(v.signature);
        all_product = all_product && std::holds_alternative<ProductSignature>(v.signature);
    }
    auto set = [&](const char *p) {
        if (path) {
            *path = p;
        }
    };
    if (all_affine) {
        set("affine");
        return holant_affine(grid);
    }
    if (all_product) {
        set("product");
        return holant_product(grid);
    }
    set("brute");
    return holant_brute(grid);
}

}  // namespace hg
