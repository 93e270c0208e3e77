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

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "halfgauss/cyclotomic.hpp"
#include "halfgauss/expsum.hpp"
#include "halfgauss/holant.hpp"
#include "halfgauss/polynomial.hpp"
#include "halfgauss/text.hpp"

namespace hg {

using json = nlohmann::ordered_json;

inline json approx_json(const CyclotomicNumber &x) {
    auto z = x.approx();
    return json::array({z.real(), z.imag()});
}

/// Exact residue, pretty form and rational view, plus a float approximation.
/// With approx_only the exact fields are left out of the display.
inline json value_json(const CyclotomicNumber &x, bool approx_only = false) {
    json j;
    if (!approx_only) {
        j["conductor"] = x.conductor();
        json coeffs = json::array();
        for (const auto &[e, c] : x.coeff_strings()) {
            coeffs.push_back(json::array({e, c}));
        }
        j["coeffs"] = coeffs;
        auto p = pretty(x);
        j["pretty"] = p ? json(*p) : json(nullptr);
        auto r = x.as_rational();
        j["rational"] = r ? json(r->get_str()) : json(nullptr);
    }
    j["approx"] = approx_json(x);
    return j;
}

inline json monomial_json(const SurdMonomial &m) {
    return {{"r", m.r.get_str()}, {"s", m.s}, {"phase", json::array({m.t.num, m.t.den})}, {"pretty", m.pretty()}};
}

inline json certificate_json(const std::vector<CertificateStep> &steps) {
    json out = json::array();
    for (const auto &s : steps) {
        json j{{"rule", s.rule}, {"detail", s.detail}};
        if (s.factor) {
            j["factor"] = s.factor->pretty();
        }
        out.push_back(std::move(j));
    }
    return out;
}

inline json quadratic_json(const QuadraticForm &q) {
    json alpha = json::object(), beta = json::object();
    for (const auto &[ij, v] : q.alpha) {
        alpha[std::to_string(ij.first) + "," + std::to_string(ij.second)] = v;
    }
    for (const auto &[i, v] : q.beta) {
        beta[std::to_string(i)] = v;
    }
    return {{"n", q.n}, {"alpha", alpha}, {"beta", beta}, {"gamma0", q.gamma0}, {"text", format_polynomial(q)}};
}

/// {"alpha": {"i,j": v}, "beta": {"i": v}, "gamma0": v, "n": k} or polynomial text.
inline QuadraticForm quadratic_from_json(const json &j, int min_vars) {
    if (j.is_string()) {
        return parse_quadratic(j.get<std::string>(), min_vars);
    }
    if (!j.is_object()) {
        throw std::invalid_argument("quadratic form must be an object or polynomial text");
    }
    struct Entry {
        int i, jj;
        i64 v;
    };
    std::vector<Entry> a;
    std::vector<std::pair<int, i64>> b;
    int n = min_vars;
    if (j.contains("alpha")) {
        for (const auto &[key, v] : j.at("alpha").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos) {
                throw std::invalid_argument("alpha keys look like \"i,j\"");
            }
            int i = std::stoi(key.substr(0, comma)), k = std::stoi(key.substr(comma + 1));
            a.push_back({i, k, v.get<i64>()});
            n = std::max({n, i, k});
        }
    }
    if (j.contains("beta")) {
        for (const auto &[key, v] : j.at("beta").items()) {
            int i = std::stoi(key);
            b.emplace_back(i, v.get<i64>());
            n = std::max(n, i);
        }
    }
    if (j.contains("n")) {
        n = std::max(n, j.at("n").get<int>());
    }
    QuadraticForm q(n);
    for (const auto &e : a) {
        q.add_alpha(e.i, e.jj, e.v);
    }
    for (const auto &[i, v] : b) {
        q.add_beta(i, v);
    }
    if (j.contains("gamma0")) {
        q.gamma0 = j.at("gamma0").get<i64>();
    }
    return q;
}

/// An integer, a "p/q" string, or {"conductor": N, "coeffs": [[e, "p/q"], ...]}.
inline CyclotomicNumber cyclotomic_from_json(const json &j) {
    if (j.is_number_integer()) {
        return CyclotomicNumber(j.get<long>());
    }
    if (j.is_string()) {
        mpq_class q;
        if (q.set_str(j.get<std::string>(), 10) != 0) {
            throw std::invalid_argument("bad rational '" + j.get<std::string>() + "'");
        }
        q.canonicalize();
        return CyclotomicNumber(q);
    }
    if (j.is_object()) {
        u64 n = j.at("conductor").get<u64>();
        if (n == 0) {
            throw std::invalid_argument("conductor must be positive");
        }
        CyclotomicNumber x;
        for (const auto &pair : j.at("coeffs")) {
            u64 e = pair.at(0).get<u64>();
            CyclotomicNumber c = cyclotomic_from_json(pair.at(1));
            x += c * CyclotomicNumber::root_of_unity(n, static_cast<i64>(e % n));
        }
        return x;
    }
    throw std::invalid_argument("cannot read a field element from " + j.dump());
}

inline SignConvention convention_from_string(const std::string &s) {
    if (s == "default" || s == "plus") {
        return SignConvention::Default;
    }
    if (s == "minus") {
        return SignConvention::MinusForEven;
    }
    throw std::invalid_argument("convention must be 'default' or 'minus'");
}

inline Signature signature_from_json(const json &j, int arity) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "affine") {
        AffineSignature s;
        s.arity = arity;
        if (j.contains("lambda")) {
            s.lambda = cyclotomic_from_json(j.at("lambda"));
        }
        if (j.contains("A")) {
            s.A = j.at("A").get<std::vector<std::vector<i64>>>();
        }
        s.c = j.contains("c") ? j.at("c").get<std::vector<i64>>() : std::vector<i64>(s.A.size(), 0);
        s.g = j.contains("g") ? quadratic_from_json(j.at("g"), arity) : QuadraticForm(arity);
        return s;
    }
    if (type == "product") {
        ProductSignature s;
        s.arity = arity;
        if (j.contains("blocks")) {
            s.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
        }
        s.unary.assign(arity, std::nullopt);
        if (j.contains("unary")) {
            const json &u = j.at("unary");
            if (!u.is_array() || static_cast<int>(u.size()) != arity) {
                throw std::invalid_argument("product signature: one unary entry per input");
            }
            for (int i = 0; i < arity; i++) {
                if (u[i].is_null()) {
                    continue;
                }
                std::vector<CyclotomicNumber> tab;
                for (const auto &v : u[i]) {
                    tab.push_back(cyclotomic_from_json(v));
                }
                s.unary[i] = std::move(tab);
            }
        }
        // positions outside every block form singleton blocks
        std::vector<int> seen(arity, 0);
        for (const auto &b : s.blocks) {
            for (int p : b) {
                if (p >= 0 && p < arity) {
                    seen[p]++;
                }
            }
        }
        for (int p = 0; p < arity; p++) {
            if (!seen[p]) {
                s.blocks.push_back({p});
            }
        }
        return s;
    }
    if (type == "table") {
        TableSignature s;
        s.arity = arity;
        for (const auto &v : j.at("values")) {
            s.values.push_back(cyclotomic_from_json(v));
        }
        return s;
    }
    throw std::invalid_argument("unknown signature type '" + type + "'");
}

inline SignatureGrid grid_from_json(const json &j) {
    SignatureGrid g;
    g.d = j.at("d").get<u64>();
    g.edges = j.at("edges").get<std::vector<std::string>>();
    std::map<std::string, int> index;
    for (size_t i = 0; i < g.edges.size(); i++) {
        if (!index.emplace(g.edges[i], static_cast<int>(i)).second) {
            throw std::invalid_argument("duplicate edge name '" + g.edges[i] + "'");
        }
    }
    if (j.contains("convention")) {
        g.convention = convention_from_string(j.at("convention").get<std::string>());
    }
    for (const auto &v : j.at("vertices")) {
        GridVertex gv;
        for (const auto &e : v.at("edges")) {
            auto it = index.find(e.get<std::string>());
            if (it == index.end()) {
                throw std::invalid_argument("unknown edge '" + e.get<std::string>() + "'");
            }
            gv.edges.push_back(it->second);
        }
        gv.signature = signature_from_json(v.at("signature"), static_cast<int>(gv.edges.size()));
        g.vertices.push_back(std::move(gv));
    }
    g.validate();
    return g;
}

}  // namespace hg
