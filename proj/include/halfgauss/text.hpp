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
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "halfgauss/clifford.hpp"
#include "halfgauss/polynomial.hpp"

namespace hg {

class ParseError : public std::invalid_argument {
   public:
    ParseError(const std::string &msg, size_t pos)
        : std::invalid_argument(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    size_t position() const { return pos_; }

   private:
    size_t pos_;
};

namespace detail {

class PolyLexer {
   public:
    explicit PolyLexer(std::string_view s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            i_++;
        }
    }
    bool done() {
        skip();
        return i_ >= s_.size();
    }
    char peek() {
        skip();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    size_t pos() {
        skip();
        return i_;
    }
    bool eat(char c) {
        if (peek() == c) {
            i_++;
            return true;
        }
        return false;
    }
    i64 integer(const char *what) {
        size_t start = pos();
        size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
            j++;
        }
        if (j == start) {
            throw ParseError(std::string("expected ") + what, start);
        }
        if (j < s_.size() && (s_[j] == '.' || s_[j] == '/' || s_[j] == 'e' || s_[j] == 'E')) {
            throw ParseError("coefficients must be integers", j);
        }
        i64 v = 0;
        auto [p, ec] = std::from_chars(s_.data() + start, s_.data() + j, v);
        if (ec != std::errc()) {
            throw ParseError(std::string(what) + " out of range", start);
        }
        i_ = j;
        return v;
    }

   private:
    std::string_view s_;
    size_t i_ = 0;
};

}  // namespace detail

/// Signed terms `[c*]x<k>[^p]*...`, variables 1-indexed; "" is 0.
inline IntPolynomial parse_polynomial(std::string_view src) {
    detail::PolyLexer lx(src);
    IntPolynomial p;
    if (lx.done()) {
        return p;
    }
    bool first = true;
    while (!lx.done()) {
        i64 sign = 1;
        if (lx.eat('+')) {
        } else if (lx.eat('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected '+' or '-'", lx.pos());
        }
        first = false;
        i64 coef = 1;
        IntPolynomial::Monomial mono;
        bool have_factor = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coef = lx.integer("coefficient");
            have_factor = true;
            if (!lx.eat('*')) {
                p.add({}, sign * coef);
                continue;
            }
        }
        for (;;) {
            size_t at = lx.pos();
            if (!lx.eat('x')) {
                throw ParseError(have_factor ? "expected variable after '*'" : "expected coefficient or variable", at);
            }
            i64 k = lx.integer("variable index");
            if (k < 1 || k > 1'000'000) {
                throw ParseError("variable index must lie in [1, 1000000]", at);
            }
            i64 e = 1;
            if (lx.eat('^')) {
                size_t ep = lx.pos();
                e = lx.integer("exponent");
                if (e < 1 || e > 64) {
                    throw ParseError("exponent must lie in [1, 64]", ep);
                }
            }
            for (i64 r = 0; r < e; r++) {
                mono.push_back(static_cast<int>(k));
            }
            if (!lx.eat('*')) {
                break;
            }
        }
        p.add(mono, sign * coef);
    }
    return p;
}

/// Canonical text: higher degree first, then by variables.
inline std::string format_polynomial(const IntPolynomial &p) {
    std::vector<std::pair<IntPolynomial::Monomial, i64>> terms(p.terms.begin(), p.terms.end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto &a, const auto &b) { return a.first.size() > b.first.size(); });
    std::ostringstream os;
    bool first = true;
    for (const auto &[mono, c] : terms) {
        i64 mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) {
                os << "-";
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mono.empty()) {
            os << mag;
            continue;
        }
        if (mag != 1) {
            os << mag << "*";
        }
        for (size_t i = 0; i < mono.size();) {
            size_t j = i;
            while (j < mono.size() && mono[j] == mono[i]) {
                j++;
            }
            if (i > 0) {
                os << "*";
            }
            os << "x" << mono[i];
            if (j - i > 1) {
                os << "^" << (j - i);
            }
            i = j;
        }
    }
    return first ? "0" : os.str();
}

inline std::string format_polynomial(const QuadraticForm &q) {
    return format_polynomial(IntPolynomial::from_quadratic(q));
}

/// Quadratic view of a parsed polynomial, with the variable count kept.
inline QuadraticForm parse_quadratic(std::string_view src, int min_vars = 0) {
    IntPolynomial p = parse_polynomial(src);
    auto q = p.as_quadratic();
    if (!q) {
        throw std::invalid_argument("polynomial has degree " + std::to_string(p.degree()) + ", expected at most 2");
    }
    q->n = std::max(q->n, min_vars);
    return *q;
}

inline GateKind parse_gate_kind(const std::string &name) {
    static const std::pair<const char *, GateKind> table[] = {
        {"X", GateKind::X},     {"Y", GateKind::Y},   {"Z", GateKind::Z},   {"F", GateKind::F},
        {"FDAG", GateKind::FDAG}, {"G", GateKind::G}, {"CZ", GateKind::CZ}, {"H", GateKind::H},
        {"S", GateKind::S},     {"SDAG", GateKind::SDAG}, {"CS", GateKind::CS}, {"CX", GateKind::CX},
        {"CCZ", GateKind::CCZ},
    };
    for (const auto &[n, k] : table) {
        if (name == n) {
            return k;
        }
    }
    throw std::invalid_argument("unknown gate '" + name + "'");
}

/// `dim d`, `qudits m`, then one gate per line with an optional `*r`.
inline Circuit parse_circuit(std::string_view src) {
    Circuit c;
    bool have_dim = false, have_m = false;
    std::istringstream in{std::string(src)};
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string &msg) -> void {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };
    auto number = [&](const std::string &tok) -> u64 {
        u64 v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) {
            fail("expected a nonnegative integer, got '" + tok + "'");
        }
        return v;
    };
    while (std::getline(in, line)) {
        lineno++;
        if (auto h = line.find('#'); h != std::string::npos) {
            line.erase(h);
        }
        // "*r" may touch the previous token
        std::string spaced;
        for (char ch : line) {
            if (ch == '*') {
                spaced += " *";
            } else {
                spaced += ch;
            }
        }
        std::istringstream ls(spaced);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        if (tok[0] == "dim") {
            if (tok.size() != 2 || have_dim) {
                fail("expected a single 'dim <d>'");
            }
            c.d = number(tok[1]);
            have_dim = true;
            continue;
        }
        if (tok[0] == "qudits") {
            if (tok.size() != 2 || have_m) {
                fail("expected a single 'qudits <m>'");
            }
            c.m = static_cast<int>(number(tok[1]));
            have_m = true;
            continue;
        }
        if (!have_dim || !have_m) {
            fail("'dim' and 'qudits' must precede the gates");
        }
        Gate g;
        try {
            g.kind = parse_gate_kind(tok[0]);
        } catch (const std::invalid_argument &e) {
            fail(e.what());
        }
        size_t i = 1;
        for (; i < tok.size() && tok[i][0] != '*'; i++) {
            g.targets.push_back(static_cast<int>(number(tok[i])));
        }
        if (i < tok.size()) {
            std::string r = tok[i].substr(1);
            if (r.empty() && i + 1 < tok.size()) {
                r = tok[++i];
            }
            g.repeat = number(r);
            if (++i != tok.size()) {
                fail("unexpected text after the repeat count");
            }
        }
        c.gates.push_back(std::move(g));
    }
    if (!have_dim || !have_m) {
        throw std::invalid_argument("circuit needs 'dim' and 'qudits' lines");
    }
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw std::invalid_argument(std::string("circuit: ") + e.what());
    }
    return c;
}

inline std::string format_circuit(const Circuit &c) {
    std::ostringstream os;
    os << "dim " << c.d << "\nqudits " << c.m << "\n";
    for (const Gate &g : c.gates) {
        os << gate_name(g.kind);
        for (int t : g.targets) {
            os << " " << t;
        }
        if (g.repeat != 1) {
            os << " *" << g.repeat;
        }
        os << "\n";
    }
    return os.str();
}

/// "0120" digit by digit, or comma separated for larger digits.
inline std::vector<u64> parse_digits(std::string_view s) {
    std::vector<u64> out;
    std::string t(s);
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (t.find(',') != std::string::npos) {
        std::stringstream ss(t);
        for (std::string part; std::getline(ss, part, ',');) {
            u64 v = 0;
            auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (part.empty() || ec != std::errc() || p != part.data() + part.size()) {
                throw std::invalid_argument("bad digit '" + part + "'");
            }
            out.push_back(v);
        }
        return out;
    }
    for (char ch : t) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw std::invalid_argument(std::string("bad digit '") + ch + "'");
        }
        out.push_back(static_cast<u64>(ch - '0'));
    }
    return out;
}

inline std::string format_digits(const std::vector<u64> &v, u64 d) {
    std::string out;
    for (size_t i = 0; i < v.size(); i++) {
        if (d > 10 && i > 0) {
            out += ",";
        }
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace hg
