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
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "halfgauss/numtheory.hpp"

namespace hg {

/// Sparse integer polynomial, (exponent, coefficient) sorted by exponent.
using SparsePoly = std::vector<std::pair<u64, i64>>;

namespace detail {

inline std::vector<i64> dense_divide_exact(std::vector<i64> num, const std::vector<i64> &den) {
    size_t dn = num.size() - 1, dd = den.size() - 1;
    std::vector<i64> quo(dn - dd + 1, 0);
    for (size_t e = dn + 1; e-- > dd;) {
        i64 c = num[e];
        if (c == 0) {
            continue;
        }
        quo[e - dd] = c;  // den is monic
        for (size_t j = 0; j <= dd; j++) {
            num[e - dd + j] -= c * den[j];
        }
    }
    return quo;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out;
    for (u64 i = 1; i * i <= n; i++) {
        if (n % i == 0) {
            out.push_back(i);
            if (i * i != n) {
                out.push_back(n / i);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

class PhiCache {
   public:
    static PhiCache &instance() {
        static PhiCache cache;
        return cache;
    }

    std::shared_ptr<const std::vector<i64>> dense(u64 n) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = table_.find(n);
            if (it != table_.end()) {
                return it->second;
            }
        }
        // Phi_n = (x^n - 1) / prod_{e | n, e < n} Phi_e
        std::vector<i64> p(n + 1, 0);
        p[0] = -1;
        p[n] = 1;
        for (u64 e : divisors(n)) {
            if (e < n) {
                p = dense_divide_exact(std::move(p), *dense(e));
            }
        }
        auto ptr = std::make_shared<const std::vector<i64>>(std::move(p));
        std::lock_guard<std::mutex> lock(mu_);
        return table_.emplace(n, ptr).first->second;
    }

   private:
    std::mutex mu_;
    std::map<u64, std::shared_ptr<const std::vector<i64>>> table_;
};

}  // namespace detail

/// Coefficients of the n-th cyclotomic polynomial, index = exponent.
inline std::vector<i64> cyclotomic_polynomial(u64 n) {
    return *detail::PhiCache::instance().dense(n);
}

/// Choice of square root of omega_d for even d.
enum class SignConvention { Default, MinusForEven };

inline const char *convention_name(SignConvention c) {
    return c == SignConvention::Default ? "default" : "minus";
}

/// xi_d = zeta_{2d}^e; returns e.
inline u64 xi_exponent(u64 d, SignConvention conv) {
    if (d % 2 == 1 || conv == SignConvention::MinusForEven) {
        return (d + 1) % (2 * d);
    }
    return 1;
}

/// An element of Q(zeta_N) stored as its canonical residue modulo Phi_N.
class CyclotomicNumber {
   public:
    using Term = std::pair<u64, mpq_class>;

    CyclotomicNumber() = default;

    CyclotomicNumber(const mpq_class &r) {  // NOLINT
        if (r != 0) {
            terms_.emplace_back(0, r);
            terms_.back().second.canonicalize();
        }
    }

    CyclotomicNumber(long r) : CyclotomicNumber(mpq_class(r)) {}  // NOLINT

    static CyclotomicNumber root_of_unity(u64 n, i64 t) {
        if (n == 0) {
            throw std::invalid_argument("root_of_unity: conductor must be positive");
        }
        std::vector<mpq_class> acc(n);
        acc[mod(t, n)] = 1;
        return from_dense(n, std::move(acc));
    }

    /// Sum_j coeffs[j] zeta_n^j for a length-n coefficient vector.
    static CyclotomicNumber from_dense(u64 n, std::vector<mpq_class> acc) {
        for (auto &c : acc) {
            c.canonicalize();
        }
        CyclotomicNumber out;
        out.n_ = n;
        reduce_into(n, acc, out.terms_);
        return out;
    }

    static CyclotomicNumber from_counts(u64 n, const std::vector<i64> &counts) {
        std::vector<mpq_class> acc(n);
        for (u64 j = 0; j < counts.size(); j++) {
            acc[j % n] += counts[j];
        }
        return from_dense(n, std::move(acc));
    }

    u64 conductor() const { return n_; }
    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CyclotomicNumber embed(u64 m) const {
        if (m == 0 || m % n_ != 0) {
            throw std::invalid_argument("embed: conductor " + std::to_string(n_) + " does not divide " +
                                        std::to_string(m));
        }
        if (m == n_) {
            return *this;
        }
        u64 f = m / n_;
        std::vector<mpq_class> acc(m);
        for (const auto &[e, c] : terms_) {
            acc[e * f] = c;
        }
        return from_dense(m, std::move(acc));
    }

    CyclotomicNumber operator-() const {
        CyclotomicNumber out = *this;
        for (auto &t : out.terms_) {
            t.second = -t.second;
        }
        return out;
    }

    friend CyclotomicNumber operator+(const CyclotomicNumber &x, const CyclotomicNumber &y) {
        return combine(x, y, false);
    }

    friend CyclotomicNumber operator-(const CyclotomicNumber &x, const CyclotomicNumber &y) {
        return combine(x, y, true);
    }

    friend CyclotomicNumber operator*(const CyclotomicNumber &x, const CyclotomicNumber &y) {
        if (x.is_zero() || y.is_zero()) {
            return CyclotomicNumber();
        }
        if (x.n_ == 1) {
            return y.scaled(x.terms_[0].second);
        }
        if (y.n_ == 1) {
            return x.scaled(y.terms_[0].second);
        }
        u64 n = lcm(x.n_, y.n_);
        CyclotomicNumber ae, be;
        if (x.n_ != n) {
            ae = x.embed(n);
        }
        if (y.n_ != n) {
            be = y.embed(n);
        }
        const CyclotomicNumber &u = x.n_ == n ? x : ae;
        const CyclotomicNumber &v = y.n_ == n ? y : be;
        std::vector<mpq_class> acc(n);
        for (const auto &[e1, c1] : u.terms_) {
            for (const auto &[e2, c2] : v.terms_) {
                u64 e = e1 + e2;
                if (e >= n) {
                    e -= n;
                }
                acc[e] += c1 * c2;
            }
        }
        return from_dense(n, std::move(acc));
    }

    CyclotomicNumber &operator+=(const CyclotomicNumber &y) { return *this = *this + y; }
    CyclotomicNumber &operator-=(const CyclotomicNumber &y) { return *this = *this - y; }
    CyclotomicNumber &operator*=(const CyclotomicNumber &y) { return *this = *this * y; }

    CyclotomicNumber scaled(const mpq_class &r) const {
        if (r == 0) {
            CyclotomicNumber z;
            z.n_ = n_;
            return z;
        }
        mpq_class f = r;
        f.canonicalize();
        CyclotomicNumber out = *this;
        for (auto &t : out.terms_) {
            t.second *= f;
        }
        return out;
    }

    /// Complex conjugate: zeta_N^j -> zeta_N^{N-j}.
    CyclotomicNumber conj() const {
        if (n_ <= 2) {
            return *this;
        }
        std::vector<mpq_class> acc(n_);
        for (const auto &[e, c] : terms_) {
            acc[(n_ - e) % n_] = c;
        }
        return from_dense(n_, std::move(acc));
    }

    friend bool operator==(const CyclotomicNumber &x, const CyclotomicNumber &y) {
        if (x.n_ == y.n_) {
            return x.terms_ == y.terms_;
        }
        if (x.is_zero() || y.is_zero()) {
            return x.is_zero() && y.is_zero();
        }
        u64 n = lcm(x.n_, y.n_);
        return x.embed(n).terms_ == y.embed(n).terms_;
    }

    friend bool operator!=(const CyclotomicNumber &x, const CyclotomicNumber &y) { return !(x == y); }

    std::optional<mpq_class> as_rational() const {
        if (terms_.empty()) {
            return mpq_class(0);
        }
        if (terms_.size() == 1 && terms_[0].first == 0) {
            return terms_[0].second;
        }
        return std::nullopt;
    }

    std::complex<double> approx() const {
        long double re = 0, im = 0;
        const long double tau = 6.283185307179586476925286766559L;
        for (const auto &[e, c] : terms_) {
            long double ang = tau * static_cast<long double>(e) / static_cast<long double>(n_);
            long double v = static_cast<long double>(c.get_d());
            if (c.get_den() != 1 || !c.get_num().fits_slong_p()) {
                v = mpq_to_long_double(c);
            }
            re += v * std::cos(ang);
            im += v * std::sin(ang);
        }
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    /// Coefficient string map for JSON output.
    std::vector<std::pair<u64, std::string>> coeff_strings() const {
        std::vector<std::pair<u64, std::string>> out;
        for (const auto &[e, c] : terms_) {
            out.emplace_back(e, c.get_str());
        }
        return out;
    }

   private:
    u64 n_ = 1;
    std::vector<Term> terms_;

    static long double mpq_to_long_double(const mpq_class &q) {
        mpz_class num = q.get_num(), den = q.get_den();
        long e1 = 0, e2 = 0;
        double a = mpz_get_d_2exp(&e1, num.get_mpz_t());
        double b = mpz_get_d_2exp(&e2, den.get_mpz_t());
        return std::ldexp(static_cast<long double>(a) / b, static_cast<int>(e1 - e2));
    }

    static void reduce_into(u64 n, std::vector<mpq_class> &acc, std::vector<Term> &out) {
        auto phi = detail::PhiCache::instance().dense(n);
        const std::vector<i64> &p = *phi;
        u64 deg = p.size() - 1;
        SparsePoly sp;
        for (u64 j = 0; j < deg; j++) {
            if (p[j] != 0) {
                sp.emplace_back(j, p[j]);
            }
        }
        mpq_class tmp;
        for (u64 e = n; e-- > deg;) {
            if (acc[e] == 0) {
                continue;
            }
            for (const auto &[j, pj] : sp) {
                tmp = acc[e] * pj;
                acc[e - deg + j] -= tmp;
            }
            acc[e] = 0;
        }
        out.clear();
        for (u64 j = 0; j < deg; j++) {
            if (acc[j] != 0) {
                out.emplace_back(j, std::move(acc[j]));
            }
        }
    }

    static CyclotomicNumber combine(const CyclotomicNumber &x, const CyclotomicNumber &y, bool sub) {
        u64 n = lcm(x.n_, y.n_);
        CyclotomicNumber ue, ve;
        if (x.n_ != n) {
            ue = x.embed(n);
        }
        if (y.n_ != n) {
            ve = y.embed(n);
        }
        const CyclotomicNumber &u = x.n_ == n ? x : ue;
        const CyclotomicNumber &v = y.n_ == n ? y : ve;
        CyclotomicNumber out;
        out.n_ = n;
        size_t i = 0, j = 0;
        while (i < u.terms_.size() || j < v.terms_.size()) {
            if (j == v.terms_.size() || (i < u.terms_.size() && u.terms_[i].first < v.terms_[j].first)) {
                out.terms_.push_back(u.terms_[i++]);
            } else if (i == u.terms_.size() || v.terms_[j].first < u.terms_[i].first) {
                out.terms_.emplace_back(v.terms_[j].first, sub ? mpq_class(-v.terms_[j].second) : v.terms_[j].second);
                j++;
            } else {
                mpq_class c = sub ? mpq_class(u.terms_[i].second - v.terms_[j].second)
                                  : mpq_class(u.terms_[i].second + v.terms_[j].second);
                if (c != 0) {
                    out.terms_.emplace_back(u.terms_[i].first, std::move(c));
                }
                i++;
                j++;
            }
        }
        return out;
    }
};

/// Rational point of Q/Z, read as the phase exp(2 pi i num/den).
struct Phase {
    i64 num = 0;
    i64 den = 1;

    Phase() = default;
    Phase(i64 n, i64 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den <= 0) {
            throw std::invalid_argument("Phase: denominator must be positive");
        }
        num = static_cast<i64>(mod(num, static_cast<u64>(den)));
        i64 g = static_cast<i64>(gcd(static_cast<u64>(num), static_cast<u64>(den)));
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) {
            den = 1;
        }
    }

    friend Phase operator+(const Phase &a, const Phase &b) {
        i64 l = static_cast<i64>(lcm(static_cast<u64>(a.den), static_cast<u64>(b.den)));
        __int128 n = static_cast<__int128>(a.num) * (l / a.den) + static_cast<__int128>(b.num) * (l / b.den);
        return Phase(static_cast<i64>(n % l), l);
    }

    Phase operator-() const { return Phase(-num, den); }

    friend bool operator==(const Phase &a, const Phase &b) { return a.num == b.num && a.den == b.den; }
};

/// Value r * sqrt(s) * exp(2 pi i t) with r >= 0 rational and s squarefree.
struct SurdMonomial {
    mpq_class r = 1;
    u64 s = 1;
    Phase t;

    static SurdMonomial zero() {
        SurdMonomial z;
        z.r = 0;
        return z;
    }

    static SurdMonomial rational(const mpq_class &q) {
        SurdMonomial m;
        m.r = abs(q);
        if (q < 0) {
            m.t = Phase(1, 2);
        }
        if (q == 0) {
            m.s = 1;
        }
        return m;
    }

    static SurdMonomial root(i64 num, i64 den) {
        SurdMonomial m;
        m.t = Phase(num, den);
        return m;
    }

    /// sqrt(x) for a positive integer x.
    static SurdMonomial sqrt_of(u64 x) {
        auto [s, r] = squarefree_decompose(x);
        SurdMonomial m;
        m.r = mpz_class(std::to_string(r));
        m.s = s;
        return m;
    }

    bool is_zero() const { return r == 0; }

    friend SurdMonomial operator*(const SurdMonomial &a, const SurdMonomial &b) {
        if (a.is_zero() || b.is_zero()) {
            return zero();
        }
        SurdMonomial m;
        u64 g = gcd(a.s, b.s);
        m.r = a.r * b.r;
        if (g > 1) {
            m.r *= mpz_class(std::to_string(g));
        }
        unsigned __int128 s = static_cast<unsigned __int128>(a.s / g) * (b.s / g);
        if (s >= (static_cast<unsigned __int128>(1) << 63)) {
            throw std::overflow_error("SurdMonomial: radicand overflow");
        }
        m.s = static_cast<u64>(s);
        m.t = a.t + b.t;
        return m;
    }

    SurdMonomial &operator*=(const SurdMonomial &b) { return *this = *this * b; }

    SurdMonomial inverse() const {
        if (is_zero()) {
            throw std::domain_error("SurdMonomial: inverse of zero");
        }
        SurdMonomial m;
        m.r = 1 / (r * mpz_class(std::to_string(s)));
        m.s = s;
        m.t = -t;
        return m;
    }

    SurdMonomial conj() const {
        SurdMonomial m = *this;
        m.t = -t;
        return m;
    }

    friend bool operator==(const SurdMonomial &a, const SurdMonomial &b) {
        if (a.is_zero() || b.is_zero()) {
            return a.is_zero() && b.is_zero();
        }
        return a.r == b.r && a.s == b.s && a.t == b.t;
    }

    CyclotomicNumber to_cyclotomic() const;
    std::string pretty() const;
};

namespace detail {

inline CyclotomicNumber sqrt_prime(u64 p) {
    if (p == 2) {
        return CyclotomicNumber::root_of_unity(8, 1) - CyclotomicNumber::root_of_unity(8, 3);
    }
    // sum of zeta_p^{x^2} is sqrt(p) or i*sqrt(p)
    std::vector<i64> counts(p, 0);
    for (u64 x = 0; x < p; x++) {
        counts[x * x % p]++;
    }
    CyclotomicNumber g = CyclotomicNumber::from_counts(p, counts);
    if (p % 4 == 1) {
        return g;
    }
    return g * CyclotomicNumber::root_of_unity(4, 3);
}

inline CyclotomicNumber sqrt_squarefree(u64 s) {
    static std::mutex mu;
    static std::map<u64, CyclotomicNumber> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(s);
        if (it != cache.end()) {
            return it->second;
        }
    }
    CyclotomicNumber out(1);
    for (auto [p, e] : factorize(s)) {
        (void)e;
        out = out * sqrt_prime(p);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(s, out);
    return out;
}

inline u64 sqrt_conductor(u64 s) {
    u64 n = 1;
    for (auto [p, e] : factorize(s)) {
        (void)e;
        n = lcm(n, p == 2 ? 8 : (p % 4 == 1 ? p : 4 * p));
    }
    return n;
}

}  // namespace detail

/// Exact sqrt(s) for a squarefree s, built from quadratic Gauss sums.
inline CyclotomicNumber sqrt_exact(u64 s) {
    return detail::sqrt_squarefree(s);
}

inline CyclotomicNumber SurdMonomial::to_cyclotomic() const {
    if (is_zero()) {
        return CyclotomicNumber();
    }
    CyclotomicNumber out = CyclotomicNumber::root_of_unity(static_cast<u64>(t.den), t.num);
    if (s != 1) {
        out = out * detail::sqrt_squarefree(s);
    }
    return out.scaled(r);
}

inline std::string SurdMonomial::pretty() const {
    if (is_zero()) {
        return "0";
    }
    std::string coef = r == 1 ? "" : r.get_str();
    std::string rad = s == 1 ? "" : "√" + std::to_string(s);
    std::string body;
    if (t.den == 1) {
        body = coef + rad;
        if (body.empty()) {
            body = "1";
        }
        return body;
    }
    if (t.den == 2) {
        body = coef + rad;
        return "-" + (body.empty() ? std::string("1") : body);
    }
    if (t.den == 4) {
        std::string sign = t.num == 3 ? "-" : "";
        return sign + coef + "i" + rad;
    }
    std::string z = "ζ_" + std::to_string(t.den);
    if (t.num != 1) {
        z += "^" + std::to_string(t.num);
    }
    if (coef.empty() && rad.empty()) {
        return z;
    }
    return coef + rad + "·" + z;
}

/// Recognizes x as r * sqrt(s) * (root of unity) when it has that shape.
inline std::optional<SurdMonomial> as_surd_monomial(const CyclotomicNumber &x) {
    if (x.is_zero()) {
        return SurdMonomial::zero();
    }
    auto norm = (x * x.conj()).as_rational();
    if (!norm || *norm <= 0) {
        return std::nullopt;
    }
    mpz_class num = norm->get_num(), den = norm->get_den();
    mpz_class prod = num * den;
    if (!prod.fits_ulong_p() || prod.get_ui() >= (u64{1} << 62)) {
        return std::nullopt;
    }
    auto [s, root] = squarefree_decompose(prod.get_ui());
    (void)root;
    mpq_class r2 = *norm / mpz_class(std::to_string(s));
    mpz_class rn, rd;
    if (!mpz_perfect_square_p(r2.get_num().get_mpz_t()) || !mpz_perfect_square_p(r2.get_den().get_mpz_t())) {
        return std::nullopt;
    }
    mpz_sqrt(rn.get_mpz_t(), r2.get_num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), r2.get_den().get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    u64 m = lcm(lcm(2, x.conductor()), detail::sqrt_conductor(s));
    CyclotomicNumber y = (x * detail::sqrt_squarefree(s)).scaled(1 / (r * mpz_class(std::to_string(s))));
    std::complex<double> z = y.approx();
    double ang = std::atan2(z.imag(), z.real());
    i64 guess = std::llround(ang / 6.283185307179586 * static_cast<double>(m));
    for (i64 delta : {0, 1, -1}) {
        i64 t = guess + delta;
        if (y == CyclotomicNumber::root_of_unity(m, t)) {
            SurdMonomial out;
            out.r = r;
            out.s = s;
            out.t = Phase(t, static_cast<i64>(m));
            return out;
        }
    }
    return std::nullopt;
}

namespace detail {

inline std::string gaussian_rational_pretty(const mpq_class &a, const mpq_class &b) {
    std::string out;
    if (a != 0) {
        out = a.get_str();
    }
    if (b != 0) {
        std::string coef = (b == 1 || b == -1) ? "" : mpq_class(abs(b)).get_str();
        if (b < 0) {
            out += "-";
        } else if (!out.empty()) {
            out += "+";
        }
        out += coef + "i";
    }
    return out.empty() ? "0" : out;
}

}  // namespace detail

/// Display string: a+bi when the value is a Gaussian rational, otherwise a
/// monomial r*sqrt(s)*zeta_N^t when recognizable.
inline std::optional<std::string> pretty(const CyclotomicNumber &x) {
    CyclotomicNumber re2 = x + x.conj();
    CyclotomicNumber im2 = (x - x.conj()) * CyclotomicNumber::root_of_unity(4, 3);
    auto a = re2.as_rational();
    auto b = im2.as_rational();
    if (a && b) {
        return detail::gaussian_rational_pretty(*a / 2, *b / 2);
    }
    if (auto m = as_surd_monomial(x)) {
        return m->pretty();
    }
    return std::nullopt;
}

struct Extracted {
    bool is_zero;
    std::optional<mpq_class> as_rational;
    std::complex<double> approx;
    std::optional<std::string> pretty;
};

inline Extracted extract(const CyclotomicNumber &x) {
    return {x.is_zero(), x.as_rational(), x.approx(), pretty(x)};
}

inline std::ostream &operator<<(std::ostream &os, const CyclotomicNumber &x) {
    if (auto p = pretty(x)) {
        return os << *p;
    }
    os << "[N=" << x.conductor() << ":";
    for (const auto &[e, c] : x.terms()) {
        os << " " << c.get_str() << "*z^" << e;
    }
    return os << "]";
}

inline std::ostream &operator<<(std::ostream &os, const SurdMonomial &m) {
    return os << m.pretty();
}

/// Pretty form when one exists, else the raw residue.
inline std::string to_string(const CyclotomicNumber &x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace hg
