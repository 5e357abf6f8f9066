// Copyright 2026 The ncseries Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncs/matrix.hpp"
#include "ncs/series.hpp"

namespace ncs {

/// The symbol d^order u_letter.
struct DiffSymbol {
    int letter = 0;
    int order = 0;
    friend auto operator<=>(const DiffSymbol&, const DiffSymbol&) = default;
};

using DiffMonomial = std::map<DiffSymbol, int>; // symbol -> exponent

/// Polynomials over Q in the commuting symbols d^r u_x.
class DiffPoly {
public:
    DiffPoly() = default;
    DiffPoly(int c) : DiffPoly(Rational(c)) {}
    DiffPoly(const Rational& c)
    {
        if (c != 0) t_.emplace(DiffMonomial{}, c);
    }

    /// d^r u_x.
    static DiffPoly symbol(int letter, int order = 0)
    {
        DiffPoly p;
        p.t_.emplace(DiffMonomial{{DiffSymbol{letter, order}, 1}}, Rational(1));
        return p;
    }

    const std::map<DiffMonomial, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

    DiffPoly operator-() const
    {
        DiffPoly r = *this;
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b)
    {
        DiffPoly r = a;
        for (const auto& [m, c] : b.t_) r.add(m, c);
        return r;
    }
    friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b)
    {
        DiffPoly r;
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) {
                DiffMonomial m = ma;
                for (const auto& [s, e] : mb) m[s] += e;
                r.add(m, ca * cb);
            }
        return r;
    }

    /// Leibniz extension of d(d^r u_x) = d^{r+1} u_x.
    DiffPoly derive() const
    {
        DiffPoly r;
        for (const auto& [m, c] : t_)
            for (const auto& [s, e] : m) {
                DiffMonomial n = m;
                if (--n[s] == 0) n.erase(s);
                ++n[DiffSymbol{s.letter, s.order + 1}];
                r.add(n, c * e);
            }
        return r;
    }

    /// Terms like `2*u0'*u1^2`; orders above two print as u0^(3).
    std::string to_string() const
    {
        if (t_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [m, c] : t_) {
            Rational a = c;
            if (!first) s += a < 0 ? " - " : " + ";
            else if (a < 0) s += "-";
            if (a < 0) a = -a;
            first = false;
            std::string body;
            for (const auto& [sym, e] : m) {
                if (!body.empty()) body += "*";
                body += "u" + std::to_string(sym.letter);
                if (sym.order <= 2) body += std::string(static_cast<std::size_t>(sym.order), '\'');
                else body += "^(" + std::to_string(sym.order) + ")";
                if (e > 1) body += (sym.order > 2 ? "**" : "^") + std::to_string(e);
            }
            if (body.empty()) s += a.str();
            else if (a == 1) s += body;
            else s += a.str() + "*" + body;
        }
        return s;
    }

private:
    void add(const DiffMonomial& m, const Rational& c)
    {
        if (c == 0) return;
        auto [it, fresh] = t_.emplace(m, c);
        if (fresh) return;
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }

    std::map<DiffMonomial, Rational> t_;
};

template <>
struct coeff_traits<DiffPoly> {
    static constexpr bool is_field = false;
    static constexpr bool is_exact = true;
    static constexpr const char* name = "Q{u}";
    static DiffPoly zero() { return {}; }
    static DiffPoly one() { return DiffPoly(1); }
    static bool is_zero(const DiffPoly& x) { return x.is_zero(); }
    static DiffPoly from_rational(const Rational& q) { return DiffPoly(q); }
    static std::string to_string(const DiffPoly& x) { return x.to_string(); }
    static DiffPoly parse(std::string_view) { throw ParseError("differential polynomials have no text input", 0); }
    static std::size_t pivot_cost(const DiffPoly& x) { return x.terms().size(); }
};

using DiffNCPoly = Series<DiffPoly>;

inline DiffPoly derive(const DiffPoly& p) { return p.derive(); }
inline DiffNCPoly derive(const DiffNCPoly& p)
{
    return p.map_coeffs([](const DiffPoly& c) { return c.derive(); });
}

/// M = sum_x u_x x over the letters of a finite alphabet.
inline DiffNCPoly input_matrix(const Alphabet& A)
{
    if (!A.is_finite()) throw std::invalid_argument("input symbols need a finite alphabet");
    DiffNCPoly m(A);
    for (int a : A.letters()) m.add(Word::letter(a), DiffPoly::symbol(a));
    return m;
}

/// Q_0 = 1, Q_l = Q_{l-1} M + d Q_{l-1}.
inline DiffNCPoly q_l(const Alphabet& A, int l)
{
    if (l < 0) throw std::invalid_argument("q_l needs l >= 0");
    const DiffNCPoly M = input_matrix(A);
    DiffNCPoly q = DiffNCPoly::constant(A, DiffPoly(1));
    for (int k = 1; k <= l; ++k) q = conc(q, M) + derive(q);
    return q;
}

/// Index binding for the product of binomials in the explicit form of Q_l.
/// suffix: prod_m C(r_m + ... + r_k + k - m, r_m) (counts the insertion
/// orders of the derivative events, agrees with the recursion);
/// prefix: prod_m C(r_1 + ... + r_m + m - 1, r_m) (differs from the recursion
/// from l = 3 on; kept for comparison).
enum class QlBinding { suffix, prefix };

inline DiffNCPoly q_l_explicit(const Alphabet& A, int l, QlBinding binding = QlBinding::suffix)
{
    if (l < 0) throw std::invalid_argument("q_l needs l >= 0");
    if (!A.is_finite()) throw std::invalid_argument("input symbols need a finite alphabet");
    DiffNCPoly q(A);
    if (l == 0) return DiffNCPoly::constant(A, DiffPoly(1));
    for (int k = 1; k <= l; ++k) {
        // Multi-indices r of length k with sum l - k.
        std::vector<int> r(static_cast<std::size_t>(k), 0);
        std::function<void(int, int)> comp = [&](int pos, int left) {
            if (pos == k - 1) {
                r[static_cast<std::size_t>(pos)] = left;
                Rational coef = 1;
                for (int m = 0; m < k; ++m) {
                    int top = 0;
                    if (binding == QlBinding::suffix) {
                        for (int j = m; j < k; ++j) top += r[static_cast<std::size_t>(j)];
                        top += k - 1 - m;
                    } else {
                        for (int j = 0; j <= m; ++j) top += r[static_cast<std::size_t>(j)];
                        top += m;
                    }
                    coef *= binomial(top, r[static_cast<std::size_t>(m)]);
                }
                for (const Word& w : A.words_of_grade(k)) {
                    DiffPoly c(coef);
                    for (int m = 0; m < k; ++m) c = c * DiffPoly::symbol(w[static_cast<std::size_t>(m)], r[static_cast<std::size_t>(m)]);
                    q.add(w, c);
                }
                return;
            }
            for (int v = 0; v <= left; ++v) {
                r[static_cast<std::size_t>(pos)] = v;
                comp(pos + 1, left - v);
            }
        };
        comp(0, l - k);
    }
    return q;
}

// ---------------------------------------------------------------------------
// Specialization of the symbols to rational functions of z.

using Assignment = std::map<int, RatFun>;

class Specializer {
public:
    explicit Specializer(Assignment a) : a_(std::move(a)) {}

    const RatFun& value(const DiffSymbol& s)
    {
        auto it = a_.find(s.letter);
        if (it == a_.end()) throw DomainError("no assignment for u" + std::to_string(s.letter));
        auto& ds = cache_[s.letter];
        if (ds.empty()) ds.push_back(it->second);
        while (static_cast<int>(ds.size()) <= s.order) ds.push_back(ds.back().derivative());
        return ds[static_cast<std::size_t>(s.order)];
    }

    RatFun operator()(const DiffPoly& p)
    {
        RatFun r;
        for (const auto& [m, c] : p.terms()) {
            RatFun t(c);
            for (const auto& [s, e] : m)
                for (int k = 0; k < e; ++k) t = t * value(s);
            r = r + t;
        }
        return r;
    }

    Series<RatFun> operator()(const DiffNCPoly& p)
    {
        return p.map_coeffs([this](const DiffPoly& c) { return (*this)(c); });
    }

private:
    Assignment a_;
    std::map<int, std::vector<RatFun>> cache_;
};

inline RatFun specialize(const DiffPoly& p, const Assignment& a) { return Specializer(a)(p); }
inline Series<RatFun> specialize(const DiffNCPoly& p, const Assignment& a) { return Specializer(a)(p); }

/// Parses `x0=1/z, x1=1/(1-z)` against an alphabet.
inline Assignment parse_assignment(const Alphabet& A, std::string_view text)
{
    Assignment out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        // Commas never occur inside Q(z) text, so splitting is safe.
        if (comma == std::string_view::npos) comma = text.size();
        const std::string_view item = text.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected letter=value", pos);
        std::string name(item.substr(0, eq));
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        const Word w = A.parse_word(name);
        if (w.size() != 1) throw ParseError("expected a single letter before '='", pos);
        out[w.front()] = parse_ratfun(item.substr(eq + 1));
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Residues and the independence criterion.

/// Rational roots of p with multiplicities; throws if p has other roots.
inline std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p)
{
    if (p.is_zero()) throw DomainError("roots of the zero polynomial");
    std::vector<std::pair<Rational, int>> roots;
    UPoly q = p.scaled(Rational(1) / p.content());
    auto divide_out = [&](const Rational& a) {
        const UPoly lin(std::vector<Rational>{-a, 1});
        int m = 0;
        while (q.degree() > 0 && q.eval(a) == 0) {
            q = divmod(q, lin).first;
            ++m;
        }
        if (m) roots.emplace_back(a, m);
    };
    divide_out(0);
    while (q.degree() > 0) {
        q = q.scaled(Rational(1) / q.content());
        const Integer a0 = boost::multiprecision::abs(boost::multiprecision::numerator(q[0]));
        const Integer an = boost::multiprecision::abs(boost::multiprecision::numerator(q.lead()));
        auto divisors = [](const Integer& n) {
            std::vector<Integer> d;
            for (Integer k = 1; k * k <= n; ++k)
                if (n % k == 0) {
                    d.push_back(k);
                    if (k * k != n) d.push_back(n / k);
                }
            return d;
        };
        bool found = false;
        for (const Integer& u : divisors(a0)) {
            for (const Integer& v : divisors(an)) {
                for (int sgn : {1, -1}) {
                    const Rational a = Rational(u * sgn) / Rational(v);
                    if (q.eval(a) == 0) {
                        divide_out(a);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) throw DomainError("pole not rational: " + q.to_string('z'));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Residue of f at z = a.
inline Rational residue(const RatFun& f, const Rational& a)
{
    const UPoly lin(std::vector<Rational>{-a, 1});
    UPoly e = f.den();
    int m = 0;
    while (e.eval(a) == 0) {
        e = divmod(e, lin).first;
        ++m;
    }
    if (m == 0) return 0;
    // Coefficient of h^{m-1} in N(a+h) / E(a+h).
    const UPoly n = f.num().shifted(a), d = e.shifted(a);
    std::vector<Rational> s(static_cast<std::size_t>(m), Rational(0));
    for (int k = 0; k < m; ++k) {
        Rational acc = n[k];
        for (int j = 1; j <= k; ++j) acc -= d[j] * s[static_cast<std::size_t>(k - j)];
        s[static_cast<std::size_t>(k)] = acc / d[0];
    }
    return s.back();
}

/// True when f = g' for some g in Q(z) (all residues vanish).
inline bool is_derivative(const RatFun& f)
{
    for (const auto& [a, m] : rational_roots(f.den()))
        if (residue(f, a) != 0) return false;
    return true;
}

enum class IndependenceBase { Q, Qz };

/// base Q: {u_x} linearly independent over Q.
/// base Q(z): c -> residues of sum_x c_x u_x is injective, i.e. no nonzero
/// constant combination of the inputs is a derivative in Q(z).
inline bool independence_criterion(const Assignment& inputs, IndependenceBase base)
{
    if (inputs.empty()) return true;
    std::vector<RatFun> u;
    for (const auto& [x, f] : inputs) u.push_back(f);
    const std::size_t n = u.size();
    if (base == IndependenceBase::Q) {
        UPoly den(1);
        for (const auto& f : u) den = den * divmod(f.den(), gcd(den, f.den())).first;
        std::vector<UPoly> nums;
        int deg = 0;
        for (const auto& f : u) {
            nums.push_back(f.num() * divmod(den, f.den()).first);
            deg = std::max(deg, nums.back().degree());
        }
        SpanBasis<Rational> sp(static_cast<std::size_t>(deg + 1));
        for (const auto& p : nums) {
            std::vector<Rational> v(static_cast<std::size_t>(deg + 1), Rational(0));
            for (int k = 0; k <= p.degree(); ++k) v[static_cast<std::size_t>(k)] = p[k];
            if (!sp.insert(v)) return false;
        }
        return true;
    }
    std::set<Rational> poles;
    for (const auto& f : u)
        for (const auto& [a, m] : rational_roots(f.den())) poles.insert(a);
    if (poles.size() < n) return false;
    SpanBasis<Rational> sp(poles.size());
    for (const auto& f : u) {
        std::vector<Rational> col;
        for (const Rational& a : poles) col.push_back(residue(f, a));
        if (!sp.insert(col)) return false;
    }
    return true;
}

} // namespace ncs
