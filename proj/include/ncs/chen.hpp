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

// Chen series of the inputs u_x along a real segment z0 -> z1:
//   <C, x v> (z) = int_{z0}^{z} u_x(s) <C, v>(s) ds,   <C, 1> = 1,
// i.e. the solution of dC = M C, M = sum_x u_x x, C(z0) = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "ncs/automata.hpp"
#include "ncs/diffring.hpp"

namespace ncs {

// ---------------------------------------------------------------------------
// Input functions.

class InputFunction {
public:
    enum class Kind { rational, exp, power };

    InputFunction() : InputFunction(RatFun()) {}
    InputFunction(RatFun f) : kind_(Kind::rational), f_(std::move(f)) {}

    static InputFunction constant(const Rational& q) { return InputFunction(RatFun(q)); }
    static InputFunction inv_z() { return InputFunction(parse_ratfun("1/z")); }
    static InputFunction inv_one_minus_z() { return InputFunction(parse_ratfun("1/(1-z)")); }
    static InputFunction exp()
    {
        InputFunction u;
        u.kind_ = Kind::exp;
        return u;
    }
    /// z^a for real a, on z >= 0.
    static InputFunction power(double a)
    {
        InputFunction u;
        u.kind_ = Kind::power;
        u.a_ = a;
        return u;
    }

    /// `exp(z)`, `pow(z,a)` or a Q(z) expression.
    static InputFunction parse(std::string_view text)
    {
        std::string s;
        for (char c : text)
            if (c != ' ') s += c;
        if (s == "exp(z)") return exp();
        if (s.rfind("pow(z,", 0) == 0 && s.back() == ')') {
            const std::string a = s.substr(6, s.size() - 7);
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(a, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != a.size() || a.empty()) throw ParseError("bad exponent in pow(z,a)", 6);
            return power(v);
        }
        return InputFunction(parse_ratfun(s));
    }

    Kind kind() const { return kind_; }
    /// Exact Q(z) view, when the input is rational.
    std::optional<RatFun> exact() const
    {
        if (kind_ == Kind::rational) return f_;
        return std::nullopt;
    }
    bool is_zero() const { return kind_ == Kind::rational && f_.is_zero(); }

    double operator()(double z) const { return derivative(z, 0); }

    /// k-th derivative at z.
    double derivative(double z, int k) const
    {
        switch (kind_) {
        case Kind::exp: return std::exp(z);
        case Kind::power: {
            double c = 1;
            for (int i = 0; i < k; ++i) c *= a_ - i;
            return c * std::pow(z, a_ - k);
        }
        case Kind::rational: break;
        }
        RatFun d = f_;
        for (int i = 0; i < k; ++i) d = d.derivative();
        return d.eval(z);
    }

    /// Order of vanishing at z0 (negative for a pole, +inf for zero).
    double valuation_at(double z0) const
    {
        if (kind_ == Kind::exp) return 0;
        if (kind_ == Kind::power) return z0 == 0 ? a_ : 0;
        if (f_.is_zero()) return std::numeric_limits<double>::infinity();
        const Rational a = rational_from_double(z0);
        return multiplicity(f_.num(), a) - multiplicity(f_.den(), a);
    }

    /// Not analytic at z (pole or branch point).
    bool singular_at(double z) const
    {
        if (kind_ == Kind::exp) return false;
        if (kind_ == Kind::power) return z == 0 && !(a_ >= 0 && a_ == std::floor(a_));
        return f_.den().eval(rational_from_double(z)) == 0;
    }

    /// Throws unless the closed segment avoids singularities, except at z0.
    void check_path(double z0, double z1) const
    {
        const double lo = std::min(z0, z1), hi = std::max(z0, z1);
        if (kind_ == Kind::power) {
            if (lo < 0) throw DomainError("pow(z,a) needs a path in z >= 0");
            if (lo == 0 && z0 != 0 && singular_at(0)) throw DomainError("singularity of pow(z,a) at the path end");
            return;
        }
        if (kind_ != Kind::rational) return;
        const UPoly& d = f_.den();
        if (d.degree() <= 0) return;
        const Rational a = rational_from_double(lo), b = rational_from_double(hi);
        int roots = count_real_roots(d, a, b);
        if (d.eval(rational_from_double(z0)) == 0) --roots;
        if (roots > 0) throw DomainError("input " + to_string() + " has a pole on the path");
    }

    std::string to_string() const
    {
        switch (kind_) {
        case Kind::exp: return "exp(z)";
        case Kind::power: return "pow(z," + detail::double_text(a_) + ")";
        case Kind::rational: break;
        }
        return f_.to_string('z');
    }

    /// Distinct real roots of p in the closed interval [a, b] (Sturm).
    static int count_real_roots(const UPoly& p, const Rational& a, const Rational& b)
    {
        if (p.degree() <= 0) return 0;
        const UPoly sqf = divmod(p, gcd(p, p.derivative())).first;
        std::vector<UPoly> chain = {sqf, sqf.derivative()};
        while (chain.back().degree() > 0) {
            const UPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
            if (r.is_zero()) break;
            chain.push_back(-r);
        }
        auto changes = [&](const Rational& x) {
            int n = 0;
            int last = 0;
            for (const auto& q : chain) {
                const Rational v = q.eval(x);
                const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
                if (s == 0) continue;
                if (last != 0 && s != last) ++n;
                last = s;
            }
            return n;
        };
        return changes(a) - changes(b) + (sqf.eval(a) == 0 ? 1 : 0);
    }

private:
    static int multiplicity(UPoly p, const Rational& a)
    {
        const UPoly lin(std::vector<Rational>{-a, 1});
        int m = 0;
        while (p.degree() > 0 && p.eval(a) == 0) {
            p = divmod(p, lin).first;
            ++m;
        }
        return m;
    }

    Kind kind_ = Kind::rational;
    RatFun f_;
    double a_ = 0;
};

using Inputs = std::map<int, InputFunction>;

/// Parses `x0=1/z, x1=exp(z)` against an alphabet.
inline Inputs parse_inputs(const Alphabet& A, std::string_view text)
{
    Inputs out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        // Split on commas outside parentheses (pow(z,a) contains one).
        std::size_t end = pos;
        int depth = 0;
        while (end < text.size() && !(text[end] == ',' && depth == 0)) {
            if (text[end] == '(') ++depth;
            if (text[end] == ')') --depth;
            ++end;
        }
        const std::string_view item = text.substr(pos, end - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected letter=value", pos);
        std::string name(item.substr(0, eq));
        name.erase(0, name.find_first_not_of(' '));
        name.erase(name.find_last_not_of(' ') + 1);
        const Word w = A.parse_word(name);
        if (w.size() != 1) throw ParseError("expected a single letter before '='", pos);
        out[w.front()] = InputFunction::parse(item.substr(eq + 1));
        pos = end + 1;
    }
    return out;
}

/// Exact view of inputs for symbolic work; throws if some input is not rational.
inline Assignment exact_inputs(const Inputs& in)
{
    Assignment a;
    for (const auto& [x, u] : in) {
        const auto f = u.exact();
        if (!f) throw DomainError("input " + u.to_string() + " is not a rational function");
        a[x] = *f;
    }
    return a;
}

// ---------------------------------------------------------------------------
// Evaluation.

struct ChenValue {
    double value = 0;
    double error = 0;
};

struct ChenEvaluation {
    Alphabet alphabet = Alphabet::X();
    Inputs inputs;
    double z0 = 0, z1 = 0;
    int max_length = 0;
    std::map<Word, ChenValue> values;
    std::set<Word> divergent;
    bool converged = true;

    bool has(const Word& w) const { return values.count(w) > 0; }
    double coeff(const Word& w) const
    {
        auto it = values.find(w);
        if (it != values.end()) return it->second.value;
        if (divergent.count(w)) throw DomainError("iterated integral diverges for " + alphabet.word_text(w));
        throw DomainError("word not evaluated: " + alphabet.word_text(w));
    }
    double max_error() const
    {
        double e = 0;
        for (const auto& [w, v] : values) e = std::max(e, v.error);
        return e;
    }
    /// Truncated numeric series (divergent words omitted).
    Series<double> series() const
    {
        Series<double> s(alphabet, max_length);
        for (const auto& [w, v] : values) s.add(w, v.value);
        return s;
    }
};

namespace detail {

constexpr int kGaussPoints = 16;

struct GaussRule {
    std::vector<double> x, w, bary;
    std::vector<std::vector<double>> S; // S[i][j] = int_{-1}^{x_i} l_j
};

inline double legendre(int k, double x)
{
    if (k == 0) return 1;
    double p0 = 1, p1 = x;
    for (int n = 1; n < k; ++n) {
        const double p2 = ((2 * n + 1) * x * p1 - n * p0) / (n + 1);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

inline const GaussRule& gauss_rule()
{
    static const GaussRule rule = [] {
        using G = boost::math::quadrature::gauss<double, kGaussPoints>;
        GaussRule g;
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        for (std::size_t i = ab.size(); i-- > 0;) {
            g.x.push_back(-ab[i]);
            g.w.push_back(wt[i]);
        }
        for (std::size_t i = 0; i < ab.size(); ++i) {
            g.x.push_back(ab[i]);
            g.w.push_back(wt[i]);
        }
        const int p = kGaussPoints;
        // l_j = sum_k c_jk P_k with c_jk = w_j P_k(x_j) (2k+1)/2.
        auto integral = [](int k, double x) {
            if (k == 0) return x + 1;
            return (legendre(k + 1, x) - legendre(k - 1, x)) / (2 * k + 1);
        };
        g.S.assign(p, std::vector<double>(p, 0.0));
        for (int j = 0; j < p; ++j)
            for (int k = 0; k < p; ++k) {
                const double c = g.w[j] * legendre(k, g.x[j]) * (2 * k + 1) / 2.0;
                for (int i = 0; i < p; ++i) g.S[i][j] += c * integral(k, g.x[i]);
            }
        g.bary.resize(p);
        for (int j = 0; j < p; ++j) {
            double prod = 1;
            for (int k = 0; k < p; ++k)
                if (k != j) prod *= g.x[j] - g.x[k];
            g.bary[j] = 1 / prod;
        }
        return g;
    }();
    return rule;
}

/// Order of vanishing of <C, w> at z0, or nullopt when the integral diverges.
inline std::optional<double> chen_order(const Word& w, const Inputs& in, double z0, std::map<Word, std::optional<double>>& memo)
{
    if (w.empty()) return 0.0;
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    std::optional<double> r;
    const auto inner = chen_order(w.tail(), in, z0, memo);
    auto u = in.find(w.front());
    if (u == in.end() || u->second.is_zero()) r = std::numeric_limits<double>::infinity();
    else if (inner) {
        const double v = *inner + u->second.valuation_at(z0);
        if (v > -1 + 1e-12) r = v + 1;
    }
    memo[w] = r;
    return r;
}

inline bool needs_grading(const Inputs& in, double z0)
{
    for (const auto& [x, u] : in)
        if (u.singular_at(z0)) return true;
    return false;
}

/// Breakpoints from z0 to z1: uniform, or geometric towards z0.
inline std::vector<double> base_mesh(double z0, double z1, bool graded)
{
    std::vector<double> t;
    if (!graded) {
        for (int k = 0; k <= 4; ++k) t.push_back(z0 + (z1 - z0) * k / 4.0);
        return t;
    }
    t.push_back(z0);
    for (int k = 40; k >= 0; --k) t.push_back(z0 + (z1 - z0) * std::ldexp(1.0, -k));
    return t;
}

inline std::vector<double> refine(const std::vector<double>& t)
{
    std::vector<double> r;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        r.push_back(t[i]);
        r.push_back(0.5 * (t[i] + t[i + 1]));
    }
    r.push_back(t.back());
    return r;
}

/// Collocation of the triangular system on a fixed mesh. `words` must be
/// closed under taking tails and sorted by length.
inline std::map<Word, double> collocate(const std::vector<Word>& words, const Inputs& in, const std::vector<double>& t)
{
    const GaussRule& g = gauss_rule();
    const int p = kGaussPoints;
    const std::size_t M = t.size() - 1;
    std::map<int, std::vector<double>> uval;
    for (const auto& [x, u] : in) {
        auto& v = uval[x];
        v.resize(M * p);
        for (std::size_t m = 0; m < M; ++m)
            for (int i = 0; i < p; ++i) v[m * p + i] = u(t[m] + (t[m + 1] - t[m]) * (g.x[i] + 1) / 2);
    }
    std::map<Word, std::vector<double>> nodal;
    std::map<Word, double> out;
    for (const Word& w : words) {
        if (w.empty()) {
            nodal[w].assign(M * p, 1.0);
            out[w] = 1.0;
            continue;
        }
        auto uv = uval.find(w.front());
        std::vector<double> f(M * p, 0.0);
        double start = 0;
        if (uv != uval.end()) {
            const std::vector<double>& fv = nodal.at(w.tail());
            std::vector<double> gj(p);
            for (std::size_t m = 0; m < M; ++m) {
                const double h = (t[m + 1] - t[m]) / 2;
                double total = 0;
                for (int j = 0; j < p; ++j) {
                    gj[j] = uv->second[m * p + j] * fv[m * p + j];
                    total += g.w[j] * gj[j];
                }
                for (int i = 0; i < p; ++i) {
                    double acc = 0;
                    for (int j = 0; j < p; ++j) acc += g.S[i][j] * gj[j];
                    f[m * p + i] = start + h * acc;
                }
                start += h * total;
            }
        }
        nodal[w] = std::move(f);
        out[w] = start;
    }
    return out;
}

inline std::vector<Word> tail_closure(const std::set<Word>& ws)
{
    std::set<Word> all;
    for (Word w : ws) {
        while (true) {
            if (!all.insert(w).second) break;
            if (w.empty()) break;
            w = w.tail();
        }
    }
    all.insert(Word{});
    std::vector<Word> v(all.begin(), all.end());
    std::stable_sort(v.begin(), v.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
    return v;
}

} // namespace detail

/// Chen coefficients on a word set (closed under tails internally), by
/// Gauss-Legendre collocation with mesh doubling until successive values
/// agree within tol. Divergent words are listed, not evaluated.
inline ChenEvaluation chen_words(const Alphabet& A, const Inputs& in, double z0, double z1, const std::set<Word>& words,
                                 double tol = 1e-10)
{
    if (!(std::isfinite(z0) && std::isfinite(z1))) throw DomainError("path endpoints must be finite");
    for (const auto& [x, u] : in) {
        if (!A.contains(x)) throw std::invalid_argument("input for a letter outside the alphabet");
        u.check_path(z0, z1);
    }
    ChenEvaluation ev;
    ev.alphabet = A;
    ev.inputs = in;
    ev.z0 = z0;
    ev.z1 = z1;
    for (const Word& w : words) ev.max_length = std::max(ev.max_length, static_cast<int>(w.size()));
    std::map<Word, std::optional<double>> memo;
    std::set<Word> ok;
    for (const Word& w : words) {
        if (detail::chen_order(w, in, z0, memo)) ok.insert(w);
        else ev.divergent.insert(w);
    }
    const std::vector<Word> order = detail::tail_closure(ok);
    if (z0 == z1) {
        for (const Word& w : ok) ev.values[w] = {w.empty() ? 1.0 : 0.0, 0.0};
        return ev;
    }
    std::vector<double> mesh = detail::base_mesh(z0, z1, detail::needs_grading(in, z0));
    std::map<Word, double> prev = detail::collocate(order, in, mesh);
    ev.converged = false;
    std::map<Word, double> err;
    for (int level = 0; level < 9; ++level) {
        mesh = detail::refine(mesh);
        std::map<Word, double> cur = detail::collocate(order, in, mesh);
        double worst = 0;
        for (const auto& [w, v] : cur) {
            const double e = std::fabs(v - prev.at(w));
            err[w] = e;
            worst = std::max(worst, e);
        }
        prev = std::move(cur);
        if (worst <= tol && level >= 1) {
            ev.converged = true;
            break;
        }
    }
    for (const Word& w : ok) ev.values[w] = {prev.at(w), err.count(w) ? err.at(w) : 0.0};
    return ev;
}

/// All words of length <= L.
inline ChenEvaluation chen_series(const Alphabet& A, const Inputs& in, double z0, double z1, int L, double tol = 1e-10)
{
    std::set<Word> ws;
    for (const Word& w : A.words_up_to(L)) ws.insert(w);
    return chen_words(A, in, z0, z1, ws, tol);
}

/// One iterated integral, by adaptive bisection with Gauss-Legendre panels;
/// each tail is kept as a piecewise interpolant and reused.
struct IntegralResult {
    double value = 0;
    double error = 0;
};

namespace detail {

class Piecewise {
public:
    Piecewise(double z0, double z1) : z0_(z0), z1_(z1) {}

    void add_panel(double a, double b, std::vector<double> vals)
    {
        a_.push_back(a);
        b_.push_back(b);
        v_.push_back(std::move(vals));
    }

    double operator()(double t) const
    {
        const double s = (t - z0_) / (z1_ - z0_);
        // Panels are stored in path order; find the last one starting before s.
        std::size_t lo = 0, hi = a_.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if ((a_[mid] - z0_) / (z1_ - z0_) <= s) lo = mid;
            else hi = mid;
        }
        const GaussRule& g = gauss_rule();
        const double xi = 2 * (t - a_[lo]) / (b_[lo] - a_[lo]) - 1;
        double num = 0, den = 0;
        for (int j = 0; j < kGaussPoints; ++j) {
            const double d = xi - g.x[j];
            if (d == 0) return v_[lo][j];
            const double c = g.bary[j] / d;
            num += c * v_[lo][j];
            den += c;
        }
        return num / den;
    }

private:
    double z0_, z1_;
    std::vector<double> a_, b_;
    std::vector<std::vector<double>> v_;
};

} // namespace detail

inline IntegralResult iterated_integral(const Word& word, const Inputs& in, double z0, double z1, double tol = 1e-10)
{
    for (const auto& [x, u] : in) u.check_path(z0, z1);
    std::map<Word, std::optional<double>> memo;
    if (!detail::chen_order(word, in, z0, memo))
        throw DomainError("non-integrable singularity at the start of the path");
    if (word.empty()) return {1.0, 0.0};
    if (z0 == z1) return {0.0, 0.0};
    const detail::GaussRule& g = detail::gauss_rule();
    const int p = detail::kGaussPoints;
    const double len = std::fabs(z1 - z0);
    std::function<double(double)> inner = [](double) { return 1.0; };
    std::vector<detail::Piecewise> keep;
    keep.reserve(word.size());
    IntegralResult res;
    for (std::size_t k = word.size(); k-- > 0;) {
        auto it = in.find(word[k]);
        if (it == in.end() || it->second.is_zero()) return {0.0, 0.0};
        const InputFunction& u = it->second;
        detail::Piecewise F(z0, z1);
        double start = 0, errsum = 0;
        auto panel_integral = [&](double a, double b, std::vector<double>* gj) {
            const double h = (b - a) / 2;
            double s = 0;
            for (int j = 0; j < p; ++j) {
                const double t = a + h * (g.x[j] + 1);
                const double v = u(t) * inner(t);
                if (gj) (*gj)[j] = v;
                s += g.w[j] * v;
            }
            return h * s;
        };
        std::function<void(double, double, int)> walk = [&](double a, double b, int depth) {
            std::vector<double> gj(p);
            const double whole = panel_integral(a, b, &gj);
            const double m = 0.5 * (a + b);
            const double halves = panel_integral(a, m, nullptr) + panel_integral(m, b, nullptr);
            const double e = std::fabs(whole - halves);
            if (e > tol * std::fabs(b - a) / len && depth < 48) {
                walk(a, m, depth + 1);
                walk(m, b, depth + 1);
                return;
            }
            if (!std::isfinite(whole)) throw DomainError("non-integrable singularity on the path");
            std::vector<double> vals(p);
            const double h = (b - a) / 2;
            for (int i = 0; i < p; ++i) {
                double acc = 0;
                for (int j = 0; j < p; ++j) acc += g.S[i][j] * gj[j];
                vals[i] = start + h * acc;
            }
            F.add_panel(a, b, std::move(vals));
            start += halves;
            errsum += e;
        };
        walk(z0, z1, 0);
        keep.push_back(std::move(F));
        const detail::Piecewise* fp = &keep.back();
        inner = [fp](double t) { return (*fp)(t); };
        res = {start, res.error + errsum};
    }
    return res;
}

// ---------------------------------------------------------------------------
// Group-likeness checks.

struct DefectReport {
    double defect = 0;
    std::string location;
};

/// max |<S, u ⧢ v> - <S,u><S,v>| over nonempty u, v with |u|+|v| <= L whose
/// shuffle support was evaluated.
inline DefectReport friedrichs_check(const ChenEvaluation& ev)
{
    DefectReport r;
    std::vector<Word> ws;
    for (const auto& [w, v] : ev.values)
        if (!w.empty()) ws.push_back(w);
    for (const Word& u : ws)
        for (const Word& v : ws) {
            if (static_cast<int>(u.size() + v.size()) > ev.max_length) continue;
            double lhs = 0;
            bool complete = true;
            for (const auto& [w, n] : shuffle_words(u, v)) {
                auto it = ev.values.find(w);
                if (it == ev.values.end()) {
                    complete = false;
                    break;
                }
                lhs += static_cast<double>(n) * it->second.value;
            }
            if (!complete) continue;
            const double d = std::fabs(lhs - ev.values.at(u).value * ev.values.at(v).value);
            if (d > r.defect) {
                r.defect = d;
                r.location = ev.alphabet.word_text(u) + " ⧢ " + ev.alphabet.word_text(v);
            }
        }
    return r;
}

/// Largest coefficient of Δ⧢(P_n) - P_n ⊗ 1 - 1 ⊗ P_n over the homogeneous
/// components P_n of log C.
inline DefectReport primitive_log_check(const ChenEvaluation& ev)
{
    if (ev.max_length < 2) throw std::invalid_argument("primitive_log_check needs max length >= 2");
    for (const Word& w : ev.alphabet.words_up_to(ev.max_length))
        if (!ev.has(w)) throw DomainError("log needs every word up to the bound; missing " + ev.alphabet.word_text(w));
    const Series<double> L = t_log(ev.series());
    DefectReport r;
    const Series<double> one = Series<double>::constant(ev.alphabet, 1.0, ev.max_length);
    for (int n = 1; n <= ev.max_length; ++n) {
        const Series<double> P = L.component(n);
        const Tensor<double> d = coproduct(Product::shuffle, P) - Tensor<double>::outer(P, one) - Tensor<double>::outer(one, P);
        for (const auto& [k, c] : d.terms())
            if (std::fabs(c) > r.defect) {
                r.defect = std::fabs(c);
                r.location = ev.alphabet.word_text(k.first) + "|" + ev.alphabet.word_text(k.second);
            }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Pairing y = <C, R>.

struct PairSeriesResult {
    double value = 0;
    double tail = 0;             // bound on the omitted words
    double quadrature_error = 0; // accumulated coefficient error estimates
    int length = 0;              // words up to this length were summed
    bool certified = false;      // tail finite and quadrature converged
};

namespace detail {

inline double inf_norm(const Matrix<Rational>& m)
{
    double best = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::fabs(m(i, j).convert_to<double>());
        best = std::max(best, s);
    }
    return best;
}

/// Sampled sup of |u| on the segment (inf when the sample hits a pole).
inline double sup_on_path(const InputFunction& u, double z0, double z1)
{
    double s = 0;
    const int n = 4096;
    for (int k = 0; k <= n; ++k) {
        const double t = z0 + (z1 - z0) * k / n;
        if (u.singular_at(t)) {
            if (u.valuation_at(t) < 0) return std::numeric_limits<double>::infinity();
            continue;
        }
        s = std::max(s, std::fabs(u(t)));
    }
    return s;
}

/// k e^c c^{L+1}/(L+1)! with c = sum_x |mu(x)| sup|u_x| |z1 - z0|, k = |nu|_1 |eta|_inf.
inline double tail_bound(const LinearRep<Rational>& rep, const Inputs& in, double z0, double z1, int L)
{
    double c = 0;
    for (const auto& [x, m] : rep.mu) {
        auto it = in.find(x);
        if (it == in.end() || m.is_zero()) continue;
        c += inf_norm(m) * sup_on_path(it->second, z0, z1) * std::fabs(z1 - z0);
    }
    double k = 0;
    for (std::size_t i = 0; i < rep.dim; ++i) k += std::fabs(rep.nu(0, i).convert_to<double>());
    k *= inf_norm(rep.eta);
    if (k == 0 || c == 0) return 0;
    if (!std::isfinite(c)) return std::numeric_limits<double>::infinity();
    return k * std::exp(c + (L + 1) * std::log(c) - std::lgamma(L + 2.0));
}

/// Words of length <= L with nu mu(w) eta != 0.
inline std::set<Word> rep_support(const LinearRep<Rational>& rep, const Inputs& in, int L, std::size_t limit)
{
    std::set<Word> out;
    std::vector<int> letters;
    for (const auto& [x, m] : rep.mu) {
        auto it = in.find(x);
        if (!m.is_zero() && it != in.end() && !it->second.is_zero()) letters.push_back(x);
    }
    std::vector<int> cur;
    std::function<void(const Matrix<Rational>&)> rec = [&](const Matrix<Rational>& row) {
        if (row.is_zero()) return;
        if ((row * rep.eta)(0, 0) != 0) {
            out.insert(Word(cur));
            if (out.size() > limit) throw DomainError("representation support too large for pair_series");
        }
        if (static_cast<int>(cur.size()) == L) return;
        for (int x : letters) {
            cur.push_back(x);
            rec(row * rep.mu.at(x));
            cur.pop_back();
        }
    };
    if (rep.dim) rec(rep.nu);
    return out;
}

} // namespace detail

/// Sum over the evaluated words plus the tail bound beyond ev.max_length.
inline PairSeriesResult pair_series(const ChenEvaluation& ev, const LinearRep<Rational>& rep)
{
    PairSeriesResult r;
    r.length = ev.max_length;
    for (const Word& w : ev.alphabet.words_up_to(ev.max_length)) {
        const Rational c = rep.coeff(w);
        if (c == 0) continue;
        auto it = ev.values.find(w);
        if (it == ev.values.end()) throw DomainError("pairing needs the divergent word " + ev.alphabet.word_text(w));
        const double cd = c.convert_to<double>();
        r.value += cd * it->second.value;
        r.quadrature_error += std::fabs(cd) * it->second.error;
    }
    r.tail = detail::tail_bound(rep, ev.inputs, ev.z0, ev.z1, ev.max_length);
    r.certified = std::isfinite(r.tail) && ev.converged;
    return r;
}

/// Chooses the length so the tail bound drops below tol (at most max_length)
/// and evaluates only words in the support of the representation.
inline PairSeriesResult pair_series(const LinearRep<Rational>& rep, const Inputs& in, double z0, double z1,
                                    double tol = 1e-10, int max_length = 40)
{
    int L = 0;
    while (L < max_length && detail::tail_bound(rep, in, z0, z1, L) > tol) ++L;
    const std::set<Word> support = detail::rep_support(rep, in, L, 200000);
    const ChenEvaluation ev = chen_words(rep.alphabet, in, z0, z1, support, tol * 1e-2);
    PairSeriesResult r;
    r.length = L;
    for (const Word& w : support) {
        auto it = ev.values.find(w);
        if (it == ev.values.end()) throw DomainError("pairing needs the divergent word " + rep.alphabet.word_text(w));
        const double cd = rep.coeff(w).convert_to<double>();
        r.value += cd * it->second.value;
        r.quadrature_error += std::fabs(cd) * it->second.error;
    }
    r.tail = detail::tail_bound(rep, in, z0, z1, L);
    r.certified = std::isfinite(r.tail) && ev.converged;
    return r;
}

/// State q(z) of dq/dz = (sum_x u_x(z) mu(x)) q, q(z0) = eta.
inline std::vector<double> ode_state(const LinearRep<Rational>& rep, const Inputs& in, double z0, double z1,
                                     double tol = 1e-12)
{
    const std::size_t n = rep.dim;
    std::vector<std::pair<const InputFunction*, Matrix<double>>> terms;
    for (const auto& [x, m] : rep.mu) {
        auto it = in.find(x);
        if (it == in.end() || m.is_zero() || it->second.is_zero()) continue;
        it->second.check_path(z0, z1);
        if (it->second.singular_at(z0)) throw DomainError("input singular at the start of the path");
        terms.emplace_back(&it->second, m.map([](const Rational& q) { return q.convert_to<double>(); }));
    }
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = rep.eta(i, 0).convert_to<double>();
    if (z0 == z1 || n == 0) return q;
    auto rhs = [&](const std::vector<double>& s, std::vector<double>& ds, double t) {
        std::fill(ds.begin(), ds.end(), 0.0);
        for (const auto& [u, m] : terms) {
            const double ut = (*u)(t);
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * s[j];
                ds[i] += ut * acc;
            }
        }
    };
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<std::vector<double>>());
    const double dt = (z1 - z0) / 64;
    odeint::integrate_adaptive(stepper, rhs, q, z0, z1, dt);
    for (double v : q)
        if (!std::isfinite(v)) throw DomainError("step-size underflow near a singularity");
    return q;
}

/// y(z1) = nu q(z1).
inline double pair_ode(const LinearRep<Rational>& rep, const Inputs& in, double z0, double z1, double tol = 1e-12)
{
    const std::vector<double> q = ode_state(rep, in, z0, z1, tol);
    double y = 0;
    for (std::size_t i = 0; i < rep.dim; ++i) y += rep.nu(0, i).convert_to<double>() * q[i];
    return y;
}

// ---------------------------------------------------------------------------
// Scalar ODE for y = <C, R>.

struct ScalarOde {
    std::vector<RatFun> a; // a_0 .. a_N, polynomials
    int order() const { return static_cast<int>(a.size()) - 1; }

    std::string to_string() const
    {
        std::string s;
        for (int l = order(); l >= 0; --l) {
            const RatFun& c = a[static_cast<std::size_t>(l)];
            if (c.is_zero()) continue;
            std::string y = "y";
            if (l <= 3) y += std::string(static_cast<std::size_t>(l), '\'');
            else y += "^(" + std::to_string(l) + ")";
            std::string ct = c.to_string('z');
            bool neg = false;
            if (c.num().degree() == 0) {
                neg = c.num()[0] < 0;
                ct = neg ? (-c).to_string('z') : ct;
                ct = ct == "1" ? "" : ct + "*";
            } else {
                int terms = 0;
                for (const auto& q : c.num().coeffs()) terms += q != 0;
                ct = (terms > 1 || !c.is_polynomial() ? "(" + ct + ")" : ct) + "*";
            }
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            s += ct + y;
        }
        return (s.empty() ? "0" : s) + " = 0";
    }

    /// Same equation up to a nonzero Q(z) factor.
    bool proportional(const ScalarOde& o) const
    {
        if (a.size() != o.a.size()) return false;
        std::optional<RatFun> k;
        for (std::size_t l = 0; l < a.size(); ++l) {
            if (a[l].is_zero() != o.a[l].is_zero()) return false;
            if (a[l].is_zero()) continue;
            const RatFun r = o.a[l] / a[l];
            if (!k) k = r;
            else if (!(*k == r)) return false;
        }
        return true;
    }
};

namespace detail {

/// Rows v_l = nu mu(Q_l) over Q(z), l = 0..N, with Q_l specialized to the inputs.
inline std::vector<std::vector<RatFun>> ode_rows(const LinearRep<Rational>& rep, const Assignment& in, int N)
{
    if (!rep.alphabet.is_finite()) throw std::invalid_argument("scalar ODE needs a finite alphabet");
    Assignment full = in;
    for (int x : rep.alphabet.letters()) full.try_emplace(x, RatFun());
    Specializer sp(full);
    const LinearRep<RatFun> R = rep.map_coeffs([](const Rational& q) { return RatFun(q); });
    const DiffNCPoly M = input_matrix(rep.alphabet);
    DiffNCPoly Q = DiffNCPoly::constant(rep.alphabet, DiffPoly(1));
    std::vector<std::vector<RatFun>> rows;
    for (int l = 0; l <= N; ++l) {
        if (l > 0) Q = conc(Q, M) + derive(Q);
        std::vector<RatFun> v(rep.dim);
        const Series<RatFun> q = sp(Q);
        for (const auto& [w, c] : q.terms()) {
            Matrix<RatFun> row = R.nu;
            for (int x : w) row = row * R.mu_of(x);
            for (std::size_t i = 0; i < rep.dim; ++i) v[i] = v[i] + c * row(0, i);
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

} // namespace detail

/// Least N with sum_l a_l d^l y = 0 over Q(z); N <= dim(rep). The rows are
/// taken on the minimal representation, where their dependence is the
/// dependence of the derivatives of y.
inline ScalarOde derive_scalar_ode(const LinearRep<Rational>& given, const Assignment& in, int max_order = -1)
{
    const LinearRep<Rational> rep = minimize(given);
    const int n = static_cast<int>(rep.dim);
    const int N = max_order < 0 ? n : max_order;
    ScalarOde ode;
    if (n == 0) {
        ode.a = {RatFun(1)}; // y = 0
        return ode;
    }
    const auto rows = detail::ode_rows(rep, in, std::min(N, n));
    SpanBasis<RatFun> sp(rep.dim);
    for (int l = 0; l <= std::min(N, n); ++l) {
        std::vector<RatFun> coords;
        const std::vector<RatFun> rem = sp.reduce(rows[static_cast<std::size_t>(l)], &coords);
        bool dependent = true;
        for (const auto& x : rem)
            if (!x.is_zero()) dependent = false;
        if (dependent) {
            // v_l = sum_j coords_j v_j.
            ode.a.assign(static_cast<std::size_t>(l) + 1, RatFun());
            for (int j = 0; j < l; ++j) ode.a[static_cast<std::size_t>(j)] = -coords[static_cast<std::size_t>(j)];
            ode.a[static_cast<std::size_t>(l)] = RatFun(1);
            // Clear denominators, then make the coefficients primitive with a
            // positive lowest-degree term in the leading coefficient.
            UPoly den(1);
            for (const auto& c : ode.a) den = den * divmod(c.den(), gcd(den, c.den())).first;
            UPoly g;
            std::vector<UPoly> polys;
            for (const auto& c : ode.a) {
                polys.push_back(c.num() * divmod(den, c.den()).first);
                g = g.is_zero() ? polys.back() : (polys.back().is_zero() ? g : gcd(g, polys.back()));
            }
            UPoly all; // coefficients side by side, for the joint content
            for (auto& p : polys) {
                if (!g.is_zero()) p = divmod(p, g).first;
                all = all + p * UPoly::monomial(1, all.degree() + 1);
            }
            const Rational cont = all.content();
            const UPoly& lead = polys.back();
            Rational low = 0;
            for (const auto& c : lead.coeffs())
                if (c != 0) {
                    low = c;
                    break;
                }
            const Rational f = (low < 0 ? Rational(-1) : Rational(1)) / cont;
            for (std::size_t k = 0; k < polys.size(); ++k) ode.a[k] = RatFun(polys[k].scaled(f));
            return ode;
        }
        sp.insert(rows[static_cast<std::size_t>(l)]);
    }
    throw DomainError("no dependence found up to the requested order");
}

/// Numeric d^l y (l = 0..N) at z from the ODE state and Q_l with the input
/// derivatives evaluated in floating point.
inline std::vector<double> numeric_derivatives(const LinearRep<Rational>& rep, const Inputs& in, double z0, double z, int N)
{
    const std::vector<double> q = ode_state(rep, in, z0, z);
    const DiffNCPoly M = input_matrix(rep.alphabet);
    DiffNCPoly Q = DiffNCPoly::constant(rep.alphabet, DiffPoly(1));
    auto sym = [&](const DiffSymbol& s) {
        auto it = in.find(s.letter);
        return it == in.end() ? 0.0 : it->second.derivative(z, s.order);
    };
    std::vector<double> out;
    for (int l = 0; l <= N; ++l) {
        if (l > 0) Q = conc(Q, M) + derive(Q);
        double y = 0;
        for (const auto& [w, c] : Q.terms()) {
            double cv = 0;
            for (const auto& [mono, k] : c.terms()) {
                double t = k.convert_to<double>();
                for (const auto& [s, e] : mono) t *= std::pow(sym(s), e);
                cv += t;
            }
            if (cv == 0) continue;
            Matrix<Rational> row = rep.nu;
            for (int x : w) row = row * rep.mu_of(x);
            double acc = 0;
            for (std::size_t i = 0; i < rep.dim; ++i) acc += row(0, i).convert_to<double>() * q[i];
            y += cv * acc;
        }
        out.push_back(y);
    }
    return out;
}

/// |sum_l a_l(z) d^l y(z)|.
inline double scalar_ode_residual(const ScalarOde& ode, const LinearRep<Rational>& rep, const Inputs& in, double z0, double z)
{
    const auto d = numeric_derivatives(rep, in, z0, z, ode.order());
    double r = 0;
    for (int l = 0; l <= ode.order(); ++l) r += ode.a[static_cast<std::size_t>(l)].eval(z) * d[static_cast<std::size_t>(l)];
    return std::fabs(r);
}

} // namespace ncs
