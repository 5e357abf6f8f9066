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

#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncs/matrix.hpp"
#include "ncs/series.hpp"

namespace ncs {

/// Linear representation (nu, mu, eta) of the series w -> nu mu(w) eta.
/// Letters missing from `mu` act as the zero matrix.
template <class T>
struct LinearRep {
    using Traits = coeff_traits<T>;

    Alphabet alphabet = Alphabet::X();
    std::size_t dim = 0;
    Matrix<T> nu{1, 0};
    std::map<int, Matrix<T>> mu;
    Matrix<T> eta{0, 1};

    LinearRep() = default;
    LinearRep(Alphabet A, std::size_t n) : alphabet(std::move(A)), dim(n), nu(1, n), eta(n, 1) {}

    void validate() const
    {
        if (nu.rows() != 1 || nu.cols() != dim) throw std::invalid_argument("nu must be 1 x dim");
        if (eta.rows() != dim || eta.cols() != 1) throw std::invalid_argument("eta must be dim x 1");
        for (const auto& [a, m] : mu) {
            if (!alphabet.contains(a)) throw std::invalid_argument("mu letter " + alphabet.letter_text(a) + " not in alphabet");
            if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("mu matrices must be dim x dim");
        }
    }

    /// Letters with a (possibly zero) matrix.
    std::vector<int> active_letters() const
    {
        std::vector<int> r;
        for (const auto& [a, m] : mu) r.push_back(a);
        return r;
    }

    Matrix<T> mu_of(int a) const
    {
        auto it = mu.find(a);
        return it == mu.end() ? Matrix<T>(dim, dim) : it->second;
    }
    Matrix<T> mu_word(const Word& w) const
    {
        Matrix<T> m = Matrix<T>::identity(dim);
        for (int a : w) m = m * mu_of(a);
        return m;
    }
    T coeff(const Word& w) const
    {
        Matrix<T> row = nu;
        for (int a : w) row = row * mu_of(a);
        return (row * eta)(0, 0);
    }

    /// All coefficients on words of grade <= bound.
    Series<T> expand(int bound) const
    {
        Series<T> s(alphabet, bound);
        std::vector<int> letters;
        for (const auto& [a, m] : mu)
            if (alphabet.grade(a) <= bound && !m.is_zero()) letters.push_back(a);
        std::vector<int> cur;
        std::function<void(const Matrix<T>&, int)> rec = [&](const Matrix<T>& row, int g) {
            if (row.is_zero()) return;
            s.add(Word(cur), (row * eta)(0, 0));
            for (int a : letters) {
                const int ga = alphabet.grade(a);
                if (g + ga > bound) continue;
                cur.push_back(a);
                rec(row * mu.at(a), g + ga);
                cur.pop_back();
            }
        };
        rec(nu, 0);
        return s;
    }

    template <class F>
    auto map_coeffs(F&& f) const
    {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        LinearRep<U> r(alphabet, dim);
        r.nu = nu.map(f);
        r.eta = eta.map(f);
        for (const auto& [a, m] : mu) r.mu.emplace(a, m.map(f));
        return r;
    }

    /// Represents the mirror series w -> <S, reverse(w)>.
    LinearRep transposed() const
    {
        LinearRep r(alphabet, dim);
        r.nu = eta.transpose();
        r.eta = nu.transpose();
        for (const auto& [a, m] : mu) r.mu.emplace(a, m.transpose());
        return r;
    }
};

// ---------------------------------------------------------------------------
// Basic representations.

template <class T>
LinearRep<T> rep_zero(const Alphabet& A)
{
    return LinearRep<T>(A, 0);
}

/// Dimension-one representation (1, c_x, 1) of (sum_x c_x x)*.
template <class T>
LinearRep<T> make_character_star(const Alphabet& A, const std::map<int, T>& coeffs)
{
    LinearRep<T> r(A, 1);
    r.nu(0, 0) = coeff_traits<T>::one();
    r.eta(0, 0) = coeff_traits<T>::one();
    for (const auto& [a, c] : coeffs) {
        Matrix<T> m(1, 1);
        m(0, 0) = c;
        r.mu.emplace(a, m);
    }
    r.validate();
    return r;
}

/// Prefix-tree representation of a polynomial.
template <class T>
LinearRep<T> rep_of_polynomial(const Series<T>& p)
{
    if (!p.is_polynomial()) throw std::invalid_argument("rep_of_polynomial expects a polynomial");
    std::map<Word, std::size_t> state;
    state.emplace(Word{}, 0);
    for (const auto& [w, c] : p.terms())
        for (std::size_t i = 1; i <= w.size(); ++i) state.emplace(w.sub(0, i), state.size());
    const std::size_t n = state.size();
    LinearRep<T> r(p.alphabet(), n);
    r.nu(0, 0) = coeff_traits<T>::one();
    for (const auto& [w, i] : state) {
        r.eta(i, 0) = p.terms().count(w) ? p.terms().at(w) : coeff_traits<T>::zero();
        if (w.empty()) continue;
        const int a = w.back();
        auto it = r.mu.find(a);
        if (it == r.mu.end()) it = r.mu.emplace(a, Matrix<T>(n, n)).first;
        it->second(state.at(w.sub(0, w.size() - 1)), i) = coeff_traits<T>::one();
    }
    return r;
}

template <class T>
LinearRep<T> rep_scaled(const LinearRep<T>& r, const T& k)
{
    LinearRep<T> s = r;
    s.nu = s.nu.scaled(k);
    return s;
}

namespace detail {
template <class T>
void check_pair(const LinearRep<T>& a, const LinearRep<T>& b)
{
    if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("representations over different alphabets");
}
template <class T>
std::set<int> letter_union(const LinearRep<T>& a, const LinearRep<T>& b)
{
    std::set<int> s;
    for (const auto& [x, m] : a.mu) s.insert(x);
    for (const auto& [x, m] : b.mu) s.insert(x);
    return s;
}
} // namespace detail

// ---------------------------------------------------------------------------
// Closure constructions.

/// S1 + S2: block diagonal.
template <class T>
LinearRep<T> rep_sum(const LinearRep<T>& a, const LinearRep<T>& b)
{
    detail::check_pair(a, b);
    const std::size_t n1 = a.dim, n2 = b.dim;
    LinearRep<T> r(a.alphabet, n1 + n2);
    r.nu.set_block(0, 0, a.nu);
    r.nu.set_block(0, n1, b.nu);
    r.eta.set_block(0, 0, a.eta);
    r.eta.set_block(n1, 0, b.eta);
    for (int x : detail::letter_union(a, b)) {
        Matrix<T> m(n1 + n2, n1 + n2);
        m.set_block(0, 0, a.mu_of(x));
        m.set_block(n1, n1, b.mu_of(x));
        r.mu.emplace(x, m);
    }
    return r;
}

template <class T>
LinearRep<T> rep_difference(const LinearRep<T>& a, const LinearRep<T>& b)
{
    return rep_sum(a, rep_scaled(b, T(-coeff_traits<T>::one())));
}

/// S1 S2: nu = (nu1, 0), mu = [[mu1, eta1 nu2 mu2], [0, mu2]],
/// eta = (eta1 (nu2 eta2); eta2).
template <class T>
LinearRep<T> rep_conc(const LinearRep<T>& a, const LinearRep<T>& b)
{
    detail::check_pair(a, b);
    const std::size_t n1 = a.dim, n2 = b.dim;
    LinearRep<T> r(a.alphabet, n1 + n2);
    r.nu.set_block(0, 0, a.nu);
    const T c = n2 ? (b.nu * b.eta)(0, 0) : coeff_traits<T>::zero();
    r.eta.set_block(0, 0, a.eta.scaled(c));
    r.eta.set_block(n1, 0, b.eta);
    const Matrix<T> coupling = a.eta * b.nu; // n1 x n2
    for (int x : detail::letter_union(a, b)) {
        Matrix<T> m(n1 + n2, n1 + n2);
        const Matrix<T> m2 = b.mu_of(x);
        m.set_block(0, 0, a.mu_of(x));
        m.set_block(0, n1, coupling * m2);
        m.set_block(n1, n1, m2);
        r.mu.emplace(x, m);
    }
    return r;
}

/// S* for proper S (nu eta = 0): dimension n + 1 with
/// nu = (0, 1), mu = [[mu + eta nu mu, 0], [nu mu, 0]], eta = (eta; 1).
template <class T>
LinearRep<T> rep_star(const LinearRep<T>& s)
{
    const std::size_t n = s.dim;
    if (n && !coeff_traits<T>::is_zero((s.nu * s.eta)(0, 0)))
        throw DomainError("star of a series with nonzero constant term");
    LinearRep<T> r(s.alphabet, n + 1);
    r.nu(0, n) = coeff_traits<T>::one();
    r.eta.set_block(0, 0, s.eta);
    r.eta(n, 0) = coeff_traits<T>::one();
    const Matrix<T> en = s.eta * s.nu;
    for (const auto& [x, m] : s.mu) {
        Matrix<T> big(n + 1, n + 1);
        big.set_block(0, 0, m + en * m);
        big.set_block(n, 0, s.nu * m);
        r.mu.emplace(x, big);
    }
    return r;
}

/// S1 ⧢ S2: Kronecker sum.
template <class T>
LinearRep<T> rep_shuffle(const LinearRep<T>& a, const LinearRep<T>& b)
{
    detail::check_pair(a, b);
    LinearRep<T> r(a.alphabet, a.dim * b.dim);
    r.nu = kron(a.nu, b.nu);
    r.eta = kron(a.eta, b.eta);
    const auto I1 = Matrix<T>::identity(a.dim), I2 = Matrix<T>::identity(b.dim);
    for (int x : detail::letter_union(a, b)) r.mu.emplace(x, kron(a.mu_of(x), I2) + kron(I1, b.mu_of(x)));
    return r;
}

/// S1 ⧣ S2 over Y: Kronecker sum plus sum_{i+j=k} mu1(y_i) ⊗ mu2(y_j).
template <class T>
LinearRep<T> rep_stuffle(const LinearRep<T>& a, const LinearRep<T>& b)
{
    detail::check_pair(a, b);
    if (!a.alphabet.is_graded()) throw std::invalid_argument("stuffle representation needs the graded alphabet Y");
    std::set<int> letters = detail::letter_union(a, b);
    for (const auto& [i, m1] : a.mu)
        for (const auto& [j, m2] : b.mu) letters.insert(i + j);
    LinearRep<T> r(a.alphabet, a.dim * b.dim);
    r.nu = kron(a.nu, b.nu);
    r.eta = kron(a.eta, b.eta);
    const auto I1 = Matrix<T>::identity(a.dim), I2 = Matrix<T>::identity(b.dim);
    for (int k : letters) {
        Matrix<T> m = kron(a.mu_of(k), I2) + kron(I1, b.mu_of(k));
        for (const auto& [i, m1] : a.mu) {
            auto it = b.mu.find(k - i);
            if (it != b.mu.end()) m = m + kron(m1, it->second);
        }
        r.mu.emplace(k, m);
    }
    return r;
}

/// Equivalent representation (nu P, P^{-1} mu P, P^{-1} eta).
template <class T>
LinearRep<T> conjugate(const LinearRep<T>& r, const Matrix<T>& P)
{
    const Matrix<T> Pi = inverse(P);
    LinearRep<T> s(r.alphabet, r.dim);
    s.nu = r.nu * P;
    s.eta = Pi * r.eta;
    for (const auto& [a, m] : r.mu) s.mu.emplace(a, Pi * m * P);
    return s;
}

// ---------------------------------------------------------------------------
// Reduction over a field.

namespace detail {

/// Restrict to the span of the reachable row vectors nu mu(w).
template <class T>
LinearRep<T> left_reduce(const LinearRep<T>& r)
{
    const std::size_t n = r.dim;
    SpanBasis<T> span(n);
    std::vector<std::vector<T>> basis;
    std::deque<std::size_t> todo;
    auto offer = [&](const std::vector<T>& v) {
        if (span.in_span(v)) return;
        span.insert(v);
        basis.push_back(v);
        todo.push_back(basis.size() - 1);
    };
    if (n) offer(r.nu.row_vector(0));
    while (!todo.empty()) {
        const std::size_t k = todo.front();
        todo.pop_front();
        const Matrix<T> row = Matrix<T>::row(basis[k]);
        for (const auto& [a, m] : r.mu) offer((row * m).row_vector(0));
    }
    const std::size_t d = basis.size();
    LinearRep<T> s(r.alphabet, d);
    auto coords = [&](const std::vector<T>& v) {
        std::vector<T> c;
        span.reduce(v, &c);
        return c;
    };
    if (d) {
        const auto cn = coords(r.nu.row_vector(0));
        for (std::size_t j = 0; j < d; ++j) s.nu(0, j) = cn[j];
    }
    for (std::size_t i = 0; i < d; ++i) s.eta(i, 0) = dot(basis[i], r.eta.transpose().row_vector(0));
    for (const auto& [a, m] : r.mu) {
        Matrix<T> mm(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            const auto c = coords((Matrix<T>::row(basis[i]) * m).row_vector(0));
            for (std::size_t j = 0; j < d; ++j) mm(i, j) = c[j];
        }
        s.mu.emplace(a, mm);
    }
    return s;
}

} // namespace detail

/// Minimal equivalent representation (left then right reduction).
template <class T>
LinearRep<T> minimize(const LinearRep<T>& r)
{
    static_assert(coeff_traits<T>::is_field, "minimize needs field coefficients");
    r.validate();
    return detail::left_reduce(detail::left_reduce(r).transposed()).transposed();
}

/// Q[t] coefficients viewed in Q(t).
inline LinearRep<RatFun> to_field(const LinearRep<UPoly>& r)
{
    return r.map_coeffs([](const UPoly& p) { return RatFun(p); });
}
inline const LinearRep<Rational>& to_field(const LinearRep<Rational>& r) { return r; }
inline const LinearRep<RatFun>& to_field(const LinearRep<RatFun>& r) { return r; }

/// Series equality: the reachable space of the difference must be orthogonal
/// to its final vector.
template <class T>
bool equal(const LinearRep<T>& a, const LinearRep<T>& b)
{
    if constexpr (!coeff_traits<T>::is_field) {
        return equal(to_field(a), to_field(b));
    } else {
        const LinearRep<T> d = detail::left_reduce(rep_difference(a, b));
        for (std::size_t i = 0; i < d.dim; ++i)
            if (!coeff_traits<T>::is_zero(d.eta(i, 0))) return false;
        return true;
    }
}

/// Pairs (G_i, D_i) with <S, uv> = sum_i <G_i, u><D_i, v>.
template <class T>
std::vector<std::pair<LinearRep<T>, LinearRep<T>>> sweedler_split(const LinearRep<T>& r)
{
    std::vector<std::pair<LinearRep<T>, LinearRep<T>>> out;
    for (std::size_t i = 0; i < r.dim; ++i) {
        LinearRep<T> g = r, d = r;
        g.eta = Matrix<T>(r.dim, 1);
        g.eta(i, 0) = coeff_traits<T>::one();
        d.nu = Matrix<T>(1, r.dim);
        d.nu(0, i) = coeff_traits<T>::one();
        out.emplace_back(std::move(g), std::move(d));
    }
    return out;
}

template <class T>
bool is_character(const LinearRep<T>& r)
{
    const auto m = minimize(to_field(r));
    if (m.dim != 1) return false;
    using U = typename std::decay_t<decltype(m)>::Traits;
    return (m.nu * m.eta)(0, 0) == U::one();
}

/// Polynomials P, Q with S = P (1 - x Q)^{-1} for a one-letter representation.
template <class T>
std::pair<Series<T>, Series<T>> kronecker_form(const LinearRep<T>& r)
{
    if (!r.alphabet.is_finite() || r.alphabet.letters().size() != 1)
        throw std::invalid_argument("kronecker_form needs a one-letter alphabet");
    const int x = r.alphabet.letters().front();
    const LinearRep<T> m = minimize(r);
    const std::size_t n = m.dim;
    Series<T> P(r.alphabet), Q(r.alphabet);
    if (n == 0) return {P, Q};
    const std::vector<T> c = charpoly(m.mu_of(x)); // D(x) = sum c_k x^k
    std::vector<T> a(n);
    Matrix<T> row = m.nu;
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = (row * m.eta)(0, 0);
        row = row * m.mu_of(x);
    }
    const Word xw = Word::letter(x);
    for (std::size_t k = 0; k < n; ++k) {
        T pk = coeff_traits<T>::zero();
        for (std::size_t j = 0; j <= k; ++j) pk = pk + c[j] * a[k - j];
        P.add(xw.power(static_cast<int>(k)), pk);
        Q.add(xw.power(static_cast<int>(k)), -c[k + 1]);
    }
    return {P, Q};
}

// ---------------------------------------------------------------------------
// Exchangeability and Lie-theoretic classification.

template <class T>
bool is_syntactically_exchangeable(const Series<T>& s, int bound)
{
    std::map<std::map<int, int>, T> seen;
    std::map<std::map<int, int>, bool> have;
    const Alphabet& A = s.alphabet();
    for (const Word& w : A.words_up_to(bound)) {
        std::map<int, int> deg;
        for (int a : w) ++deg[a];
        const T c = s.coeff(w);
        if (!have[deg]) {
            have[deg] = true;
            seen.emplace(deg, c);
        } else if (!(seen.at(deg) == c)) {
            return false;
        }
    }
    return true;
}

template <class T>
bool is_syntactically_exchangeable(const LinearRep<T>& r, int bound)
{
    return is_syntactically_exchangeable(r.expand(bound), bound);
}

template <class T>
bool is_rationally_exchangeable(const LinearRep<T>& r)
{
    const auto m = minimize(to_field(r));
    for (const auto& [a, ma] : m.mu)
        for (const auto& [b, mb] : m.mu)
            if (a < b && !(ma * mb == mb * ma)) return false;
    return true;
}

template <class T>
Matrix<T> bracket(const Matrix<T>& a, const Matrix<T>& b)
{
    return a * b - b * a;
}

namespace detail {

template <class T>
std::vector<T> flatten(const Matrix<T>& m)
{
    std::vector<T> v;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

/// Basis (as matrices) of the span of the given matrices.
template <class T>
std::vector<Matrix<T>> span_of(const std::vector<Matrix<T>>& ms, std::size_t n)
{
    SpanBasis<T> sp(n * n);
    std::vector<Matrix<T>> out;
    for (const auto& m : ms) {
        const auto v = flatten(m);
        if (sp.in_span(v)) continue;
        sp.insert(v);
        out.push_back(m);
    }
    return out;
}

template <class T>
std::vector<Matrix<T>> brackets(const std::vector<Matrix<T>>& a, const std::vector<Matrix<T>>& b, std::size_t n)
{
    std::vector<Matrix<T>> all;
    for (const auto& x : a)
        for (const auto& y : b) all.push_back(bracket(x, y));
    return span_of(all, n);
}

} // namespace detail

/// Lie algebra generated by the mu(x): bracket-saturated basis.
template <class T>
std::vector<Matrix<T>> lie_closure(const LinearRep<T>& r)
{
    const std::size_t n = r.dim;
    std::vector<Matrix<T>> gens;
    for (const auto& [a, m] : r.mu) gens.push_back(m);
    SpanBasis<T> sp(n * n);
    std::vector<Matrix<T>> basis;
    auto offer = [&](const Matrix<T>& m) {
        const auto v = detail::flatten(m);
        if (sp.in_span(v)) return false;
        sp.insert(v);
        basis.push_back(m);
        return true;
    };
    for (const auto& g : gens) offer(g);
    // Brackets of generators with the growing basis suffice: L is spanned by
    // left-normed brackets of generators.
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (const auto& g : gens) offer(bracket(g, basis[i]));
    return basis;
}

enum class LieClass { exchangeable, nilpotent, solvable, general };

inline const char* lie_class_name(LieClass c)
{
    switch (c) {
    case LieClass::exchangeable: return "exchangeable";
    case LieClass::nilpotent: return "nilpotent";
    case LieClass::solvable: return "solvable";
    case LieClass::general: return "general";
    }
    return "?";
}

/// Classification of the Lie algebra of a minimal representation:
/// commutative, nilpotent (lower central series vanishes), solvable (derived
/// series vanishes) or none of these.
template <class T>
LieClass classify(const LinearRep<T>& r)
{
    const auto m = minimize(to_field(r));
    const std::size_t n = m.dim;
    const auto L = lie_closure(m);
    bool commutative = true;
    for (std::size_t i = 0; i < L.size() && commutative; ++i)
        for (std::size_t j = i + 1; j < L.size(); ++j)
            if (!bracket(L[i], L[j]).is_zero()) {
                commutative = false;
                break;
            }
    if (commutative) return LieClass::exchangeable;
    auto lower = L;
    for (std::size_t step = 0; step <= n * n && !lower.empty(); ++step) {
        auto next = detail::brackets(L, lower, n);
        if (next.size() == lower.size()) break; // stabilized, nonzero
        lower = std::move(next);
    }
    if (lower.empty()) return LieClass::nilpotent;
    auto derived = L;
    for (std::size_t step = 0; step <= n * n && !derived.empty(); ++step) {
        auto next = detail::brackets(derived, derived, n);
        if (next.size() == derived.size()) break;
        derived = std::move(next);
    }
    if (derived.empty()) return LieClass::solvable;
    return LieClass::general;
}

/// For mu(x) = c(x) I + strictly upper triangular: returns the polynomial S1
/// represented by (nu, mu - cI, eta); then S = S1 ⧢ (sum_x c(x) x)*.
template <class T>
Series<T> nilpotent_decompose(const LinearRep<T>& r, const std::map<int, T>& c)
{
    LinearRep<T> s = r;
    for (auto& [a, m] : s.mu) {
        const T ca = c.count(a) ? c.at(a) : coeff_traits<T>::zero();
        for (std::size_t i = 0; i < r.dim; ++i) m(i, i) = m(i, i) - ca;
        for (std::size_t i = 0; i < r.dim; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if (!coeff_traits<T>::is_zero(m(i, j)))
                    throw DomainError("mu(x) - c(x) I is not strictly upper triangular");
    }
    for (const auto& [a, ca] : c)
        if (!r.mu.count(a) && !coeff_traits<T>::is_zero(ca))
            throw DomainError("c given for a letter the representation does not use");
    // Words of length >= dim vanish, so this bound covers the support.
    int g = 1;
    for (const auto& [a, m] : r.mu) g = std::max(g, r.alphabet.grade(a));
    return s.expand(static_cast<int>(r.dim) * g).as_polynomial();
}

/// Checks M(X*) = (D(X*) N(X))* D(X*) entrywise up to grade `bound`, where
/// M(X) = sum_x mu(x) x splits into diagonal D and strictly upper N.
template <class T>
bool triangular_star_factorization_check(const LinearRep<T>& r, int bound)
{
    using S = Series<T>;
    using SM = std::vector<std::vector<S>>;
    const std::size_t n = r.dim;
    const Alphabet& A = r.alphabet;
    for (const auto& [a, m] : r.mu)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (!coeff_traits<T>::is_zero(m(i, j))) throw DomainError("mu(x) is not upper triangular");
    auto zero = [&] { return SM(n, std::vector<S>(n, S(A, bound))); };
    auto mul = [&](const SM& a, const SM& b) {
        SM c = zero();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (a[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j) c[i][j] += conc(a[i][k], b[k][j]);
            }
        return c;
    };
    auto add = [&](const SM& a, const SM& b) {
        SM c = a;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += b[i][j];
        return c;
    };
    auto mstar = [&](const SM& a) { // proper entries: sum_{k <= bound} a^k
        SM id = zero();
        for (std::size_t i = 0; i < n; ++i) id[i][i] = S::constant(A, coeff_traits<T>::one(), bound);
        SM acc = id, term = id;
        for (int k = 1; k <= bound; ++k) {
            term = mul(term, a);
            acc = add(acc, term);
        }
        return acc;
    };
    SM D = zero(), N = zero();
    for (const auto& [a, m] : r.mu)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) (i == j ? D : N)[i][j].add(Word::letter(a), m(i, j));
    const SM Dstar = mstar(D);
    const SM rhs = mul(mstar(mul(Dstar, N)), Dstar);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            LinearRep<T> e = r;
            e.nu = Matrix<T>(1, n);
            e.nu(0, i) = coeff_traits<T>::one();
            e.eta = Matrix<T>(n, 1);
            e.eta(j, 0) = coeff_traits<T>::one();
            if (!(e.expand(bound) == rhs[i][j])) return false;
        }
    return true;
}

} // namespace ncs
