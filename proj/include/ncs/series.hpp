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
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncs/coeff.hpp"
#include "ncs/lyndon.hpp"

namespace ncs {

using Bound = std::optional<int>; // nullopt: polynomial (no truncation)

inline Bound min_bound(Bound a, Bound b)
{
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

/// Noncommutative polynomial (no bound) or series truncated at grade <= bound.
/// Zero coefficients are never stored.
template <class T>
class Series {
public:
    using Traits = coeff_traits<T>;
    using Terms = std::map<Word, T>;

    explicit Series(Alphabet A, Bound bound = std::nullopt) : A_(std::move(A)), bound_(bound)
    {
        if (bound_ && *bound_ < 0) throw DomainError("negative truncation bound");
    }

    static Series word(const Alphabet& A, const Word& w, const T& c = Traits::one(), Bound bound = std::nullopt)
    {
        Series s(A, bound);
        s.add(w, c);
        return s;
    }
    static Series constant(const Alphabet& A, const T& c, Bound bound = std::nullopt)
    {
        return word(A, Word{}, c, bound);
    }
    static Series letter(const Alphabet& A, int a, const T& c = Traits::one(), Bound bound = std::nullopt)
    {
        return word(A, Word::letter(a), c, bound);
    }

    const Alphabet& alphabet() const { return A_; }
    Bound bound() const { return bound_; }
    bool is_polynomial() const { return !bound_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    /// Largest grade in the support, -1 for zero.
    int max_grade() const
    {
        int g = -1;
        for (const auto& [w, c] : terms_) g = std::max(g, A_.grade(w));
        return g;
    }
    int min_grade() const
    {
        int g = -1;
        for (const auto& [w, c] : terms_) {
            const int k = A_.grade(w);
            if (g < 0 || k < g) g = k;
        }
        return g;
    }

    /// <S, w>; errors when w lies beyond the truncation window.
    T coeff(const Word& w) const
    {
        if (bound_ && A_.grade(w) > *bound_)
            throw DomainError("coefficient of " + A_.word_text(w) + " beyond truncation bound " + std::to_string(*bound_));
        auto it = terms_.find(w);
        return it == terms_.end() ? Traits::zero() : it->second;
    }
    T constant_term() const { return coeff(Word{}); }

    /// Adds c*w; silently dropped if beyond the bound.
    void add(const Word& w, const T& c)
    {
        if (Traits::is_zero(c)) return;
        if (bound_ && A_.grade(w) > *bound_) return;
        for (int a : w)
            if (!A_.contains(a)) throw std::invalid_argument("letter " + A_.letter_text(a) + " not in alphabet");
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
            return;
        }
        it->second = it->second + c;
        if (Traits::is_zero(it->second)) terms_.erase(it);
    }

    Series truncated(int B) const
    {
        Series r(A_, min_bound(bound_, B));
        for (const auto& [w, c] : terms_)
            if (A_.grade(w) <= *r.bound_) r.terms_.emplace(w, c);
        return r;
    }
    /// Same terms, bound removed (caller asserts the support is what it wants).
    Series as_polynomial() const
    {
        Series r(A_);
        r.terms_ = terms_;
        return r;
    }
    Series with_bound(Bound b) const
    {
        Series r(A_, b);
        for (const auto& [w, c] : terms_) r.add(w, c);
        return r;
    }

    /// Terms in output order (grade, then lexicographic).
    std::vector<std::pair<Word, T>> sorted_terms() const
    {
        std::vector<std::pair<Word, T>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [this](const auto& a, const auto& b) { return A_.graded_less(a.first, b.first); });
        return v;
    }

    /// Homogeneous part of grade g.
    Series component(int g) const
    {
        Series r(A_, bound_);
        for (const auto& [w, c] : terms_)
            if (A_.grade(w) == g) r.terms_.emplace(w, c);
        return r;
    }

    template <class F>
    auto map_coeffs(F&& f) const
    {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        Series<U> r(A_, bound_);
        for (const auto& [w, c] : terms_) r.add(w, f(c));
        return r;
    }

    friend bool operator==(const Series& a, const Series& b)
    {
        return a.A_ == b.A_ && a.bound_ == b.bound_ && a.terms_ == b.terms_;
    }
    /// Equality of supports and coefficients, ignoring bounds.
    bool same_terms(const Series& o) const { return A_ == o.A_ && terms_ == o.terms_; }

    Series operator-() const
    {
        Series r(A_, bound_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    friend Series operator+(const Series& a, const Series& b)
    {
        check_same(a, b);
        Series r(a.A_, min_bound(a.bound_, b.bound_));
        for (const auto& [w, c] : a.terms_) r.add(w, c);
        for (const auto& [w, c] : b.terms_) r.add(w, c);
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }

    Series scaled(const T& k) const
    {
        Series r(A_, bound_);
        if (Traits::is_zero(k)) return r;
        for (const auto& [w, c] : terms_) r.add(w, k * c);
        return r;
    }

    std::string to_string() const;
    static Series parse(const Alphabet& A, std::string_view text, Bound bound = std::nullopt);

    static void check_same(const Series& a, const Series& b)
    {
        if (!(a.A_ == b.A_))
            throw std::invalid_argument("alphabet mismatch: " + a.A_.describe() + " vs " + b.A_.describe());
    }

private:
    template <class U>
    friend class Series;

    Alphabet A_;
    Bound bound_;
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Text form: `1*x0.x1 - 1/2*x1.x0`, ring coefficients in parentheses,
// constant term written as its coefficient alone, zero as `0`.

namespace detail {

template <class T>
std::string coeff_term_text(const T& c, bool first, bool& negative_out)
{
    using Tr = coeff_traits<T>;
    negative_out = false;
    if constexpr (std::is_same_v<T, Rational>) {
        if (c < 0) {
            negative_out = true;
            return Tr::to_string(-c);
        }
        return Tr::to_string(c);
    } else if constexpr (std::is_same_v<T, double>) {
        if (c < 0) {
            negative_out = true;
            return Tr::to_string(-c);
        }
        return Tr::to_string(c);
    } else {
        (void)first;
        return "(" + Tr::to_string(c) + ")";
    }
}

} // namespace detail

template <class T>
std::string Series<T>::to_string() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : sorted_terms()) {
        bool neg = false;
        const std::string ct = detail::coeff_term_text(c, first, neg);
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        first = false;
        out += ct;
        if (!w.empty()) out += "*" + A_.word_text(w);
    }
    return out;
}

namespace detail {

template <class T>
class SeriesReader {
public:
    SeriesReader(const Alphabet& A, std::string_view s, Bound bound) : A_(A), s_(s), out_(A, bound) {}

    Series<T> read()
    {
        skip();
        if (pos_ == s_.size()) throw ParseError("empty series text", pos_);
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            bool neg = false;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                neg = s_[pos_] == '-';
                ++pos_;
                skip();
            } else if (!first) {
                throw ParseError("expected '+' or '-'", pos_);
            }
            first = false;
            term(neg);
        }
        return out_;
    }

private:
    using Tr = coeff_traits<T>;

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void term(bool neg)
    {
        if (pos_ >= s_.size()) throw ParseError("expected term", pos_);
        T c = Tr::one();
        Word w;
        const char ch = s_[pos_];
        if (ch == A_.prefix()) {
            w = read_word();
        } else {
            c = read_coeff();
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                skip();
                w = read_word();
            }
        }
        out_.add(w, neg ? T(-c) : c);
    }

    T read_coeff()
    {
        const std::size_t start = pos_;
        if (s_[pos_] == '(') {
            int depth = 0;
            std::size_t j = pos_;
            for (; j < s_.size(); ++j) {
                if (s_[j] == '(') ++depth;
                else if (s_[j] == ')' && --depth == 0) break;
            }
            if (j == s_.size()) throw ParseError("unbalanced '('", start);
            std::string_view inner = s_.substr(pos_ + 1, j - pos_ - 1);
            pos_ = j + 1;
            return parse_coeff(inner, start + 1);
        }
        std::size_t j = pos_;
        while (j < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '/' || s_[j] == '.' ||
                                 ((s_[j] == 'e' || s_[j] == 'E') && std::is_same_v<T, double>) ||
                                 ((s_[j] == '+' || s_[j] == '-') && j > pos_ && (s_[j - 1] == 'e' || s_[j - 1] == 'E') &&
                                  std::is_same_v<T, double>)))
            ++j;
        if (j == pos_) throw ParseError("expected coefficient or word", pos_);
        std::string_view tok = s_.substr(pos_, j - pos_);
        pos_ = j;
        return parse_coeff(tok, start);
    }

    T parse_coeff(std::string_view tok, std::size_t at)
    {
        try {
            return Tr::parse(tok);
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad coefficient '") + std::string(tok) + "'", at + e.position());
        } catch (const std::exception&) {
            throw ParseError(std::string("bad coefficient '") + std::string(tok) + "'", at);
        }
    }

    Word read_word()
    {
        const std::size_t start = pos_;
        std::size_t j = pos_;
        if (j < s_.size() && s_[j] == '1') {
            pos_ = j + 1;
            return {};
        }
        while (j < s_.size() && (s_[j] == A_.prefix() || s_[j] == '.' || std::isdigit(static_cast<unsigned char>(s_[j]))))
            ++j;
        std::string_view tok = s_.substr(pos_, j - pos_);
        if (tok.empty()) throw ParseError("expected word", start);
        pos_ = j;
        try {
            return A_.parse_word(tok);
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad word '") + std::string(tok) + "'", start + e.position());
        }
    }

    const Alphabet& A_;
    std::string_view s_;
    std::size_t pos_ = 0;
    Series<T> out_;
};

} // namespace detail

template <class T>
Series<T> Series<T>::parse(const Alphabet& A, std::string_view text, Bound bound)
{
    return detail::SeriesReader<T>(A, text, bound).read();
}

// ---------------------------------------------------------------------------
// Word-level products, memoized per thread.

using WordCounts = std::map<Word, long long>;

namespace detail {

template <bool Stuffle>
const WordCounts& word_product(const Word& u, const Word& v)
{
    thread_local std::map<std::pair<Word, Word>, WordCounts> cache;
    if (cache.size() > 2'000'000) cache.clear();
    auto key = std::make_pair(u, v);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    WordCounts r;
    if (u.empty()) r[v] = 1;
    else if (v.empty()) r[u] = 1;
    else {
        const Word ut = u.tail(), vt = v.tail();
        const Word a = Word::letter(u.front()), b = Word::letter(v.front());
        for (const auto& [w, n] : word_product<Stuffle>(ut, v)) r[a * w] += n;
        for (const auto& [w, n] : word_product<Stuffle>(u, vt)) r[b * w] += n;
        if constexpr (Stuffle) {
            const Word ab = Word::letter(u.front() + v.front());
            for (const auto& [w, n] : word_product<Stuffle>(ut, vt)) r[ab * w] += n;
        }
    }
    return cache.emplace(std::move(key), std::move(r)).first->second;
}

} // namespace detail

inline const WordCounts& shuffle_words(const Word& u, const Word& v) { return detail::word_product<false>(u, v); }
/// Quasi-shuffle on Y-words (letter indices are weights).
inline const WordCounts& stuffle_words(const Word& u, const Word& v) { return detail::word_product<true>(u, v); }

enum class Product { conc, shuffle, stuffle };

inline const char* product_name(Product p)
{
    switch (p) {
    case Product::conc: return "conc";
    case Product::shuffle: return "shuffle";
    case Product::stuffle: return "stuffle";
    }
    return "?";
}

template <class T>
Series<T> multiply(Product kind, const Series<T>& a, const Series<T>& b)
{
    Series<T>::check_same(a, b);
    if (kind == Product::stuffle && !a.alphabet().is_graded())
        throw std::invalid_argument("stuffle product needs the graded alphabet Y");
    const Alphabet& A = a.alphabet();
    Series<T> r(A, min_bound(a.bound(), b.bound()));
    const Bound B = r.bound();
    for (const auto& [u, cu] : a.terms()) {
        const int gu = A.grade(u);
        for (const auto& [v, cv] : b.terms()) {
            if (B && gu + A.grade(v) > *B) continue;
            const T c = cu * cv;
            if (kind == Product::conc) {
                r.add(u * v, c);
                continue;
            }
            const WordCounts& wc = kind == Product::shuffle ? shuffle_words(u, v) : stuffle_words(u, v);
            for (const auto& [w, n] : wc) r.add(w, c * coeff_traits<T>::from_rational(Rational(n)));
        }
    }
    return r;
}

template <class T>
Series<T> conc(const Series<T>& a, const Series<T>& b) { return multiply(Product::conc, a, b); }
template <class T>
Series<T> shuffle(const Series<T>& a, const Series<T>& b) { return multiply(Product::shuffle, a, b); }
template <class T>
Series<T> stuffle(const Series<T>& a, const Series<T>& b) { return multiply(Product::stuffle, a, b); }

template <class T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) { return conc(a, b); }

/// k-th power for the given product (k >= 0).
template <class T>
Series<T> power(Product kind, const Series<T>& s, int k)
{
    Series<T> r = Series<T>::constant(s.alphabet(), coeff_traits<T>::one(), s.bound());
    for (int i = 0; i < k; ++i) r = multiply(kind, r, s);
    return r;
}

// ---------------------------------------------------------------------------
// Tensors and coproducts.

template <class T>
class Tensor {
public:
    using Traits = coeff_traits<T>;
    using Key = std::pair<Word, Word>;

    explicit Tensor(Alphabet A) : A_(std::move(A)) {}

    const Alphabet& alphabet() const { return A_; }
    const std::map<Key, T>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Word& u, const Word& v, const T& c)
    {
        if (Traits::is_zero(c)) return;
        auto [it, fresh] = terms_.try_emplace(Key{u, v}, c);
        if (!fresh) {
            it->second = it->second + c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }
    T coeff(const Word& u, const Word& v) const
    {
        auto it = terms_.find(Key{u, v});
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    static Tensor outer(const Series<T>& p, const Series<T>& q)
    {
        Series<T>::check_same(p, q);
        Tensor r(p.alphabet());
        for (const auto& [u, a] : p.terms())
            for (const auto& [v, b] : q.terms()) r.add(u, v, a * b);
        return r;
    }

    friend bool operator==(const Tensor&, const Tensor&) = default;
    friend Tensor operator+(Tensor a, const Tensor& b)
    {
        for (const auto& [k, c] : b.terms_) a.add(k.first, k.second, c);
        return a;
    }
    friend Tensor operator-(Tensor a, const Tensor& b)
    {
        for (const auto& [k, c] : b.terms_) a.add(k.first, k.second, -c);
        return a;
    }

    /// Componentwise product (left factors with `lk`, right factors with `rk`),
    /// dropping pairs whose grades exceed the optional bounds.
    static Tensor multiply(const Tensor& a, const Tensor& b, Product lk, Product rk, Bound lb = std::nullopt,
                           Bound rb = std::nullopt)
    {
        Tensor r(a.A_);
        const Alphabet& A = a.A_;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                if (lb && A.grade(ka.first) + A.grade(kb.first) > *lb) continue;
                if (rb && A.grade(ka.second) + A.grade(kb.second) > *rb) continue;
                const T c = ca * cb;
                const auto left = side_product(lk, ka.first, kb.first);
                const auto right = side_product(rk, ka.second, kb.second);
                for (const auto& [u, m] : left)
                    for (const auto& [v, n] : right) r.add(u, v, c * Traits::from_rational(Rational(m * n)));
            }
        }
        return r;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Key, T>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [this](const auto& x, const auto& y) {
            if (x.first.first != y.first.first) return A_.graded_less(x.first.first, y.first.first);
            return A_.graded_less(x.first.second, y.first.second);
        });
        std::string out;
        bool first = true;
        for (const auto& [k, c] : v) {
            bool neg = false;
            const std::string ct = detail::coeff_term_text(c, first, neg);
            if (first) out += neg ? "-" : "";
            else out += neg ? " - " : " + ";
            first = false;
            out += ct + "*" + A_.word_text(k.first) + "|" + A_.word_text(k.second);
        }
        return out;
    }

private:
    static WordCounts side_product(Product k, const Word& u, const Word& v)
    {
        switch (k) {
        case Product::conc: return WordCounts{{u * v, 1}};
        case Product::shuffle: return shuffle_words(u, v);
        case Product::stuffle: return stuffle_words(u, v);
        }
        return {};
    }

    Alphabet A_;
    std::map<Key, T> terms_;
};

/// <T, P> for tensors: sum over matching pairs.
template <class T>
T pair(const Tensor<T>& a, const Tensor<T>& b)
{
    T r = coeff_traits<T>::zero();
    for (const auto& [k, c] : a.terms()) {
        auto it = b.terms().find(k);
        if (it != b.terms().end()) r = r + c * it->second;
    }
    return r;
}

/// Coproduct of a word; `Product::conc` means deconcatenation, the others the
/// coproducts dual to shuffle and stuffle.
inline std::map<std::pair<Word, Word>, long long> coproduct_word(Product kind, const Word& w)
{
    std::map<std::pair<Word, Word>, long long> r;
    if (kind == Product::conc) {
        for (std::size_t i = 0; i <= w.size(); ++i) r[{w.sub(0, i), w.sub(i)}] += 1;
        return r;
    }
    // Letterwise conc-morphism: start from 1 (x) 1 and multiply in each letter's image.
    r[{Word{}, Word{}}] = 1;
    for (int a : w) {
        std::vector<std::pair<Word, Word>> img;
        img.push_back({Word::letter(a), Word{}});
        img.push_back({Word{}, Word::letter(a)});
        if (kind == Product::stuffle)
            for (int i = 1; i < a; ++i) img.push_back({Word::letter(i), Word::letter(a - i)});
        std::map<std::pair<Word, Word>, long long> next;
        for (const auto& [k, n] : r)
            for (const auto& [l, rr] : img) next[{k.first * l, k.second * rr}] += n;
        r = std::move(next);
    }
    return r;
}

template <class T>
Tensor<T> coproduct(Product kind, const Series<T>& p)
{
    if (kind == Product::stuffle && !p.alphabet().is_graded())
        throw std::invalid_argument("stuffle coproduct needs the graded alphabet Y");
    Tensor<T> r(p.alphabet());
    for (const auto& [w, c] : p.terms())
        for (const auto& [k, n] : coproduct_word(kind, w))
            r.add(k.first, k.second, c * coeff_traits<T>::from_rational(Rational(n)));
    return r;
}

// ---------------------------------------------------------------------------
// Pairing, shifts, star, exp, log.

/// sum_w <S,w><P,w>; P's support must lie inside S's truncation window.
template <class T>
T pair(const Series<T>& S, const Series<T>& P)
{
    Series<T>::check_same(S, P);
    T r = coeff_traits<T>::zero();
    for (const auto& [w, c] : P.terms()) {
        if (S.bound() && S.alphabet().grade(w) > *S.bound())
            throw DomainError("pairing word " + S.alphabet().word_text(w) + " exceeds truncation bound");
        auto it = S.terms().find(w);
        if (it != S.terms().end()) r = r + it->second * c;
    }
    return r;
}

enum class Side { left, right };

/// right: S◁P with <S◁P, w> = <S, Pw>; left: P▷S with <P▷S, w> = <S, wP>.
template <class T>
Series<T> shift(Side side, const Series<T>& S, const Series<T>& P)
{
    Series<T>::check_same(S, P);
    const Alphabet& A = S.alphabet();
    Bound nb;
    if (S.bound()) {
        const int b = *S.bound() - std::max(0, P.max_grade());
        if (b < 0) throw DomainError("shift exceeds truncation bound");
        nb = b;
    }
    Series<T> r(A, nb);
    for (const auto& [v, cs] : S.terms()) {
        for (const auto& [p, cp] : P.terms()) {
            if (p.size() > v.size()) continue;
            if (side == Side::right) {
                if (!std::equal(p.begin(), p.end(), v.begin())) continue;
                r.add(v.sub(p.size()), cs * cp);
            } else {
                if (!std::equal(p.begin(), p.end(), v.end() - static_cast<long>(p.size()))) continue;
                r.add(v.sub(0, v.size() - p.size()), cs * cp);
            }
        }
    }
    return r;
}

namespace detail {
template <class T>
Bound series_window(const Series<T>& S, Bound bound, const char* what)
{
    const Bound b = min_bound(S.bound(), bound);
    if (!b) throw DomainError(std::string(what) + " of a polynomial needs a truncation bound");
    return b;
}
} // namespace detail

/// Kleene star sum_{n>=0} S^n, truncated.
template <class T>
Series<T> star(const Series<T>& S, Bound bound = std::nullopt)
{
    const Bound b = detail::series_window(S, bound, "star");
    if (!coeff_traits<T>::is_zero(S.coeff(Word{}))) throw DomainError("star of a series with nonzero constant term");
    const Series<T> s = S.with_bound(b);
    Series<T> term = Series<T>::constant(S.alphabet(), coeff_traits<T>::one(), b);
    Series<T> res = term;
    for (int n = 1; n <= *b; ++n) {
        term = conc(term, s);
        if (term.is_zero()) break;
        res += term;
    }
    return res;
}

/// Truncated exponential for concatenation.
template <class T>
Series<T> t_exp(const Series<T>& S, Bound bound = std::nullopt)
{
    const Bound b = detail::series_window(S, bound, "exp");
    if (!coeff_traits<T>::is_zero(S.coeff(Word{}))) throw DomainError("exp of a series with nonzero constant term");
    const Series<T> s = S.with_bound(b);
    Series<T> term = Series<T>::constant(S.alphabet(), coeff_traits<T>::one(), b);
    Series<T> res = term;
    for (int n = 1; n <= *b; ++n) {
        term = conc(term, s).scaled(coeff_traits<T>::from_rational(Rational(1, n)));
        if (term.is_zero()) break;
        res += term;
    }
    return res;
}

/// Truncated logarithm log(1 + (S - 1)).
template <class T>
Series<T> t_log(const Series<T>& S, Bound bound = std::nullopt)
{
    using Tr = coeff_traits<T>;
    const Bound b = detail::series_window(S, bound, "log");
    if constexpr (Tr::is_exact) {
        if (!(S.coeff(Word{}) == Tr::one())) throw DomainError("log of a series with constant term != 1");
    } else {
        if (std::abs(S.coeff(Word{}) - 1.0) > 1e-12) throw DomainError("log of a series with constant term != 1");
    }
    Series<T> s = S.with_bound(b);
    s.add(Word{}, -s.coeff(Word{}));
    Series<T> term = Series<T>::constant(S.alphabet(), Tr::one(), b);
    Series<T> res(S.alphabet(), b);
    for (int n = 1; n <= *b; ++n) {
        term = conc(term, s);
        if (term.is_zero()) break;
        const Rational k = Rational(n % 2 ? 1 : -1, n);
        res += term.scaled(Tr::from_rational(k));
    }
    return res;
}

// ---------------------------------------------------------------------------
// Correspondences between {x0, x1} and Y.

/// Conc-morphism y_k -> x0^{k-1} x1 (length bound = weight bound).
template <class T>
Series<T> pi_X(const Series<T>& p)
{
    if (!p.alphabet().is_graded()) throw std::invalid_argument("pi_X expects a series over Y");
    Series<T> r(Alphabet::X(2), p.bound());
    for (const auto& [w, c] : p.terms()) r.add(pi_X_word(w), c);
    return r;
}

/// Inverse of pi_X on {x0,x1}* x1 + 1; words ending in x0 map to 0.
template <class T>
Series<T> pi_Y(const Series<T>& p, bool decreasing = true)
{
    const Alphabet& A = p.alphabet();
    if (!A.is_finite() || !A.contains(0) || !A.contains(1) || A.letters().size() != 2)
        throw std::invalid_argument("pi_Y expects a series over {x0, x1}");
    Series<T> r(Alphabet::Y(decreasing), p.bound());
    for (const auto& [w, c] : p.terms())
        if (auto y = pi_Y_word(w)) r.add(*y, c);
    return r;
}

} // namespace ncs
