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
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ncs/rational.hpp"

namespace ncs {

/// A word is a sequence of letter indices. The alphabet decides how an index
/// is printed (`x3` or `y3`), how letters compare and what a letter weighs.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> l) : l_(l) {}
    explicit Word(std::vector<int> l) : l_(std::move(l)) {}

    static Word letter(int a) { return Word({a}); }

    std::size_t size() const { return l_.size(); }
    bool empty() const { return l_.empty(); }
    int operator[](std::size_t i) const { return l_[i]; }
    int front() const { return l_.front(); }
    int back() const { return l_.back(); }
    auto begin() const { return l_.begin(); }
    auto end() const { return l_.end(); }
    const std::vector<int>& letters() const { return l_; }

    Word sub(std::size_t pos, std::size_t n = std::string::npos) const
    {
        const std::size_t e = n == std::string::npos ? l_.size() : std::min(l_.size(), pos + n);
        return Word(std::vector<int>(l_.begin() + static_cast<long>(pos), l_.begin() + static_cast<long>(e)));
    }
    Word tail() const { return sub(1); }

    friend Word operator*(const Word& a, const Word& b)
    {
        std::vector<int> r = a.l_;
        r.insert(r.end(), b.l_.begin(), b.l_.end());
        return Word(std::move(r));
    }
    Word& operator*=(const Word& b)
    {
        l_.insert(l_.end(), b.l_.begin(), b.l_.end());
        return *this;
    }
    Word power(int k) const
    {
        Word r;
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    // Storage order only (plain index comparison); printing and Lyndon queries
    // use Alphabet::lex_less.
    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<int> l_;
};

/// Either a finite alphabet {x_i : i in letters} ordered as listed, or the
/// graded alphabet Y = {y_1, y_2, ...} with y_k of weight k.
class Alphabet {
public:
    enum class Kind { finite, graded };

    /// Finite alphabet; letters listed in increasing order.
    static Alphabet finite(std::vector<int> letters)
    {
        if (letters.empty()) throw std::invalid_argument("finite alphabet must be nonempty");
        std::vector<int> s = letters;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("finite alphabet has duplicate letters");
        for (int a : s)
            if (a < 0) throw std::invalid_argument("letter index must be nonnegative");
        Alphabet r;
        r.kind_ = Kind::finite;
        r.letters_ = std::move(letters);
        return r;
    }
    /// x_0 < x_1 < ... < x_{m-1}.
    static Alphabet X(int m = 2)
    {
        std::vector<int> l(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) l[static_cast<std::size_t>(i)] = i;
        return finite(std::move(l));
    }
    /// y_1 > y_2 > ... by default; `decreasing = false` gives y_1 < y_2 < ...
    static Alphabet Y(bool decreasing = true)
    {
        Alphabet r;
        r.kind_ = Kind::graded;
        r.decreasing_ = decreasing;
        return r;
    }

    Kind kind() const { return kind_; }
    bool is_graded() const { return kind_ == Kind::graded; }
    bool is_finite() const { return kind_ == Kind::finite; }
    const std::vector<int>& letters() const { return letters_; }
    char prefix() const { return is_graded() ? 'y' : 'x'; }

    bool contains(int a) const
    {
        if (is_graded()) return a >= 1;
        return std::find(letters_.begin(), letters_.end(), a) != letters_.end();
    }

    /// Position of a letter in the total order (smaller rank = smaller letter).
    long rank(int a) const
    {
        if (is_graded()) return decreasing_ ? -static_cast<long>(a) : a;
        auto it = std::find(letters_.begin(), letters_.end(), a);
        if (it == letters_.end()) throw std::invalid_argument("letter not in alphabet: " + letter_text(a));
        return it - letters_.begin();
    }
    bool less(int a, int b) const { return rank(a) < rank(b); }

    int grade(int a) const { return is_graded() ? a : 1; }
    int grade(const Word& w) const
    {
        int g = 0;
        for (int a : w) g += grade(a);
        return g;
    }

    /// Lexicographic order induced by the letter order; a proper prefix is smaller.
    bool lex_less(const Word& u, const Word& v) const
    {
        const std::size_t n = std::min(u.size(), v.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i] != v[i]) return less(u[i], v[i]);
        }
        return u.size() < v.size();
    }
    /// Output order: grade first, then lexicographic.
    bool graded_less(const Word& u, const Word& v) const
    {
        const int gu = grade(u), gv = grade(v);
        if (gu != gv) return gu < gv;
        return lex_less(u, v);
    }

    /// Letters of grade <= g, in increasing letter order.
    std::vector<int> letters_up_to(int g) const
    {
        std::vector<int> r;
        if (is_graded()) {
            for (int k = 1; k <= g; ++k) r.push_back(k);
        } else if (g >= 1) {
            r = letters_;
        }
        std::sort(r.begin(), r.end(), [this](int a, int b) { return less(a, b); });
        return r;
    }

    /// All words of grade exactly g, lexicographically increasing.
    std::vector<Word> words_of_grade(int g) const
    {
        std::vector<Word> out;
        if (g < 0) return out;
        const std::vector<int> ls = letters_up_to(g);
        std::vector<int> cur;
        extend(cur, 0, g, ls, out);
        return out;
    }
    /// All words of grade <= g in output order.
    std::vector<Word> words_up_to(int g) const
    {
        std::vector<Word> out;
        for (int k = 0; k <= g; ++k) {
            auto part = words_of_grade(k);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

    std::string letter_text(int a) const { return std::string(1, prefix()) + std::to_string(a); }
    std::string word_text(const Word& w) const
    {
        if (w.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += '.';
            s += letter_text(w[i]);
        }
        return s;
    }

    /// Parse `x0.x1` / `y2.y1` / `1`. Letters must belong to the alphabet.
    Word parse_word(std::string_view s) const
    {
        if (s == "1") return {};
        std::vector<int> l;
        std::size_t i = 0;
        while (i < s.size()) {
            if (s[i] != prefix()) throw ParseError(std::string("expected letter '") + prefix() + "'", i);
            std::size_t j = i + 1;
            int v = 0;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') {
                v = v * 10 + (s[j] - '0');
                if (v > 1000000) throw ParseError("letter index too large", i);
                ++j;
            }
            if (j == i + 1) throw ParseError("expected letter index", j);
            if (!contains(v)) throw ParseError("letter " + letter_text(v) + " not in alphabet", i);
            l.push_back(v);
            i = j;
            if (i < s.size()) {
                if (s[i] != '.') throw ParseError("expected '.'", i);
                ++i;
                if (i == s.size()) throw ParseError("dangling '.'", i);
            }
        }
        return Word(std::move(l));
    }

    std::string describe() const
    {
        if (is_graded()) return decreasing_ ? "Y(y1>y2>...)" : "Y(y1<y2<...)";
        std::string s = "{";
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += "<";
            s += letter_text(letters_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    Alphabet() = default;

    void extend(std::vector<int>& cur, int g, int target, const std::vector<int>& ls, std::vector<Word>& out) const
    {
        if (g == target) {
            out.emplace_back(cur);
            return;
        }
        for (int a : ls) {
            const int ga = grade(a);
            if (g + ga > target) continue;
            cur.push_back(a);
            extend(cur, g + ga, target, ls, out);
            cur.pop_back();
        }
    }

    Kind kind_ = Kind::finite;
    std::vector<int> letters_;
    bool decreasing_ = true;
};

/// Smallest finite alphabet containing both (letters sorted by index).
inline Alphabet merge_finite(const Alphabet& a, const Alphabet& b)
{
    if (!a.is_finite() || !b.is_finite()) throw std::invalid_argument("merge_finite needs finite alphabets");
    std::vector<int> l = a.letters();
    l.insert(l.end(), b.letters().begin(), b.letters().end());
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    return Alphabet::finite(std::move(l));
}

} // namespace ncs
