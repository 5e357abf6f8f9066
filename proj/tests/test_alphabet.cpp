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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>

#include "ncs/series.hpp"

using namespace ncs;

namespace {

// Definition-based oracle: w nonempty and w < s for each proper suffix s,
// using a locally written lexicographic comparison.
bool lyndon_by_definition(const Alphabet& A, const Word& w)
{
    auto lt = [&](const Word& u, const Word& v) {
        for (std::size_t i = 0; i < std::min(u.size(), v.size()); ++i)
            if (u[i] != v[i]) return A.rank(u[i]) < A.rank(v[i]);
        return u.size() < v.size();
    };
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word s(std::vector<int>(w.begin() + static_cast<long>(i), w.end()));
        if (!lt(w, s)) return false;
    }
    return true;
}

std::vector<Word> brute_lyndon(const Alphabet& A, int g)
{
    std::vector<Word> r;
    for (const Word& w : A.words_up_to(g))
        if (lyndon_by_definition(A, w)) r.push_back(w);
    std::sort(r.begin(), r.end(), [&](const Word& u, const Word& v) { return A.lex_less(u, v); });
    return r;
}

Word xw(std::initializer_list<int> l) { return Word(l); }

} // namespace

TEST_CASE("lyndon words over {x0<x1} up to length 3", "[alphabet]")
{
    const Alphabet X = Alphabet::X();
    const std::vector<Word> expect{xw({0}), xw({0, 0, 1}), xw({0, 1}), xw({0, 1, 1}), xw({1})};
    CHECK(lyndon_words(X, 3) == expect);
    CHECK(lyndon_words(Alphabet::finite({0}), 5) == std::vector<Word>{xw({0})});
}

TEST_CASE("lyndon words match the suffix definition", "[alphabet][property]")
{
    for (int g = 1; g <= 6; ++g) {
        CHECK(lyndon_words(Alphabet::X(), g) == brute_lyndon(Alphabet::X(), g));
        CHECK(lyndon_words(Alphabet::X(3), g) == brute_lyndon(Alphabet::X(3), g));
        CHECK(lyndon_words(Alphabet::Y(), g) == brute_lyndon(Alphabet::Y(), g));
        CHECK(lyndon_words(Alphabet::Y(false), g) == brute_lyndon(Alphabet::Y(false), g));
    }
}

TEST_CASE("lyndon words over Y up to weight 3", "[alphabet]")
{
    const Alphabet Y = Alphabet::Y();
    // y3 < y2 < y1: the weight <= 3 Lyndon words are y3, y2, y2.y1, y1.
    const auto got = lyndon_words(Y, 3);
    const std::vector<Word> expect{xw({3}), xw({2}), xw({2, 1}), xw({1})};
    CHECK(got == expect);
}

TEST_CASE("standard factorization", "[alphabet]")
{
    const Alphabet X = Alphabet::X();
    CHECK(standard_factorization(X, xw({0, 1})) == std::pair{xw({0}), xw({1})});
    CHECK(standard_factorization(X, xw({0, 0, 1})) == std::pair{xw({0}), xw({0, 1})});
    CHECK(standard_factorization(X, xw({0, 1, 1})) == std::pair{xw({0, 1}), xw({1})});
    CHECK_THROWS(standard_factorization(X, xw({0})));
    CHECK_THROWS(standard_factorization(X, xw({1, 0})));
    for (const Word& l : lyndon_words(X, 7)) {
        if (l.size() < 2) continue;
        auto [a, b] = standard_factorization(X, l);
        CHECK(a * b == l);
        CHECK(lyndon_by_definition(X, a));
        CHECK(lyndon_by_definition(X, b));
        // Oracle: no longer proper suffix is Lyndon.
        for (std::size_t i = 1; i < a.size(); ++i) CHECK_FALSE(lyndon_by_definition(X, l.sub(i)));
    }
}

TEST_CASE("lyndon factorization is the unique nonincreasing one", "[alphabet][property]")
{
    const Alphabet X = Alphabet::X();
    CHECK(lyndon_factorization(X, xw({1, 0})) == std::vector<Word>{xw({1}), xw({0})});
    CHECK(lyndon_factorization(X, xw({0, 1})) == std::vector<Word>{xw({0, 1})});
    CHECK(lyndon_factorization(X, Word{}).empty());

    // Brute force: enumerate every cut of w into Lyndon pieces with
    // nonincreasing order; there must be exactly one and it must match.
    for (const Word& w : X.words_up_to(6)) {
        std::vector<std::vector<Word>> found;
        std::vector<Word> cur;
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
            if (pos == w.size()) {
                found.push_back(cur);
                return;
            }
            for (std::size_t e = pos + 1; e <= w.size(); ++e) {
                Word p = w.sub(pos, e - pos);
                if (!lyndon_by_definition(X, p)) continue;
                if (!cur.empty() && X.lex_less(cur.back(), p)) continue;
                cur.push_back(p);
                rec(e);
                cur.pop_back();
            }
        };
        rec(0);
        REQUIRE(found.size() == 1);
        CHECK(lyndon_factorization(X, w) == found.front());
    }
}

TEST_CASE("pi_X and pi_Y", "[alphabet]")
{
    CHECK(pi_X_word(xw({2, 1})) == xw({0, 1, 1}));
    CHECK(pi_X_word(Word{}) == Word{});
    CHECK(pi_X_word(xw({3})) == xw({0, 0, 1}));
    CHECK(pi_Y_word(xw({0, 1})) == xw({2}));
    CHECK_FALSE(pi_Y_word(xw({0})).has_value());
    CHECK(pi_Y_word(xw({1, 1})) == xw({1, 1}));

    const Alphabet Y = Alphabet::Y();
    for (const Word& w : Y.words_up_to(6)) {
        CHECK(pi_Y_word(pi_X_word(w)) == w);
        CHECK(Y.grade(w) == static_cast<int>(pi_X_word(w).size()));
    }
    for (const Word& u : Y.words_up_to(3))
        for (const Word& v : Y.words_up_to(3)) CHECK(pi_X_word(u * v) == pi_X_word(u) * pi_X_word(v));

    const Alphabet X = Alphabet::X();
    auto p = Series<Rational>::parse(X, "1*x0.x1 + 2*x0 - 3*x1.x1 + 5");
    CHECK(pi_Y(p).to_string() == "5 + 1*y2 - 3*y1.y1"); // y2 < y1
}

TEST_CASE("word text", "[alphabet][parse]")
{
    const Alphabet X = Alphabet::X();
    CHECK(X.word_text(xw({0, 0, 1})) == "x0.x0.x1");
    CHECK(X.word_text(Word{}) == "1");
    CHECK(X.parse_word("x0.x0.x1") == xw({0, 0, 1}));
    CHECK(X.parse_word("1") == Word{});
    CHECK_THROWS_AS(X.parse_word("x0..x1"), ParseError);
    CHECK_THROWS_AS(X.parse_word("x2"), ParseError);
    CHECK_THROWS_AS(X.parse_word("y1"), ParseError);
    CHECK(Alphabet::Y().parse_word("y12.y1") == xw({12, 1}));
    CHECK_THROWS(Alphabet::finite({0, 0}));
    CHECK_THROWS(Alphabet::finite({}));
}
