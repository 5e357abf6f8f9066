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

#include <functional>
#include <random>

#include "ncs/series.hpp"

using namespace ncs;
using QS = Series<Rational>;

namespace {

const Alphabet X = Alphabet::X();
const Alphabet Y = Alphabet::Y();

QS px(const std::string& s) { return QS::parse(X, s); }
QS py(const std::string& s) { return QS::parse(Y, s); }

// Shuffle oracle: choose which positions of the result come from u.
QS shuffle_oracle(const Word& u, const Word& v)
{
    QS r(X);
    const std::size_t n = u.size() + v.size();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != u.size()) continue;
        std::vector<int> w;
        std::size_t i = 0, j = 0;
        for (std::size_t k = 0; k < n; ++k) w.push_back(mask >> k & 1 ? u[i++] : v[j++]);
        r.add(Word(w), 1);
    }
    return r;
}

// Quasi-shuffle oracle: pairs of increasing maps into [n] covering [n];
// a position hit by both gets the summed letter.
QS stuffle_oracle(const Word& u, const Word& v)
{
    QS r(Y);
    const std::size_t p = u.size(), q = v.size();
    for (std::size_t n = std::max(p, q); n <= p + q; ++n) {
        // assign each output position one of: u only, v only, both
        std::vector<int> kind(n, 0);
        std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t k, std::size_t i, std::size_t j) {
            if (k == n) {
                if (i != p || j != q) return;
                std::vector<int> w;
                std::size_t a = 0, b = 0;
                for (std::size_t t = 0; t < n; ++t) {
                    if (kind[t] == 0) w.push_back(u[a++]);
                    else if (kind[t] == 1) w.push_back(v[b++]);
                    else w.push_back(u[a++] + v[b++]);
                }
                r.add(Word(w), 1);
                return;
            }
            if (i < p) { kind[k] = 0; rec(k + 1, i + 1, j); }
            if (j < q) { kind[k] = 1; rec(k + 1, i, j + 1); }
            if (i < p && j < q) { kind[k] = 2; rec(k + 1, i + 1, j + 1); }
        };
        rec(0, 0, 0);
    }
    return r;
}

QS random_poly(std::mt19937& rng, const Alphabet& A, int g, int terms)
{
    const auto words = A.words_up_to(g);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int> c(-3, 3);
    QS p(A);
    for (int i = 0; i < terms; ++i) p.add(words[pick(rng)], Rational(c(rng), 1 + static_cast<int>(rng() % 3)));
    return p;
}

} // namespace

TEST_CASE("concatenation", "[series]")
{
    CHECK(conc(px("x0"), px("x1")) == px("x0.x1"));
    CHECK(conc(px("1"), px("2*x0 - x1.x0")) == px("2*x0 - x1.x0"));
    CHECK(conc(px("x0 + x1"), px("x0")) == px("x0.x0 + x1.x0"));
    CHECK_THROWS_AS(conc(px("x0"), py("y1")), std::invalid_argument);
}

TEST_CASE("shuffle product", "[series]")
{
    CHECK(shuffle(px("x0"), px("x1")) == px("x0.x1 + x1.x0"));
    CHECK(shuffle(px("x0"), px("x0")) == px("2*x0.x0"));
    CHECK(shuffle(px("x0.x1"), px("x0")) == px("2*x0.x0.x1 + x0.x1.x0"));
    for (const Word& u : X.words_up_to(4))
        for (const Word& v : X.words_up_to(4))
            CHECK(shuffle(QS::word(X, u), QS::word(X, v)) == shuffle_oracle(u, v));
}

TEST_CASE("stuffle product", "[series]")
{
    CHECK(stuffle(py("y1"), py("y1")) == py("2*y1.y1 + y2"));
    CHECK(stuffle(py("y1"), py("y2")) == py("y1.y2 + y2.y1 + y3"));
    CHECK(stuffle(py("y2"), py("y2.y1")) == py("2*y2.y2.y1 + y2.y1.y2 + y4.y1 + y2.y3"));
    CHECK_THROWS_AS(stuffle(px("x0"), px("x1")), std::invalid_argument);
    for (const Word& u : Y.words_up_to(4))
        for (const Word& v : Y.words_up_to(4))
            CHECK(stuffle(QS::word(Y, u), QS::word(Y, v)) == stuffle_oracle(u, v));
}

TEST_CASE("shuffle and stuffle are associative and commutative", "[series][property]")
{
    for (Product k : {Product::shuffle, Product::stuffle}) {
        const Alphabet& A = k == Product::shuffle ? X : Y;
        const auto ws = A.words_up_to(5);
        for (const Word& u : ws)
            for (const Word& v : ws) {
                if (A.grade(u) + A.grade(v) > 5) continue;
                const QS a = QS::word(A, u), b = QS::word(A, v);
                REQUIRE(multiply(k, a, b) == multiply(k, b, a));
                for (const Word& w : ws) {
                    if (A.grade(u) + A.grade(v) + A.grade(w) > 5) continue;
                    const QS c = QS::word(A, w);
                    REQUIRE(multiply(k, multiply(k, a, b), c) == multiply(k, a, multiply(k, b, c)));
                }
            }
    }
}

TEST_CASE("coproducts", "[series]")
{
    using QT = Tensor<Rational>;
    auto t = [](const Alphabet& A, std::initializer_list<std::tuple<Word, Word, int>> l) {
        QT r(A);
        for (const auto& [u, v, c] : l) r.add(u, v, c);
        return r;
    };
    CHECK(coproduct(Product::shuffle, px("x0.x1")) ==
          t(X, {{Word{0, 1}, Word{}, 1}, {Word{0}, Word{1}, 1}, {Word{1}, Word{0}, 1}, {Word{}, Word{0, 1}, 1}}));
    CHECK(coproduct(Product::stuffle, py("y2")) ==
          t(Y, {{Word{2}, Word{}, 1}, {Word{}, Word{2}, 1}, {Word{1}, Word{1}, 1}}));
    CHECK(coproduct(Product::conc, px("x0.x1")) ==
          t(X, {{Word{}, Word{0, 1}, 1}, {Word{0}, Word{1}, 1}, {Word{0, 1}, Word{}, 1}}));
    CHECK_THROWS(coproduct(Product::stuffle, px("x0")));
}

TEST_CASE("coproducts are conc-morphisms", "[series][property]")
{
    using QT = Tensor<Rational>;
    for (Product k : {Product::shuffle, Product::stuffle}) {
        const Alphabet& A = k == Product::shuffle ? X : Y;
        const auto ws = A.words_up_to(4);
        for (const Word& u : ws)
            for (const Word& v : ws) {
                if (A.grade(u) + A.grade(v) > 5) continue;
                const QT lhs = coproduct(k, QS::word(A, u * v));
                const QT rhs = QT::multiply(coproduct(k, QS::word(A, u)), coproduct(k, QS::word(A, v)), Product::conc,
                                            Product::conc);
                REQUIRE(lhs == rhs);
            }
    }
}

TEST_CASE("products are dual to their coproducts", "[series][property]")
{
    using QT = Tensor<Rational>;
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        const QS p = random_poly(rng, X, 3, 3), q = random_poly(rng, X, 3, 3);
        const QS s = shuffle(p, q);
        for (const Word& w : X.words_up_to(6)) {
            const QT d = coproduct(Product::shuffle, QS::word(X, w));
            REQUIRE(s.coeff(w) == pair(QT::outer(p, q), d));
        }
        const QS a = random_poly(rng, Y, 3, 3), b = random_poly(rng, Y, 3, 3);
        const QS st = stuffle(a, b);
        for (const Word& w : Y.words_up_to(6)) {
            const QT d = coproduct(Product::stuffle, QS::word(Y, w));
            REQUIRE(st.coeff(w) == pair(QT::outer(a, b), d));
        }
        // Deconcatenation is dual to concatenation.
        for (const Word& w : X.words_up_to(5)) {
            const QT d = coproduct(Product::conc, QS::word(X, w));
            REQUIRE(pair(QT::outer(p, q), d) == conc(p, q).coeff(w));
        }
    }
}

TEST_CASE("pairing and the pi adjointness", "[series]")
{
    CHECK(pair(px("x0.x1 + 2*x1.x0"), px("x0.x1")) == 1);
    CHECK(pair(px("7 + x0"), px("1")) == 7);
    const QS S = star(px("x0"), 2);
    CHECK_THROWS_AS(pair(S, px("x0.x0.x0")), DomainError);

    for (const Word& u : X.words_up_to(4))
        for (const Word& v : Y.words_up_to(4))
            REQUIRE(pair(pi_Y(QS::word(X, u)), QS::word(Y, v)) == pair(QS::word(X, u), pi_X(QS::word(Y, v))));
}

TEST_CASE("shifts", "[series]")
{
    CHECK(shift(Side::right, px("x0.x1"), px("x0")) == px("x1"));
    CHECK(shift(Side::left, px("x0.x1"), px("x1")) == px("x0"));
    const QS S = star(px("x0 + x1"), 3);
    CHECK(shift(Side::right, S, px("x0")).bound() == 2);
    CHECK_THROWS_AS(shift(Side::right, S, px("x0.x0.x0.x0")), DomainError);

    // (P ▷ S) ◁ R = P ▷ (S ◁ R) and the defining identities.
    std::mt19937 rng(3);
    for (int it = 0; it < 30; ++it) {
        const QS s = random_poly(rng, X, 5, 12), p = random_poly(rng, X, 2, 2), r = random_poly(rng, X, 2, 2);
        REQUIRE(shift(Side::right, shift(Side::left, s, p), r) == shift(Side::left, shift(Side::right, s, r), p));
        for (const Word& w : X.words_up_to(3)) {
            REQUIRE(shift(Side::right, s, p).coeff(w) == pair(s, conc(p, QS::word(X, w))));
            REQUIRE(shift(Side::left, s, p).coeff(w) == pair(s, conc(QS::word(X, w), p)));
        }
    }
}

TEST_CASE("star, exp and log", "[series]")
{
    CHECK(star(px("x0"), 3).same_terms(px("1 + x0 + x0.x0 + x0.x0.x0")));
    CHECK(star(px("x0.x1"), 4).same_terms(px("1 + x0.x1 + x0.x1.x0.x1")));
    CHECK(star(px("x0 + x1"), 2).same_terms(px("1 + x0 + x1 + x0.x0 + x0.x1 + x1.x0 + x1.x1")));
    CHECK_THROWS_AS(star(px("1 + x0"), 3), DomainError);
    CHECK_THROWS_AS(star(px("x0")), DomainError);

    CHECK(t_exp(px("x0"), 2).same_terms(px("1 + x0 + 1/2*x0.x0")));
    CHECK(t_log(px("1 + x0"), 3).same_terms(px("x0 - 1/2*x0.x0 + 1/3*x0.x0.x0")));
    CHECK_THROWS_AS(t_log(px("x0"), 3), DomainError);
    CHECK_THROWS_AS(t_exp(px("1"), 3), DomainError);

    std::mt19937 rng(5);
    for (int it = 0; it < 20; ++it) {
        QS p = random_poly(rng, X, 3, 5);
        p.add(Word{}, -p.constant_term());
        const QS e = t_exp(p, 5);
        REQUIRE(t_log(e, 5) == p.truncated(5));
        REQUIRE(t_exp(t_log(e, 5), 5) == e);
    }
}

TEST_CASE("characters for concatenation and for shuffle", "[series][property]")
{
    // A Kleene star of a degree-1 polynomial is multiplicative for
    // concatenation; the exponential of one is group-like for shuffle.
    const QS S = star(px("2*x0 - 1/3*x1"), 6);
    const QS E = t_exp(px("2*x0 - 1/3*x1"), 6);
    for (const Word& u : X.words_up_to(3))
        for (const Word& v : X.words_up_to(3)) {
            REQUIRE(S.coeff(u * v) == S.coeff(u) * S.coeff(v));
            REQUIRE(pair(E, shuffle(QS::word(X, u), QS::word(X, v))) == E.coeff(u) * E.coeff(v));
        }
    // The star itself is not shuffle-multiplicative: <S, x0 ⧢ x0> = 2 <S, x0>^2.
    CHECK(pair(S, shuffle(px("x0"), px("x0"))) == 2 * S.coeff(Word{0}) * S.coeff(Word{0}));
}

TEST_CASE("text form round-trips", "[series][parse]")
{
    CHECK(px("x0.x1 - 1/2*x1.x0").to_string() == "1*x0.x1 - 1/2*x1.x0");
    CHECK(px("0").to_string() == "0");
    CHECK(px("x0 - x0").to_string() == "0");
    CHECK(px("-3 + x1 + 2*x0").to_string() == "-3 + 2*x0 + 1*x1");
    std::mt19937 rng(9);
    for (int it = 0; it < 30; ++it) {
        const QS p = random_poly(rng, X, 4, 6);
        REQUIRE(px(p.to_string()) == p);
        const QS q = random_poly(rng, Y, 4, 6);
        REQUIRE(py(q.to_string()) == q);
    }
    using PS = Series<UPoly>;
    const PS t = PS::parse(X, "(-t^2)*x0.x1 + (1+t)*x1 - 3");
    CHECK(t.to_string() == "(-3) + (1+t)*x1 + (-t^2)*x0.x1");
    CHECK(PS::parse(X, t.to_string()) == t);
    using FS = Series<RatFun>;
    const FS f = FS::parse(X, "(1/(1-z))*x1 + (z)*x0");
    CHECK(FS::parse(X, f.to_string()) == f);

    CHECK_THROWS_AS(px("x0 +"), ParseError);
    CHECK_THROWS_AS(px("x0 x1"), ParseError);
    CHECK_THROWS_AS(px("2*"), ParseError);
    CHECK_THROWS_AS(px("(1-z)*x0"), ParseError);
    CHECK_THROWS_AS(px(""), ParseError);
}

TEST_CASE("truncation bounds", "[series]")
{
    const QS a = star(px("x0"), 4), b = star(px("x1"), 2);
    CHECK(conc(a, b).bound() == 2);
    CHECK(shuffle(a, px("x0")).bound() == 4);
    CHECK_THROWS_AS(a.coeff(Word{0, 0, 0, 0, 0}), DomainError);
    const QS ab = conc(a, b);
    for (const auto& [w, c] : ab.terms()) CHECK(X.grade(w) <= 2);
}
