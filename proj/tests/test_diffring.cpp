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

#include <random>

#include "ncs/diffring.hpp"

using namespace ncs;

namespace {

const Alphabet X = Alphabet::X();
const Alphabet X1 = Alphabet::finite({0});

DiffPoly u(int x, int r = 0) { return DiffPoly::symbol(x, r); }
RatFun rf(const char* s) { return parse_ratfun(s); }

} // namespace

TEST_CASE("derivation", "[diffring]")
{
    CHECK(derive(u(0)) == u(0, 1));
    CHECK(derive(u(0) * u(1)) == u(0, 1) * u(1) + u(0) * u(1, 1));
    CHECK(derive(u(0) * u(0)) == DiffPoly(2) * u(0) * u(0, 1));
    CHECK(derive(DiffPoly(7)).is_zero());
    CHECK(derive(input_matrix(X)) == [] {
        DiffNCPoly m(X);
        m.add(Word{0}, u(0, 1));
        m.add(Word{1}, u(1, 1));
        return m;
    }());
    CHECK((DiffPoly(2) * u(0, 1) * u(1) * u(1) - u(0, 3)).to_string() == "2*u0'*u1^2 - u0^(3)");
}

TEST_CASE("Q_l recursion", "[diffring]")
{
    CHECK(q_l(X, 0) == DiffNCPoly::constant(X, DiffPoly(1)));
    CHECK(q_l(X, 1) == input_matrix(X));
    DiffNCPoly q2(X);
    for (int a : {0, 1})
        for (int b : {0, 1}) q2.add(Word{a, b}, u(a) * u(b));
    for (int a : {0, 1}) q2.add(Word{a}, u(a, 1));
    CHECK(q_l(X, 2) == q2);

    // Q_3 over one letter: u^3 xxx + 3 u u' xx + u'' x.
    DiffNCPoly q3(X1);
    q3.add(Word{0, 0, 0}, u(0) * u(0) * u(0));
    q3.add(Word{0, 0}, DiffPoly(3) * u(0) * u(0, 1));
    q3.add(Word{0}, u(0, 2));
    CHECK(q_l(X1, 3) == q3);

    const DiffNCPoly M = input_matrix(X);
    for (int l = 1; l <= 6; ++l) REQUIRE(q_l(X, l) == conc(q_l(X, l - 1), M) + derive(q_l(X, l - 1)));
}

TEST_CASE("Q_l explicit form", "[diffring]")
{
    for (const Alphabet& A : {X1, X})
        for (int l = 0; l <= 5; ++l) REQUIRE(q_l_explicit(A, l) == q_l(A, l));
    // The prefix binding agrees only while every coefficient is 1.
    for (int l = 0; l <= 2; ++l) CHECK(q_l_explicit(X, l, QlBinding::prefix) == q_l(X, l));
    CHECK_FALSE(q_l_explicit(X, 3, QlBinding::prefix) == q_l(X, 3));
    // Over one letter the two bindings sum to the same coefficients at l = 3.
    CHECK(q_l_explicit(X1, 3, QlBinding::prefix) == q_l(X1, 3));
    CHECK(q_l_explicit(X, 3).coeff(Word{0, 1}) == DiffPoly(2) * u(0, 1) * u(1) + u(0) * u(1, 1));
}

TEST_CASE("specialization", "[diffring]")
{
    CHECK(specialize(u(0, 1), {{0, rf("1/z")}}) == rf("-1/z^2"));
    CHECK(specialize(u(0) * u(1), {{0, rf("1/z")}, {1, rf("1/(1-z)")}}) == rf("1/(z*(1-z))"));
    const Series<RatFun> s = specialize(q_l(X1, 2), {{0, rf("1/z")}});
    Series<RatFun> want(X1);
    want.add(Word{0, 0}, rf("1/z^2"));
    want.add(Word{0}, rf("-1/z^2"));
    CHECK(s == want);
    CHECK_THROWS_AS(specialize(u(1), {{0, rf("z")}}), DomainError);
}

TEST_CASE("specialization commutes with derivation", "[diffring][property]")
{
    const Assignment a = {{0, rf("1/z")}, {1, rf("(z+2)/(1-z)^2")}};
    std::mt19937 g(17);
    std::uniform_int_distribution<int> coef(-3, 3), sym(0, 1), ord(0, 2), len(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        DiffPoly p;
        for (int t = 0; t < 3; ++t) {
            DiffPoly m(coef(g));
            for (int k = len(g); k > 0; --k) m = m * u(sym(g), ord(g));
            p = p + m;
        }
        REQUIRE(specialize(derive(p), a) == specialize(p, a).derivative());
        const DiffPoly q = u(sym(g), ord(g)) + DiffPoly(coef(g));
        REQUIRE(specialize(p * q, a) == specialize(p, a) * specialize(q, a));
    }
}

TEST_CASE("assignment text", "[diffring]")
{
    const Assignment a = parse_assignment(X, "x0=1/z, x1=1/(1-z)");
    CHECK(a.at(0) == rf("1/z"));
    CHECK(a.at(1) == rf("1/(1-z)"));
    CHECK_THROWS_AS(parse_assignment(X, "x2=1"), ParseError);
    CHECK_THROWS_AS(parse_assignment(X, "x0"), ParseError);
}

TEST_CASE("residues", "[diffring]")
{
    const auto roots = rational_roots(rf("(z-1/2)^2*(3*z+2)*z").num());
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == std::make_pair(Rational(-2, 3), 1));
    CHECK(roots[1] == std::make_pair(Rational(0), 1));
    CHECK(roots[2] == std::make_pair(Rational(1, 2), 2));
    CHECK_THROWS_AS(rational_roots(rf("z^2+1").num()), DomainError);

    CHECK(residue(rf("1/z"), 0) == 1);
    CHECK(residue(rf("1/(1-z)"), 1) == -1);
    CHECK(residue(rf("1/z^2"), 0) == 0);
    CHECK(residue(rf("(z+1)/z^2"), 0) == 1);
    CHECK(residue(rf("1/(z*(z-2))"), 2) == Rational(1, 2));
    // Residue of a derivative vanishes everywhere.
    const RatFun f = rf("(z^3+1)/((z-1)^2*(2*z+1))");
    for (const auto& [a, m] : rational_roots(f.derivative().den())) CHECK(residue(f.derivative(), a) == 0);
    CHECK(is_derivative(f.derivative()));
    CHECK_FALSE(is_derivative(rf("1/z")));
    CHECK(is_derivative(RatFun(1)));
}

TEST_CASE("independence criterion", "[diffring]")
{
    using B = IndependenceBase;
    CHECK(independence_criterion({{0, rf("1/z")}, {1, rf("1/(1-z)")}}, B::Qz));
    CHECK_FALSE(independence_criterion({{0, RatFun(1)}}, B::Qz));
    CHECK(independence_criterion({{0, RatFun(1)}}, B::Q));
    CHECK_FALSE(independence_criterion({{0, rf("1/z")}, {1, rf("2/z")}}, B::Qz));
    CHECK_FALSE(independence_criterion({{0, rf("1/z")}, {1, rf("1/z^2")}}, B::Qz));
    CHECK(independence_criterion({{0, rf("1/z")}, {1, rf("1/z^2")}}, B::Q));
    CHECK_FALSE(independence_criterion({{0, rf("1/z")}, {1, rf("2/z")}}, B::Q));
    CHECK_THROWS_AS(independence_criterion({{0, rf("1/(z^2+1)")}}, B::Qz), DomainError);
}
