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

#include "ncs/coeff.hpp"

using namespace ncs;

TEST_CASE("polynomial arithmetic and gcd", "[rings]")
{
    const UPoly z = UPoly::var();
    const UPoly a = (z - UPoly(1)) * (z + UPoly(2));
    const UPoly b = (z - UPoly(1)) * (z * z + UPoly(1));
    CHECK(gcd(a, b) == z - UPoly(1));
    auto [q, r] = divmod(b, a);
    CHECK(q * a + r == b);
    CHECK(r.degree() < a.degree());
    CHECK(UPoly().degree() == -1);
    CHECK((z * z).derivative() == UPoly(2) * z);
    CHECK(a.eval(Rational(1)) == 0);
    CHECK(a.shifted(1).eval(Rational(0)) == 0);
}

TEST_CASE("polynomial text is ascending", "[rings]")
{
    const UPoly z = UPoly::var();
    CHECK((UPoly(1) - z).to_string() == "1-z");
    CHECK((UPoly(Rational(-1, 2)) + UPoly(3) * z * z).to_string() == "-1/2+3*z^2");
    CHECK(UPoly().to_string() == "0");
    CHECK((z * z).to_string('t') == "t^2");
}

TEST_CASE("rational functions are reduced with monic denominator", "[rings]")
{
    const UPoly z = UPoly::var();
    RatFun f(UPoly(2) * (z - UPoly(1)), UPoly(4) * (z - UPoly(1)) * z);
    CHECK(f.num() == UPoly(Rational(1, 2)));
    CHECK(f.den() == z);
    CHECK(RatFun(UPoly(), z).den() == UPoly(1));
    CHECK_THROWS_AS(RatFun(UPoly(1), UPoly()), DomainError);
    CHECK_THROWS_AS(RatFun(1) / RatFun(), DomainError);
}

TEST_CASE("rational function field laws on random samples", "[rings][property]")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    auto rnd_poly = [&](int deg) {
        std::vector<Rational> c;
        for (int i = 0; i <= deg; ++i) c.push_back(d(rng));
        return UPoly(c);
    };
    auto rnd = [&] {
        UPoly den = rnd_poly(2);
        if (den.is_zero()) den = UPoly(1);
        return RatFun(rnd_poly(2), den);
    };
    for (int i = 0; i < 60; ++i) {
        RatFun a = rnd(), b = rnd(), c = rnd();
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
        if (!b.is_zero()) CHECK((a / b) * b == a);
    }
}

TEST_CASE("coefficient text parsing", "[rings][parse]")
{
    using QT = coeff_traits<Rational>;
    using PT = coeff_traits<UPoly>;
    using FT = coeff_traits<RatFun>;
    CHECK(QT::parse("-3/4") == Rational(-3, 4));
    CHECK(QT::parse("6/8") == Rational(3, 4));
    CHECK_THROWS_AS(QT::parse("z"), ParseError);
    CHECK(PT::parse("t^2") == UPoly::monomial(1, 2));
    CHECK(PT::parse("-2*t^2+1") == UPoly(std::vector<Rational>{1, 0, -2}));
    CHECK_THROWS_AS(PT::parse("1/t"), ParseError);
    const UPoly z = UPoly::var();
    CHECK(FT::parse("(z^2-1)/(z)") == RatFun(z * z - UPoly(1), z));
    CHECK(FT::parse("1/(1-z)") == RatFun(UPoly(1), UPoly(1) - z));
    CHECK(FT::parse("2z") == RatFun(UPoly(2) * z));
    CHECK(FT::parse("z^-2") == RatFun(UPoly(1), z * z));
    CHECK_THROWS_AS(FT::parse("(1-z"), ParseError);
    CHECK_THROWS_AS(FT::parse("1/0"), DomainError);
    CHECK_THROWS_AS(FT::parse("1+"), ParseError);
}

TEST_CASE("coefficient text round-trips", "[rings][parse]")
{
    using FT = coeff_traits<RatFun>;
    for (const char* s : {"0", "-3/4", "1-z", "(1)/(z)", "(-1)/(-1+z)", "(1+z^3)/(-2+z)", "-1/2+3*z^2"}) {
        const RatFun f = FT::parse(s);
        CHECK(FT::parse(FT::to_string(f)) == f);
    }
    CHECK(FT::to_string(FT::parse("1/z")) == "(1)/(z)");
    CHECK(FT::to_string(FT::parse("1/(1-z)")) == "(-1)/(-1+z)");
}
