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

#include <cmath>
#include <random>

#include "ncs/chen.hpp"

using namespace ncs;
using Catch::Matchers::WithinAbs;
using QRep = LinearRep<Rational>;

namespace {

const Alphabet X = Alphabet::X();
const Alphabet X1 = Alphabet::finite({0});
const Alphabet Xb = Alphabet::finite({1});

Inputs polylog() { return {{0, InputFunction::inv_z()}, {1, InputFunction::inv_one_minus_z()}}; }

double fact(int n) { return std::tgamma(n + 1.0); }

QRep word_star(const Alphabet& A, const Word& w)
{
    return rep_star(rep_of_polynomial(Series<Rational>::word(A, w)));
}

double li2_half()
{
    double s = 0;
    for (int n = 1; n < 80; ++n) s += std::ldexp(1.0, -n) / (n * n);
    return s;
}

} // namespace

TEST_CASE("input functions", "[chen]")
{
    CHECK(InputFunction::parse("1/(1-z)").exact() == parse_ratfun("-1/(z-1)"));
    CHECK(InputFunction::parse("pow(z,2)").to_string() == "pow(z,2)");
    CHECK(InputFunction::parse("exp(z)").kind() == InputFunction::Kind::exp);
    CHECK(InputFunction::parse("pow(z, 1.5)").derivative(4.0, 1) == 1.5 * 2.0);
    CHECK_THROWS_AS(InputFunction::parse("pow(z,q)"), ParseError);
    CHECK(InputFunction::inv_z().valuation_at(0) == -1);
    CHECK(InputFunction::inv_one_minus_z().valuation_at(0) == 0);
    CHECK(InputFunction::parse("z^2/(1-z)").valuation_at(0) == 2);
    CHECK(InputFunction::inv_z().derivative(2.0, 2) == 2.0 / 8);
    CHECK(InputFunction::count_real_roots(parse_ratfun("(z-1)*(z-3)^2*(z^2+1)").num(), 0, 3) == 2);
    CHECK_THROWS_AS(InputFunction::inv_one_minus_z().check_path(0, 2), DomainError);
    CHECK_NOTHROW(InputFunction::inv_z().check_path(0, 1));
    CHECK_THROWS_AS(InputFunction::inv_z().check_path(-1, 1), DomainError);
    CHECK_THROWS_AS(InputFunction::power(0.5).check_path(-1, 1), DomainError);

    const Inputs in = parse_inputs(X, "x0=1/z, x1=pow(z,2.5)");
    CHECK(in.at(0).exact() == parse_ratfun("1/z"));
    CHECK_FALSE(in.at(1).exact());
    CHECK_THROWS_AS(exact_inputs(in), DomainError);
    CHECK_THROWS_AS(parse_inputs(X, "x3=1"), ParseError);
}

TEST_CASE("unit input gives z^n/n!", "[chen]")
{
    const Inputs in = {{0, InputFunction::constant(1)}};
    const ChenEvaluation ev = chen_series(X1, in, 0, 0.5, 5);
    for (int n = 0; n <= 5; ++n)
        CHECK_THAT(ev.coeff(Word{}.letter(0).power(n)), WithinAbs(std::pow(0.5, n) / fact(n), 1e-12));
    CHECK_THAT(iterated_integral(Word{0, 0}, in, 0, 0.5).value, WithinAbs(0.125, 1e-12));
}

TEST_CASE("1/z from 1 gives log^n/n!", "[chen]")
{
    const Inputs in = {{0, InputFunction::inv_z()}};
    const ChenEvaluation ev = chen_series(X1, in, 1, 2, 5);
    for (int n = 0; n <= 5; ++n)
        CHECK_THAT(ev.coeff(Word::letter(0).power(n)), WithinAbs(std::pow(std::log(2.0), n) / fact(n), 1e-10));
    CHECK_THAT(iterated_integral(Word{0}, in, 1, 2).value, WithinAbs(std::log(2.0), 1e-12));
    // Reversed path.
    CHECK_THAT(iterated_integral(Word{0, 0}, in, 2, 1).value, WithinAbs(std::pow(std::log(2.0), 2) / 2, 1e-12));
}

TEST_CASE("dilogarithm at 1/2", "[chen]")
{
    const double want = li2_half();
    CHECK_THAT(iterated_integral(Word{0, 1}, polylog(), 0, 0.5).value, WithinAbs(want, 1e-10));
    const ChenEvaluation ev = chen_series(X, polylog(), 0, 0.5, 3);
    CHECK_THAT(ev.coeff(Word{0, 1}), WithinAbs(want, 1e-10));
    // -log(1 - z) and Li_3.
    CHECK_THAT(ev.coeff(Word{1}), WithinAbs(std::log(2.0), 1e-12));
    double li3 = 0;
    for (int n = 1; n < 80; ++n) li3 += std::ldexp(1.0, -n) / (n * n * n);
    CHECK_THAT(ev.coeff(Word{0, 0, 1}), WithinAbs(li3, 1e-10));
    // Words ending in x0 diverge at 0.
    CHECK(ev.divergent.count(Word{0}));
    CHECK(ev.divergent.count(Word{1, 0}));
    CHECK_FALSE(ev.divergent.count(Word{1, 1}));
    CHECK_THROWS_AS(ev.coeff(Word{0}), DomainError);
    CHECK_THROWS_AS(iterated_integral(Word{1, 0}, polylog(), 0, 0.5), DomainError);
}

TEST_CASE("catalog inputs exp(z) and z^a", "[chen]")
{
    const double z = 0.7;
    const ChenEvaluation e = chen_series(X1, {{0, InputFunction::exp()}}, 0, z, 3);
    for (int n = 0; n <= 3; ++n)
        CHECK_THAT(e.coeff(Word::letter(0).power(n)), WithinAbs(std::pow(std::exp(z) - 1, n) / fact(n), 1e-12));
    const double a = std::sqrt(2.0);
    const ChenEvaluation p = chen_series(X1, {{0, InputFunction::power(a)}}, 0, z, 3);
    for (int n = 0; n <= 3; ++n)
        CHECK_THAT(p.coeff(Word::letter(0).power(n)), WithinAbs(std::pow(std::pow(z, a + 1) / (a + 1), n) / fact(n), 1e-11));
}

TEST_CASE("column agrees with single integrals", "[chen][property]")
{
    const double tol = 1e-10;
    const ChenEvaluation ev = chen_series(X, polylog(), 0.1, 0.6, 4, tol);
    for (const Word& w : X.words_up_to(4)) {
        const IntegralResult r = iterated_integral(w, polylog(), 0.1, 0.6, tol);
        REQUIRE_THAT(ev.coeff(w), WithinAbs(r.value, 2 * tol));
    }
}

TEST_CASE("group-likeness", "[chen][property]")
{
    const ChenEvaluation u1 = chen_series(X1, {{0, InputFunction::constant(1)}}, 0, 0.5, 4);
    CHECK(friedrichs_check(u1).defect < 1e-9);
    const ChenEvaluation pl = chen_series(X, polylog(), 0, 0.5, 4);
    CHECK(friedrichs_check(pl).defect < 1e-7);

    ChenEvaluation bad = u1;
    bad.values[Word{0, 0}].value += 1e-3;
    const DefectReport d = friedrichs_check(bad);
    CHECK(d.defect >= 1e-3);
    CHECK_FALSE(d.location.empty());

    // log of a single-letter exponential is z x.
    const Series<double> L = t_log(u1.series());
    CHECK_THAT(L.coeff(Word{0}), WithinAbs(0.5, 1e-12));
    for (int n = 2; n <= 4; ++n) CHECK_THAT(L.coeff(Word::letter(0).power(n)), WithinAbs(0, 1e-12));
    CHECK(primitive_log_check(u1).defect < 1e-10);

    const ChenEvaluation mid = chen_series(X, polylog(), 0.1, 0.5, 4);
    CHECK(primitive_log_check(mid).defect < 1e-6);
    ChenEvaluation midbad = mid;
    midbad.values[Word{0, 1}].value += 1e-2;
    CHECK(primitive_log_check(midbad).defect > 1e-3);
    // From 0 the words ending in x0 are missing, so log is unavailable.
    CHECK_THROWS_AS(primitive_log_check(pl), DomainError);
}

TEST_CASE("path composition", "[chen][property]")
{
    const ChenEvaluation a = chen_series(X, polylog(), 0.1, 0.3, 3);
    const ChenEvaluation b = chen_series(X, polylog(), 0.3, 0.55, 3);
    const ChenEvaluation c = chen_series(X, polylog(), 0.1, 0.55, 3);
    const Series<double> composed = conc(b.series(), a.series());
    for (const Word& w : X.words_up_to(3)) REQUIRE_THAT(composed.coeff(w), WithinAbs(c.coeff(w), 1e-9));
    // The other order differs.
    const Series<double> wrong = conc(a.series(), b.series());
    double gap = 0;
    for (const Word& w : X.words_up_to(3)) gap = std::max(gap, std::fabs(wrong.coeff(w) - c.coeff(w)));
    CHECK(gap > 1e-3);
}

TEST_CASE("pairing with a representation", "[chen]")
{
    const QRep xs = word_star(X1, Word{0});
    const Inputs one = {{0, InputFunction::constant(1)}};
    const PairSeriesResult e = pair_series(xs, one, 0, 1);
    CHECK(e.certified);
    CHECK_THAT(e.value, WithinAbs(std::exp(1.0), 1e-9));
    CHECK(e.tail <= 1e-10);
    CHECK_THAT(pair_ode(xs, one, 0, 1), WithinAbs(std::exp(1.0), 1e-9));

    const QRep x1s = word_star(Xb, Word{1});
    const Inputs geo = {{1, InputFunction::inv_one_minus_z()}};
    const PairSeriesResult g = pair_series(x1s, geo, 0, 0.5);
    CHECK_THAT(g.value, WithinAbs(2.0, 1e-8));
    CHECK_THAT(pair_ode(x1s, geo, 0, 0.5), WithinAbs(2.0, 1e-9));

    CHECK_THAT(pair_ode(xs, {{0, InputFunction::inv_z()}}, 1, 2), WithinAbs(2.0, 1e-9));

    const PairSeriesResult z = pair_series(rep_zero<Rational>(X), polylog(), 0.1, 0.5);
    CHECK(z.value == 0);
    CHECK(z.tail == 0);

    // Fixed-length pairing from an evaluation.
    const ChenEvaluation ev = chen_series(X1, one, 0, 0.5, 12);
    const PairSeriesResult f = pair_series(ev, xs);
    CHECK(std::fabs(f.value - std::exp(0.5)) <= f.tail + 1e-10);
    CHECK(f.tail < 1e-9);

    CHECK_THROWS_AS(pair_ode(word_star(X, Word{0}), polylog(), 0, 0.5), DomainError);
}

TEST_CASE("series and ODE pairings agree", "[chen][property]")
{
    const QRep r = word_star(X, Word{0, 1});
    for (double z1 : {0.3, 0.5, 0.7}) {
        const PairSeriesResult s = pair_series(r, polylog(), 0.1, z1);
        const double o = pair_ode(r, polylog(), 0.1, z1);
        REQUIRE(s.certified);
        REQUIRE(std::fabs(s.value - o) <= s.tail + 1e-8);
    }
    std::mt19937 g(3);
    std::uniform_int_distribution<int> c(-1, 1);
    for (int t = 0; t < 5; ++t) {
        QRep q(X, 2);
        for (std::size_t i = 0; i < 2; ++i) {
            q.nu(0, i) = c(g);
            q.eta(i, 0) = c(g);
        }
        for (int a : {0, 1}) {
            Matrix<Rational> m(2, 2);
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) m(i, j) = c(g);
            q.mu.emplace(a, m);
        }
        const Inputs in = {{0, InputFunction::exp()}, {1, InputFunction::parse("z/(2+z)")}};
        const PairSeriesResult s = pair_series(chen_series(X, in, 0, 0.4, 10), q);
        REQUIRE(s.tail < 1e-3);
        REQUIRE(std::fabs(s.value - pair_ode(q, in, 0, 0.4)) <= s.tail + 1e-8);
    }
}

TEST_CASE("scalar ODE", "[chen]")
{
    const QRep x1s = word_star(Xb, Word{1});
    const ScalarOde a = derive_scalar_ode(x1s, {{1, parse_ratfun("1/(1-z)")}});
    CHECK(a.order() == 1);
    CHECK(a.to_string() == "(1-z)*y' - y = 0");
    CHECK(a.proportional(ScalarOde{{RatFun(-1), parse_ratfun("1-z")}}));
    CHECK(a.proportional(ScalarOde{{parse_ratfun("z"), parse_ratfun("z*(z-1)")}}));

    const QRep xs = word_star(X1, Word{0});
    const ScalarOde b = derive_scalar_ode(xs, {{0, parse_ratfun("1/z")}});
    CHECK(b.to_string() == "z*y' - y = 0");

    const QRep r = word_star(X, Word{0, 1});
    const Assignment pl = {{0, parse_ratfun("1/z")}, {1, parse_ratfun("1/(1-z)")}};
    const ScalarOde c = derive_scalar_ode(r, pl);
    CHECK(c.order() == 2);
    CHECK(c.order() <= static_cast<int>(r.dim));
    CHECK(c.to_string() == "(z-z^2)*y'' + (1-z)*y' - y = 0");
    for (int k = 0; k < 20; ++k) {
        const double z = 0.15 + 0.035 * k;
        REQUIRE(scalar_ode_residual(c, r, polylog(), 0.1, z) < 1e-6);
    }
    // A wrong equation leaves a visible residual.
    const ScalarOde wrong{{RatFun(1), parse_ratfun("1-z"), parse_ratfun("z-z^2")}};
    CHECK(scalar_ode_residual(wrong, r, polylog(), 0.1, 0.4) > 1e-3);

    CHECK_THROWS_AS(derive_scalar_ode(r, {{0, parse_ratfun("1/z")}, {1, parse_ratfun("1/(1-z)")}}, 1), DomainError);
}

TEST_CASE("ODE order never exceeds dimension", "[chen][property]")
{
    std::mt19937 g(8);
    std::uniform_int_distribution<int> c(-2, 2), dim(1, 3);
    const Assignment in = {{0, parse_ratfun("1/z")}, {1, parse_ratfun("1/(1-z)")}};
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = static_cast<std::size_t>(dim(g));
        QRep q(X, n);
        for (std::size_t i = 0; i < n; ++i) {
            q.nu(0, i) = c(g);
            q.eta(i, 0) = c(g);
        }
        for (int a : {0, 1}) {
            Matrix<Rational> m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) m(i, j) = c(g);
            q.mu.emplace(a, m);
        }
        const ScalarOde o = derive_scalar_ode(q, in);
        REQUIRE(o.order() <= static_cast<int>(n));
        if (n > 0 && !(q.nu.is_zero() || q.eta.is_zero()))
            REQUIRE(scalar_ode_residual(o, q, polylog(), 0.2, 0.45) < 1e-6);
    }
}

TEST_CASE("derivatives from Q_l match finite differences", "[chen][property]")
{
    const QRep r = word_star(X, Word{0, 1});
    const double z = 0.4, h = 1e-3;
    const auto d = numeric_derivatives(r, polylog(), 0.1, z, 2);
    auto y = [&](double t) { return pair_ode(r, polylog(), 0.1, t, 1e-13); };
    const double y0 = y(z), yp = y(z + h), ym = y(z - h);
    CHECK_THAT(d[0], WithinAbs(y0, 1e-10));
    const double d1 = (yp - ym) / (2 * h), d2 = (yp - 2 * y0 + ym) / (h * h);
    CHECK(std::fabs(d1 - d[1]) <= 1e-5 * std::fabs(d[1]));
    CHECK(std::fabs(d2 - d[2]) <= 1e-5 * std::fabs(d[2]));

    const QRep x1s = word_star(Xb, Word{1});
    const auto e = numeric_derivatives(x1s, {{1, InputFunction::inv_one_minus_z()}}, 0, 0.5, 2);
    CHECK_THAT(e[0], WithinAbs(2.0, 1e-10));
    CHECK_THAT(e[1], WithinAbs(4.0, 1e-9));
    CHECK_THAT(e[2], WithinAbs(16.0, 1e-8));
}
