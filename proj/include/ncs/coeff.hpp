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

#include <cctype>
#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include "ncs/ratfun.hpp"

namespace ncs {

// Coefficient rings. Every coefficient type used by Series, LinearRep and the
// linear algebra helpers provides a specialization with:
//   zero(), one(), is_zero(x), from_rational(q), to_string(x), parse(text),
//   is_field, is_exact, name, pivot_cost(x).
template <class T>
struct coeff_traits;

namespace detail {

// Recursive-descent reader for one-variable rational expressions such as
// `(z^2-1)/(z)`, `-3/4`, `1/(1-z)`, `t^2`. Either `t` or `z` names the
// indeterminate.
class RatFunReader {
public:
    explicit RatFunReader(std::string_view s) : s_(s) {}

    RatFun read_all()
    {
        RatFun r = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return r;
    }

private:
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RatFun expr()
    {
        RatFun acc;
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+')) acc += term();
            else if (eat('-')) acc -= term();
            else return acc;
        }
    }

    RatFun term()
    {
        RatFun acc = factor();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= factor();
            } else if (c == '/') {
                ++pos_;
                acc /= factor();
            } else if (c == '(' || c == 't' || c == 'z' || std::isdigit(static_cast<unsigned char>(c))) {
                acc *= factor(); // juxtaposition, e.g. `2z`
            } else {
                return acc;
            }
        }
    }

    RatFun factor()
    {
        RatFun b = base();
        if (eat('^')) {
            bool neg = eat('-');
            skip();
            const std::size_t start = pos_;
            long e = read_uint();
            if (e > 4096) throw ParseError("exponent too large", start);
            RatFun r(1);
            for (long i = 0; i < e; ++i) r *= b;
            if (neg) r = RatFun(1) / r;
            return r;
        }
        return b;
    }

    long read_uint()
    {
        skip();
        const std::size_t start = pos_;
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000) throw ParseError("integer too large", start);
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected integer", start);
        return v;
    }

    RatFun base()
    {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of coefficient", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFun r = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (c == 't' || c == 'z') {
            ++pos_;
            return RatFun::var();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RatFun(Rational(std::string(s_.substr(start, pos_ - start))));
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

inline std::string double_text(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace detail

/// Parse a one-variable rational function (variable `t` or `z`).
inline RatFun parse_ratfun(std::string_view text) { return detail::RatFunReader(text).read_all(); }

template <>
struct coeff_traits<Rational> {
    static constexpr bool is_field = true;
    static constexpr bool is_exact = true;
    static constexpr const char* name = "Q";
    static Rational zero() { return 0; }
    static Rational one() { return 1; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational from_rational(const Rational& q) { return q; }
    static std::string to_string(const Rational& x) { return x.str(); }
    static Rational parse(std::string_view text)
    {
        RatFun r = parse_ratfun(text);
        if (r.num().degree() > 0 || r.den().degree() > 0) throw ParseError("expected a rational number", 0);
        return r.num()[0];
    }
    static std::size_t pivot_cost(const Rational& x)
    {
        return boost::multiprecision::msb(boost::multiprecision::abs(boost::multiprecision::numerator(x)) + 1) +
               boost::multiprecision::msb(boost::multiprecision::denominator(x));
    }
};

template <>
struct coeff_traits<UPoly> {
    static constexpr bool is_field = false;
    static constexpr bool is_exact = true;
    static constexpr const char* name = "Q[t]";
    static UPoly zero() { return {}; }
    static UPoly one() { return UPoly(1); }
    static bool is_zero(const UPoly& x) { return x.is_zero(); }
    static UPoly from_rational(const Rational& q) { return UPoly(q); }
    static std::string to_string(const UPoly& x) { return x.to_string('t'); }
    static UPoly parse(std::string_view text)
    {
        RatFun r = parse_ratfun(text);
        if (!r.is_polynomial()) throw ParseError("expected a polynomial in t", 0);
        return r.num();
    }
    static std::size_t pivot_cost(const UPoly& x) { return static_cast<std::size_t>(x.degree() + 1); }
};

template <>
struct coeff_traits<RatFun> {
    static constexpr bool is_field = true;
    static constexpr bool is_exact = true;
    static constexpr const char* name = "Q(z)";
    static RatFun zero() { return {}; }
    static RatFun one() { return RatFun(1); }
    static bool is_zero(const RatFun& x) { return x.is_zero(); }
    static RatFun from_rational(const Rational& q) { return RatFun(q); }
    static std::string to_string(const RatFun& x) { return x.to_string('z'); }
    static RatFun parse(std::string_view text) { return parse_ratfun(text); }
    /// Least total degree first.
    static std::size_t pivot_cost(const RatFun& x)
    {
        return static_cast<std::size_t>(x.num().degree() + x.den().degree());
    }
};

template <>
struct coeff_traits<double> {
    static constexpr bool is_field = true;
    static constexpr bool is_exact = false;
    static constexpr const char* name = "R";
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x) { return x == 0.0; }
    static double from_rational(const Rational& q) { return q.convert_to<double>(); }
    static std::string to_string(double x) { return detail::double_text(x); }
    static double parse(std::string_view text) { return std::stod(std::string(text)); }
    /// Partial pivoting: larger magnitude is cheaper.
    static std::size_t pivot_cost(double x)
    {
        const double a = std::fabs(x);
        return a == 0.0 ? ~std::size_t{0} : static_cast<std::size_t>(std::max(0.0, 1e6 - std::log2(a) * 1e3));
    }
};

/// True when the coefficient text must be parenthesized inside the series
/// grammar (anything beyond a plain rational).
template <class T>
bool needs_parens(const T& c)
{
    if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, double>) {
        (void)c;
        return false;
    } else {
        const std::string s = coeff_traits<T>::to_string(c);
        for (char ch : s)
            if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-')) return true;
        return false;
    }
}

} // namespace ncs
