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

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace ncs {

/// Arbitrary-precision rationals (GMP backed, expression templates off so
/// that `auto` deduces values).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Raised for malformed text input (coefficients, words, expressions).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

/// Raised when an operation's mathematical precondition fails.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Rational factorial(int n)
{
    Rational r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Rational binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    Rational r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline std::string to_text(const Rational& q) { return q.str(); }

/// Exact conversion of a finite double (every double is a dyadic rational).
inline Rational rational_from_double(double x)
{
    if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
    Rational r(x);
    return r;
}

} // namespace ncs
