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
#include <string>
#include <utility>
#include <vector>

#include "ncs/rational.hpp"

namespace ncs {

/// Dense univariate polynomial over Q. Coefficients are stored by increasing
/// degree with no trailing zeros, so the zero polynomial has an empty vector
/// and equality is plain vector equality.
class UPoly {
public:
    UPoly() = default;
    UPoly(int c) : UPoly(Rational(c)) {}
    UPoly(const Rational& c)
    {
        if (c != 0) coeffs_.push_back(c);
    }
    explicit UPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static UPoly var() { return UPoly(std::vector<Rational>{0, 1}); }
    static UPoly monomial(const Rational& c, int degree)
    {
        std::vector<Rational> v(static_cast<std::size_t>(degree) + 1, Rational(0));
        v.back() = c;
        return UPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational operator[](int i) const
    {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
        return coeffs_[static_cast<std::size_t>(i)];
    }
    Rational lead() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    friend bool operator==(const UPoly&, const UPoly&) = default;

    UPoly operator-() const
    {
        UPoly r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    UPoly& operator+=(const UPoly& o)
    {
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o) { return *this += -o; }
    UPoly& operator*=(const UPoly& o)
    {
        *this = *this * o;
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return UPoly(std::move(r));
    }

    /// Euclidean division; throws on division by zero.
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
    {
        if (b.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<Rational> rem = a.coeffs_;
        const int db = b.degree();
        if (a.degree() < db) return {UPoly(), a};
        std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1, Rational(0));
        const Rational lb = b.lead();
        for (int k = a.degree(); k >= db; --k) {
            const Rational c = rem[static_cast<std::size_t>(k)] / lb;
            quo[static_cast<std::size_t>(k - db)] = c;
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs_[static_cast<std::size_t>(j)];
        }
        return {UPoly(std::move(quo)), UPoly(std::move(rem))};
    }

    UPoly monic() const
    {
        if (is_zero()) return {};
        UPoly r = *this;
        const Rational l = lead();
        for (auto& c : r.coeffs_) c /= l;
        return r;
    }

    /// Monic gcd (zero iff both inputs are zero).
    friend UPoly gcd(UPoly a, UPoly b)
    {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    UPoly derivative() const
    {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> r(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) r[i - 1] = coeffs_[i] * static_cast<long>(i);
        return UPoly(std::move(r));
    }

    Rational eval(const Rational& x) const
    {
        Rational acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double eval(double x) const
    {
        double acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->convert_to<double>();
        return acc;
    }

    /// p(z + a).
    UPoly shifted(const Rational& a) const
    {
        UPoly r;
        const UPoly lin(std::vector<Rational>{a, 1});
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * lin + UPoly(*it);
        return r;
    }

    /// Multiply by a rational scalar.
    UPoly scaled(const Rational& c) const
    {
        if (c == 0) return {};
        UPoly r = *this;
        for (auto& x : r.coeffs_) x *= c;
        return r;
    }

    /// Positive rational g such that p / g has coprime integer coefficients.
    Rational content() const
    {
        if (is_zero()) return 1;
        Integer num_gcd = 0;
        Integer den_lcm = 1;
        for (const auto& c : coeffs_) {
            if (c == 0) continue;
            const Integer n = boost::multiprecision::numerator(c);
            const Integer d = boost::multiprecision::denominator(c);
            num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::abs(n));
            den_lcm = boost::multiprecision::lcm(den_lcm, d);
        }
        return Rational(num_gcd) / Rational(den_lcm);
    }

    /// Text in increasing powers, e.g. `1-z`, `-1/2+3*z^2`.
    std::string to_string(char var = 'z') const
    {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            Rational c = coeffs_[i];
            if (c == 0) continue;
            const bool neg = c < 0;
            if (neg) c = -c;
            if (first) {
                if (neg) out += "-";
            } else {
                out += neg ? "-" : "+";
            }
            first = false;
            if (i == 0) {
                out += c.str();
                continue;
            }
            if (c != 1) out += c.str() + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

} // namespace ncs
