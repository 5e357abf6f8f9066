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

#include <string>
#include <utility>
#include <vector>

#include "ncs/upoly.hpp"

namespace ncs {

/// Univariate rational function over Q in reduced form: numerator and
/// denominator coprime, denominator monic. Equality is therefore syntactic.
class RatFun {
public:
    RatFun() : den_(1) {}
    RatFun(int c) : num_(c), den_(1) {}
    RatFun(const Rational& c) : num_(c), den_(1) {}
    RatFun(UPoly p) : num_(std::move(p)), den_(1) {}
    RatFun(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatFun var() { return RatFun(UPoly::var()); }

    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend bool operator==(const RatFun&, const RatFun&) = default;

    RatFun operator-() const { return RatFun(-num_, den_, raw_tag{}); }
    friend RatFun operator+(const RatFun& a, const RatFun& b)
    {
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_);
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b)
    {
        if (b.is_zero()) throw DomainError("rational function division by zero");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    RatFun derivative() const
    {
        // (n/d)' = (n'd - nd') / d^2
        return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    double eval(double x) const { return num_.eval(x) / den_.eval(x); }
    Rational eval(const Rational& x) const
    {
        const Rational d = den_.eval(x);
        if (d == 0) throw DomainError("rational function evaluated at a pole");
        return num_.eval(x) / d;
    }

    /// `p` when the denominator is 1, otherwise `(p)/(q)`.
    std::string to_string(char var = 'z') const
    {
        if (is_polynomial()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    struct raw_tag {};
    RatFun(UPoly num, UPoly den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize()
    {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = UPoly(1);
            return;
        }
        const UPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        const Rational l = den_.lead();
        if (l != 1) {
            num_ = num_.scaled(1 / l);
            den_ = den_.scaled(1 / l);
        }
    }

    UPoly num_;
    UPoly den_;
};

} // namespace ncs
