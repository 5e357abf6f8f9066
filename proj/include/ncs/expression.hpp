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

// Rational expressions over letters, compiled to linear representations.
//
//   sum     := mixed (('+' | '-') mixed)*
//   mixed   := concat (('shuffle' | 'stuffle') concat)*
//   concat  := postfix (('.' | '*') postfix)*      '*' here is followed by an operand
//   postfix := unary '*'*                          '*' here is a Kleene star
//   unary   := '-' unary | atom
//   atom    := number | x<k> | y<k> | t['^'k] | z['^'k] | '(' sum ')'
//
// Numbers are integers or fractions (3/4). The variable t (ring Q[t]) or z
// (ring Q(z)) may appear as a coefficient.

#include <cctype>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ncs/automata.hpp"

namespace ncs {

struct Expr {
    enum class Op { number, var, letter, add, sub, neg, conc, shuffle, stuffle, star };
    Op op = Op::number;
    Rational number;
    int index = 0;       // letter index, or the exponent of var
    char symbol = 'x';   // letter prefix, or the variable name
    std::size_t pos = 0; // source position, for diagnostics
    std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    ExprPtr parse()
    {
        ExprPtr e = sum();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
        return e;
    }

private:
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c)
    {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    std::string peek_word()
    {
        skip();
        std::size_t j = i_;
        while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
        return std::string(s_.substr(i_, j - i_));
    }
    // Whether the token at position j can start an operand.
    bool operand_at(std::size_t j) const
    {
        while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
        if (j >= s_.size()) return false;
        const char c = s_[j];
        if (c == '(' || std::isdigit(static_cast<unsigned char>(c))) return true;
        if (!std::isalpha(static_cast<unsigned char>(c))) return false;
        std::size_t k = j;
        while (k < s_.size() && std::isalnum(static_cast<unsigned char>(s_[k]))) ++k;
        const std::string_view w = s_.substr(j, k - j);
        return w != "shuffle" && w != "stuffle";
    }

    static ExprPtr node(Expr::Op op, std::size_t pos, std::vector<ExprPtr> args)
    {
        auto e = std::make_shared<Expr>();
        e->op = op;
        e->pos = pos;
        e->args = std::move(args);
        return e;
    }

    ExprPtr sum()
    {
        ExprPtr e = mixed();
        while (true) {
            skip();
            if (peek('+') || peek('-')) {
                const std::size_t at = i_;
                const Expr::Op op = s_[i_++] == '+' ? Expr::Op::add : Expr::Op::sub;
                e = node(op, at, {e, mixed()});
            } else {
                return e;
            }
        }
    }

    ExprPtr mixed()
    {
        ExprPtr e = concat();
        while (true) {
            const std::string w = peek_word();
            if (w != "shuffle" && w != "stuffle") return e;
            const std::size_t at = i_;
            i_ += w.size();
            e = node(w == "shuffle" ? Expr::Op::shuffle : Expr::Op::stuffle, at, {e, concat()});
        }
    }

    ExprPtr concat()
    {
        ExprPtr e = postfix();
        while (true) {
            skip();
            if (peek('.') || (peek('*') && operand_at(i_ + 1))) {
                const std::size_t at = i_++;
                e = node(Expr::Op::conc, at, {e, postfix()});
            } else {
                return e;
            }
        }
    }

    ExprPtr postfix()
    {
        ExprPtr e = unary();
        while (peek('*') && !operand_at(i_ + 1)) e = node(Expr::Op::star, i_++, {e});
        return e;
    }

    ExprPtr unary()
    {
        if (peek('-')) {
            const std::size_t at = i_++;
            return node(Expr::Op::neg, at, {unary()});
        }
        return atom();
    }

    ExprPtr atom()
    {
        skip();
        if (i_ >= s_.size()) throw ParseError("expected an operand", i_);
        const std::size_t at = i_;
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            ExprPtr e = sum();
            if (!peek(')')) throw ParseError("expected ')'", i_);
            ++i_;
            return e;
        }
        auto e = std::make_shared<Expr>();
        e->pos = at;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i_;
            while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            if (j + 1 < s_.size() && s_[j] == '/' && std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
                ++j;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
            }
            e->op = Expr::Op::number;
            e->number = coeff_traits<Rational>::parse(s_.substr(i_, j - i_));
            i_ = j;
            return e;
        }
        const std::string w = peek_word();
        if (w == "t" || w == "z") {
            i_ += 1;
            e->op = Expr::Op::var;
            e->symbol = w[0];
            e->index = 1;
            if (peek('^')) {
                ++i_;
                skip();
                std::size_t j = i_;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
                if (j == i_) throw ParseError("expected an exponent", i_);
                e->index = std::stoi(std::string(s_.substr(i_, j - i_)));
                i_ = j;
            }
            return e;
        }
        if (w.size() >= 2 && (w[0] == 'x' || w[0] == 'y')) {
            bool digits = true;
            for (std::size_t k = 1; k < w.size(); ++k) digits = digits && std::isdigit(static_cast<unsigned char>(w[k]));
            if (digits) {
                e->op = Expr::Op::letter;
                e->symbol = w[0];
                e->index = std::stoi(w.substr(1));
                i_ += w.size();
                return e;
            }
        }
        throw ParseError(w.empty() ? "unexpected '" + std::string(1, c) + "'" : "unknown name '" + w + "'", at);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

inline void collect(const Expr& e, std::set<std::pair<char, int>>& letters, std::set<char>& vars)
{
    if (e.op == Expr::Op::letter) letters.insert({e.symbol, e.index});
    if (e.op == Expr::Op::var) vars.insert(e.symbol);
    for (const auto& a : e.args) collect(*a, letters, vars);
}

} // namespace detail

inline ExprPtr parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Letters and coefficient variables used by a set of expressions.
struct ExprSymbols {
    std::set<std::pair<char, int>> letters;
    std::set<char> vars;
};

inline ExprSymbols expression_symbols(const std::vector<ExprPtr>& es)
{
    ExprSymbols s;
    for (const auto& e : es) detail::collect(*e, s.letters, s.vars);
    return s;
}

/// Y when y letters are used, otherwise the finite alphabet of the used x
/// indices together with x0, x1.
inline Alphabet alphabet_for(const ExprSymbols& s)
{
    bool x = false, y = false;
    std::set<int> idx = {0, 1};
    for (const auto& [p, k] : s.letters) {
        (p == 'x' ? x : y) = true;
        idx.insert(k);
    }
    if (x && y) throw std::invalid_argument("expression mixes x and y letters");
    if (y) {
        for (const auto& [p, k] : s.letters)
            if (k < 1) throw std::invalid_argument("y letters start at y1");
        return Alphabet::Y();
    }
    return Alphabet::finite(std::vector<int>(idx.begin(), idx.end()));
}

template <class T>
LinearRep<T> compile_expression(const Expr& e, const Alphabet& A)
{
    using Tr = coeff_traits<T>;
    using O = Expr::Op;
    auto sub = [&](std::size_t i) { return compile_expression<T>(*e.args[i], A); };
    switch (e.op) {
    case O::number: return rep_of_polynomial(Series<T>::constant(A, Tr::from_rational(e.number)));
    case O::var: {
        T v;
        if constexpr (std::is_same_v<T, UPoly>) {
            if (e.symbol != 't') throw ParseError("variable z needs ring Q(z)", e.pos);
            v = UPoly::monomial(1, e.index);
        } else if constexpr (std::is_same_v<T, RatFun>) {
            if (e.symbol != 'z') throw ParseError("variable t needs ring Q[t]", e.pos);
            v = RatFun(UPoly::monomial(1, e.index));
        } else {
            throw ParseError(std::string("variable ") + e.symbol + " needs ring Q[t] or Q(z)", e.pos);
        }
        return rep_of_polynomial(Series<T>::constant(A, v));
    }
    case O::letter:
        if (!A.contains(e.index) || A.prefix() != e.symbol)
            throw ParseError("letter " + std::string(1, e.symbol) + std::to_string(e.index) + " not in alphabet", e.pos);
        return rep_of_polynomial(Series<T>::letter(A, e.index));
    case O::add: return rep_sum(sub(0), sub(1));
    case O::sub: return rep_difference(sub(0), sub(1));
    case O::neg: return rep_scaled(sub(0), Tr::from_rational(-1));
    case O::conc: return rep_conc(sub(0), sub(1));
    case O::shuffle: return rep_shuffle(sub(0), sub(1));
    case O::stuffle:
        if (!A.is_graded()) throw std::invalid_argument("stuffle needs y letters");
        return rep_stuffle(sub(0), sub(1));
    case O::star: {
        const LinearRep<T> r = sub(0);
        if (!Tr::is_zero((r.nu * r.eta)(0, 0)))
            throw DomainError("star of a subexpression with nonzero constant term at position " + std::to_string(e.pos));
        return rep_star(r);
    }
    }
    throw std::logic_error("unhandled expression node");
}

template <class T>
LinearRep<T> compile_expression(std::string_view text)
{
    const ExprPtr e = parse_expression(text);
    return compile_expression<T>(*e, alphabet_for(expression_symbols({e})));
}

} // namespace ncs
