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

// Command-line driver. run() is the whole program minus main(), so tests can
// call it with string streams. Exit codes: 0 success or identity holds,
// 1 identity fails, 2 usage or input error.

#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncs/automata_io.hpp"
#include "ncs/chen.hpp"
#include "ncs/expression.hpp"
#include "ncs/hopf.hpp"

namespace ncs {

namespace detail {

struct CliOptions {
    std::string ring;
    int max_length = 6;
    double tol = 1e-10;
    double z0 = 0, z = 0;
    std::string inputs;
    std::optional<unsigned> seed;
    std::string rep_file;
    std::string alphabet = "X";
    std::string product;
    std::vector<std::string> operands;
};

inline std::string num_text(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

/// Alphabet of the x<k>/y<k> names appearing in plain series text.
inline Alphabet alphabet_of_text(const std::vector<std::string>& texts)
{
    ExprSymbols s;
    static const std::regex letter(R"(([xy])(\d+))");
    for (const auto& t : texts)
        for (std::sregex_iterator it(t.begin(), t.end(), letter), end; it != end; ++it)
            s.letters.insert({(*it)[1].str()[0], std::stoi((*it)[2].str())});
    return alphabet_for(s);
}

/// Ring named by --ring, else guessed from the variable used (t or z).
inline std::string ring_for(const std::string& flag, const std::set<char>& vars)
{
    if (!flag.empty()) {
        if (flag != "Q" && flag != "Q[t]" && flag != "Q(z)") throw std::invalid_argument("unknown ring: " + flag);
        return flag;
    }
    if (vars.count('t') && vars.count('z')) throw std::invalid_argument("both t and z used; pass --ring");
    if (vars.count('t')) return "Q[t]";
    if (vars.count('z')) return "Q(z)";
    return "Q";
}

inline std::vector<AnyRep> compile_all(const std::vector<std::string>& texts, const std::string& ring_flag)
{
    std::vector<ExprPtr> es;
    for (const auto& t : texts) es.push_back(parse_expression(t));
    const ExprSymbols sym = expression_symbols(es);
    const Alphabet A = alphabet_for(sym);
    const std::string ring = ring_for(ring_flag, sym.vars);
    std::vector<AnyRep> out;
    for (const auto& e : es) {
        if (ring == "Q") out.emplace_back(compile_expression<Rational>(*e, A));
        else if (ring == "Q[t]") out.emplace_back(compile_expression<UPoly>(*e, A));
        else out.emplace_back(compile_expression<RatFun>(*e, A));
    }
    return out;
}

inline AnyRep load_rep(const CliOptions& o)
{
    if (!o.rep_file.empty()) {
        if (!o.operands.empty()) throw std::invalid_argument("give either an expression or --rep, not both");
        return read_rep_file(o.rep_file);
    }
    if (o.operands.size() != 1) throw std::invalid_argument("expected one expression or --rep FILE");
    return compile_all(o.operands, o.ring).front();
}

inline LinearRep<Rational> rational_rep(const AnyRep& r)
{
    if (const auto* q = std::get_if<LinearRep<Rational>>(&r)) return *q;
    throw std::invalid_argument("this command needs a representation over Q");
}

template <class T>
auto minimal_form(const LinearRep<T>& r)
{
    if constexpr (std::is_same_v<T, UPoly>) return minimize(to_field(r));
    else return minimize(r);
}

template <class T>
int expand_series(const Series<T>& s, std::ostream& out)
{
    out << s.to_string() << '\n';
    return 0;
}

inline int cmd_expand(const CliOptions& o, std::ostream& out)
{
    const AnyRep r = load_rep(o);
    return std::visit([&](const auto& rep) { return expand_series(rep.expand(o.max_length), out); }, r);
}

template <class T>
int series_op(const CliOptions& o, const Alphabet& A, std::ostream& out)
{
    const Bound b = o.max_length;
    std::vector<Series<T>> s;
    for (const auto& t : o.operands) s.push_back(Series<T>::parse(A, t));
    if (o.product == "star") return expand_series(star(s.at(0), b), out);
    if (o.product == "exp") return expand_series(t_exp(s.at(0), b), out);
    if (o.product == "log") return expand_series(t_log(s.at(0), b), out);
    if (s.size() != 2) throw std::invalid_argument(o.product + " needs two operands");
    if (o.product == "pair") {
        out << coeff_traits<T>::to_string(pair(s[0], s[1])) << '\n';
        return 0;
    }
    Product p;
    if (o.product == "conc") p = Product::conc;
    else if (o.product == "shuffle") p = Product::shuffle;
    else if (o.product == "stuffle") p = Product::stuffle;
    else throw std::invalid_argument("unknown operation: " + o.product);
    return expand_series(multiply(p, s[0], s[1]).truncated(o.max_length), out);
}

inline int cmd_series(const CliOptions& o, std::ostream& out)
{
    const Alphabet A = alphabet_of_text(o.operands);
    std::set<char> vars;
    for (const auto& t : o.operands) {
        if (t.find('t') != std::string::npos) vars.insert('t');
        if (t.find('z') != std::string::npos) vars.insert('z');
    }
    const std::string ring = ring_for(o.ring, vars);
    if (ring == "Q") return series_op<Rational>(o, A, out);
    if (ring == "Q[t]") return series_op<UPoly>(o, A, out);
    return series_op<RatFun>(o, A, out);
}

inline int cmd_bases(const CliOptions& o, std::ostream& out)
{
    if (o.alphabet != "X" && o.alphabet != "Y") throw std::invalid_argument("--alphabet must be X or Y");
    out << bases_tsv(o.alphabet == "X" ? Alphabet::X() : Alphabet::Y(), o.max_length);
    return 0;
}

inline int cmd_minimize(const CliOptions& o, std::ostream& out)
{
    const AnyRep r = load_rep(o);
    std::visit([&](const auto& rep) { out << rep_to_json(minimal_form(rep)).dump(2) << '\n'; }, r);
    return 0;
}

inline int cmd_classify(const CliOptions& o, std::ostream& out)
{
    const AnyRep r = load_rep(o);
    std::visit([&](const auto& rep) { out << lie_class_name(classify(minimal_form(rep))) << '\n'; }, r);
    return 0;
}

template <class T>
int identity(const LinearRep<T>& a, const LinearRep<T>& b, const CliOptions& o, std::ostream& out)
{
    if (equal(a, b)) {
        out << "holds (exact representation equality, dimensions " << a.dim << " and " << b.dim << ")\n";
        if (o.seed) {
            // Extra spot checks on random words; equality above is already exact.
            std::mt19937 g(*o.seed);
            const std::vector<Word> words = a.alphabet.words_up_to(o.max_length);
            std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
            for (int k = 0; k < 20; ++k) {
                const Word& w = words[pick(g)];
                if (!(a.coeff(w) == b.coeff(w))) throw std::logic_error("spot check disagrees with exact equality");
            }
            out << "spot-checked 20 random words of grade <= " << o.max_length << " (seed " << *o.seed << ")\n";
        }
        return 0;
    }
    const int bound = static_cast<int>(a.dim + b.dim);
    const Series<T> d = rep_difference(a, b).expand(bound);
    const auto terms = d.sorted_terms();
    using Tr = coeff_traits<T>;
    out << "fails";
    if (!terms.empty()) {
        const Word& w = terms.front().first;
        out << " at " << a.alphabet.word_text(w) << ": lhs " << Tr::to_string(a.coeff(w)) << ", rhs "
            << Tr::to_string(b.coeff(w));
    }
    out << '\n';
    return 1;
}

inline int cmd_check_identity(const CliOptions& o, std::ostream& out)
{
    if (o.operands.size() != 2) throw std::invalid_argument("check-identity needs two expressions");
    const std::vector<AnyRep> r = compile_all(o.operands, o.ring);
    return std::visit(
        [&](const auto& a) -> int {
            using R = std::decay_t<decltype(a)>;
            return identity(a, std::get<R>(r[1]), o, out);
        },
        r[0]);
}

/// Alphabet from the letter names in an inputs string (`x0=..., x1=...`).
inline Alphabet alphabet_of_inputs(const std::string& text)
{
    static const std::regex name(R"((?:^|,)\s*x(\d+)\s*=)");
    std::set<int> idx;
    for (std::sregex_iterator it(text.begin(), text.end(), name), end; it != end; ++it)
        idx.insert(std::stoi((*it)[1].str()));
    if (idx.empty()) throw std::invalid_argument("--inputs must assign at least one letter x<k>");
    return Alphabet::finite(std::vector<int>(idx.begin(), idx.end()));
}

inline int cmd_chen(const CliOptions& o, std::ostream& out)
{
    const Alphabet A = alphabet_of_inputs(o.inputs);
    const Inputs in = parse_inputs(A, o.inputs);
    const ChenEvaluation ev = chen_series(A, in, o.z0, o.z, o.max_length, o.tol);
    out << "word\tvalue\terror\n";
    for (const Word& w : A.words_up_to(o.max_length)) {
        out << A.word_text(w) << '\t';
        if (ev.divergent.count(w)) out << "diverges\t-\n";
        else out << num_text(ev.values.at(w).value) << '\t' << num_text(ev.values.at(w).error) << '\n';
    }
    if (!ev.converged) out << "warning: refinement limit reached before tolerance\n";
    return 0;
}

inline int cmd_pair(const CliOptions& o, std::ostream& out)
{
    const LinearRep<Rational> r = rational_rep(load_rep(o));
    const Inputs in = parse_inputs(r.alphabet, o.inputs);
    try {
        const PairSeriesResult s = pair_series(r, in, o.z0, o.z, o.tol, o.max_length);
        out << "series\t" << num_text(s.value) << "\ttail\t" << num_text(s.tail) << "\tlength\t" << s.length
            << "\tcertified\t" << (s.certified ? "yes" : "no") << '\n';
    } catch (const DomainError& e) {
        out << "series\tunavailable: " << e.what() << '\n';
    }
    try {
        out << "ode\t" << num_text(pair_ode(r, in, o.z0, o.z, o.tol)) << '\n';
    } catch (const DomainError& e) {
        out << "ode\tunavailable: " << e.what() << '\n';
    }
    return 0;
}

inline int cmd_derive_ode(const CliOptions& o, std::ostream& out)
{
    const LinearRep<Rational> r = rational_rep(load_rep(o));
    const Assignment a = parse_assignment(r.alphabet, o.inputs);
    out << derive_scalar_ode(r, a).to_string() << '\n';
    return 0;
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Noncommutative series, automata and Chen series", "ncseries"};
    app.require_subcommand(1);
    detail::CliOptions o;

    auto ring = [&](CLI::App* c) { c->add_option("--ring", o.ring, "Coefficient ring: Q, Q[t] or Q(z)"); };
    auto length = [&](CLI::App* c, const char* what) {
        c->add_option("--max-length", o.max_length, what)->check(CLI::NonNegativeNumber);
    };
    auto rep_source = [&](CLI::App* c) {
        c->add_option("expression", o.operands, "Rational expression");
        c->add_option("--rep", o.rep_file, "Representation file (JSON)");
        ring(c);
    };
    auto path = [&](CLI::App* c) {
        c->add_option("--inputs", o.inputs, "Inputs, e.g. \"x0=1/z, x1=1/(1-z)\"")->required();
        c->add_option("--z0", o.z0, "Path start");
        c->add_option("--z", o.z, "Path end")->required();
        c->add_option("--tol", o.tol, "Absolute tolerance")->check(CLI::PositiveNumber);
    };

    auto* expand = app.add_subcommand("expand", "Expand a rational expression");
    rep_source(expand);
    length(expand, "Expansion bound (length or weight)");

    auto* op = app.add_subcommand("op", "Operate on series text: conc, shuffle, stuffle, pair, star, exp, log");
    op->add_option("operation", o.product)->required();
    op->add_option("operands", o.operands)->required();
    ring(op);
    length(op, "Truncation bound");

    auto* star = app.add_subcommand("star", "Kleene star of series text");
    star->add_option("series", o.operands)->required()->expected(1);
    ring(star);
    length(star, "Truncation bound");

    auto* bases = app.add_subcommand("bases", "Tables of the dual bases");
    bases->add_option("--alphabet", o.alphabet, "X or Y");
    length(bases, "Largest length or weight");

    auto* minimize_cmd = app.add_subcommand("minimize", "Minimal representation as JSON");
    rep_source(minimize_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Class of the Lie algebra of a representation");
    rep_source(classify_cmd);

    auto* check = app.add_subcommand("check-identity", "Decide equality of two rational expressions");
    check->add_option("sides", o.operands)->required()->expected(2);
    ring(check);
    length(check, "Grade of the random spot checks");
    check->add_option("--seed", o.seed, "Also spot-check random words");

    auto* chen = app.add_subcommand("chen", "Chen series coefficients along a segment");
    path(chen);
    length(chen, "Longest word");

    auto* pair_cmd = app.add_subcommand("pair", "Evaluate <C, R> by series and by ODE");
    rep_source(pair_cmd);
    path(pair_cmd);
    pair_cmd->add_option("--max-length", o.max_length, "Longest word summed")->check(CLI::NonNegativeNumber);

    auto* ode = app.add_subcommand("derive-ode", "Scalar differential equation for <C, R>");
    rep_source(ode);
    ode->add_option("--inputs", o.inputs, "Rational inputs, e.g. \"x1=1/(1-z)\"")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*expand) return detail::cmd_expand(o, out);
        if (*op) return detail::cmd_series(o, out);
        if (*star) {
            o.product = "star";
            return detail::cmd_series(o, out);
        }
        if (*bases) {
            if (bases->count("--max-length") == 0) o.max_length = 4;
            return detail::cmd_bases(o, out);
        }
        if (*minimize_cmd) return detail::cmd_minimize(o, out);
        if (*classify_cmd) return detail::cmd_classify(o, out);
        if (*check) return detail::cmd_check_identity(o, out);
        if (*chen) {
            if (chen->count("--max-length") == 0) o.max_length = 3;
            return detail::cmd_chen(o, out);
        }
        if (*pair_cmd) {
            if (pair_cmd->count("--max-length") == 0) o.max_length = 40;
            return detail::cmd_pair(o, out);
        }
        if (*ode) return detail::cmd_derive_ode(o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace ncs
