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

// JSON interchange for linear representations:
//   {"alphabet": ["x0","x1"], "ring": "Q", "dim": 2,
//    "nu": ["1","0"], "mu": {"x0": [["0","1"],["0","0"]], ...}, "eta": ["1","0"]}
// Letters y<k> select the graded alphabet Y with the listed letters active.

#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "ncs/automata.hpp"

namespace ncs {

using AnyRep = std::variant<LinearRep<Rational>, LinearRep<UPoly>, LinearRep<RatFun>>;

namespace detail {

inline std::pair<Alphabet, std::vector<int>> alphabet_from_letters(const std::vector<std::string>& names)
{
    if (names.empty()) throw std::invalid_argument("alphabet must list at least one letter");
    const char p = names.front().empty() ? '?' : names.front()[0];
    if (p != 'x' && p != 'y') throw std::invalid_argument("letters must be x<k> or y<k>");
    std::vector<int> idx;
    for (const auto& s : names) {
        if (s.size() < 2 || s[0] != p) throw std::invalid_argument("bad letter name: " + s);
        std::size_t used = 0;
        const int k = std::stoi(s.substr(1), &used);
        if (used != s.size() - 1 || k < 0) throw std::invalid_argument("bad letter name: " + s);
        idx.push_back(k);
    }
    if (p == 'y') {
        for (int k : idx)
            if (k < 1) throw std::invalid_argument("y letters start at y1");
        return {Alphabet::Y(), idx};
    }
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    return {Alphabet::finite(sorted), idx};
}

template <class T>
T coeff_from_json(const nlohmann::json& j)
{
    if (j.is_string()) return coeff_traits<T>::parse(j.get<std::string>());
    if (j.is_number_integer()) return coeff_traits<T>::from_rational(Rational(j.get<long>()));
    throw std::invalid_argument("coefficients must be strings or integers");
}

template <class T>
LinearRep<T> rep_from_json(const nlohmann::json& j, const Alphabet& A, const std::vector<int>& letters)
{
    const std::size_t n = j.at("dim").get<std::size_t>();
    LinearRep<T> r(A, n);
    const auto& nu = j.at("nu");
    const auto& eta = j.at("eta");
    if (nu.size() != n || eta.size() != n) throw std::invalid_argument("nu and eta must have dim entries");
    for (std::size_t i = 0; i < n; ++i) {
        r.nu(0, i) = coeff_from_json<T>(nu[i]);
        r.eta(i, 0) = coeff_from_json<T>(eta[i]);
    }
    const auto& mu = j.contains("mu") ? j.at("mu") : nlohmann::json::object();
    for (const auto& [name, rows] : mu.items()) {
        const auto [A1, l1] = alphabet_from_letters({name});
        const int a = l1.front();
        if (std::find(letters.begin(), letters.end(), a) == letters.end())
            throw std::invalid_argument("mu letter " + name + " not listed in alphabet");
        if (rows.size() != n) throw std::invalid_argument("mu(" + name + ") must have dim rows");
        Matrix<T> m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw std::invalid_argument("mu(" + name + ") must be square");
            for (std::size_t k = 0; k < n; ++k) m(i, k) = coeff_from_json<T>(rows[i][k]);
        }
        r.mu.emplace(a, std::move(m));
    }
    // Listed letters without a matrix act as zero but stay active.
    for (int a : letters)
        if (!r.mu.count(a)) r.mu.emplace(a, Matrix<T>(n, n));
    r.validate();
    return r;
}

} // namespace detail

inline AnyRep rep_from_json(const nlohmann::json& j)
{
    const auto names = j.at("alphabet").get<std::vector<std::string>>();
    const auto [A, letters] = detail::alphabet_from_letters(names);
    const std::string ring = j.value("ring", "Q");
    if (ring == "Q") return detail::rep_from_json<Rational>(j, A, letters);
    if (ring == "Q[t]") return detail::rep_from_json<UPoly>(j, A, letters);
    if (ring == "Q(z)") return detail::rep_from_json<RatFun>(j, A, letters);
    throw std::invalid_argument("unknown ring: " + ring);
}

inline AnyRep read_rep_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return rep_from_json(nlohmann::json::parse(in));
}

template <class T>
nlohmann::json rep_to_json(const LinearRep<T>& r)
{
    using Tr = coeff_traits<T>;
    nlohmann::json j;
    std::vector<std::string> names;
    for (const auto& [a, m] : r.mu) names.push_back(r.alphabet.letter_text(a));
    if (names.empty()) {
        if (r.alphabet.is_finite())
            for (int a : r.alphabet.letters()) names.push_back(r.alphabet.letter_text(a));
        else names.push_back("y1");
    }
    j["alphabet"] = names;
    j["ring"] = Tr::name;
    j["dim"] = r.dim;
    auto vec = [&](auto get) {
        nlohmann::json v = nlohmann::json::array();
        for (std::size_t i = 0; i < r.dim; ++i) v.push_back(Tr::to_string(get(i)));
        return v;
    };
    j["nu"] = vec([&](std::size_t i) { return r.nu(0, i); });
    j["eta"] = vec([&](std::size_t i) { return r.eta(i, 0); });
    nlohmann::json mu = nlohmann::json::object();
    for (const auto& [a, m] : r.mu) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < r.dim; ++i) rows.push_back(vec([&](std::size_t k) { return m(i, k); }));
        mu[r.alphabet.letter_text(a)] = rows;
    }
    j["mu"] = mu;
    return j;
}

} // namespace ncs
