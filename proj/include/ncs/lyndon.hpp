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

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncs/alphabet.hpp"

namespace ncs {

/// Nonempty and strictly smaller than each of its proper suffixes.
inline bool is_lyndon(const Alphabet& A, const Word& w)
{
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!A.lex_less(w, w.sub(i))) return false;
    return true;
}

/// Lyndon words of grade <= max_grade in increasing lexicographic order.
///
/// Words are produced by the successor rule (repeat the current word up to
/// the length bound, drop trailing maximal letters, bump the last letter).
/// Over Y the length bound is max_grade and words heavier than the bound are
/// skipped.
inline std::vector<Word> lyndon_words(const Alphabet& A, int max_grade)
{
    std::vector<Word> out;
    if (max_grade < 1) return out;
    const std::vector<int> ls = A.letters_up_to(max_grade);
    const int k = static_cast<int>(ls.size());
    const int n = max_grade;
    std::vector<int> r{0}; // ranks into ls
    auto weight = [&](const std::vector<int>& v) {
        int g = 0;
        for (int i : v) g += A.grade(ls[static_cast<std::size_t>(i)]);
        return g;
    };
    while (!r.empty()) {
        if (weight(r) <= max_grade) {
            std::vector<int> w;
            for (int i : r) w.push_back(ls[static_cast<std::size_t>(i)]);
            out.emplace_back(std::move(w));
        }
        const std::size_t m = r.size();
        while (static_cast<int>(r.size()) < n) r.push_back(r[r.size() - m]);
        while (!r.empty() && r.back() == k - 1) r.pop_back();
        if (!r.empty()) ++r.back();
        // Over Y, prune: a prefix already heavier than the bound only grows.
        if (A.is_graded()) {
            while (!r.empty() && weight(r) > max_grade) {
                // Every extension of r is too heavy; skip straight past them.
                while (!r.empty() && r.back() == k - 1) r.pop_back();
                if (!r.empty()) ++r.back();
            }
        }
    }
    return out;
}

/// (l1, l2) with w = l1 l2 and l2 the longest proper Lyndon suffix.
inline std::pair<Word, Word> standard_factorization(const Alphabet& A, const Word& w)
{
    if (w.size() < 2) throw std::invalid_argument("standard factorization needs a word of length >= 2");
    if (!is_lyndon(A, w)) throw std::invalid_argument("standard factorization of a non-Lyndon word");
    for (std::size_t i = 1; i < w.size(); ++i) {
        Word s = w.sub(i);
        if (is_lyndon(A, s)) return {w.sub(0, i), s};
    }
    throw std::logic_error("unreachable: last letter is always Lyndon");
}

/// Nonincreasing Lyndon factorization (Duval).
inline std::vector<Word> lyndon_factorization(const Alphabet& A, const Word& w)
{
    std::vector<Word> out;
    const std::size_t n = w.size();
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1, k = i;
        while (j < n && (w[k] == w[j] || A.less(w[k], w[j]))) {
            if (A.less(w[k], w[j])) k = i;
            else ++k;
            ++j;
        }
        while (i <= k) {
            out.push_back(w.sub(i, j - k));
            i += j - k;
        }
    }
    return out;
}

/// Y-word y_{s1}...y_{sr} to x0^{s1-1} x1 ... x0^{sr-1} x1.
inline Word pi_X_word(const Word& w)
{
    std::vector<int> r;
    for (int s : w) {
        for (int i = 1; i < s; ++i) r.push_back(0);
        r.push_back(1);
    }
    return Word(std::move(r));
}

/// Inverse of pi_X_word on words in {x0,x1}* x1 and on 1; nullopt on words
/// ending in x0.
inline std::optional<Word> pi_Y_word(const Word& w)
{
    std::vector<int> r;
    int run = 0;
    for (int a : w) {
        if (a == 0) ++run;
        else if (a == 1) {
            r.push_back(run + 1);
            run = 0;
        } else {
            throw std::invalid_argument("pi_Y expects words over {x0, x1}");
        }
    }
    if (run > 0) return std::nullopt;
    return Word(std::move(r));
}

} // namespace ncs
