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

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncs/series.hpp"

namespace ncs {

using QPoly = Series<Rational>;

namespace detail {

inline QPoly bracket(const QPoly& a, const QPoly& b) { return conc(a, b) - conc(b, a); }

/// Groups a nonincreasing Lyndon factorization into (l, multiplicity) runs.
inline std::vector<std::pair<Word, int>> runs(const std::vector<Word>& f)
{
    std::vector<std::pair<Word, int>> r;
    for (const Word& l : f) {
        if (!r.empty() && r.back().first == l) ++r.back().second;
        else r.emplace_back(l, 1);
    }
    return r;
}

} // namespace detail

/// PBW basis P_w and its dual S_w for the shuffle (or, with `Product::stuffle`
/// and generators pi_1(y_s), the quasi-shuffle) bialgebra. Results are memoized
/// per instance.
class PbwBases {
public:
    explicit PbwBases(Alphabet A, Product kind = Product::shuffle) : A_(std::move(A)), kind_(kind)
    {
        if (kind_ == Product::conc) throw std::invalid_argument("PBW bases are for shuffle or stuffle");
        if (kind_ == Product::stuffle && !A_.is_graded())
            throw std::invalid_argument("quasi-shuffle bases need the graded alphabet Y");
    }

    const Alphabet& alphabet() const { return A_; }
    Product kind() const { return kind_; }

    /// pi_1(w) = sum_{k>=1} (-1)^{k-1}/k sum <w, u1 ⧣ ... ⧣ uk> u1...uk.
    QPoly pi1(const Word& w)
    {
        check_stuffle("pi1");
        auto it = pi1_.find(w);
        if (it != pi1_.end()) return it->second;
        QPoly r(A_);
        for (int k = 1; k <= A_.grade(w); ++k) // each u_i has weight >= 1
            r += iterated(w, k).scaled(Rational(k % 2 ? 1 : -1, k));
        return pi1_.emplace(w, r).first->second;
    }

    /// Conc-morphism y_k -> pi_1(y_k), extended linearly.
    QPoly phi_pi1(const QPoly& p)
    {
        check_stuffle("phi_pi1");
        QPoly r(A_, p.bound());
        for (const auto& [w, c] : p.terms()) {
            QPoly m = QPoly::constant(A_, 1);
            for (int a : w) m = conc(m, pi1(Word::letter(a)));
            r += m.scaled(c);
        }
        return r;
    }

    /// P_w (shuffle) or Pi_w (stuffle).
    QPoly P(const Word& w)
    {
        auto it = P_.find(w);
        if (it != P_.end()) return it->second;
        QPoly r(A_);
        if (w.empty()) {
            r = QPoly::constant(A_, 1);
        } else if (w.size() == 1) {
            r = kind_ == Product::shuffle ? QPoly::word(A_, w) : pi1(w);
        } else if (is_lyndon(A_, w)) {
            auto [l1, l2] = standard_factorization(A_, w);
            r = detail::bracket(P(l1), P(l2));
        } else {
            r = QPoly::constant(A_, 1);
            for (const Word& l : lyndon_factorization(A_, w)) r = conc(r, P(l));
        }
        return P_.emplace(w, r).first->second;
    }

    /// S_w by the Lyndon recursion (shuffle only): S_{xu} = x S_u for Lyndon xu,
    /// divided shuffle powers over the Lyndon factorization otherwise.
    QPoly S(const Word& w)
    {
        if (kind_ != Product::shuffle) throw std::invalid_argument("S_w recursion is for the shuffle bases");
        auto it = S_.find(w);
        if (it != S_.end()) return it->second;
        QPoly r(A_);
        if (w.empty()) {
            r = QPoly::constant(A_, 1);
        } else if (is_lyndon(A_, w)) {
            r = conc(QPoly::letter(A_, w.front()), S(w.tail()));
        } else {
            r = QPoly::constant(A_, 1);
            Rational denom = 1;
            for (const auto& [l, i] : detail::runs(lyndon_factorization(A_, w))) {
                const QPoly s = S(l);
                for (int k = 0; k < i; ++k) r = shuffle(r, s);
                denom *= factorial(i);
            }
            r = r.scaled(1 / denom);
        }
        return S_.emplace(w, r).first->second;
    }

    /// Dual basis obtained by inverting <dual_u, P_v> = delta on the homogeneous
    /// component of w. For the stuffle kind this is Sigma_w.
    QPoly dual(const Word& w)
    {
        auto it = D_.find(w);
        if (it != D_.end()) return it->second;
        solve_component(A_.grade(w));
        return D_.at(w);
    }

    /// Sigma_w (stuffle) or S_w (shuffle) through duality.
    QPoly Sigma(const Word& w)
    {
        check_stuffle("Sigma");
        return dual(w);
    }
    QPoly Pi(const Word& w)
    {
        check_stuffle("Pi");
        return P(w);
    }

private:
    void check_stuffle(const char* what) const
    {
        if (kind_ != Product::stuffle) throw std::invalid_argument(std::string(what) + " needs the quasi-shuffle bases over Y");
    }

    // F_k(w) = sum <w, u1 ⧣ ... ⧣ uk> u1...uk over nonempty u_i, computed from
    // the reduced coproduct: F_k(w) = sum_{Δ(w) ∋ a⊗b, a,b ≠ 1} c a F_{k-1}(b).
    QPoly iterated(const Word& w, int k)
    {
        if (k == 1) return w.empty() ? QPoly(A_) : QPoly::word(A_, w);
        auto key = std::make_pair(w, k);
        auto it = F_.find(key);
        if (it != F_.end()) return it->second;
        QPoly r(A_);
        for (const auto& [ab, c] : coproduct_word(Product::stuffle, w)) {
            if (ab.first.empty() || ab.second.empty()) continue;
            const QPoly tail = iterated(ab.second, k - 1);
            if (tail.is_zero()) continue;
            r += conc(QPoly::word(A_, ab.first), tail).scaled(Rational(c));
        }
        return F_.emplace(key, r).first->second;
    }

    void solve_component(int g)
    {
        const std::vector<Word> ws = A_.words_of_grade(g);
        const std::size_t n = ws.size();
        std::map<Word, std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) idx[ws[i]] = i;
        // M[i][j] = <P_{ws[j]}, ws[i]>; the dual coefficients form M^{-1}.
        std::vector<std::vector<Rational>> M(n, std::vector<Rational>(2 * n, Rational(0)));
        for (std::size_t j = 0; j < n; ++j) {
            const QPoly pj = P(ws[j]);
            for (const auto& [w, c] : pj.terms()) M[idx.at(w)][j] = c;
        }
        for (std::size_t i = 0; i < n; ++i) M[i][n + i] = 1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && M[piv][col] == 0) ++piv;
            if (piv == n) throw std::logic_error("PBW basis is not a basis in grade " + std::to_string(g));
            std::swap(M[piv], M[col]);
            const Rational inv = 1 / M[col][col];
            for (auto& x : M[col]) x *= inv;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col || M[r][col] == 0) continue;
                const Rational f = M[r][col];
                for (std::size_t c = 0; c < 2 * n; ++c) M[r][c] -= f * M[col][c];
            }
        }
        // Inverse B = M^{-1}: sum_i B[u][i] M[i][v] = delta, so dual_u = sum_i B[u][i] ws[i].
        for (std::size_t u = 0; u < n; ++u) {
            QPoly d(A_);
            for (std::size_t i = 0; i < n; ++i) d.add(ws[i], M[u][n + i]);
            D_.insert_or_assign(ws[u], d);
        }
    }

    Alphabet A_;
    Product kind_;
    std::map<Word, QPoly> P_, S_, D_, pi1_;
    std::map<std::pair<Word, int>, QPoly> F_;
};

inline QPoly basis_P(const Alphabet& A, const Word& w) { return PbwBases(A).P(w); }
inline QPoly basis_S(const Alphabet& A, const Word& w) { return PbwBases(A).S(w); }
inline QPoly eulerian_pi1(const Word& w) { return PbwBases(Alphabet::Y(), Product::stuffle).pi1(w); }
inline QPoly phi_pi1(const QPoly& p) { return PbwBases(p.alphabet(), Product::stuffle).phi_pi1(p); }
inline QPoly basis_Pi(const Word& w) { return PbwBases(Alphabet::Y(), Product::stuffle).P(w); }
inline QPoly basis_Sigma(const Word& w) { return PbwBases(Alphabet::Y(), Product::stuffle).dual(w); }

/// Tables of (primal, dual) basis pairs for all words of grade <= bound.
struct BasisTable {
    Alphabet alphabet;
    int bound = 0;
    Product kind = Product::shuffle; // left product in the diagonal factorization
    std::vector<Word> words;
    std::map<Word, QPoly> primal; // P_w or Pi_w
    std::map<Word, QPoly> dual;   // S_w or Sigma_w
};

/// P_w with S_w from the Lyndon recursion.
inline BasisTable shuffle_table(const Alphabet& A, int bound)
{
    PbwBases b(A, Product::shuffle);
    BasisTable t{A, bound, Product::shuffle, A.words_up_to(bound), {}, {}};
    for (const Word& w : t.words) {
        t.primal.emplace(w, b.P(w));
        t.dual.emplace(w, b.S(w));
    }
    return t;
}

/// Pi_w with Sigma_w from the duality solve.
inline BasisTable stuffle_table(const Alphabet& Y, int bound)
{
    PbwBases b(Y, Product::stuffle);
    BasisTable t{Y, bound, Product::stuffle, Y.words_up_to(bound), {}, {}};
    for (const Word& w : t.words) {
        t.primal.emplace(w, b.P(w));
        t.dual.emplace(w, b.dual(w));
    }
    return t;
}

struct MsrReport {
    bool ok = true;
    Rational max_discrepancy = 0;
    std::string location; // first offending term, empty when ok
};

namespace detail {

inline void compare_tensors(const Tensor<Rational>& got, const Tensor<Rational>& want, const std::string& what,
                            MsrReport& rep)
{
    const Tensor<Rational> diff = got - want;
    for (const auto& [k, c] : diff.terms()) {
        const Rational a = abs(c);
        if (a > rep.max_discrepancy) rep.max_discrepancy = a;
        if (rep.ok) {
            rep.location = what + " at " + got.alphabet().word_text(k.first) + "|" + got.alphabet().word_text(k.second);
            rep.ok = false;
        }
    }
}

} // namespace detail

/// Checks sum_w dual_w ⊗ primal_w = sum_w w ⊗ w, and that the product over
/// decreasing Lyndon l of exp(dual_l ⊗ primal_l) (left factors multiplied by
/// the table's product, right ones by concatenation) gives the same diagonal,
/// all truncated at the table bound.
inline MsrReport msr_check(const BasisTable& t)
{
    using QT = Tensor<Rational>;
    const Alphabet& A = t.alphabet;
    const int B = t.bound;
    MsrReport rep;

    QT diag(A);
    for (const Word& w : t.words) diag.add(w, w, 1);

    QT lhs(A);
    for (const Word& w : t.words) lhs = lhs + QT::outer(t.dual.at(w), t.primal.at(w));
    detail::compare_tensors(lhs, diag, "sum of dual ⊗ primal", rep);

    std::vector<Word> lyn = lyndon_words(A, B);
    QT prod(A);
    prod.add(Word{}, Word{}, 1);
    for (auto it = lyn.rbegin(); it != lyn.rend(); ++it) {
        const QT gen = QT::outer(t.dual.at(*it), t.primal.at(*it));
        QT e(A), term(A);
        e.add(Word{}, Word{}, 1);
        term.add(Word{}, Word{}, 1);
        for (int n = 1; n * A.grade(*it) <= B; ++n) {
            term = QT::multiply(term, gen, t.kind, Product::conc, B, B);
            QT scaled(A);
            for (const auto& [k, c] : term.terms()) scaled.add(k.first, k.second, c / n);
            term = scaled;
            e = e + term;
        }
        prod = QT::multiply(prod, e, t.kind, Product::conc, B, B);
    }
    detail::compare_tensors(prod, diag, "ordered exponential product", rep);
    return rep;
}

/// Tab-separated table: word, P_w, S_w (and for Y the same columns hold
/// Pi_w, Sigma_w next to P_w, S_w computed by duality).
inline std::string bases_tsv(const Alphabet& A, int bound)
{
    std::ostringstream os;
    if (A.is_graded()) {
        PbwBases sh(A, Product::shuffle), st(A, Product::stuffle);
        os << "word\tP\tS\tPi\tSigma\n";
        for (const Word& w : A.words_up_to(bound)) {
            os << A.word_text(w) << '\t' << sh.P(w).to_string() << '\t' << sh.S(w).to_string() << '\t'
               << st.P(w).to_string() << '\t' << st.dual(w).to_string() << '\n';
        }
    } else {
        PbwBases sh(A, Product::shuffle);
        os << "word\tP\tS\n";
        for (const Word& w : A.words_up_to(bound))
            os << A.word_text(w) << '\t' << sh.P(w).to_string() << '\t' << sh.S(w).to_string() << '\n';
    }
    return os.str();
}

} // namespace ncs
