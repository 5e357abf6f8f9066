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
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncs/coeff.hpp"

namespace ncs {

/// Dense row-major matrix over a coefficient ring.
template <class T>
class Matrix {
public:
    using Traits = coeff_traits<T>;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, Traits::zero()) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Traits::one();
        return m;
    }
    static Matrix row(const std::vector<T>& v)
    {
        Matrix m(1, v.size());
        for (std::size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
        return m;
    }
    static Matrix column(const std::vector<T>& v)
    {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const
    {
        for (const T& x : a_)
            if (!Traits::is_zero(x)) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        check_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = r.a_[k] + b.a_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        check_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] = r.a_[k] - b.a_[k];
        return r;
    }
    Matrix operator-() const
    {
        Matrix r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (Traits::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) r(i, j) = r(i, j) + x * b(k, j);
            }
        return r;
    }
    Matrix scaled(const T& k) const
    {
        Matrix r = *this;
        for (auto& x : r.a_) x = k * x;
        return r;
    }
    Matrix transpose() const
    {
        Matrix r(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    /// Kronecker product a ⊗ b.
    friend Matrix kron(const Matrix& a, const Matrix& b)
    {
        Matrix r(a.r_ * b.r_, a.c_ * b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t j = 0; j < a.c_; ++j) {
                const T& x = a(i, j);
                if (Traits::is_zero(x)) continue;
                for (std::size_t k = 0; k < b.r_; ++k)
                    for (std::size_t l = 0; l < b.c_; ++l) r(i * b.r_ + k, j * b.c_ + l) = x * b(k, l);
            }
        return r;
    }

    /// Copy `b` into this matrix with its top-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const Matrix& b)
    {
        if (i0 + b.r_ > r_ || j0 + b.c_ > c_) throw std::invalid_argument("block out of range");
        for (std::size_t i = 0; i < b.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    std::vector<T> row_vector(std::size_t i) const
    {
        return std::vector<T>(a_.begin() + static_cast<long>(i * c_), a_.begin() + static_cast<long>((i + 1) * c_));
    }

    template <class F>
    auto map(F&& f) const
    {
        using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
        Matrix<U> r(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

private:
    static void check_shape(const Matrix& a, const Matrix& b)
    {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b)
{
    T r = coeff_traits<T>::zero();
    for (std::size_t i = 0; i < a.size(); ++i) r = r + a[i] * b[i];
    return r;
}

/// Incrementally built row space over a field, kept in reduced echelon form
/// with the coordinates of each stored row in terms of the inserted vectors.
/// Pivots are chosen by least `pivot_cost` (degree over Q(z), bit size over Q).
template <class T>
class SpanBasis {
public:
    using Traits = coeff_traits<T>;
    static_assert(Traits::is_field, "SpanBasis needs a field");

    explicit SpanBasis(std::size_t dim) : n_(dim) {}

    std::size_t dim() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t inserted() const { return inserted_; }

    /// Reduce v against the basis; returns the remainder and fills `coords`
    /// (length = number of inserted vectors) with v - remainder expressed in
    /// the inserted vectors.
    std::vector<T> reduce(std::vector<T> v, std::vector<T>* coords = nullptr) const
    {
        if (coords) coords->assign(inserted_, Traits::zero());
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const std::size_t p = pivots_[k];
            if (is_small(v[p], k)) continue;
            const T f = v[p]; // rows are normalized: rows_[k][p] == 1
            for (std::size_t j = 0; j < n_; ++j) v[j] = v[j] - f * rows_[k][j];
            if (coords)
                for (std::size_t j = 0; j < combo_[k].size(); ++j) (*coords)[j] = (*coords)[j] + f * combo_[k][j];
            v[p] = Traits::zero();
        }
        return v;
    }

    bool in_span(const std::vector<T>& v) const { return is_null(reduce(v)); }

    /// Insert v; returns true if it enlarged the span. Every call counts as an
    /// inserted vector for coordinate bookkeeping.
    bool insert(const std::vector<T>& v)
    {
        std::vector<T> coords;
        std::vector<T> r = reduce(v, &coords);
        const std::size_t id = inserted_++;
        for (auto& c : combo_) c.resize(inserted_, Traits::zero());
        if (is_null(r)) return false;
        // r = v - sum coords_j v_j, so r as a combination is e_id - coords.
        std::vector<T> combo(inserted_, Traits::zero());
        for (std::size_t j = 0; j < coords.size(); ++j) combo[j] = -coords[j];
        combo[id] = Traits::one();
        std::size_t p = n_;
        std::size_t best = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            if (Traits::is_zero(r[j])) continue;
            const std::size_t c = Traits::pivot_cost(r[j]);
            if (p == n_ || c < best) {
                p = j;
                best = c;
            }
        }
        const T inv = Traits::one() / r[p];
        for (auto& x : r) x = x * inv;
        for (auto& x : combo) x = x * inv;
        r[p] = Traits::one();
        // Keep the echelon form reduced: clear column p in earlier rows.
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            const T f = rows_[k][p];
            if (Traits::is_zero(f)) continue;
            for (std::size_t j = 0; j < n_; ++j) rows_[k][j] = rows_[k][j] - f * r[j];
            for (std::size_t j = 0; j < inserted_; ++j) combo_[k][j] = combo_[k][j] - f * combo[j];
            rows_[k][p] = Traits::zero();
        }
        rows_.push_back(std::move(r));
        pivots_.push_back(p);
        combo_.push_back(std::move(combo));
        return true;
    }

    const std::vector<std::vector<T>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Numeric tolerance for T = double (relative to the vector scale).
    void set_tolerance(double t) { tol_ = t; }

private:
    bool is_small(const T& x, std::size_t) const
    {
        if constexpr (Traits::is_exact) return Traits::is_zero(x);
        else return std::abs(x) <= tol_;
    }
    bool is_null(const std::vector<T>& v) const
    {
        for (const T& x : v)
            if (!is_small(x, 0)) return false;
        return true;
    }

    std::size_t n_;
    std::size_t inserted_ = 0;
    std::vector<std::vector<T>> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::vector<T>> combo_;
    double tol_ = 1e-12;
};

/// Null space basis of the rows-as-equations system M x = 0 over a field.
template <class T>
std::vector<std::vector<T>> null_space(const Matrix<T>& M)
{
    using Tr = coeff_traits<T>;
    const std::size_t m = M.rows(), n = M.cols();
    Matrix<T> A = M;
    std::vector<std::size_t> piv_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t best = m;
        std::size_t bc = 0;
        for (std::size_t i = r; i < m; ++i) {
            if (Tr::is_zero(A(i, c))) continue;
            const std::size_t k = Tr::pivot_cost(A(i, c));
            if (best == m || k < bc) {
                best = i;
                bc = k;
            }
        }
        if (best == m) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(A(r, j), A(best, j));
        const T inv = Tr::one() / A(r, c);
        for (std::size_t j = 0; j < n; ++j) A(r, j) = A(r, j) * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || Tr::is_zero(A(i, c))) continue;
            const T f = A(i, c);
            for (std::size_t j = 0; j < n; ++j) A(i, j) = A(i, j) - f * A(r, j);
        }
        piv_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(n, false);
    for (auto c : piv_col) is_piv[c] = true;
    std::vector<std::vector<T>> out;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        std::vector<T> x(n, Tr::zero());
        x[f] = Tr::one();
        for (std::size_t k = 0; k < piv_col.size(); ++k) x[piv_col[k]] = -A(k, f);
        out.push_back(std::move(x));
    }
    return out;
}

/// Inverse over a field; throws if singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& M)
{
    using Tr = coeff_traits<T>;
    const std::size_t n = M.rows();
    if (M.cols() != n) throw std::invalid_argument("inverse of a non-square matrix");
    Matrix<T> A(n, 2 * n);
    A.set_block(0, 0, M);
    A.set_block(0, n, Matrix<T>::identity(n));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && Tr::is_zero(A(p, c))) ++p;
        if (p == n) throw DomainError("singular matrix");
        for (std::size_t j = 0; j < 2 * n; ++j) std::swap(A(c, j), A(p, j));
        const T inv = Tr::one() / A(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) A(c, j) = A(c, j) * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || Tr::is_zero(A(i, c))) continue;
            const T f = A(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) A(i, j) = A(i, j) - f * A(c, j);
        }
    }
    Matrix<T> R(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) R(i, j) = A(i, n + j);
    return R;
}

/// Characteristic polynomial coefficients (Faddeev–LeVerrier):
/// det(xI - M) = x^n + c[1] x^{n-1} + ... + c[n]; returns c with c[0] = 1.
template <class T>
std::vector<T> charpoly(const Matrix<T>& M)
{
    using Tr = coeff_traits<T>;
    const std::size_t n = M.rows();
    std::vector<T> c(n + 1, Tr::zero());
    c[0] = Tr::one();
    Matrix<T> Mk = Matrix<T>::identity(n); // M_0 = 0, M_1 = I
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            Mk = M * Mk;
            for (std::size_t i = 0; i < n; ++i) Mk(i, i) = Mk(i, i) + c[k - 1];
        }
        const Matrix<T> AM = M * Mk;
        T tr = Tr::zero();
        for (std::size_t i = 0; i < n; ++i) tr = tr + AM(i, i);
        c[k] = -tr * Tr::from_rational(Rational(1, static_cast<long>(k)));
    }
    return c;
}

} // namespace ncs
