#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "insc/errors.hpp"
#include "insc/field.hpp"
#include "insc/matrix.hpp"

namespace insc {

/// Reduced row echelon form: rows() == rank, pivot entries 1, zeros above and below.
template <class T>
struct Echelon {
    Matrix<T> rref;                   // rank x cols
    std::vector<std::size_t> pivots;  // pivot column of each row
    int swap_parity = 1;              // sign of the row permutation used
    T det_factor;                     // last Bareiss pivot (exact) or pivot product (float)

    std::size_t rank() const { return pivots.size(); }
};

namespace detail {

template <class F>
double max_abs(const F& f, const Matrix<typename F::value_type>& m) {
    double mx = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) mx = std::max(mx, std::fabs(f.to_double(m(i, j))));
    return mx;
}

/// Forward elimination. Exact fields use fraction-free Bareiss steps with
/// first-nonzero pivoting; float uses partial pivoting with a tolerance scaled
/// by the largest entry. Returns the upper echelon rows (count == rank).
template <class F>
Echelon<typename F::value_type> forward(const F& f, Matrix<typename F::value_type> a) {
    using T = typename F::value_type;
    Echelon<T> e;
    e.det_factor = f.one();
    std::size_t r = 0;
    const std::size_t rows = a.rows(), cols = a.cols();
    if constexpr (F::exact) {
        T prev = f.one();
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t p = r;
            while (p < rows && f.is_zero(a(p, c))) ++p;
            if (p == rows) continue;
            if (p != r) {
                a.swap_rows(p, r);
                e.swap_parity = -e.swap_parity;
            }
            const T piv = a(r, c);
            for (std::size_t i = r + 1; i < rows; ++i) {
                const T lead = a(i, c);
                if (f.is_zero(lead)) {
                    // row i is still exact up to the pivot scaling
                    for (std::size_t j = c + 1; j < cols; ++j)
                        if (!f.is_zero(a(i, j))) a(i, j) = piv * a(i, j) / prev;
                } else {
                    for (std::size_t j = c + 1; j < cols; ++j) a(i, j) = (piv * a(i, j) - lead * a(r, j)) / prev;
                }
                a(i, c) = f.zero();
            }
            prev = piv;
            e.pivots.push_back(c);
            ++r;
        }
        e.det_factor = prev;
    } else {
        const double thresh = f.tol * std::max(1.0, max_abs(f, a));
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t p = r;
            for (std::size_t i = r + 1; i < rows; ++i)
                if (std::fabs(a(i, c)) > std::fabs(a(p, c))) p = i;
            if (std::fabs(a(p, c)) <= thresh) {
                for (std::size_t i = r; i < rows; ++i) a(i, c) = 0;
                continue;
            }
            if (p != r) {
                a.swap_rows(p, r);
                e.swap_parity = -e.swap_parity;
            }
            const T piv = a(r, c);
            e.det_factor *= piv;
            for (std::size_t i = r + 1; i < rows; ++i) {
                const T factor = a(i, c) / piv;
                if (factor == 0) continue;
                for (std::size_t j = c + 1; j < cols; ++j) a(i, j) -= factor * a(r, j);
                a(i, c) = 0;
            }
            e.pivots.push_back(c);
            ++r;
        }
    }
    Matrix<T> top(r, cols, f.zero());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) top(i, j) = a(i, j);
    e.rref = std::move(top);
    return e;
}

}  // namespace detail

/// Reduced row echelon form of m (the deterministic normal form used for kernels).
template <class F>
Echelon<typename F::value_type> echelon(const F& f, const Matrix<typename F::value_type>& m) {
    using T = typename F::value_type;
    auto e = detail::forward(f, m);
    Matrix<T>& a = e.rref;
    const std::size_t r = e.rank(), cols = a.cols();
    for (std::size_t k = r; k-- > 0;) {
        const std::size_t c = e.pivots[k];
        const T inv = f.one() / a(k, c);
        for (std::size_t j = c; j < cols; ++j)
            if (!f.is_zero(a(k, j))) a(k, j) *= inv;
        a(k, c) = f.one();
        for (std::size_t i = 0; i < k; ++i) {
            const T factor = a(i, c);
            if (f.is_zero(factor)) continue;
            for (std::size_t j = c; j < cols; ++j) a(i, j) -= factor * a(k, j);
            a(i, c) = f.zero();
        }
    }
    if constexpr (!F::exact) {
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (f.is_zero(a(i, j))) a(i, j) = 0;
    }
    return e;
}

template <class F>
std::size_t rank(const F& f, const Matrix<typename F::value_type>& m) {
    return detail::forward(f, m).rank();
}

/// Null space basis: one vector per free column (ascending), with 1 in that
/// column, 0 in the other free columns, and minus the RREF entries at pivots.
template <class F>
std::vector<Vec<typename F::value_type>> kernel_basis(const F& f, const Matrix<typename F::value_type>& m) {
    using T = typename F::value_type;
    const std::size_t cols = m.cols();
    auto e = echelon(f, m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vec<T>> basis;
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vec<T> v(cols, f.zero());
        v[fc] = f.one();
        for (std::size_t k = 0; k < e.rank(); ++k) v[e.pivots[k]] = -e.rref(k, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
typename F::value_type determinant(const F& f, const Matrix<typename F::value_type>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() == 0) return f.one();
    auto e = detail::forward(f, m);
    if (e.rank() < m.rows()) return f.zero();
    return e.swap_parity > 0 ? e.det_factor : -e.det_factor;
}

template <class F>
bool is_skew_symmetric(const F& f, const Matrix<typename F::value_type>& s) {
    if (s.rows() != s.cols()) return false;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = i; j < s.cols(); ++j)
            if (!f.is_zero(s(i, j) + s(j, i))) return false;
    return true;
}

/// Pfaffian by congruence elimination: pair off rows (k, k+1), clearing the
/// rest of both rows with det-1 congruences.
template <class F>
typename F::value_type pfaffian(const F& f, const Matrix<typename F::value_type>& s) {
    using T = typename F::value_type;
    if (!is_skew_symmetric(f, s)) throw NotSkewSymmetric();
    const std::size_t n = s.rows();
    if (n % 2 == 1) return f.zero();
    Matrix<T> a = s;
    T result = f.one();

    auto swap_index = [&](std::size_t x, std::size_t y) {
        a.swap_rows(x, y);
        for (std::size_t i = 0; i < n; ++i) std::swap(a(i, x), a(i, y));
    };
    // row_i += c row_j and col_i += c col_j
    auto add_multiple = [&](std::size_t i, std::size_t j, const T& c) {
        for (std::size_t t = 0; t < n; ++t) a(i, t) += c * a(j, t);
        for (std::size_t t = 0; t < n; ++t) a(t, i) += c * a(t, j);
    };

    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t p = n;
        if constexpr (F::exact) {
            for (std::size_t j = k + 1; j < n && p == n; ++j)
                if (!f.is_zero(a(k, j))) p = j;
        } else {
            double best = 0;
            for (std::size_t j = k + 1; j < n; ++j)
                if (!f.is_zero(a(k, j)) && std::fabs(a(k, j)) > best) {
                    best = std::fabs(a(k, j));
                    p = j;
                }
        }
        if (p == n) return f.zero();
        if (p != k + 1) {
            swap_index(p, k + 1);
            result = -result;
        }
        const T piv = a(k, k + 1);
        result *= piv;
        for (std::size_t i = k + 2; i < n; ++i) {
            if (!f.is_zero(a(k, i))) add_multiple(i, k + 1, -a(k, i) / piv);
            if (!f.is_zero(a(k + 1, i))) add_multiple(i, k, a(k + 1, i) / piv);
        }
    }
    return result;
}

/// Builds the reduced row echelon form one row at a time. Rows are reduced
/// against a fully reduced basis, so a sparse row only touches the pivots in
/// its support. The final RREF is the same as echelon() of the stacked rows.
/// Float fields just collect the rows and eliminate once at the end.
template <class F>
class RowSpace {
public:
    using T = typename F::value_type;

    RowSpace(const F& f, std::size_t cols) : f_(f), cols_(cols), pivot_row_(cols, npos) {}

    std::size_t cols() const { return cols_; }

    /// Returns true if the row enlarged the span (always true in float mode
    /// for nonzero rows).
    bool add(Vec<T> v) {
        if constexpr (!F::exact) {
            bool nz = false;
            for (const auto& x : v) nz = nz || !f_.is_zero(x);
            if (nz) rows_.push_back(std::move(v));
            return nz;
        } else {
            for (std::size_t c = 0; c < cols_; ++c) {
                if (pivot_row_[c] == npos || f_.is_zero(v[c])) continue;
                const T factor = v[c];
                const Vec<T>& r = rows_[pivot_row_[c]];
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!f_.is_zero(r[j])) v[j] -= factor * r[j];
            }
            std::size_t p = 0;
            while (p < cols_ && f_.is_zero(v[p])) ++p;
            if (p == cols_) return false;
            const T inv = f_.one() / v[p];
            for (auto& x : v)
                if (!f_.is_zero(x)) x *= inv;
            for (auto& r : rows_) {
                if (f_.is_zero(r[p])) continue;
                const T factor = r[p];
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!f_.is_zero(v[j])) r[j] -= factor * v[j];
            }
            pivot_row_[p] = rows_.size();
            rows_.push_back(std::move(v));
            return true;
        }
    }

    std::size_t rank() const {
        if constexpr (F::exact) return rows_.size();
        else return insc::rank(f_, Matrix<T>::from_rows(rows_, cols_));
    }

    std::vector<Vec<T>> kernel() const {
        if constexpr (!F::exact) {
            return kernel_basis(f_, Matrix<T>::from_rows(rows_, cols_));
        } else {
            std::vector<Vec<T>> basis;
            for (std::size_t fc = 0; fc < cols_; ++fc) {
                if (pivot_row_[fc] != npos) continue;
                Vec<T> v(cols_, f_.zero());
                v[fc] = f_.one();
                for (std::size_t c = 0; c < cols_; ++c)
                    if (pivot_row_[c] != npos) v[c] = -rows_[pivot_row_[c]][fc];
                basis.push_back(std::move(v));
            }
            return basis;
        }
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    F f_;
    std::size_t cols_;
    std::vector<std::size_t> pivot_row_;
    std::vector<Vec<T>> rows_;
};

}  // namespace insc
