#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "insc/field.hpp"
#include "insc/matrix.hpp"

namespace insc {

template <class T>
struct StrictPointResult {
    std::optional<Vec<T>> point;  // mu with (B mu)_i > 0 for all i
    T epsilon;                    // LP optimum
    Verdict verdict = Verdict::no;
};

namespace detail {

/// Dense tableau simplex for: maximize c.x s.t. A x <= b, x >= 0, with b >= 0
/// (so the slack basis is feasible). Bland's rule for entering and leaving.
template <class F>
class Tableau {
public:
    using T = typename F::value_type;

    Tableau(const F& f, const Matrix<T>& a, const Vec<T>& b, const Vec<T>& c)
        : f_(f), m_(a.rows()), nvars_(a.cols()), t_(a.rows() + 1, a.cols() + a.rows() + 1, f.zero()), basis_(a.rows()) {
        const std::size_t rhs = nvars_ + m_;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < nvars_; ++j) t_(i, j) = a(i, j);
            t_(i, nvars_ + i) = f.one();
            t_(i, rhs) = b[i];
            basis_[i] = nvars_ + i;
        }
        // objective row holds reduced costs c_j - z_j, value in rhs (negated)
        for (std::size_t j = 0; j < nvars_; ++j) t_(m_, j) = c[j];
    }

    /// Returns false if unbounded.
    bool solve() {
        const std::size_t total = nvars_ + m_, rhs = total;
        for (;;) {
            std::size_t enter = total;
            for (std::size_t j = 0; j < total; ++j)
                if (f_.sign(t_(m_, j)) > 0) {
                    enter = j;
                    break;
                }
            if (enter == total) return true;
            std::size_t leave = m_;
            T best{};
            for (std::size_t i = 0; i < m_; ++i) {
                if (f_.sign(t_(i, enter)) <= 0) continue;
                T ratio = t_(i, rhs) / t_(i, enter);
                if (leave == m_) {
                    leave = i;
                    best = ratio;
                    continue;
                }
                int s = f_.sign(ratio - best);
                if (s < 0 || (s == 0 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    T objective() const { return -t_(m_, nvars_ + m_); }

    Vec<T> solution() const {
        Vec<T> x(nvars_, f_.zero());
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < nvars_) x[basis_[i]] = t_(i, nvars_ + m_);
        return x;
    }

private:
    void pivot(std::size_t r, std::size_t c) {
        const std::size_t width = t_.cols();
        const T inv = f_.one() / t_(r, c);
        for (std::size_t j = 0; j < width; ++j)
            if (!f_.is_zero(t_(r, j))) t_(r, j) *= inv;
        t_(r, c) = f_.one();
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const T factor = t_(i, c);
            if (f_.is_zero(factor)) continue;
            for (std::size_t j = 0; j < width; ++j)
                if (!f_.is_zero(t_(r, j))) t_(i, j) -= factor * t_(r, j);
            t_(i, c) = f_.zero();
        }
        basis_[r] = c;
    }

    const F& f_;
    std::size_t m_, nvars_;
    Matrix<T> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Finds mu with B mu > 0 componentwise, if one exists.
///
/// LP: maximize eps s.t. B mu - eps >= 0, eps <= 1, mu free (split as
/// mu+ - mu-). The origin is feasible, so no phase one is needed. In float
/// mode the answer is "inconclusive" when the normalized margin
/// min_i (B mu)_i / (|B_i| |mu|) is within tolerance.
template <class F>
StrictPointResult<typename F::value_type> strict_interior_point(const F& f, const Matrix<typename F::value_type>& b) {
    using T = typename F::value_type;
    const std::size_t n = b.rows(), k = b.cols();
    StrictPointResult<T> out{std::nullopt, f.zero(), Verdict::no};
    if (n == 0) {
        // no constraint: any mu works
        out.point = Vec<T>(k, f.zero());
        out.epsilon = f.one();
        out.verdict = Verdict::yes;
        return out;
    }
    const std::size_t vars = 2 * k + 1;
    Matrix<T> a(n + 1, vars, f.zero());
    Vec<T> rhs(n + 1, f.zero()), cost(vars, f.zero());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            a(i, j) = -b(i, j);
            a(i, k + j) = b(i, j);
        }
        a(i, 2 * k) = f.one();
    }
    a(n, 2 * k) = f.one();
    rhs[n] = f.one();
    cost[2 * k] = f.one();

    detail::Tableau<F> tab(f, a, rhs, cost);
    tab.solve();  // bounded: eps <= 1 and mu is only constrained through eps
    out.epsilon = tab.objective();
    // the optimum is 0 or 1 (mu is unbounded), so a float value near 0 is a no
    if (f.sign(out.epsilon) <= 0) return out;
    Vec<T> x = tab.solution();
    Vec<T> mu(k, f.zero());
    for (std::size_t j = 0; j < k; ++j) mu[j] = x[j] - x[k + j];
    out.point = mu;
    out.verdict = Verdict::yes;
    if constexpr (!F::exact) {
        double mu_norm = 0;
        for (double v : mu) mu_norm += v * v;
        mu_norm = std::sqrt(mu_norm);
        double margin = INFINITY;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0, val = 0;
            for (std::size_t j = 0; j < k; ++j) {
                row += b(i, j) * b(i, j);
                val += b(i, j) * mu[j];
            }
            row = std::sqrt(row);
            margin = std::min(margin, row * mu_norm > 0 ? val / (row * mu_norm) : 0.0);
        }
        if (margin <= f.tol) out.verdict = Verdict::inconclusive;
    }
    return out;
}

}  // namespace insc
