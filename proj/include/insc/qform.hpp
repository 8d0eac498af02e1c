#pragma once

#include <cstddef>
#include <vector>

#include "insc/errors.hpp"
#include "insc/field.hpp"
#include "insc/linalg.hpp"
#include "insc/matrix.hpp"

namespace insc {

/// Symmetric nonsingular bilinear form <x, y>_Q = x^T Q y.
template <class F>
class QForm {
public:
    using T = typename F::value_type;

    QForm(const F& f, Matrix<T> q) : field_(f), q_(std::move(q)) {
        if (q_.rows() != q_.cols()) throw Error("bilinear form must be square");
        for (std::size_t i = 0; i < q_.rows(); ++i)
            for (std::size_t j = i + 1; j < q_.cols(); ++j)
                if (!f.is_zero(q_(i, j) - q_(j, i))) throw Error("bilinear form is not symmetric");
        if (insc::rank(f, q_) != q_.rows()) throw DegenerateForm("bilinear form is singular");
    }

    static QForm identity(const F& f, std::size_t d) { return QForm(f, Matrix<T>::identity(d, f.zero(), f.one())); }

    static QForm diagonal(const F& f, const Vec<T>& diag) {
        Matrix<T> q(diag.size(), diag.size(), f.zero());
        for (std::size_t i = 0; i < diag.size(); ++i) q(i, i) = diag[i];
        return QForm(f, std::move(q));
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return q_.rows(); }
    const Matrix<T>& matrix() const { return q_; }

    T inner(const Vec<T>& x, const Vec<T>& y) const {
        T s = field_.zero();
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (field_.is_zero(x[i])) continue;
            for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * q_(i, j) * y[j];
        }
        return s;
    }

    T norm2(const Vec<T>& x) const { return inner(x, x); }

    Vec<T> apply(const Vec<T>& x) const { return q_ * x; }

    /// Leading principal minors Q[0..k, 0..k], k = 1..d.
    std::vector<T> leading_minors() const {
        std::vector<T> out;
        for (std::size_t k = 1; k <= dim(); ++k) {
            Matrix<T> sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub(i, j) = q_(i, j);
            out.push_back(determinant(field_, sub));
        }
        return out;
    }

    /// Sylvester's criterion.
    bool is_positive_definite() const {
        for (const auto& m : leading_minors())
            if (field_.sign(m) <= 0) return false;
        return true;
    }

    /// B^T Q B for the columns of basis (given as a list of vectors).
    QForm induced(const std::vector<Vec<T>>& basis) const {
        const std::size_t k = basis.size();
        Matrix<T> g(k, k, field_.zero());
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) g(a, b) = g(b, a) = inner(basis[a], basis[b]);
        return QForm(field_, std::move(g));
    }

private:
    F field_;
    Matrix<T> q_;
};

}  // namespace insc
