#pragma once

// Closed-form kernel vectors for the type A and D_{n,s} families, and span
// comparisons. Shared by the unit tests and the acceptance runner.

#include <vector>

#include "insc/arrangement.hpp"
#include "insc/linalg.hpp"
#include "insc/qform.hpp"

namespace insc::oracle {

using Q = mpq_class;

/// Q = diag(a_1..a_n) + a_{n+1} J on R^n.
inline QForm<RationalField> type_a_form(const std::vector<Q>& a) {
    const std::size_t n = a.size() - 1;
    Matrix<Q> m(n, n, a[n]);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += a[i];
    return QForm<RationalField>(RationalField{}, m);
}

/// lambda(f_ij) = 1 / (a_i a_j), where e_i is f_{i,n+1}. Identifies each
/// stored normal by its support.
inline Vec<Q> type_a_lambda(const Arrangement<RationalField>& arr, const std::vector<Q>& a) {
    const std::size_t n = arr.dim();
    Vec<Q> out;
    for (const auto& z : arr.normals()) {
        std::vector<std::size_t> supp;
        for (std::size_t k = 0; k < n; ++k)
            if (sgn(z[k]) != 0) supp.push_back(k);
        const std::size_t i = supp[0], j = supp.size() == 2 ? supp[1] : n;
        out.push_back(1 / (a[i] * a[j]));
    }
    return out;
}

/// Q = diag(a_1..a_s, a, .., a) on R^n.
inline QForm<RationalField> type_d_form(std::size_t n, const std::vector<Q>& ak, const Q& a) {
    Vec<Q> diag(n, a);
    for (std::size_t k = 0; k < ak.size(); ++k) diag[k] = ak[k];
    return QForm<RationalField>::diagonal(RationalField{}, diag);
}

/// lambda(e_i +- e_j) = t / (a_i a_j), lambda(e_k) = t (a - a_k) / (a_k^2 a) + t' / a_k.
inline Vec<Q> type_d_lambda(const Arrangement<RationalField>& arr, const std::vector<Q>& ak, const Q& a, const Q& t,
                            const Q& tp) {
    const std::size_t n = arr.dim();
    auto coef = [&](std::size_t k) { return k < ak.size() ? ak[k] : a; };
    Vec<Q> out;
    for (const auto& z : arr.normals()) {
        std::vector<std::size_t> supp;
        for (std::size_t k = 0; k < n; ++k)
            if (sgn(z[k]) != 0) supp.push_back(k);
        if (supp.size() == 2) {
            out.push_back(t / (coef(supp[0]) * coef(supp[1])));
        } else {
            const Q c = coef(supp[0]);
            out.push_back(t * (a - c) / (c * c * a) + tp / c);
        }
    }
    return out;
}

template <class F>
bool in_span(const F& f, const std::vector<Vec<typename F::value_type>>& basis, const Vec<typename F::value_type>& v) {
    using T = typename F::value_type;
    const std::size_t cols = v.size();
    auto rows = basis;
    const std::size_t r0 = basis.empty() ? 0 : rank(f, Matrix<T>::from_rows(rows, cols));
    rows.push_back(v);
    return rank(f, Matrix<T>::from_rows(rows, cols)) == r0;
}

/// Same dimension and mutual containment.
template <class F>
bool same_span(const F& f, const std::vector<Vec<typename F::value_type>>& a,
               const std::vector<Vec<typename F::value_type>>& b) {
    using T = typename F::value_type;
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    const std::size_t cols = a[0].size();
    const auto ra = rank(f, Matrix<T>::from_rows(a, cols)), rb = rank(f, Matrix<T>::from_rows(b, cols));
    if (ra != rb) return false;
    for (const auto& v : a)
        if (!in_span(f, b, v)) return false;
    for (const auto& v : b)
        if (!in_span(f, a, v)) return false;
    return true;
}

}  // namespace insc::oracle
