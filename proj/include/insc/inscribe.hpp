#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "insc/arrangement.hpp"
#include "insc/field.hpp"
#include "insc/linalg.hpp"
#include "insc/qform.hpp"
#include "insc/simplex.hpp"

namespace insc {

/// R_L(Q): entry (s, t) = <z_{i_s}, z_{i_t}>_Q for s < t, skew below.
template <class F>
Matrix<typename F::value_type> skew_gram(const Arrangement<F>& a, const OrderedFlat<typename F::value_type>& flat,
                                         const QForm<F>& q) {
    using T = typename F::value_type;
    const F& f = a.field();
    const std::size_t k = flat.size();
    Matrix<T> r(k, k, f.zero());
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = s + 1; t < k; ++t) {
            r(s, t) = q.inner(a.normal(flat.indices[s]), a.normal(flat.indices[t]));
            r(t, s) = -r(s, t);
        }
    return r;
}

template <class F>
struct ZInSpace {
    using T = typename F::value_type;
    std::size_t dim = 0;
    std::vector<Vec<T>> basis;
};

/// Kernel of the stacked per-flat systems R_L lambda_L = 0, assembled flat by
/// flat in flat order, one row per cyclic position.
template <class F>
ZInSpace<F> z_in_space(const Arrangement<F>& a, const QForm<F>& q,
                       const std::vector<OrderedFlat<typename F::value_type>>& flats) {
    using T = typename F::value_type;
    const F& f = a.field();
    const std::size_t n = a.size();
    RowSpace<F> rows(f, n);
    for (const auto& flat : flats) {
        auto r = skew_gram(a, flat, q);
        for (std::size_t s = 0; s < flat.size(); ++s) {
            Vec<T> row(n, f.zero());
            bool nz = false;
            for (std::size_t t = 0; t < flat.size(); ++t) {
                row[flat.indices[t]] = r(s, t);
                nz = nz || !f.is_zero(r(s, t));
            }
            if (nz) rows.add(std::move(row));
        }
    }
    ZInSpace<F> out;
    out.basis = rows.kernel();
    out.dim = out.basis.size();
    return out;
}

template <class F>
ZInSpace<F> z_in_space(const Arrangement<F>& a, const QForm<F>& q) {
    return z_in_space(a, q, ordered_codim2_flats(a));
}

template <class F>
struct ConeSample {
    using T = typename F::value_type;
    std::optional<Vec<T>> lambda;
    T epsilon;  // LP certificate: > 0 iff a sample exists
    Verdict verdict = Verdict::no;
};

/// A strictly positive vector in the span of the given kernel basis.
template <class F>
ConeSample<F> cone_sample_from_basis(const F& f, std::size_t n, const std::vector<Vec<typename F::value_type>>& basis) {
    using T = typename F::value_type;
    ConeSample<F> out{std::nullopt, f.zero(), Verdict::no};
    if (basis.empty()) {
        if (n == 0) {
            out.lambda = Vec<T>{};
            out.epsilon = f.one();
            out.verdict = Verdict::yes;
        }
        return out;
    }
    Matrix<T> b(n, basis.size(), f.zero());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) b(i, j) = basis[j][i];
    auto res = strict_interior_point(f, b);
    out.epsilon = res.epsilon;
    out.verdict = res.verdict;
    if (res.point) out.lambda = b * *res.point;
    return out;
}

template <class F>
ConeSample<F> z_in_cone_sample(const Arrangement<F>& a, const QForm<F>& q) {
    return cone_sample_from_basis(a.field(), a.size(), z_in_space(a, q).basis);
}

template <class F>
struct FlatReport {
    using T = typename F::value_type;
    OrderedFlat<T> flat;
    T pfaffian;
    std::size_t kernel_dim = 0;
};

template <class F>
struct VirtualResult {
    Verdict verdict = Verdict::yes;
    std::vector<FlatReport<F>> per_flat;
};

/// Virtual inscribability: every per-flat Pfaffian vanishes.
template <class F>
VirtualResult<F> virtually_inscribable(const Arrangement<F>& a, const QForm<F>& q,
                                       const std::vector<OrderedFlat<typename F::value_type>>& flats) {
    const F& f = a.field();
    VirtualResult<F> out;
    for (const auto& flat : flats) {
        auto r = skew_gram(a, flat, q);
        FlatReport<F> fr{flat, pfaffian(f, r), flat.size() - insc::rank(f, r)};
        if (!f.is_zero(fr.pfaffian)) out.verdict = Verdict::no;
        out.per_flat.push_back(std::move(fr));
    }
    return out;
}

template <class F>
VirtualResult<F> virtually_inscribable(const Arrangement<F>& a, const QForm<F>& q) {
    return virtually_inscribable(a, q, ordered_codim2_flats(a));
}

/// T(A): one row per tope-graph edge tau (sorted by covector), entry
/// tau_i <z_j(tau), z_i>_Q.
template <class F>
Matrix<typename F::value_type> edge_matrix(const Arrangement<F>& a, const QForm<F>& q, std::size_t cap = default_region_cap) {
    using T = typename F::value_type;
    const F& f = a.field();
    const std::size_t n = a.size();
    auto edges = tope_edges(topes(a, cap));
    std::vector<Vec<T>> gram(n, Vec<T>(n, f.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) gram[i][j] = gram[j][i] = q.inner(a.normal(i), a.normal(j));
    Matrix<T> m(edges.size(), n, f.zero());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& tau = edges[e].covector;
        const std::size_t j = edges[e].hyperplane;
        for (std::size_t i = 0; i < n; ++i) {
            if (tau[i] > 0) m(e, i) = gram[j][i];
            else if (tau[i] < 0) m(e, i) = -gram[j][i];
        }
    }
    return m;
}

template <class F>
struct InscribeReport {
    using T = typename F::value_type;
    std::vector<OrderedFlat<T>> flats;
    std::size_t zinspc_dim = 0;
    std::vector<Vec<T>> zinspc_basis;
    std::optional<Vec<T>> zincone_sample;
    Verdict strongly_inscribable = Verdict::no;
    T lp_epsilon;
    Verdict virtually_inscribable = Verdict::yes;
    std::vector<FlatReport<F>> per_flat;
};

template <class F>
InscribeReport<F> inscribe_report(const Arrangement<F>& a, const QForm<F>& q) {
    InscribeReport<F> r;
    r.flats = ordered_codim2_flats(a);
    auto space = z_in_space(a, q, r.flats);
    r.zinspc_dim = space.dim;
    r.zinspc_basis = space.basis;
    auto cone = cone_sample_from_basis(a.field(), a.size(), space.basis);
    r.zincone_sample = cone.lambda;
    r.strongly_inscribable = cone.verdict;
    r.lp_epsilon = cone.epsilon;
    auto virt = virtually_inscribable(a, q, r.flats);
    r.virtually_inscribable = virt.verdict;
    r.per_flat = std::move(virt.per_flat);
    return r;
}

}  // namespace insc
