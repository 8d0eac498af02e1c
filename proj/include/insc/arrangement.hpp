#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "insc/errors.hpp"
#include "insc/field.hpp"
#include "insc/linalg.hpp"
#include "insc/matrix.hpp"
#include "insc/qform.hpp"

namespace insc {

inline constexpr std::size_t default_region_cap = 100000;

/// Region cap from INSC_REGION_CAP, falling back to the default.
inline std::size_t region_cap_from_env() {
    if (const char* s = std::getenv("INSC_REGION_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return default_region_cap;
}

/// Upper bound 2 * sum_{k<d} C(n-1, k) on the regions of n central
/// hyperplanes in rank d (attained by generic arrangements). Saturates.
inline std::size_t region_upper_bound(std::size_t n, std::size_t d) {
    if (n == 0) return 1;
    double sum = 0, c = 1;  // c = C(n-1, k)
    for (std::size_t k = 0; k < d && k <= n - 1; ++k) {
        sum += c;
        c = c * static_cast<double>(n - 1 - k) / static_cast<double>(k + 1);
    }
    return sum >= 1e18 ? static_cast<std::size_t>(2e18) : 2 * static_cast<std::size_t>(sum + 0.5);
}

/// Essential central arrangement with labelled normals z_0..z_{n-1}
/// (printed 1-based). Normals are sign-normalized into a common open
/// halfspace; flipped() records which inputs were negated.
template <class F>
class Arrangement {
public:
    using T = typename F::value_type;

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return normals_.size(); }
    const Vec<T>& normal(std::size_t i) const { return normals_[i]; }
    const std::vector<Vec<T>>& normals() const { return normals_; }
    const std::vector<bool>& flipped() const { return flipped_; }
    /// The functional c with <c, z_i> > 0 for all i.
    const Vec<T>& functional() const { return functional_; }

    template <class G>
    friend Arrangement<G> new_arrangement(const G&, std::size_t, std::vector<Vec<typename G::value_type>>);

private:
    F field_;
    std::size_t dim_ = 0;
    std::vector<Vec<T>> normals_;
    std::vector<bool> flipped_;
    Vec<T> functional_;
};

namespace detail {

template <class F>
bool is_zero_vector(const F& f, const Vec<typename F::value_type>& v) {
    for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    return true;
}

template <class F>
bool parallel(const F& f, const Vec<typename F::value_type>& a, const Vec<typename F::value_type>& b) {
    for (std::size_t p = 0; p < a.size(); ++p)
        for (std::size_t q = p + 1; q < a.size(); ++q)
            if (!f.is_zero(a[p] * b[q] - a[q] * b[p])) return false;
    return true;
}

/// c with a / c == b for parallel vectors, i.e. a = c * b.
template <class F>
typename F::value_type ratio(const F& f, const Vec<typename F::value_type>& a, const Vec<typename F::value_type>& b) {
    std::size_t p = 0;
    if constexpr (F::exact) {
        while (f.is_zero(b[p])) ++p;
    } else {
        for (std::size_t k = 1; k < b.size(); ++k)
            if (std::fabs(b[k]) > std::fabs(b[p])) p = k;
    }
    return a[p] / b[p];
}

template <class F>
Matrix<typename F::value_type> rows_matrix(const std::vector<Vec<typename F::value_type>>& rows, std::size_t cols) {
    return Matrix<typename F::value_type>::from_rows(rows, cols);
}

}  // namespace detail

/// Validates and sign-normalizes. The functional is c = (1, e, e^2, ...) with
/// e = 1, 1/2, 1/4, ... until no <c, z_i> vanishes.
template <class F>
Arrangement<F> new_arrangement(const F& f, std::size_t dim, std::vector<Vec<typename F::value_type>> normals) {
    using T = typename F::value_type;
    for (std::size_t i = 0; i < normals.size(); ++i) {
        if (normals[i].size() != dim)
            throw Error("normal " + std::to_string(i + 1) + " has " + std::to_string(normals[i].size()) +
                        " coordinates, expected " + std::to_string(dim));
        if (detail::is_zero_vector(f, normals[i])) throw ZeroNormal(i);
    }
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = i + 1; j < normals.size(); ++j)
            if (detail::parallel(f, normals[i], normals[j])) throw ParallelPair(i, j);
    std::size_t r = insc::rank(f, detail::rows_matrix<F>(normals, dim));
    if (r != dim) throw NotEssential(r, dim);

    Vec<T> c(dim, f.zero());
    T e = f.one();
    const T half = f.one() / f.from_int(2);
    for (int attempt = 0;; ++attempt) {
        if (attempt > 200) throw Error("no generic functional found for sign normalization");
        T p = f.one();
        for (std::size_t k = 0; k < dim; ++k) {
            c[k] = p;
            p = p * e;
        }
        bool ok = true;
        for (const auto& z : normals)
            if (f.is_zero(dot(c, z))) {
                ok = false;
                break;
            }
        if (ok) break;
        e = e * half;
    }

    Arrangement<F> a;
    a.field_ = f;
    a.dim_ = dim;
    a.functional_ = c;
    a.flipped_.assign(normals.size(), false);
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (f.sign(dot(c, normals[i])) < 0) {
            for (auto& x : normals[i]) x = -x;
            a.flipped_[i] = true;
        }
    a.normals_ = std::move(normals);
    return a;
}

// ---------------------------------------------------------------------------
// codimension-2 flats

template <class T>
struct OrderedFlat {
    std::vector<std::size_t> indices;  // cyclic order, 0-based labels
    Vec<T> u, v;                       // reduced echelon basis of the 2-plane

    std::size_t size() const { return indices.size(); }
};

namespace detail {

/// Coordinates of z in the plane with RREF basis rows (u, v) and pivots p, q;
/// returns nullopt if z is not in the plane.
template <class F>
std::optional<std::pair<typename F::value_type, typename F::value_type>> plane_coords(
    const F& f, const Vec<typename F::value_type>& z, const Vec<typename F::value_type>& u,
    const Vec<typename F::value_type>& v, std::size_t p, std::size_t q) {
    using T = typename F::value_type;
    const T x = z[p], y = z[q];
    for (std::size_t k = 0; k < z.size(); ++k)
        if (!f.is_zero(z[k] - x * u[k] - y * v[k])) return std::nullopt;
    return std::make_pair(x, y);
}

}  // namespace detail

/// Groups all pairs of normals by the 2-plane they span. Flats are listed in
/// order of their smallest pair (i, j); inside a flat the normals are sorted
/// angularly (they lie in an open half-plane), and the orientation is chosen
/// so that the first label is smaller than the last.
template <class F>
std::vector<OrderedFlat<typename F::value_type>> ordered_codim2_flats(const Arrangement<F>& a) {
    using T = typename F::value_type;
    const F& f = a.field();
    const std::size_t n = a.size();
    std::vector<OrderedFlat<T>> flats;
    std::vector<std::vector<bool>> done(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (done[i][j]) continue;
            auto e = echelon(f, Matrix<T>::from_rows({a.normal(i), a.normal(j)}));
            const Vec<T> u = e.rref.row(0), v = e.rref.row(1);
            const std::size_t p = e.pivots[0], q = e.pivots[1];
            std::vector<std::pair<std::size_t, std::pair<T, T>>> members;
            for (std::size_t k = 0; k < n; ++k) {
                if (auto c = detail::plane_coords(f, a.normal(k), u, v, p, q)) members.push_back({k, *c});
            }
            std::stable_sort(members.begin(), members.end(), [&](const auto& m1, const auto& m2) {
                const auto& [x1, y1] = m1.second;
                const auto& [x2, y2] = m2.second;
                return f.sign(x1 * y2 - y1 * x2) > 0;
            });
            OrderedFlat<T> flat;
            flat.u = u;
            flat.v = v;
            for (const auto& m : members) flat.indices.push_back(m.first);
            if (flat.indices.front() > flat.indices.back()) std::reverse(flat.indices.begin(), flat.indices.end());
            for (auto s : flat.indices)
                for (auto t : flat.indices) done[s][t] = true;
            flats.push_back(std::move(flat));
        }
    return flats;
}

// ---------------------------------------------------------------------------
// topes

using SignVector = std::vector<std::int8_t>;

struct Tope {
    SignVector signs;
    friend bool operator<(const Tope& x, const Tope& y) { return x.signs < y.signs; }
    friend bool operator==(const Tope& x, const Tope& y) { return x.signs == y.signs; }
};

/// Topes with an interior witness each.
template <class T>
struct TopeSet {
    std::vector<Tope> topes;
    std::vector<Vec<T>> witnesses;
};

namespace detail {

/// Regions of the first m normals (zero and parallel normals allowed) in
/// their own coordinates, with an interior witness each, unsorted.
/// Incremental insertion: a region sigma is cut by H_j exactly when sigma is
/// the sign vector of a region of the restriction to H_j, so the split test
/// recurses one dimension down instead of solving an LP. The restricted
/// witness w lies on H_j inside sigma; w +- delta z_j are the new witnesses.
template <class F>
void regions(const F& f, const std::vector<Vec<typename F::value_type>>& normals, std::size_t dim, std::size_t cap,
             std::vector<SignVector>& out_signs, std::vector<Vec<typename F::value_type>>& out_wit) {
    using T = typename F::value_type;
    const std::size_t m = normals.size();
    std::vector<SignVector> cur{SignVector{}};
    std::vector<Vec<T>> wit{Vec<T>(dim, f.zero())};
    for (std::size_t j = 0; j < m; ++j) {
        const Vec<T>& z = normals[j];
        if (is_zero_vector(f, z)) {
            for (auto& s : cur) s.push_back(0);
            continue;
        }
        // regions of H_j cut out by the earlier hyperplanes
        auto basis = kernel_basis(f, Matrix<T>::from_rows({z}, dim));
        std::vector<Vec<T>> restricted;
        for (std::size_t i = 0; i < j; ++i) {
            Vec<T> r(basis.size(), f.zero());
            for (std::size_t c = 0; c < basis.size(); ++c) r[c] = dot(normals[i], basis[c]);
            restricted.push_back(std::move(r));
        }
        std::vector<SignVector> cut;
        std::vector<Vec<T>> cut_wit;
        regions(f, restricted, basis.size(), cap, cut, cut_wit);
        std::map<SignVector, std::size_t> cut_index;
        for (std::size_t r = 0; r < cut.size(); ++r) cut_index.emplace(cut[r], r);

        std::vector<SignVector> next;
        std::vector<Vec<T>> next_wit;
        auto push = [&](const SignVector& sigma, int side, Vec<T> w) {
            SignVector sv = sigma;
            sv.push_back(static_cast<std::int8_t>(side));
            next.push_back(std::move(sv));
            next_wit.push_back(std::move(w));
            if (next.size() > cap) throw RegionCapExceeded(cap);
        };
        for (std::size_t t = 0; t < cur.size(); ++t) {
            const SignVector& sigma = cur[t];
            auto it = cut_index.find(sigma);
            if (it == cut_index.end()) {
                int s = f.sign(dot(z, wit[t]));
                if (s == 0) s = 1;  // float only: witness within tolerance of H_j
                push(sigma, s, wit[t]);
                continue;
            }
            Vec<T> x(dim, f.zero());
            for (std::size_t c = 0; c < basis.size(); ++c) x = add(x, scale(cut_wit[it->second][c], basis[c]));
            // x +- delta z stays inside sigma for delta below every ratio
            std::optional<T> delta;
            for (std::size_t i = 0; i < j; ++i) {
                if (sigma[i] == 0) continue;
                T zz = dot(normals[i], z);
                if (f.is_zero(zz)) continue;
                T r = dot(normals[i], x) * f.from_int(sigma[i]) / (f.sign(zz) > 0 ? zz : T(-zz));
                if (!delta || f.sign(r - *delta) < 0) delta = r;
            }
            const T dl = delta ? T(*delta / f.from_int(2)) : f.one();
            push(sigma, -1, sub(x, scale(dl, z)));
            push(sigma, 1, add(x, scale(dl, z)));
        }
        cur = std::move(next);
        wit = std::move(next_wit);
    }
    out_signs = std::move(cur);
    out_wit = std::move(wit);
}

}  // namespace detail

/// All topes, sorted, with an interior witness each.
template <class F>
TopeSet<typename F::value_type> topes_with_witnesses(const Arrangement<F>& a, std::size_t cap = default_region_cap) {
    using T = typename F::value_type;
    std::vector<SignVector> cur;
    std::vector<Vec<T>> wit;
    detail::regions(a.field(), a.normals(), a.dim(), cap, cur, wit);
    std::vector<std::size_t> order(cur.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cur[x] < cur[y]; });
    TopeSet<T> out;
    for (auto i : order) {
        out.topes.push_back(Tope{cur[i]});
        out.witnesses.push_back(wit[i]);
    }
    return out;
}

template <class F>
std::vector<Tope> topes(const Arrangement<F>& a, std::size_t cap = default_region_cap) {
    return topes_with_witnesses(a, cap).topes;
}

/// Index of sigma in a sorted tope list, or nullopt.
inline std::optional<std::size_t> find_tope(const std::vector<Tope>& sorted, const SignVector& sigma) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), Tope{sigma});
    if (it == sorted.end() || it->signs != sigma) return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
}

/// Tope-graph neighbours: hyperplanes j such that flipping sigma_j is a tope.
inline std::vector<std::size_t> tope_neighbours(const std::vector<Tope>& sorted, const Tope& t) {
    std::vector<std::size_t> out;
    SignVector s = t.signs;
    for (std::size_t j = 0; j < s.size(); ++j) {
        s[j] = static_cast<std::int8_t>(-s[j]);
        if (find_tope(sorted, s)) out.push_back(j);
        s[j] = static_cast<std::int8_t>(-s[j]);
    }
    return out;
}

/// Edge of the tope graph: the covector with a 0 at the crossed hyperplane.
struct TopeEdge {
    SignVector covector;
    std::size_t hyperplane;
    friend bool operator<(const TopeEdge& x, const TopeEdge& y) { return x.covector < y.covector; }
};

inline std::vector<TopeEdge> tope_edges(const std::vector<Tope>& sorted) {
    std::vector<TopeEdge> edges;
    for (const auto& t : sorted)
        for (auto j : tope_neighbours(sorted, t))
            if (t.signs[j] > 0) {
                TopeEdge e{t.signs, j};
                e.covector[j] = 0;
                edges.push_back(std::move(e));
            }
    std::sort(edges.begin(), edges.end());
    return edges;
}

struct SimplicialResult {
    bool simplicial = true;
    std::optional<Tope> witness;
    std::size_t witness_degree = 0;
};

template <class F>
SimplicialResult is_simplicial(const Arrangement<F>& a, std::size_t cap = default_region_cap) {
    auto ts = topes(a, cap);
    SimplicialResult r;
    for (const auto& t : ts) {
        auto deg = tope_neighbours(ts, t).size();
        if (deg != a.dim()) {
            r.simplicial = false;
            r.witness = t;
            r.witness_degree = deg;
            return r;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// restriction, localization, product

/// One old label contributing to a new one: image of z_old = factor * z_new.
template <class T>
struct LabelPart {
    std::size_t old_label;
    T factor;
};

template <class F>
struct Restriction {
    using T = typename F::value_type;
    Arrangement<F> arrangement;
    QForm<F> qform;                                      // Q restricted to the hyperplane
    std::vector<std::vector<LabelPart<T>>> label_map;    // new label -> old labels
    std::vector<Vec<T>> basis;                           // ambient vectors of the new coordinates
};

/// Restricts to H_i = z_i^{perp_Q}: projects every other normal Q-orthogonally
/// onto H_i and merges parallel images.
template <class F>
Restriction<F> restrict(const Arrangement<F>& a, std::size_t i, const QForm<F>& q) {
    using T = typename F::value_type;
    const F& f = a.field();
    const std::size_t d = a.dim();
    if (i >= a.size()) throw Error("hyperplane index out of range");
    if (q.dim() != d) throw Error("bilinear form dimension mismatch");
    const Vec<T>& zi = a.normal(i);
    const T qii = q.norm2(zi);
    if (f.is_zero(qii)) throw DegenerateForm("<z_i, z_i>_Q vanishes for the chosen hyperplane");

    const Vec<T> w = q.apply(zi);
    auto basis = kernel_basis(f, Matrix<T>::from_rows({w}));  // columns of H_i, free coordinates
    std::vector<std::size_t> free_cols;
    {
        std::size_t pivot = 0;
        while (f.is_zero(w[pivot])) ++pivot;
        for (std::size_t k = 0; k < d; ++k)
            if (k != pivot) free_cols.push_back(k);
    }

    std::vector<Vec<T>> images;                       // coordinates of class representatives
    std::vector<std::vector<std::pair<std::size_t, Vec<T>>>> classes;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j == i) continue;
        const T c = q.inner(a.normal(j), zi) / qii;
        Vec<T> proj = sub(a.normal(j), scale(c, zi));
        Vec<T> coords;
        for (auto k : free_cols) coords.push_back(proj[k]);
        bool merged = false;
        for (std::size_t cl = 0; cl < images.size(); ++cl)
            if (detail::parallel(f, images[cl], coords)) {
                classes[cl].push_back({j, coords});
                merged = true;
                break;
            }
        if (!merged) {
            images.push_back(coords);
            classes.push_back({{j, coords}});
        }
    }
    auto arr = new_arrangement(f, d - 1, images);
    std::vector<std::vector<LabelPart<T>>> map(arr.size());
    for (std::size_t cl = 0; cl < classes.size(); ++cl)
        for (const auto& [old, coords] : classes[cl]) map[cl].push_back({old, detail::ratio(f, coords, arr.normal(cl))});
    return Restriction<F>{std::move(arr), q.induced(basis), std::move(map), std::move(basis)};
}

template <class F>
struct Localization {
    using T = typename F::value_type;
    Arrangement<F> arrangement;
    std::vector<LabelPart<T>> label_map;  // new label -> old label (factor +-1)
    std::vector<Vec<T>> basis;            // RREF basis of the span of the chosen normals
};

/// A^L for L the intersection of the chosen hyperplanes, essentialized onto
/// the span of their normals (coordinates w.r.t. the RREF basis).
template <class F>
Localization<F> localize(const Arrangement<F>& a, const std::vector<std::size_t>& indices) {
    using T = typename F::value_type;
    const F& f = a.field();
    if (indices.empty()) throw Error("localize needs at least one hyperplane");
    std::vector<Vec<T>> chosen;
    for (auto i : indices) {
        if (i >= a.size()) throw Error("hyperplane index out of range");
        chosen.push_back(a.normal(i));
    }
    auto e = echelon(f, Matrix<T>::from_rows(chosen));
    std::vector<Vec<T>> basis;
    for (std::size_t r = 0; r < e.rank(); ++r) basis.push_back(e.rref.row(r));
    std::vector<Vec<T>> coords;
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < a.size(); ++k) {
        Vec<T> c;
        for (auto p : e.pivots) c.push_back(a.normal(k)[p]);
        Vec<T> back(a.dim(), f.zero());
        for (std::size_t r = 0; r < basis.size(); ++r) back = add(back, scale(c[r], basis[r]));
        if (detail::is_zero_vector(f, sub(back, a.normal(k)))) {
            members.push_back(k);
            coords.push_back(std::move(c));
        }
    }
    auto arr = new_arrangement(f, basis.size(), coords);
    std::vector<LabelPart<T>> map;
    for (std::size_t t = 0; t < members.size(); ++t)
        map.push_back({members[t], arr.flipped()[t] ? f.from_int(-1) : f.one()});
    return Localization<F>{std::move(arr), std::move(map), std::move(basis)};
}

/// Essentializes an arbitrary list of normals onto their span.
template <class F>
Localization<F> essentialize(const F& f, std::size_t dim, const std::vector<Vec<typename F::value_type>>& normals) {
    using T = typename F::value_type;
    auto e = echelon(f, Matrix<T>::from_rows(normals, dim));
    std::vector<Vec<T>> basis, coords;
    for (std::size_t r = 0; r < e.rank(); ++r) basis.push_back(e.rref.row(r));
    for (const auto& z : normals) {
        Vec<T> c;
        for (auto p : e.pivots) c.push_back(z[p]);
        coords.push_back(std::move(c));
    }
    auto arr = new_arrangement(f, basis.size(), coords);
    std::vector<LabelPart<T>> map;
    for (std::size_t t = 0; t < normals.size(); ++t) map.push_back({t, arr.flipped()[t] ? f.from_int(-1) : f.one()});
    return Localization<F>{std::move(arr), std::move(map), std::move(basis)};
}

template <class F>
Arrangement<F> product(const Arrangement<F>& a1, const Arrangement<F>& a2) {
    using T = typename F::value_type;
    const F& f = a1.field();
    if (!(a1.field().spec() == a2.field().spec())) throw FieldMismatch("product of arrangements over different fields");
    const std::size_t d1 = a1.dim(), d2 = a2.dim();
    std::vector<Vec<T>> normals;
    for (const auto& z : a1.normals()) {
        Vec<T> v(d1 + d2, f.zero());
        std::copy(z.begin(), z.end(), v.begin());
        normals.push_back(std::move(v));
    }
    for (const auto& z : a2.normals()) {
        Vec<T> v(d1 + d2, f.zero());
        std::copy(z.begin(), z.end(), v.begin() + static_cast<std::ptrdiff_t>(d1));
        normals.push_back(std::move(v));
    }
    return new_arrangement(f, d1 + d2, std::move(normals));
}

}  // namespace insc
