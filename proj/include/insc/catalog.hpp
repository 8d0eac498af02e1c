#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "insc/arrangement.hpp"
#include "insc/errors.hpp"
#include "insc/field.hpp"
#include "insc/qform.hpp"

namespace insc {

using AnyArrangement = std::variant<Arrangement<RationalField>, Arrangement<QuadraticField>, Arrangement<FloatField>>;
using AnyQForm = std::variant<QForm<RationalField>, QForm<QuadraticField>, QForm<FloatField>>;

inline FieldSpec field_of(const AnyArrangement& a) {
    return std::visit([](const auto& x) { return x.field().spec(); }, a);
}

namespace detail {

inline Vec<mpq_class> unit(std::size_t d, std::size_t i, long c = 1) {
    Vec<mpq_class> v(d, 0);
    v[i] = c;
    return v;
}

}  // namespace detail

/// Type A_n: f_ij = e_i - e_j (i < j <= n) and f_{i,n+1} = e_i, in
/// lexicographic pair order.
inline Arrangement<RationalField> gen_A(std::size_t n) {
    if (n < 2) throw Error("gen_A needs n >= 2");
    std::vector<Vec<mpq_class>> normals;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j <= n; ++j) {
            Vec<mpq_class> v = detail::unit(n, i);
            if (j < n) v[j] = -1;
            normals.push_back(std::move(v));
        }
    return new_arrangement(RationalField{}, n, std::move(normals));
}

/// D_{n,s}: e_1..e_s, then e_i - e_j, e_i + e_j for i < j. s = n is B_n and
/// s = 0 is D_n.
inline Arrangement<RationalField> gen_D(std::size_t n, std::size_t s) {
    if (n < 2 || s > n) throw Error("gen_D needs n >= 2 and 0 <= s <= n");
    std::vector<Vec<mpq_class>> normals;
    for (std::size_t i = 0; i < s; ++i) normals.push_back(detail::unit(n, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec<mpq_class> m = detail::unit(n, i), p = detail::unit(n, i);
            m[j] = -1;
            p[j] = 1;
            normals.push_back(std::move(m));
            normals.push_back(std::move(p));
        }
    return new_arrangement(RationalField{}, n, std::move(normals));
}

/// I_2(k): normals at angles j pi / k. Exact over Q for k = 2, 4 and over
/// Q(sqrt 3) for k = 3, 6; float otherwise.
inline AnyArrangement gen_I2(std::size_t k) {
    if (k < 2) throw Error("gen_I2 needs k >= 2");
    if (k == 2) return new_arrangement(RationalField{}, 2, {{1, 0}, {0, 1}});
    if (k == 4) return new_arrangement(RationalField{}, 2, {{1, 0}, {1, 1}, {0, 1}, {-1, 1}});
    if (k == 3 || k == 6) {
        QuadraticField f(3);
        const mpq_class h(1, 2);
        auto q = [&](mpq_class a, mpq_class b) { return f.make(a, b); };
        std::vector<Vec<Quadratic>> normals;
        if (k == 3) {
            normals = {{q(1, 0), q(0, 0)}, {q(h, 0), q(0, h)}, {q(-h, 0), q(0, h)}};
        } else {
            normals = {{q(1, 0), q(0, 0)}, {q(0, h), q(h, 0)}, {q(h, 0), q(0, h)},
                       {q(0, 0), q(1, 0)}, {q(-h, 0), q(0, h)}, {q(0, -h), q(h, 0)}};
        }
        return new_arrangement(f, 2, std::move(normals));
    }
    std::vector<Vec<double>> normals;
    for (std::size_t j = 0; j < k; ++j) {
        const double t = std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
        normals.push_back({std::cos(t), std::sin(t)});
    }
    return new_arrangement(FloatField{}, 2, std::move(normals));
}

/// H_3 over Q(sqrt 5): coordinate vectors and the even permutations of
/// (1, tau, tau - 1) / 2 with all sign patterns, one per line.
inline Arrangement<QuadraticField> gen_H3() {
    QuadraticField f(5);
    const auto half = f.from_rational(mpq_class(1, 2));
    const auto tau = f.make(mpq_class(1, 2), mpq_class(1, 2));
    const auto tau1 = tau - f.one();
    std::vector<Vec<Quadratic>> normals;
    for (std::size_t i = 0; i < 3; ++i) {
        Vec<Quadratic> v(3, f.zero());
        v[i] = f.one();
        normals.push_back(v);
    }
    for (int s1 : {1, -1})
        for (int s2 : {1, -1})
            for (std::size_t shift = 0; shift < 3; ++shift) {
                Vec<Quadratic> base{half, half * tau * f.from_int(s1), half * tau1 * f.from_int(s2)};
                Vec<Quadratic> v(3);
                for (std::size_t c = 0; c < 3; ++c) v[(c + shift) % 3] = base[c];
                normals.push_back(v);
            }
    return new_arrangement(f, 3, std::move(normals));
}

/// F_4: e_i, e_i +- e_j and (1, +-1, +-1, +-1) / 2.
inline Arrangement<RationalField> gen_F4() {
    std::vector<Vec<mpq_class>> normals;
    for (std::size_t i = 0; i < 4; ++i) normals.push_back(detail::unit(4, i));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (int s : {-1, 1}) {
                auto v = detail::unit(4, i);
                v[j] = s;
                normals.push_back(v);
            }
    const mpq_class h(1, 2);
    for (int mask = 0; mask < 8; ++mask) {
        Vec<mpq_class> v{h, h, h, h};
        for (int b = 0; b < 3; ++b)
            if (mask & (1 << b)) v[b + 1] = -h;
        normals.push_back(v);
    }
    return new_arrangement(RationalField{}, 4, std::move(normals));
}

/// E_8: e_i +- e_j and the half-integer roots with an even number of minus
/// signs, one per pair +-r (first coordinate +1/2).
inline Arrangement<RationalField> gen_E8() {
    std::vector<Vec<mpq_class>> normals;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j)
            for (int s : {-1, 1}) {
                auto v = detail::unit(8, i);
                v[j] = s;
                normals.push_back(v);
            }
    const mpq_class h(1, 2);
    for (int mask = 0; mask < 128; ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) % 2 == 1) continue;
        Vec<mpq_class> v(8, h);
        for (int b = 0; b < 7; ++b)
            if (mask & (1 << b)) v[b + 1] = -h;
        normals.push_back(v);
    }
    return new_arrangement(RationalField{}, 8, std::move(normals));
}

/// E_7 and E_6 as localizations of E_8: the roots orthogonal to e7 + e8, and
/// to both e7 + e8 and e6 + e8. Coordinates are w.r.t. the RREF basis of the
/// span, so the Euclidean metric becomes the Gram matrix of that basis.
inline Localization<RationalField> gen_E_sub(int rank) {
    if (rank != 6 && rank != 7) throw Error("gen_E_sub handles E6 and E7");
    auto e8 = gen_E8();
    Vec<mpq_class> a(8, 0), b(8, 0);
    a[6] = a[7] = 1;
    b[5] = b[7] = 1;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < e8.size(); ++i) {
        bool keep = dot(e8.normal(i), a) == 0;
        if (rank == 6) keep = keep && dot(e8.normal(i), b) == 0;
        if (keep) chosen.push_back(i);
    }
    return localize(e8, chosen);
}

/// The reference rank-3 arrangement with 10 hyperplanes over Q(sqrt 5).
inline Arrangement<QuadraticField> gen_A3_10_1() {
    QuadraticField f(5);
    const auto tau = f.make(mpq_class(1, 2), mpq_class(1, 2));
    const auto o = f.one(), z = f.zero(), two = f.from_int(2);
    std::vector<Vec<Quadratic>> normals{
        {two * tau + o, two * tau, tau},
        {two * tau + two, two * tau + o, tau + o},
        {o, o, o},
        {tau + o, tau + o, tau},
        {two * tau, two * tau, tau},
        {tau + o, tau + o, o},
        {o, o, z},
        {z, o, z},
        {o, z, z},
        {tau + o, tau, tau},
    };
    return new_arrangement(f, 3, std::move(normals));
}

/// The bilinear form that accompanies the reference example (scaled by t = 10).
inline QForm<QuadraticField> A3_10_1_reference_qform() {
    QuadraticField f(5);
    const auto tau = f.make(mpq_class(1, 2), mpq_class(1, 2));
    const auto o = f.one(), two = f.from_int(2);
    const auto d = -two * tau + o, p = tau + two, r = tau - f.from_int(3);
    return QForm<QuadraticField>(f, Matrix<Quadratic>::from_rows({{d, p, -p}, {p, d, r}, {-p, r, f.from_int(10)}}));
}

/// R_n (2n hyperplanes): mirrors (cos pi j/n, sin pi j/n, 0) and edges
/// (-sin 2 pi j/n, cos 2 pi j/n, 1), j = 0..n-1.
inline Arrangement<FloatField> gen_R(std::size_t n, double tol = 1e-9) {
    if (n < 3) throw Error("R_n needs n >= 3");
    constexpr double pi = std::numbers::pi;
    std::vector<Vec<double>> normals;
    for (std::size_t j = 0; j < n; ++j) {
        const double t = pi * static_cast<double>(j) / static_cast<double>(n);
        normals.push_back({std::cos(t), std::sin(t), 0.0});
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double t = 2 * pi * static_cast<double>(j) / static_cast<double>(n);
        normals.push_back({-std::sin(t), std::cos(t), 1.0});
    }
    return new_arrangement(FloatField(tol), 3, std::move(normals));
}

/// R'_m = R_{2m} plus the plane at infinity (4m + 1 hyperplanes).
inline Arrangement<FloatField> gen_R_prime(std::size_t m, double tol = 1e-9) {
    if (m < 2) throw Error("R'_m needs m >= 2");
    auto r = gen_R(2 * m, tol);
    auto normals = r.normals();
    normals.push_back({0.0, 0.0, 1.0});
    return new_arrangement(FloatField(tol), 3, std::move(normals));
}

/// Sporadic entries by name: H3, F4, E6, E7, E8, A3_10_1.
inline AnyArrangement gen_sporadic(const std::string& name) {
    if (name == "H3") return gen_H3();
    if (name == "F4") return gen_F4();
    if (name == "E6") return gen_E_sub(6).arrangement;
    if (name == "E7") return gen_E_sub(7).arrangement;
    if (name == "E8") return gen_E8();
    if (name == "A3_10_1") return gen_A3_10_1();
    throw UnknownName(name);
}

enum class FamilyKind { even, odd };

/// even(n): R_n with 2n hyperplanes; odd(m): R'_m with 4m + 1.
inline Arrangement<FloatField> gen_infinite_family(FamilyKind kind, std::size_t k, double tol = 1e-9) {
    return kind == FamilyKind::even ? gen_R(k, tol) : gen_R_prime(k, tol);
}

// ---------------------------------------------------------------------------
// named entries with metadata

struct CatalogEntry {
    std::string name;
    std::vector<long> params;
    AnyArrangement arrangement;
    AnyQForm metric;  // natural Euclidean metric in the stored coordinates
    std::size_t n = 0;
    std::size_t rank = 0;
    std::optional<std::size_t> expected_zinspc_dim;
};

namespace detail {

template <class F>
CatalogEntry entry(std::string name, std::vector<long> params, Arrangement<F> a, std::optional<std::size_t> dim) {
    auto q = QForm<F>::identity(a.field(), a.dim());
    CatalogEntry e{std::move(name), std::move(params), a, q, a.size(), a.dim(), dim};
    return e;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"A", "B", "D", "I2", "H3", "F4", "E6", "E7", "E8", "A3_10_1", "R", "Rprime"};
    return names;
}

/// Looks up a catalog entry. Parameters: A n; B n; D n s; I2 k; R n; Rprime m.
inline CatalogEntry catalog_entry(const std::string& name, const std::vector<long>& params = {}) {
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            throw Error(name + " takes " + std::to_string(count) + " parameter(s), got " + std::to_string(params.size()));
        for (long p : params)
            if (p < 0) throw Error("negative catalog parameter");
    };
    if (name == "A") {
        need(1);
        // Gram form of the roots e_i - e_{n+1} in R^{n+1}: I + J
        auto a = gen_A(params[0]);
        const std::size_t d = a.dim();
        Matrix<mpq_class> g(d, d, mpq_class(1));
        for (std::size_t i = 0; i < d; ++i) g(i, i) = 2;
        CatalogEntry e{"A", params, a, QForm<RationalField>(RationalField{}, g), a.size(), d, 1};
        return e;
    }
    if (name == "B") {
        need(1);
        return detail::entry("B", params, gen_D(params[0], params[0]), 2);
    }
    if (name == "D") {
        need(2);
        std::optional<std::size_t> dim;
        if (params[1] == params[0]) dim = 2;
        else if (params[1] == 0 && params[0] >= 4) dim = 1;
        return detail::entry("D", params, gen_D(params[0], params[1]), dim);
    }
    if (name == "I2") {
        need(1);
        const std::size_t k = params[0];
        return std::visit([&](auto&& a) { return detail::entry("I2", params, a, k % 2 == 1 ? 1 : 2); }, gen_I2(k));
    }
    if (name == "H3") {
        need(0);
        return detail::entry("H3", params, gen_H3(), 1);
    }
    if (name == "F4") {
        need(0);
        return detail::entry("F4", params, gen_F4(), 2);
    }
    if (name == "E8") {
        need(0);
        return detail::entry("E8", params, gen_E8(), 1);
    }
    if (name == "E6" || name == "E7") {
        need(0);
        auto loc = gen_E_sub(name == "E6" ? 6 : 7);
        auto metric = QForm<RationalField>::identity(RationalField{}, 8).induced(loc.basis);
        CatalogEntry e{name, params, loc.arrangement, metric, loc.arrangement.size(), loc.arrangement.dim(), 1};
        return e;
    }
    if (name == "A3_10_1") {
        need(0);
        return detail::entry("A3_10_1", params, gen_A3_10_1(), std::nullopt);
    }
    if (name == "R") {
        need(1);
        return detail::entry("R", params, gen_R(params[0]), std::nullopt);
    }
    if (name == "Rprime") {
        need(1);
        return detail::entry("Rprime", params, gen_R_prime(params[0]), std::nullopt);
    }
    throw UnknownName(name);
}

}  // namespace insc
