#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "insc/catalog.hpp"
#include "insc/inscribe.hpp"
#include "insc/profile.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace insc;
using insc::testing_util::random_arrangement;

namespace {

using Q = mpq_class;
const RationalField QQ;
constexpr double pi = std::numbers::pi;

// every kernel vector solves R_L lambda_L = 0 on every flat
template <class F>
void expect_solves_all_flats(const Arrangement<F>& a, const QForm<F>& q, const Vec<typename F::value_type>& lambda) {
    const F& f = a.field();
    for (const auto& flat : ordered_codim2_flats(a)) {
        Vec<typename F::value_type> l;
        for (auto i : flat.indices) l.push_back(lambda[i]);
        for (const auto& x : skew_gram(a, flat, q) * l) EXPECT_TRUE(f.is_zero(x));
    }
}

Arrangement<FloatField> lines_at(const std::vector<double>& angles, double tol = 1e-9) {
    std::vector<Vec<double>> normals;
    for (double t : angles) normals.push_back({-std::sin(t), std::cos(t)});
    return new_arrangement(FloatField(tol), 2, normals);
}

}  // namespace

TEST(SkewGram, EntriesAndSkewness) {
    auto a = gen_A(3);
    auto q = QForm<RationalField>::identity(QQ, 3);
    for (const auto& flat : ordered_codim2_flats(a)) {
        auto r = skew_gram(a, flat, q);
        EXPECT_TRUE(is_skew_symmetric(QQ, r));
        for (std::size_t s = 0; s < flat.size(); ++s)
            for (std::size_t t = s + 1; t < flat.size(); ++t)
                EXPECT_EQ(r(s, t), dot(a.normal(flat.indices[s]), a.normal(flat.indices[t])));
    }
}

TEST(ZInSpace, DihedralSmall) {
    auto q2 = QForm<RationalField>::identity(QQ, 2);
    EXPECT_EQ(z_in_space(std::get<Arrangement<RationalField>>(gen_I2(2)), q2).dim, 2u);
    auto i3 = std::get<Arrangement<QuadraticField>>(gen_I2(3));
    EXPECT_EQ(z_in_space(i3, QForm<QuadraticField>::identity(i3.field(), 2)).dim, 1u);

    auto i4 = std::get<Arrangement<RationalField>>(gen_I2(4));
    auto sp = z_in_space(i4, q2);
    ASSERT_EQ(sp.dim, 2u);
    // brute force: lambda_1 = lambda_3 and lambda_2 = lambda_4 on the regular 4 lines
    auto flats = ordered_codim2_flats(i4);
    ASSERT_EQ(flats.size(), 1u);
    for (const auto& v : sp.basis) {
        Vec<Q> l;
        for (auto i : flats[0].indices) l.push_back(v[i]);
        EXPECT_EQ(l[0], l[2]);
        EXPECT_EQ(l[1], l[3]);
    }
}

TEST(ZInSpace, KernelVectorsSolveEveryFlat) {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_arrangement(rng, 3, 4 + trial % 4, 2);
        auto q = QForm<RationalField>::identity(QQ, 3);
        for (const auto& v : z_in_space(a, q).basis) expect_solves_all_flats(a, q, v);
    }
}

TEST(ZInSpace, TypeAGenericForm) {
    // lambda_ij = t / (a_i a_j)
    auto arr = gen_A(4);
    std::vector<Q> a{Q(2), Q(3), Q(5), Q(7, 2), Q(11, 3)};
    auto q = oracle::type_a_form(a);
    auto sp = z_in_space(arr, q);
    ASSERT_EQ(sp.dim, 1u);
    EXPECT_TRUE(oracle::in_span(QQ, sp.basis, oracle::type_a_lambda(arr, a)));
    auto cone = z_in_cone_sample(arr, q);
    EXPECT_EQ(cone.verdict, Verdict::yes);
}

TEST(ZInSpace, TypeAIdentityHasNoPositiveSample) {
    // identity = diag(1..1) + 0 J: scaling the closed form by a_{n+1} -> 0
    // leaves only the e_i entries
    auto arr = gen_A(3);
    auto q = QForm<RationalField>::identity(QQ, 3);
    auto sp = z_in_space(arr, q);
    ASSERT_EQ(sp.dim, 1u);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        int nz = 0;
        for (const auto& x : arr.normal(i)) nz += sgn(x) != 0;
        EXPECT_EQ(sgn(sp.basis[0][i]) != 0, nz == 1);
    }
    EXPECT_EQ(z_in_cone_sample(arr, q).verdict, Verdict::no);
}

TEST(ZInSpace, TypeDFamily) {
    // D_{4,2} with Q = diag(a1, a2, a, a)
    auto arr = gen_D(4, 2);
    std::vector<Q> ak{Q(2), Q(3)};
    auto q = oracle::type_d_form(4, ak, Q(1));
    auto sp = z_in_space(arr, q);
    ASSERT_EQ(sp.dim, 1u);
    EXPECT_TRUE(oracle::in_span(QQ, sp.basis, oracle::type_d_lambda(arr, ak, Q(1), Q(1), Q(0))));

    auto b3 = gen_D(3, 3);
    std::vector<Q> ak3{Q(2), Q(5), Q(3)};
    auto q3 = oracle::type_d_form(3, ak3, Q(1));
    auto sp3 = z_in_space(b3, q3);
    ASSERT_EQ(sp3.dim, 2u);
    std::vector<Vec<Q>> want{oracle::type_d_lambda(b3, ak3, Q(1), Q(1), Q(0)),
                             oracle::type_d_lambda(b3, ak3, Q(1), Q(0), Q(1))};
    EXPECT_TRUE(oracle::same_span(QQ, sp3.basis, want));
}

TEST(ZInCone, SampleIsPositiveAndInTheSpace) {
    for (auto [name, params] : std::vector<std::pair<std::string, std::vector<long>>>{{"B", {3}}, {"D", {4, 0}}, {"H3", {}}}) {
        auto e = catalog_entry(name, params);
        std::visit(
            [&](const auto& a) {
                using F = std::decay_t<decltype(a.field())>;
                const auto& q = std::get<QForm<F>>(e.metric);
                auto sp = z_in_space(a, q);
                auto cone = cone_sample_from_basis(a.field(), a.size(), sp.basis);
                ASSERT_TRUE(cone.lambda.has_value()) << name;
                for (const auto& x : *cone.lambda) EXPECT_GT(a.field().sign(x), 0);
                EXPECT_TRUE(oracle::in_span(a.field(), sp.basis, *cone.lambda));
            },
            e.arrangement);
    }
}

TEST(ZInCone, EmptyBasis) {
    auto a = gen_A3_10_1();
    auto cone = z_in_cone_sample(a, QForm<QuadraticField>::identity(a.field(), 3));
    EXPECT_FALSE(cone.lambda.has_value());
    EXPECT_EQ(cone.verdict, Verdict::no);
}

TEST(Virtual, OddFlatsAndRankTwoOdd) {
    std::mt19937 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + 2 * (trial % 3);
        auto a = random_arrangement(rng, 2, n, 9);
        auto q = QForm<RationalField>::identity(QQ, 2);
        auto v = virtually_inscribable(a, q);
        EXPECT_EQ(v.verdict, Verdict::yes);
        ASSERT_EQ(v.per_flat.size(), 1u);
        EXPECT_EQ(sgn(v.per_flat[0].pfaffian), 0);
        EXPECT_GE(v.per_flat[0].kernel_dim, 1u);
    }
}

TEST(Virtual, ReferenceExampleWithIdentityFails) {
    auto a = gen_A3_10_1();
    auto v = virtually_inscribable(a, QForm<QuadraticField>::identity(a.field(), 3));
    EXPECT_EQ(v.verdict, Verdict::no);
    EXPECT_EQ(virtually_inscribable(a, A3_10_1_reference_qform()).verdict, Verdict::yes);
}

TEST(Report, ReferenceExample) {
    auto a = gen_A3_10_1();
    auto q = A3_10_1_reference_qform();
    auto r = inscribe_report(a, q);
    EXPECT_EQ(r.flats.size(), 16u);
    ASSERT_EQ(r.zinspc_dim, 1u);
    const auto& f = a.field();
    const auto one = f.one(), m = -(f.make(Q(1, 2), Q(1, 2)) + one);
    EXPECT_EQ(r.zinspc_basis[0], (Vec<Quadratic>{one, one, m, m, m, m, m, one, one, one}));
    EXPECT_FALSE(r.zincone_sample.has_value());
    EXPECT_FALSE(q.is_positive_definite());
}

// the edge-matrix route and the per-flat route describe the same space
TEST(EdgeMatrix, AgreesWithFlats) {
    std::mt19937 rng(53);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t d = 3 + trial % 2;
        auto a = random_arrangement(rng, d, d + 2 + trial % 3, 2);
        auto q = QForm<RationalField>::identity(QQ, d);
        auto k1 = kernel_basis(QQ, edge_matrix(a, q));
        auto k2 = z_in_space(a, q).basis;
        EXPECT_TRUE(oracle::same_span(QQ, k1, k2));
    }
    auto a = gen_D(3, 3);
    auto q = QForm<RationalField>::identity(QQ, 3);
    EXPECT_TRUE(oracle::same_span(QQ, kernel_basis(QQ, edge_matrix(a, q)), z_in_space(a, q).basis));
}

TEST(EdgeMatrix, SmallCases) {
    // coordinate lines: all cross products vanish
    auto c = new_arrangement(QQ, 2, std::vector<Vec<Q>>{{1, 0}, {0, 1}});
    auto q = QForm<RationalField>::identity(QQ, 2);
    auto t = edge_matrix(c, q);
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) EXPECT_EQ(sgn(t(i, j)), 0);
    // three lines: kernel spanned by (r23, -r13, r12) in flat order
    auto a = new_arrangement(QQ, 2, std::vector<Vec<Q>>{{1, 0}, {1, 2}, {-1, 3}});
    auto flat = ordered_codim2_flats(a)[0];
    auto r = skew_gram(a, flat, q);
    Vec<Q> v(3);
    v[flat.indices[0]] = r(1, 2);
    v[flat.indices[1]] = -r(0, 2);
    v[flat.indices[2]] = r(0, 1);
    EXPECT_TRUE(oracle::same_span(QQ, kernel_basis(QQ, edge_matrix(a, q)), {v}));
}

TEST(Profile, RegularLines) {
    auto i4 = lines_at({0, pi / 4, pi / 2, 3 * pi / 4});
    auto p = reduced_profile(i4);
    ASSERT_EQ(p.size(), 4u);
    for (double b : p.beta) EXPECT_NEAR(b, pi / 4, 1e-12);
    EXPECT_EQ(profile_inscribable(p).verdict, Verdict::yes);

    auto p2 = reduced_profile(lines_at({0, pi / 2}));
    EXPECT_NEAR(p2.beta[0], pi / 2, 1e-12);
    EXPECT_EQ(profile_inscribable(p2).verdict, Verdict::yes);
}

TEST(Profile, HandComputedGaps) {
    auto p = reduced_profile(lines_at({0, pi / 6, pi / 2}));
    ASSERT_EQ(p.size(), 3u);
    EXPECT_NEAR(p.beta[0], pi / 6, 1e-12);
    EXPECT_NEAR(p.beta[1], pi / 3, 1e-12);
    EXPECT_NEAR(p.beta[2], pi / 2, 1e-12);
    auto r = reduced_profile(lines_at({0, pi / 3, 2 * pi / 3}));
    for (double b : r.beta) EXPECT_NEAR(b, pi / 3, 1e-12);
    EXPECT_EQ(profile_inscribable(r).verdict, Verdict::yes);
}

TEST(Profile, SmallCases) {
    // n = 3: all angles below pi/2
    EXPECT_EQ(profile_inscribable(make_profile({1.9, 0.6, pi - 2.5})).verdict, Verdict::no);
    EXPECT_EQ(profile_inscribable(make_profile({1.0, 1.2, pi - 2.2})).verdict, Verdict::yes);
    // n = 4: beta_1 + beta_3 = pi / 2
    EXPECT_EQ(profile_inscribable(make_profile({0.3, 1.0, pi / 2 - 0.3, pi / 2 - 1.0})).verdict, Verdict::yes);
    EXPECT_EQ(profile_inscribable(make_profile({0.3, 1.0, pi / 2 - 0.2, pi / 2 - 1.1})).verdict, Verdict::no);
    // n = 2: only the rectangle
    EXPECT_EQ(profile_inscribable(make_profile({1.0, pi - 1.0})).verdict, Verdict::no);
}

TEST(Profile, SmallCasesAgainstClosedForms) {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        // n = 3
        double x = u(rng), y = u(rng), z = u(rng), s = (x + y + z) / pi;
        std::vector<double> b3{x / s, y / s, z / s};
        bool expect3 = b3[0] < pi / 2 && b3[1] < pi / 2 && b3[2] < pi / 2;
        auto v3 = profile_inscribable(make_profile(b3));
        if (v3.verdict != Verdict::inconclusive) {
            EXPECT_EQ(v3.verdict == Verdict::yes, expect3);
        }
        // n = 4 on the equality surface: always inscribable
        double p = u(rng) * pi / 2 * 0.98, q = u(rng) * pi / 2 * 0.98;
        if (p <= 0.01 || q <= 0.01) continue;
        EXPECT_EQ(profile_inscribable(make_profile({p, q, pi / 2 - p, pi / 2 - q})).verdict, Verdict::yes);
    }
}

TEST(Profile, ThreeLinesBothMethods) {
    auto a = lines_at({0.0, 0.2, 1.8});
    auto v = profile_inscribable(reduced_profile(a));
    EXPECT_EQ(v.verdict, Verdict::no);
    EXPECT_EQ(z_in_cone_sample(a, QForm<FloatField>::identity(a.field(), 2)).verdict, Verdict::no);

    auto b = lines_at({0.0, 1.0, 2.1});
    EXPECT_EQ(profile_inscribable(reduced_profile(b)).verdict, Verdict::yes);
    EXPECT_EQ(z_in_cone_sample(b, QForm<FloatField>::identity(b.field(), 2)).verdict, Verdict::yes);
}

TEST(Profile, Errors) {
    EXPECT_THROW(make_profile({1.0, 1.0}), InvalidProfile);
    EXPECT_THROW(make_profile({pi}), InvalidProfile);
    EXPECT_THROW(make_profile({-0.5, pi + 0.5}), InvalidProfile);
    EXPECT_THROW(reduced_profile(gen_A(3)), NotRank2);
    EXPECT_THROW(symmetrize_face_angles({1, 1, 1}), InvalidAngles);
    EXPECT_THROW(symmetrize_face_angles({1, 1, 1, 1}), InvalidAngles);
}

TEST(FaceAngles, SymmetrizationKeepsTheProfile) {
    // opposite edges parallel: alpha_i + alpha_{i+1} = alpha_{n+i} + alpha_{n+i+1};
    // for odd n that allows alpha_{n+i} = alpha_i + (-1)^i eps
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> u(0.2, 1.0), e(-0.15, 0.15);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + 2 * (trial % 3);
        const double eps = e(rng);
        std::vector<double> alpha(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            alpha[i] = u(rng);
            alpha[n + i] = alpha[i] + (i % 2 == 0 ? eps : -eps);
        }
        double total = 0;
        for (double a : alpha) total += a;
        for (auto& a : alpha) a *= 2 * pi / total;
        auto sym = symmetrize_face_angles(alpha);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(sym[i], sym[n + i], 1e-12);
        auto p0 = profile_from_face_angles(alpha), p1 = profile_from_face_angles(sym);
        ASSERT_EQ(p0.size(), p1.size());
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(p0.beta[i], p1.beta[i], 1e-9);
    }
}

TEST(FaceAngles, HexagonAndSymmetricInput) {
    std::vector<double> a{0.9, 1.1, 1.2, 1.0, 1.0, 1.1};
    double t = 0;
    for (double x : a) t += x;
    for (auto& x : a) x *= 2 * pi / t;
    auto s = symmetrize_face_angles(a);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(s[i], (a[i] + a[i + 3]) / 2, 1e-15);
        EXPECT_NEAR(s[i + 3], s[i], 1e-15);
    }
    EXPECT_EQ(symmetrize_face_angles(s), s);
}
