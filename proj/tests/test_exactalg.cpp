#include <gtest/gtest.h>

#include <random>

#include "insc/field.hpp"
#include "insc/linalg.hpp"
#include "insc/simplex.hpp"
#include "test_util.hpp"

using namespace insc;
using insc::testing_util::random_rational;

namespace {

// independent sign oracle: evaluate with 1024-bit floats
int sign_by_mpf(const mpq_class& a, const mpq_class& b, long m) {
    mpf_class fa(a, 1024), fb(b, 1024), r(m, 1024);
    r = sqrt(r);
    mpf_class v = fa + fb * r;
    return sgn(v);
}

Quadratic random_quadratic(std::mt19937& rng, long m) {
    return Quadratic(random_rational(rng), random_rational(rng), m);
}

}  // namespace

TEST(Scalar, RationalParseFormat) {
    RationalField f;
    EXPECT_EQ(f.format(f.parse("2/4")), "1/2");
    EXPECT_EQ(f.format(f.parse("-6/-4")), "3/2");
    EXPECT_EQ(f.format(f.parse("7")), "7");
    EXPECT_EQ(f.format(f.parse("+3/9")), "1/3");
    EXPECT_THROW(f.parse("1/0"), ParseError);
    EXPECT_THROW(f.parse("abc"), ParseError);
    EXPECT_THROW(f.parse("1.5"), ParseError);
    EXPECT_THROW(f.parse(""), ParseError);
}

TEST(Scalar, QuadraticParseForms) {
    QuadraticField f(5);
    EXPECT_EQ(f.parse("1/2+3/4*rt"), f.make(mpq_class(1, 2), mpq_class(3, 4)));
    EXPECT_EQ(f.parse("1/2-3/4*rt"), f.make(mpq_class(1, 2), mpq_class(-3, 4)));
    EXPECT_EQ(f.parse("rt"), f.root());
    EXPECT_EQ(f.parse("-rt"), -f.root());
    EXPECT_EQ(f.parse("2+rt"), f.make(2, 1));
    EXPECT_EQ(f.parse("-3/2*rt"), f.make(0, mpq_class(-3, 2)));
    EXPECT_EQ(f.parse("-1-rt"), f.make(-1, -1));
    EXPECT_EQ(f.parse("4"), f.from_int(4));
    EXPECT_THROW(f.parse("1+*rt"), ParseError);
    EXPECT_THROW(f.parse("x+rt"), ParseError);
}

TEST(Scalar, QuadraticRoundTrip) {
    std::mt19937 rng(7);
    QuadraticField f(3);
    for (int i = 0; i < 200; ++i) {
        auto x = random_quadratic(rng, 3);
        EXPECT_EQ(f.parse(f.format(x)), x) << f.format(x);
    }
}

TEST(Scalar, QuadraticSignExact) {
    QuadraticField f(5);
    EXPECT_EQ(f.sign(f.make(3, -1)), 1);    // 3 - sqrt5
    EXPECT_EQ(f.sign(f.make(-3, 1)), -1);
    EXPECT_EQ(f.sign(f.make(2, -1)), -1);   // 2 - sqrt5
    EXPECT_EQ(f.sign(f.make(0, 0)), 0);
    // tau^2 - tau - 1 = 0
    auto tau = f.make(mpq_class(1, 2), mpq_class(1, 2));
    EXPECT_TRUE(f.is_zero(tau * tau - tau - f.one()));
}

TEST(Scalar, QuadraticSignMatchesHighPrecision) {
    std::mt19937 rng(11);
    for (long m : {2L, 3L, 5L, 7L, 13L}) {
        for (int i = 0; i < 300; ++i) {
            auto x = random_quadratic(rng, m);
            EXPECT_EQ(x.sign(), sign_by_mpf(x.rational_part(), x.root_part(), m)) << x;
        }
    }
}

TEST(Scalar, FieldAxiomsRandomized) {
    std::mt19937 rng(3);
    QuadraticField f(5);
    for (int i = 0; i < 300; ++i) {
        auto x = random_quadratic(rng, 5), y = random_quadratic(rng, 5), z = random_quadratic(rng, 5);
        EXPECT_EQ((x + y) + z, x + (y + z));
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_EQ(x * (y + z), x * y + x * z);
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ(f.sign(x * y), f.sign(x) * f.sign(y));
        if (!f.is_zero(x)) {
            EXPECT_EQ(x * x.inverse(), f.one());
        }
        if (!f.is_zero(y)) {
            EXPECT_EQ((x / y) * y, x);
        }
    }
    RationalField q;
    for (int i = 0; i < 300; ++i) {
        mpq_class x = random_rational(rng), y = random_rational(rng);
        EXPECT_EQ(q.sign(x * y), q.sign(x) * q.sign(y));
    }
}

TEST(Scalar, MixedRadicandsRejected) {
    Quadratic a(1, 1, 2), b(1, 1, 3);
    EXPECT_THROW(a + b, FieldMismatch);
    EXPECT_THROW(FieldSpec::quadratic(4), Error);
    EXPECT_THROW(FieldSpec::quadratic(1), Error);
    EXPECT_THROW(FieldSpec::floating(0), Error);
}

TEST(Scalar, FloatToleranceAndParse) {
    FloatField f(1e-9);
    EXPECT_TRUE(f.is_zero(5e-10));
    EXPECT_EQ(f.sign(-2e-9), -1);
    EXPECT_DOUBLE_EQ(f.parse("0.25"), 0.25);
    EXPECT_DOUBLE_EQ(f.parse("1/4"), 0.25);
    EXPECT_DOUBLE_EQ(f.parse("-1e-3"), -1e-3);
    EXPECT_THROW(f.parse("1.0x"), ParseError);
}

TEST(Kernel, GenericSkew3) {
    RationalField f;
    mpq_class r12(2, 3), r13(-5, 7), r23(3, 1);
    auto m = Matrix<mpq_class>::from_rows({{0, r12, r13}, {-r12, 0, r23}, {-r13, -r23, 0}});
    auto k = kernel_basis(f, m);
    ASSERT_EQ(k.size(), 1u);
    // proportional to (r23, -r13, r12), normalized so the free last entry is 1
    EXPECT_EQ(k[0][0], r23 / r12);
    EXPECT_EQ(k[0][1], -r13 / r12);
    EXPECT_EQ(k[0][2], 1);
}

TEST(Kernel, ZeroMatrixGivesStandardBasis) {
    RationalField f;
    auto k = kernel_basis(f, Matrix<mpq_class>(3, 3, 0));
    ASSERT_EQ(k.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(k[i][j], i == j ? 1 : 0);
}

TEST(Kernel, RegularFourLinesOverSqrt2) {
    QuadraticField f(2);
    auto h = f.make(0, mpq_class(1, 2));  // sqrt2 / 2
    auto z = f.zero();
    // skew-Gram of unit normals at 0, pi/4, pi/2, 3pi/4
    auto m = Matrix<Quadratic>::from_rows({{z, h, z, -h}, {-h, z, h, z}, {z, -h, z, h}, {h, z, -h, z}});
    auto k = kernel_basis(f, m);
    ASSERT_EQ(k.size(), 2u);
    EXPECT_EQ(k[0], (Vec<Quadratic>{f.one(), z, f.one(), z}));
    EXPECT_EQ(k[1], (Vec<Quadratic>{z, f.one(), z, f.one()}));
}

TEST(Kernel, RandomAnnihilatedAndRankNullity) {
    std::mt19937 rng(5);
    RationalField f;
    std::uniform_int_distribution<int> dim(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = dim(rng), c = dim(rng);
        Matrix<mpq_class> m(r, c);
        // low-rank products hit the interesting cases
        std::size_t inner = std::uniform_int_distribution<int>(1, 4)(rng);
        Matrix<mpq_class> a(r, inner), b(inner, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < inner; ++j) a(i, j) = random_rational(rng);
        for (std::size_t i = 0; i < inner; ++i)
            for (std::size_t j = 0; j < c; ++j) b(i, j) = random_rational(rng);
        m = a * b;
        auto k = kernel_basis(f, m);
        EXPECT_EQ(k.size(), c - rank(f, m));
        for (auto& v : k)
            for (auto& x : m * v) EXPECT_EQ(x, 0);
        EXPECT_EQ(rank(f, m.transpose()), rank(f, m));
    }
}

TEST(Kernel, FloatModeMatchesExactDimension) {
    std::mt19937 rng(9);
    RationalField q;
    FloatField fl;
    for (int trial = 0; trial < 100; ++trial) {
        Matrix<mpq_class> a(4, 2), b(2, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 2; ++j) a(i, j) = random_rational(rng);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 5; ++j) b(i, j) = random_rational(rng);
        auto m = a * b;
        Matrix<double> md(4, 5);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 5; ++j) md(i, j) = m(i, j).get_d();
        auto ke = kernel_basis(q, m);
        auto kf = kernel_basis(fl, md);
        ASSERT_EQ(ke.size(), kf.size());
        for (std::size_t v = 0; v < ke.size(); ++v)
            for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(kf[v][j], ke[v][j].get_d(), 1e-7);
    }
}

TEST(Determinant, MatchesLaplaceExpansion) {
    std::mt19937 rng(13);
    RationalField f;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = std::uniform_int_distribution<int>(0, 6)(rng);
        Matrix<mpq_class> m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = trial % 3 == 0 && j == 0 ? mpq_class(0) : random_rational(rng);
        EXPECT_EQ(determinant(f, m), testing_util::determinant_expansion(m));
    }
}

TEST(Pfaffian, SmallExamples) {
    RationalField f;
    mpq_class r(7, 3);
    EXPECT_EQ(pfaffian(f, Matrix<mpq_class>::from_rows({{0, r}, {-r, 0}})), r);
    EXPECT_EQ(pfaffian(f, Matrix<mpq_class>(0, 0)), 1);
    mpq_class a = 2, b = -3, c = 5, d = 7, e = mpq_class(1, 2), g = 11;
    // r12 r34 - r13 r24 + r14 r23
    auto s = Matrix<mpq_class>::from_rows({{0, a, b, c}, {-a, 0, d, e}, {-b, -d, 0, g}, {-c, -e, -g, 0}});
    EXPECT_EQ(pfaffian(f, s), a * g - b * e + c * d);
    auto odd = Matrix<mpq_class>::from_rows({{0, a, b}, {-a, 0, c}, {-b, -c, 0}});
    EXPECT_EQ(pfaffian(f, odd), 0);
    EXPECT_THROW(pfaffian(f, Matrix<mpq_class>::from_rows({{0, 1}, {1, 0}})), NotSkewSymmetric);
}

TEST(Pfaffian, SquareIsDeterminantAndMatchesExpansion) {
    std::mt19937 rng(17);
    RationalField f;
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = std::uniform_int_distribution<int>(1, 8)(rng);
        auto s = testing_util::random_skew(rng, n);
        if (trial % 4 == 0 && n > 1) {  // force pivot swaps
            for (std::size_t j = 0; j < n; ++j) {
                s(0, j) = 0;
                s(j, 0) = 0;
            }
            s(0, n - 1) = 2;
            s(n - 1, 0) = -2;
        }
        mpq_class pf = pfaffian(f, s);
        EXPECT_EQ(pf * pf, determinant(f, s));
        if (n <= 6) {
            EXPECT_EQ(pf, testing_util::pfaffian_expansion(s));
        }
    }
}

TEST(Pfaffian, QuadraticField) {
    std::mt19937 rng(19);
    QuadraticField f(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 * std::uniform_int_distribution<int>(1, 3)(rng);
        Matrix<Quadratic> s(n, n, f.zero());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                s(i, j) = random_quadratic(rng, 5);
                s(j, i) = -s(i, j);
            }
        auto pf = pfaffian(f, s);
        EXPECT_EQ(pf * pf, determinant(f, s));
        EXPECT_EQ(pf, testing_util::pfaffian_expansion(s));
    }
}

TEST(Simplex, Examples) {
    RationalField f;
    auto id = Matrix<mpq_class>::identity(2, 0, 1);
    auto r = strict_interior_point(f, id);
    ASSERT_TRUE(r.point);
    EXPECT_GT((*r.point)[0], 0);
    EXPECT_GT((*r.point)[1], 0);
    EXPECT_EQ(r.verdict, Verdict::yes);

    auto contra = Matrix<mpq_class>::from_rows({{1}, {-1}});
    auto r2 = strict_interior_point(f, contra);
    EXPECT_FALSE(r2.point);
    EXPECT_LE(r2.epsilon, 0);
    EXPECT_EQ(r2.verdict, Verdict::no);

    mpq_class r12 = 2, r13 = -3, r23 = 5;
    auto col = Matrix<mpq_class>::from_rows({{r23}, {-r13}, {r12}});
    auto r3 = strict_interior_point(f, col);
    ASSERT_TRUE(r3.point);
    for (auto& v : col * *r3.point) EXPECT_GT(v, 0);
}

TEST(Simplex, RandomCertificates) {
    std::mt19937 rng(23);
    RationalField f;
    std::uniform_real_distribution<double> u(-1, 1);
    int found = 0, absent = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = std::uniform_int_distribution<int>(1, 6)(rng);
        std::size_t k = std::uniform_int_distribution<int>(1, 3)(rng);
        Matrix<mpq_class> b(n, k);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j) b(i, j) = random_rational(rng, -4, 4, 2);
        auto res = strict_interior_point(f, b);
        if (res.point) {
            ++found;
            for (auto& v : b * *res.point) EXPECT_GT(v, 0);
            EXPECT_GT(res.epsilon, 0);
        } else {
            ++absent;
            EXPECT_LE(res.epsilon, 0);
            // sampling oracle: no random direction may succeed
            for (int s = 0; s < 200; ++s) {
                Vec<mpq_class> mu(k);
                for (auto& x : mu) x = mpq_class(u(rng));
                bool all = true;
                for (auto& v : b * mu) all = all && v > 0;
                EXPECT_FALSE(all);
            }
        }
    }
    EXPECT_GT(found, 20);
    EXPECT_GT(absent, 20);
}

TEST(Simplex, FloatInconclusiveNearBoundary) {
    FloatField f(1e-9);
    // cone {mu : mu > 0, -mu + 1e-13 mu... } degenerate sliver
    auto b = Matrix<double>::from_rows({{1, 0}, {-1, 1e-12}});
    auto r = strict_interior_point(f, b);
    EXPECT_NE(r.verdict, Verdict::yes);
    auto ok = strict_interior_point(f, Matrix<double>::from_rows({{1, 0}, {0, 1}}));
    EXPECT_EQ(ok.verdict, Verdict::yes);
}
