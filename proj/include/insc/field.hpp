#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "insc/errors.hpp"

namespace insc {

enum class FieldKind { rational, quadratic, floating };

/// Which ordered field an object lives over.
struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    long radicand = 0;      // quadratic only
    double tolerance = 0;   // float only

    static FieldSpec rational() { return {}; }
    static FieldSpec quadratic(long m);
    static FieldSpec floating(double tol = 1e-9);

    bool exact() const { return kind != FieldKind::floating; }
    std::string to_string() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == FieldKind::quadratic) return a.radicand == b.radicand;
        if (a.kind == FieldKind::floating) return a.tolerance == b.tolerance;
        return true;
    }
};

inline bool is_squarefree(long m) {
    if (m < 2) return false;
    for (long p = 2; p * p <= m; ++p)
        if (m % (p * p) == 0) return false;
    return true;
}

inline FieldSpec FieldSpec::quadratic(long m) {
    if (!is_squarefree(m))
        throw Error("quadratic field radicand must be square-free and >= 2, got " + std::to_string(m));
    FieldSpec s;
    s.kind = FieldKind::quadratic;
    s.radicand = m;
    return s;
}

inline FieldSpec FieldSpec::floating(double tol) {
    if (!(tol > 0)) throw Error("float tolerance must be positive");
    FieldSpec s;
    s.kind = FieldKind::floating;
    s.tolerance = tol;
    return s;
}

inline std::string FieldSpec::to_string() const {
    switch (kind) {
    case FieldKind::rational: return "rational";
    case FieldKind::quadratic: return "quadratic " + std::to_string(radicand);
    case FieldKind::floating: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "float %g", tolerance);
        return buf;
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// rationals

namespace detail {

inline bool is_integer_token(std::string_view s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline mpq_class parse_rational(std::string_view s) {
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
    if (!is_integer_token(num) || (slash != std::string_view::npos && !is_integer_token(den)))
        throw ParseError("bad rational '" + std::string(s) + "'");
    if (num.front() == '+') num.remove_prefix(1);
    mpz_class n(std::string(num), 10);
    mpz_class d = 1;
    if (slash != std::string_view::npos) {
        if (den.front() == '+') den.remove_prefix(1);
        d = mpz_class(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

inline std::string format_rational(const mpq_class& q) { return q.get_str(10); }

}  // namespace detail

// ---------------------------------------------------------------------------
// a + b*sqrt(m)

/// Element of Q(sqrt m). A value with m == 0 is a plain rational that can
/// combine with any radicand.
class Quadratic {
public:
    Quadratic() = default;
    Quadratic(long v) : a_(v) {}  // NOLINT: implicit from integers like mpq_class
    explicit Quadratic(mpq_class a, mpq_class b = 0, long m = 0) : a_(std::move(a)), b_(std::move(b)), m_(m) {
        if (b_ != 0 && m_ == 0) throw FieldMismatch("irrational part without a radicand");
    }

    const mpq_class& rational_part() const { return a_; }
    const mpq_class& root_part() const { return b_; }
    long radicand() const { return m_; }

    int sign() const {
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // opposite signs: compare a^2 with m b^2
        mpq_class lhs = a_ * a_, rhs = b_ * b_ * m_;
        int c = cmp(lhs, rhs);
        return c > 0 ? sa : (c < 0 ? sb : 0);
    }

    double to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(m_)); }

    Quadratic operator-() const { return Quadratic(-a_, -b_, m_); }

    friend Quadratic operator+(const Quadratic& x, const Quadratic& y) {
        return Quadratic(x.a_ + y.a_, x.b_ + y.b_, join(x, y));
    }
    friend Quadratic operator-(const Quadratic& x, const Quadratic& y) {
        return Quadratic(x.a_ - y.a_, x.b_ - y.b_, join(x, y));
    }
    friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
        long m = join(x, y);
        return Quadratic(x.a_ * y.a_ + x.b_ * y.b_ * m, x.a_ * y.b_ + x.b_ * y.a_, m);
    }
    friend Quadratic operator/(const Quadratic& x, const Quadratic& y) { return x * y.inverse(); }

    Quadratic inverse() const {
        mpq_class norm = a_ * a_ - b_ * b_ * m_;
        if (norm == 0) throw std::domain_error("division by zero in quadratic field");
        return Quadratic(a_ / norm, -b_ / norm, m_);
    }

    Quadratic& operator+=(const Quadratic& y) { return *this = *this + y; }
    Quadratic& operator-=(const Quadratic& y) { return *this = *this - y; }
    Quadratic& operator*=(const Quadratic& y) { return *this = *this * y; }
    Quadratic& operator/=(const Quadratic& y) { return *this = *this / y; }

    friend bool operator==(const Quadratic& x, const Quadratic& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Quadratic& x, const Quadratic& y) { return !(x == y); }
    friend bool operator<(const Quadratic& x, const Quadratic& y) { return (x - y).sign() < 0; }

    std::string to_string() const {
        if (b_ == 0) return detail::format_rational(a_);
        std::string root = b_ == 1 ? "rt" : b_ == -1 ? "-rt" : detail::format_rational(b_) + "*rt";
        if (a_ == 0) return root;
        std::string out = detail::format_rational(a_);
        if (b_ > 0) out += "+";
        return out + root;
    }

    friend std::ostream& operator<<(std::ostream& os, const Quadratic& x) { return os << x.to_string(); }

private:
    static long join(const Quadratic& x, const Quadratic& y) {
        if (x.m_ == 0) return y.m_;
        if (y.m_ == 0 || x.m_ == y.m_) return x.m_;
        throw FieldMismatch("mixing Q(sqrt " + std::to_string(x.m_) + ") and Q(sqrt " + std::to_string(y.m_) + ")");
    }

    mpq_class a_ = 0;
    mpq_class b_ = 0;
    long m_ = 0;
};

// ---------------------------------------------------------------------------
// field policies
//
// Every policy exposes value_type, exact, zero/one/from_int/from_rational,
// sign, is_zero, to_double, parse, format and spec(). Algorithms take the
// policy by const reference and never compare values directly.

struct RationalField {
    using value_type = mpq_class;
    static constexpr bool exact = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long v) const { return v; }
    value_type from_rational(const mpq_class& q) const { return q; }
    int sign(const value_type& x) const { return sgn(x); }
    bool is_zero(const value_type& x) const { return sgn(x) == 0; }
    double to_double(const value_type& x) const { return x.get_d(); }
    value_type parse(std::string_view s) const { return detail::parse_rational(s); }
    std::string format(const value_type& x) const { return detail::format_rational(x); }
    FieldSpec spec() const { return FieldSpec::rational(); }
};

struct QuadraticField {
    using value_type = Quadratic;
    static constexpr bool exact = true;

    long m = 5;

    QuadraticField() = default;
    explicit QuadraticField(long radicand) : m(FieldSpec::quadratic(radicand).radicand) {}

    value_type zero() const { return Quadratic(0, 0, m); }
    value_type one() const { return Quadratic(1, 0, m); }
    value_type from_int(long v) const { return Quadratic(v, 0, m); }
    value_type from_rational(const mpq_class& q) const { return Quadratic(q, 0, m); }
    /// a + b*sqrt(m)
    value_type make(const mpq_class& a, const mpq_class& b) const { return Quadratic(a, b, m); }
    value_type root() const { return Quadratic(0, 1, m); }
    int sign(const value_type& x) const { return x.sign(); }
    bool is_zero(const value_type& x) const { return x.sign() == 0; }
    double to_double(const value_type& x) const { return x.to_double(); }
    std::string format(const value_type& x) const { return x.to_string(); }
    FieldSpec spec() const { return FieldSpec::quadratic(m); }

    value_type parse(std::string_view s) const {
        if (s.size() < 2 || s.substr(s.size() - 2) != "rt") return from_rational(detail::parse_rational(s));
        std::string_view core = s.substr(0, s.size() - 2);
        if (!core.empty() && core.back() == '*') {
            core.remove_suffix(1);
            if (core.empty() || core.back() == '+' || core.back() == '-')
                throw ParseError("bad quadratic scalar '" + std::string(s) + "'");
        }
        std::size_t split = std::string_view::npos;
        for (std::size_t k = core.size(); k-- > 1;)
            if (core[k] == '+' || core[k] == '-') {
                split = k;
                break;
            }
        mpq_class a = 0;
        std::string_view coef = core;
        if (split != std::string_view::npos) {
            a = detail::parse_rational(core.substr(0, split));
            coef = core.substr(split);
        }
        mpq_class b;
        if (coef.empty() || coef == "+") b = 1;
        else if (coef == "-") b = -1;
        else b = detail::parse_rational(coef);
        return make(a, b);
    }
};

struct FloatField {
    using value_type = double;
    static constexpr bool exact = false;

    double tol = 1e-9;

    FloatField() = default;
    explicit FloatField(double tolerance) : tol(FieldSpec::floating(tolerance).tolerance) {}

    value_type zero() const { return 0.0; }
    value_type one() const { return 1.0; }
    value_type from_int(long v) const { return static_cast<double>(v); }
    value_type from_rational(const mpq_class& q) const { return q.get_d(); }
    int sign(value_type x) const { return x > tol ? 1 : (x < -tol ? -1 : 0); }
    bool is_zero(value_type x) const { return std::fabs(x) <= tol; }
    double to_double(value_type x) const { return x; }
    FieldSpec spec() const { return FieldSpec::floating(tol); }

    std::string format(value_type x) const {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    value_type parse(std::string_view s) const {
        if (s.find('/') != std::string_view::npos) return detail::parse_rational(s).get_d();
        std::string str(s);
        char* end = nullptr;
        double v = std::strtod(str.c_str(), &end);
        if (str.empty() || end != str.c_str() + str.size() || !std::isfinite(v))
            throw ParseError("bad float '" + str + "'");
        return v;
    }
};

/// Tri-state verdict. Exact fields only ever produce yes/no.
enum class Verdict { no, yes, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::no: return "false";
    case Verdict::yes: return "true";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

inline Verdict verdict_of(bool b) { return b ? Verdict::yes : Verdict::no; }

/// Conjunction of verdicts: any "no" wins, then any "inconclusive".
inline Verdict both(Verdict a, Verdict b) {
    if (a == Verdict::no || b == Verdict::no) return Verdict::no;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::yes;
}

}  // namespace insc
