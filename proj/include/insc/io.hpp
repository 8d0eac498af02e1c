#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "insc/arrangement.hpp"
#include "insc/catalog.hpp"
#include "insc/errors.hpp"
#include "insc/field.hpp"
#include "insc/qform.hpp"

namespace insc {

namespace detail {

/// Yields whitespace-split lines, dropping `#` comments and blank lines, and
/// remembers the physical line number for error messages.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::vector<std::string>& tokens) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_;
            line = line.substr(0, line.find('#'));
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            tokens.clear();
            std::istringstream ss(line);
            for (std::string t; ss >> t;) tokens.push_back(t);
            return true;
        }
        return false;
    }

    std::vector<std::string> expect(const char* what) {
        std::vector<std::string> t;
        if (!next(t)) throw ParseError(std::string("unexpected end of input, expected ") + what, line_ + 1);
        return t;
    }

    std::size_t line() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

inline std::size_t parse_count(const std::string& s, std::size_t line) {
    std::size_t pos = 0;
    long v = -1;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v < 0) throw ParseError("expected a non-negative integer, got '" + s + "'", line);
    return static_cast<std::size_t>(v);
}

inline std::size_t keyword_count(LineReader& r, const char* key) {
    auto t = r.expect(key);
    if (t.size() != 2 || t[0] != key) throw ParseError(std::string("expected '") + key + " <count>'", r.line());
    return parse_count(t[1], r.line());
}

inline FieldSpec parse_field_line(const std::vector<std::string>& t, std::size_t line) {
    if (t.empty() || t[0] != "field") throw ParseError("expected 'field rational|quadratic <m>|float <tol>'", line);
    try {
        if (t.size() == 2 && t[1] == "rational") return FieldSpec::rational();
        if (t.size() == 3 && t[1] == "quadratic") return FieldSpec::quadratic(static_cast<long>(parse_count(t[2], line)));
        if (t.size() == 3 && t[1] == "float") {
            std::size_t pos = 0;
            double tol = std::stod(t[2], &pos);
            if (pos != t[2].size()) throw ParseError("bad tolerance '" + t[2] + "'", line);
            return FieldSpec::floating(tol);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line);
    }
    throw ParseError("unknown field declaration", line);
}

template <class F>
Vec<typename F::value_type> parse_row(const F& f, const std::vector<std::string>& tokens, std::size_t expected,
                                      std::size_t line) {
    if (tokens.size() != expected)
        throw ParseError("expected " + std::to_string(expected) + " scalars, got " + std::to_string(tokens.size()), line);
    Vec<typename F::value_type> row;
    for (const auto& t : tokens) {
        try {
            row.push_back(f.parse(t));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line);
        }
    }
    return row;
}

}  // namespace detail

/// Calls fn with the field policy object described by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    switch (spec.kind) {
    case FieldKind::rational: return fn(RationalField{});
    case FieldKind::quadratic: return fn(QuadraticField(spec.radicand));
    case FieldKind::floating: break;
    }
    return fn(FloatField(spec.tolerance));
}

/// Splits "c1,c2,..." (commas and/or whitespace) and parses each scalar.
template <class F>
Vec<typename F::value_type> parse_scalar_list(const F& f, const std::string& text) {
    std::string s = text;
    for (auto& c : s)
        if (c == ',') c = ' ';
    std::istringstream ss(s);
    Vec<typename F::value_type> out;
    for (std::string t; ss >> t;) out.push_back(f.parse(t));
    return out;
}

// ---------------------------------------------------------------------------
// arrangement files

inline AnyArrangement read_arrangement(std::istream& in) {
    detail::LineReader r(in);
    auto head = r.expect("field");
    const FieldSpec spec = detail::parse_field_line(head, r.line());
    const std::size_t d = detail::keyword_count(r, "dim");
    const std::size_t n = detail::keyword_count(r, "n");
    return with_field(spec, [&](auto f) -> AnyArrangement {
        using F = decltype(f);
        std::vector<Vec<typename F::value_type>> normals;
        for (std::size_t i = 0; i < n; ++i) {
            auto tokens = r.expect("a normal");
            normals.push_back(detail::parse_row(f, tokens, d, r.line()));
        }
        std::vector<std::string> extra;
        if (r.next(extra)) throw ParseError("trailing content after " + std::to_string(n) + " normals", r.line());
        return new_arrangement(f, d, std::move(normals));
    });
}

inline AnyArrangement load_arrangement(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_arrangement(in);
}

/// Writes the stored (sign-normalized) normals; comment lines get a `# ` prefix.
template <class F>
void write_arrangement(std::ostream& os, const Arrangement<F>& a, const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments) os << "# " << c << '\n';
    os << "field " << a.field().spec().to_string() << '\n';
    os << "dim " << a.dim() << '\n';
    os << "n " << a.size() << '\n';
    for (const auto& z : a.normals()) {
        for (std::size_t k = 0; k < z.size(); ++k) os << (k ? " " : "") << a.field().format(z[k]);
        os << '\n';
    }
}

inline void write_arrangement(std::ostream& os, const AnyArrangement& a, const std::vector<std::string>& comments = {}) {
    std::visit([&](const auto& x) { write_arrangement(os, x, comments); }, a);
}

// ---------------------------------------------------------------------------
// bilinear form files

template <class F>
QForm<F> read_qform(std::istream& in, const F& f) {
    detail::LineReader r(in);
    auto head = r.expect("qform");
    if (head.size() != 1 || head[0] != "qform") throw ParseError("expected 'qform'", r.line());
    const std::size_t d = detail::keyword_count(r, "dim");
    Matrix<typename F::value_type> q(d, d, f.zero());
    for (std::size_t i = 0; i < d; ++i) {
        auto tokens = r.expect("a matrix row");
        auto row = detail::parse_row(f, tokens, d, r.line());
        for (std::size_t j = 0; j < d; ++j) q(i, j) = row[j];
    }
    std::vector<std::string> extra;
    if (r.next(extra)) throw ParseError("trailing content after " + std::to_string(d) + " rows", r.line());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (!f.is_zero(q(i, j) - q(j, i)))
                throw ParseError("matrix is not symmetric at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")",
                                 r.line());
    return QForm<F>(f, std::move(q));
}

template <class F>
QForm<F> load_qform(const std::string& path, const F& f) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_qform(in, f);
}

template <class F>
void write_qform(std::ostream& os, const QForm<F>& q) {
    os << "qform\n";
    os << "dim " << q.dim() << '\n';
    for (std::size_t i = 0; i < q.dim(); ++i) {
        for (std::size_t j = 0; j < q.dim(); ++j) os << (j ? " " : "") << q.field().format(q.matrix()(i, j));
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// zonotope spec files
//
//   arrangement <path>      (relative paths resolve against the spec file)
//   qform <path>            (optional)
//   lambda c1 c2 ... cn     (or: lambda auto)

struct ZonotopeSpec {
    std::string arrangement;
    std::optional<std::string> qform;
    std::vector<std::string> lambda;  // raw scalar tokens, or the single token "auto"
};

inline ZonotopeSpec read_zonotope_spec(std::istream& in, const std::filesystem::path& base = {}) {
    detail::LineReader r(in);
    ZonotopeSpec spec;
    bool have_lambda = false;
    auto resolve = [&](const std::string& p) {
        std::filesystem::path path(p);
        return (path.is_absolute() || base.empty() ? path : base / path).string();
    };
    std::vector<std::string> t;
    while (r.next(t)) {
        if (t[0] == "arrangement" && t.size() == 2) spec.arrangement = resolve(t[1]);
        else if (t[0] == "qform" && t.size() == 2) spec.qform = resolve(t[1]);
        else if (t[0] == "lambda" && t.size() >= 2) {
            spec.lambda.assign(t.begin() + 1, t.end());
            have_lambda = true;
        } else throw ParseError("unknown directive '" + t[0] + "'", r.line());
    }
    if (spec.arrangement.empty()) throw ParseError("missing 'arrangement <path>'", r.line());
    if (!have_lambda) throw ParseError("missing 'lambda' line", r.line());
    return spec;
}

inline ZonotopeSpec load_zonotope_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_zonotope_spec(in, std::filesystem::path(path).parent_path());
}

}  // namespace insc
