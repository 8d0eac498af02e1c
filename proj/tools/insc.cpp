// insc: command-line front end.
//
// Exit codes: 0 completed (whatever the verdict), 2 input error, 3 region cap
// exceeded under --strict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "insc/insc.hpp"

using namespace insc;

namespace {

constexpr int exit_input = 2;
constexpr int exit_cap = 3;

// parameter names per generator, in positional order
const std::map<std::string, std::vector<std::string>>& param_names() {
    static const std::map<std::string, std::vector<std::string>> names{
        {"A", {"n"}}, {"B", {"n"}}, {"D", {"n", "s"}}, {"I2", {"k"}}, {"R", {"n"}}, {"Rprime", {"m"}},
        {"coordinate", {"d"}}, {"H3", {}}, {"F4", {}}, {"E6", {}}, {"E7", {}}, {"E8", {}}, {"A3_10_1", {}}};
    return names;
}

long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw Error("expected an integer, got '" + s + "'");
    return v;
}

std::vector<long> collect_params(const std::string& name, const std::vector<std::string>& positional,
                                 const std::vector<std::string>& keyed) {
    auto it = param_names().find(name);
    if (it == param_names().end()) throw UnknownName(name);
    const auto& keys = it->second;
    std::vector<std::optional<long>> vals(keys.size());
    if (positional.size() > keys.size()) throw Error(name + " takes " + std::to_string(keys.size()) + " parameter(s)");
    for (std::size_t i = 0; i < positional.size(); ++i) vals[i] = parse_long(positional[i]);
    for (const auto& kv : keyed) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("--param expects k=v, got '" + kv + "'");
        auto k = std::find(keys.begin(), keys.end(), kv.substr(0, eq));
        if (k == keys.end()) throw Error(name + " has no parameter '" + kv.substr(0, eq) + "'");
        vals[k - keys.begin()] = parse_long(kv.substr(eq + 1));
    }
    std::vector<long> out;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (!vals[i]) throw Error(name + " needs parameter '" + keys[i] + "'");
        out.push_back(*vals[i]);
    }
    return out;
}

CatalogEntry make_entry(const std::string& name, const std::vector<long>& params) {
    if (name != "coordinate") return catalog_entry(name, params);
    if (params[0] < 1) throw Error("coordinate needs d >= 1");
    const auto d = static_cast<std::size_t>(params[0]);
    std::vector<Vec<mpq_class>> normals;
    for (std::size_t i = 0; i < d; ++i) {
        Vec<mpq_class> z(d, 0);
        z[i] = 1;
        normals.push_back(z);
    }
    auto a = new_arrangement(RationalField{}, d, normals);
    return CatalogEntry{"coordinate", params, a, QForm<RationalField>::identity(a.field(), d), d, d, std::nullopt};
}

// Writes to the file, or to stdout for "" and "-".
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw Error("cannot write '" + path + "'");
    fn(os);
}

template <class F>
QForm<F> qform_for(const Arrangement<F>& a, const std::string& path) {
    if (path.empty()) return QForm<F>::identity(a.field(), a.dim());
    auto q = load_qform(path, a.field());
    if (q.dim() != a.dim())
        throw Error("bilinear form has dimension " + std::to_string(q.dim()) + ", arrangement has " + std::to_string(a.dim()));
    return q;
}

template <class F>
std::string vec_text(const F& f, const Vec<typename F::value_type>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + f.format(v[i]);
    return s + ")";
}

std::string labels_text(const std::vector<std::size_t>& labels) {
    std::string s = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + std::to_string(labels[i]);
    return s + "}";
}

void print_zonotope(std::ostream& os, const ZonotopeBlock& z) {
    os << "lambda: (";
    for (std::size_t i = 0; i < z.lambda.size(); ++i) os << (i ? ", " : "") << z.lambda[i];
    os << ")" << (z.degenerate ? " degenerate" : "") << '\n';
    os << "inscribed: " << z.inscribed;
    if (z.inscribed == "true") os << " (radius^2 " << z.radius2 << ")";
    if (z.bad_vertex) os << " (vertex " << *z.bad_vertex + 1 << " off the sphere)";
    if (z.bad_edge) os << " (edge " << *z.bad_edge + 1 << " midpoint not orthogonal)";
    os << '\n';
    os << "two_faces: " << z.two_faces;
    for (const auto& f : z.failing_flats) os << ' ' << labels_text(f);
    os << '\n';
    if (z.belts) os << "belts: " << *z.belts << '\n';
}

void print_document(std::ostream& os, const AnalysisDocument& d) {
    os << "field " << d.field << ", d " << d.d << ", n " << d.n << ", rank " << d.rank << '\n';
    os << "simplicial: " << d.simplicial;
    if (d.simplicial_witness) {
        os << " (non-simplicial tope";
        for (int s : *d.simplicial_witness) os << ' ' << (s > 0 ? '+' : '-');
        os << ')';
    }
    os << '\n';
    os << "codimension-2 flats: " << d.flats.size() << '\n';
    for (const auto& f : d.flats) os << "  " << labels_text(f.labels) << "  pfaffian " << f.pfaffian << "  kernel " << f.kernel_dim << '\n';
    os << "zinspc_dim: " << d.zinspc_dim << '\n';
    for (const auto& b : d.zinspc_basis) {
        os << "  (";
        for (std::size_t i = 0; i < b.size(); ++i) os << (i ? ", " : "") << b[i];
        os << ")\n";
    }
    os << "zincone_sample: ";
    if (d.zincone_sample) {
        os << '(';
        for (std::size_t i = 0; i < d.zincone_sample->size(); ++i) os << (i ? ", " : "") << (*d.zincone_sample)[i];
        os << ")\n";
    } else {
        os << "absent\n";
    }
    os << "strongly_inscribable: " << d.strongly_inscribable << " (lp epsilon " << d.lp_epsilon << ")\n";
    os << "virtually_inscribable: " << d.virtually_inscribable << '\n';
    if (d.zonotope) print_zonotope(os, *d.zonotope);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f", d.elapsed_ms);
    os << "elapsed: " << buf << " ms\n";
}

void output_document(const AnalysisDocument& d, bool json, const std::string& out) {
    emit(out, [&](std::ostream& os) {
        if (json) os << nlohmann::json(d).dump(2) << '\n';
        else print_document(os, d);
    });
}

// ---------------------------------------------------------------------------
// commands

struct GenOptions {
    std::string name;
    std::vector<std::string> positional;
    std::vector<std::string> params;
    std::string out;
    std::string metric_out;
    bool reference_form = false;
};

void cmd_gen(const GenOptions& o) {
    auto params = collect_params(o.name, o.positional, o.params);
    auto e = make_entry(o.name, params);
    if (o.reference_form && o.name != "A3_10_1") throw Error("--reference-form applies to A3_10_1 only");
    std::string title = o.name;
    for (long p : params) title += " " + std::to_string(p);
    std::vector<std::string> comments{title + ": n " + std::to_string(e.n) + ", rank " + std::to_string(e.rank)};
    if (e.expected_zinspc_dim) comments.push_back("expected zinspc_dim " + std::to_string(*e.expected_zinspc_dim));
    emit(o.out, [&](std::ostream& os) { write_arrangement(os, e.arrangement, comments); });
    if (!o.metric_out.empty()) {
        emit(o.metric_out, [&](std::ostream& os) {
            if (o.reference_form) write_qform(os, A3_10_1_reference_qform());
            else std::visit([&](const auto& q) { write_qform(os, q); }, e.metric);
        });
    }
}

struct AnalyzeOptions {
    std::string file;
    std::string qform;
    bool json = false;
    std::size_t cap = 0;
    bool strict = false;
    std::string topes = "auto";
    std::string out;
};

void cmd_analyze(const AnalyzeOptions& o) {
    auto any = load_arrangement(o.file);
    const TopePolicy policy = o.topes == "always" ? TopePolicy::always : o.topes == "never" ? TopePolicy::never : TopePolicy::automatic;
    auto doc = std::visit([&](const auto& a) { return analyze(a, qform_for(a, o.qform), o.cap, policy, o.strict); }, any);
    output_document(doc, o.json, o.out);
}

struct ZonotopeOptions {
    std::string file;
    std::string spec;
    std::string qform;
    std::string lambda;
    bool verify = false;
    std::string export_obj;
    bool json = false;
    std::size_t cap = 0;
    bool strict = false;
    std::string out;
};

void cmd_zonotope(ZonotopeOptions o) {
    if (!o.spec.empty()) {
        auto s = load_zonotope_spec(o.spec);
        o.file = s.arrangement;
        if (s.qform && o.qform.empty()) o.qform = *s.qform;
        if (o.lambda.empty()) {
            for (const auto& t : s.lambda) o.lambda += (o.lambda.empty() ? "" : " ") + t;
        }
    }
    if (o.file.empty()) throw Error("zonotope needs an arrangement file or --spec");
    if (o.lambda.empty()) throw Error("zonotope needs --lambda");
    auto any = load_arrangement(o.file);
    std::visit(
        [&](const auto& a) {
            using A = std::decay_t<decltype(a)>;
            using F = std::decay_t<decltype(a.field())>;
            const F& f = a.field();
            auto q = qform_for(a, o.qform);
            Vec<typename F::value_type> lambda;
            if (o.lambda == "auto") {
                auto cone = z_in_cone_sample(a, q);
                if (!cone.lambda) throw Error("--lambda auto: the arrangement has no strictly positive kernel vector");
                lambda = *cone.lambda;
            } else {
                lambda = parse_scalar_list(f, o.lambda);
            }
            Zonotope<F> z(A(a), lambda, q);
            AnalysisDocument doc;
            doc.field = f.spec().to_string();
            doc.d = doc.rank = a.dim();
            doc.n = a.size();
            doc.simplicial = "skipped";
            const auto t0 = std::chrono::steady_clock::now();
            try {
                doc.zonotope = zonotope_block(z, o.cap, o.verify);
            } catch (const RegionCapExceeded&) {
                if (o.strict) throw;
                ZonotopeBlock b;
                b.lambda = detail::format_vec(f, z.lambda);
                b.degenerate = z.degenerate();
                b.inscribed = "skipped";
                auto tf = two_faces(z);
                b.two_faces = to_string(tf.verdict);
                for (const auto& face : tf.faces)
                    if (face.inscribed != Verdict::yes) b.failing_flats.push_back(detail::one_based(face.flat));
                doc.zonotope = b;
            }
            doc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            if (!o.export_obj.empty()) {
                auto mesh = export_mesh(z);
                emit(o.export_obj, [&](std::ostream& os) { write_obj(os, mesh); });
            }
            if (o.json) {
                emit(o.out, [&](std::ostream& os) { os << nlohmann::json(*doc.zonotope).dump(2) << '\n'; });
            } else {
                emit(o.out, [&](std::ostream& os) {
                    os << "field " << doc.field << ", d " << doc.d << ", n " << doc.n << '\n';
                    print_zonotope(os, *doc.zonotope);
                });
            }
        },
        any);
}

struct DeriveOptions {
    std::string file;
    std::string selector;
    std::string qform;
    std::string out;
    std::string qform_out;
};

std::vector<std::size_t> parse_selector(const std::string& text, std::size_t n) {
    std::string s = text;
    for (auto& c : s)
        if (c == ',') c = ' ';
    std::istringstream ss(s);
    std::vector<std::size_t> out;
    for (std::string t; ss >> t;) {
        const long v = parse_long(t);
        if (v < 1 || static_cast<std::size_t>(v) > n)
            throw Error("hyperplane " + t + " out of range 1.." + std::to_string(n));
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    if (out.empty()) throw Error("empty hyperplane selector");
    return out;
}

void cmd_restrict(const DeriveOptions& o) {
    auto any = load_arrangement(o.file);
    std::visit(
        [&](const auto& a) {
            const auto& f = a.field();
            auto sel = parse_selector(o.selector, a.size());
            if (sel.size() != 1) throw Error("restrict takes a single hyperplane index");
            auto r = restrict(a, sel[0], qform_for(a, o.qform));
            std::vector<std::string> comments{"restriction to hyperplane " + std::to_string(sel[0] + 1)};
            for (std::size_t c = 0; c < r.label_map.size(); ++c) {
                std::string line = "label " + std::to_string(c + 1) + " <-";
                for (const auto& part : r.label_map[c])
                    line += " " + std::to_string(part.old_label + 1) + " (" + f.format(part.factor) + ")";
                comments.push_back(line);
            }
            for (std::size_t b = 0; b < r.basis.size(); ++b) comments.push_back("basis " + std::to_string(b + 1) + " " + vec_text(f, r.basis[b]));
            emit(o.out, [&](std::ostream& os) { write_arrangement(os, r.arrangement, comments); });
            if (!o.qform_out.empty()) emit(o.qform_out, [&](std::ostream& os) { write_qform(os, r.qform); });
        },
        any);
}

void cmd_localize(const DeriveOptions& o) {
    auto any = load_arrangement(o.file);
    std::visit(
        [&](const auto& a) {
            const auto& f = a.field();
            auto sel = parse_selector(o.selector, a.size());
            auto l = localize(a, sel);
            std::vector<std::string> comments{"localization at the flat of " + o.selector};
            for (std::size_t c = 0; c < l.label_map.size(); ++c)
                comments.push_back("label " + std::to_string(c + 1) + " <- " + std::to_string(l.label_map[c].old_label + 1) +
                                   " (" + f.format(l.label_map[c].factor) + ")");
            for (std::size_t b = 0; b < l.basis.size(); ++b) comments.push_back("basis " + std::to_string(b + 1) + " " + vec_text(f, l.basis[b]));
            emit(o.out, [&](std::ostream& os) { write_arrangement(os, l.arrangement, comments); });
            if (!o.qform_out.empty()) {
                auto q = qform_for(a, o.qform).induced(l.basis);
                emit(o.qform_out, [&](std::ostream& os) { write_qform(os, q); });
            }
        },
        any);
}

struct ProfileOptions {
    std::string file;
    std::string lines;
    double tol = 1e-9;
    std::string out;
};

void cmd_profile(const ProfileOptions& o) {
    AnyArrangement any;
    if (!o.lines.empty()) {
        // lines through the origin at the given direction angles (radians)
        std::vector<Vec<double>> normals;
        for (double t : parse_scalar_list(FloatField(o.tol), o.lines)) normals.push_back({-std::sin(t), std::cos(t)});
        any = new_arrangement(FloatField(o.tol), 2, normals);
    } else if (!o.file.empty()) {
        any = load_arrangement(o.file);
    } else {
        throw Error("profile needs an arrangement file or --lines");
    }
    std::visit(
        [&](const auto& a) {
            auto p = reduced_profile(a, o.tol);
            auto v = profile_inscribable(p, o.tol);
            auto cone = z_in_cone_sample(a, QForm<std::decay_t<decltype(a.field())>>::identity(a.field(), 2));
            emit(o.out, [&](std::ostream& os) {
                char buf[64];
                os << "profile (radians):";
                for (double b : p.beta) {
                    std::snprintf(buf, sizeof buf, " %.12g", b);
                    os << buf;
                }
                os << "\nprofile (multiples of pi):";
                for (double b : p.beta) {
                    std::snprintf(buf, sizeof buf, " %.12g", b / std::numbers::pi);
                    os << buf;
                }
                os << "\ninscribable: " << to_string(v.verdict) << '\n';
                std::snprintf(buf, sizeof buf, "%.3g", v.margin);
                os << "margin: " << buf << '\n';
                if (p.size() % 2 == 0) {
                    std::snprintf(buf, sizeof buf, "%.3g", v.equality_residual);
                    os << "equality residual: " << buf << '\n';
                }
                os << "kernel method: " << to_string(cone.verdict) << '\n';
            });
        },
        any);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inscribable hyperplane arrangements and zonotopes"};
    app.require_subcommand(1);
    std::size_t cap = 0;
    app.add_option("--cap", cap, "region cap for tope enumeration (default: $INSC_REGION_CAP or 100000)");

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "write a catalog arrangement");
    g->add_option("name", gen.name, "A, B, D, I2, H3, F4, E6, E7, E8, A3_10_1, R, Rprime, coordinate")->required();
    g->add_option("params", gen.positional, "parameters in order (A n, B n, D n s, I2 k, R n, Rprime m, coordinate d)");
    g->add_option("--param", gen.params, "parameter as k=v (repeatable)")->allow_extra_args(false);
    g->add_option("-o,--output", gen.out, "output file (default stdout)");
    g->add_option("--metric-out", gen.metric_out, "also write the entry's bilinear form");
    g->add_flag("--reference-form", gen.reference_form, "with --metric-out on A3_10_1: write the reference form");

    AnalyzeOptions an;
    auto* a = app.add_subcommand("analyze", "flats, kernel, cone sample, Pfaffians, simpliciality");
    a->add_option("file", an.file, "arrangement file")->required();
    a->add_option("--qform", an.qform, "bilinear form file (default identity)");
    a->add_flag("--json", an.json, "JSON output");
    a->add_flag("--strict", an.strict, "fail with exit code 3 when the region cap is hit");
    a->add_option("--topes", an.topes, "simpliciality check: auto, always or never")
        ->check(CLI::IsMember({"auto", "always", "never"}));
    a->add_option("-o,--output", an.out, "output file (default stdout)");

    ZonotopeOptions zo;
    auto* z = app.add_subcommand("zonotope", "build and verify Z_lambda");
    z->add_option("file", zo.file, "arrangement file");
    z->add_option("--spec", zo.spec, "zonotope spec file (arrangement, qform, lambda)");
    z->add_option("--qform", zo.qform, "bilinear form file (default identity)");
    z->add_option("--lambda", zo.lambda, "\"c1,...,cn\" or auto");
    z->add_flag("--verify", zo.verify, "also run the belt midpoint check in every direction");
    z->add_option("--export-obj", zo.export_obj, "write the boundary mesh (rank 3, lambda > 0)");
    z->add_flag("--json", zo.json, "JSON output");
    z->add_flag("--strict", zo.strict, "fail with exit code 3 when the region cap is hit");
    z->add_option("-o,--output", zo.out, "output file (default stdout)");

    DeriveOptions rs;
    auto* r = app.add_subcommand("restrict", "restriction to one hyperplane");
    r->add_option("file", rs.file, "arrangement file")->required();
    r->add_option("index", rs.selector, "hyperplane index (1-based)")->required();
    r->add_option("--qform", rs.qform, "bilinear form file (default identity)");
    r->add_option("-o,--output", rs.out, "output file (default stdout)");
    r->add_option("--qform-out", rs.qform_out, "write the restricted form");

    DeriveOptions lo;
    auto* l = app.add_subcommand("localize", "localization at the flat of a set of hyperplanes");
    l->add_option("file", lo.file, "arrangement file")->required();
    l->add_option("indices", lo.selector, "hyperplane indices, e.g. 1,2 (1-based)")->required();
    l->add_option("--qform", lo.qform, "bilinear form file (default identity)");
    l->add_option("-o,--output", lo.out, "output file (default stdout)");
    l->add_option("--qform-out", lo.qform_out, "write the induced form");

    ProfileOptions pr;
    auto* p = app.add_subcommand("profile", "reduced profile and inscribability of a line arrangement");
    p->add_option("file", pr.file, "rank-2 arrangement file");
    p->add_option("--lines", pr.lines, "direction angles in radians instead of a file, e.g. 0,0.2,1.8");
    p->add_option("--tol", pr.tol, "angle tolerance (default 1e-9)");
    p->add_option("-o,--output", pr.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_input;
    }
    if (cap == 0) cap = region_cap_from_env();
    an.cap = zo.cap = cap;

    try {
        if (*g) cmd_gen(gen);
        else if (*a) cmd_analyze(an);
        else if (*z) cmd_zonotope(zo);
        else if (*r) cmd_restrict(rs);
        else if (*l) cmd_localize(lo);
        else if (*p) cmd_profile(pr);
    } catch (const RegionCapExceeded& e) {
        std::cerr << "insc: " << e.what() << '\n';
        return exit_cap;
    } catch (const std::exception& e) {
        std::cerr << "insc: " << e.what() << '\n';
        return exit_input;
    }
    return 0;
}
