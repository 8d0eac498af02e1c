#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "insc/arrangement.hpp"
#include "insc/inscribe.hpp"
#include "insc/zonotope.hpp"

namespace insc {

// Structured analysis output. Scalars are kept as strings in the field's
// text syntax so the JSON form round-trips exactly; labels are 1-based.

struct FlatEntry {
    std::vector<std::size_t> labels;
    std::string pfaffian;
    std::size_t kernel_dim = 0;
    bool operator==(const FlatEntry&) const = default;
};

struct ZonotopeBlock {
    std::vector<std::string> lambda;
    bool degenerate = false;
    std::string inscribed;  // verdict
    std::string radius2;
    double radius2_float = 0;
    std::optional<std::size_t> bad_vertex;
    std::optional<std::size_t> bad_edge;
    std::string two_faces;  // verdict
    std::vector<std::vector<std::size_t>> failing_flats;
    std::optional<std::string> belts;  // verdict over all directions, when requested
    bool operator==(const ZonotopeBlock&) const = default;
};

struct AnalysisDocument {
    std::string field;
    std::size_t d = 0;
    std::size_t n = 0;
    std::size_t rank = 0;
    std::string simplicial = "skipped";  // true | false | skipped
    std::optional<std::vector<int>> simplicial_witness;
    std::vector<FlatEntry> flats;
    std::size_t zinspc_dim = 0;
    std::vector<std::vector<std::string>> zinspc_basis;
    std::optional<std::vector<std::string>> zincone_sample;
    std::string strongly_inscribable;
    std::string lp_epsilon;
    std::string virtually_inscribable;
    std::optional<ZonotopeBlock> zonotope;
    double elapsed_ms = 0;
    bool operator==(const AnalysisDocument&) const = default;
};

namespace detail {

template <class F>
std::vector<std::string> format_vec(const F& f, const Vec<typename F::value_type>& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(f.format(x));
    return out;
}

template <class T>
std::vector<std::size_t> one_based(const OrderedFlat<T>& flat) {
    std::vector<std::size_t> out;
    for (auto i : flat.indices) out.push_back(i + 1);
    return out;
}

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
}

template <class T>
void get_optional(const nlohmann::json& j, const char* key, std::optional<T>& v) {
    if (!j.contains(key) || j.at(key).is_null()) v.reset();
    else v = j.at(key).get<T>();
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const FlatEntry& e) {
    j = nlohmann::json{{"labels", e.labels}, {"pfaffian", e.pfaffian}, {"kernel_dim", e.kernel_dim}};
}

inline void from_json(const nlohmann::json& j, FlatEntry& e) {
    j.at("labels").get_to(e.labels);
    j.at("pfaffian").get_to(e.pfaffian);
    j.at("kernel_dim").get_to(e.kernel_dim);
}

inline void to_json(nlohmann::json& j, const ZonotopeBlock& z) {
    j = nlohmann::json{{"lambda", z.lambda},       {"degenerate", z.degenerate},
                       {"inscribed", z.inscribed}, {"radius2", z.radius2},
                       {"radius2_float", z.radius2_float}, {"two_faces", z.two_faces},
                       {"failing_flats", z.failing_flats}};
    detail::put_optional(j, "bad_vertex", z.bad_vertex);
    detail::put_optional(j, "bad_edge", z.bad_edge);
    detail::put_optional(j, "belts", z.belts);
}

inline void from_json(const nlohmann::json& j, ZonotopeBlock& z) {
    j.at("lambda").get_to(z.lambda);
    j.at("degenerate").get_to(z.degenerate);
    j.at("inscribed").get_to(z.inscribed);
    j.at("radius2").get_to(z.radius2);
    j.at("radius2_float").get_to(z.radius2_float);
    j.at("two_faces").get_to(z.two_faces);
    j.at("failing_flats").get_to(z.failing_flats);
    detail::get_optional(j, "bad_vertex", z.bad_vertex);
    detail::get_optional(j, "bad_edge", z.bad_edge);
    detail::get_optional(j, "belts", z.belts);
}

inline void to_json(nlohmann::json& j, const AnalysisDocument& d) {
    j = nlohmann::json{
        {"arrangement", {{"field", d.field}, {"d", d.d}, {"n", d.n}, {"rank", d.rank}}},
        {"simplicial", d.simplicial},
        {"flats", d.flats},
        {"zinspc_dim", d.zinspc_dim},
        {"zinspc_basis", d.zinspc_basis},
        {"strongly_inscribable", d.strongly_inscribable},
        {"lp_epsilon", d.lp_epsilon},
        {"virtually_inscribable", d.virtually_inscribable},
        {"elapsed_ms", d.elapsed_ms},
    };
    detail::put_optional(j, "simplicial_witness", d.simplicial_witness);
    detail::put_optional(j, "zincone_sample", d.zincone_sample);
    detail::put_optional(j, "zonotope", d.zonotope);
}

inline void from_json(const nlohmann::json& j, AnalysisDocument& d) {
    const auto& a = j.at("arrangement");
    a.at("field").get_to(d.field);
    a.at("d").get_to(d.d);
    a.at("n").get_to(d.n);
    a.at("rank").get_to(d.rank);
    j.at("simplicial").get_to(d.simplicial);
    j.at("flats").get_to(d.flats);
    j.at("zinspc_dim").get_to(d.zinspc_dim);
    j.at("zinspc_basis").get_to(d.zinspc_basis);
    j.at("strongly_inscribable").get_to(d.strongly_inscribable);
    j.at("lp_epsilon").get_to(d.lp_epsilon);
    j.at("virtually_inscribable").get_to(d.virtually_inscribable);
    j.at("elapsed_ms").get_to(d.elapsed_ms);
    detail::get_optional(j, "simplicial_witness", d.simplicial_witness);
    detail::get_optional(j, "zincone_sample", d.zincone_sample);
    detail::get_optional(j, "zonotope", d.zonotope);
}

enum class TopePolicy { automatic, always, never };

/// flats -> z_in_space -> cone sample -> Pfaffians -> simpliciality.
/// automatic skips tope enumeration when the generic region bound exceeds
/// the cap; always tries and reports "skipped" if the cap is hit (or
/// rethrows when strict).
template <class F>
AnalysisDocument analyze(const Arrangement<F>& a, const QForm<F>& q, std::size_t cap = default_region_cap,
                         TopePolicy topes_policy = TopePolicy::automatic, bool strict = false) {
    const auto t0 = std::chrono::steady_clock::now();
    const F& f = a.field();
    AnalysisDocument doc;
    doc.field = f.spec().to_string();
    doc.d = a.dim();
    doc.n = a.size();
    doc.rank = a.dim();
    auto rep = inscribe_report(a, q);
    for (const auto& fr : rep.per_flat) doc.flats.push_back({detail::one_based(fr.flat), f.format(fr.pfaffian), fr.kernel_dim});
    doc.zinspc_dim = rep.zinspc_dim;
    for (const auto& v : rep.zinspc_basis) doc.zinspc_basis.push_back(detail::format_vec(f, v));
    if (rep.zincone_sample) doc.zincone_sample = detail::format_vec(f, *rep.zincone_sample);
    doc.strongly_inscribable = to_string(rep.strongly_inscribable);
    doc.lp_epsilon = f.format(rep.lp_epsilon);
    doc.virtually_inscribable = to_string(rep.virtually_inscribable);

    bool run = topes_policy == TopePolicy::always ||
               (topes_policy == TopePolicy::automatic && region_upper_bound(a.size(), a.dim()) <= cap);
    if (run) {
        try {
            auto s = is_simplicial(a, cap);
            doc.simplicial = s.simplicial ? "true" : "false";
            if (s.witness) doc.simplicial_witness = std::vector<int>(s.witness->signs.begin(), s.witness->signs.end());
        } catch (const RegionCapExceeded&) {
            if (strict) throw;
            doc.simplicial = "skipped";
        }
    }
    doc.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return doc;
}

/// verify_inscribed + two_faces, and the belt check in every direction when
/// belts is set.
template <class F>
ZonotopeBlock zonotope_block(const Zonotope<F>& z, std::size_t cap = default_region_cap, bool belts = false) {
    const F& f = z.field();
    ZonotopeBlock b;
    b.lambda = detail::format_vec(f, z.lambda);
    b.degenerate = z.degenerate();
    auto ins = verify_inscribed(z, cap);
    b.inscribed = to_string(ins.verdict);
    b.radius2 = f.format(ins.radius2);
    b.radius2_float = f.to_double(ins.radius2);
    b.bad_vertex = ins.bad_vertex;
    b.bad_edge = ins.bad_edge;
    auto tf = two_faces(z);
    b.two_faces = to_string(tf.verdict);
    for (const auto& face : tf.faces)
        if (face.inscribed != Verdict::yes) b.failing_flats.push_back(detail::one_based(face.flat));
    if (belts) {
        Verdict v = Verdict::yes;
        for (std::size_t i = 0; i < z.base.size(); ++i) v = both(v, belt_midpoint_check(z, i, cap).verdict);
        b.belts = to_string(v);
    }
    return b;
}

}  // namespace insc
