#pragma once

#include <json.hpp>

#include "kmgrad/gradation.hpp"

namespace kmgrad {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "kmgrad/1";

inline Json gcm_to_json(const GCM& g) {
    Json matrix = Json::array();
    for (Index i = 0; i < g.size(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < g.size(); ++j) row.push_back(g.entry(i, j));
        matrix.push_back(std::move(row));
    }
    return Json{{"labels", g.labels()}, {"matrix", std::move(matrix)}};
}

inline GCM gcm_from_json(const Json& j) {
    if (!j.contains("labels") || !j.contains("matrix"))
        throw AxisMismatch("matrix JSON needs 'labels' and 'matrix'");
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<std::vector<long>> entries = j.at("matrix").get<std::vector<std::vector<long>>>();
    return validate(std::move(labels), std::move(entries));
}

inline Json root_to_json(const RootVec& v) {
    Json arr = Json::array();
    for (long c : v.coords) arr.push_back(c);
    return arr;
}

inline RootVec root_from_json(const Json& j, std::size_t expected_size) {
    RootVec v{j.get<std::vector<long>>()};
    if (v.coords.size() != expected_size)
        throw DimensionMismatch("root vector has the wrong length");
    return v;
}

inline Json verdict_to_json(const GCM& g, const RootVerdict& v) {
    Json out;
    switch (v.type) {
        case RootVerdict::Type::Real:
            out["type"] = "Real";
            out["simple"] = g.labels()[*v.simple];
            break;
        case RootVerdict::Type::Imaginary:
            out["type"] = "Imaginary";
            out["rep"] = root_to_json(*v.rep);
            break;
        default:
            out["type"] = "NotARoot";
            return out;
    }
    Json word = Json::array();
    for (Index i : v.word) word.push_back(g.labels()[i]);
    out["word"] = std::move(word);
    return out;
}

inline Json labels_of(const GCM& g, const IndexSet& s) {
    Json arr = Json::array();
    for (Index i : s) arr.push_back(g.labels()[i]);
    return arr;
}

inline IndexSet indices_of(const GCM& g, const Json& labels) {
    IndexSet s;
    for (const auto& l : labels) s.push_back(g.index_of(l.get<std::string>()));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline Json quotient_to_json(const QuotientMap& q) {
    Json fibers = Json::array();
    for (const IndexSet& f : q.fibers) fibers.push_back(labels_of(q.source, f));
    return Json{{"fibers", std::move(fibers)}};
}

inline QuotientMap quotient_from_json(const GCM& g, const Json& j) {
    std::vector<IndexSet> fibers;
    for (const auto& f : j.at("fibers")) fibers.push_back(indices_of(g, f));
    return check_quotient(g, fibers);
}

// {"source": gcm, "target": gcm, "images": {"1": [1,0], ...}}
inline Json spec_to_json(const RestrictionSpec& spec) {
    Json images = Json::object();
    for (Index i = 0; i < spec.source.size(); ++i)
        images[spec.source.labels()[i]] = root_to_json(spec.images[i]);
    return Json{{"source", gcm_to_json(spec.source)},
                {"target", gcm_to_json(spec.target)},
                {"images", std::move(images)}};
}

inline RestrictionSpec spec_from_json(const Json& j) {
    GCM source = gcm_from_json(j.at("source"));
    GCM target = gcm_from_json(j.at("target"));
    std::vector<RootVec> images(source.size(),
                                RootVec{std::vector<long>(target.size(), 0)});
    for (const auto& [label, arr] : j.at("images").items())
        images[source.index_of(label)] = root_from_json(arr, target.size());
    return make_restriction_spec(std::move(source), std::move(target), std::move(images));
}

inline Json verdict_to_json(const TypeVerdict& v) {
    Json out{{"kind", to_string(v.kind)},
             {"hyperbolic", v.hyperbolic},
             {"strictly_hyperbolic", v.strictly_hyperbolic},
             {"lorentzian", v.lorentzian},
             {"symmetrizable", v.symmetrizable},
             {"indecomposable", v.indecomposable}};
    if (v.finite_type_label) out["finite_type_label"] = *v.finite_type_label;
    return out;
}

inline Json pair_component_to_json(const GCM& g, const PairComponent& pc) {
    Json out{{"k", g.labels()[pc.k]},
             {"I_k", labels_of(g, pc.i_k)},
             {"J_k", labels_of(g, pc.j_k)},
             {"component_finite_type", pc.component_finite_type},
             {"admissible", pc.admissible},
             {"c_admissible", pc.c_admissible}};
    if (pc.component_finite_type) {
        Json coeffs = Json::array();
        for (const Rat& c : pc.h_k_coeffs) coeffs.push_back(to_string(c));
        out["h_k_coeffs"] = std::move(coeffs);
        out["highest_coeff_one"] = pc.highest_coeff_one;
        out["sigma_fixes_k"] = pc.sigma_fixes_k;
    }
    if (pc.family_label) out["family"] = *pc.family_label;
    return out;
}

inline Json pair_check_to_json(const GCM& g, const PairCheck& pc) {
    Json comps = Json::array();
    for (const PairComponent& c : pc.pair_components) comps.push_back(pair_component_to_json(g, c));
    return Json{{"J", labels_of(g, pc.j_set)},
                {"c_admissible", pc.c_admissible},
                {"components", std::move(comps)}};
}

inline Json gradation_report_to_json(const RestrictionSpec& spec, const GradationReport& rep) {
    const GCM& g = spec.source;
    Json fibers = Json::object();
    for (Index s = 0; s < spec.target.size(); ++s)
        fibers[spec.target.labels()[s]] = labels_of(g, rep.gamma_fibers[s]);
    Json comps = Json::array();
    for (const IndexSet& c : rep.i_re_components) comps.push_back(labels_of(g, c));
    return Json{{"J", labels_of(g, rep.j_set)},
                {"I_re_prime", labels_of(g, rep.i_prime_re)},
                {"I_im_prime", labels_of(g, rep.i_prime_im)},
                {"I_re", labels_of(g, rep.i_re)},
                {"I_re_components", std::move(comps)},
                {"J_re", labels_of(g, rep.j_re)},
                {"J_circle", labels_of(g, rep.j_circle)},
                {"Gamma", std::move(fibers)},
                {"classification", to_string(rep.classification)},
                {"adapted_up_to_height", rep.adapted_up_to_bound},
                {"disjoint_union_ok", rep.disjoint_union_ok},
                {"Ik_finite_ok", rep.ik_finite_ok},
                {"fiber_orthogonality_ok", rep.fiber_orthogonality_ok},
                {"Ire_Jre_c_admissible", rep.ire_jre_c_admissible},
                {"height", rep.height_bound}};
}

}  // namespace kmgrad
