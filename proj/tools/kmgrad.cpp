#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kmgrad/kmgrad.hpp"

namespace fs = std::filesystem;
using namespace kmgrad;

namespace {

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

GCM load_gcm(const std::string& name_or_path) {
    if (auto builtin = builtin_gcm(name_or_path)) return *builtin;
    std::ifstream in(name_or_path);
    if (!in) throw InputError("no builtin matrix or readable file named " + name_or_path);
    Json j;
    try {
        in >> j;
        return gcm_from_json(j);
    } catch (const std::exception& e) {
        throw InputError("failed to load matrix from " + name_or_path + ": " + e.what());
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

IndexSet parse_labels(const GCM& g, const std::string& csv) {
    IndexSet s;
    if (csv.empty()) return s;
    for (const std::string& label : split(csv, ',')) s.push_back(g.index_of(label));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<IndexSet> parse_fibers(const GCM& g, const std::string& spec) {
    std::vector<IndexSet> fibers;
    for (const std::string& part : split(spec, '|')) fibers.push_back(parse_labels(g, part));
    return fibers;
}

RootVec parse_coords(const std::string& csv, std::size_t expected) {
    RootVec v{std::vector<long>{}};
    for (const std::string& part : split(csv, ','))
        v.coords.push_back(std::stol(part));
    if (v.coords.size() != expected)
        throw InputError("expected " + std::to_string(expected) + " coordinates");
    return v;
}

BilinearData parse_normalization(const GCM& g, const std::string& norm) {
    if (norm.empty() || norm == "unit") return bilinear_data_unit(g);
    if (norm.rfind("real=", 0) == 0)
        return bilinear_data_real_length(g, rat_from_string(norm.substr(5)));
    if (norm.rfind("short=", 0) == 0) {
        auto parts = split(norm, ',');
        if (parts.size() == 2 && parts[1].rfind("long=", 0) == 0)
            return bilinear_data_short_long(g, rat_from_string(parts[0].substr(6)),
                                            rat_from_string(parts[1].substr(5)));
    }
    throw InputError("unknown normalization: " + norm +
                     " (use unit, short=A,long=B, or real=N)");
}

void emit(const Json& report, const std::string& text, const std::string& format,
          const std::string& out_path) {
    std::string payload;
    if (format == "json") {
        Json tagged = report;
        tagged["schema"] = kSchemaTag;
        payload = tagged.dump(2) + "\n";
    } else {
        payload = text;
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << payload;
    }
}

std::string matrix_text(const GCM& g) {
    std::ostringstream out;
    for (Index i = 0; i < g.size(); ++i) {
        for (Index j = 0; j < g.size(); ++j) {
            if (j) out << ' ';
            out << g.entry(i, j);
        }
        out << '\n';
    }
    return out.str();
}

Json classify_json(const GCM& g, bool with_det, bool with_signature) {
    Json out = verdict_to_json(classify(g));
    if (with_det) out["det"] = to_string(g.to_rat().det());
    if (with_signature) {
        RatVec d = symmetrizer(g);
        RatMatrix da = g.to_rat();
        for (Index i = 0; i < g.size(); ++i)
            for (Index j = 0; j < g.size(); ++j) da.at(i, j) *= d[i];
        auto [p, z, n] = signature(da);
        out["signature"] = Json::array({p, z, n});
    }
    return out;
}

std::string classify_text(const Json& j) {
    std::ostringstream out;
    for (const auto& [key, value] : j.items())
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
            << '\n';
    return out.str();
}

Json catalog_entry(const std::string& name, const GCM& g) {
    Json pairs = Json::array();
    for (const IndexSet& j_set : enumerate_pairs(g))
        pairs.push_back(pair_check_to_json(g, check_pair(g, j_set)));
    Json quotients = Json::array();
    for (const QuotientMap& q : enumerate_quotients(g)) quotients.push_back(quotient_to_json(q));
    return Json{{"schema", kSchemaTag},
                {"name", name},
                {"matrix", gcm_to_json(g)},
                {"classify", classify_json(g, true, is_symmetrizable(g))},
                {"c_admissible_sets", std::move(pairs)},
                {"admissible_quotients", std::move(quotients)}};
}

// "A2..A5" expands along the rank; plain names pass through
std::vector<std::string> expand_family(const std::string& family) {
    std::vector<std::string> names;
    for (const std::string& part : split(family, ',')) {
        if (part.empty()) continue;
        auto dots = part.find("..");
        if (dots == std::string::npos) {
            names.push_back(part);
            continue;
        }
        std::string from = part.substr(0, dots), to = part.substr(dots + 2);
        if (from.size() < 2 || to.empty())
            throw InputError("bad family range: " + part);
        char letter = from[0];
        std::size_t lo = std::stoul(from.substr(1));
        std::size_t hi = to[0] == letter ? std::stoul(to.substr(1)) : std::stoul(to);
        for (std::size_t n = lo; n <= hi; ++n)
            names.push_back(std::string(1, letter) + std::to_string(n));
    }
    return names;
}

int run(int argc, char** argv) {
    CLI::App app{"exact computations on generalized Cartan matrices: classification, "
                 "C-admissible pairs, folded matrices, and gradation analysis"};
    app.require_subcommand(1);

    std::string matrix_arg, format = "json", out_path, j_csv, fibers_arg, gamma_csv;
    std::string normalize, family, spec_path;
    long height = 12;
    std::size_t max_fibers = 0;
    bool with_det = false, with_signature = false;

    auto add_common = [&](CLI::App* cmd, bool needs_matrix = true) {
        if (needs_matrix)
            cmd->add_option("matrix", matrix_arg, "builtin name or JSON file")->required();
        cmd->add_option("--format", format, "json or text")
            ->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--out", out_path, "write the report to a file");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "type classification");
    add_common(classify_cmd);
    classify_cmd->add_flag("--det", with_det, "include the determinant");
    classify_cmd->add_flag("--signature", with_signature, "include the symmetrized signature");

    CLI::App* roots_cmd = app.add_subcommand("roots", "positive roots up to a height");
    add_common(roots_cmd);
    roots_cmd->add_option("--height", height, "height bound");

    CLI::App* pairs_cmd = app.add_subcommand("pairs", "all C-admissible subsets");
    add_common(pairs_cmd);

    CLI::App* buildaj_cmd = app.add_subcommand("build-aj", "folded matrix of a pair");
    add_common(buildaj_cmd);
    buildaj_cmd->add_option("--j", j_csv, "comma-separated J labels")->required();

    CLI::App* fiber_cmd = app.add_subcommand("fiber", "exact weight fiber of a pair");
    add_common(fiber_cmd);
    fiber_cmd->add_option("--j", j_csv, "comma-separated J labels")->required();
    fiber_cmd->add_option("--gamma", gamma_csv, "restricted weight over I'")->required();

    CLI::App* fold_cmd = app.add_subcommand("fold", "admissible quotient fold");
    add_common(fold_cmd);
    fold_cmd->add_option("--fibers", fibers_arg, "fibers as label lists, e.g. 1,5|2,6|3|4")
        ->required();
    fold_cmd->add_option("--height", height, "verification height bound");

    CLI::App* quotients_cmd = app.add_subcommand("quotients", "all admissible quotients");
    add_common(quotients_cmd);
    quotients_cmd->add_option("--max-fibers", max_fibers, "only quotients with at most this many fibers");

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "gradation analysis of a restriction");
    analyze_cmd->add_option("spec", spec_path, "restriction spec JSON file")->required();
    analyze_cmd->add_option("--height", height, "height bound");
    analyze_cmd->add_option("--normalize", normalize, "source form normalization");
    analyze_cmd->add_option("--format", format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    analyze_cmd->add_option("--out", out_path, "write the report to a file");

    CLI::App* diagram_cmd = app.add_subcommand("diagram", "text and DOT diagram");
    add_common(diagram_cmd);
    diagram_cmd->add_option("--j", j_csv, "decorate: J white, rest black");

    CLI::App* catalog_cmd = app.add_subcommand("catalog", "batch reports for a family");
    catalog_cmd->add_option("--family", family, "names or ranges, e.g. A2..A5,E10")->required();
    catalog_cmd->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (classify_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        Json rep = classify_json(g, with_det, with_signature);
        emit(rep, classify_text(rep), format, out_path);
        return 0;
    }
    if (roots_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        Json list = Json::array();
        std::ostringstream text;
        for (const EnumeratedRoot& r : enumerate_positive_roots(g, height)) {
            list.push_back(Json{{"root", root_to_json(r.vec)},
                                {"height", r.vec.height()},
                                {"verdict", verdict_to_json(g, root_test(g, r.vec))}});
            text << to_string(r.vec) << (r.real ? " real" : " imaginary") << '\n';
        }
        emit(Json{{"height", height}, {"count", list.size()}, {"roots", std::move(list)}},
             text.str(), format, out_path);
        return 0;
    }
    if (pairs_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        Json list = Json::array();
        std::ostringstream text;
        for (const IndexSet& j_set : enumerate_pairs(g)) {
            list.push_back(pair_check_to_json(g, check_pair(g, j_set)));
            text << "J = {";
            for (std::size_t t = 0; t < j_set.size(); ++t)
                text << (t ? "," : "") << g.labels()[j_set[t]];
            text << "}\n";
        }
        emit(Json{{"count", list.size()}, {"pairs", std::move(list)}}, text.str(), format,
             out_path);
        return 0;
    }
    if (buildaj_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        CAdmissibleAlgebra alg = build_AJ(g, parse_labels(g, j_csv));
        Json rep{{"J", labels_of(g, alg.j_set)},
                 {"AJ", gcm_to_json(alg.aj)},
                 {"classify", verdict_to_json(classify(alg.aj))},
                 {"pair", pair_check_to_json(g, alg.pair)},
                 {"diagram", render_diagram(alg.aj)},
                 {"source_diagram", render_diagram(g, alg.j_set)}};
        emit(rep, matrix_text(alg.aj) + render_diagram(alg.aj), format, out_path);
        return 0;
    }
    if (fiber_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        IndexSet j_set = parse_labels(g, j_csv);
        RootVec gamma = parse_coords(gamma_csv, g.size() - j_set.size());
        std::ostringstream text;
        Json members = Json::array();
        if (gamma.is_zero()) {
            ZeroWeightFiber z = zero_weight_fiber(g, j_set);
            for (const RootVec& v : z.delta_j) members.push_back(root_to_json(v));
            emit(Json{{"gamma", root_to_json(gamma)},
                      {"zero_weight", true},
                      {"delta_J", std::move(members)},
                      {"dim_h", z.dim_h}},
                 "zero weight: Delta_J with dim h = " + std::to_string(z.dim_h) + "\n", format,
                 out_path);
            return 0;
        }
        auto fiber = weight_fiber(g, j_set, gamma);
        for (const RootVec& v : fiber) {
            members.push_back(root_to_json(v));
            text << to_string(v) << '\n';
        }
        emit(Json{{"gamma", root_to_json(gamma)},
                  {"size", fiber.size()},
                  {"members", std::move(members)}},
             text.str(), format, out_path);
        return 0;
    }
    if (fold_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        QuotientMap q = check_quotient(g, parse_fibers(g, fibers_arg));
        MaximalGradation mg = build_Abar(q);
        MaximalGradationReport verify = verify_maximal(q, height);
        Json rep{{"quotient", quotient_to_json(q)},
                 {"Abar", gcm_to_json(mg.abar)},
                 {"classify", verdict_to_json(classify(mg.abar))},
                 {"diagram", render_diagram(mg.abar)},
                 {"verified_up_to_height", height},
                 {"verified", verify.ok}};
        if (!verify.ok) rep["failure"] = verify.failure;
        emit(rep, matrix_text(mg.abar) + render_diagram(mg.abar), format, out_path);
        return 0;
    }
    if (quotients_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        Json list = Json::array();
        std::ostringstream text;
        for (const QuotientMap& q : enumerate_quotients(g, max_fibers)) {
            list.push_back(quotient_to_json(q));
            for (std::size_t s = 0; s < q.fibers.size(); ++s) {
                text << (s ? " | " : "");
                for (std::size_t t = 0; t < q.fibers[s].size(); ++t)
                    text << (t ? "," : "") << g.labels()[q.fibers[s][t]];
            }
            text << '\n';
        }
        emit(Json{{"count", list.size()}, {"quotients", std::move(list)}}, text.str(), format,
             out_path);
        return 0;
    }
    if (analyze_cmd->parsed()) {
        std::ifstream in(spec_path);
        if (!in) throw InputError("cannot read spec file " + spec_path);
        Json j;
        RestrictionSpec spec = [&] {
            try {
                in >> j;
            } catch (const std::exception& e) {
                throw InputError(std::string("bad spec JSON: ") + e.what());
            }
            return spec_from_json(j);
        }();
        GradationReport rep = analyze(spec, height);
        Json out = gradation_report_to_json(spec, rep);
        out["imaginary_sign_ok"] = imaginary_sign_check(spec, height).ok;
        if (!normalize.empty()) {
            // source form per the requested convention, target all-real-length-2
            BilinearData src = parse_normalization(spec.source, normalize);
            BilinearData tgt = bilinear_data_real_length(spec.target, 2);
            Rat factor = 1 / src.scale;
            QuadraticIdentity identity = derive_quadratic_identity(spec, src, tgt, factor);
            Json corr = Json::array();
            for (Index i = 0; i < spec.source.size(); ++i) {
                Json row = Json::array();
                for (Index jj = 0; jj < spec.source.size(); ++jj)
                    row.push_back(to_string(identity.correction.at(i, jj)));
                corr.push_back(std::move(row));
            }
            out["bilinear_identity"] =
                Json{{"factor", to_string(factor)},
                     {"correction", std::move(corr)},
                     {"holds", bilinear_identity_check(spec, src, tgt, identity, height).ok}};
        }
        std::ostringstream text;
        for (const auto& [key, value] : out.items())
            text << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                 << '\n';
        emit(out, text.str(), format, out_path);
        return 0;
    }
    if (diagram_cmd->parsed()) {
        GCM g = load_gcm(matrix_arg);
        IndexSet j_set = parse_labels(g, j_csv);
        std::string text = render_diagram(g, j_set);
        std::string dot = render_dot(g, j_set);
        if (format == "json")
            emit(Json{{"text", text}, {"dot", dot}}, "", format, out_path);
        else
            emit(Json{}, text + dot, format, out_path);
        return 0;
    }
    if (catalog_cmd->parsed()) {
        fs::create_directories(out_path);
        for (const std::string& name : expand_family(family)) {
            GCM g = load_gcm(name);
            Json entry = catalog_entry(name, g);
            // builtin names become file names directly; matrix-file inputs
            // contribute their stem
            std::string file_name =
                builtin_gcm(name) ? name : fs::path(name).stem().string();
            for (char& c : file_name)
                if (c == '(' || c == ')' || c == ',' || c == '/' || c == '\\') c = '_';
            std::ofstream out(fs::path(out_path) / (file_name + ".json"));
            if (!out) throw InputError("cannot write catalog entry for " + name);
            out << entry.dump(2) << '\n';
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const kmgrad::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    }
}
