#include "rfs/model.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace rfs {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json loadJson(const std::string &text, const std::string &origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(origin + ": " + e.what());
    }
}

std::string slurp(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Vec3 parseVec3(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw ParseError(where + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

RFSModel parseModelText(const std::string &text, const std::string &origin) {
    const json j = loadJson(text, origin);
    if (!j.is_object() || !j.contains("sheets") || !j["sheets"].is_array())
        throw ParseError(origin + ": top-level object with a \"sheets\" array expected");

    RFSModel model;
    int si = 0;
    for (const json &js : j["sheets"]) {
        const std::string where = origin + ": sheet " + std::to_string(si);
        if (!js.is_object()) throw ParseError(where + ": object expected");
        Sheet sheet;

        for (const json &jv : js.value("vertices", json::array()))
            sheet.vertices.push_back(parseVec3(jv, where + " vertices"));
        const int nv = static_cast<int>(sheet.vertices.size());

        for (const json &je : js.value("edges", json::array())) {
            if (!je.is_array() || je.size() != 2)
                throw ParseError(where + ": edge must be a vertex-index pair");
            std::array<int, 2> e{je[0].get<int>(), je[1].get<int>()};
            for (int v : e)
                if (v < 0 || v >= nv)
                    throw IndexError(where + ": edge references vertex " + std::to_string(v) +
                                     " of a " + std::to_string(nv) + "-vertex sheet");
            sheet.pattern_edges.push_back(e);
        }

        int fi = 0;
        for (const json &jf : js.value("facets", json::array())) {
            if (!jf.is_array())
                throw ParseError(where + " facet " + std::to_string(fi) + ": index list expected");
            std::vector<int> facet;
            for (const json &ji : jf) {
                const int v = ji.get<int>();
                if (v < 0 || v >= nv)
                    throw IndexError(where + " facet " + std::to_string(fi) +
                                     ": references vertex " + std::to_string(v) + " of a " +
                                     std::to_string(nv) + "-vertex sheet");
                facet.push_back(v);
            }
            sheet.facets.push_back(std::move(facet));
            ++fi;
        }

        const std::string so = js.value("seed_orientation", std::string("ccw"));
        if (so == "ccw")
            sheet.seed_orientation = SeedOrientation::Ccw;
        else if (so == "cw")
            sheet.seed_orientation = SeedOrientation::Cw;
        else
            throw ParseError(where + ": seed_orientation must be \"ccw\" or \"cw\"");

        model.sheets.push_back(std::move(sheet));
        ++si;
    }

    const int ns = static_cast<int>(model.sheets.size());
    int ci = 0;
    for (const json &jc : j.value("connections", json::array())) {
        const std::string where = origin + ": connection " + std::to_string(ci);
        if (!jc.is_object() || !jc.contains("a") || !jc.contains("b") || !jc.contains("type"))
            throw ParseError(where + ": fields a, b, type required");
        Connection c;
        auto readRef = [&](const json &jr, const char *name) {
            if (!jr.is_array() || jr.size() != 2)
                throw ParseError(where + ": " + name + " must be [sheet, facet]");
            FacetRef r{jr[0].get<int>(), jr[1].get<int>()};
            if (r.sheet < 0 || r.sheet >= ns)
                throw IndexError(where + ": sheet index " + std::to_string(r.sheet) + " out of range");
            const int nf = static_cast<int>(model.sheets[static_cast<size_t>(r.sheet)].facets.size());
            if (r.facet < 0 || r.facet >= nf)
                throw IndexError(where + ": facet index " + std::to_string(r.facet) + " out of range");
            return r;
        };
        c.a = readRef(jc["a"], "a");
        c.b = readRef(jc["b"], "b");
        const std::string kind = jc["type"].get<std::string>();
        if (kind == "h")
            c.kind = ConnectionKind::Hinging;
        else if (kind == "s")
            c.kind = ConnectionKind::Soldering;
        else
            throw ParseError(where + ": type must be \"h\" or \"s\"");
        if (jc.contains("hinge_edge")) {
            const json &jh = jc["hinge_edge"];
            if (!jh.is_array() || jh.size() != 2)
                throw ParseError(where + ": hinge_edge must be a pair of coordinates");
            c.hinge_edge = std::make_pair(parseVec3(jh[0], where + " hinge_edge"),
                                          parseVec3(jh[1], where + " hinge_edge"));
        }
        model.connections.push_back(std::move(c));
        ++ci;
    }
    return model;
}

RFSModel parseModel(const std::filesystem::path &path) {
    return parseModelText(slurp(path), path.string());
}

std::string serializeModel(const RFSModel &model) {
    ordered_json j;
    j["sheets"] = ordered_json::array();
    for (const Sheet &s : model.sheets) {
        ordered_json js;
        js["vertices"] = ordered_json::array();
        for (const Vec3 &v : s.vertices) js["vertices"].push_back({v.x(), v.y(), v.z()});
        js["edges"] = ordered_json::array();
        for (const auto &e : s.pattern_edges) js["edges"].push_back({e[0], e[1]});
        js["facets"] = s.facets;
        js["seed_orientation"] = s.seed_orientation == SeedOrientation::Ccw ? "ccw" : "cw";
        j["sheets"].push_back(std::move(js));
    }
    j["connections"] = ordered_json::array();
    for (const Connection &c : model.connections) {
        ordered_json jc;
        jc["a"] = {c.a.sheet, c.a.facet};
        jc["b"] = {c.b.sheet, c.b.facet};
        jc["type"] = c.kind == ConnectionKind::Hinging ? "h" : "s";
        if (c.hinge_edge) {
            const auto &[p, q] = *c.hinge_edge;
            jc["hinge_edge"] = {{p.x(), p.y(), p.z()}, {q.x(), q.y(), q.z()}};
        }
        j["connections"].push_back(std::move(jc));
    }
    return j.dump(2) + "\n";
}

void writeModel(const RFSModel &model, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << serializeModel(model);
}

RFSModel importFoldText(const std::string &text, const std::string &origin) {
    const json j = loadJson(text, origin);
    if (!j.is_object()) throw ParseError(origin + ": FOLD object expected");

    for (const char *key : {"faceOrders", "edgeOrders", "file_frames"})
        if (j.contains(key))
            throw ParseError(origin + ": unsupported FOLD feature \"" + key +
                             "\" (multi-layer files are not supported)");

    if (!j.contains("vertices_coords") || !j.contains("faces_vertices"))
        throw ParseError(origin + ": vertices_coords and faces_vertices required");

    Sheet sheet;
    for (const json &jv : j["vertices_coords"]) {
        if (!jv.is_array() || jv.size() < 2 || jv.size() > 3)
            throw ParseError(origin + ": vertex coordinates must be 2D or 3D");
        sheet.vertices.emplace_back(jv[0].get<double>(), jv[1].get<double>(),
                                    jv.size() == 3 ? jv[2].get<double>() : 0.0);
    }
    const int nv = static_cast<int>(sheet.vertices.size());

    auto checkIndex = [&](int v, const char *what) {
        if (v < 0 || v >= nv)
            throw IndexError(origin + ": " + what + " references vertex " + std::to_string(v) +
                             " of a " + std::to_string(nv) + "-vertex file");
    };

    if (j.contains("edges_vertices")) {
        for (const json &je : j["edges_vertices"]) {
            std::array<int, 2> e{je[0].get<int>(), je[1].get<int>()};
            checkIndex(e[0], "edge");
            checkIndex(e[1], "edge");
            sheet.pattern_edges.push_back(e);
        }
    }

    for (const json &jf : j["faces_vertices"]) {
        std::vector<int> face;
        for (const json &ji : jf) {
            const int v = ji.get<int>();
            checkIndex(v, "face");
            face.push_back(v);
        }
        sheet.facets.push_back(std::move(face));
    }

    // FOLD edge assignments (mountain/valley) are intentionally dropped: the
    // fold sense is carried by the sign of the hinge variable downstream.
    if (sheet.pattern_edges.empty()) {
        std::set<std::pair<int, int>> seen;
        for (const auto &f : sheet.facets) {
            const int k = static_cast<int>(f.size());
            for (int i = 0; i < k; ++i) {
                int a = f[static_cast<size_t>(i)];
                int b = f[static_cast<size_t>((i + 1) % k)];
                if (a > b) std::swap(a, b);
                if (seen.insert({a, b}).second) sheet.pattern_edges.push_back({a, b});
            }
        }
    }

    RFSModel model;
    model.sheets.push_back(std::move(sheet));
    return model;
}

RFSModel importFold(const std::filesystem::path &path) {
    return importFoldText(slurp(path), path.string());
}

} // namespace rfs
