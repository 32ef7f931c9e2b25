#include "rfs/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace rfs {

namespace {

std::string facetLoc(int sheet, int facet) {
    return "sheet " + std::to_string(sheet) + " facet " + std::to_string(facet);
}

Vec3 newellNormal(const std::vector<Vec3> &poly) {
    Vec3 n = Vec3::Zero();
    const int k = static_cast<int>(poly.size());
    for (int i = 0; i < k; ++i) {
        const Vec3 &a = poly[static_cast<size_t>(i)];
        const Vec3 &b = poly[static_cast<size_t>((i + 1) % k)];
        n += a.cross(b);
    }
    return n;
}

std::vector<Vec3> facetPolygon(const Sheet &sheet, int facet) {
    std::vector<Vec3> poly;
    for (int v : sheet.facets[static_cast<size_t>(facet)])
        poly.push_back(sheet.vertices[static_cast<size_t>(v)]);
    return poly;
}

double polygonDiameter(const std::vector<Vec3> &poly) {
    double d = 0.0;
    for (size_t i = 0; i < poly.size(); ++i)
        for (size_t j = i + 1; j < poly.size(); ++j) d = std::max(d, (poly[i] - poly[j]).norm());
    return d;
}

// 2D segment intersection test used on plane-projected facet boundaries;
// touching at a shared endpoint does not count.
bool segmentsCross(const Eigen::Vector2d &p1, const Eigen::Vector2d &p2,
                   const Eigen::Vector2d &q1, const Eigen::Vector2d &q2) {
    auto cross2 = [](const Eigen::Vector2d &a, const Eigen::Vector2d &b) {
        return a.x() * b.y() - a.y() * b.x();
    };
    const double d1 = cross2(q2 - q1, p1 - q1);
    const double d2 = cross2(q2 - q1, p2 - q1);
    const double d3 = cross2(p2 - p1, q1 - p1);
    const double d4 = cross2(p2 - p1, q2 - p1);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double pointSegmentDistance(const Vec3 &p, const Vec3 &a, const Vec3 &b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - a - t * ab).norm();
}

struct BoundaryEdge {
    Vec3 a, b; // in the facet's oriented traversal order
};

std::vector<BoundaryEdge> boundaryEdges(const Sheet &sheet, int facet, bool flipped) {
    std::vector<BoundaryEdge> out;
    const auto verts = orientedFacet(sheet, facet, flipped);
    const int k = static_cast<int>(verts.size());
    for (int i = 0; i < k; ++i)
        out.push_back({sheet.vertices[static_cast<size_t>(verts[static_cast<size_t>(i)])],
                       sheet.vertices[static_cast<size_t>(verts[static_cast<size_t>((i + 1) % k)])]});
    return out;
}

} // namespace

ValidationReport validateModel(const RFSModel &model, const NumericPolicy &policy) {
    ValidationReport report;
    report.bbox_diagonal = model.bboxDiagonal();
    const double tol = policy.coincidence_rel * std::max(report.bbox_diagonal, 1e-300);

    auto error = [&](std::string code, std::string loc, std::string msg) {
        report.errors.push_back({std::move(code), std::move(loc), std::move(msg)});
    };
    auto warning = [&](std::string code, std::string loc, std::string msg) {
        report.warnings.push_back({std::move(code), std::move(loc), std::move(msg)});
    };

    // Structural checks that parse cannot see (facet arity, repeated indices).
    for (size_t si = 0; si < model.sheets.size(); ++si) {
        const Sheet &sheet = model.sheets[si];
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi) {
            const auto &f = sheet.facets[fi];
            if (f.size() < 3) {
                error("degenerate-facet", facetLoc(int(si), int(fi)),
                      "facet has fewer than 3 vertices");
                continue;
            }
            std::set<int> uniq(f.begin(), f.end());
            if (uniq.size() != f.size())
                error("degenerate-facet", facetLoc(int(si), int(fi)), "facet repeats a vertex");
        }
        if (sheet.facets.empty())
            warning("empty-sheet", "sheet " + std::to_string(si), "sheet has no facets");
    }
    if (model.facetCount() == 0)
        error("empty-model", "model", "model has no facets");
    if (!report.errors.empty()) return report;

    // Orientation propagation; conflicts become findings rather than throws.
    try {
        report.orientation_map = orientFacets(model);
    } catch (const OrientationError &e) {
        error("orientation-conflict", "model", e.what());
        return report;
    }

    for (size_t si = 0; si < model.sheets.size(); ++si) {
        const Sheet &sheet = model.sheets[si];
        const auto &flip = report.orientation_map[si];

        // (a) every shared intra-sheet edge oppositely ordered, at most two
        // incident facets per edge.
        std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> shared;
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi) {
            const auto verts = orientedFacet(sheet, int(fi), flip[fi]);
            const int k = static_cast<int>(verts.size());
            for (int i = 0; i < k; ++i) {
                int a = verts[static_cast<size_t>(i)];
                int b = verts[static_cast<size_t>((i + 1) % k)];
                const bool fwd = a < b;
                if (!fwd) std::swap(a, b);
                shared[{a, b}].emplace_back(int(fi), fwd);
            }
        }
        for (const auto &[edge, inc] : shared) {
            const std::string loc = "sheet " + std::to_string(si) + " edge (" +
                                    std::to_string(edge.first) + "," + std::to_string(edge.second) + ")";
            if (inc.size() > 2) {
                error("non-manifold-edge", loc,
                      "edge shared by " + std::to_string(inc.size()) + " facets");
            } else if (inc.size() == 2 && inc[0].second == inc[1].second) {
                error("edge-orientation", loc,
                      "shared edge has the same vertex order in both facets");
            }
        }

        // (e) planarity and simplicity of each facet polygon.
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi) {
            const auto poly = facetPolygon(sheet, int(fi));
            const double diameter = polygonDiameter(poly);
            Vec3 n = newellNormal(poly);
            if (n.norm() <= 1e-14 * std::max(diameter * diameter, 1e-300)) {
                error("degenerate-facet", facetLoc(int(si), int(fi)), "facet has zero area");
                continue;
            }
            n.normalize();
            Vec3 centroid = Vec3::Zero();
            for (const Vec3 &p : poly) centroid += p;
            centroid /= double(poly.size());
            double maxDist = 0.0;
            for (const Vec3 &p : poly) maxDist = std::max(maxDist, std::abs(n.dot(p - centroid)));
            if (maxDist > policy.planarity_rel * diameter) {
                error("non-planar-facet", facetLoc(int(si), int(fi)),
                      "vertex deviates from the best-fit plane by " + std::to_string(maxDist));
                continue;
            }
            // Project to the plane and check for boundary self-intersection.
            Vec3 u = n.unitOrthogonal();
            Vec3 v = n.cross(u);
            std::vector<Eigen::Vector2d> pts;
            for (const Vec3 &p : poly) pts.emplace_back(u.dot(p - centroid), v.dot(p - centroid));
            const int k = static_cast<int>(pts.size());
            bool simple = true;
            for (int i = 0; i < k && simple; ++i)
                for (int j = i + 1; j < k && simple; ++j) {
                    if (j == i || (j + 1) % k == i || (i + 1) % k == j) continue;
                    if (segmentsCross(pts[size_t(i)], pts[size_t((i + 1) % k)],
                                      pts[size_t(j)], pts[size_t((j + 1) % k)]))
                        simple = false;
                }
            if (!simple)
                error("non-simple-facet", facetLoc(int(si), int(fi)),
                      "facet boundary self-intersects");
        }

        // (f) pinched vertices: the facets around a vertex must form a single
        // fan connected through edges at that vertex. Two facets meeting only
        // at the vertex (a bowtie contact) split the fan.
        std::map<int, std::set<int>> vertexFacets;
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi)
            for (int vtx : sheet.facets[fi]) vertexFacets[vtx].insert(int(fi));
        for (const auto &[vtx, fset] : vertexFacets) {
            if (fset.size() < 2) continue;
            // Union facets that share an edge incident to vtx.
            std::map<int, int> comp;
            for (int f : fset) comp[f] = f;
            std::function<int(int)> find = [&](int x) {
                while (comp[x] != x) x = comp[x] = comp[comp[x]];
                return x;
            };
            for (const auto &[edge, inc] : shared) {
                if (inc.size() != 2) continue;
                if (edge.first != vtx && edge.second != vtx) continue;
                if (!fset.count(inc[0].first) || !fset.count(inc[1].first)) continue;
                comp[find(inc[0].first)] = find(inc[1].first);
            }
            std::set<int> roots;
            for (int f : fset) roots.insert(find(f));
            if (roots.size() > 1)
                error("single-vertex-contact",
                      "sheet " + std::to_string(si) + " vertex " + std::to_string(vtx),
                      "facets meet at a single vertex without sharing edges");
        }
    }

    // (b) all connections between one sheet pair share a type.
    std::map<std::pair<int, int>, std::set<ConnectionKind>> pairKinds;
    for (size_t ci = 0; ci < model.connections.size(); ++ci) {
        const Connection &c = model.connections[ci];
        if (c.a.sheet == c.b.sheet) {
            error("same-sheet-connection", "connection " + std::to_string(ci),
                  "connected facets must lie on different sheets");
            continue;
        }
        auto key = std::minmax(c.a.sheet, c.b.sheet);
        pairKinds[{key.first, key.second}].insert(c.kind);
    }
    for (const auto &[pair, kinds] : pairKinds)
        if (kinds.size() > 1)
            error("mixed-connection-type",
                  "sheets " + std::to_string(pair.first) + "," + std::to_string(pair.second),
                  "hinging and soldering connections between the same sheet pair");

    // (c)/(d) hinge resolution per connection.
    report.connections.assign(model.connections.size(), {});
    for (size_t ci = 0; ci < model.connections.size(); ++ci) {
        const Connection &c = model.connections[ci];
        const std::string loc = "connection " + std::to_string(ci);
        if (c.a.sheet == c.b.sheet) continue;
        ResolvedConnection &res = report.connections[ci];

        if (c.kind == ConnectionKind::Soldering) {
            res.kind = ResolvedConnection::Kind::Solder;
            continue;
        }

        const Sheet &sa = model.sheets[static_cast<size_t>(c.a.sheet)];
        const Sheet &sb = model.sheets[static_cast<size_t>(c.b.sheet)];
        const auto ea = boundaryEdges(sa, c.a.facet, report.orientation_map[size_t(c.a.sheet)][size_t(c.a.facet)]);
        const auto eb = boundaryEdges(sb, c.b.facet, report.orientation_map[size_t(c.b.sheet)][size_t(c.b.facet)]);

        std::vector<std::pair<Vec3, Vec3>> candidates;
        for (const BoundaryEdge &x : ea)
            for (const BoundaryEdge &y : eb) {
                const bool same = (x.a - y.a).norm() <= tol && (x.b - y.b).norm() <= tol;
                const bool anti = (x.a - y.b).norm() <= tol && (x.b - y.a).norm() <= tol;
                if (!same && !anti) continue;
                const bool dup = std::any_of(candidates.begin(), candidates.end(), [&](const auto &cd) {
                    return ((cd.first - x.a).norm() <= tol && (cd.second - x.b).norm() <= tol) ||
                           ((cd.first - x.b).norm() <= tol && (cd.second - x.a).norm() <= tol);
                });
                if (!dup) candidates.emplace_back(x.a, x.b);
            }

        if (candidates.empty()) {
            // Degenerate contact (shared vertex or a vertex resting on the
            // other boundary) downgrades to soldering with a warning; no
            // contact at all is an error.
            bool contact = false;
            for (const BoundaryEdge &x : ea)
                for (const BoundaryEdge &y : eb) {
                    if ((x.a - y.a).norm() <= tol || (x.a - y.b).norm() <= tol ||
                        (x.b - y.a).norm() <= tol || (x.b - y.b).norm() <= tol ||
                        pointSegmentDistance(x.a, y.a, y.b) <= tol ||
                        pointSegmentDistance(y.a, x.a, x.b) <= tol)
                        contact = true;
                }
            if (contact) {
                warning("degenerate-hinging", loc,
                        "facets share no full edge; connection treated as soldering");
                res.kind = ResolvedConnection::Kind::Solder;
            } else {
                error("no-coincident-edge", loc,
                      "hinging facets share no coincident edge");
            }
            continue;
        }

        if (c.hinge_edge) {
            const auto &[h1, h2] = *c.hinge_edge;
            const auto match = std::find_if(candidates.begin(), candidates.end(), [&](const auto &cd) {
                return ((cd.first - h1).norm() <= tol && (cd.second - h2).norm() <= tol) ||
                       ((cd.first - h2).norm() <= tol && (cd.second - h1).norm() <= tol);
            });
            if (match == candidates.end()) {
                error("hinge-edge-mismatch", loc,
                      "hinge_edge does not match any coincident edge of the facet pair");
            } else {
                res.kind = ResolvedConnection::Kind::Hinge;
                res.edge = *match;
            }
            continue;
        }

        if (candidates.size() > 1) {
            error("ambiguous-hinge", loc,
                  std::to_string(candidates.size()) +
                      " coincident edges and no hinge_edge selection");
            res.kind = ResolvedConnection::Kind::Solder;
            continue;
        }

        res.kind = ResolvedConnection::Kind::Hinge;
        res.edge = candidates.front();
    }

    return report;
}

} // namespace rfs
