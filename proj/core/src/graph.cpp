#include "rfs/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rfs {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // keep the smaller id as representative for stable body numbering
        if (a < b) parent[static_cast<size_t>(b)] = a;
        else parent[static_cast<size_t>(a)] = b;
    }
};

} // namespace

int FacetHingeGraph::componentCount() const {
    const int n = static_cast<int>(nodes.size());
    std::vector<int> seen(static_cast<size_t>(n), 0);
    int components = 0;
    for (int root = 0; root < n; ++root) {
        if (seen[static_cast<size_t>(root)]) continue;
        ++components;
        std::vector<int> stack{root};
        seen[static_cast<size_t>(root)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (const auto &[eid, v] : adjacency[static_cast<size_t>(u)])
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    stack.push_back(v);
                }
        }
    }
    return components;
}

void FacetHingeGraph::rebuildAdjacency() {
    adjacency.assign(nodes.size(), {});
    for (const HingeEdge &e : edges) {
        adjacency[static_cast<size_t>(e.node_p)].emplace_back(e.id, e.node_q);
        adjacency[static_cast<size_t>(e.node_q)].emplace_back(e.id, e.node_p);
    }
    for (auto &adj : adjacency)
        std::sort(adj.begin(), adj.end(), [](const auto &a, const auto &b) {
            return a.second != b.second ? a.second < b.second : a.first < b.first;
        });
}

FacetHingeGraph buildGraph(const RFSModel &model, const ValidationReport &report,
                           const NumericPolicy &policy) {
    if (!report.ok())
        throw std::invalid_argument("buildGraph: model failed validation");

    const double tol = policy.coincidence_rel * std::max(report.bbox_diagonal, 1e-300);
    // Flatten (sheet, facet) -> global facet index.
    std::vector<std::vector<int>> gid(model.sheets.size());
    std::vector<FacetRef> refOf;
    for (size_t si = 0; si < model.sheets.size(); ++si) {
        gid[si].resize(model.sheets[si].facets.size());
        for (size_t fi = 0; fi < model.sheets[si].facets.size(); ++fi) {
            gid[si][fi] = static_cast<int>(refOf.size());
            refOf.push_back({static_cast<int>(si), static_cast<int>(fi)});
        }
    }
    const int nFacets = static_cast<int>(refOf.size());

    // Soldering (and degenerate hinging downgraded by validation) merges.
    UnionFind uf(nFacets);
    for (size_t ci = 0; ci < model.connections.size(); ++ci) {
        if (report.connections[ci].kind != ResolvedConnection::Kind::Solder) continue;
        const Connection &c = model.connections[ci];
        uf.unite(gid[size_t(c.a.sheet)][size_t(c.a.facet)], gid[size_t(c.b.sheet)][size_t(c.b.facet)]);
    }

    FacetHingeGraph graph;
    graph.bbox_diagonal = report.bbox_diagonal;

    // Bodies numbered by ascending smallest member facet id.
    std::map<int, std::vector<int>> members;
    for (int f = 0; f < nFacets; ++f) members[uf.find(f)].push_back(f);
    std::map<int, int> bodyIndex;
    for (const auto &[rep, facets] : members) {
        BodyNode node;
        node.id = static_cast<int>(graph.nodes.size());
        for (int f : facets) node.members.push_back(refOf[static_cast<size_t>(f)]);
        std::sort(node.members.begin(), node.members.end());
        bodyIndex[rep] = node.id;
        graph.nodes.push_back(std::move(node));
    }
    graph.body_of_facet.resize(model.sheets.size());
    for (size_t si = 0; si < model.sheets.size(); ++si) {
        graph.body_of_facet[si].resize(model.sheets[si].facets.size());
        for (size_t fi = 0; fi < model.sheets[si].facets.size(); ++fi)
            graph.body_of_facet[si][fi] = bodyIndex.at(uf.find(gid[si][fi]));
    }

    auto addHinge = [&](int bodyP, int bodyQ, const Vec3 &va, const Vec3 &vb, HingeOrigin origin,
                        const std::string &what) {
        if (bodyP == bodyQ)
            throw std::runtime_error("buildGraph: " + what +
                                     " connects a body to itself (hinge frozen by soldering)");
        HingeEdge e;
        e.id = static_cast<int>(graph.edges.size());
        e.node_p = bodyP;
        e.node_q = bodyQ;
        e.edge_vertices = {va, vb};
        e.omega = (vb - va).normalized();
        e.q = va;
        e.origin = origin;
        graph.edges.push_back(std::move(e));
    };

    // Intra-sheet hinges: interior shared pattern edges. The edge direction is
    // stored as traversed by the higher-id facet (node_q's side).
    for (size_t si = 0; si < model.sheets.size(); ++si) {
        const Sheet &sheet = model.sheets[si];
        const auto &flip = report.orientation_map[si];
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
            if (inc.size() != 2) continue;
            int fLow = inc[0].first, fHigh = inc[1].first;
            bool fwdHigh = inc[1].second;
            if (fLow > fHigh) {
                std::swap(fLow, fHigh);
                fwdHigh = inc[0].second;
            }
            const int bodyP = graph.body_of_facet[si][static_cast<size_t>(fLow)];
            const int bodyQ = graph.body_of_facet[si][static_cast<size_t>(fHigh)];
            // Direction as the higher facet traverses it.
            const int vA = fwdHigh ? edge.first : edge.second;
            const int vB = fwdHigh ? edge.second : edge.first;

            HingeOrigin origin;
            origin.kind = HingeOrigin::Kind::IntraSheet;
            origin.sheet = static_cast<int>(si);
            for (size_t ei = 0; ei < sheet.pattern_edges.size(); ++ei) {
                const auto &pe = sheet.pattern_edges[ei];
                if ((pe[0] == edge.first && pe[1] == edge.second) ||
                    (pe[0] == edge.second && pe[1] == edge.first)) {
                    origin.edge = static_cast<int>(ei);
                    break;
                }
            }
            addHinge(bodyP, bodyQ, sheet.vertices[static_cast<size_t>(vA)],
                     sheet.vertices[static_cast<size_t>(vB)], origin,
                     "sheet " + std::to_string(si) + " edge (" + std::to_string(edge.first) + "," +
                         std::to_string(edge.second) + ")");
        }
    }

    // Inter-sheet hinges from hinging connections, one each, directed as
    // traversed by the oriented boundary of the connection's second facet.
    for (size_t ci = 0; ci < model.connections.size(); ++ci) {
        if (report.connections[ci].kind != ResolvedConnection::Kind::Hinge) continue;
        const Connection &c = model.connections[ci];
        const auto &[e1, e2] = report.connections[ci].edge;

        const Sheet &sb = model.sheets[static_cast<size_t>(c.b.sheet)];
        const auto verts = orientedFacet(sb, c.b.facet,
                                         report.orientation_map[size_t(c.b.sheet)][size_t(c.b.facet)]);
        Vec3 va = e1, vb = e2;
        const int k = static_cast<int>(verts.size());
        for (int i = 0; i < k; ++i) {
            const Vec3 &p = sb.vertices[static_cast<size_t>(verts[static_cast<size_t>(i)])];
            const Vec3 &q = sb.vertices[static_cast<size_t>(verts[static_cast<size_t>((i + 1) % k)])];
            if ((p - e1).norm() <= tol && (q - e2).norm() <= tol) {
                va = p;
                vb = q;
                break;
            }
            if ((p - e2).norm() <= tol && (q - e1).norm() <= tol) {
                va = p;
                vb = q;
                break;
            }
        }

        HingeOrigin origin;
        origin.kind = HingeOrigin::Kind::InterSheet;
        origin.connection = static_cast<int>(ci);
        addHinge(graph.bodyOf(c.a), graph.bodyOf(c.b), va, vb, origin,
                 "connection " + std::to_string(ci));
    }

    graph.rebuildAdjacency();
    return graph;
}

Perforation classifyLoop(const Loop &loop, const FacetHingeGraph &graph,
                         const NumericPolicy &policy, Vec3 *common_vertex) {
    if (loop.crossings.empty()) return Perforation::Perforated;
    const double tol = policy.coincidence_rel * std::max(graph.bbox_diagonal, 1e-300);
    const HingeEdge &first = graph.edges[static_cast<size_t>(loop.crossings.front().hinge)];
    for (const Vec3 &candidate : {first.edge_vertices.first, first.edge_vertices.second}) {
        bool allShare = true;
        for (const Crossing &c : loop.crossings) {
            const HingeEdge &e = graph.edges[static_cast<size_t>(c.hinge)];
            if ((e.edge_vertices.first - candidate).norm() > tol &&
                (e.edge_vertices.second - candidate).norm() > tol) {
                allShare = false;
                break;
            }
        }
        if (allShare) {
            if (common_vertex) *common_vertex = candidate;
            return Perforation::NonPerforated;
        }
    }
    return Perforation::Perforated;
}

FacetHingeGraph makeBareGraph(int nodes, const std::vector<std::pair<int, int>> &edges) {
    FacetHingeGraph graph;
    graph.bbox_diagonal = 1.0;
    for (int i = 0; i < nodes; ++i) graph.nodes.push_back({i, {}});
    int id = 0;
    for (const auto &[p, q] : edges) {
        HingeEdge e;
        e.id = id;
        e.node_p = p;
        e.node_q = q;
        // Distinct placeholder endpoints so no two hinges ever share one.
        e.edge_vertices = {Vec3(100.0 + id, 0, 0), Vec3(100.0 + id, 1, 0)};
        e.omega = Vec3::UnitY();
        e.q = e.edge_vertices.first;
        graph.edges.push_back(std::move(e));
        ++id;
    }
    graph.rebuildAdjacency();
    return graph;
}

} // namespace rfs
