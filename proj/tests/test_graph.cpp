#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rfs/graph.hpp"
#include "rfs/patterns.hpp"
#include "rfs/pipeline.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace rfs;

namespace {

// ---- independent oracles ------------------------------------------------

// All simple cycles by brute force over edge subsets: every touched node has
// degree two and the subset is connected. Feasible for the small graphs the
// minimality checks use.
std::vector<std::vector<int>> allSimpleCycles(const FacetHingeGraph &g) {
    const int m = static_cast<int>(g.edges.size());
    std::vector<std::vector<int>> cycles;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        std::map<int, int> degree;
        std::vector<int> edges;
        for (int e = 0; e < m; ++e)
            if (mask & (1u << e)) {
                edges.push_back(e);
                ++degree[g.edges[size_t(e)].node_p];
                ++degree[g.edges[size_t(e)].node_q];
            }
        bool ok = edges.size() >= 2;
        for (const auto &[n, d] : degree) ok = ok && d == 2;
        if (!ok) continue;
        // connectivity over the subset
        std::set<int> seen;
        std::vector<int> stack{degree.begin()->first};
        seen.insert(stack[0]);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int e : edges) {
                const auto &he = g.edges[size_t(e)];
                const int v = he.node_p == u ? he.node_q : (he.node_q == u ? he.node_p : -1);
                if (v >= 0 && !seen.count(v)) {
                    seen.insert(v);
                    stack.push_back(v);
                }
            }
        }
        if (seen.size() == degree.size()) cycles.push_back(edges);
    }
    return cycles;
}

// Incremental GF(2) elimination with rows kept in echelon form.
struct Gf2Filter {
    int m;
    std::map<int, std::vector<char>> rows; // pivot -> reduced row
    explicit Gf2Filter(int bits) : m(bits) {}
    bool tryAdd(const std::vector<int> &edges) {
        std::vector<char> v(static_cast<size_t>(m), 0);
        for (int e : edges) v[static_cast<size_t>(e)] ^= 1;
        for (;;) {
            int pivot = -1;
            for (int i = 0; i < m; ++i)
                if (v[size_t(i)]) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return false;
            auto it = rows.find(pivot);
            if (it == rows.end()) {
                rows.emplace(pivot, std::move(v));
                return true;
            }
            for (int i = 0; i < m; ++i) v[size_t(i)] ^= it->second[size_t(i)];
        }
    }
};

// Minimum total weight over all cycle bases: greedy over all simple cycles
// sorted by weight (matroid property makes greedy exact).
int exhaustiveMinBasisWeight(const FacetHingeGraph &g, int dimension) {
    auto cycles = allSimpleCycles(g);
    std::sort(cycles.begin(), cycles.end(), [](const auto &a, const auto &b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    Gf2Filter filter(static_cast<int>(g.edges.size()));
    int chosen = 0, total = 0;
    for (const auto &c : cycles) {
        if (chosen == dimension) break;
        if (!filter.tryAdd(c)) continue;
        ++chosen;
        total += static_cast<int>(c.size());
    }
    REQUIRE(chosen == dimension);
    return total;
}

// Bridges by deletion: an edge is a bridge iff removing it splits its component.
std::set<int> bridges(const FacetHingeGraph &g) {
    std::set<int> out;
    const int base = g.componentCount();
    for (const HingeEdge &e : g.edges) {
        FacetHingeGraph copy = g;
        copy.edges.erase(copy.edges.begin() + e.id);
        copy.rebuildAdjacency();
        if (copy.componentCount() > base) out.insert(e.id);
    }
    return out;
}

int fundamentalBasisWeight(const FacetHingeGraph &g) {
    // BFS spanning forest; each non-tree edge closes one fundamental cycle.
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> dist(static_cast<size_t>(n), -1), parent(static_cast<size_t>(n), -1),
        parentEdge(static_cast<size_t>(n), -1);
    std::set<int> treeEdges;
    for (int root = 0; root < n; ++root) {
        if (dist[size_t(root)] >= 0) continue;
        dist[size_t(root)] = 0;
        std::vector<int> queue{root};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            const int u = queue[qi];
            for (const auto &[eid, v] : g.adjacency[size_t(u)])
                if (dist[size_t(v)] < 0) {
                    dist[size_t(v)] = dist[size_t(u)] + 1;
                    parent[size_t(v)] = u;
                    parentEdge[size_t(v)] = eid;
                    treeEdges.insert(eid);
                    queue.push_back(v);
                }
        }
    }
    int total = 0;
    for (const HingeEdge &e : g.edges) {
        if (treeEdges.count(e.id)) continue;
        // tree-path length via lowest common ancestor walk
        int a = e.node_p, b = e.node_q, len = 1;
        while (a != b) {
            if (dist[size_t(a)] < dist[size_t(b)]) std::swap(a, b);
            a = parent[size_t(a)];
            ++len;
        }
        total += len;
    }
    return total;
}

void checkBasisInvariants(const FacetHingeGraph &g, const CycleBasis &basis) {
    const int dimension = static_cast<int>(g.edges.size()) - static_cast<int>(g.nodes.size()) +
                          g.componentCount();
    CHECK(basis.L() == dimension);
    CHECK(basis.L() == static_cast<int>(basis.loops.size()));

    // GF(2) independence of the whole set.
    Gf2Filter filter(static_cast<int>(g.edges.size()));
    for (const Loop &l : basis.loops) {
        std::vector<int> edges;
        for (const Crossing &c : l.crossings) edges.push_back(c.hinge);
        CHECK(filter.tryAdd(edges));

        // structural loop checks: closed sequence, hinge endpoints match
        REQUIRE(l.node_sequence.size() == l.crossings.size() + 1);
        CHECK(l.node_sequence.front() == l.node_sequence.back());
        for (size_t i = 0; i < l.crossings.size(); ++i) {
            const HingeEdge &e = g.edges[size_t(l.crossings[i].hinge)];
            const int a = l.node_sequence[i], b = l.node_sequence[i + 1];
            if (l.crossings[i].dir > 0) {
                CHECK(e.node_p == a);
                CHECK(e.node_q == b);
            } else {
                CHECK(e.node_p == b);
                CHECK(e.node_q == a);
            }
        }
    }

    int total = 0;
    for (const Loop &l : basis.loops) total += static_cast<int>(l.crossings.size());
    CHECK(total <= fundamentalBasisWeight(g));

    // Hinges outside every basis loop are exactly the bridges.
    std::set<int> inLoops;
    for (const Loop &l : basis.loops)
        for (const Crossing &c : l.crossings) inLoops.insert(c.hinge);
    std::set<int> outside;
    for (const HingeEdge &e : g.edges)
        if (!inLoops.count(e.id)) outside.insert(e.id);
    CHECK(outside == bridges(g));
}

} // namespace

// ---- buildGraph ----------------------------------------------------------

TEST_CASE("buildGraph: two squares sharing one edge") {
    const RFSModel m = parseModelText(R"({
        "sheets": [{
            "vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0],[2,0,0],[2,1,0]],
            "edges": [[0,1],[1,2],[2,3],[3,0],[1,4],[4,5],[5,2]],
            "facets": [[0,1,2,3],[1,4,5,2]],
            "seed_orientation": "ccw"
        }]
    })");
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    CHECK(g.nodes.size() == 2);
    REQUIRE(g.edges.size() == 1);
    CHECK(minimumCycleBasis(g).L() == 0);

    // Axis data: the shared edge runs between (1,0,0) and (1,1,0); the stored
    // direction follows the higher facet's traversal (2 -> 1).
    const HingeEdge &h = g.edges[0];
    CHECK(h.node_p == 0);
    CHECK(h.node_q == 1);
    CHECK((h.edge_vertices.first - Vec3(1, 1, 0)).norm() == 0.0);
    CHECK((h.edge_vertices.second - Vec3(1, 0, 0)).norm() == 0.0);
    CHECK((h.omega - Vec3(0, -1, 0)).norm() < 1e-15);
    CHECK((h.q - h.edge_vertices.first).norm() == 0.0);
    CHECK(h.origin.kind == HingeOrigin::Kind::IntraSheet);
    CHECK(h.origin.edge == 1); // pattern edge [1,2]
}

TEST_CASE("buildGraph: degree-4 vertex has cyclomatic number 1") {
    const RFSModel m = genMiura({1, 1, 1.0, 1.0, 1.0});
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    CHECK(g.nodes.size() == 4);
    CHECK(g.edges.size() == 4);
    CHECK(static_cast<int>(g.edges.size()) - static_cast<int>(g.nodes.size()) + g.componentCount() == 1);
}

TEST_CASE("buildGraph: soldering merges facet nodes") {
    RFSModel m = parseModel(std::filesystem::path(TEST_DATA_DIR) / "smo_unit.json");
    m.connections[0].kind = ConnectionKind::Soldering;
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    CHECK(g.nodes.size() == 3); // f00 and f10 fused
    CHECK(g.edges.size() == 2); // the two intra-sheet creases only
    for (const HingeEdge &e : g.edges) CHECK(e.origin.kind == HingeOrigin::Kind::IntraSheet);
    // merged node id comes from the smallest member facet
    CHECK(g.bodyOf({0, 0}) == g.bodyOf({1, 0}));
    CHECK(g.nodes[0].members.size() == 2);
}

TEST_CASE("buildGraph: inter-sheet hinge carries the connection's edge") {
    const RFSModel m = parseModel(std::filesystem::path(TEST_DATA_DIR) / "smo_unit.json");
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    CHECK(g.nodes.size() == 4);
    REQUIRE(g.edges.size() == 3);
    const HingeEdge &inter = g.edges[2];
    CHECK(inter.origin.kind == HingeOrigin::Kind::InterSheet);
    CHECK(inter.origin.connection == 0);
    // shared segment y = 1 between x = 0 and x = 1
    CHECK(inter.edge_vertices.first.y() == 1.0);
    CHECK(inter.edge_vertices.second.y() == 1.0);
    CHECK(std::abs(inter.omega.x()) == 1.0);
}

// ---- minimumCycleBasis ---------------------------------------------------

TEST_CASE("mcb: plain cycle graph") {
    const FacetHingeGraph g = makeBareGraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const CycleBasis basis = minimumCycleBasis(g);
    REQUIRE(basis.L() == 1);
    CHECK(basis.loops[0].crossings.size() == 4);
    checkBasisInvariants(g, basis);
}

TEST_CASE("mcb: complete graph on four nodes") {
    const FacetHingeGraph g =
        makeBareGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const CycleBasis basis = minimumCycleBasis(g);
    REQUIRE(basis.L() == 3);
    int total = 0;
    for (const Loop &l : basis.loops) total += static_cast<int>(l.crossings.size());
    CHECK(total == 9);
    CHECK(total == exhaustiveMinBasisWeight(g, 3));
    checkBasisInvariants(g, basis);
}

TEST_CASE("mcb: 2x3 facet grid has two 4-loops") {
    // rows=1, cols=2 -> 2x3 facets, 7 interior hinges, 2 loops.
    const RFSModel m = genMiura({1, 2, 1.0, 1.0, 1.0});
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    CHECK(g.nodes.size() == 6);
    CHECK(g.edges.size() == 7);
    const CycleBasis basis = minimumCycleBasis(g);
    REQUIRE(basis.L() == 2);
    int total = 0;
    for (const Loop &l : basis.loops) total += static_cast<int>(l.crossings.size());
    CHECK(total == 8);
    CHECK(total == exhaustiveMinBasisWeight(g, 2));
    checkBasisInvariants(g, basis);
}

TEST_CASE("mcb: parallel edges form a two-crossing loop") {
    const FacetHingeGraph g = makeBareGraph(2, {{0, 1}, {0, 1}});
    const CycleBasis basis = minimumCycleBasis(g);
    REQUIRE(basis.L() == 1);
    CHECK(basis.loops[0].crossings.size() == 2);
}

TEST_CASE("mcb: acyclic graph yields an empty basis") {
    const FacetHingeGraph g = makeBareGraph(4, {{0, 1}, {1, 2}, {1, 3}});
    CHECK(minimumCycleBasis(g).L() == 0);
}

TEST_CASE("mcb: matches the exhaustive minimum on random graphs") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> nodeCount(3, 8);
        const int n = nodeCount(rng);
        std::set<std::pair<int, int>> edgeSet;
        std::vector<std::pair<int, int>> edges;
        // random spanning tree first, then extra edges up to 14 total
        for (int v = 1; v < n; ++v) {
            std::uniform_int_distribution<int> pick(0, v - 1);
            const int u = pick(rng);
            edges.push_back({u, v});
            edgeSet.insert({u, v});
        }
        std::uniform_int_distribution<int> extraCount(1, 14 - n + 1);
        const int extras = extraCount(rng);
        std::uniform_int_distribution<int> node(0, n - 1);
        for (int k = 0; k < extras && edges.size() < 14; ++k) {
            int a = node(rng), b = node(rng);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (!edgeSet.insert({a, b}).second) continue;
            edges.push_back({a, b});
        }
        const FacetHingeGraph g = makeBareGraph(n, edges);
        const int dim = static_cast<int>(edges.size()) - n + g.componentCount();
        const CycleBasis basis = minimumCycleBasis(g);
        REQUIRE(basis.L() == dim);
        int total = 0;
        for (const Loop &l : basis.loops) total += static_cast<int>(l.crossings.size());
        CHECK(total == exhaustiveMinBasisWeight(g, dim));
        checkBasisInvariants(g, basis);
    }
}

TEST_CASE("mcb: deterministic across repeated runs") {
    const RFSModel m = genMiura({2, 2, 1.0, 1.0, 1.0});
    const ValidationReport r = validateModel(m);
    const FacetHingeGraph g = buildGraph(m, r);
    const CycleBasis a = minimumCycleBasis(g);
    const CycleBasis b = minimumCycleBasis(g);
    REQUIRE(a.L() == b.L());
    for (size_t i = 0; i < a.loops.size(); ++i) {
        CHECK(a.loops[i].node_sequence == b.loops[i].node_sequence);
        for (size_t k = 0; k < a.loops[i].crossings.size(); ++k) {
            CHECK(a.loops[i].crossings[k].hinge == b.loops[i].crossings[k].hinge);
            CHECK(a.loops[i].crossings[k].dir == b.loops[i].crossings[k].dir);
        }
    }
}

// ---- classifyLoop ----------------------------------------------------------

TEST_CASE("classify: degree-4 vertex loop is non-perforated at the vertex") {
    const RFSModel m = genMiura({1, 1, 1.0, 1.0, 1.0});
    const ValidationReport r = validateModel(m);
    const FacetHingeGraph g = buildGraph(m, r);
    const CycleBasis basis = minimumCycleBasis(g);
    REQUIRE(basis.L() == 1);
    CHECK(basis.L_o == 1);
    CHECK(basis.loops[0].perforation == Perforation::NonPerforated);
    // interior vertex of the 2x2 facet grid
    const Vec3 interior = Vec3(1.0 + std::cos(1.0), std::sin(1.0), 0.0);
    CHECK((basis.loops[0].common_vertex - interior).norm() < 1e-12);
}

TEST_CASE("classify: kirigami ring loop is perforated") {
    const RFSModel m = genKirigamiSlit({});
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    CHECK(g.nodes.size() == 8);
    CHECK(g.edges.size() == 8);
    const CycleBasis basis = minimumCycleBasis(g);
    REQUIRE(basis.L() == 1);
    CHECK(basis.L_k == 1);
    CHECK(basis.loops[0].perforation == Perforation::Perforated);
    CHECK(basis.loops[0].crossings.size() == 8);
}

TEST_CASE("classify: stacked-Miura basis carries a perforated inter-sheet loop") {
    const RFSModel m = genStackedMiura({{1, 1, 1.0, 1.0, 1.0}, 2, -1, -1});
    const ValidationReport r = validateModel(m);
    REQUIRE(r.ok());
    const FacetHingeGraph g = buildGraph(m, r);
    const CycleBasis basis = minimumCycleBasis(g);
    CHECK(basis.L() == static_cast<int>(g.edges.size() - g.nodes.size()) + g.componentCount());
    bool foundInterSheetPerforated = false;
    for (const Loop &l : basis.loops) {
        if (l.perforation != Perforation::Perforated) continue;
        std::set<int> sheets;
        for (const Crossing &c : l.crossings) {
            const HingeOrigin &o = g.edges[size_t(c.hinge)].origin;
            if (o.kind == HingeOrigin::Kind::IntraSheet) sheets.insert(o.sheet);
        }
        if (sheets.size() >= 2) foundInterSheetPerforated = true;
    }
    CHECK(foundInterSheetPerforated);
    checkBasisInvariants(g, basis);
}
