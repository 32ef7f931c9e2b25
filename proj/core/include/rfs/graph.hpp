#pragma once

#include "rfs/model.hpp"

#include <utility>
#include <vector>

namespace rfs {

// A rigid body: one facet, or several fused by soldering.
struct BodyNode {
    int id = 0;
    std::vector<FacetRef> members; // sorted by (sheet, facet)
};

struct HingeOrigin {
    enum class Kind { IntraSheet, InterSheet };
    Kind kind = Kind::IntraSheet;
    int sheet = -1;      // intra-sheet: owning sheet
    int edge = -1;       // intra-sheet: index into the sheet's pattern_edges, -1 if unlisted
    int connection = -1; // inter-sheet: index into model.connections
};

// Revolute hinge between two bodies. The stored (node_p, node_q) order plus
// omega define the positive fold sense: positive theta rotates node_q
// relative to node_p about the axis through q along omega. For intra-sheet
// hinges omega runs along the shared edge as traversed by node_q's facet, so
// positive theta folds the pair toward the sheet normal.
struct HingeEdge {
    int id = 0;
    int node_p = 0;
    int node_q = 0;
    Vec3 omega = Vec3::UnitX();
    Vec3 q = Vec3::Zero();
    std::pair<Vec3, Vec3> edge_vertices{Vec3::Zero(), Vec3::Zero()};
    HingeOrigin origin;
};

struct FacetHingeGraph {
    std::vector<BodyNode> nodes;
    std::vector<HingeEdge> edges;
    // adjacency[node] = (edge id, other node), sorted by (other, edge id)
    std::vector<std::vector<std::pair<int, int>>> adjacency;
    std::vector<std::vector<int>> body_of_facet; // [sheet][facet] -> node id
    double bbox_diagonal = 0.0;

    int bodyOf(const FacetRef &f) const {
        return body_of_facet[static_cast<size_t>(f.sheet)][static_cast<size_t>(f.facet)];
    }
    int componentCount() const;
    void rebuildAdjacency();
};

struct Crossing {
    int hinge = 0;
    int dir = 1; // +1: traversed node_p -> node_q
};

enum class Perforation { NonPerforated, Perforated };

// A closure loop of the basis: ordered hinge crossings with direction signs,
// the closed body sequence, and the perforation class (non-perforated loops
// have all hinge endpoints meeting at a common vertex).
struct Loop {
    int id = 0;
    std::vector<Crossing> crossings;
    std::vector<int> node_sequence;
    Perforation perforation = Perforation::Perforated;
    Vec3 common_vertex = Vec3::Zero();
};

struct CycleBasis {
    std::vector<Loop> loops;
    int L_o = 0; // non-perforated
    int L_k = 0; // perforated
    int L() const { return L_o + L_k; }
};

// Converts a validated model into bodies and hinges: interior shared pattern
// edges become hinges, hinging connections contribute one hinge each, and
// soldering (including degenerate hinging contacts) merges nodes.
// Requires report.ok().
FacetHingeGraph buildGraph(const RFSModel &model, const ValidationReport &report,
                           const NumericPolicy &policy = {});

// Horton candidate generation + greedy independence filtering over GF(2)
// edge-membership vectors. Deterministic: candidates are ordered by weight
// then by their sorted hinge-id lists.
CycleBasis minimumCycleBasis(const FacetHingeGraph &graph, const NumericPolicy &policy = {});

// Non-perforated iff every hinge of the loop has an endpoint at one common
// coordinate (within the model coincidence tolerance).
Perforation classifyLoop(const Loop &loop, const FacetHingeGraph &graph,
                         const NumericPolicy &policy, Vec3 *common_vertex = nullptr);

// Test/analysis helper: a graph with given topology and placeholder geometry.
FacetHingeGraph makeBareGraph(int nodes, const std::vector<std::pair<int, int>> &edges);

} // namespace rfs
