#include "rfs/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace rfs {

namespace {

// GF(2) edge-membership vector packed into 64-bit words.
struct BitVec {
    std::vector<std::uint64_t> words;
    explicit BitVec(int bits) : words(static_cast<size_t>((bits + 63) / 64), 0) {}
    void set(int i) { words[static_cast<size_t>(i) / 64] ^= (std::uint64_t{1} << (i % 64)); }
    bool test(int i) const { return (words[static_cast<size_t>(i) / 64] >> (i % 64)) & 1; }
    void operator^=(const BitVec &o) {
        for (size_t w = 0; w < words.size(); ++w) words[w] ^= o.words[w];
    }
    bool oddIntersection(const std::vector<int> &edges) const {
        bool odd = false;
        for (int e : edges) odd ^= test(e);
        return odd;
    }
};

// Minimum-weight cycle whose intersection with the witness edge set is odd,
// via breadth-first search in the parity double cover: node (v, p) connects
// to (u, p xor [e in witness]) for each incident edge e = (v, u). Minimising
// the (v,0) -> (v,1) distance over all start nodes makes the odd-multiplicity
// edge set of the best walk a single simple cycle.
std::vector<int> minOddCycle(const FacetHingeGraph &g, const BitVec &witness) {
    const int n = static_cast<int>(g.nodes.size());
    auto cover = [](int v, int p) { return 2 * v + p; };

    int bestSrc = -1, bestDist = -1;
    std::vector<int> dist, parentNode, parentEdge;
    std::vector<int> bestParentNode, bestParentEdge;

    for (int src = 0; src < n; ++src) {
        dist.assign(static_cast<size_t>(2 * n), -1);
        parentNode.assign(static_cast<size_t>(2 * n), -1);
        parentEdge.assign(static_cast<size_t>(2 * n), -1);
        std::queue<int> q;
        dist[static_cast<size_t>(cover(src, 0))] = 0;
        q.push(cover(src, 0));
        while (!q.empty()) {
            const int cur = q.front();
            q.pop();
            const int v = cur / 2, p = cur % 2;
            if (bestDist >= 0 && dist[static_cast<size_t>(cur)] >= bestDist) continue;
            for (const auto &[eid, u] : g.adjacency[static_cast<size_t>(v)]) {
                const int next = cover(u, p ^ (witness.test(eid) ? 1 : 0));
                if (dist[static_cast<size_t>(next)] != -1) continue;
                dist[static_cast<size_t>(next)] = dist[static_cast<size_t>(cur)] + 1;
                parentNode[static_cast<size_t>(next)] = cur;
                parentEdge[static_cast<size_t>(next)] = eid;
                q.push(next);
            }
        }
        const int d = dist[static_cast<size_t>(cover(src, 1))];
        if (d >= 0 && (bestDist < 0 || d < bestDist)) {
            bestDist = d;
            bestSrc = src;
            bestParentNode = parentNode;
            bestParentEdge = parentEdge;
        }
    }
    if (bestSrc < 0) throw std::logic_error("minimumCycleBasis: witness without an odd cycle");

    // Walk the best path back and keep edges used an odd number of times.
    std::map<int, int> multiplicity;
    for (int cur = cover(bestSrc, 1); cur != cover(bestSrc, 0);
         cur = bestParentNode[static_cast<size_t>(cur)])
        ++multiplicity[bestParentEdge[static_cast<size_t>(cur)]];
    std::vector<int> cycle;
    for (const auto &[eid, count] : multiplicity)
        if (count % 2) cycle.push_back(eid);
    return cycle;
}

Loop loopFromEdges(const FacetHingeGraph &g, const std::vector<int> &edges, int loopId) {
    std::set<int> edgeSet(edges.begin(), edges.end());
    int start = g.edges[static_cast<size_t>(edges.front())].node_p;
    for (int eid : edges) {
        const HingeEdge &e = g.edges[static_cast<size_t>(eid)];
        start = std::min({start, e.node_p, e.node_q});
    }

    Loop loop;
    loop.id = loopId;
    loop.node_sequence.push_back(start);
    int current = start;
    int viaEdge = -1;
    do {
        int nextEdge = -1, nextNode = -1;
        for (const auto &[eid, v] : g.adjacency[static_cast<size_t>(current)]) {
            if (!edgeSet.count(eid) || eid == viaEdge) continue;
            nextEdge = eid;
            nextNode = v;
            break; // adjacency is sorted: deterministic walk direction
        }
        if (nextEdge < 0) throw std::logic_error("minimumCycleBasis: cycle reconstruction failed");
        const HingeEdge &e = g.edges[static_cast<size_t>(nextEdge)];
        loop.crossings.push_back({nextEdge, current == e.node_p ? +1 : -1});
        loop.node_sequence.push_back(nextNode);
        viaEdge = nextEdge;
        current = nextNode;
    } while (current != start);
    return loop;
}

} // namespace

CycleBasis minimumCycleBasis(const FacetHingeGraph &graph, const NumericPolicy &policy) {
    CycleBasis basis;
    const int nEdges = static_cast<int>(graph.edges.size());
    const int nNodes = static_cast<int>(graph.nodes.size());
    if (nNodes == 0 || nEdges == 0) return basis;
    const int dimension = nEdges - nNodes + graph.componentCount();
    if (dimension <= 0) return basis;

    // Spanning forest; non-tree edges seed the witness vectors.
    std::vector<char> inTree(static_cast<size_t>(nEdges), 0);
    std::vector<char> seen(static_cast<size_t>(nNodes), 0);
    for (int root = 0; root < nNodes; ++root) {
        if (seen[static_cast<size_t>(root)]) continue;
        seen[static_cast<size_t>(root)] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto &[eid, v] : graph.adjacency[static_cast<size_t>(u)])
                if (!seen[static_cast<size_t>(v)]) {
                    seen[static_cast<size_t>(v)] = 1;
                    inTree[static_cast<size_t>(eid)] = 1;
                    q.push(v);
                }
        }
    }

    std::vector<BitVec> witnesses;
    witnesses.reserve(static_cast<size_t>(dimension));
    for (int e = 0; e < nEdges; ++e)
        if (!inTree[static_cast<size_t>(e)]) {
            BitVec w(nEdges);
            w.set(e);
            witnesses.push_back(std::move(w));
        }
    if (static_cast<int>(witnesses.size()) != dimension)
        throw std::logic_error("minimumCycleBasis: forest bookkeeping broke");

    // Witness elimination: each phase extracts the lightest cycle that is
    // independent of everything chosen so far, which yields an exact minimum
    // cycle basis.
    for (int i = 0; i < dimension; ++i) {
        const std::vector<int> cycle = minOddCycle(graph, witnesses[static_cast<size_t>(i)]);
        for (int j = i + 1; j < dimension; ++j)
            if (witnesses[static_cast<size_t>(j)].oddIntersection(cycle))
                witnesses[static_cast<size_t>(j)] ^= witnesses[static_cast<size_t>(i)];

        Loop loop = loopFromEdges(graph, cycle, i);
        loop.perforation = classifyLoop(loop, graph, policy, &loop.common_vertex);
        basis.loops.push_back(std::move(loop));
    }

    for (const Loop &l : basis.loops)
        (l.perforation == Perforation::NonPerforated ? basis.L_o : basis.L_k)++;
    return basis;
}

} // namespace rfs
