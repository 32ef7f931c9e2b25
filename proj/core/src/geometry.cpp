#include "rfs/geometry.hpp"

#include <queue>

namespace rfs {

FoldedState foldGeometry(const KinematicModel &km, const Eigen::VectorXd &theta) {
    const FacetHingeGraph &graph = km.graph;
    const int nBodies = static_cast<int>(graph.nodes.size());

    FoldedState state;
    state.theta = theta;
    state.body_poses.assign(static_cast<size_t>(nBodies), Pose::Identity());

    std::vector<char> visited(static_cast<size_t>(nBodies), 0);
    const int root = graph.body_of_facet.empty() || graph.body_of_facet[0].empty()
                         ? 0
                         : graph.body_of_facet[0][0];
    for (int start = 0; start < nBodies; ++start) {
        // Disconnected components fold from their lowest body at identity.
        const int r = (start == 0) ? root : start;
        if (visited[static_cast<size_t>(r)]) continue;
        visited[static_cast<size_t>(r)] = 1;
        std::queue<int> queue;
        queue.push(r);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop();
            for (const auto &[eid, v] : graph.adjacency[static_cast<size_t>(u)]) {
                if (visited[static_cast<size_t>(v)]) continue;
                visited[static_cast<size_t>(v)] = 1;
                const HingeScrew &hs = km.screws.of(eid);
                const double sign = (hs.node_p == u && hs.node_q == v) ? 1.0 : -1.0;
                state.body_poses[static_cast<size_t>(v)] =
                    state.body_poses[static_cast<size_t>(u)] *
                    poseExp(hs.screw, sign * theta[eid]);
                queue.push(v);
            }
        }
    }

    // Each vertex follows the lowest body that owns a facet using it.
    state.folded_vertices.resize(km.model.sheets.size());
    for (size_t si = 0; si < km.model.sheets.size(); ++si) {
        const Sheet &sheet = km.model.sheets[si];
        std::vector<int> owner(sheet.vertices.size(), -1);
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi) {
            const int body = graph.body_of_facet[si][fi];
            for (int v : sheet.facets[fi]) {
                int &o = owner[static_cast<size_t>(v)];
                if (o < 0 || body < o) o = body;
            }
        }
        state.folded_vertices[si].resize(sheet.vertices.size());
        for (size_t v = 0; v < sheet.vertices.size(); ++v) {
            const Pose &pose = owner[v] >= 0 ? state.body_poses[static_cast<size_t>(owner[v])]
                                             : Pose::Identity();
            state.folded_vertices[si][v] = pose.apply(sheet.vertices[v]);
        }
    }
    return state;
}

} // namespace rfs
