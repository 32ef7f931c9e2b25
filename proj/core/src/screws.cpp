#include "rfs/screws.hpp"
#include "rfs/pipeline.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace rfs {

namespace {

// Sheet normal implied by the seed facet's stored order and declared
// orientation.
Vec3 sheetNormal(const Sheet &sheet) {
    Vec3 n = Vec3::Zero();
    const auto &seed = sheet.facets.front();
    const int k = static_cast<int>(seed.size());
    for (int i = 0; i < k; ++i) {
        const Vec3 &a = sheet.vertices[static_cast<size_t>(seed[static_cast<size_t>(i)])];
        const Vec3 &b = sheet.vertices[static_cast<size_t>(seed[static_cast<size_t>((i + 1) % k)])];
        n += a.cross(b);
    }
    n.normalize();
    return sheet.seed_orientation == SeedOrientation::Ccw ? n : Vec3(-n);
}

// Sheet that owns every hinge of the loop, if there is one.
std::optional<int> loopSheet(const Loop &loop, const FacetHingeGraph &graph, const RFSModel &model) {
    std::optional<int> sheet;
    for (const Crossing &c : loop.crossings) {
        const HingeOrigin &o = graph.edges[static_cast<size_t>(c.hinge)].origin;
        if (o.kind != HingeOrigin::Kind::IntraSheet) return std::nullopt;
        if (o.sheet < 0 || o.sheet >= static_cast<int>(model.sheets.size())) return std::nullopt;
        if (sheet && *sheet != o.sheet) return std::nullopt;
        sheet = o.sheet;
    }
    return sheet;
}

Vec3 bodyCentroid(const BodyNode &node, const RFSModel &model) {
    Vec3 c = Vec3::Zero();
    int count = 0;
    for (const FacetRef &f : node.members) {
        const Sheet &sheet = model.sheets[static_cast<size_t>(f.sheet)];
        for (int v : sheet.facets[static_cast<size_t>(f.facet)]) {
            c += sheet.vertices[static_cast<size_t>(v)];
            ++count;
        }
    }
    return count ? Vec3(c / double(count)) : c;
}

// Sign of the loop's stored node_sequence circulation about the sheet normal.
int traversalSign(const Loop &loop, const FacetHingeGraph &graph, const RFSModel &model,
                  const Vec3 &normal) {
    Vec3 area = Vec3::Zero();
    const size_t n = loop.node_sequence.size() - 1; // sequence is closed
    for (size_t i = 0; i < n; ++i) {
        const Vec3 a = bodyCentroid(graph.nodes[static_cast<size_t>(loop.node_sequence[i])], model);
        const Vec3 b = bodyCentroid(graph.nodes[static_cast<size_t>(loop.node_sequence[i + 1])], model);
        area += a.cross(b);
    }
    const double s = normal.dot(area);
    return s >= 0.0 ? +1 : -1;
}

} // namespace

BaseOrientation establishBaseOrientation(const CycleBasis &basis, const FacetHingeGraph &graph,
                                         const RFSModel &model, const ValidationReport &report) {
    BaseOrientation bo;
    bo.loop_direction.assign(basis.loops.size(), 0);
    bo.hinge_orientation.assign(graph.edges.size(), 0);
    if (basis.loops.empty()) return bo;

    // hinge -> (loop, crossing dir) incidences
    std::map<int, std::vector<std::pair<int, int>>> sharing;
    for (const Loop &loop : basis.loops)
        for (const Crossing &c : loop.crossings)
            sharing[c.hinge].emplace_back(loop.id, c.dir);

    // The global seed loop: the basis loop containing the lowest hinge id
    // incident to the body of sheet 0's seed facet.
    int seedLoop = -1;
    if (!graph.body_of_facet.empty() && !graph.body_of_facet[0].empty()) {
        const int seedBody = graph.body_of_facet[0][0];
        int bestHinge = -1;
        for (const auto &[eid, other] : graph.adjacency[static_cast<size_t>(seedBody)])
            if (sharing.count(eid) && (bestHinge < 0 || eid < bestHinge)) bestHinge = eid;
        if (bestHinge >= 0)
            for (const auto &[lid, dir] : sharing[bestHinge])
                seedLoop = seedLoop < 0 ? lid : std::min(seedLoop, lid);
    }

    auto seedDirection = [&](const Loop &loop) {
        // Counterclockwise about the owning sheet's normal when the loop is
        // intra-sheet; otherwise the lowest hinge id is crossed positively.
        if (auto sheet = loopSheet(loop, graph, model)) {
            const Vec3 n = sheetNormal(model.sheets[static_cast<size_t>(*sheet)]);
            return traversalSign(loop, graph, model, n);
        }
        const Crossing *lowest = &loop.crossings.front();
        for (const Crossing &c : loop.crossings)
            if (c.hinge < lowest->hinge) lowest = &c;
        return lowest->dir;
    };

    for (size_t start = 0; start < basis.loops.size(); ++start) {
        // Seed each connected component of the loop-adjacency graph; the
        // component containing the global seed loop starts there.
        size_t root = start;
        if (bo.loop_direction[root] != 0) continue;
        if (seedLoop >= 0 && bo.loop_direction[static_cast<size_t>(seedLoop)] == 0) root = static_cast<size_t>(seedLoop);

        bo.loop_direction[root] = seedDirection(basis.loops[root]);
        std::queue<int> queue;
        queue.push(static_cast<int>(root));
        while (!queue.empty()) {
            const int lid = queue.front();
            queue.pop();
            const Loop &loop = basis.loops[static_cast<size_t>(lid)];
            const int dir = bo.loop_direction[static_cast<size_t>(lid)];
            for (const Crossing &c : loop.crossings) {
                const int effective = dir * c.dir;
                int &assigned = bo.hinge_orientation[static_cast<size_t>(c.hinge)];
                if (assigned == 0) assigned = effective;
                // Adjacent loops must cross the shared hinge oppositely.
                for (const auto &[olid, odir] : sharing[c.hinge]) {
                    if (olid == lid) continue;
                    const int required = -effective * odir; // direction for loop olid
                    int &other = bo.loop_direction[static_cast<size_t>(olid)];
                    if (other == 0) {
                        other = required;
                        queue.push(olid);
                    } else if (other != required) {
                        throw NonOrientableError(
                            "orientation propagation conflict at hinge " + std::to_string(c.hinge) +
                            " between loops " + std::to_string(lid) + " and " + std::to_string(olid));
                    }
                }
            }
        }
    }
    (void)report;
    return bo;
}

HingeScrewSet applySheetPolarity(const RFSModel &model, const ValidationReport &report,
                                 const FacetHingeGraph &graph, const CycleBasis &basis,
                                 const BaseOrientation &orientation) {
    // Phase check: all of a sheet's own loops must circulate the same way
    // under the propagated directions; a mixed sheet groups hinges that the
    // base orientation already requires to move in opposite phase.
    std::map<int, std::set<int>> sheetSigns;
    for (const Loop &loop : basis.loops) {
        if (auto sheet = loopSheet(loop, graph, model)) {
            const Vec3 n = sheetNormal(model.sheets[static_cast<size_t>(*sheet)]);
            const int stored = traversalSign(loop, graph, model, n);
            const int dir = orientation.loop_direction[static_cast<size_t>(loop.id)];
            if (dir != 0) sheetSigns[*sheet].insert(stored * dir);
        }
    }
    for (const auto &[sheet, signs] : sheetSigns)
        if (signs.size() > 1)
            throw InvalidSheetError("sheet " + std::to_string(sheet) +
                                    " groups out-of-phase hinges (invalid sheet)");

    HingeScrewSet set;
    set.screws.reserve(graph.edges.size());
    for (const HingeEdge &e : graph.edges) {
        HingeScrew hs;
        hs.hinge = e.id;
        hs.node_p = e.node_p;
        hs.node_q = e.node_q;

        const bool intra = e.origin.kind == HingeOrigin::Kind::IntraSheet;
        // The graph already stores the mountain-positive sense for intra-sheet
        // hinges (edge directed as node_q's facet traverses it). A clockwise
        // seed declaration flips the whole sheet's sense.
        double sign = 1.0;
        if (intra) {
            const Sheet &sheet = model.sheets[static_cast<size_t>(e.origin.sheet)];
            if (sheet.seed_orientation == SeedOrientation::Cw) sign = -1.0;
            hs.source = PolaritySource::SheetSeed;
            hs.orientation = 1;
        } else {
            // Inter-sheet hinges are re-anchored to the propagated direction:
            // the pair swaps with the axis so the physical motion is kept and
            // the reported positive direction is the one the loops resolved.
            // Hinges outside every loop keep the declared (a -> b) sense.
            const int bo = orientation.hinge_orientation[static_cast<size_t>(e.id)];
            hs.orientation = bo == 0 ? 1 : bo;
            hs.source = bo == 0 ? PolaritySource::SheetSeed : PolaritySource::Propagated;
            if (hs.orientation < 0) {
                std::swap(hs.node_p, hs.node_q);
                sign = -1.0;
            }
        }

        hs.screw = screwFromGeometry(sign * e.omega, e.q, 0.0);
        set.screws.push_back(std::move(hs));
    }
    (void)report;
    return set;
}

ActiveSet selectActive(const CycleBasis &basis, const FacetHingeGraph &graph) {
    ActiveSet out;
    out.is_active.assign(graph.edges.size(), false);
    for (const Loop &loop : basis.loops)
        for (const Crossing &c : loop.crossings) out.is_active[static_cast<size_t>(c.hinge)] = true;
    for (size_t h = 0; h < graph.edges.size(); ++h)
        (out.is_active[h] ? out.active : out.free_hinges).push_back(static_cast<int>(h));
    return out;
}

KinematicModel buildKinematics(RFSModel model, const NumericPolicy &policy) {
    KinematicModel km;
    km.policy = policy;
    km.model = std::move(model);
    km.report = validateModel(km.model, policy);
    if (!km.report.ok()) {
        std::ostringstream msg;
        msg << "model failed validation:";
        for (const Finding &f : km.report.errors)
            msg << "\n  [" << f.code << "] " << f.location << ": " << f.message;
        throw ValidationFailure(msg.str(), km.report);
    }
    km.graph = buildGraph(km.model, km.report, policy);
    km.basis = minimumCycleBasis(km.graph, policy);
    const BaseOrientation bo = establishBaseOrientation(km.basis, km.graph, km.model, km.report);
    km.screws = applySheetPolarity(km.model, km.report, km.graph, km.basis, bo);
    km.active = selectActive(km.basis, km.graph);
    return km;
}

} // namespace rfs
