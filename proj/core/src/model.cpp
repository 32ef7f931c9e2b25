#include "rfs/model.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace rfs {

double RFSModel::bboxDiagonal() const {
    Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
    Vec3 hi = -lo;
    bool any = false;
    for (const Sheet &s : sheets)
        for (const Vec3 &v : s.vertices) {
            lo = lo.cwiseMin(v);
            hi = hi.cwiseMax(v);
            any = true;
        }
    return any ? (hi - lo).norm() : 0.0;
}

int RFSModel::facetCount() const {
    int n = 0;
    for (const Sheet &s : sheets) n += static_cast<int>(s.facets.size());
    return n;
}

bool ValidationReport::hasError(const std::string &code) const {
    return std::any_of(errors.begin(), errors.end(),
                       [&](const Finding &f) { return f.code == code; });
}

std::vector<int> orientedFacet(const Sheet &sheet, int facet, bool flipped) {
    std::vector<int> verts = sheet.facets[static_cast<size_t>(facet)];
    if (flipped) std::reverse(verts.begin(), verts.end());
    return verts;
}

std::vector<std::vector<bool>> orientFacets(const RFSModel &model) {
    std::vector<std::vector<bool>> map;
    map.reserve(model.sheets.size());

    for (size_t si = 0; si < model.sheets.size(); ++si) {
        const Sheet &sheet = model.sheets[si];
        const int nf = static_cast<int>(sheet.facets.size());
        std::vector<bool> flip(static_cast<size_t>(nf), false);
        std::vector<int> state(static_cast<size_t>(nf), 0); // 0 unvisited, 1 fixed

        // Directed edges of each facet in stored order; a shared undirected
        // edge must end up oppositely directed in its two facets.
        struct Incidence {
            int facet;
            bool forward; // stored order traverses (a,b) with a < b
        };
        std::map<std::pair<int, int>, std::vector<Incidence>> edges;
        for (int f = 0; f < nf; ++f) {
            const auto &vs = sheet.facets[static_cast<size_t>(f)];
            const int k = static_cast<int>(vs.size());
            for (int i = 0; i < k; ++i) {
                int a = vs[static_cast<size_t>(i)];
                int b = vs[static_cast<size_t>((i + 1) % k)];
                const bool fwd = a < b;
                if (!fwd) std::swap(a, b);
                edges[{a, b}].push_back({f, fwd});
            }
        }

        for (int root = 0; root < nf; ++root) {
            if (state[static_cast<size_t>(root)]) continue;
            state[static_cast<size_t>(root)] = 1; // roots (seed first) keep stored order
            std::vector<int> queue{root};
            for (size_t qi = 0; qi < queue.size(); ++qi) {
                const int f = queue[qi];
                for (const auto &[key, inc] : edges) {
                    if (inc.size() != 2) continue;
                    const Incidence *self = nullptr, *other = nullptr;
                    if (inc[0].facet == f && inc[1].facet != f) {
                        self = &inc[0];
                        other = &inc[1];
                    } else if (inc[1].facet == f && inc[0].facet != f) {
                        self = &inc[1];
                        other = &inc[0];
                    } else {
                        continue;
                    }
                    // Effective directions must differ across the edge.
                    const bool effSelf = self->forward != flip[static_cast<size_t>(f)];
                    const bool wantOtherFlip = (other->forward == effSelf);
                    const size_t of = static_cast<size_t>(other->facet);
                    if (!state[of]) {
                        flip[of] = wantOtherFlip;
                        state[of] = 1;
                        queue.push_back(other->facet);
                    } else if (flip[of] != wantOtherFlip) {
                        throw OrientationError(
                            "orientation conflict at sheet " + std::to_string(si) +
                            " facet " + std::to_string(other->facet) +
                            ": contradictory flip demands (non-orientable sheet)");
                    }
                }
            }
        }
        map.push_back(std::move(flip));
    }
    return map;
}

} // namespace rfs
