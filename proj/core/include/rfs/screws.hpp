#pragma once

#include "rfs/graph.hpp"
#include "rfs/lie.hpp"

#include <vector>

namespace rfs {

enum class PolaritySource { SheetSeed, Propagated };

// Final oriented screw of one hinge: positive theta rotates node_q relative
// to node_p about the zero-pitch screw. For intra-sheet hinges the sense is
// the sheet's mountain-positive convention anchored at its seed facet.
struct HingeScrew {
    int hinge = 0;
    ScrewAxis screw;
    int node_p = 0;
    int node_q = 0;
    // -1 when the stored sense is the reverse of the graph's construction
    // order (only inter-sheet hinges re-based by propagation flip).
    int orientation = 1;
    PolaritySource source = PolaritySource::SheetSeed;
};

struct HingeScrewSet {
    std::vector<HingeScrew> screws; // indexed by hinge id

    const HingeScrew &of(int hinge) const { return screws[static_cast<size_t>(hinge)]; }
    // Sign with which a loop crossing applies the stored screw.
    int effectiveDir(const Crossing &c) const {
        const HingeScrew &s = of(c.hinge);
        return c.dir * s.orientation;
    }
    ScrewAxis effectiveScrew(const Crossing &c) const {
        const HingeScrew &s = of(c.hinge);
        const double d = static_cast<double>(effectiveDir(c));
        return {d * s.screw.omega, d * s.screw.v, s.screw.pitch};
    }
};

// Per-loop traversal directions and per-hinge base orientations produced by
// the propagation stage.
struct BaseOrientation {
    std::vector<int> loop_direction; // +1 keeps the stored node_sequence
    std::vector<int> hinge_orientation; // +-1 vs graph stored order, 0 = not in any loop
};

struct NonOrientableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidSheetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixes one seed loop's traversal from the seed facet's orientation and
// propagates breadth-first: loops sharing a hinge must cross it in opposite
// directions. A contradiction means the structure is not orientable.
BaseOrientation establishBaseOrientation(const CycleBasis &basis, const FacetHingeGraph &graph,
                                         const RFSModel &model, const ValidationReport &report);

// Reconciles the propagated orientation with each sheet's seed convention
// (one sign flip per sheet at most) and emits the final screw set, including
// zero-pitch screws for free hinges. Throws InvalidSheetError when a sheet's
// loops disagree on traversal sense.
HingeScrewSet applySheetPolarity(const RFSModel &model, const ValidationReport &report,
                                 const FacetHingeGraph &graph, const CycleBasis &basis,
                                 const BaseOrientation &orientation);

// Hinges participating in basis loops, ascending id; the remainder are free.
struct ActiveSet {
    std::vector<int> active;
    std::vector<int> free_hinges;
    std::vector<bool> is_active; // indexed by hinge id
};
ActiveSet selectActive(const CycleBasis &basis, const FacetHingeGraph &graph);

} // namespace rfs
