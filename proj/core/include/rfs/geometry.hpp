#pragma once

#include "rfs/pipeline.hpp"

namespace rfs {

// World pose per body plus folded vertex positions, reconstructed from theta
// by composing hinge exponentials along a breadth-first spanning tree rooted
// at the body of sheet 0's seed facet. Home transforms are the identity
// because all screws live in the space frame at home.
struct FoldedState {
    Eigen::VectorXd theta;
    std::vector<Pose> body_poses;
    std::vector<std::vector<Vec3>> folded_vertices; // [sheet][vertex]
};

FoldedState foldGeometry(const KinematicModel &km, const Eigen::VectorXd &theta);

} // namespace rfs
