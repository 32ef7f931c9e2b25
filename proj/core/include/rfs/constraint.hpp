#pragma once

#include "rfs/graph.hpp"
#include "rfs/screws.hpp"

#include <Eigen/Dense>

namespace rfs {

// One loop's velocity-level closure block. Non-perforated loops use the
// 3-row rotation-only form; perforated loops need all six rows.
struct LoopJacobian {
    int loop = 0;
    Eigen::MatrixXd matrix;          // (3 or 6) x crossings
    std::vector<Crossing> column_map; // loop position -> hinge id + direction
};

// Stacked loop blocks scattered to the global hinge coordinate vector.
// Column j belongs to hinge j; free hinges contribute identically zero
// columns. Row dimension is 3 L_o + 6 L_k.
struct PfaffianMatrix {
    Eigen::MatrixXd A;
    std::vector<std::pair<int, int>> row_blocks; // loop id -> [begin, end)
    Eigen::VectorXd theta;
    double rank_tolerance = 1e-8;
};

struct RankInfo {
    int rank = 0;
    int dof_active = 0;
    int dof_total = 0;
    Eigen::VectorXd singular_values;
};

// Ordered product of hinge exponentials around the loop; the identity
// whenever theta satisfies closure (exactly so at theta = 0).
Pose loopPose(const Loop &loop, const HingeScrewSet &screws, const Eigen::VectorXd &theta);

// Columns are adjoint-transported effective screws (6 rows).
LoopJacobian loopJacobian(const Loop &loop, const HingeScrewSet &screws,
                          const Eigen::VectorXd &theta);

// Rotation-only form for non-perforated loops: column k is the partial
// rotation product applied to the k-th effective axis. Throws
// std::domain_error on a perforated loop.
LoopJacobian truncatedLoopJacobian(const Loop &loop, const HingeScrewSet &screws,
                                   const Eigen::VectorXd &theta);

PfaffianMatrix assemblePfaffian(const CycleBasis &basis, const HingeScrewSet &screws,
                                int hinge_count, const Eigen::VectorXd &theta,
                                double rank_tolerance = 1e-8);

RankInfo rankAndDof(const PfaffianMatrix &A, const ActiveSet &active);

// Orthonormal basis of the admissible hinge velocities; identity when there
// are no constraint rows.
Eigen::MatrixXd nullSpaceBasis(const PfaffianMatrix &A);

} // namespace rfs
