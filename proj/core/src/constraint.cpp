#include "rfs/constraint.hpp"

#include <stdexcept>

namespace rfs {

Pose loopPose(const Loop &loop, const HingeScrewSet &screws, const Eigen::VectorXd &theta) {
    Pose T;
    for (const Crossing &c : loop.crossings) {
        const HingeScrew &hs = screws.of(c.hinge);
        const double rho = screws.effectiveDir(c) * theta[c.hinge];
        T = T * poseExp(hs.screw, rho);
    }
    return T;
}

LoopJacobian loopJacobian(const Loop &loop, const HingeScrewSet &screws,
                          const Eigen::VectorXd &theta) {
    LoopJacobian J;
    J.loop = loop.id;
    J.column_map = loop.crossings;
    J.matrix.resize(6, static_cast<Eigen::Index>(loop.crossings.size()));
    Pose T;
    for (size_t k = 0; k < loop.crossings.size(); ++k) {
        const Crossing &c = loop.crossings[k];
        const ScrewAxis xi = screws.effectiveScrew(c);
        J.matrix.col(static_cast<Eigen::Index>(k)) = adjoint(T) * xi.vector();
        T = T * poseExp(xi, theta[c.hinge]);
    }
    return J;
}

LoopJacobian truncatedLoopJacobian(const Loop &loop, const HingeScrewSet &screws,
                                   const Eigen::VectorXd &theta) {
    if (loop.perforation != Perforation::NonPerforated)
        throw std::domain_error("truncatedLoopJacobian: loop is perforated");
    LoopJacobian J;
    J.loop = loop.id;
    J.column_map = loop.crossings;
    J.matrix.resize(3, static_cast<Eigen::Index>(loop.crossings.size()));
    Mat3 R = Mat3::Identity();
    for (size_t k = 0; k < loop.crossings.size(); ++k) {
        const Crossing &c = loop.crossings[k];
        const ScrewAxis xi = screws.effectiveScrew(c);
        J.matrix.col(static_cast<Eigen::Index>(k)) = R * xi.omega;
        R = R * rotExp(xi.omega, theta[c.hinge]);
    }
    return J;
}

PfaffianMatrix assemblePfaffian(const CycleBasis &basis, const HingeScrewSet &screws,
                                int hinge_count, const Eigen::VectorXd &theta,
                                double rank_tolerance) {
    int rows = 0;
    for (const Loop &loop : basis.loops)
        rows += loop.perforation == Perforation::NonPerforated ? 3 : 6;

    PfaffianMatrix P;
    P.A = Eigen::MatrixXd::Zero(rows, hinge_count);
    P.theta = theta;
    P.rank_tolerance = rank_tolerance;
    P.row_blocks.resize(basis.loops.size());

    int row = 0;
    for (const Loop &loop : basis.loops) {
        const bool truncated = loop.perforation == Perforation::NonPerforated;
        const LoopJacobian J =
            truncated ? truncatedLoopJacobian(loop, screws, theta) : loopJacobian(loop, screws, theta);
        const int height = static_cast<int>(J.matrix.rows());
        for (size_t k = 0; k < J.column_map.size(); ++k)
            P.A.block(row, J.column_map[k].hinge, height, 1) +=
                J.matrix.col(static_cast<Eigen::Index>(k));
        P.row_blocks[static_cast<size_t>(loop.id)] = {row, row + height};
        row += height;
    }
    return P;
}

namespace {

Eigen::BDCSVD<Eigen::MatrixXd> fullSvd(const Eigen::MatrixXd &A) {
    return Eigen::BDCSVD<Eigen::MatrixXd>(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
}

int svdRank(const Eigen::VectorXd &sv, double relTol) {
    if (sv.size() == 0) return 0;
    const double cutoff = relTol * sv[0];
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff && sv[i] > 0.0) ++rank;
    return rank;
}

} // namespace

RankInfo rankAndDof(const PfaffianMatrix &P, const ActiveSet &active) {
    RankInfo info;
    if (P.A.rows() == 0) {
        info.rank = 0;
        info.singular_values.resize(0);
    } else {
        const auto svd = fullSvd(P.A);
        info.singular_values = svd.singularValues();
        info.rank = svdRank(info.singular_values, P.rank_tolerance);
    }
    info.dof_active = static_cast<int>(active.active.size()) - info.rank;
    info.dof_total = info.dof_active + static_cast<int>(active.free_hinges.size());
    return info;
}

Eigen::MatrixXd nullSpaceBasis(const PfaffianMatrix &P) {
    const Eigen::Index n = P.A.cols();
    if (P.A.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
    const auto svd = fullSvd(P.A);
    const int rank = svdRank(svd.singularValues(), P.rank_tolerance);
    return svd.matrixV().rightCols(n - rank);
}

} // namespace rfs
