#pragma once

#include "rfs/constraint.hpp"
#include "rfs/model.hpp"

namespace rfs {

// Everything derived from one validated model: bodies and hinges, the
// minimum cycle basis, oriented screws and the active hinge set. This is the
// working state shared by the solver, the exporters and the CLI.
struct KinematicModel {
    RFSModel model;
    ValidationReport report;
    FacetHingeGraph graph;
    CycleBasis basis;
    HingeScrewSet screws;
    ActiveSet active;
    NumericPolicy policy;

    int hingeCount() const { return static_cast<int>(graph.edges.size()); }

    PfaffianMatrix pfaffian(const Eigen::VectorXd &theta) const {
        return assemblePfaffian(basis, screws, hingeCount(), theta, policy.rank_rel);
    }
};

struct ValidationFailure : std::runtime_error {
    ValidationFailure(std::string msg, ValidationReport r)
        : std::runtime_error(std::move(msg)), report(std::move(r)) {}
    ValidationReport report;
};

// Runs validation, graph construction, loop extraction and screw assignment.
// Throws ValidationFailure when the report carries errors.
KinematicModel buildKinematics(RFSModel model, const NumericPolicy &policy = {});

} // namespace rfs
