#pragma once

namespace rfs {

// Shared numeric tolerances. Every geometric comparison, rank decision and
// exp/log accuracy claim in the pipeline reads from one policy instance so
// the solver and the tests agree on what "equal" means.
//
// Relative tolerances are scaled at the point of use: coincidence_rel by the
// model bounding-box diagonal, planarity_rel by the facet diameter, rank_rel
// by the largest singular value.
struct NumericPolicy {
    double coincidence_rel = 1e-9;
    double planarity_rel   = 1e-8;
    double unit_tol        = 1e-12;
    double rank_rel        = 1e-8;
    double log_round_trip  = 1e-10;
    double small_theta     = 1e-6;
};

} // namespace rfs
