#pragma once

#include "rfs/pipeline.hpp"

#include <filesystem>

namespace rfs {

struct SolverConfig {
    Eigen::VectorXd neutral_angles; // target per hinge (radians)
    Eigen::VectorXd stiffness;      // positive weight per hinge
    double step_length = 0.02;      // max-norm of the energetic update
    int steps = 100;
    double tol_residual = 1e-10;
    int max_newton = 50;
    double min_step = 1e-6;
    double rank_tolerance = 1e-8;

    static SolverConfig defaults(int hinge_count);
    void check(int hinge_count) const; // throws std::invalid_argument
};

struct TrajectoryFrame {
    int index = 0;
    Eigen::VectorXd theta;
    double residual_norm = 0.0;
    int dof_active = 0;
    int newton_iterations = 0;
};

enum class Termination { Completed, ConvergedToNeutral, StepUnderflow };

struct Trajectory {
    std::vector<TrajectoryFrame> frames;
    Termination termination = Termination::Completed;
};

struct NewtonResult {
    Eigen::VectorXd theta;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct InitializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Stacked closure residual: per loop the SE(3) log of the loop pose as
// (angular; linear), truncated to the angular rows for non-perforated loops.
Eigen::VectorXd residual(const KinematicModel &km, const Eigen::VectorXd &theta);

// Orthogonal projection onto the null space of A.
Eigen::VectorXd projectStep(const Eigen::VectorXd &delta0, const PfaffianMatrix &A);

// Damped-free Newton iteration theta <- theta - pinv(A) r until the residual
// drops below tol or max_newton is exhausted.
NewtonResult newtonCorrect(const KinematicModel &km, const Eigen::VectorXd &guess,
                           const SolverConfig &config);

struct StepResult {
    enum class Status { Accepted, ConvergedToNeutral, StepUnderflow };
    Status status = Status::Accepted;
    TrajectoryFrame frame;
};

// One trajectory step: stiffness-weighted update toward the neutral angles,
// null-space projection, Newton correction, with step halving on failure.
StepResult step(const KinematicModel &km, const Eigen::VectorXd &theta, const SolverConfig &config);

// Runs `steps` accepted frames from theta0 (default: the home position).
// Frame 0 is the initial configuration; it must satisfy closure.
Trajectory simulate(const KinematicModel &km, const SolverConfig &config,
                    const Eigen::VectorXd *theta0 = nullptr);

// Reads the simulation config file documented in the README; entries address
// hinges by id or by (sheet, pattern edge) pairs.
SolverConfig loadSolverConfig(const std::filesystem::path &path, const KinematicModel &km);
SolverConfig parseSolverConfigText(const std::string &text, const KinematicModel &km,
                                   const std::string &origin = "<string>");

const char *to_string(Termination t);

} // namespace rfs
