#include "rfs/solver.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace rfs {

SolverConfig SolverConfig::defaults(int hinge_count) {
    SolverConfig cfg;
    cfg.neutral_angles = Eigen::VectorXd::Zero(hinge_count);
    cfg.stiffness = Eigen::VectorXd::Ones(hinge_count);
    return cfg;
}

void SolverConfig::check(int hinge_count) const {
    if (neutral_angles.size() != hinge_count || stiffness.size() != hinge_count)
        throw std::invalid_argument("solver config: per-hinge vectors sized " +
                                    std::to_string(neutral_angles.size()) + " for " +
                                    std::to_string(hinge_count) + " hinges");
    if ((stiffness.array() <= 0.0).any())
        throw std::invalid_argument("solver config: stiffness must be positive");
    if (step_length <= 0.0 || tol_residual <= 0.0 || min_step <= 0.0)
        throw std::invalid_argument("solver config: step_length, tol_residual, min_step must be positive");
}

Eigen::VectorXd residual(const KinematicModel &km, const Eigen::VectorXd &theta) {
    int rows = 0;
    for (const Loop &loop : km.basis.loops)
        rows += loop.perforation == Perforation::NonPerforated ? 3 : 6;
    Eigen::VectorXd r(rows);
    int row = 0;
    for (const Loop &loop : km.basis.loops) {
        const Twist t = poseLog(loopPose(loop, km.screws, theta));
        if (loop.perforation == Perforation::NonPerforated) {
            r.segment<3>(row) = t.angular;
            row += 3;
        } else {
            r.segment<6>(row) = t.vector();
            row += 6;
        }
    }
    return r;
}

Eigen::VectorXd projectStep(const Eigen::VectorXd &delta0, const PfaffianMatrix &A) {
    if (A.A.rows() == 0) return delta0;
    const Eigen::MatrixXd N = nullSpaceBasis(A);
    return N * (N.transpose() * delta0);
}

NewtonResult newtonCorrect(const KinematicModel &km, const Eigen::VectorXd &guess,
                           const SolverConfig &config) {
    NewtonResult out;
    out.theta = guess;
    for (out.iterations = 0; out.iterations <= config.max_newton; ++out.iterations) {
        const Eigen::VectorXd r = residual(km, out.theta);
        out.residual_norm = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
        if (out.residual_norm <= config.tol_residual) {
            out.converged = true;
            return out;
        }
        if (out.iterations == config.max_newton) break;
        const PfaffianMatrix P = km.pfaffian(out.theta);
        // Pseudo-inverse step through the SVD, ignoring directions below the
        // rank tolerance (flat states have exact zero singular values).
        Eigen::BDCSVD<Eigen::MatrixXd> svd(P.A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd &sv = svd.singularValues();
        const double cutoff = sv.size() ? config.rank_tolerance * sv[0] : 0.0;
        Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > cutoff && sv[i] > 0.0) inv[i] = 1.0 / sv[i];
        out.theta -= svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose() * r;
    }
    out.converged = false;
    return out;
}

namespace {

double energy(const SolverConfig &cfg, const Eigen::VectorXd &theta) {
    const Eigen::VectorXd d = theta - cfg.neutral_angles;
    return 0.5 * (cfg.stiffness.array() * d.array().square()).sum();
}

} // namespace

StepResult step(const KinematicModel &km, const Eigen::VectorXd &theta, const SolverConfig &config) {
    StepResult result;

    Eigen::VectorXd delta0 = -(config.stiffness.array() * (theta - config.neutral_angles).array());
    const double raw = delta0.size() ? delta0.cwiseAbs().maxCoeff() : 0.0;
    if (raw < 1e-15) {
        result.status = StepResult::Status::ConvergedToNeutral;
        return result;
    }

    const PfaffianMatrix P = km.pfaffian(theta);
    const Eigen::MatrixXd N = P.A.rows() ? nullSpaceBasis(P) : Eigen::MatrixXd();
    const double E0 = energy(config, theta);

    double eta = config.step_length;
    while (eta >= config.min_step) {
        Eigen::VectorXd delta1 = delta0 * (eta / raw);
        if (P.A.rows()) delta1 = N * (N.transpose() * delta1);
        if (delta1.cwiseAbs().maxCoeff() < 1e-12 * eta) {
            // The energetic update is orthogonal to the admissible directions:
            // the trajectory can get no closer to the neutral target.
            result.status = StepResult::Status::ConvergedToNeutral;
            return result;
        }
        const NewtonResult corrected = newtonCorrect(km, theta + delta1, config);
        if (corrected.converged && energy(config, corrected.theta) < E0) {
            result.status = StepResult::Status::Accepted;
            result.frame.theta = corrected.theta;
            result.frame.residual_norm = corrected.residual_norm;
            result.frame.newton_iterations = corrected.iterations;
            return result;
        }
        eta *= 0.5;
    }
    result.status = StepResult::Status::StepUnderflow;
    return result;
}

Trajectory simulate(const KinematicModel &km, const SolverConfig &config,
                    const Eigen::VectorXd *theta0) {
    SolverConfig cfg = config;
    cfg.check(km.hingeCount());

    Eigen::VectorXd theta =
        theta0 ? *theta0 : Eigen::VectorXd::Zero(km.hingeCount());
    const Eigen::VectorXd r0 = residual(km, theta);
    const double r0norm = r0.size() ? r0.cwiseAbs().maxCoeff() : 0.0;
    if (r0norm > cfg.tol_residual)
        throw InitializationError("initial configuration violates closure (residual " +
                                  std::to_string(r0norm) + ")");

    Trajectory traj;
    auto record = [&](const Eigen::VectorXd &th, double rn, int it) {
        TrajectoryFrame f;
        f.index = static_cast<int>(traj.frames.size());
        f.theta = th;
        f.residual_norm = rn;
        f.newton_iterations = it;
        f.dof_active = rankAndDof(km.pfaffian(th), km.active).dof_active;
        traj.frames.push_back(std::move(f));
    };
    record(theta, r0norm, 0);

    for (int k = 0; k < cfg.steps; ++k) {
        const StepResult s = step(km, theta, cfg);
        if (s.status == StepResult::Status::ConvergedToNeutral) {
            traj.termination = Termination::ConvergedToNeutral;
            return traj;
        }
        if (s.status == StepResult::Status::StepUnderflow) {
            traj.termination = Termination::StepUnderflow;
            return traj;
        }
        theta = s.frame.theta;
        record(theta, s.frame.residual_norm, s.frame.newton_iterations);
    }
    traj.termination = Termination::Completed;
    return traj;
}

namespace {

using json = nlohmann::json;

// Entries address a hinge either directly by id or as [sheet, pattern-edge].
int resolveHinge(const json &entry, const KinematicModel &km, const std::string &where) {
    if (entry.contains("hinge")) {
        const int h = entry["hinge"].get<int>();
        if (h < 0 || h >= km.hingeCount())
            throw std::invalid_argument(where + ": hinge id " + std::to_string(h) + " out of range");
        return h;
    }
    if (entry.contains("sheet_edge")) {
        const auto se = entry["sheet_edge"];
        const int sheet = se[0].get<int>();
        const int edge = se[1].get<int>();
        for (const HingeEdge &e : km.graph.edges)
            if (e.origin.kind == HingeOrigin::Kind::IntraSheet && e.origin.sheet == sheet &&
                e.origin.edge == edge)
                return e.id;
        throw std::invalid_argument(where + ": no hinge on sheet " + std::to_string(sheet) +
                                    " pattern edge " + std::to_string(edge));
    }
    throw std::invalid_argument(where + ": entry needs \"hinge\" or \"sheet_edge\"");
}

} // namespace

SolverConfig parseSolverConfigText(const std::string &text, const KinematicModel &km,
                                   const std::string &origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw std::invalid_argument(origin + ": " + e.what());
    }
    SolverConfig cfg = SolverConfig::defaults(km.hingeCount());
    cfg.rank_tolerance = km.policy.rank_rel;

    int i = 0;
    for (const json &entry : j.value("neutral_angles", json::array()))
        cfg.neutral_angles[resolveHinge(entry, km, origin + ": neutral_angles[" + std::to_string(i++) + "]")] =
            entry.at("value").get<double>();
    i = 0;
    for (const json &entry : j.value("stiffness", json::array()))
        cfg.stiffness[resolveHinge(entry, km, origin + ": stiffness[" + std::to_string(i++) + "]")] =
            entry.at("value").get<double>();

    cfg.step_length = j.value("step_length", cfg.step_length);
    cfg.steps = j.value("steps", cfg.steps);
    cfg.tol_residual = j.value("tol_residual", cfg.tol_residual);
    cfg.max_newton = j.value("max_newton", cfg.max_newton);
    cfg.min_step = j.value("min_step", cfg.min_step);
    cfg.rank_tolerance = j.value("rank_tol", cfg.rank_tolerance);
    cfg.check(km.hingeCount());
    return cfg;
}

SolverConfig loadSolverConfig(const std::filesystem::path &path, const KinematicModel &km) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseSolverConfigText(ss.str(), km, path.string());
}

const char *to_string(Termination t) {
    switch (t) {
    case Termination::Completed: return "completed";
    case Termination::ConvergedToNeutral: return "converged_to_neutral";
    case Termination::StepUnderflow: return "step_underflow";
    }
    return "unknown";
}

} // namespace rfs
