#include <benchmark/benchmark.h>

#include "rfs/constraint.hpp"
#include "rfs/patterns.hpp"
#include "rfs/pipeline.hpp"
#include "rfs/solver.hpp"

namespace {

rfs::KinematicModel makeMiura(int cells) {
    rfs::MiuraParams p;
    p.rows = cells;
    p.cols = cells;
    return rfs::buildKinematics(rfs::genMiura(p));
}

void BM_BuildKinematics(benchmark::State &state) {
    const rfs::RFSModel model = rfs::genMiura({int(state.range(0)), int(state.range(0)), 1.0, 1.0, 1.0});
    for (auto _ : state) {
        auto km = rfs::buildKinematics(model);
        benchmark::DoNotOptimize(km.basis.loops.size());
    }
}
BENCHMARK(BM_BuildKinematics)->Arg(4)->Arg(9)->Arg(19);

void BM_AssemblePfaffian(benchmark::State &state) {
    const auto km = makeMiura(int(state.range(0)));
    const Eigen::VectorXd theta = Eigen::VectorXd::Zero(km.hingeCount());
    for (auto _ : state) {
        auto P = km.pfaffian(theta);
        benchmark::DoNotOptimize(P.A.rows());
    }
}
BENCHMARK(BM_AssemblePfaffian)->Arg(9)->Arg(19);

void BM_RankAndNullSpace(benchmark::State &state) {
    const auto km = makeMiura(int(state.range(0)));
    const Eigen::VectorXd theta = Eigen::VectorXd::Zero(km.hingeCount());
    const auto P = km.pfaffian(theta);
    for (auto _ : state) {
        auto info = rfs::rankAndDof(P, km.active);
        benchmark::DoNotOptimize(info.rank);
    }
}
BENCHMARK(BM_RankAndNullSpace)->Arg(9)->Arg(19);

void BM_SolverStep(benchmark::State &state) {
    const auto km = makeMiura(int(state.range(0)));
    rfs::SolverConfig cfg = rfs::SolverConfig::defaults(km.hingeCount());
    cfg.neutral_angles.setConstant(1.0);
    cfg.steps = 1;
    for (auto _ : state) {
        auto traj = rfs::simulate(km, cfg);
        benchmark::DoNotOptimize(traj.frames.size());
    }
}
BENCHMARK(BM_SolverStep)->Arg(2)->Arg(4);

} // namespace

BENCHMARK_MAIN();
