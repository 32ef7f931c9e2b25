#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rfs/geometry.hpp"
#include "rfs/mesh_io.hpp"
#include "rfs/patterns.hpp"
#include "rfs/solver.hpp"

#include <fstream>
#include <sstream>

using namespace rfs;

namespace {

KinematicModel openStrip() {
    // four squares in a row: an open three-hinge chain
    return buildKinematics(parseModelText(R"({
        "sheets": [{
            "vertices": [[0,0,0],[1,0,0],[2,0,0],[3,0,0],[4,0,0],
                         [0,1,0],[1,1,0],[2,1,0],[3,1,0],[4,1,0]],
            "edges": [[0,1],[1,2],[2,3],[3,4],[5,6],[6,7],[7,8],[8,9],
                      [0,5],[1,6],[2,7],[3,8],[4,9]],
            "facets": [[0,1,6,5],[1,2,7,6],[2,3,8,7],[3,4,9,8]],
            "seed_orientation": "ccw"
        }]
    })"));
}

double facetIsometryError(const KinematicModel &km, const FoldedState &state) {
    double worst = 0.0;
    for (size_t si = 0; si < km.model.sheets.size(); ++si) {
        const Sheet &sheet = km.model.sheets[si];
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi) {
            const Pose &pose = state.body_poses[size_t(km.graph.body_of_facet[si][fi])];
            const auto &f = sheet.facets[fi];
            for (size_t a = 0; a < f.size(); ++a)
                for (size_t b = a + 1; b < f.size(); ++b) {
                    const Vec3 &pa = sheet.vertices[size_t(f[a])];
                    const Vec3 &pb = sheet.vertices[size_t(f[b])];
                    const double home = (pa - pb).norm();
                    const double now = (pose.apply(pa) - pose.apply(pb)).norm();
                    worst = std::max(worst, std::abs(now - home) / std::max(home, 1e-30));
                }
        }
    }
    return worst;
}

double hingeCoincidenceError(const KinematicModel &km, const FoldedState &state) {
    double worst = 0.0;
    for (const HingeEdge &e : km.graph.edges) {
        const Pose &P = state.body_poses[size_t(e.node_p)];
        const Pose &Q = state.body_poses[size_t(e.node_q)];
        worst = std::max(worst, (P.apply(e.edge_vertices.first) - Q.apply(e.edge_vertices.first)).norm());
        worst = std::max(worst, (P.apply(e.edge_vertices.second) - Q.apply(e.edge_vertices.second)).norm());
    }
    return worst;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("foldGeometry: home stays put") {
    const KinematicModel km = openStrip();
    const FoldedState state = foldGeometry(km, Eigen::VectorXd::Zero(km.hingeCount()));
    for (const Pose &p : state.body_poses) {
        CHECK((p.R - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(p.p.norm() == 0.0);
    }
    for (size_t si = 0; si < km.model.sheets.size(); ++si)
        for (size_t v = 0; v < km.model.sheets[si].vertices.size(); ++v)
            CHECK((state.folded_vertices[si][v] - km.model.sheets[si].vertices[v]).norm() == 0.0);
}

TEST_CASE("foldGeometry: chain pose is the ordered product of hinge exponentials") {
    const KinematicModel km = openStrip();
    REQUIRE(km.hingeCount() == 3);
    Eigen::VectorXd theta(3);
    theta << 0.7, -0.4, 1.1;
    const FoldedState state = foldGeometry(km, theta);

    // root body = facet 0's body; the chain is facet 0 - h - facet 1 - ...
    Pose expected;
    int body = km.graph.bodyOf({0, 0});
    CHECK(body == 0);
    for (int step = 0; step < 3; ++step) {
        // find the hinge between body and body+1
        for (const HingeEdge &e : km.graph.edges) {
            if ((e.node_p == body && e.node_q == body + 1) ||
                (e.node_q == body && e.node_p == body + 1)) {
                const HingeScrew &hs = km.screws.of(e.id);
                const double sign = hs.node_p == body ? 1.0 : -1.0;
                expected = expected * poseExp(hs.screw, sign * theta[e.id]);
            }
        }
        ++body;
        CHECK((state.body_poses[size_t(body)].R - expected.R).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((state.body_poses[size_t(body)].p - expected.p).norm() < 1e-14);
    }

    // rigid bodies and intact hinge lines at any angles
    CHECK(facetIsometryError(km, state) < 1e-12);
    CHECK(hingeCoincidenceError(km, state) < 1e-12);
}

TEST_CASE("foldGeometry: a quarter fold lands where it should") {
    // two squares, fold the second one up by 90 degrees about the shared edge
    const KinematicModel km = buildKinematics(parseModelText(R"({
        "sheets": [{
            "vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0],[2,0,0],[2,1,0]],
            "edges": [[0,1],[1,2],[2,3],[3,0],[1,4],[4,5],[5,2]],
            "facets": [[0,1,2,3],[1,4,5,2]],
            "seed_orientation": "ccw"
        }]
    })"));
    Eigen::VectorXd theta(1);
    theta << M_PI / 2;
    const FoldedState state = foldGeometry(km, theta);
    // positive theta folds toward the +z normal: (2,y,0) -> (1,y,1)
    CHECK((state.folded_vertices[0][4] - Vec3(1, 0, 1)).norm() < 1e-12);
    CHECK((state.folded_vertices[0][5] - Vec3(1, 1, 1)).norm() < 1e-12);
}

TEST_CASE("foldGeometry: closure makes the non-tree hinge coincide") {
    const KinematicModel km = buildKinematics(genMiura({1, 1, 1.0, 1.0, 1.0}));
    const Loop &loop = km.basis.loops.at(0);
    test::SphericalFourBar bar;
    for (size_t i = 0; i < 4; ++i) bar.axis[i] = km.screws.effectiveScrew(loop.crossings[i]).omega;
    auto rho = bar.solveNearFlat(1.0);
    REQUIRE(rho.has_value());
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(4);
    for (size_t i = 0; i < 4; ++i) theta[loop.crossings[i].hinge] = (*rho)[i];

    const FoldedState state = foldGeometry(km, theta);
    CHECK(hingeCoincidenceError(km, state) < 1e-7);
    CHECK(facetIsometryError(km, state) < 1e-9);
}

TEST_CASE("exportFrame: OBJ of a single square") {
    const KinematicModel km = buildKinematics(parseModelText(R"({
        "sheets": [{"vertices": [[0,0,0],[1,0,0],[1,1,0],[0,1,0]],
                     "edges": [[0,1],[1,2],[2,3],[3,0]],
                     "facets": [[0,1,2,3]], "seed_orientation": "ccw"}]
    })"));
    const FoldedState state = foldGeometry(km, Eigen::VectorXd::Zero(0));
    const auto path = std::filesystem::temp_directory_path() / "rfs_square.obj";
    exportFrame(km, state, MeshFormat::Obj, path);
    const std::string text = slurp(path);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
    CHECK(text.find("v 0 0 0\n") != std::string::npos);
    CHECK(text.find("f 1 2 3 4\n") != std::string::npos);

    const auto vtkPath = std::filesystem::temp_directory_path() / "rfs_square.vtk";
    exportFrame(km, state, MeshFormat::Vtk, vtkPath);
    const std::string vtk = slurp(vtkPath);
    CHECK(vtk.find("DATASET POLYDATA\n") != std::string::npos);
    CHECK(vtk.find("POINTS 4 double\n") != std::string::npos);
    CHECK(vtk.find("POLYGONS 1 5\n") != std::string::npos);

    // byte-identical on re-export
    const auto again = std::filesystem::temp_directory_path() / "rfs_square2.obj";
    exportFrame(km, state, MeshFormat::Obj, again);
    CHECK(slurp(again) == text);
}

TEST_CASE("exportFrame: folded stacked-Miura frame re-imports with full counts") {
    const KinematicModel km = buildKinematics(genStackedMiura({{1, 1, 1.0, 1.0, 1.0}, 2, -1, -1}));
    SolverConfig cfg = SolverConfig::defaults(km.hingeCount());
    cfg.neutral_angles[0] = 0.8;
    cfg.steps = 20;
    const Trajectory traj = simulate(km, cfg);
    const FoldedState state = foldGeometry(km, traj.frames.back().theta);

    const auto path = std::filesystem::temp_directory_path() / "rfs_smo.obj";
    exportFrame(km, state, MeshFormat::Obj, path);

    // generic OBJ reader: count vertices and faces
    std::ifstream in(path);
    std::string line;
    int vcount = 0, fcount = 0;
    while (std::getline(in, line)) {
        if (line.starts_with("v ")) ++vcount;
        if (line.starts_with("f ")) ++fcount;
    }
    CHECK(fcount == km.model.facetCount());
    int expectedVerts = 0;
    for (const Sheet &s : km.model.sheets)
        for (const auto &f : s.facets) expectedVerts += static_cast<int>(f.size());
    CHECK(vcount == expectedVerts);
}

TEST_CASE("exportTrajectoryCsv") {
    const KinematicModel km = buildKinematics(genMiura({1, 1, 1.0, 1.0, 1.0}));
    SolverConfig cfg = SolverConfig::defaults(4);
    cfg.steps = 0;
    const Trajectory home = simulate(km, cfg);
    const auto path = std::filesystem::temp_directory_path() / "rfs_home.csv";
    exportTrajectoryCsv(home, path);
    const std::string text = slurp(path);
    CHECK(text == "frame,theta_0,theta_1,theta_2,theta_3,residual,dof\n"
                  "0,0,0,0,0,0,2\n");

    // longer run: header + one row per frame, and every row re-checks feasible
    test::SphericalFourBar bar;
    const Loop &loop = km.basis.loops[0];
    for (size_t i = 0; i < 4; ++i) bar.axis[i] = km.screws.effectiveScrew(loop.crossings[i]).omega;
    auto rho = bar.solveNearFlat(1.2);
    REQUIRE(rho.has_value());
    cfg.steps = 100;
    cfg.step_length = 0.005; // short steps so all 100 are taken
    for (size_t i = 0; i < 4; ++i) cfg.neutral_angles[loop.crossings[i].hinge] = (*rho)[i];
    const Trajectory traj = simulate(km, cfg);
    REQUIRE(traj.frames.size() == 101);
    const auto longPath = std::filesystem::temp_directory_path() / "rfs_long.csv";
    exportTrajectoryCsv(traj, longPath);

    std::ifstream in(longPath);
    std::string line;
    std::getline(in, line); // header
    int rows = 0;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::getline(ss, cell, ',');
        Eigen::VectorXd theta(4);
        for (int i = 0; i < 4; ++i) {
            std::getline(ss, cell, ',');
            theta[i] = std::stod(cell);
        }
        CHECK(residual(km, theta).cwiseAbs().maxCoeff() <= cfg.tol_residual);
        ++rows;
    }
    CHECK(rows == 101);
}
