#include "rfs/mesh_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rfs {

namespace {

struct FlatMesh {
    std::vector<Vec3> points;
    std::vector<std::vector<int>> polygons;
};

// Facets as independent polygons with per-body folded coordinates.
FlatMesh flatten(const KinematicModel &km, const FoldedState &state) {
    FlatMesh mesh;
    for (size_t si = 0; si < km.model.sheets.size(); ++si) {
        const Sheet &sheet = km.model.sheets[si];
        for (size_t fi = 0; fi < sheet.facets.size(); ++fi) {
            const Pose &pose =
                state.body_poses[static_cast<size_t>(km.graph.body_of_facet[si][fi])];
            std::vector<int> poly;
            for (int v : sheet.facets[fi]) {
                poly.push_back(static_cast<int>(mesh.points.size()));
                mesh.points.push_back(pose.apply(sheet.vertices[static_cast<size_t>(v)]));
            }
            mesh.polygons.push_back(std::move(poly));
        }
    }
    return mesh;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::ofstream open(const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    return out;
}

} // namespace

void exportFrame(const KinematicModel &km, const FoldedState &state, MeshFormat format,
                 const std::filesystem::path &path) {
    const FlatMesh mesh = flatten(km, state);
    std::ofstream out = open(path);

    if (format == MeshFormat::Obj) {
        for (const Vec3 &p : mesh.points)
            out << "v " << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z()) << '\n';
        for (const auto &poly : mesh.polygons) {
            out << 'f';
            for (int i : poly) out << ' ' << (i + 1);
            out << '\n';
        }
        return;
    }

    size_t listSize = 0;
    for (const auto &poly : mesh.polygons) listSize += poly.size() + 1;
    out << "# vtk DataFile Version 3.0\n"
        << "rfs folded frame\n"
        << "ASCII\n"
        << "DATASET POLYDATA\n"
        << "POINTS " << mesh.points.size() << " double\n";
    for (const Vec3 &p : mesh.points)
        out << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z()) << '\n';
    out << "POLYGONS " << mesh.polygons.size() << ' ' << listSize << '\n';
    for (const auto &poly : mesh.polygons) {
        out << poly.size();
        for (int i : poly) out << ' ' << i;
        out << '\n';
    }
}

void exportTrajectoryCsv(const Trajectory &trajectory, const std::filesystem::path &path) {
    if (trajectory.frames.empty())
        throw std::invalid_argument("exportTrajectoryCsv: empty trajectory");
    std::ofstream out = open(path);

    const Eigen::Index n = trajectory.frames.front().theta.size();
    out << "frame";
    for (Eigen::Index i = 0; i < n; ++i) out << ",theta_" << i;
    out << ",residual,dof\n";
    for (const TrajectoryFrame &f : trajectory.frames) {
        out << f.index;
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << fmt(f.theta[i]);
        out << ',' << fmt(f.residual_norm) << ',' << f.dof_active << '\n';
    }
}

} // namespace rfs
