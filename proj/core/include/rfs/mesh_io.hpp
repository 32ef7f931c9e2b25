#pragma once

#include "rfs/geometry.hpp"
#include "rfs/solver.hpp"

#include <filesystem>

namespace rfs {

enum class MeshFormat { Obj, Vtk };

// Writes the folded facets as independent polygons (coincident vertices are
// not merged): OBJ v/f lines or legacy ASCII VTK POLYDATA. Vertex positions
// come from each facet's body pose, so soldered partners stay rigid.
void exportFrame(const KinematicModel &km, const FoldedState &state, MeshFormat format,
                 const std::filesystem::path &path);

// One row per frame: frame, theta_0..theta_{n-1}, residual, dof. Full double
// precision (17 significant digits).
void exportTrajectoryCsv(const Trajectory &trajectory, const std::filesystem::path &path);

} // namespace rfs
