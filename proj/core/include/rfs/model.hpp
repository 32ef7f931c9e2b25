#pragma once

#include "rfs/lie.hpp"
#include "rfs/numeric_policy.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfs {

enum class SeedOrientation { Ccw, Cw };

// One layer of the schema: 3D vertices, pattern edges as vertex-index pairs
// and facets as ordered vertex-index loops. The first facet is the seed facet
// whose stored order, interpreted through seed_orientation, fixes the sheet
// normal and the mountain-positive convention for all intra-sheet hinges.
struct Sheet {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 2>> pattern_edges;
    std::vector<std::vector<int>> facets;
    SeedOrientation seed_orientation = SeedOrientation::Ccw;

    bool operator==(const Sheet &) const = default;
};

enum class ConnectionKind { Hinging, Soldering };

struct FacetRef {
    int sheet = 0;
    int facet = 0;
    auto operator<=>(const FacetRef &) const = default;
};

// Declared inter-sheet relation between two facets: a hinge (new revolute
// joint along a shared edge) or a solder (rigid fusion). hinge_edge picks the
// active hinge by endpoint coordinates when several coincident edges exist.
struct Connection {
    FacetRef a, b;
    ConnectionKind kind = ConnectionKind::Hinging;
    std::optional<std::pair<Vec3, Vec3>> hinge_edge;

    bool operator==(const Connection &) const = default;
};

struct RFSModel {
    std::vector<Sheet> sheets;
    std::vector<Connection> connections;

    double bboxDiagonal() const;
    int facetCount() const;

    bool operator==(const RFSModel &) const = default;
};

struct Finding {
    std::string code;
    std::string location;
    std::string message;
};

// How a declared connection is realized by the graph builder: a hinge along a
// concrete edge, or a node merge (declared solders and degenerate hinging
// contacts that were downgraded with a warning).
struct ResolvedConnection {
    enum class Kind { Hinge, Solder, Invalid };
    Kind kind = Kind::Invalid;
    std::pair<Vec3, Vec3> edge{Vec3::Zero(), Vec3::Zero()};
};

struct ValidationReport {
    std::vector<Finding> errors;
    std::vector<Finding> warnings;
    // orientation_map[sheet][facet]: facet vertex order flipped relative to
    // storage to make every shared edge oppositely ordered.
    std::vector<std::vector<bool>> orientation_map;
    std::vector<ResolvedConnection> connections;
    double bbox_diagonal = 0.0;

    bool ok() const { return errors.empty(); }
    bool hasError(const std::string &code) const;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IndexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OrientationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

RFSModel parseModel(const std::filesystem::path &path);
RFSModel parseModelText(const std::string &text, const std::string &origin = "<string>");
std::string serializeModel(const RFSModel &model);
void writeModel(const RFSModel &model, const std::filesystem::path &path);

// Breadth-first orientation propagation from each sheet's seed facet. Throws
// OrientationError when a facet receives contradictory flip demands.
std::vector<std::vector<bool>> orientFacets(const RFSModel &model);

// Full schema validation. Never throws on rule violations; every finding goes
// in the report. The model is usable downstream iff errors is empty.
ValidationReport validateModel(const RFSModel &model, const NumericPolicy &policy = {});

// Single-sheet FOLD import (vertices_coords / edges_vertices / faces_vertices
// only). Throws ParseError on multi-layer FOLD features.
RFSModel importFold(const std::filesystem::path &path);
RFSModel importFoldText(const std::string &text, const std::string &origin = "<string>");

// Facet boundary in effective (possibly flipped) order.
std::vector<int> orientedFacet(const Sheet &sheet, int facet, bool flipped);

} // namespace rfs
