#pragma once

#include "rfs/model.hpp"

namespace rfs {

// Flat Miura sheet. rows x cols counts unit cells, so the facet grid is
// (rows+1) x (cols+1) parallelograms and every interior vertex has degree 4.
// Counts: facets (rows+1)(cols+1); interior hinges
// (rows+1)cols + rows(cols+1); loops rows*cols.
struct MiuraParams {
    int rows = 1;
    int cols = 1;
    double sector = 1.0; // oblique-edge angle against the major direction, (0, pi/2)
    double len_a = 1.0;  // major (row-direction) edge length
    double len_b = 1.0;  // oblique edge length
};
RFSModel genMiura(const MiuraParams &params);

// Stacked Miura: `layers` identical Miura sheets superimposed at home and
// hinged together along every other major line (lines 0, 2, ...), one
// connection per facet pair with an explicit hinge_edge selecting the shared
// segment on the bond line. Hinges per layer pair: (floor((rows+1)/2)+1)(cols+1).
struct StackedMiuraParams {
    MiuraParams base;
    int layers = 2;
    // Optional explicit dimensions for the upper layers; they must match the
    // base sheet (the bond lines coincide only for identical patterns).
    double layer_sector = -1.0;
    double layer_len_b = -1.0;
};
RFSModel genStackedMiura(const StackedMiuraParams &params);

// Tube unit of a soldered two-sheet bellows: a parallelogram cross section
// extruded along x. Sheet 0 carries bottom / right / top walls, sheet 1
// bottom / left / top, with the bottom and top walls soldered pairwise at
// zero separation. One perforated loop of four parallel hinges.
struct TmpParams {
    double width = 1.0; // bottom and top wall width (y)
    double rise = 0.7;  // cell height (z)
    double shear = 0.3; // horizontal run of the slanted walls (y)
    double depth = 2.0; // extrusion length (x)
};
RFSModel genTmp(const TmpParams &params);

// Single sheet ring of eight facets around a rectangular hole; its loop is
// perforated, so the full six-row constraint block applies.
struct KirigamiSlitParams {
    double outer_w = 3.0;
    double outer_h = 3.0;
    double hole_w = 1.0;
    double hole_h = 1.0;
};
RFSModel genKirigamiSlit(const KirigamiSlitParams &params);

// Thick-panel Miura by hinge shifting: panels alternate between levels
// [0, offset] and [offset, 2 offset] by column; minor creases sit on the
// shared mid surface, major creases on the outer surfaces (heights 0, t, 2t, t
// around every vertex, equal consecutive axis offsets). Each panel is a top
// face sheet, a bottom face sheet and explicit side-panel sheets bound by
// soldering records; hinging records carry the shifted hinge lines.
// rows/cols count unit cells as in MiuraParams; rows = 0, cols = 0 (a single
// panel pair) is allowed when at least one direction has a crease.
struct ThickMiuraParams {
    int rows = 1;
    int cols = 1;
    double sector = 1.0;
    double len_a = 1.0;
    double len_b = 1.0;
    double offset = 0.1; // panel thickness
};
RFSModel genThickMiura(const ThickMiuraParams &params);

} // namespace rfs
