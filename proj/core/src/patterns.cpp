#include "rfs/patterns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace rfs {

namespace {

void requirePositive(double v, const char *name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("generator: ") + name + " must be positive");
}

void checkMiura(int rows, int cols, double sector, double a, double b) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("generator: rows and cols must be >= 1");
    if (!(sector > 0.0 && sector < M_PI / 2.0))
        throw std::invalid_argument("generator: sector angle must lie in (0, pi/2)");
    requirePositive(a, "len_a");
    requirePositive(b, "len_b");
}

// Vertex of the flat Miura grid: straight major lines, obliques alternating
// by row.
Vec3 miuraVertex(int i, int j, double sector, double a, double b) {
    return {j * a + (i % 2) * b * std::cos(sector), i * b * std::sin(sector), 0.0};
}

Sheet miuraSheet(int facetRows, int facetCols, double sector, double a, double b) {
    Sheet sheet;
    const int R = facetRows, C = facetCols;
    for (int i = 0; i <= R; ++i)
        for (int j = 0; j <= C; ++j) sheet.vertices.push_back(miuraVertex(i, j, sector, a, b));
    auto idx = [C](int i, int j) { return i * (C + 1) + j; };

    for (int i = 0; i <= R; ++i)
        for (int j = 0; j < C; ++j) sheet.pattern_edges.push_back({idx(i, j), idx(i, j + 1)});
    for (int i = 0; i < R; ++i)
        for (int j = 0; j <= C; ++j) sheet.pattern_edges.push_back({idx(i, j), idx(i + 1, j)});

    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j)
            sheet.facets.push_back({idx(i, j), idx(i, j + 1), idx(i + 1, j + 1), idx(i + 1, j)});
    return sheet;
}

} // namespace

RFSModel genMiura(const MiuraParams &p) {
    checkMiura(p.rows, p.cols, p.sector, p.len_a, p.len_b);
    RFSModel model;
    model.sheets.push_back(miuraSheet(p.rows + 1, p.cols + 1, p.sector, p.len_a, p.len_b));
    return model;
}

RFSModel genStackedMiura(const StackedMiuraParams &p) {
    checkMiura(p.base.rows, p.base.cols, p.base.sector, p.base.len_a, p.base.len_b);
    if (p.layers < 2) throw std::invalid_argument("generator: stacked Miura needs >= 2 layers");
    // Bond lines of distinct patterns coincide across the whole fold range
    // only for identical layers; explicit mismatching dimensions are refused.
    if (p.layer_sector > 0.0 && std::abs(p.layer_sector - p.base.sector) > 1e-12)
        throw std::invalid_argument("generator: incompatible layer dimensions (sector)");
    if (p.layer_len_b > 0.0 && std::abs(p.layer_len_b - p.base.len_b) > 1e-12)
        throw std::invalid_argument("generator: incompatible layer dimensions (len_b)");

    const int R = p.base.rows + 1, C = p.base.cols + 1;
    RFSModel model;
    for (int l = 0; l < p.layers; ++l)
        model.sheets.push_back(miuraSheet(R, C, p.base.sector, p.base.len_a, p.base.len_b));

    // Hinge consecutive layers along every other major line. Superimposed
    // facets share their whole boundary, so hinge_edge picks the bond segment.
    for (int l = 0; l + 1 < p.layers; ++l) {
        for (int line = 0; line <= R; line += 2) {
            const int facetRow = line < R ? line : R - 1;
            for (int j = 0; j < C; ++j) {
                Connection c;
                c.a = {l, facetRow * C + j};
                c.b = {l + 1, facetRow * C + j};
                c.kind = ConnectionKind::Hinging;
                c.hinge_edge = std::make_pair(
                    miuraVertex(line, j, p.base.sector, p.base.len_a, p.base.len_b),
                    miuraVertex(line, j + 1, p.base.sector, p.base.len_a, p.base.len_b));
                model.connections.push_back(std::move(c));
            }
        }
    }
    return model;
}

RFSModel genTmp(const TmpParams &p) {
    requirePositive(p.width, "width");
    requirePositive(p.rise, "rise");
    requirePositive(p.shear, "shear");
    requirePositive(p.depth, "depth");

    // Cross-section corners of the tube cell.
    const Eigen::Vector2d q0(0.0, 0.0);
    const Eigen::Vector2d q1(p.width, 0.0);
    const Eigen::Vector2d q2(p.width + p.shear, p.rise);
    const Eigen::Vector2d q3(p.shear, p.rise);

    auto strip = [&](const std::vector<Eigen::Vector2d> &polyline) {
        Sheet sheet;
        for (const auto &q : polyline) {
            sheet.vertices.emplace_back(0.0, q.x(), q.y());
            sheet.vertices.emplace_back(p.depth, q.x(), q.y());
        }
        const int segments = static_cast<int>(polyline.size()) - 1;
        for (int s = 0; s < segments; ++s) {
            sheet.facets.push_back({2 * s, 2 * s + 1, 2 * s + 3, 2 * s + 2});
            sheet.pattern_edges.push_back({2 * s, 2 * s + 1});
            sheet.pattern_edges.push_back({2 * s, 2 * s + 2});
            sheet.pattern_edges.push_back({2 * s + 1, 2 * s + 3});
        }
        sheet.pattern_edges.push_back({2 * segments, 2 * segments + 1});
        return sheet;
    };

    RFSModel model;
    model.sheets.push_back(strip({q0, q1, q2, q3})); // bottom, right, top
    model.sheets.push_back(strip({q1, q0, q3, q2})); // bottom, left, top

    for (int facet : {0, 2}) {
        Connection c;
        c.a = {0, facet};
        c.b = {1, facet};
        c.kind = ConnectionKind::Soldering;
        model.connections.push_back(std::move(c));
    }
    return model;
}

RFSModel genKirigamiSlit(const KirigamiSlitParams &p) {
    requirePositive(p.outer_w, "outer_w");
    requirePositive(p.outer_h, "outer_h");
    requirePositive(p.hole_w, "hole_w");
    requirePositive(p.hole_h, "hole_h");
    if (p.hole_w >= p.outer_w || p.hole_h >= p.outer_h)
        throw std::invalid_argument("generator: hole must be strictly inside the outer rectangle");

    const double W = p.outer_w, H = p.outer_h;
    const double x0 = 0.5 * (W - p.hole_w), x1 = 0.5 * (W + p.hole_w);
    const double y0 = 0.5 * (H - p.hole_h), y1 = 0.5 * (H + p.hole_h);

    Sheet sheet;
    auto add = [&](double x, double y) {
        sheet.vertices.emplace_back(x, y, 0.0);
        return static_cast<int>(sheet.vertices.size()) - 1;
    };
    // Outer ring counterclockwise, then hole corners.
    const int A = add(0, 0), B = add(x0, 0), Cc = add(x1, 0), D = add(W, 0);
    const int E = add(W, y0), F = add(W, y1), G = add(W, H), Hh = add(x1, H);
    const int I = add(x0, H), J = add(0, H), K = add(0, y1), L = add(0, y0);
    const int h00 = add(x0, y0), h10 = add(x1, y0), h11 = add(x1, y1), h01 = add(x0, y1);

    sheet.facets = {
        {A, B, h00, L},    // SW corner
        {B, Cc, h10, h00}, // S edge
        {Cc, D, E, h10},   // SE corner
        {h10, E, F, h11},  // E edge
        {h11, F, G, Hh},   // NE corner
        {h01, h11, Hh, I}, // N edge
        {K, h01, I, J},    // NW corner
        {L, h00, h01, K},  // W edge
    };
    for (const auto &f : sheet.facets) {
        const int k = static_cast<int>(f.size());
        for (int i = 0; i < k; ++i) {
            int a = f[static_cast<size_t>(i)], b = f[static_cast<size_t>((i + 1) % k)];
            if (a > b) std::swap(a, b);
            const std::array<int, 2> e{a, b};
            if (std::find(sheet.pattern_edges.begin(), sheet.pattern_edges.end(), e) ==
                sheet.pattern_edges.end())
                sheet.pattern_edges.push_back(e);
        }
    }

    RFSModel model;
    model.sheets.push_back(std::move(sheet));
    return model;
}

RFSModel genThickMiura(const ThickMiuraParams &p) {
    if (p.rows < 0 || p.cols < 0)
        throw std::invalid_argument("generator: rows and cols must be >= 0");
    if (!(p.sector > 0.0 && p.sector < M_PI / 2.0))
        throw std::invalid_argument("generator: sector angle must lie in (0, pi/2)");
    requirePositive(p.len_a, "len_a");
    requirePositive(p.len_b, "len_b");
    requirePositive(p.offset, "offset");
    const int R = p.rows + 1, C = p.cols + 1;
    if (R * C < 2) throw std::invalid_argument("generator: need at least two panels");

    const double t = p.offset;
    auto V = [&](int i, int j) { return miuraVertex(i, j, p.sector, p.len_a, p.len_b); };
    auto lift = [&](const Vec3 &v, double z) { return Vec3(v.x(), v.y(), z); };

    RFSModel model;
    // Panel (i, j): top and bottom face sheets plus one side sheet per
    // pattern-boundary edge, all soldered into one body.
    std::vector<std::vector<int>> topSheet(static_cast<size_t>(R), std::vector<int>(static_cast<size_t>(C)));
    std::vector<std::vector<int>> bottomSheet = topSheet;

    auto faceSheet = [&](int i, int j, double z) {
        Sheet s;
        s.vertices = {lift(V(i, j), z), lift(V(i, j + 1), z), lift(V(i + 1, j + 1), z),
                      lift(V(i + 1, j), z)};
        s.pattern_edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        s.facets = {{0, 1, 2, 3}};
        return s;
    };
    auto sideSheet = [&](const Vec3 &a, const Vec3 &b, double z0, double z1) {
        Sheet s;
        s.vertices = {lift(a, z0), lift(b, z0), lift(b, z1), lift(a, z1)};
        s.pattern_edges = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
        s.facets = {{0, 1, 2, 3}};
        return s;
    };
    auto solder = [&](int sheetA, int sheetB) {
        Connection c;
        c.a = {sheetA, 0};
        c.b = {sheetB, 0};
        c.kind = ConnectionKind::Soldering;
        model.connections.push_back(std::move(c));
    };

    for (int i = 0; i < R; ++i)
        for (int j = 0; j < C; ++j) {
            const double z0 = (j % 2) * t;
            bottomSheet[size_t(i)][size_t(j)] = static_cast<int>(model.sheets.size());
            model.sheets.push_back(faceSheet(i, j, z0));
            topSheet[size_t(i)][size_t(j)] = static_cast<int>(model.sheets.size());
            model.sheets.push_back(faceSheet(i, j, z0 + t));
            solder(bottomSheet[size_t(i)][size_t(j)], topSheet[size_t(i)][size_t(j)]);

            // Side panels on the pattern boundary only; interior creases carry
            // the hinges instead.
            struct Side {
                Vec3 a, b;
                bool boundary;
            };
            const Side sides[4] = {
                {V(i, j), V(i, j + 1), i == 0},
                {V(i, j + 1), V(i + 1, j + 1), j == C - 1},
                {V(i + 1, j + 1), V(i + 1, j), i == R - 1},
                {V(i + 1, j), V(i, j), j == 0},
            };
            for (const Side &side : sides) {
                if (!side.boundary) continue;
                const int sid = static_cast<int>(model.sheets.size());
                model.sheets.push_back(sideSheet(side.a, side.b, z0, z0 + t));
                solder(bottomSheet[size_t(i)][size_t(j)], sid);
            }
        }

    auto hinge = [&](int sheetA, int sheetB, const Vec3 &e0, const Vec3 &e1) {
        Connection c;
        c.a = {sheetA, 0};
        c.b = {sheetB, 0};
        c.kind = ConnectionKind::Hinging;
        c.hinge_edge = std::make_pair(e0, e1);
        model.connections.push_back(std::move(c));
    };

    // Minor creases between column neighbours live on the shared mid surface;
    // major creases between row neighbours live on the column's outer surface.
    for (int i = 0; i < R; ++i)
        for (int j = 0; j + 1 < C; ++j) {
            const bool evenFirst = j % 2 == 0;
            const int sa = evenFirst ? topSheet[size_t(i)][size_t(j)] : bottomSheet[size_t(i)][size_t(j)];
            const int sb = evenFirst ? bottomSheet[size_t(i)][size_t(j + 1)] : topSheet[size_t(i)][size_t(j + 1)];
            hinge(sa, sb, lift(V(i, j + 1), t), lift(V(i + 1, j + 1), t));
        }
    for (int i = 0; i + 1 < R; ++i)
        for (int j = 0; j < C; ++j) {
            const double z = (j % 2) ? 2.0 * t : 0.0;
            const bool even = j % 2 == 0;
            const int sa = even ? bottomSheet[size_t(i)][size_t(j)] : topSheet[size_t(i)][size_t(j)];
            const int sb = even ? bottomSheet[size_t(i + 1)][size_t(j)] : topSheet[size_t(i + 1)][size_t(j)];
            hinge(sa, sb, lift(V(i + 1, j), z), lift(V(i + 1, j + 1), z));
        }
    return model;
}

} // namespace rfs
