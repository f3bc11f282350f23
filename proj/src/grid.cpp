#include "patchkpp/grid.hpp"

#include <algorithm>
#include <cmath>

namespace patchkpp {

namespace {

struct Segment {
    double x0, x1;
    int type;
    int nsub;
};

// Concatenate uniform segments into a grid. Breakpoint coordinates are kept
// exact; interior nodes are x0 + j*h.
GridPtr assemble(std::vector<Segment> segs, bool periodic,
                 const std::vector<InterfaceKind>& joint_kinds) {
    auto g = std::make_shared<Grid>();
    g->periodic = periodic;
    const int nseg = int(segs.size());
    for (int s = 0; s < nseg; ++s) {
        const Segment& sg = segs[s];
        const double h = (sg.x1 - sg.x0) / sg.nsub;
        if (s == 0) {
            g->x.push_back(sg.x0);
            g->kind.push_back(periodic ? NodeKind::InterfaceS1 : NodeKind::Boundary);
            g->patch_of_node.push_back(sg.type);
        }
        for (int j = 1; j < sg.nsub; ++j) {
            g->x.push_back(sg.x0 + j * h);
            g->kind.push_back(NodeKind::Interior);
            g->patch_of_node.push_back(sg.type);
        }
        if (s < nseg - 1) {
            g->x.push_back(sg.x1);
            g->kind.push_back(joint_kinds[s] == InterfaceKind::S1 ? NodeKind::InterfaceS1
                                                                  : NodeKind::InterfaceS2);
            g->patch_of_node.push_back(sg.type); // left patch
        } else if (!periodic) {
            g->x.push_back(sg.x1);
            g->kind.push_back(NodeKind::Boundary);
            g->patch_of_node.push_back(sg.type);
        }
        // periodic: the closing joint is node 0
    }
    const int n = g->n();
    g->h_left.assign(n, 0.0);
    g->h_right.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int il = g->left(i), ir = g->right(i);
        if (il >= 0) {
            double h = g->x[i] - g->x[il];
            if (periodic && i == 0) h = segs.back().x1 - g->x[il];
            g->h_left[i] = h;
        }
        if (ir < n && !(periodic && ir == 0)) {
            g->h_right[i] = g->x[ir] - g->x[i];
        } else if (periodic && ir == 0) {
            g->h_right[i] = segs.back().x1 - g->x[i];
        }
    }
    for (int i = 0; i < n; ++i)
        if (g->kind[i] == NodeKind::InterfaceS1 || g->kind[i] == NodeKind::InterfaceS2)
            g->interface_nodes.push_back(i);
    return g;
}

} // namespace

GridPtr build_grid(const Landscape& ls, int n_tiles, int nodes_per_patch) {
    if (n_tiles < 1) throw ResolutionTooCoarse("n_tiles must be >= 1");
    if (nodes_per_patch < 4) throw ResolutionTooCoarse("nodes_per_patch must be >= 4");
    const double l = ls.period;
    std::vector<Segment> segs;
    std::vector<InterfaceKind> joints;
    // [-n*l, n*l]: type-2 patch first (m = -n), alternating, type-1 last (m = n)
    for (int m = -n_tiles; m < n_tiles; ++m) {
        segs.push_back({m * l, m * l + ls.l2, 2, nodes_per_patch});
        joints.push_back(InterfaceKind::S2);
        segs.push_back({m * l + ls.l2, (m + 1) * l, 1, nodes_per_patch});
        if (m + 1 < n_tiles) joints.push_back(InterfaceKind::S1);
    }
    auto g = std::const_pointer_cast<Grid>(assemble(segs, false, joints));
    g->h1 = ls.l1 / nodes_per_patch;
    g->h2 = ls.l2 / nodes_per_patch;
    g->n_tiles = n_tiles;
    g->nodes_per_patch = nodes_per_patch;
    return g;
}

GridPtr build_periodic_grid(const Landscape& ls, int nodes_per_patch) {
    if (nodes_per_patch < 4) throw ResolutionTooCoarse("nodes_per_patch must be >= 4");
    std::vector<Segment> segs = {{0.0, ls.l2, 2, nodes_per_patch},
                                 {ls.l2, ls.period, 1, nodes_per_patch}};
    std::vector<InterfaceKind> joints = {InterfaceKind::S2};
    auto g = std::const_pointer_cast<Grid>(assemble(segs, true, joints));
    g->h1 = ls.l1 / nodes_per_patch;
    g->h2 = ls.l2 / nodes_per_patch;
    g->n_tiles = 1;
    g->nodes_per_patch = nodes_per_patch;
    // left patch of node 0 (the wrapped S1 interface) is type 1
    g->patch_of_node[0] = 1;
    return g;
}

GridPtr build_window_grid(const Landscape& ls, double R, double y_shift, int nodes_per_patch) {
    if (!(R > 0.0)) throw NonPositiveParameter("window half-width R must be positive");
    if (nodes_per_patch < 4) throw ResolutionTooCoarse("nodes_per_patch must be >= 4");
    const double l = ls.period;
    // breakpoints: interfaces of S - y strictly inside (-R, R)
    struct Break {
        double x;
        InterfaceKind kind;
    };
    std::vector<Break> breaks;
    const int mlo = int(std::floor((-R + y_shift) / l)) - 1;
    const int mhi = int(std::ceil((R + y_shift) / l)) + 1;
    const double edge_tol = 1e-12 * (1.0 + R);
    for (int m = mlo; m <= mhi; ++m) {
        const double s1 = m * l - y_shift;
        const double s2 = m * l + ls.l2 - y_shift;
        if (s1 > -R + edge_tol && s1 < R - edge_tol) breaks.push_back({s1, InterfaceKind::S1});
        if (s2 > -R + edge_tol && s2 < R - edge_tol) breaks.push_back({s2, InterfaceKind::S2});
    }
    std::sort(breaks.begin(), breaks.end(), [](const Break& a, const Break& b) { return a.x < b.x; });

    std::vector<Segment> segs;
    std::vector<InterfaceKind> joints;
    double x0 = -R;
    for (std::size_t i = 0; i <= breaks.size(); ++i) {
        const double x1 = (i < breaks.size()) ? breaks[i].x : R;
        const double mid = 0.5 * (x0 + x1);
        const int type = patch_type_at(ls, mid + y_shift);
        const double full = ls.patch_length(type);
        const int nsub = std::max(2, int(std::lround(nodes_per_patch * (x1 - x0) / full)));
        segs.push_back({x0, x1, type, nsub});
        if (i < breaks.size()) joints.push_back(breaks[i].kind);
        x0 = x1;
    }
    auto g = std::const_pointer_cast<Grid>(assemble(segs, false, joints));
    g->h1 = ls.l1 / nodes_per_patch;
    g->h2 = ls.l2 / nodes_per_patch;
    g->nodes_per_patch = nodes_per_patch;
    g->y_shift = y_shift;
    return g;
}

Field sample_field(const GridPtr& grid, const std::function<double(double)>& u0) {
    Field f;
    f.grid = grid;
    f.values.resize(grid->n());
    for (int i = 0; i < grid->n(); ++i) f.values[i] = u0(grid->x[i]);
    return f;
}

int left_patch_type(const Grid& g, int i) {
    switch (g.kind[i]) {
        case NodeKind::InterfaceS1: return 1;
        case NodeKind::InterfaceS2: return 2;
        default: return g.patch_of_node[i];
    }
}

int right_patch_type(const Grid& g, int i) {
    switch (g.kind[i]) {
        case NodeKind::InterfaceS1: return 2;
        case NodeKind::InterfaceS2: return 1;
        default: return g.patch_of_node[i];
    }
}

Field rescale_physical_to_continuous(const PhysicalField& v, const Landscape& ls, double tol) {
    const Grid& g = *v.grid;
    Field u;
    u.time = v.time;
    u.grid = v.grid;
    u.values.resize(g.n());
    auto scale = [&](int type) { return type == 2 ? ls.k : 1.0; };
    std::size_t ifc = 0;
    for (int i = 0; i < g.n(); ++i) {
        if (g.kind[i] == NodeKind::InterfaceS1 || g.kind[i] == NodeKind::InterfaceS2) {
            const double ul = scale(left_patch_type(g, i)) * v.values[i];
            const double ur = scale(right_patch_type(g, i)) * v.interface_right[ifc];
            if (std::fabs(ul - ur) > tol * (1.0 + std::fabs(ul) + std::fabs(ur)))
                throw InconsistentInterfaceValues(
                    "physical density limits at x=" + std::to_string(g.x[i]) +
                    " are not compatible with the rescaling");
            u.values[i] = 0.5 * (ul + ur);
            ++ifc;
        } else {
            // boundary nodes take the patch on their inner side
            const int type = g.patch_of_node[i];
            u.values[i] = scale(type) * v.values[i];
        }
    }
    return u;
}

PhysicalField rescale_continuous_to_physical(const Field& u, const Landscape& ls) {
    const Grid& g = *u.grid;
    PhysicalField v;
    v.time = u.time;
    v.grid = u.grid;
    v.values.resize(g.n());
    auto unscale = [&](int type) { return type == 2 ? 1.0 / ls.k : 1.0; };
    for (int i = 0; i < g.n(); ++i)
        v.values[i] = unscale(left_patch_type(g, i)) * u.values[i];
    v.interface_right.reserve(g.interface_nodes.size());
    for (int i : g.interface_nodes)
        v.interface_right.push_back(unscale(right_patch_type(g, i)) * u.values[i]);
    return v;
}

} // namespace patchkpp
