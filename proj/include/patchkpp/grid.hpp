#ifndef PATCHKPP_GRID_HPP
#define PATCHKPP_GRID_HPP

#include <functional>
#include <memory>
#include <vector>

#include "patchkpp/landscape.hpp"

namespace patchkpp {

enum class NodeKind { Interior, InterfaceS1, InterfaceS2, Boundary };

/** Finite-difference grid with every interface point appearing exactly once
 *  as a node. Within a patch (segment) the spacing is uniform, so interior
 *  nodes have equal spacing on both sides and the one-sided interface
 *  stencils see uniform spacing on each flank.
 *
 *  Two topologies:
 *   - windowed: nodes span [xmin, xmax], first/last node are Dirichlet
 *     boundary nodes;
 *   - periodic: one period [0, l), node 0 is the S1 interface at 0, the
 *     left neighbor of node 0 is node n-1.
 */
struct Grid {
    bool periodic = false;
    std::vector<double> x;           // node positions
    std::vector<NodeKind> kind;      // per node
    std::vector<int> patch_of_node;  // patch type at interior nodes; left-patch type otherwise
    std::vector<double> h_left, h_right; // spacing toward neighbors (wrapped if periodic)
    std::vector<int> interface_nodes;    // indices with kind S1/S2
    double h1 = 0.0, h2 = 0.0;       // spacing inside full type-1 / type-2 patches
    int n_tiles = 0;
    int nodes_per_patch = 0;
    double y_shift = 0.0;            // window grids: interfaces sit at S - y_shift

    int n() const { return int(x.size()); }
    int left(int i) const { return periodic ? (i + n() - 1) % n() : i - 1; }
    int right(int i) const { return periodic ? (i + 1) % n() : i + 1; }
};

using GridPtr = std::shared_ptr<const Grid>;

/** Truncated grid on [-n*l, n*l]: 4n whole patches, type-2 leftmost,
 *  Dirichlet nodes at both ends. nodes_per_patch counts subintervals per
 *  patch, so each patch contributes nodes_per_patch - 1 interior nodes. */
GridPtr build_grid(const Landscape& ls, int n_tiles, int nodes_per_patch);

/** One period [0, l): node 0 is the S1 point, then the type-2 patch,
 *  the S2 node at l2, then the type-1 patch. */
GridPtr build_periodic_grid(const Landscape& ls, int nodes_per_patch);

/** Window [-R, R] with the interfaces of S - y inside as nodes; partial
 *  patches at the ends get a proportional number of subintervals. */
GridPtr build_window_grid(const Landscape& ls, double R, double y_shift, int nodes_per_patch);

/** Time-stamped nodal solution in rescaled (continuous) density u. */
struct Field {
    double time = 0.0;
    GridPtr grid;
    std::vector<double> values;
};

Field sample_field(const GridPtr& grid, const std::function<double(double)>& u0);

/** Physical-density field: values carry the left-side limit at interface
 *  nodes, interface_right the right-side limit (v jumps across interfaces
 *  whenever k != 1). */
struct PhysicalField {
    double time = 0.0;
    GridPtr grid;
    std::vector<double> values;          // v, left limit at interfaces
    std::vector<double> interface_right; // right limits, aligned with grid->interface_nodes
};

/** u = v on type-1 patches, u = k*v on type-2 patches. Throws
 *  InconsistentInterfaceValues when the two limits disagree after scaling. */
Field rescale_physical_to_continuous(const PhysicalField& v, const Landscape& ls,
                                     double tol = 1e-9);
PhysicalField rescale_continuous_to_physical(const Field& u, const Landscape& ls);

// patch type used when converting the value at node i from the left side
int left_patch_type(const Grid& g, int i);
int right_patch_type(const Grid& g, int i);

} // namespace patchkpp

#endif
