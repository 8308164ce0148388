#pragma once

#include "rotor/graph.hpp"
#include "rotor/random.hpp"

#include <optional>
#include <span>
#include <vector>

namespace rotor {

/// Dimensions of a graph produced by build_bidirected_grid.
struct GridShape {
    int width = 0;
    int height = 0;

    Vertex at(int x, int y) const { return grid_vertex(width, x, y); }
    int cells() const { return (width - 1) * (height - 1); }
};

/// Recovers the grid dimensions from the embedding; throws when g is not a
/// row-major integer grid.
GridShape grid_shape(const Digraph& g);

/// Union of edge-disjoint directed cycles over n vertices, one of them
/// Hamiltonian, with random rotor orders. Always Eulerian.
Digraph random_eulerian_digraph(Rng& rng, int vertices, int extra_cycles);

WalkState random_state(const Digraph& g, Rng& rng);

/// Lands on the limit cycle of a random state and then moves a random
/// number of steps along it, giving a recurrent state (a unicycle).
WalkState random_unicycle(const Digraph& g, Rng& rng);

/// Boundary of a random simply connected polyomino whose cell corners all lie
/// in `allowed` (a per-vertex mask), listed clockwise. Empty when no cell fits.
std::optional<std::vector<Vertex>> random_lattice_contour(const GridShape& shape, Rng& rng, int target_cells,
                                                          const std::vector<char>& allowed);

/// Polyomino boundary for an explicit cell list; nullopt when the boundary is
/// not a single simple cycle. Clockwise.
std::optional<std::vector<Vertex>> polyomino_boundary(const GridShape& shape, std::span<const std::pair<int, int>> cells);

/// Points every vertex with is_root == 0 along a loop-erased random walk
/// towards the roots (Wilson's algorithm), so the rotor subgraph restricted
/// to non-roots is a forest hanging off the roots.
void grow_forest(const Digraph& g, RotorConfig& rho, const std::vector<char>& is_root, Rng& rng);

/// Sets the rotors of `cycle` so that each vertex points to the next one.
void orient_along(const Digraph& g, RotorConfig& rho, std::span<const Vertex> cycle);

/// Unicycle with the given rotor cycle, chip at `chip`, and a random forest on
/// the remaining vertices.
WalkState unicycle_from_cycle(const Digraph& g, std::span<const Vertex> cycle, Vertex chip, Rng& rng);

/// Strictly interior vertices of a lattice contour as a per-vertex mask.
std::vector<char> interior_mask(const Digraph& g, std::span<const Vertex> contour);

/// Copy of g, without embedding, whose rotor order at each contour vertex v_i
/// lists v_{i-1} immediately before v_{i+1}; other edges are shuffled.
Digraph impose_domino_order(const Digraph& g, std::span<const Vertex> contour, Rng& rng);

/// Random non-contractible cycle on a width x height torus built by
/// build_bidirected_torus: one vertical run per column, then a step east.
std::vector<Vertex> random_torus_loop(int width, int height, Rng& rng);

} // namespace rotor
