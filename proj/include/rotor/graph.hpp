#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotor {

using Vertex = std::int32_t;

/// Integer planar coordinates. Embeddings live on the integer lattice so that
/// orientation and membership tests stay exact.
struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite digraph with a fixed cyclic order of out-edges at every vertex (the
/// rotor order). Immutable after construction.
///
/// Construction rejects self-loops, duplicate edges and sinks. When an
/// embedding is supplied, every vertex's out-edges must be listed in clockwise
/// geometric order (any starting edge).
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(const std::vector<std::vector<Vertex>>& adjacency,
                     std::optional<std::vector<Point>> embedding = std::nullopt);

    std::int32_t vertex_count() const { return static_cast<std::int32_t>(offsets_.size()) - 1; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(targets_.size()); }

    std::span<const Vertex> out(Vertex v) const
    {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::int32_t degree(Vertex v) const { return static_cast<std::int32_t>(offsets_[v + 1] - offsets_[v]); }
    Vertex target(Vertex v, std::int32_t index) const { return targets_[offsets_[v] + index]; }

    /// Rotor index of the edge from -> to, if the edge exists.
    std::optional<std::int32_t> edge_index(Vertex from, Vertex to) const;
    bool has_edge(Vertex from, Vertex to) const { return edge_index(from, to).has_value(); }

    bool has_embedding() const { return !coords_.empty(); }
    const Point& position(Vertex v) const { return coords_[v]; }
    std::span<const Point> embedding() const { return coords_; }

    std::vector<std::vector<Vertex>> adjacency() const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    std::vector<std::int64_t> offsets_{0};
    std::vector<Vertex> targets_;
    std::vector<Point> coords_;
};

/// True when the neighbours of v, sorted clockwise by polar angle, reproduce
/// the out-edge order up to a cyclic shift.
bool is_clockwise_ordered(const Digraph& g, Vertex v);

struct RotorConfig {
    std::vector<std::int32_t> alpha;

    friend bool operator==(const RotorConfig&, const RotorConfig&) = default;
};

struct WalkState {
    RotorConfig rotors;
    Vertex chip = 0;

    friend bool operator==(const WalkState&, const WalkState&) = default;
};

/// Directed cycle of the rotor subgraph, listed along the rotors:
/// vertices[i] points to vertices[i + 1], the last one points to vertices[0].
struct Cycle {
    std::vector<Vertex> vertices;

    std::size_t size() const { return vertices.size(); }
    bool is_dimer() const { return vertices.size() == 2; }
    bool is_contour() const { return vertices.size() >= 3; }
    bool contains(Vertex v) const;
    Vertex successor(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }
    Vertex predecessor(std::size_t i) const { return vertices[(i + vertices.size() - 1) % vertices.size()]; }

    friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Rotor configuration with one chip on each of its k cycles.
struct Multicycle {
    RotorConfig rotors;
    std::vector<Vertex> chips;

    friend bool operator==(const Multicycle&, const Multicycle&) = default;
};

struct DirectedEdge {
    Vertex from = 0;
    Vertex to = 0;

    friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
};

inline Vertex grid_vertex(int width, int x, int y) { return static_cast<Vertex>(y * width + x); }

/// Bidirected width x height grid embedded at integer coordinates (x, y),
/// y pointing up. Out-edges are ordered N, E, S, W, skipping absent ones.
Digraph build_bidirected_grid(int width, int height);

/// Bidirected width x height torus with N, E, S, W order everywhere. No
/// embedding: the torus is not planar.
Digraph build_bidirected_torus(int width, int height);

bool is_strongly_connected(const Digraph& g);
bool is_eulerian(const Digraph& g);

void validate(const Digraph& g, const RotorConfig& rho);
void validate(const Digraph& g, const WalkState& s);

inline Vertex rotor_target(const Digraph& g, const RotorConfig& rho, Vertex v)
{
    return g.target(v, rho.alpha[v]);
}

std::vector<DirectedEdge> rotor_subgraph(const Digraph& g, const RotorConfig& rho);

/// All cycles of the rotor subgraph. Each cycle starts at its smallest vertex
/// id; cycles are reported in increasing order of that id.
std::vector<Cycle> find_cycles(const Digraph& g, const RotorConfig& rho);

/// The rotor cycle through v, starting at v, if v lies on one.
std::optional<Cycle> cycle_through(const Digraph& g, const RotorConfig& rho, Vertex v);

bool is_unicycle(const Digraph& g, const WalkState& s);

/// Exactly chips.size() cycles, each carrying exactly one chip.
bool is_multicycle(const Digraph& g, const Multicycle& m);

/// Rotor index of the edge pointing from v to w; throws when absent.
std::int32_t direction_to(const Digraph& g, Vertex v, Vertex w);

// Text serialization.
//
//   vertices N
//   v: w1 w2 ... wd        one line per vertex, rotor order
//   coords v: x y          optional, one line per vertex
//
// Blank lines and lines starting with '#' are ignored by the reader.
void write_graph(std::ostream& out, const Digraph& g);
Digraph read_graph(std::istream& in);
std::string graph_to_text(const Digraph& g);
Digraph graph_from_text(const std::string& text);

/// Graph plus a rotor state, chips and a seed; the replay format for
/// counterexamples. Adds `rotors a0 a1 ...`, `chips c0 ...` and `seed S` lines
/// after the graph block.
struct Instance {
    Digraph graph;
    RotorConfig rotors;
    std::vector<Vertex> chips;
    std::uint64_t seed = 0;

    friend bool operator==(const Instance&, const Instance&) = default;
};

void write_instance(std::ostream& out, const Instance& inst);
Instance read_instance(std::istream& in);

} // namespace rotor
