#include "rotor/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace rotor {

namespace {

// Upper half-plane (angle in [0, pi)) sorts first.
int half_plane(std::int64_t dx, std::int64_t dy)
{
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
}

// Strict anticlockwise-angle order of direction vectors.
bool angle_less(Point a, Point b)
{
    const int ha = half_plane(a.x, a.y);
    const int hb = half_plane(b.x, b.y);
    if (ha != hb)
        return ha < hb;
    return a.x * b.y - a.y * b.x > 0;
}

bool reaches_all(const Digraph& g, bool reverse)
{
    const Vertex n = g.vertex_count();
    std::vector<std::vector<Vertex>> in;
    if (reverse) {
        in.resize(n);
        for (Vertex v = 0; v < n; ++v)
            for (Vertex w : g.out(v))
                in[w].push_back(v);
    }
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    Vertex count = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        auto visit = [&](Vertex w) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        };
        if (reverse)
            for (Vertex w : in[v])
                visit(w);
        else
            for (Vertex w : g.out(v))
                visit(w);
    }
    return count == n;
}

} // namespace

Digraph::Digraph(const std::vector<std::vector<Vertex>>& adjacency, std::optional<std::vector<Point>> embedding)
{
    const auto n = static_cast<Vertex>(adjacency.size());
    if (n == 0)
        throw GraphError("digraph needs at least one vertex");
    offsets_.reserve(n + 1);
    for (Vertex v = 0; v < n; ++v) {
        const auto& row = adjacency[v];
        if (row.empty())
            throw GraphError("vertex " + std::to_string(v) + " is a sink");
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Vertex w = row[i];
            if (w < 0 || w >= n)
                throw GraphError("edge " + std::to_string(v) + "->" + std::to_string(w) + " leaves the vertex set");
            if (w == v)
                throw GraphError("self-loop at vertex " + std::to_string(v));
            if (std::find(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(i), w) != row.begin() + static_cast<std::ptrdiff_t>(i))
                throw GraphError("duplicate edge " + std::to_string(v) + "->" + std::to_string(w));
            targets_.push_back(w);
        }
        offsets_.push_back(static_cast<std::int64_t>(targets_.size()));
    }
    if (embedding) {
        if (static_cast<Vertex>(embedding->size()) != n)
            throw GraphError("embedding size does not match vertex count");
        coords_ = std::move(*embedding);
        for (Vertex v = 0; v < n; ++v) {
            for (Vertex w : out(v))
                if (coords_[w] == coords_[v])
                    throw GraphError("coincident embedded vertices " + std::to_string(v) + ", " + std::to_string(w));
            if (!is_clockwise_ordered(*this, v))
                throw GraphError("out-edges of vertex " + std::to_string(v) + " are not in clockwise order");
        }
    }
}

std::optional<std::int32_t> Digraph::edge_index(Vertex from, Vertex to) const
{
    const auto row = out(from);
    const auto it = std::find(row.begin(), row.end(), to);
    if (it == row.end())
        return std::nullopt;
    return static_cast<std::int32_t>(it - row.begin());
}

std::vector<std::vector<Vertex>> Digraph::adjacency() const
{
    std::vector<std::vector<Vertex>> adj(vertex_count());
    for (Vertex v = 0; v < vertex_count(); ++v)
        adj[v].assign(out(v).begin(), out(v).end());
    return adj;
}

bool is_clockwise_ordered(const Digraph& g, Vertex v)
{
    if (!g.has_embedding())
        return true;
    const auto row = g.out(v);
    const Point p = g.position(v);
    auto dir = [&](Vertex w) { return Point{g.position(w).x - p.x, g.position(w).y - p.y}; };
    std::vector<Vertex> sorted(row.begin(), row.end());
    // Descending polar angle is clockwise.
    std::sort(sorted.begin(), sorted.end(), [&](Vertex a, Vertex b) { return angle_less(dir(b), dir(a)); });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (!angle_less(dir(sorted[i + 1]), dir(sorted[i])))
            return false; // two neighbours in the same direction
    const auto first = std::find(sorted.begin(), sorted.end(), row[0]);
    std::rotate(sorted.begin(), first, sorted.end());
    return std::equal(sorted.begin(), sorted.end(), row.begin());
}

bool Cycle::contains(Vertex v) const
{
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

Digraph build_bidirected_grid(int width, int height)
{
    if (width < 2 || height < 2)
        throw GraphError("grid dimensions must be at least 2");
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(width) * height);
    std::vector<Point> coords(adj.size());
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            auto& row = adj[grid_vertex(width, x, y)];
            if (y + 1 < height)
                row.push_back(grid_vertex(width, x, y + 1));
            if (x + 1 < width)
                row.push_back(grid_vertex(width, x + 1, y));
            if (y > 0)
                row.push_back(grid_vertex(width, x, y - 1));
            if (x > 0)
                row.push_back(grid_vertex(width, x - 1, y));
            coords[grid_vertex(width, x, y)] = {x, y};
        }
    }
    return Digraph(adj, std::move(coords));
}

Digraph build_bidirected_torus(int width, int height)
{
    if (width < 3 || height < 3)
        throw GraphError("torus dimensions must be at least 3");
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(width) * height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            adj[grid_vertex(width, x, y)] = {
                grid_vertex(width, x, (y + 1) % height),
                grid_vertex(width, (x + 1) % width, y),
                grid_vertex(width, x, (y + height - 1) % height),
                grid_vertex(width, (x + width - 1) % width, y),
            };
        }
    }
    return Digraph(adj);
}

bool is_strongly_connected(const Digraph& g)
{
    return reaches_all(g, false) && reaches_all(g, true);
}

bool is_eulerian(const Digraph& g)
{
    std::vector<std::int64_t> in(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex w : g.out(v))
            ++in[w];
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (in[v] != g.degree(v))
            return false;
    return is_strongly_connected(g);
}

void validate(const Digraph& g, const RotorConfig& rho)
{
    if (static_cast<Vertex>(rho.alpha.size()) != g.vertex_count())
        throw GraphError("rotor configuration size does not match vertex count");
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (rho.alpha[v] < 0 || rho.alpha[v] >= g.degree(v))
            throw GraphError("rotor at vertex " + std::to_string(v) + " out of range");
}

void validate(const Digraph& g, const WalkState& s)
{
    validate(g, s.rotors);
    if (s.chip < 0 || s.chip >= g.vertex_count())
        throw GraphError("chip is not a vertex");
}

std::vector<DirectedEdge> rotor_subgraph(const Digraph& g, const RotorConfig& rho)
{
    std::vector<DirectedEdge> edges;
    edges.reserve(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        edges.push_back({v, rotor_target(g, rho, v)});
    return edges;
}

std::vector<Cycle> find_cycles(const Digraph& g, const RotorConfig& rho)
{
    enum : char { Unvisited, OnChain, Finished };
    const Vertex n = g.vertex_count();
    std::vector<char> color(n, Unvisited);
    std::vector<Cycle> cycles;
    std::vector<Vertex> chain;
    for (Vertex start = 0; start < n; ++start) {
        if (color[start] != Unvisited)
            continue;
        chain.clear();
        Vertex v = start;
        while (color[v] == Unvisited) {
            color[v] = OnChain;
            chain.push_back(v);
            v = rotor_target(g, rho, v);
        }
        if (color[v] == OnChain) {
            const auto begin = std::find(chain.begin(), chain.end(), v);
            Cycle c{{begin, chain.end()}};
            std::rotate(c.vertices.begin(), std::min_element(c.vertices.begin(), c.vertices.end()), c.vertices.end());
            cycles.push_back(std::move(c));
        }
        for (Vertex u : chain)
            color[u] = Finished;
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const Cycle& a, const Cycle& b) { return a.vertices.front() < b.vertices.front(); });
    return cycles;
}

std::optional<Cycle> cycle_through(const Digraph& g, const RotorConfig& rho, Vertex v)
{
    Cycle c{{v}};
    Vertex u = rotor_target(g, rho, v);
    // A vertex lies on a cycle iff the chain returns within |V| steps.
    while (u != v) {
        if (static_cast<Vertex>(c.vertices.size()) >= g.vertex_count())
            return std::nullopt;
        c.vertices.push_back(u);
        u = rotor_target(g, rho, u);
    }
    return c;
}

bool is_unicycle(const Digraph& g, const WalkState& s)
{
    const auto cycles = find_cycles(g, s.rotors);
    return cycles.size() == 1 && cycles.front().contains(s.chip);
}

bool is_multicycle(const Digraph& g, const Multicycle& m)
{
    const auto cycles = find_cycles(g, m.rotors);
    if (cycles.size() != m.chips.size())
        return false;
    std::vector<int> hits(cycles.size(), 0);
    for (Vertex chip : m.chips) {
        bool found = false;
        for (std::size_t i = 0; i < cycles.size(); ++i) {
            if (cycles[i].contains(chip)) {
                ++hits[i];
                found = true;
            }
        }
        if (!found)
            return false;
    }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

std::int32_t direction_to(const Digraph& g, Vertex v, Vertex w)
{
    const auto idx = g.edge_index(v, w);
    if (!idx)
        throw GraphError("no edge " + std::to_string(v) + "->" + std::to_string(w));
    return *idx;
}

} // namespace rotor
