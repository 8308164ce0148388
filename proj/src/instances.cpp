#include "rotor/instances.hpp"

#include "rotor/engine.hpp"
#include "rotor/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace rotor {

GridShape grid_shape(const Digraph& g)
{
    if (!g.has_embedding())
        throw GraphError("grid_shape: graph has no embedding");
    std::int64_t w = 0;
    std::int64_t h = 0;
    for (const Point& p : g.embedding()) {
        w = std::max(w, p.x + 1);
        h = std::max(h, p.y + 1);
    }
    if (w * h != g.vertex_count())
        throw GraphError("grid_shape: not a full grid");
    GridShape shape{static_cast<int>(w), static_cast<int>(h)};
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const Point& p = g.position(v);
        if (shape.at(static_cast<int>(p.x), static_cast<int>(p.y)) != v)
            throw GraphError("grid_shape: vertices are not in row-major order");
    }
    return shape;
}

Digraph random_eulerian_digraph(Rng& rng, int vertices, int extra_cycles)
{
    if (vertices < 2)
        throw GraphError("random_eulerian_digraph: need at least 2 vertices");
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(vertices));
    auto add_cycle = [&](const std::vector<Vertex>& cyc) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const Vertex a = cyc[i];
            const Vertex b = cyc[(i + 1) % cyc.size()];
            if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end())
                return false;
        }
        for (std::size_t i = 0; i < cyc.size(); ++i)
            adj[cyc[i]].push_back(cyc[(i + 1) % cyc.size()]);
        return true;
    };

    std::vector<Vertex> perm(static_cast<std::size_t>(vertices));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    add_cycle(perm);
    for (int c = 0, attempts = 0; c < extra_cycles && attempts < 50 * (extra_cycles + 1); ++attempts) {
        rng.shuffle(perm);
        const auto len = static_cast<std::size_t>(rng.between(2, vertices));
        if (add_cycle({perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(len)}))
            ++c;
    }
    for (auto& row : adj)
        rng.shuffle(row);
    return Digraph(adj);
}

WalkState random_state(const Digraph& g, Rng& rng)
{
    WalkState s;
    s.rotors.alpha.resize(static_cast<std::size_t>(g.vertex_count()));
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        s.rotors.alpha[v] = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(g.degree(v))));
    s.chip = static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(g.vertex_count())));
    return s;
}

WalkState random_unicycle(const Digraph& g, Rng& rng)
{
    const Recurrence rec = detect_recurrence(g, random_state(g, rng));
    WalkState s = rec.limit_state;
    const auto shift = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(rec.period)));
    for (std::int64_t i = 0; i < shift; ++i)
        advance(g, s);
    return s;
}

std::optional<std::vector<Vertex>> polyomino_boundary(const GridShape& shape, std::span<const std::pair<int, int>> cells)
{
    const int cw = shape.width - 1;
    const int ch = shape.height - 1;
    std::vector<char> in(static_cast<std::size_t>(cw * ch), 0);
    for (auto [cx, cy] : cells)
        in[static_cast<std::size_t>(cy * cw + cx)] = 1;
    auto filled = [&](int cx, int cy) {
        return cx >= 0 && cy >= 0 && cx < cw && cy < ch && in[static_cast<std::size_t>(cy * cw + cx)];
    };

    // Clockwise boundary edges keep the polyomino on their right.
    const auto n = static_cast<std::size_t>(shape.width * shape.height);
    std::vector<Vertex> next(n, -1);
    std::size_t edges = 0;
    auto link = [&](Vertex a, Vertex b) {
        if (next[a] != -1)
            return false; // pinch point
        next[a] = b;
        ++edges;
        return true;
    };
    for (auto [cx, cy] : cells) {
        bool ok = true;
        if (!filled(cx, cy - 1))
            ok = ok && link(shape.at(cx + 1, cy), shape.at(cx, cy));
        if (!filled(cx, cy + 1))
            ok = ok && link(shape.at(cx, cy + 1), shape.at(cx + 1, cy + 1));
        if (!filled(cx - 1, cy))
            ok = ok && link(shape.at(cx, cy), shape.at(cx, cy + 1));
        if (!filled(cx + 1, cy))
            ok = ok && link(shape.at(cx + 1, cy + 1), shape.at(cx + 1, cy));
        if (!ok)
            return std::nullopt;
    }
    if (edges == 0)
        return std::nullopt;
    Vertex start = -1;
    for (std::size_t v = 0; v < n && start < 0; ++v)
        if (next[v] != -1)
            start = static_cast<Vertex>(v);
    std::vector<Vertex> cycle;
    Vertex v = start;
    do {
        cycle.push_back(v);
        v = next[v];
    } while (v != start && cycle.size() <= edges);
    if (cycle.size() != edges)
        return std::nullopt; // holes give several boundary cycles
    return cycle;
}

std::optional<std::vector<Vertex>> random_lattice_contour(const GridShape& shape, Rng& rng, int target_cells,
                                                          const std::vector<char>& allowed)
{
    const int cw = shape.width - 1;
    const int ch = shape.height - 1;
    auto cell_ok = [&](int cx, int cy) {
        return cx >= 0 && cy >= 0 && cx < cw && cy < ch && allowed[shape.at(cx, cy)] && allowed[shape.at(cx + 1, cy)] &&
               allowed[shape.at(cx, cy + 1)] && allowed[shape.at(cx + 1, cy + 1)];
    };
    std::vector<std::pair<int, int>> candidates;
    for (int cy = 0; cy < ch; ++cy)
        for (int cx = 0; cx < cw; ++cx)
            if (cell_ok(cx, cy))
                candidates.emplace_back(cx, cy);
    if (candidates.empty())
        return std::nullopt;

    std::vector<std::pair<int, int>> cells{rng.pick(candidates)};
    std::vector<char> in(static_cast<std::size_t>(cw * ch), 0);
    in[static_cast<std::size_t>(cells[0].second * cw + cells[0].first)] = 1;
    auto boundary = polyomino_boundary(shape, cells);

    const int dx[4] = {0, 1, 0, -1};
    const int dy[4] = {1, 0, -1, 0};
    for (int attempts = 0; static_cast<int>(cells.size()) < target_cells && attempts < 8 * target_cells; ++attempts) {
        std::vector<std::pair<int, int>> frontier;
        for (auto [cx, cy] : cells)
            for (int d = 0; d < 4; ++d) {
                const int nx = cx + dx[d];
                const int ny = cy + dy[d];
                if (cell_ok(nx, ny) && !in[static_cast<std::size_t>(ny * cw + nx)])
                    frontier.emplace_back(nx, ny);
            }
        if (frontier.empty())
            break;
        const auto pick = rng.pick(frontier);
        cells.push_back(pick);
        auto grown = polyomino_boundary(shape, cells);
        if (grown) {
            in[static_cast<std::size_t>(pick.second * cw + pick.first)] = 1;
            boundary = std::move(grown);
        } else {
            cells.pop_back();
        }
    }
    return boundary;
}

void grow_forest(const Digraph& g, RotorConfig& rho, const std::vector<char>& is_root, Rng& rng)
{
    const Vertex n = g.vertex_count();
    std::vector<char> in_tree(is_root.begin(), is_root.end());
    if (std::none_of(in_tree.begin(), in_tree.end(), [](char c) { return c != 0; }))
        throw GraphError("grow_forest: no roots");
    std::vector<std::int32_t> next(static_cast<std::size_t>(n), 0);
    for (Vertex start = 0; start < n; ++start) {
        Vertex u = start;
        while (!in_tree[u]) {
            next[u] = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(g.degree(u))));
            u = g.target(u, next[u]);
        }
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            rho.alpha[u] = next[u];
            u = g.target(u, next[u]);
        }
    }
}

void orient_along(const Digraph& g, RotorConfig& rho, std::span<const Vertex> cycle)
{
    for (std::size_t i = 0; i < cycle.size(); ++i)
        rho.alpha[cycle[i]] = direction_to(g, cycle[i], cycle[(i + 1) % cycle.size()]);
}

WalkState unicycle_from_cycle(const Digraph& g, std::span<const Vertex> cycle, Vertex chip, Rng& rng)
{
    WalkState s;
    s.rotors.alpha.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<char> roots(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : cycle)
        roots[v] = 1;
    orient_along(g, s.rotors, cycle);
    grow_forest(g, s.rotors, roots, rng);
    s.chip = chip;
    return s;
}

std::vector<char> interior_mask(const Digraph& g, std::span<const Vertex> contour)
{
    std::vector<char> mask(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : interior_vertices(Cycle{{contour.begin(), contour.end()}}, g))
        mask[v] = 1;
    return mask;
}

Digraph impose_domino_order(const Digraph& g, std::span<const Vertex> contour, Rng& rng)
{
    auto adj = g.adjacency();
    const std::size_t n = contour.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vertex v = contour[i];
        const Vertex pred = contour[(i + n - 1) % n];
        const Vertex succ = contour[(i + 1) % n];
        if (!g.has_edge(v, pred) || !g.has_edge(v, succ))
            throw GraphError("impose_domino_order: contour is not bidirected");
        std::vector<Vertex> others;
        for (Vertex w : g.out(v))
            if (w != pred && w != succ)
                others.push_back(w);
        rng.shuffle(others);
        std::vector<Vertex> order{pred, succ};
        order.insert(order.end(), others.begin(), others.end());
        std::rotate(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(rng.below(order.size())), order.end());
        adj[v] = std::move(order);
    }
    return Digraph(adj);
}

std::vector<Vertex> random_torus_loop(int width, int height, Rng& rng)
{
    std::vector<int> exit_row(static_cast<std::size_t>(width));
    for (auto& y : exit_row)
        y = static_cast<int>(rng.below(static_cast<std::uint64_t>(height)));
    std::vector<Vertex> loop;
    for (int x = 0; x < width; ++x) {
        const int from = exit_row[static_cast<std::size_t>((x + width - 1) % width)];
        const int to = exit_row[static_cast<std::size_t>(x)];
        const int step = to >= from ? 1 : -1;
        for (int y = from;; y += step) {
            loop.push_back(grid_vertex(width, x, y));
            if (y == to)
                break;
        }
    }
    return loop;
}

} // namespace rotor
