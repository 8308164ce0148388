#include "rotor/geometry.hpp"
#include "rotor/instances.hpp"

#include <doctest.h>

#include <set>

using namespace rotor;

TEST_CASE("grid_shape recovers dimensions")
{
    const Digraph g = build_bidirected_grid(7, 4);
    const GridShape s = grid_shape(g);
    CHECK(s.width == 7);
    CHECK(s.height == 4);
    CHECK(s.cells() == 18);
    CHECK_THROWS_AS(grid_shape(build_bidirected_torus(4, 4)), GraphError);
}

TEST_CASE("random lattice contours are simple clockwise polyomino boundaries")
{
    Rng rng(31);
    const Digraph g = build_bidirected_grid(14, 14);
    const GridShape shape = grid_shape(g);
    const std::vector<char> allowed(static_cast<std::size_t>(g.vertex_count()), 1);
    for (int trial = 0; trial < 200; ++trial) {
        const int cells = static_cast<int>(rng.between(1, 80));
        const auto c = random_lattice_contour(shape, rng, cells, allowed);
        REQUIRE(c.has_value());
        const std::set<Vertex> unique(c->begin(), c->end());
        REQUIRE(unique.size() == c->size());
        std::vector<Point> poly;
        for (std::size_t i = 0; i < c->size(); ++i) {
            REQUIRE(g.has_edge((*c)[i], (*c)[(i + 1) % c->size()]));
            poly.push_back(g.position((*c)[i]));
        }
        REQUIRE(orientation(poly) == Orientation::Clockwise);
        // Area equals the number of unit cells, at most the target.
        const std::int64_t area = -twice_signed_area(poly) / 2;
        REQUIRE(area >= 1);
        REQUIRE(area <= cells);
    }
}

TEST_CASE("polyomino_boundary rejects pinched cell sets")
{
    const GridShape shape{5, 5};
    const std::vector<std::pair<int, int>> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    const auto b = polyomino_boundary(shape, square);
    REQUIRE(b.has_value());
    CHECK(b->size() == 8);
    // Two cells touching at a corner only.
    const std::vector<std::pair<int, int>> diagonal{{0, 0}, {1, 1}};
    CHECK_FALSE(polyomino_boundary(shape, diagonal).has_value());
    // Ring with a hole.
    std::vector<std::pair<int, int>> ring;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            if (x != 1 || y != 1)
                ring.emplace_back(x, y);
    CHECK_FALSE(polyomino_boundary(shape, ring).has_value());
}

TEST_CASE("grow_forest points every non-root towards a root without cycles")
{
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const Digraph g = trial % 2 ? build_bidirected_grid(9, 7) : random_eulerian_digraph(rng, 25, 3);
        std::vector<char> root(static_cast<std::size_t>(g.vertex_count()), 0);
        root[rng.below(static_cast<std::uint64_t>(g.vertex_count()))] = 1;
        root[rng.below(static_cast<std::uint64_t>(g.vertex_count()))] = 1;
        RotorConfig rho{std::vector<std::int32_t>(static_cast<std::size_t>(g.vertex_count()), 0)};
        grow_forest(g, rho, root, rng);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            Vertex w = v;
            int hops = 0;
            while (!root[w] && hops <= g.vertex_count()) {
                w = rotor_target(g, rho, w);
                ++hops;
            }
            REQUIRE(root[w]);
        }
    }
}

TEST_CASE("unicycle_from_cycle builds the requested unicycle")
{
    Rng rng(4);
    const Digraph g = build_bidirected_grid(6, 6);
    const std::vector<Vertex> face{grid_vertex(6, 2, 2), grid_vertex(6, 2, 3), grid_vertex(6, 3, 3),
                                   grid_vertex(6, 3, 2)};
    const WalkState s = unicycle_from_cycle(g, face, face[1], rng);
    CHECK(is_unicycle(g, s));
    const auto c = cycle_through(g, s.rotors, face[0]);
    REQUIRE(c.has_value());
    CHECK(c->vertices == face);
    CHECK(s.chip == face[1]);
}

TEST_CASE("interior_mask marks strictly interior vertices")
{
    const Digraph g = build_bidirected_grid(5, 5);
    std::vector<Vertex> ring;
    for (int y = 0; y < 4; ++y)
        ring.push_back(grid_vertex(5, 0, y));
    for (int x = 0; x < 4; ++x)
        ring.push_back(grid_vertex(5, x, 4));
    for (int y = 4; y > 0; --y)
        ring.push_back(grid_vertex(5, 4, y));
    for (int x = 4; x > 0; --x)
        ring.push_back(grid_vertex(5, x, 0));
    const auto mask = interior_mask(g, ring);
    int count = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const Point p = g.position(v);
        const bool expected = p.x > 0 && p.x < 4 && p.y > 0 && p.y < 4;
        CHECK(static_cast<bool>(mask[v]) == expected);
        count += mask[v];
    }
    CHECK(count == 9);
}

TEST_CASE("impose_domino_order puts the back edge right before the forward edge")
{
    Rng rng(12);
    const Digraph g = build_bidirected_grid(10, 10);
    const GridShape shape = grid_shape(g);
    const std::vector<char> allowed(static_cast<std::size_t>(g.vertex_count()), 1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = random_lattice_contour(shape, rng, static_cast<int>(rng.between(1, 30)), allowed);
        REQUIRE(c.has_value());
        const Digraph d = impose_domino_order(g, *c, rng);
        REQUIRE(is_eulerian(d));
        const std::size_t n = c->size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex v = (*c)[i];
            const auto back = *d.edge_index(v, (*c)[(i + n - 1) % n]);
            const auto ahead = *d.edge_index(v, (*c)[(i + 1) % n]);
            REQUIRE((back + 1) % d.degree(v) == ahead);
        }
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const std::set<Vertex> a(g.out(v).begin(), g.out(v).end());
            const std::set<Vertex> b(d.out(v).begin(), d.out(v).end());
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("random torus loops are non-contractible cycles")
{
    Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = static_cast<int>(rng.between(3, 9));
        const int h = static_cast<int>(rng.between(3, 9));
        const Digraph g = build_bidirected_torus(w, h);
        const auto loop = random_torus_loop(w, h, rng);
        const std::set<Vertex> unique(loop.begin(), loop.end());
        REQUIRE(unique.size() == loop.size());
        int east = 0;
        for (std::size_t i = 0; i < loop.size(); ++i) {
            const Vertex a = loop[i];
            const Vertex b = loop[(i + 1) % loop.size()];
            REQUIRE(g.has_edge(a, b));
            east += (b % w) == (a % w + 1) % w;
        }
        // One step east per column: winds once around the torus horizontally.
        REQUIRE(east == w);
    }
}
