#include "rotor/geometry.hpp"
#include "rotor/instances.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rotor;

namespace {

bool on_segment(Point q, Point a, Point b)
{
    const std::int64_t cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
    return cross == 0 && std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

// Winding number by summed angles; independent of the ray-crossing code.
Location winding_locate(Point q, const std::vector<Point>& poly)
{
    double total = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % poly.size()];
        if (on_segment(q, a, b))
            return Location::Boundary;
        const double a1 = std::atan2(static_cast<double>(a.y - q.y), static_cast<double>(a.x - q.x));
        const double a2 = std::atan2(static_cast<double>(b.y - q.y), static_cast<double>(b.x - q.x));
        total += std::remainder(a2 - a1, 2 * std::numbers::pi);
    }
    return std::abs(total) > std::numbers::pi ? Location::Inside : Location::Outside;
}

std::vector<Point> random_polyomino(Rng& rng, int side, int cells)
{
    const Digraph g = build_bidirected_grid(side, side);
    const GridShape shape = grid_shape(g);
    const std::vector<char> allowed(static_cast<std::size_t>(g.vertex_count()), 1);
    const auto contour = random_lattice_contour(shape, rng, cells, allowed);
    REQUIRE(contour.has_value());
    std::vector<Point> poly;
    for (Vertex v : *contour)
        poly.push_back(g.position(v));
    return poly;
}

} // namespace

TEST_CASE("shoelace and orientation")
{
    const std::vector<Point> ccw{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(twice_signed_area(ccw) == 2);
    CHECK(signed_area(ccw) == doctest::Approx(1.0));
    CHECK(orientation(ccw) == Orientation::Anticlockwise);
    const std::vector<Point> cw(ccw.rbegin(), ccw.rend());
    CHECK(twice_signed_area(cw) == -2);
    CHECK(orientation(cw) == Orientation::Clockwise);
    const std::vector<Point> flat{{0, 0}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(orientation(flat), GeometryError);
    CHECK_THROWS_AS(twice_signed_area(std::vector<Point>{{0, 0}, {1, 0}}), GeometryError);
}

TEST_CASE("cycle orientation in a grid embedding")
{
    const Digraph g = build_bidirected_grid(3, 3);
    // (0,0) -> (0,1) -> (1,1) -> (1,0): clockwise with y up.
    const Cycle c{{grid_vertex(3, 0, 0), grid_vertex(3, 0, 1), grid_vertex(3, 1, 1), grid_vertex(3, 1, 0)}};
    CHECK(orientation(c, g) == Orientation::Clockwise);
    Cycle r = c;
    std::reverse(r.vertices.begin(), r.vertices.end());
    CHECK(orientation(r, g) == Orientation::Anticlockwise);
    CHECK_THROWS_AS(orientation(Cycle{{0, 1}}, g), GeometryError);
    CHECK(interior_vertices(c, g).empty());
    const Cycle big{{grid_vertex(3, 0, 0), grid_vertex(3, 0, 1), grid_vertex(3, 0, 2), grid_vertex(3, 1, 2),
                     grid_vertex(3, 2, 2), grid_vertex(3, 2, 1), grid_vertex(3, 2, 0), grid_vertex(3, 1, 0)}};
    CHECK(interior_vertices(big, g) == std::vector<Vertex>{grid_vertex(3, 1, 1)});
}

TEST_CASE("locate agrees with a winding-number oracle")
{
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto poly = random_polyomino(rng, 12, static_cast<int>(rng.between(1, 60)));
        for (std::int64_t x = -1; x <= 12; ++x)
            for (std::int64_t y = -1; y <= 12; ++y)
                REQUIRE(locate({x, y}, poly) == winding_locate({x, y}, poly));
    }
    // Non-lattice polygon with a slanted edge.
    const std::vector<Point> tri{{0, 0}, {4, 0}, {0, 4}};
    for (std::int64_t x = -1; x <= 5; ++x)
        for (std::int64_t y = -1; y <= 5; ++y)
            CHECK(locate({x, y}, tri) == winding_locate({x, y}, tri));
}

TEST_CASE("LatticeRegion is the closed polygon")
{
    Rng rng(23);
    for (int trial = 0; trial < 80; ++trial) {
        auto poly = random_polyomino(rng, 14, static_cast<int>(rng.between(1, 90)));
        if (trial % 2)
            std::reverse(poly.begin(), poly.end());
        const LatticeRegion region(poly);
        std::int64_t count = 0;
        for (std::int64_t x = -2; x <= 15; ++x)
            for (std::int64_t y = -2; y <= 15; ++y) {
                const bool closed = winding_locate({x, y}, poly) != Location::Outside;
                REQUIRE(region.contains({x, y}) == closed);
                count += closed;
            }
        REQUIRE(region.point_count() == count);
    }
}

TEST_CASE("LatticeRegion rejects non-lattice input")
{
    CHECK_THROWS_AS(LatticeRegion(std::vector<Point>{{0, 0}, {2, 0}, {2, 1}, {0, 1}}), GeometryError);
    CHECK_THROWS_AS(LatticeRegion(std::vector<Point>{{0, 0}, {0, 1}, {1, 0}}), GeometryError);
    CHECK_THROWS_AS(LatticeRegion(std::vector<Point>{{0, 0}, {0, 1}, {1, 1}, {2, 2}}), GeometryError);
}
