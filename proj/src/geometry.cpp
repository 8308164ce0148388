#include "rotor/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <tuple>

namespace rotor {

const char* to_string(Orientation o)
{
    return o == Orientation::Clockwise ? "clockwise" : "anticlockwise";
}

std::int64_t twice_signed_area(std::span<const Point> polygon)
{
    if (polygon.size() < 3)
        throw GeometryError("polygon needs at least 3 points");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % polygon.size()];
        sum += a.x * b.y - b.x * a.y;
    }
    return sum;
}

double signed_area(std::span<const Point> polygon)
{
    return 0.5 * static_cast<double>(twice_signed_area(polygon));
}

Orientation orientation(std::span<const Point> polygon)
{
    const auto a2 = twice_signed_area(polygon);
    if (a2 == 0)
        throw GeometryError("degenerate polygon has no orientation");
    return a2 < 0 ? Orientation::Clockwise : Orientation::Anticlockwise;
}

std::vector<Point> polygon_of(const Cycle& c, const Digraph& g)
{
    if (!g.has_embedding())
        throw GeometryError("graph has no embedding");
    std::vector<Point> poly;
    poly.reserve(c.size());
    for (Vertex v : c.vertices)
        poly.push_back(g.position(v));
    return poly;
}

Orientation orientation(const Cycle& c, const Digraph& g)
{
    if (!c.is_contour())
        throw GeometryError("orientation is undefined for a dimer");
    return orientation(polygon_of(c, g));
}

Location locate(Point q, std::span<const Point> polygon)
{
    const std::size_t n = polygon.size();
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        const std::int64_t cross = (b.x - a.x) * (q.y - a.y) - (b.y - a.y) * (q.x - a.x);
        if (cross == 0 && std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
            q.y <= std::max(a.y, b.y))
            return Location::Boundary;
        if ((a.y > q.y) != (b.y > q.y)) {
            // q.x < x-coordinate of the edge at height q.y, without division.
            const std::int64_t lhs = (q.x - a.x) * (b.y - a.y);
            const std::int64_t rhs = (q.y - a.y) * (b.x - a.x);
            if (b.y > a.y ? lhs < rhs : lhs > rhs)
                inside = !inside;
        }
    }
    return inside ? Location::Inside : Location::Outside;
}

std::vector<Vertex> interior_vertices(const Cycle& c, const Digraph& g)
{
    if (!c.is_contour())
        throw GeometryError("interior is undefined for a dimer");
    const auto poly = polygon_of(c, g);
    std::vector<Vertex> inside;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (locate(g.position(v), poly) == Location::Inside)
            inside.push_back(v);
    return inside;
}

LatticeRegion::LatticeRegion(std::span<const Point> contour)
{
    if (contour.size() < 4)
        throw GeometryError("lattice contour needs at least 4 points");
    std::int64_t lo_y = contour[0].y;
    std::int64_t hi_y = contour[0].y;
    // (row, x) of vertical unit edges spanning [row, row + 1].
    std::vector<std::pair<std::int64_t, std::int64_t>> crossings;
    for (std::size_t i = 0; i < contour.size(); ++i) {
        const Point& a = contour[i];
        const Point& b = contour[(i + 1) % contour.size()];
        if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
            throw GeometryError("lattice contour must move in unit axis steps");
        if (a.x == b.x)
            crossings.emplace_back(std::min(a.y, b.y), a.x);
        lo_y = std::min(lo_y, a.y);
        hi_y = std::max(hi_y, a.y);
    }
    std::sort(crossings.begin(), crossings.end());

    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> raw; // row, lo, hi
    raw.reserve(crossings.size() / 2 + contour.size());
    for (std::size_t i = 0; i + 1 < crossings.size(); i += 2) {
        if (crossings[i].first != crossings[i + 1].first)
            throw GeometryError("lattice contour is not simple");
        raw.emplace_back(crossings[i].first, crossings[i].second, crossings[i + 1].second);
    }
    for (const Point& p : contour)
        raw.emplace_back(p.y, p.x, p.x);
    std::sort(raw.begin(), raw.end());

    min_y_ = lo_y;
    const auto rows = static_cast<std::size_t>(hi_y - lo_y + 1);
    row_start_.assign(rows + 1, 0);
    std::int64_t current_row = lo_y - 1;
    for (const auto& [row, lo, hi] : raw) {
        if (row == current_row && !spans_.empty() && lo <= spans_.back().hi + 1) {
            spans_.back().hi = std::max(spans_.back().hi, hi);
            continue;
        }
        while (current_row < row) {
            ++current_row;
            row_start_[static_cast<std::size_t>(current_row - lo_y)] = static_cast<std::uint32_t>(spans_.size());
        }
        spans_.push_back({lo, hi});
    }
    row_start_[rows] = static_cast<std::uint32_t>(spans_.size());
}

bool LatticeRegion::contains(Point p) const
{
    if (row_start_.empty() || p.y < min_y_ || p.y > max_y())
        return false;
    const auto r = static_cast<std::size_t>(p.y - min_y_);
    const Span* first = spans_.data() + row_start_[r];
    const Span* last = spans_.data() + row_start_[r + 1];
    // First span with hi >= x.
    const Span* it = std::lower_bound(first, last, p.x, [](const Span& s, std::int64_t x) { return s.hi < x; });
    return it != last && it->lo <= p.x;
}

std::int64_t LatticeRegion::point_count() const
{
    std::int64_t total = 0;
    for (const Span& s : spans_)
        total += s.hi - s.lo + 1;
    return total;
}

} // namespace rotor
