#pragma once

#include "rotor/graph.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rotor {

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Orientation { Clockwise, Anticlockwise };
enum class Location { Inside, Boundary, Outside };

const char* to_string(Orientation o);

/// Shoelace sum, doubled so it stays an exact integer. Positive means
/// anticlockwise with y pointing up.
std::int64_t twice_signed_area(std::span<const Point> polygon);
double signed_area(std::span<const Point> polygon);

Orientation orientation(std::span<const Point> polygon);

std::vector<Point> polygon_of(const Cycle& c, const Digraph& g);

/// Orientation of a contour drawn in the embedding of g. Throws for dimers,
/// missing embeddings and degenerate (zero-area) cycles.
Orientation orientation(const Cycle& c, const Digraph& g);

/// Ray-crossing classification against a simple polygon, exact on integers.
Location locate(Point q, std::span<const Point> polygon);

/// Vertices of g strictly inside the polygon of contour c.
std::vector<Vertex> interior_vertices(const Cycle& c, const Digraph& g);

/// Closed region (boundary plus interior) of a simple lattice polygon with
/// unit axis-parallel steps, stored as per-row integer spans. Memory is
/// proportional to the perimeter; membership is a binary search in one row.
class LatticeRegion {
public:
    LatticeRegion() = default;
    explicit LatticeRegion(std::span<const Point> contour);

    bool contains(Point p) const;
    std::int64_t min_y() const { return min_y_; }
    std::int64_t max_y() const { return min_y_ + static_cast<std::int64_t>(row_start_.size()) - 2; }

    /// Number of lattice points in the closed region.
    std::int64_t point_count() const;

private:
    struct Span {
        std::int64_t lo;
        std::int64_t hi;
    };
    std::int64_t min_y_ = 0;
    std::vector<std::uint32_t> row_start_; // rows + 1 offsets into spans_
    std::vector<Span> spans_;
};

} // namespace rotor
