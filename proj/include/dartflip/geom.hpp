#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dartflip {

/// Exact integer point. Coordinates must stay within kCoordBound so that
/// every predicate determinant (including the lifted incircle test) fits
/// in the integer widths used below.
struct Point {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

inline constexpr std::int64_t kCoordBound = 1'000'000;

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

Orientation orient(const Point& a, const Point& b, const Point& c);

/// Doubled signed area of triangle abc (positive iff CCW).
std::int64_t cross2(const Point& a, const Point& b, const Point& c);

enum class TrianglePosition { StrictlyInside, OnBoundary, Outside };

/// Exact point-vs-triangle classification; the triangle may be given in
/// either orientation but must not be degenerate.
TrianglePosition in_triangle(const Point& q, const Point& a, const Point& b, const Point& c);

/// Interior-to-interior crossing; sharing an endpoint is not a proper
/// intersection.
bool segments_properly_intersect(const Point& p1, const Point& p2,
                                 const Point& q1, const Point& q2);

/// True iff q lies on segment [a,b], endpoints included.
bool segment_contains_point(const Point& a, const Point& b, const Point& q);

/// q strictly between a and b on the segment.
bool segment_strictly_contains_point(const Point& a, const Point& b, const Point& q);

/// Sign of the incircle determinant for CCW triangle abc and query d:
/// +1 if d is strictly inside the circumcircle, -1 outside, 0 cocircular.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);

/// Counter-clockwise convex hull indices of ps. Throws std::invalid_argument
/// on fewer than 3 points or an all-collinear input.
std::vector<int> convex_hull(const std::vector<Point>& ps);

/// Immutable point set with hull metadata. Construction rejects duplicate
/// points, out-of-bound coordinates and collinear triples (the diagnostic
/// names the offending triple).
class PointSet {
public:
    static PointSet make(std::vector<Point> points);

    const std::vector<Point>& points() const { return points_; }
    const Point& at(int i) const { return points_[static_cast<std::size_t>(i)]; }
    int n() const { return static_cast<int>(points_.size()); }
    const std::vector<int>& hull() const { return hull_; }
    int h() const { return static_cast<int>(hull_.size()); }
    bool is_hull_vertex(int i) const { return on_hull_[static_cast<std::size_t>(i)]; }

    std::vector<int> interior_indices() const;

private:
    PointSet() = default;
    std::vector<Point> points_;
    std::vector<int> hull_;
    std::vector<bool> on_hull_;
};

}  // namespace dartflip
