#include "dartflip/geom.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dartflip {

std::int64_t cross2(const Point& a, const Point& b, const Point& c) {
    // |b-a x c-a|, exact for |coords| <= kCoordBound.
    const std::int64_t abx = b.x - a.x, aby = b.y - a.y;
    const std::int64_t acx = c.x - a.x, acy = c.y - a.y;
    return abx * acy - aby * acx;
}

Orientation orient(const Point& a, const Point& b, const Point& c) {
    const std::int64_t d = cross2(a, b, c);
    if (d > 0) return Orientation::CCW;
    if (d < 0) return Orientation::CW;
    return Orientation::Collinear;
}

TrianglePosition in_triangle(const Point& q, const Point& a, const Point& b, const Point& c) {
    Orientation o = orient(a, b, c);
    if (o == Orientation::Collinear) throw std::invalid_argument("in_triangle: degenerate triangle");
    const Point& u = a;
    const Point& v = (o == Orientation::CCW) ? b : c;
    const Point& w = (o == Orientation::CCW) ? c : b;
    const std::int64_t s1 = cross2(u, v, q);
    const std::int64_t s2 = cross2(v, w, q);
    const std::int64_t s3 = cross2(w, u, q);
    if (s1 > 0 && s2 > 0 && s3 > 0) return TrianglePosition::StrictlyInside;
    if (s1 >= 0 && s2 >= 0 && s3 >= 0) return TrianglePosition::OnBoundary;
    return TrianglePosition::Outside;
}

bool segment_contains_point(const Point& a, const Point& b, const Point& q) {
    if (orient(a, b, q) != Orientation::Collinear) return false;
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

bool segment_strictly_contains_point(const Point& a, const Point& b, const Point& q) {
    return q != a && q != b && segment_contains_point(a, b, q);
}

bool segments_properly_intersect(const Point& p1, const Point& p2,
                                 const Point& q1, const Point& q2) {
    const std::int64_t d1 = cross2(q1, q2, p1);
    const std::int64_t d2 = cross2(q1, q2, p2);
    const std::int64_t d3 = cross2(p1, p2, q1);
    const std::int64_t d4 = cross2(p1, p2, q2);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
    using I128 = __int128;
    const I128 adx = a.x - d.x, ady = a.y - d.y;
    const I128 bdx = b.x - d.x, bdy = b.y - d.y;
    const I128 cdx = c.x - d.x, cdy = c.y - d.y;
    const I128 alift = adx * adx + ady * ady;
    const I128 blift = bdx * bdx + bdy * bdy;
    const I128 clift = cdx * cdx + cdy * cdy;
    const I128 det = adx * (bdy * clift - cdy * blift)
                   - ady * (bdx * clift - cdx * blift)
                   + alift * (bdx * cdy - cdx * bdy);
    if (det > 0) return 1;
    if (det < 0) return -1;
    return 0;
}

std::vector<int> convex_hull(const std::vector<Point>& ps) {
    const int n = static_cast<int>(ps.size());
    if (n < 3) throw std::invalid_argument("convex_hull: fewer than 3 points");
    std::vector<int> idx(ps.size());
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return ps[i] < ps[j]; });

    // Monotone chain, strict turns only (collinear hull points are a
    // general-position violation and get rejected upstream).
    auto build = [&](std::vector<int>& out, auto begin, auto end) {
        for (auto it = begin; it != end; ++it) {
            int i = *it;
            while (out.size() >= 2 &&
                   orient(ps[out[out.size() - 2]], ps[out[out.size() - 1]], ps[i]) !=
                       Orientation::CCW) {
                out.pop_back();
            }
            out.push_back(i);
        }
    };
    std::vector<int> lower, upper;
    build(lower, idx.begin(), idx.end());
    build(upper, idx.rbegin(), idx.rend());
    if (lower.size() < 2 || (lower.size() == 2 && upper.size() == 2 && n > 2)) {
        // all points collinear
    }
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) throw std::invalid_argument("convex_hull: all points collinear");
    return lower;
}

std::vector<int> PointSet::interior_indices() const {
    std::vector<int> out;
    for (int i = 0; i < n(); ++i)
        if (!is_hull_vertex(i)) out.push_back(i);
    return out;
}

PointSet PointSet::make(std::vector<Point> points) {
    const int n = static_cast<int>(points.size());
    for (const Point& p : points) {
        if (std::abs(p.x) > kCoordBound || std::abs(p.y) > kCoordBound) {
            std::ostringstream os;
            os << "PointSet: coordinate (" << p.x << "," << p.y << ") exceeds magnitude bound "
               << kCoordBound;
            throw std::invalid_argument(os.str());
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (points[i] == points[j]) {
                std::ostringstream os;
                os << "PointSet: duplicate points at indices " << i << " and " << j;
                throw std::invalid_argument(os.str());
            }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                if (orient(points[i], points[j], points[k]) == Orientation::Collinear) {
                    std::ostringstream os;
                    os << "PointSet: collinear triple (" << i << "," << j << "," << k << ")";
                    throw std::invalid_argument(os.str());
                }

    PointSet ps;
    ps.hull_ = convex_hull(points);
    ps.points_ = std::move(points);
    ps.on_hull_.assign(ps.points_.size(), false);
    for (int i : ps.hull_) ps.on_hull_[static_cast<std::size_t>(i)] = true;
    return ps;
}

}  // namespace dartflip
