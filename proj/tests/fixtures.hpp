#pragma once

#include <memory>

#include "dartflip/geom.hpp"
#include "dartflip/ptcore.hpp"

namespace fixtures {

using dartflip::Edge;
using dartflip::KDPT;
using dartflip::Point;
using dartflip::PointSet;

// Triangle hull with one interior point: A=0, B=1, C=2, p=3.
inline std::shared_ptr<const PointSet> t4() {
    return std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {4, 0}, {2, 4}, {2, 1}}));
}
inline constexpr int T4_A = 0, T4_B = 1, T4_C = 2, T4_p = 3;

inline std::shared_ptr<const PointSet> convex5() {
    return std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}}));
}

// Double chain, a = b = 1. P1 = {0,1,2} (upper), P2 = {3,4,5} (lower).
inline std::shared_ptr<const PointSet> dc11() {
    return std::make_shared<PointSet>(
        PointSet::make({{0, 10}, {5, 8}, {10, 10}, {0, 0}, {5, 2}, {10, 0}}));
}

// Triangle hull with two interior points: s=0, t=1, u=2, p=3, q=4.
inline std::shared_ptr<const PointSet> q5() {
    return std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {8, 0}, {4, 8}, {3, 3}, {5, 3}}));
}
inline constexpr int Q5_s = 0, Q5_t = 1, Q5_u = 2, Q5_p = 3, Q5_q = 4;

// The unique 1-DPT fixtures on T4.
inline KDPT t4_1dpt(std::shared_ptr<const PointSet> ps, int missing_spoke) {
    std::vector<Edge> edges = dartflip::hull_edges(*ps);
    for (int v : {T4_A, T4_B, T4_C})
        if (v != missing_spoke) edges.emplace_back(T4_p, v);
    return KDPT(std::move(ps), std::move(edges));
}

}  // namespace fixtures
