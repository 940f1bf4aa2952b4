#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dartflip/flip.hpp"
#include "dartflip/ptcore.hpp"

namespace dartflip {

inline constexpr int kDefaultEnumerationCap = 10;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationResult {
    std::vector<KDPT> items;  // sorted by canonical key, pairwise distinct
    std::map<int, int> by_tail;  // dart tail vertex -> number of k-DPTs (k = 1 only)

    int count() const { return static_cast<int>(items.size()); }
    std::vector<std::string> keys() const;
};

/// Deterministic triangulation: fan the hull from its first vertex, then
/// insert interior points in index order by splitting their containing
/// triangle.
KDPT initial_triangulation(std::shared_ptr<const PointSet> ps);

/// Every triangulation exactly once, via BFS over convex-quadrilateral
/// diagonal flips.
EnumerationResult all_triangulations(std::shared_ptr<const PointSet> ps,
                                     int cap = kDefaultEnumerationCap);

/// Every k-DPT exactly once, via the spine bijection: each k-DPT is
/// remove_spines(T, S) for a unique (triangulation, spine set) pair.
EnumerationResult all_kdpts(std::shared_ptr<const PointSet> ps, int k,
                            int cap = kDefaultEnumerationCap);

}  // namespace dartflip
