#pragma once

#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dartflip/enumerate.hpp"
#include "dartflip/flip.hpp"

namespace dartflip {

/// A replayable flip sequence between two states with the same k.
struct FlipPath {
    std::string start_key;
    std::string end_key;
    std::vector<Flip> flips;
    bool fallback = false;  // produced by the BFS fallback instead of the
                            // constructive procedure

    std::size_t length() const { return flips.size(); }
};

/// Thrown when a constructive flip procedure hits a state outside the
/// cases it handles; callers may fall back to graph search.
struct StageFailure : std::runtime_error {
    explicit StageFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Apply every flip in order, validating each intermediate state against k
/// and checking both declared keys. Returns the final state.
KDPT replay_path(const KDPT& start, const FlipPath& path, int k);

/// Incircle with symbolic perturbation: never returns 0 for four distinct
/// vertices, so Delaunay improvement flips terminate at a unique target
/// even for cocircular inputs. Ties break by lifting the smallest vertex
/// index infinitesimally higher.
int perturbed_incircle(const PointSet& ps, int a, int b, int c, int d);

/// Run Lawson improvement flips on t until every edge whose two incident
/// faces are triangles and that is not in `fixed` is locally Delaunay
/// under the perturbed predicate. Mutates t; returns the flips applied,
/// smallest eligible edge first.
std::vector<Flip> delaunay_flips(KDPT& t, const std::set<Edge>& fixed);

/// Flip path between two edge-compatible states that keeps every edge of
/// `constrained` in place, by flipping both endpoints to the constrained
/// Delaunay completion and concatenating one leg with the reverse of the
/// other. Intended for triangulations; also used on k-DPTs whose darts
/// are covered by `constrained`.
FlipPath constrained_flip_path(const KDPT& from, const KDPT& to,
                               const std::vector<Edge>& constrained);

/// Greedily extend `base` to a full triangulation of ps (all candidate
/// edges in sorted order that cross nothing already present).
std::vector<Edge> complete_triangulation(const PointSet& ps, std::vector<Edge> base);

/// True iff the single dart of t sits in a dart triangle: the wing-wing
/// edge exists and the triangle tip/wing1/wing2 contains no vertex other
/// than the tail.
bool dart_in_dart_triangle(const KDPT& t);

/// Flip sequence from a 1-DPT to a 1-DPT whose dart lies in a dart
/// triangle with unchanged tip and tail.
FlipPath dart_triangle_path(const KDPT& t);

/// Short gadget (at most 3 flips): given a 1-DPT whose dart occupies the
/// dart triangle on one side of diagonal `diag` of the strictly convex
/// quadrilateral `quad` (cyclic, with diag joining quad[0] and quad[2]),
/// produce the state where diag has been exchanged for the opposite
/// diagonal and the dart occupies the post-flip face containing its tail.
FlipPath special_face_flip(const KDPT& t, const std::array<int, 4>& quad, const Edge& diag);

/// Flip path between two 1-DPTs whose darts share a tail. Falls back to
/// breadth-first search over the flip graph (flagged) when the staged
/// construction rejects a case.
FlipPath same_tail_path(const KDPT& t1, const KDPT& t2, int cap = kDefaultEnumerationCap);

/// True iff the five points have hull {s,t,u} with p and q strictly
/// inside, and the 1-DPT flip graph of the five points alone contains an
/// edge joining a node with tail p to a node with tail q whose flip
/// merges two faces that are both empty of the remaining points of ps
/// (so the swap configuration survives in the full set).
bool quintuple_swap_test(const PointSet& ps, int p, int q, int s, int t, int u);

/// Number of distinct overlapping dart pairs joined by a tail-swapping
/// flip in the 1-DPT flip graph of a 5-point set with triangular hull.
/// Pairs are identified by the two darts alone; the surrounding
/// triangulation is ignored, so one pair reachable in two contexts counts
/// once.
int tail_swap_configurations(const PointSet& ps);

struct TailGraph {
    std::vector<int> nodes;                  // interior point indices, sorted
    std::vector<std::pair<int, int>> edges;  // sorted pairs, sorted list
};

TailGraph tail_graph(const PointSet& ps);

/// Connected components of the tail graph: the predicted partition of
/// 1-DPT flip-graph components by dart tail. Parts and members sorted.
std::vector<std::vector<int>> predicted_components_1dpt(const PointSet& ps);

}  // namespace dartflip
