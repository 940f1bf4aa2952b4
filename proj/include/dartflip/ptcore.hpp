#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dartflip/geom.hpp"

namespace dartflip {

/// Undirected edge between vertex indices, stored with a < b.
struct Edge {
    int a = -1;
    int b = -1;

    Edge() = default;
    Edge(int i, int j) : a(i < j ? i : j), b(i < j ? j : i) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct DartInfo {
    int tip = -1;
    int tail = -1;  // the unique reflex vertex; always interior
    int wing1 = -1;
    int wing2 = -1;

    Edge spine() const { return Edge(tail, tip); }
    friend bool operator==(const DartInfo&, const DartInfo&) = default;
};

struct Triangle {};

struct Face {
    std::vector<int> walk;  // counter-clockwise, simple
    std::variant<Triangle, DartInfo> kind;

    bool is_dart() const { return std::holds_alternative<DartInfo>(kind); }
    const DartInfo& dart() const { return std::get<DartInfo>(kind); }
};

/// Face walk after deleting one interior edge. May repeat one vertex when
/// the two incident faces shared two edges (the slit case).
struct MergedFace {
    std::vector<int> walk;
};

/// A k-DPT as an immutable edge set over a shared point set. Faces are
/// derived on demand; equality is edge-set equality.
class KDPT {
public:
    KDPT(std::shared_ptr<const PointSet> ps, std::vector<Edge> edges);

    const PointSet& ps() const { return *ps_; }
    std::shared_ptr<const PointSet> ps_ptr() const { return ps_; }
    const std::vector<Edge>& edges() const { return edges_; }  // sorted, unique
    bool has_edge(const Edge& e) const;
    bool is_hull_edge(const Edge& e) const;

    KDPT with_edge_exchanged(const Edge& removed, const Edge& inserted) const;
    KDPT with_edges_added(const std::vector<Edge>& add) const;
    KDPT with_edges_removed(const std::vector<Edge>& rem) const;

    friend bool operator==(const KDPT& l, const KDPT& r) {
        return l.ps_ == r.ps_ && l.edges_ == r.edges_;
    }

private:
    std::shared_ptr<const PointSet> ps_;
    std::vector<Edge> edges_;
};

std::vector<Edge> hull_edges(const PointSet& ps);

/// All bounded faces as counter-clockwise walks, via angular traversal of
/// the rotation system. Requires a crossing-free, connected edge set that
/// contains the hull edges.
std::vector<std::vector<int>> face_walks(const KDPT& t);

enum class FaceKind { Triangle, Dart, Invalid };

FaceKind classify_walk(const std::vector<int>& walk, const PointSet& ps, DartInfo* out = nullptr);
Face classify_face(const std::vector<int>& walk, const PointSet& ps);

/// Derived faces of a valid k-DPT.
std::vector<Face> faces(const KDPT& t);

/// Empty iff (ps, edges) is a valid k-DPT with exactly k darts.
std::vector<std::string> validate_kdpt(const KDPT& t, int k);
bool is_valid_kdpt(const KDPT& t, int k);

int dart_count(const KDPT& t);

/// Vertices incident to a bounded-face angle larger than pi.
std::vector<int> pointed_vertices(const KDPT& t);
std::vector<int> interior_pointed_vertices(const KDPT& t);

/// Deterministic serialization of the sorted edge list.
std::string canonical_key(const KDPT& t);

struct SpineSplit {
    KDPT triangulation;
    std::vector<Edge> spines;
};

/// Split every dart by its spine; the result is a triangulation.
SpineSplit add_spines(const KDPT& t);

/// Inverse of add_spines. Throws std::invalid_argument when the spine set
/// violates its preconditions (hull edge, shared face, convex union).
KDPT remove_spines(const KDPT& triangulation, const std::vector<Edge>& spines);

/// Doubled area of the hull polygon.
std::int64_t doubled_hull_area(const PointSet& ps);
std::int64_t doubled_walk_area(const std::vector<int>& walk, const PointSet& ps);

}  // namespace dartflip
