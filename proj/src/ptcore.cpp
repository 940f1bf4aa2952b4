#include "dartflip/ptcore.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dartflip {

KDPT::KDPT(std::shared_ptr<const PointSet> ps, std::vector<Edge> edges)
    : ps_(std::move(ps)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool KDPT::has_edge(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool KDPT::is_hull_edge(const Edge& e) const {
    const auto& h = ps_->hull();
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (Edge(h[i], h[(i + 1) % h.size()]) == e) return true;
    }
    return false;
}

KDPT KDPT::with_edge_exchanged(const Edge& removed, const Edge& inserted) const {
    std::vector<Edge> es = edges_;
    es.erase(std::remove(es.begin(), es.end(), removed), es.end());
    es.push_back(inserted);
    return KDPT(ps_, std::move(es));
}

KDPT KDPT::with_edges_added(const std::vector<Edge>& add) const {
    std::vector<Edge> es = edges_;
    es.insert(es.end(), add.begin(), add.end());
    return KDPT(ps_, std::move(es));
}

KDPT KDPT::with_edges_removed(const std::vector<Edge>& rem) const {
    std::vector<Edge> es;
    for (const Edge& e : edges_)
        if (std::find(rem.begin(), rem.end(), e) == rem.end()) es.push_back(e);
    return KDPT(ps_, std::move(es));
}

std::vector<Edge> hull_edges(const PointSet& ps) {
    std::vector<Edge> out;
    const auto& h = ps.hull();
    for (std::size_t i = 0; i < h.size(); ++i) out.emplace_back(h[i], h[(i + 1) % h.size()]);
    return out;
}

std::int64_t doubled_walk_area(const std::vector<int>& walk, const PointSet& ps) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        const Point& p = ps.at(walk[i]);
        const Point& q = ps.at(walk[(i + 1) % walk.size()]);
        s += p.x * q.y - p.y * q.x;
    }
    return s;
}

std::int64_t doubled_hull_area(const PointSet& ps) {
    return doubled_walk_area(ps.hull(), ps);
}

namespace {

// CCW angular order of direction vectors, starting at direction (1,0).
bool angle_less(const Point& o, const Point& p, const Point& q) {
    auto half = [&](const Point& d) {
        std::int64_t dx = d.x - o.x, dy = d.y - o.y;
        return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    int hp = half(p), hq = half(q);
    if (hp != hq) return hp < hq;
    return orient(o, p, q) == Orientation::CCW;
}

struct RotationSystem {
    // neighbors[v] sorted CCW by angle
    std::vector<std::vector<int>> neighbors;

    explicit RotationSystem(const KDPT& t) {
        neighbors.resize(static_cast<std::size_t>(t.ps().n()));
        for (const Edge& e : t.edges()) {
            neighbors[static_cast<std::size_t>(e.a)].push_back(e.b);
            neighbors[static_cast<std::size_t>(e.b)].push_back(e.a);
        }
        const PointSet& ps = t.ps();
        for (int v = 0; v < t.ps().n(); ++v) {
            auto& nb = neighbors[static_cast<std::size_t>(v)];
            std::sort(nb.begin(), nb.end(),
                      [&](int p, int q) { return angle_less(ps.at(v), ps.at(p), ps.at(q)); });
        }
    }

    // Coming into v from u, the next face edge leaves v toward the
    // CCW-predecessor of u around v (bounded faces come out CCW).
    int next_around(int v, int u) const {
        const auto& nb = neighbors[static_cast<std::size_t>(v)];
        auto it = std::find(nb.begin(), nb.end(), u);
        if (it == nb.end()) throw std::logic_error("rotation system: missing neighbor");
        return (it == nb.begin()) ? nb.back() : *(it - 1);
    }
};

}  // namespace

std::vector<std::vector<int>> face_walks(const KDPT& t) {
    RotationSystem rs(t);
    std::set<std::pair<int, int>> visited;
    std::vector<std::vector<int>> walks;
    for (const Edge& e : t.edges()) {
        for (auto [u, v] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            if (visited.count({u, v})) continue;
            std::vector<int> walk;
            int cu = u, cv = v;
            while (!visited.count({cu, cv})) {
                visited.insert({cu, cv});
                walk.push_back(cu);
                int w = rs.next_around(cv, cu);
                cu = cv;
                cv = w;
            }
            if (doubled_walk_area(walk, t.ps()) > 0) walks.push_back(std::move(walk));
        }
    }
    return walks;
}

FaceKind classify_walk(const std::vector<int>& walk, const PointSet& ps, DartInfo* out) {
    const std::size_t m = walk.size();
    std::set<int> distinct(walk.begin(), walk.end());
    if (distinct.size() != m) return FaceKind::Invalid;
    if (m == 3) {
        if (orient(ps.at(walk[0]), ps.at(walk[1]), ps.at(walk[2])) != Orientation::CCW)
            return FaceKind::Invalid;
        return FaceKind::Triangle;
    }
    if (m != 4) return FaceKind::Invalid;
    int reflex = -1, reflex_count = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        Orientation o = orient(ps.at(walk[(i + 3) % 4]), ps.at(walk[i]), ps.at(walk[(i + 1) % 4]));
        if (o == Orientation::Collinear) return FaceKind::Invalid;
        if (o == Orientation::CW) {
            reflex = static_cast<int>(i);
            ++reflex_count;
        }
    }
    if (reflex_count != 1) return FaceKind::Invalid;  // convex quad or non-simple
    if (out) {
        out->tail = walk[static_cast<std::size_t>(reflex)];
        out->tip = walk[static_cast<std::size_t>((reflex + 2) % 4)];
        out->wing1 = walk[static_cast<std::size_t>((reflex + 1) % 4)];
        out->wing2 = walk[static_cast<std::size_t>((reflex + 3) % 4)];
    }
    return FaceKind::Dart;
}

Face classify_face(const std::vector<int>& walk, const PointSet& ps) {
    DartInfo d;
    switch (classify_walk(walk, ps, &d)) {
        case FaceKind::Triangle:
            return Face{walk, Triangle{}};
        case FaceKind::Dart:
            return Face{walk, d};
        case FaceKind::Invalid:
            break;
    }
    std::ostringstream os;
    os << "classify_face: walk of size " << walk.size() << " is neither triangle nor dart";
    throw std::invalid_argument(os.str());
}

std::vector<Face> faces(const KDPT& t) {
    std::vector<Face> out;
    for (const auto& w : face_walks(t)) out.push_back(classify_face(w, t.ps()));
    return out;
}

int dart_count(const KDPT& t) {
    int k = 0;
    for (const auto& f : faces(t))
        if (f.is_dart()) ++k;
    return k;
}

std::vector<int> pointed_vertices(const KDPT& t) {
    std::set<int> pv;
    const PointSet& ps = t.ps();
    for (const auto& w : face_walks(t)) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            Orientation o = orient(ps.at(w[(i + w.size() - 1) % w.size()]), ps.at(w[i]),
                                   ps.at(w[(i + 1) % w.size()]));
            if (o == Orientation::CW) pv.insert(w[i]);
        }
    }
    return {pv.begin(), pv.end()};
}

std::vector<int> interior_pointed_vertices(const KDPT& t) {
    std::vector<int> out;
    for (int v : pointed_vertices(t))
        if (!t.ps().is_hull_vertex(v)) out.push_back(v);
    return out;
}

std::string canonical_key(const KDPT& t) {
    std::ostringstream os;
    for (const Edge& e : t.edges()) os << e.a << '-' << e.b << ';';
    return os.str();
}

std::vector<std::string> validate_kdpt(const KDPT& t, int k) {
    std::vector<std::string> bad;
    const PointSet& ps = t.ps();
    const int n = ps.n();
    auto note = [&](const std::string& s) { bad.push_back(s); };

    for (const Edge& e : t.edges()) {
        if (e.a < 0 || e.b >= n || e.a == e.b) {
            note("edge with invalid endpoints");
            return bad;
        }
    }
    for (const Edge& e : hull_edges(ps)) {
        if (!t.has_edge(e)) {
            std::ostringstream os;
            os << "hull edge " << e.a << "-" << e.b << " missing";
            note(os.str());
        }
    }
    const auto& es = t.edges();
    for (std::size_t i = 0; i < es.size(); ++i) {
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            if (segments_properly_intersect(ps.at(es[i].a), ps.at(es[i].b), ps.at(es[j].a),
                                            ps.at(es[j].b))) {
                std::ostringstream os;
                os << "edges " << es[i].a << "-" << es[i].b << " and " << es[j].a << "-" << es[j].b
                   << " cross";
                note(os.str());
            }
        }
        for (int v = 0; v < n; ++v) {
            if (segment_strictly_contains_point(ps.at(es[i].a), ps.at(es[i].b), ps.at(v))) {
                std::ostringstream os;
                os << "vertex " << v << " lies on edge " << es[i].a << "-" << es[i].b;
                note(os.str());
            }
        }
    }
    std::vector<int> degree(static_cast<std::size_t>(n), 0);
    for (const Edge& e : es) {
        ++degree[static_cast<std::size_t>(e.a)];
        ++degree[static_cast<std::size_t>(e.b)];
    }
    for (int v = 0; v < n; ++v) {
        if (degree[static_cast<std::size_t>(v)] < 2) {
            std::ostringstream os;
            os << "vertex " << v << " has degree < 2";
            note(os.str());
        }
    }
    if (!bad.empty()) return bad;

    // connectivity
    {
        std::vector<bool> seen(static_cast<std::size_t>(n), false);
        std::vector<int> stack{0};
        seen[0] = true;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        for (const Edge& e : es) {
            adj[static_cast<std::size_t>(e.a)].push_back(e.b);
            adj[static_cast<std::size_t>(e.b)].push_back(e.a);
        }
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
        }
        for (int v = 0; v < n; ++v)
            if (!seen[static_cast<std::size_t>(v)]) {
                note("edge set disconnected");
                return bad;
            }
    }

    int darts = 0;
    std::set<int> tails;
    std::int64_t area = 0;
    std::size_t face_count = 0;
    for (const auto& w : face_walks(t)) {
        DartInfo d;
        FaceKind kind = classify_walk(w, ps, &d);
        ++face_count;
        area += doubled_walk_area(w, ps);
        if (kind == FaceKind::Invalid) {
            std::ostringstream os;
            os << "face of size " << w.size() << " at vertex " << w.front()
               << " is neither triangle nor dart";
            note(os.str());
        } else if (kind == FaceKind::Dart) {
            ++darts;
            tails.insert(d.tail);
            if (ps.is_hull_vertex(d.tail)) {
                std::ostringstream os;
                os << "dart tail " << d.tail << " is a hull vertex";
                note(os.str());
            }
        }
    }
    if (darts != k) {
        std::ostringstream os;
        os << "dart count " << darts << " != " << k;
        note(os.str());
    }
    std::vector<int> pointed = interior_pointed_vertices(t);
    if (std::set<int>(pointed.begin(), pointed.end()) != tails)
        note("interior pointed vertices differ from dart tails");

    const int expected_edges = 3 * n - ps.h() - 3 - k;
    if (static_cast<int>(es.size()) != expected_edges) {
        std::ostringstream os;
        os << "edge count " << es.size() << " != 3n-h-3-k = " << expected_edges;
        note(os.str());
    }
    const int expected_faces = 2 * n - ps.h() - 2 - k;
    if (static_cast<int>(face_count) != expected_faces) {
        std::ostringstream os;
        os << "face count " << face_count << " != 2n-h-2-k = " << expected_faces;
        note(os.str());
    }
    if (area != doubled_hull_area(ps)) note("face areas do not partition the hull");
    return bad;
}

bool is_valid_kdpt(const KDPT& t, int k) { return validate_kdpt(t, k).empty(); }

SpineSplit add_spines(const KDPT& t) {
    std::vector<Edge> spines;
    for (const auto& f : faces(t))
        if (f.is_dart()) spines.push_back(f.dart().spine());
    std::sort(spines.begin(), spines.end());
    return SpineSplit{t.with_edges_added(spines), spines};
}

KDPT remove_spines(const KDPT& triangulation, const std::vector<Edge>& spines) {
    const PointSet& ps = triangulation.ps();
    // edge -> adjacent face indices
    std::vector<std::vector<int>> walks = face_walks(triangulation);
    std::map<Edge, std::vector<int>> by_edge;
    for (std::size_t f = 0; f < walks.size(); ++f) {
        const auto& w = walks[f];
        for (std::size_t i = 0; i < w.size(); ++i)
            by_edge[Edge(w[i], w[(i + 1) % w.size()])].push_back(static_cast<int>(f));
    }
    std::vector<int> face_use(walks.size(), 0);
    for (const Edge& e : spines) {
        if (!triangulation.has_edge(e)) throw std::invalid_argument("remove_spines: edge absent");
        if (triangulation.is_hull_edge(e))
            throw std::invalid_argument("remove_spines: hull edge cannot be a spine");
        auto it = by_edge.find(e);
        if (it == by_edge.end() || it->second.size() != 2)
            throw std::invalid_argument("remove_spines: edge not interior to two faces");
        int opp[2];
        for (int s = 0; s < 2; ++s) {
            const auto& w = walks[static_cast<std::size_t>(it->second[static_cast<std::size_t>(s)])];
            if (w.size() != 3) throw std::invalid_argument("remove_spines: adjacent face not a triangle");
            opp[s] = -1;
            for (int v : w)
                if (v != e.a && v != e.b) opp[s] = v;
            ++face_use[static_cast<std::size_t>(it->second[static_cast<std::size_t>(s)])];
        }
        // union must be a non-convex quadrilateral, i.e. one endpoint of e
        // strictly inside the triangle of the other three
        const bool a_reflex =
            in_triangle(ps.at(e.a), ps.at(opp[0]), ps.at(e.b), ps.at(opp[1])) ==
            TrianglePosition::StrictlyInside;
        const bool b_reflex =
            in_triangle(ps.at(e.b), ps.at(opp[0]), ps.at(e.a), ps.at(opp[1])) ==
            TrianglePosition::StrictlyInside;
        if (!(a_reflex ^ b_reflex))
            throw std::invalid_argument("remove_spines: adjacent triangles form a convex quadrilateral");
    }
    for (std::size_t f = 0; f < walks.size(); ++f) {
        if (face_use[f] > 1) throw std::invalid_argument("remove_spines: two spines share a face");
    }
    return triangulation.with_edges_removed(spines);
}

}  // namespace dartflip
