#include "dartflip/enumerate.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <set>

namespace dartflip {

std::vector<std::string> EnumerationResult::keys() const {
    std::vector<std::string> out;
    out.reserve(items.size());
    for (const KDPT& t : items) out.push_back(canonical_key(t));
    return out;
}

KDPT initial_triangulation(std::shared_ptr<const PointSet> ps) {
    const PointSet& p = *ps;
    std::vector<std::array<int, 3>> tris;
    const auto& hull = p.hull();
    for (std::size_t i = 1; i + 1 < hull.size(); ++i)
        tris.push_back({hull[0], hull[i], hull[i + 1]});

    for (int v : p.interior_indices()) {
        bool placed = false;
        for (std::size_t ti = 0; ti < tris.size(); ++ti) {
            auto [a, b, c] = tris[ti];
            if (in_triangle(p.at(v), p.at(a), p.at(b), p.at(c)) ==
                TrianglePosition::StrictlyInside) {
                tris[ti] = {a, b, v};
                tris.push_back({b, c, v});
                tris.push_back({c, a, v});
                placed = true;
                break;
            }
        }
        if (!placed) throw std::logic_error("initial_triangulation: point in no triangle");
    }
    std::vector<Edge> edges;
    for (const auto& t : tris) {
        edges.emplace_back(t[0], t[1]);
        edges.emplace_back(t[1], t[2]);
        edges.emplace_back(t[2], t[0]);
    }
    return KDPT(std::move(ps), std::move(edges));
}

namespace {

struct TriangleMesh {
    // edge -> opposite vertices of its (up to two) adjacent triangles
    std::map<Edge, std::vector<int>> opposite;

    explicit TriangleMesh(const KDPT& t) {
        for (const auto& w : face_walks(t)) {
            for (std::size_t i = 0; i < 3; ++i)
                opposite[Edge(w[i], w[(i + 1) % 3])].push_back(w[(i + 2) % 3]);
        }
    }
};

// Convex-quadrilateral diagonal exchanges of a triangulation (the only
// flips that exist at k = 0).
std::vector<Flip> lawson_flips(const KDPT& t) {
    TriangleMesh mesh(t);
    std::vector<Flip> out;
    const PointSet& ps = t.ps();
    for (const auto& [e, opp] : mesh.opposite) {
        if (opp.size() != 2) continue;
        // convex iff the opposite diagonal crosses e
        if (segments_properly_intersect(ps.at(opp[0]), ps.at(opp[1]), ps.at(e.a), ps.at(e.b)))
            out.push_back(Flip{e, Edge(opp[0], opp[1])});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

EnumerationResult all_triangulations(std::shared_ptr<const PointSet> ps, int cap) {
    if (ps->n() > cap) throw CapExceeded("all_triangulations: point set exceeds enumeration cap");
    KDPT start = initial_triangulation(ps);
    std::map<std::string, KDPT> seen;
    std::deque<KDPT> frontier{start};
    seen.emplace(canonical_key(start), start);
    while (!frontier.empty()) {
        KDPT cur = std::move(frontier.front());
        frontier.pop_front();
        for (const Flip& f : lawson_flips(cur)) {
            KDPT next = cur.with_edge_exchanged(f.removed, f.inserted);
            std::string key = canonical_key(next);
            if (seen.emplace(key, next).second) frontier.push_back(std::move(next));
        }
    }
    EnumerationResult res;
    for (auto& [key, t] : seen) res.items.push_back(std::move(t));
    return res;
}

EnumerationResult all_kdpts(std::shared_ptr<const PointSet> ps, int k, int cap) {
    if (k < 0 || k > ps->n() - ps->h())
        throw std::invalid_argument("all_kdpts: k out of range [0, n-h]");
    EnumerationResult tris = all_triangulations(ps, cap);
    if (k == 0) return tris;

    struct Emitted {
        KDPT kdpt;
        std::vector<int> tails;
    };
    std::map<std::string, Emitted> seen;
    for (const KDPT& t : tris.items) {
        TriangleMesh mesh(t);
        const PointSet& p = t.ps();
        // spine-eligible edges: interior, adjacent triangles form a
        // non-convex quadrilateral (the reflex endpoint becomes the tail)
        struct Eligible {
            Edge e;
            int tail;
            std::set<int> faces;  // adjacent face ids, as sorted triangle keys
        };
        std::vector<Eligible> eligible;
        {
            std::map<std::set<int>, int> ids;
            for (const auto& w : face_walks(t)) {
                int next = static_cast<int>(ids.size());
                ids.emplace(std::set<int>(w.begin(), w.end()), next);
            }
            for (const auto& [e, opp] : mesh.opposite) {
                if (opp.size() != 2) continue;
                if (segments_properly_intersect(p.at(opp[0]), p.at(opp[1]), p.at(e.a), p.at(e.b)))
                    continue;  // convex union: not a dart
                const bool a_reflex = in_triangle(p.at(e.a), p.at(opp[0]), p.at(e.b),
                                                  p.at(opp[1])) == TrianglePosition::StrictlyInside;
                eligible.push_back(Eligible{
                    e, a_reflex ? e.a : e.b,
                    {ids.at({e.a, e.b, opp[0]}), ids.at({e.a, e.b, opp[1]})}});
            }
        }
        std::sort(eligible.begin(), eligible.end(),
                  [](const Eligible& l, const Eligible& r) { return l.e < r.e; });
        const int m = static_cast<int>(eligible.size());
        if (m < k) continue;

        std::vector<int> chosen;
        auto face_disjoint = [&](int i) {
            for (int c : chosen)
                for (int f : eligible[static_cast<std::size_t>(c)].faces)
                    if (eligible[static_cast<std::size_t>(i)].faces.count(f)) return false;
            return true;
        };
        std::function<void(int)> rec = [&](int from) {
            if (static_cast<int>(chosen.size()) == k) {
                std::vector<Edge> spines;
                std::vector<int> tails;
                for (int c : chosen) {
                    spines.push_back(eligible[static_cast<std::size_t>(c)].e);
                    tails.push_back(eligible[static_cast<std::size_t>(c)].tail);
                }
                KDPT d = t.with_edges_removed(spines);
                std::string key = canonical_key(d);
                seen.emplace(std::move(key), Emitted{std::move(d), std::move(tails)});
                return;
            }
            for (int i = from; i < m; ++i) {
                if (!face_disjoint(i)) continue;
                chosen.push_back(i);
                rec(i + 1);
                chosen.pop_back();
            }
        };
        rec(0);
    }

    EnumerationResult res;
    for (auto& [key, em] : seen) {
        for (int tail : em.tails) res.by_tail[tail] += 1;
        res.items.push_back(std::move(em.kdpt));
    }
    return res;
}

}  // namespace dartflip
