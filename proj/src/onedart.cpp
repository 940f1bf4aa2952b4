#include "dartflip/onedart.hpp"

#include <algorithm>
#include <map>

#include "dartflip/flipgraph.hpp"

namespace dartflip {

namespace {

std::string validation_summary(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

void validate_or_throw(const KDPT& t, int k, const char* where) {
    auto bad = validate_kdpt(t, k);
    if (!bad.empty())
        throw StageFailure(std::string(where) + ": invalid intermediate state: " +
                           validation_summary(bad));
}

/// Flip `removed` and require the exchanged-in edge to be `inserted`.
KDPT flip_expect(const KDPT& t, const Edge& removed, const Edge& inserted,
                 std::vector<Flip>* log) {
    auto res = flip(t, removed);
    if (!res)
        throw StageFailure("flip of " + std::to_string(removed.a) + "-" +
                           std::to_string(removed.b) + " is not possible");
    if (!res->has_edge(inserted) || res->has_edge(removed))
        throw StageFailure("flip of " + std::to_string(removed.a) + "-" +
                           std::to_string(removed.b) + " did not insert " +
                           std::to_string(inserted.a) + "-" + std::to_string(inserted.b));
    if (log) log->push_back(Flip{removed, inserted});
    return *res;
}

DartInfo single_dart(const KDPT& t) {
    for (const Face& f : faces(t))
        if (f.is_dart()) return f.dart();
    throw std::invalid_argument("expected a k-DPT with at least one dart");
}

std::vector<Edge> dart_edges_with_spine(const DartInfo& d) {
    return {Edge(d.tip, d.wing1), Edge(d.tip, d.wing2), Edge(d.tail, d.wing1),
            Edge(d.tail, d.wing2), Edge(d.tip, d.tail)};
}

}  // namespace

KDPT replay_path(const KDPT& start, const FlipPath& path, int k) {
    if (canonical_key(start) != path.start_key)
        throw std::invalid_argument("replay_path: start key mismatch");
    KDPT cur = start;
    validate_or_throw(cur, k, "replay_path");
    for (const Flip& f : path.flips) {
        cur = apply_flip(cur, f);
        validate_or_throw(cur, k, "replay_path");
    }
    if (canonical_key(cur) != path.end_key)
        throw std::logic_error("replay_path: end key mismatch");
    return cur;
}

int perturbed_incircle(const PointSet& ps, int a, int b, int c, int d) {
    if (cross2(ps.at(a), ps.at(b), ps.at(c)) < 0) std::swap(b, c);
    int s = incircle(ps.at(a), ps.at(b), ps.at(c), ps.at(d));
    if (s != 0) return s;
    // Cocircular: lift the smallest vertex index infinitesimally higher.
    // The derivative of the incircle determinant with respect to each
    // vertex's lift is an orientation of the remaining three.
    struct Entry {
        int idx;
        std::int64_t deriv;
    };
    std::array<Entry, 4> entries{{{a, cross2(ps.at(d), ps.at(b), ps.at(c))},
                                  {b, cross2(ps.at(d), ps.at(c), ps.at(a))},
                                  {c, cross2(ps.at(d), ps.at(a), ps.at(b))},
                                  {d, -cross2(ps.at(a), ps.at(b), ps.at(c))}}};
    std::sort(entries.begin(), entries.end(),
              [](const Entry& l, const Entry& r) { return l.idx < r.idx; });
    for (const Entry& e : entries)
        if (e.deriv != 0) return e.deriv > 0 ? 1 : -1;
    throw std::logic_error("perturbed_incircle: degenerate quadruple");
}

std::vector<Flip> delaunay_flips(KDPT& t, const std::set<Edge>& fixed) {
    const PointSet& ps = t.ps();
    std::vector<Flip> out;
    for (;;) {
        std::map<Edge, std::vector<int>> opposite;
        std::set<Edge> blocked;  // edges on a non-triangle face
        for (const auto& w : face_walks(t)) {
            if (w.size() == 3) {
                for (std::size_t i = 0; i < 3; ++i)
                    opposite[Edge(w[i], w[(i + 1) % 3])].push_back(w[(i + 2) % 3]);
            } else {
                for (std::size_t i = 0; i < w.size(); ++i)
                    blocked.insert(Edge(w[i], w[(i + 1) % w.size()]));
            }
        }
        bool flipped = false;
        for (const auto& [e, opp] : opposite) {
            if (opp.size() != 2 || fixed.count(e) || blocked.count(e)) continue;
            if (!segments_properly_intersect(ps.at(opp[0]), ps.at(opp[1]), ps.at(e.a),
                                             ps.at(e.b)))
                continue;
            if (perturbed_incircle(ps, e.a, e.b, opp[0], opp[1]) <= 0) continue;
            t = flip_expect(t, e, Edge(opp[0], opp[1]), nullptr);
            out.push_back(Flip{e, Edge(opp[0], opp[1])});
            flipped = true;
            break;  // smallest offending edge first, then re-scan
        }
        if (!flipped) return out;
    }
}

FlipPath constrained_flip_path(const KDPT& from, const KDPT& to,
                               const std::vector<Edge>& constrained) {
    if (from.ps().points() != to.ps().points())
        throw std::invalid_argument("constrained_flip_path: point sets differ");
    const PointSet& ps = from.ps();
    for (std::size_t i = 0; i < constrained.size(); ++i)
        for (std::size_t j = i + 1; j < constrained.size(); ++j)
            if (segments_properly_intersect(
                    ps.at(constrained[i].a), ps.at(constrained[i].b),
                    ps.at(constrained[j].a), ps.at(constrained[j].b)))
                throw std::invalid_argument("constrained_flip_path: crossing constraints");
    for (const Edge& e : constrained)
        if (!from.has_edge(e) || !to.has_edge(e))
            throw std::invalid_argument(
                "constrained_flip_path: constraint missing from an endpoint");

    std::set<Edge> fixed(constrained.begin(), constrained.end());
    KDPT a = from;
    std::vector<Flip> leg_a = delaunay_flips(a, fixed);
    KDPT b = to;
    std::vector<Flip> leg_b = delaunay_flips(b, fixed);
    if (canonical_key(a) != canonical_key(b))
        throw StageFailure("constrained_flip_path: legs did not meet");

    FlipPath path;
    path.start_key = canonical_key(from);
    path.end_key = canonical_key(to);
    path.flips = std::move(leg_a);
    for (auto it = leg_b.rbegin(); it != leg_b.rend(); ++it)
        path.flips.push_back(it->reversed());
    return path;
}

std::vector<Edge> complete_triangulation(const PointSet& ps, std::vector<Edge> base) {
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    auto blocked = [&](const Edge& e, const std::vector<Edge>& present) {
        for (int v = 0; v < ps.n(); ++v)
            if (v != e.a && v != e.b &&
                segment_strictly_contains_point(ps.at(e.a), ps.at(e.b), ps.at(v)))
                return true;
        for (const Edge& f : present) {
            if (f == e) continue;
            if (segments_properly_intersect(ps.at(e.a), ps.at(e.b), ps.at(f.a), ps.at(f.b)))
                return true;
        }
        return false;
    };
    for (const Edge& e : base)
        if (blocked(e, base))
            throw std::invalid_argument("complete_triangulation: base edges conflict");
    std::vector<Edge> edges = base;
    for (const Edge& e : hull_edges(ps))
        if (!std::binary_search(base.begin(), base.end(), e) && !blocked(e, edges))
            edges.push_back(e);
    for (int i = 0; i < ps.n(); ++i) {
        for (int j = i + 1; j < ps.n(); ++j) {
            Edge e(i, j);
            if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
            if (!blocked(e, edges)) edges.push_back(e);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

bool dart_in_dart_triangle(const KDPT& t) {
    DartInfo d = single_dart(t);
    if (!t.has_edge(Edge(d.wing1, d.wing2))) return false;
    const PointSet& ps = t.ps();
    for (int v = 0; v < ps.n(); ++v) {
        if (v == d.tip || v == d.tail || v == d.wing1 || v == d.wing2) continue;
        if (in_triangle(ps.at(v), ps.at(d.tip), ps.at(d.wing1), ps.at(d.wing2)) ==
            TrianglePosition::StrictlyInside)
            return false;
    }
    return true;
}

namespace {

// Coordinates in the frame where the spine (tail -> tip) points straight
// up: x is the signed cross with the spine direction, y the dot product.
struct SpineFrame {
    const PointSet& ps;
    Point tail, tip;

    std::int64_t x(int v) const {
        const Point& p = ps.at(v);
        return (p.x - tail.x) * (tip.y - tail.y) - (p.y - tail.y) * (tip.x - tail.x);
    }
    std::int64_t y(int v) const {
        const Point& p = ps.at(v);
        return (p.x - tail.x) * (tip.x - tail.x) + (p.y - tail.y) * (tip.y - tail.y);
    }
};

std::vector<int> upper_envelope(const SpineFrame& fr, std::vector<int> pts) {
    std::sort(pts.begin(), pts.end(), [&](int l, int r) {
        return std::make_pair(fr.x(l), fr.y(l)) < std::make_pair(fr.x(r), fr.y(r));
    });
    std::vector<int> env;
    for (int v : pts) {
        while (env.size() >= 2) {
            int p = env[env.size() - 2], q = env.back();
            __int128 turn = static_cast<__int128>(fr.x(q) - fr.x(p)) * (fr.y(v) - fr.y(p)) -
                            static_cast<__int128>(fr.y(q) - fr.y(p)) * (fr.x(v) - fr.x(p));
            if (turn >= 0)
                env.pop_back();  // keep only clockwise turns
            else
                break;
        }
        env.push_back(v);
    }
    return env;
}

}  // namespace

FlipPath dart_triangle_path(const KDPT& t) {
    validate_or_throw(t, 1, "dart_triangle_path");
    const PointSet& ps = t.ps();
    DartInfo d0 = single_dart(t);
    KDPT x = t;
    std::vector<Flip> log;

    if (!x.has_edge(Edge(d0.wing1, d0.wing2))) {
        std::vector<Edge> constrained = dart_edges_with_spine(d0);
        KDPT with_spine = add_spines(x).triangulation;
        std::vector<Edge> base = constrained;
        base.push_back(Edge(d0.wing1, d0.wing2));
        KDPT target(x.ps_ptr(), complete_triangulation(ps, base));
        FlipPath leg = constrained_flip_path(with_spine, target, constrained);
        for (const Flip& f : leg.flips) {
            x = flip_expect(x, f.removed, f.inserted, &log);
            validate_or_throw(x, 1, "dart_triangle_path/wing-connect");
        }
    }

    for (;;) {
        DartInfo d = single_dart(x);
        if (d.tip != d0.tip || d.tail != d0.tail)
            throw StageFailure("dart_triangle_path: tip or tail moved");
        if (!x.has_edge(Edge(d.wing1, d.wing2)))
            throw StageFailure("dart_triangle_path: wings disconnected");

        std::vector<int> inner;
        for (int v = 0; v < ps.n(); ++v) {
            if (v == d.tip || v == d.tail || v == d.wing1 || v == d.wing2) continue;
            if (in_triangle(ps.at(v), ps.at(d.tip), ps.at(d.wing1), ps.at(d.wing2)) ==
                TrianglePosition::StrictlyInside)
                inner.push_back(v);
        }
        if (inner.empty()) break;

        SpineFrame fr{ps, ps.at(d.tail), ps.at(d.tip)};
        int wing_l = fr.x(d.wing1) < 0 ? d.wing1 : d.wing2;
        int wing_r = wing_l == d.wing1 ? d.wing2 : d.wing1;
        if (fr.x(wing_l) >= 0 || fr.x(wing_r) <= 0)
            throw StageFailure("dart_triangle_path: wings do not straddle the spine");

        std::vector<int> pocket = inner;
        pocket.push_back(wing_l);
        pocket.push_back(wing_r);
        std::vector<int> env = upper_envelope(fr, pocket);
        if (env.front() != wing_l || env.back() != wing_r)
            throw StageFailure("dart_triangle_path: envelope does not end at the wings");

        // Flip to the envelope triangulation: every envelope vertex is a
        // neighbor of the tail and consecutive envelope vertices are
        // connected.
        std::vector<Edge> constrained = dart_edges_with_spine(d);
        constrained.push_back(Edge(wing_l, wing_r));
        std::vector<Edge> base = constrained;
        for (std::size_t i = 0; i < env.size(); ++i) {
            base.emplace_back(d.tail, env[i]);
            if (i + 1 < env.size()) base.emplace_back(env[i], env[i + 1]);
        }
        KDPT with_spine = add_spines(x).triangulation;
        KDPT target(x.ps_ptr(), complete_triangulation(ps, base));
        FlipPath leg = constrained_flip_path(with_spine, target, constrained);
        for (const Flip& f : leg.flips) {
            x = flip_expect(x, f.removed, f.inserted, &log);
            validate_or_throw(x, 1, "dart_triangle_path/envelope");
        }

        // Walk each wing along the envelope toward the spine extension,
        // one envelope vertex at a time.
        std::size_t pos_l = 0;
        while (pos_l + 1 < env.size() && fr.x(env[pos_l + 1]) < 0) ++pos_l;
        std::size_t pos_r = env.size() - 1;
        while (pos_r > 0 && fr.x(env[pos_r - 1]) > 0) --pos_r;
        if (pos_r != pos_l + 1)
            throw StageFailure("dart_triangle_path: envelope vertex on the spine line");
        for (std::size_t i = 0; i < pos_l; ++i) {
            x = flip_expect(x, Edge(env[i], d.tail), Edge(d.tip, env[i + 1]), &log);
            validate_or_throw(x, 1, "dart_triangle_path/wing-move");
        }
        for (std::size_t i = env.size() - 1; i > pos_r; --i) {
            x = flip_expect(x, Edge(env[i], d.tail), Edge(d.tip, env[i - 1]), &log);
            validate_or_throw(x, 1, "dart_triangle_path/wing-move");
        }
    }

    if (!dart_in_dart_triangle(x))
        throw StageFailure("dart_triangle_path: final state lacks a dart triangle");
    FlipPath path;
    path.start_key = canonical_key(t);
    path.end_key = canonical_key(x);
    path.flips = std::move(log);
    return path;
}

FlipPath special_face_flip(const KDPT& t, const std::array<int, 4>& quad, const Edge& diag) {
    const int qs = quad[0], qt = quad[1], qu = quad[2], qv = quad[3];
    if (diag != Edge(qs, qu))
        throw std::invalid_argument("special_face_flip: diagonal must join quad[0], quad[2]");
    FlipPath path;
    path.start_key = canonical_key(t);
    if (t.has_edge(Edge(qt, qv))) {
        path.end_key = path.start_key;
        return path;
    }
    if (!t.has_edge(diag)) throw std::invalid_argument("special_face_flip: diagonal absent");

    DartInfo d = single_dart(t);
    std::set<int> corners{d.tip, d.wing1, d.wing2};
    if (!corners.count(qs) || !corners.count(qu))
        throw std::invalid_argument("special_face_flip: dart triangle not on the diagonal");
    int c = -1;
    for (int v : corners)
        if (v != qs && v != qu) c = v;
    if (c != qt && c != qv)
        throw std::invalid_argument("special_face_flip: dart triangle outside the quad");
    const int o = c == qt ? qv : qt;
    const int pd = d.tail;

    KDPT x = t;
    if (d.tip != c) x = flip_expect(x, Edge(pd, c), Edge(pd, d.tip), &path.flips);
    validate_or_throw(x, 1, "special_face_flip/rotate");
    x = flip_expect(x, diag, Edge(pd, o), &path.flips);
    validate_or_throw(x, 1, "special_face_flip/open");
    const PointSet& ps = t.ps();
    const bool crosses_s =
        segments_properly_intersect(ps.at(pd), ps.at(qs), ps.at(qt), ps.at(qv));
    const bool crosses_u =
        segments_properly_intersect(ps.at(pd), ps.at(qu), ps.at(qt), ps.at(qv));
    if (crosses_s == crosses_u)
        throw StageFailure("special_face_flip: opposite diagonal misses the wing edges");
    x = flip_expect(x, Edge(pd, crosses_s ? qs : qu), Edge(qt, qv), &path.flips);
    validate_or_throw(x, 1, "special_face_flip/close");
    if (!dart_in_dart_triangle(x))
        throw StageFailure("special_face_flip: dart left its dart triangle");
    path.end_key = canonical_key(x);
    return path;
}

namespace {

FlipPath same_tail_fallback(const KDPT& t1, const KDPT& t2, int cap) {
    FlipGraph fg = build_flip_graph(t1.ps_ptr(), 1, cap);
    int from = fg.node_index(canonical_key(t1));
    int to = fg.node_index(canonical_key(t2));
    if (from < 0 || to < 0)
        throw std::logic_error("same_tail_path: state missing from enumeration");
    FlipPath path;
    path.start_key = canonical_key(t1);
    path.end_key = canonical_key(t2);
    path.flips = shortest_flip_path(fg, from, to);
    path.fallback = true;
    return path;
}

FlipPath same_tail_staged(const KDPT& t1, const KDPT& t2) {
    const PointSet& ps = t1.ps();
    const int pd = single_dart(t1).tail;

    FlipPath pre = dart_triangle_path(t1);
    FlipPath post = dart_triangle_path(t2);
    KDPT u1 = replay_path(t1, pre, 1);
    KDPT u2 = replay_path(t2, post, 1);

    // Triangulations of the point set without the tail.
    std::vector<Point> sub_points;
    std::vector<int> to_full;
    std::vector<int> to_sub(static_cast<std::size_t>(ps.n()), -1);
    for (int v = 0; v < ps.n(); ++v) {
        if (v == pd) continue;
        to_sub[static_cast<std::size_t>(v)] = static_cast<int>(sub_points.size());
        to_full.push_back(v);
        sub_points.push_back(ps.at(v));
    }
    auto sub_ps = std::make_shared<PointSet>(PointSet::make(sub_points));
    auto strip = [&](const KDPT& t) {
        std::vector<Edge> edges;
        for (const Edge& e : t.edges()) {
            if (e.a == pd || e.b == pd) continue;
            edges.emplace_back(to_sub[static_cast<std::size_t>(e.a)],
                               to_sub[static_cast<std::size_t>(e.b)]);
        }
        return KDPT(sub_ps, std::move(edges));
    };
    KDPT s1 = strip(u1);
    KDPT s2 = strip(u2);
    validate_or_throw(s1, 0, "same_tail_path/strip");
    validate_or_throw(s2, 0, "same_tail_path/strip");
    FlipPath mid = constrained_flip_path(s1, s2, hull_edges(*sub_ps));

    KDPT x = u1;
    KDPT s = s1;
    std::vector<Flip> log = pre.flips;
    for (const Flip& f : mid.flips) {
        // Locate the two triangles of s adjacent to the flipped edge.
        std::set<int> fs;  // special face: the dart triangle of x, sub indices
        {
            DartInfo d = single_dart(x);
            fs = {to_sub[static_cast<std::size_t>(d.tip)],
                  to_sub[static_cast<std::size_t>(d.wing1)],
                  to_sub[static_cast<std::size_t>(d.wing2)]};
        }
        bool touches_special = false;
        int opposite_c = -1, opposite_o = -1;
        for (const auto& w : face_walks(s)) {
            if (w.size() != 3) throw StageFailure("same_tail_path: non-triangular face");
            for (std::size_t i = 0; i < 3; ++i) {
                if (Edge(w[i], w[(i + 1) % 3]) != f.removed) continue;
                int opp = w[(i + 2) % 3];
                if (std::set<int>(w.begin(), w.end()) == fs) {
                    touches_special = true;
                    opposite_c = opp;
                } else {
                    opposite_o = opp;
                }
            }
        }
        if (opposite_o < 0 && !touches_special)
            throw StageFailure("same_tail_path: flipped edge not found");
        if (!touches_special) {
            Edge removed(to_full[static_cast<std::size_t>(f.removed.a)],
                         to_full[static_cast<std::size_t>(f.removed.b)]);
            Edge inserted(to_full[static_cast<std::size_t>(f.inserted.a)],
                          to_full[static_cast<std::size_t>(f.inserted.b)]);
            x = flip_expect(x, removed, inserted, &log);
        } else {
            std::array<int, 4> quad{to_full[static_cast<std::size_t>(f.removed.a)],
                                    to_full[static_cast<std::size_t>(opposite_c)],
                                    to_full[static_cast<std::size_t>(f.removed.b)],
                                    to_full[static_cast<std::size_t>(opposite_o)]};
            Edge diag(quad[0], quad[2]);
            FlipPath gadget = special_face_flip(x, quad, diag);
            x = replay_path(x, gadget, 1);
            log.insert(log.end(), gadget.flips.begin(), gadget.flips.end());
        }
        validate_or_throw(x, 1, "same_tail_path/replay");
        s = apply_flip(s, f);
    }

    // Align the dart orientation inside the final dart triangle.
    DartInfo dx = single_dart(x);
    DartInfo d2 = single_dart(u2);
    if (std::set<int>{dx.tip, dx.wing1, dx.wing2} !=
        std::set<int>{d2.tip, d2.wing1, d2.wing2})
        throw StageFailure("same_tail_path: dart landed in the wrong face");
    if (dx.tip != d2.tip) {
        x = flip_expect(x, Edge(pd, d2.tip), Edge(pd, dx.tip), &log);
        validate_or_throw(x, 1, "same_tail_path/rotate");
    }
    if (canonical_key(x) != canonical_key(u2))
        throw StageFailure("same_tail_path: replay missed the target");

    for (auto it = post.flips.rbegin(); it != post.flips.rend(); ++it)
        log.push_back(it->reversed());
    FlipPath path;
    path.start_key = canonical_key(t1);
    path.end_key = canonical_key(t2);
    path.flips = std::move(log);
    return path;
}

}  // namespace

FlipPath same_tail_path(const KDPT& t1, const KDPT& t2, int cap) {
    validate_or_throw(t1, 1, "same_tail_path");
    validate_or_throw(t2, 1, "same_tail_path");
    if (t1.ps().points() != t2.ps().points())
        throw std::invalid_argument("same_tail_path: point sets differ");
    if (single_dart(t1).tail != single_dart(t2).tail)
        throw std::invalid_argument("same_tail_path: tails differ");
    if (canonical_key(t1) == canonical_key(t2)) {
        FlipPath path;
        path.start_key = path.end_key = canonical_key(t1);
        return path;
    }
    try {
        FlipPath path = same_tail_staged(t1, t2);
        replay_path(t1, path, 1);
        return path;
    } catch (const StageFailure&) {
        return same_tail_fallback(t1, t2, cap);
    }
}

bool quintuple_swap_test(const PointSet& ps, int p, int q, int s, int t, int u) {
    std::array<int, 5> idx{p, q, s, t, u};
    for (int v : idx)
        if (v < 0 || v >= ps.n()) throw std::invalid_argument("quintuple: index out of range");
    std::set<int> uniq(idx.begin(), idx.end());
    if (uniq.size() != 5) throw std::invalid_argument("quintuple: indices not distinct");

    for (int v : {p, q})
        if (in_triangle(ps.at(v), ps.at(s), ps.at(t), ps.at(u)) !=
            TrianglePosition::StrictlyInside)
            return false;

    auto sub = std::make_shared<PointSet>(
        PointSet::make({ps.at(p), ps.at(q), ps.at(s), ps.at(t), ps.at(u)}));
    if (sub->h() != 3) return false;

    std::vector<Point> others;
    for (int v = 0; v < ps.n(); ++v)
        if (!uniq.count(v)) others.push_back(ps.at(v));
    // A face of the five-point configuration survives in the full set only
    // when no other point lands inside it.
    auto face_empty = [&](const Face& f) {
        for (const Point& w : others) {
            if (f.is_dart()) {
                const DartInfo& d = f.dart();
                if (in_triangle(w, sub->at(d.tip), sub->at(d.wing1), sub->at(d.tail)) ==
                        TrianglePosition::StrictlyInside ||
                    in_triangle(w, sub->at(d.tip), sub->at(d.tail), sub->at(d.wing2)) ==
                        TrianglePosition::StrictlyInside)
                    return false;
            } else if (in_triangle(w, sub->at(f.walk[0]), sub->at(f.walk[1]),
                                   sub->at(f.walk[2])) == TrianglePosition::StrictlyInside) {
                return false;
            }
        }
        return true;
    };

    FlipGraph fg = build_flip_graph(sub, 1);
    auto tail_of = [&](const KDPT& node) { return single_dart(node).tail; };
    for (std::size_t i = 0; i < fg.nodes.size(); ++i) {
        int ti = tail_of(fg.nodes[i]);
        for (int j : fg.adjacency[i]) {
            const KDPT& nj = fg.nodes[static_cast<std::size_t>(j)];
            if (tail_of(nj) == ti) continue;
            // the flip swapping the tails merges the two faces bounded by
            // the removed edge; both must be empty of outside points for
            // the swap to exist in the full set
            Edge removed;
            for (const Edge& e : fg.nodes[i].edges())
                if (!nj.has_edge(e)) removed = e;
            bool ok = true;
            for (const Face& f : faces(fg.nodes[i])) {
                bool bounded = false;
                for (std::size_t m = 0; m < f.walk.size(); ++m)
                    if (Edge(f.walk[m], f.walk[(m + 1) % f.walk.size()]) == removed)
                        bounded = true;
                if (bounded && !face_empty(f)) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
    }
    return false;
}

int tail_swap_configurations(const PointSet& ps) {
    if (ps.n() != 5 || ps.h() != 3)
        throw std::invalid_argument(
            "tail_swap_configurations: need 5 points with a triangular hull");
    FlipGraph fg = build_flip_graph(std::make_shared<PointSet>(ps), 1);
    auto dart_key = [&](const KDPT& t) {
        DartInfo d = single_dart(t);
        return std::array<int, 4>{d.tip, d.tail, std::min(d.wing1, d.wing2),
                                  std::max(d.wing1, d.wing2)};
    };
    std::set<std::array<std::array<int, 4>, 2>> pairs;
    for (std::size_t i = 0; i < fg.nodes.size(); ++i) {
        auto ki = dart_key(fg.nodes[i]);
        for (int j : fg.adjacency[i]) {
            if (j <= static_cast<int>(i)) continue;
            auto kj = dart_key(fg.nodes[static_cast<std::size_t>(j)]);
            if (ki[1] == kj[1]) continue;
            pairs.insert({std::min(ki, kj), std::max(ki, kj)});
        }
    }
    return static_cast<int>(pairs.size());
}

TailGraph tail_graph(const PointSet& ps) {
    if (ps.n() < 5) throw std::invalid_argument("tail_graph: need at least 5 points");
    TailGraph g;
    g.nodes = ps.interior_indices();
    for (std::size_t pi = 0; pi < g.nodes.size(); ++pi) {
        for (std::size_t qi = pi + 1; qi < g.nodes.size(); ++qi) {
            const int p = g.nodes[pi], q = g.nodes[qi];
            std::vector<int> rest;
            for (int v = 0; v < ps.n(); ++v)
                if (v != p && v != q) rest.push_back(v);
            bool joined = false;
            const std::size_t m = rest.size();
            for (std::size_t i = 0; i < m && !joined; ++i)
                for (std::size_t j = i + 1; j < m && !joined; ++j)
                    for (std::size_t l = j + 1; l < m && !joined; ++l)
                        joined = quintuple_swap_test(ps, p, q, rest[i], rest[j], rest[l]);
            if (joined) g.edges.emplace_back(p, q);
        }
    }
    return g;
}

std::vector<std::vector<int>> predicted_components_1dpt(const PointSet& ps) {
    std::vector<int> interior = ps.interior_indices();
    if (interior.empty())
        throw std::invalid_argument("predicted_components_1dpt: no interior points");
    std::map<int, int> pos;
    for (std::size_t i = 0; i < interior.size(); ++i) pos[interior[i]] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(interior.size()));
    if (ps.n() >= 5)
        for (const auto& [p, q] : tail_graph(ps).edges) uf.unite(pos.at(p), pos.at(q));
    std::map<int, std::vector<int>> parts;
    for (int v : interior) parts[uf.find(pos.at(v))].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : parts) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dartflip
