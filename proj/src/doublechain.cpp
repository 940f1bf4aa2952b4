#include "dartflip/doublechain.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

#include "dartflip/flipgraph.hpp"

namespace dartflip {

namespace {

std::string fmt_edge(const Edge& e) {
    return std::to_string(e.a) + "-" + std::to_string(e.b);
}

}  // namespace

DoubleChain generate(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("generate: negative chain size");
    const std::int64_t c = 2;
    const std::int64_t width = 10LL * (a + 1) * (b + 1);
    std::int64_t h = std::max<std::int64_t>(
        2 * c * std::max<std::int64_t>(1LL * a * (a + 1), 1LL * b * (b + 1)), 10);
    if (width > kCoordBound)
        throw std::invalid_argument("generate: chain sizes exceed the coordinate bound");
    for (int attempt = 0; attempt < 64; ++attempt, ++h) {
        if (h > kCoordBound)
            throw std::invalid_argument("generate: chain sizes exceed the coordinate bound");
        std::vector<Point> pts;
        for (std::int64_t i = 0; i <= a + 1; ++i)
            pts.push_back({10LL * (b + 1) * i, h - c * i * (a + 1 - i)});
        for (std::int64_t j = 0; j <= b + 1; ++j)
            pts.push_back({10LL * (a + 1) * j, c * j * (b + 1 - j)});
        std::shared_ptr<const PointSet> ps;
        try {
            ps = std::make_shared<PointSet>(PointSet::make(pts));
        } catch (const std::invalid_argument&) {
            continue;  // collinear triple across chains; stretch and retry
        }
        DoubleChain dc;
        dc.ps = ps;
        for (int i = 0; i <= a + 1; ++i) dc.p1.push_back(i);
        for (int j = 0; j <= b + 1; ++j) dc.p2.push_back(a + 2 + j);
        if (!is_double_chain(*ps, dc.p1, dc.p2)) continue;
        return dc;
    }
    throw std::logic_error("generate: no valid height found");
}

std::vector<std::string> double_chain_violations(const PointSet& ps, const std::vector<int>& p1,
                                                 const std::vector<int>& p2) {
    std::vector<std::string> out;
    std::vector<int> all = p1;
    all.insert(all.end(), p2.begin(), p2.end());
    std::sort(all.begin(), all.end());
    bool partition = static_cast<int>(all.size()) == ps.n();
    for (int i = 0; partition && i < ps.n(); ++i) partition = all[static_cast<std::size_t>(i)] == i;
    if (!partition) {
        out.push_back("p1 and p2 do not partition the point set");
        return out;
    }
    if (p1.size() < 2 || p2.size() < 2) {
        out.push_back("each chain needs at least its two endpoints");
        return out;
    }

    for (const auto* chain : {&p1, &p2}) {
        const char* name = chain == &p1 ? "p1" : "p2";
        for (std::size_t i = 0; i + 1 < chain->size(); ++i)
            if (ps.at((*chain)[i]).x >= ps.at((*chain)[i + 1]).x)
                out.push_back(std::string(name) + " is not ordered by strictly increasing x");
    }

    std::set<int> corners{p1.front(), p1.back(), p2.front(), p2.back()};
    std::set<int> hull(ps.hull().begin(), ps.hull().end());
    if (hull != corners) out.push_back("hull is not exactly the four chain endpoints");

    // concavity: the upper chain turns left, the lower chain turns right
    for (std::size_t i = 0; i + 2 < p1.size(); ++i)
        if (orient(ps.at(p1[i]), ps.at(p1[i + 1]), ps.at(p1[i + 2])) != Orientation::CCW)
            out.push_back("p1 is not concave at " + std::to_string(p1[i + 1]));
    for (std::size_t i = 0; i + 2 < p2.size(); ++i)
        if (orient(ps.at(p2[i]), ps.at(p2[i + 1]), ps.at(p2[i + 2])) != Orientation::CW)
            out.push_back("p2 is not concave at " + std::to_string(p2[i + 1]));

    // the chains face each other: everything else is below p1's chord and
    // above p2's chord
    for (int v : p2)
        if (orient(ps.at(p1.front()), ps.at(p1.back()), ps.at(v)) != Orientation::CW)
            out.push_back("point " + std::to_string(v) + " is not below the p1 chord");
    for (int v : p1)
        if (orient(ps.at(p2.front()), ps.at(p2.back()), ps.at(v)) != Orientation::CCW)
            out.push_back("point " + std::to_string(v) + " is not above the p2 chord");

    // neither chain crosses a diagonal of the 4-gon: each chain stays
    // strictly on the same side as its endpoint off the diagonal
    for (const auto& diag : {std::pair{p1.front(), p2.back()}, std::pair{p1.back(), p2.front()}}) {
        const Point& da = ps.at(diag.first);
        const Point& db = ps.at(diag.second);
        for (const auto* chain : {&p1, &p2}) {
            int ref = chain->front() == diag.first || chain->front() == diag.second
                          ? chain->back()
                          : chain->front();
            Orientation want = orient(da, db, ps.at(ref));
            for (int v : *chain) {
                if (v == diag.first || v == diag.second) continue;
                if (orient(da, db, ps.at(v)) != want)
                    out.push_back("point " + std::to_string(v) + " crosses diagonal " +
                                  std::to_string(diag.first) + "-" + std::to_string(diag.second));
            }
        }
    }
    return out;
}

bool is_double_chain(const PointSet& ps, const std::vector<int>& p1, const std::vector<int>& p2) {
    return double_chain_violations(ps, p1, p2).empty();
}

namespace {

struct ChainIndex {
    std::vector<int> chain;  // per vertex: 1 or 2
    std::vector<int> pos;    // per vertex: position within its chain

    explicit ChainIndex(const DoubleChain& dc)
        : chain(static_cast<std::size_t>(dc.ps->n()), 0),
          pos(static_cast<std::size_t>(dc.ps->n()), -1) {
        for (std::size_t i = 0; i < dc.p1.size(); ++i) {
            chain[static_cast<std::size_t>(dc.p1[i])] = 1;
            pos[static_cast<std::size_t>(dc.p1[i])] = static_cast<int>(i);
        }
        for (std::size_t i = 0; i < dc.p2.size(); ++i) {
            chain[static_cast<std::size_t>(dc.p2[i])] = 2;
            pos[static_cast<std::size_t>(dc.p2[i])] = static_cast<int>(i);
        }
    }
};

}  // namespace

DartClass classify_dart_dc(const DoubleChain& dc, const DartInfo& dart) {
    ChainIndex ci(dc);
    int ct = ci.chain[static_cast<std::size_t>(dart.tail)];
    int cp = ci.chain[static_cast<std::size_t>(dart.tip)];
    if (ct == 0 || cp == 0) throw std::invalid_argument("classify_dart_dc: vertex not on a chain");
    if (ct != cp) return DartClass::Crossing;
    if (std::abs(ci.pos[static_cast<std::size_t>(dart.tail)] -
                 ci.pos[static_cast<std::size_t>(dart.tip)]) == 1)
        return DartClass::Aligned;
    throw std::logic_error("classify_dart_dc: dart is neither aligned nor crossing");
}

Designation designation(const DoubleChain& dc, const KDPT& t) {
    ChainIndex ci(dc);
    Designation d;
    for (const Face& f : faces(t)) {
        if (!f.is_dart()) continue;
        if (ci.chain[static_cast<std::size_t>(f.dart().tail)] == 1)
            ++d.k1;
        else
            ++d.k2;
    }
    return d;
}

namespace {

// --- deterministic triangulation of a simple CCW region ---------------------

bool fan_from(const PointSet& ps, const std::vector<int>& walk, std::size_t vi,
              std::vector<Edge>* out) {
    const std::size_t m = walk.size();
    const Point& v = ps.at(walk[vi]);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = (i + 1) % m;
        if (i == vi || j == vi) continue;
        if (cross2(v, ps.at(walk[i]), ps.at(walk[j])) <= 0) return false;
        for (std::size_t t = 0; t < m; ++t) {
            if (t == vi || t == i || t == j) continue;
            if (in_triangle(ps.at(walk[t]), v, ps.at(walk[i]), ps.at(walk[j])) !=
                TrianglePosition::Outside)
                return false;
        }
    }
    for (std::size_t t = 0; t < m; ++t) {
        if (t == vi || t == (vi + 1) % m || t == (vi + m - 1) % m) continue;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t j = (i + 1) % m;
            if (segments_properly_intersect(v, ps.at(walk[t]), ps.at(walk[i]), ps.at(walk[j])))
                return false;
        }
    }
    if (out)
        for (std::size_t t = 0; t < m; ++t) {
            if (t == vi || t == (vi + 1) % m || t == (vi + m - 1) % m) continue;
            out->emplace_back(walk[vi], walk[t]);
        }
    return true;
}

std::size_t lex_smallest(const PointSet& ps, const std::vector<int>& walk) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < walk.size(); ++i)
        if (ps.at(walk[i]) < ps.at(walk[best])) best = i;
    return best;
}

/// Chords that triangulate the CCW region `walk`: a fan from the
/// lexicographically smallest vertex when that vertex sees the whole
/// region, otherwise a deterministic ear/split recursion.
void triangulate_region(const PointSet& ps, const std::vector<int>& walk, std::vector<Edge>& out) {
    const std::size_t m = walk.size();
    if (m <= 3) return;
    std::size_t vi = lex_smallest(ps, walk);
    if (fan_from(ps, walk, vi, &out)) return;

    const std::size_t pi = (vi + m - 1) % m, ni = (vi + 1) % m;
    const Point& v = ps.at(walk[vi]);
    const Point& p = ps.at(walk[pi]);
    const Point& nx = ps.at(walk[ni]);
    std::size_t obstruction = m;
    std::int64_t depth = -1;
    for (std::size_t t = 0; t < m; ++t) {
        if (t == vi || t == pi || t == ni) continue;
        if (in_triangle(ps.at(walk[t]), p, v, nx) != TrianglePosition::StrictlyInside) continue;
        std::int64_t d = std::abs(cross2(p, nx, ps.at(walk[t])));
        if (d > depth || (d == depth && walk[t] < walk[obstruction])) {
            depth = d;
            obstruction = t;
        }
    }
    if (obstruction == m) {
        // clip the ear at the lexicographically smallest vertex
        out.emplace_back(walk[pi], walk[ni]);
        std::vector<int> rest;
        for (std::size_t t = 0; t < m; ++t)
            if (t != vi) rest.push_back(walk[t]);
        triangulate_region(ps, rest, out);
        return;
    }
    out.emplace_back(walk[vi], walk[obstruction]);
    std::vector<int> left, right;
    for (std::size_t t = vi;; t = (t + 1) % m) {
        left.push_back(walk[t]);
        if (t == obstruction) break;
    }
    for (std::size_t t = obstruction;; t = (t + 1) % m) {
        right.push_back(walk[t]);
        if (t == vi) break;
    }
    triangulate_region(ps, left, out);
    triangulate_region(ps, right, out);
}

/// The fan-rule region of a chain's pocket that remains after the first
/// kc half-darts, as a CCW walk.
std::vector<int> pocket_region(const DoubleChain& dc, int which, int kc) {
    const std::vector<int>& u = which == 1 ? dc.p1 : dc.p2;
    std::vector<int> walk(u.begin() + kc, u.end());
    if (which == 2) std::reverse(walk.begin(), walk.end());
    return walk;
}

std::vector<int> middle_region(const DoubleChain& dc, int k1, int k2) {
    std::vector<int> walk(dc.p2.begin() + k2, dc.p2.end());
    for (auto it = dc.p1.rbegin(); it != dc.p1.rend() - k1; ++it) walk.push_back(*it);
    return walk;
}

}  // namespace

KDPT canonical_kdpt(const DoubleChain& dc, const Designation& d) {
    const int a = dc.a(), b = dc.b();
    if (d.k1 < 0 || d.k2 < 0 || d.k1 > a || d.k2 > b)
        throw std::invalid_argument("canonical_kdpt: designation out of bounds");
    const std::vector<int>& u = dc.p1;
    const std::vector<int>& v = dc.p2;
    const int ustar = d.k1 > 0 ? u[static_cast<std::size_t>(d.k1)] : u[0];

    std::set<Edge> es;
    for (int i = d.k1; i <= a; ++i)
        es.emplace(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i + 1)]);
    for (int j = d.k2; j <= b; ++j)
        es.emplace(v[static_cast<std::size_t>(j)], v[static_cast<std::size_t>(j + 1)]);
    es.emplace(u.front(), u.back());
    es.emplace(v.front(), v.back());
    es.emplace(u.front(), v.front());
    es.emplace(u.back(), v.back());
    for (int t = 0; t <= d.k1; ++t) {
        es.emplace(u[static_cast<std::size_t>(t)], v.front());
        es.emplace(u[static_cast<std::size_t>(t)], u.back());
    }
    for (int t = 0; t <= d.k2; ++t) {
        es.emplace(v[static_cast<std::size_t>(t)], ustar);
        es.emplace(v[static_cast<std::size_t>(t)], v.back());
    }
    std::vector<Edge> chords;
    triangulate_region(*dc.ps, pocket_region(dc, 1, d.k1), chords);
    triangulate_region(*dc.ps, pocket_region(dc, 2, d.k2), chords);
    triangulate_region(*dc.ps, middle_region(dc, d.k1, d.k2), chords);
    es.insert(chords.begin(), chords.end());

    KDPT t(dc.ps, std::vector<Edge>(es.begin(), es.end()));
    auto bad = validate_kdpt(t, d.k());
    if (!bad.empty())
        throw std::logic_error("canonical_kdpt: construction invalid: " + bad.front());
    return t;
}

int component_count_formula(int a, int b, int k) {
    if (a < 0 || b < 0 || k < 0 || k > a + b)
        throw std::invalid_argument("component_count_formula: k out of range");
    return std::min(std::min(a, b), std::min(k, a + b - k)) + 1;
}

namespace {

// --- staged canonicalization ------------------------------------------------

struct StagedCanon {
    const DoubleChain& dc;
    const PointSet& ps;
    ChainIndex ci;
    int k;
    KDPT x;
    std::vector<Flip> log;
    int flip_budget;

    StagedCanon(const DoubleChain& d, const KDPT& t)
        : dc(d), ps(t.ps()), ci(d), k(dart_count(t)), x(t),
          flip_budget(200 * (t.ps().n() + 1) * (dart_count(t) + 1)) {}

    const std::vector<int>& chain(int c) const { return c == 1 ? dc.p1 : dc.p2; }
    int cpos(int vtx) const { return ci.pos[static_cast<std::size_t>(vtx)]; }
    int cchain(int vtx) const { return ci.chain[static_cast<std::size_t>(vtx)]; }

    std::map<int, int> tails_per_chain(const KDPT& t) const {
        std::map<int, int> out{{1, 0}, {2, 0}};
        for (const Face& f : faces(t))
            if (f.is_dart()) ++out[cchain(f.dart().tail)];
        return out;
    }

    std::string dump() const {
        std::string out = " [state:";
        for (const Edge& e : x.edges()) out += " " + fmt_edge(e);
        out += "]";
        return out;
    }

    /// Flip `removed`, requiring validity, an unchanged per-chain tail
    /// count, and pred on the new state.
    void checked(const Edge& removed, const std::function<bool(const KDPT&)>& pred,
                 const char* where) {
        if (--flip_budget < 0) throw StageFailure("canonicalize: flip budget exhausted");
        auto r = flip(x, removed);
        if (!r) throw StageFailure(std::string(where) + ": edge " + fmt_edge(removed) +
                                   " is not flippable" + dump());
        auto bad = validate_kdpt(*r, k);
        if (!bad.empty())
            throw StageFailure(std::string(where) + ": flip left an invalid state: " + bad.front());
        if (tails_per_chain(*r) != tails_per_chain(x))
            throw StageFailure(std::string(where) + ": flip changed the designation");
        if (pred && !pred(*r))
            throw StageFailure(std::string(where) + ": flip of " + fmt_edge(removed) +
                               " missed its goal" + dump());
        Edge inserted;
        for (const Edge& e : r->edges())
            if (!x.has_edge(e)) inserted = e;
        log.push_back(Flip{removed, inserted});
        x = *r;
    }

    Face dart_by_tail(int tail) const {
        for (const Face& f : faces(x))
            if (f.is_dart() && f.dart().tail == tail) return f;
        throw StageFailure("canonicalize: dart with tail " + std::to_string(tail) + " vanished");
    }

    static bool walk_has_edge(const std::vector<int>& w, const Edge& e) {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (Edge(w[i], w[(i + 1) % w.size()]) == e) return true;
        return false;
    }

    Face face_across(const Edge& e, const std::set<int>& mine) const {
        for (const Face& f : faces(x)) {
            if (!walk_has_edge(f.walk, e)) continue;
            if (std::set<int>(f.walk.begin(), f.walk.end()) != mine) return f;
        }
        throw StageFailure("canonicalize: no face across " + fmt_edge(e));
    }

    /// The dart vertex on the chain opposite the tail (unique, since both
    /// dart shapes keep three vertices on the tail's chain), plus its two
    /// neighbors along the dart walk.
    struct Moving {
        int vertex;
        int near;  // neighbor with the smaller chain position
        int far;
    };
    Moving moving_vertex(const Face& dart) const {
        int opp = 3 - cchain(dart.dart().tail);
        int mv = -1;
        for (int w : dart.walk)
            if (cchain(w) == opp) {
                if (mv >= 0) throw StageFailure("canonicalize: dart with two opposite vertices");
                mv = w;
            }
        if (mv < 0) throw StageFailure("canonicalize: dart without an opposite vertex");
        std::size_t i = 0;
        while (dart.walk[i] != mv) ++i;
        int n1 = dart.walk[(i + 1) % dart.walk.size()];
        int n2 = dart.walk[(i + dart.walk.size() - 1) % dart.walk.size()];
        if (cpos(n1) > cpos(n2)) std::swap(n1, n2);
        return Moving{mv, n1, n2};
    }

    /// Like checked(), but failure (unflippable, invalid, designation
    /// change, pred miss) leaves the state untouched and returns false.
    bool try_flip(const Edge& removed, const std::function<bool(const KDPT&)>& pred) {
        if (--flip_budget < 0) throw StageFailure("canonicalize: flip budget exhausted");
        std::optional<KDPT> r;
        try {
            r = flip(x, removed);
        } catch (const std::logic_error&) {
            return false;
        }
        if (!r) return false;
        if (!validate_kdpt(*r, k).empty()) return false;
        if (tails_per_chain(*r) != tails_per_chain(x)) return false;
        if (pred && !pred(*r)) return false;
        Edge inserted;
        for (const Edge& e : r->edges())
            if (!x.has_edge(e)) inserted = e;
        log.push_back(Flip{removed, inserted});
        x = *r;
        return true;
    }

    /// Flip the blocking crossing dart `d2` off the edge `avoid` by
    /// removing one of its two chain edges (its tail may slide along its
    /// own chain in the process).
    void convert_crossing_away(const DartInfo& d2, const Edge& avoid, const std::set<int>& mine) {
        const std::vector<int>& ch = chain(cchain(d2.tail));
        int p = cpos(d2.tail);
        int side = -1;  // which chain neighbor the avoided edge touches
        for (int w : {d2.wing1, d2.wing2})
            if (w == avoid.a || w == avoid.b) side = cpos(w);
        if (side != p - 1 && side != p + 1)
            throw StageFailure("unblock: crossing dart with unexpected wings");
        Edge far = side == p + 1
                       ? Edge(ch[static_cast<std::size_t>(p - 1)], ch[static_cast<std::size_t>(p)])
                       : Edge(ch[static_cast<std::size_t>(p)], ch[static_cast<std::size_t>(p + 1)]);
        Edge near = side == p + 1
                        ? Edge(ch[static_cast<std::size_t>(p)], ch[static_cast<std::size_t>(p + 1)])
                        : Edge(ch[static_cast<std::size_t>(p - 1)], ch[static_cast<std::size_t>(p)]);
        auto cleared = [&](const KDPT& r) {
            for (const Face& f : faces(r))
                if (f.is_dart() && classify_dart_dc(dc, f.dart()) == DartClass::Crossing &&
                    walk_has_edge(f.walk, avoid) &&
                    std::set<int>(f.walk.begin(), f.walk.end()) != mine)
                    return false;
            return true;
        };
        if (try_flip(far, cleared) || try_flip(near, cleared)) return;
        throw StageFailure("unblock: cannot clear the crossing dart off " + fmt_edge(avoid) +
                           dump());
    }

    /// Make the face across e = (anchor, mv) from `mine` the triangle
    /// {anchor, prev(mv), mv}. Returns false when an aligned dart sits
    /// directly across, in which case the caller flips e as a dart-dart
    /// flip.
    bool make_ready(const Edge& e, int anchor, int mv, const std::set<int>& mine, int depth) {
        if (depth > ps.n() + 4) throw StageFailure("canonicalize: lowering recursion too deep");
        const std::vector<int>& mchain = chain(cchain(mv));
        const int prev = mchain[static_cast<std::size_t>(cpos(mv) - 1)];
        for (;;) {
            Face g = face_across(e, mine);
            if (g.is_dart()) {
                if (classify_dart_dc(dc, g.dart()) == DartClass::Crossing) {
                    convert_crossing_away(g.dart(), e, mine);
                    continue;
                }
                return false;
            }
            int third = -1;
            for (int w : g.walk)
                if (w != anchor && w != mv) third = w;
            if (third == prev) return true;
            if (cchain(third) != cchain(anchor))
                throw StageFailure("canonicalize: unexpected face across " + fmt_edge(e));
            // two same-chain vertices: lower the neighbor first, then fold it
            Edge inner(third, mv);
            std::set<int> gset(g.walk.begin(), g.walk.end());
            if (make_ready(inner, third, mv, gset, depth + 1)) {
                checked(inner, [&](const KDPT& r) { return r.has_edge(Edge(anchor, prev)); },
                        "lower");
            } else {
                checked(inner, nullptr, "lower dart-dart");
            }
        }
    }

    /// Move the dart's opposite-chain vertex leftward to position tgt.
    /// Returns the (unchanged) tail.
    void move_vertex_left(int tail, int tgt) {
        for (;;) {
            Face f = dart_by_tail(tail);
            Moving mv = moving_vertex(f);
            int j = cpos(mv.vertex);
            if (j == tgt) return;
            if (j < tgt) throw StageFailure("canonicalize: opposite vertex left of its target");
            const std::vector<int>& mchain = chain(cchain(mv.vertex));
            const int prev = mchain[static_cast<std::size_t>(j - 1)];
            Edge e(mv.near, mv.vertex);
            std::set<int> mine(f.walk.begin(), f.walk.end());
            if (make_ready(e, mv.near, mv.vertex, mine, 0)) {
                checked(e,
                        [&](const KDPT& r) {
                            for (const Face& g : faces(r))
                                if (g.is_dart() && g.dart().tail == tail)
                                    return moving_vertex(g).vertex == prev;
                            return false;
                        },
                        "vertex-left");
            } else {
                checked(e,
                        [&](const KDPT& r) {
                            for (const Face& g : faces(r))
                                if (g.is_dart() && g.dart().tail == tail)
                                    return cpos(moving_vertex(g).vertex) < j;
                            return false;
                        },
                        "vertex-left dart-dart");
            }
        }
    }

    /// Align the dart currently tailed at `tail` into chain slot `slot`,
    /// with its opposite wing already at `mvtx`. The tail walks left via
    /// the crossing form; right before the final crossing-to-aligned
    /// conversion the chain pocket is retriangulated so the face above the
    /// spine slot has its apex at the rightmost chain point.
    void align_slot(int tail, int slot, int mvtx, int which) {
        const std::vector<int>& own = chain(which);
        int cur = tail;
        for (int guard = 0; guard < 8 * ps.n(); ++guard) {
            Face f = dart_by_tail(cur);
            DartInfo d = f.dart();
            int s = cpos(cur);
            if (s < slot) throw StageFailure("canonicalize: dart overshot its slot");
            bool aligned = classify_dart_dc(dc, d) == DartClass::Aligned;
            if (aligned && s == slot && d.tip == own[static_cast<std::size_t>(slot - 1)]) return;
            if (!aligned && d.tip != mvtx)
                throw StageFailure("canonicalize: crossing dart with a stray tip");
            if (!aligned && s == slot) {
                pocket_stage(which, slot);
                checked(Edge(own[static_cast<std::size_t>(slot - 1)],
                             own[static_cast<std::size_t>(slot)]),
                        [&](const KDPT& r) {
                            for (const Face& g : faces(r))
                                if (g.is_dart() &&
                                    g.dart().tail == own[static_cast<std::size_t>(slot)])
                                    return classify_dart_dc(dc, g.dart()) == DartClass::Aligned &&
                                           g.dart().tip ==
                                               own[static_cast<std::size_t>(slot - 1)];
                            return false;
                        },
                        "to-aligned");
                return;
            }
            // one leftward step; flipping the edge from the dart's left chain
            // attachment to mvtx moves the tail (or turns a right-tipped
            // aligned dart into a crossing one in place)
            bool right_tip = aligned && d.tip != own[static_cast<std::size_t>(s - 1)];
            int m = right_tip ? cur : own[static_cast<std::size_t>(s - 1)];
            Edge e(m, mvtx);
            int want = right_tip ? cur : own[static_cast<std::size_t>(s - 1)];
            std::set<int> mine(f.walk.begin(), f.walk.end());
            if (make_ready(e, mvtx, m, mine, 0)) {
                checked(e,
                        [&](const KDPT& r) {
                            for (const Face& g : faces(r))
                                if (g.is_dart() && g.dart().tail == want)
                                    return classify_dart_dc(dc, g.dart()) ==
                                               DartClass::Crossing &&
                                           g.dart().tip == mvtx;
                            return false;
                        },
                        "tail-left");
            } else {
                checked(e,
                        [&](const KDPT& r) {
                            for (const Face& g : faces(r))
                                if (g.is_dart() && cchain(g.dart().tail) == which &&
                                    cpos(g.dart().tail) >= slot && cpos(g.dart().tail) <= s &&
                                    !r.has_edge(e))
                                    return true;
                            return false;
                        },
                        "tail-left dart-dart");
            }
            cur = -1;
            for (const Face& g : faces(x))
                if (g.is_dart() && cchain(g.dart().tail) == which && cpos(g.dart().tail) >= slot &&
                    cpos(g.dart().tail) <= s &&
                    (cur < 0 || cpos(g.dart().tail) < cpos(cur)))
                    cur = g.dart().tail;
            if (cur < 0) throw StageFailure("canonicalize: dart lost while walking left");
        }
        throw StageFailure("canonicalize: tail walk did not converge");
    }

    /// Process every dart designated to chain `which`, moving its opposite
    /// vertex to chain position `tgt` and its spine to the leftmost free
    /// slot.
    void process_chain(int which, int tgt, int count) {
        int mvtx = chain(3 - which)[static_cast<std::size_t>(tgt)];
        for (int slot = 1; slot <= count; ++slot) {
            int tail = -1;
            for (const Face& f : faces(x)) {
                if (!f.is_dart() || cchain(f.dart().tail) != which) continue;
                int p = cpos(f.dart().tail);
                if (p >= slot && (tail < 0 || p < cpos(tail))) tail = f.dart().tail;
            }
            if (tail < 0) throw StageFailure("canonicalize: missing dart for slot");
            move_vertex_left(tail, tgt);
            align_slot(tail, slot, mvtx, which);
        }
    }

    /// Retriangulate chain `which`'s pocket (half-darts included as
    /// triangles) to the canonical chords.
    void pocket_stage(int which, int count) {
        const std::vector<int>& own = chain(which);
        if (own.size() < 4) return;  // no pocket chords possible
        auto is_pocket_chord = [&](const Edge& e) {
            if (cchain(e.a) != which || cchain(e.b) != which) return false;
            int d = std::abs(cpos(e.a) - cpos(e.b));
            if (d <= 1) return false;
            return !(cpos(e.a) == 0 && cpos(e.b) == static_cast<int>(own.size()) - 1) &&
                   !(cpos(e.b) == 0 && cpos(e.a) == static_cast<int>(own.size()) - 1);
        };
        KDPT z = add_spines(x).triangulation;
        std::vector<Edge> constrained, target_edges;
        for (const Edge& e : z.edges())
            if (!is_pocket_chord(e)) {
                constrained.push_back(e);
                target_edges.push_back(e);
            }
        for (int t = 1; t <= count; ++t) {
            Edge e(own[static_cast<std::size_t>(t)], own.back());
            if (std::abs(cpos(e.a) - cpos(e.b)) >= 2) target_edges.push_back(e);
        }
        std::vector<Edge> fan;
        triangulate_region(ps, pocket_region(dc, which, count), fan);
        target_edges.insert(target_edges.end(), fan.begin(), fan.end());
        std::sort(target_edges.begin(), target_edges.end());
        target_edges.erase(std::unique(target_edges.begin(), target_edges.end()),
                           target_edges.end());
        KDPT zt(x.ps_ptr(), target_edges);
        auto bad = validate_kdpt(zt, 0);
        if (!bad.empty())
            throw StageFailure("canonicalize: pocket target invalid: " + bad.front());
        FlipPath leg = constrained_flip_path(z, zt, constrained);
        for (const Flip& f : leg.flips)
            checked(f.removed, [&](const KDPT& r) { return r.has_edge(f.inserted); }, "pocket");
    }

    void finish(const KDPT& target) {
        std::vector<Edge> common;
        std::set_intersection(x.edges().begin(), x.edges().end(), target.edges().begin(),
                              target.edges().end(), std::back_inserter(common));
        FlipPath leg = constrained_flip_path(x, target, common);
        for (const Flip& f : leg.flips)
            checked(f.removed, [&](const KDPT& r) { return r.has_edge(f.inserted); }, "middle");
        if (canonical_key(x) != canonical_key(target))
            throw StageFailure("canonicalize: staged flips missed the canonical form");
    }
};

FlipPath canonicalize_fallback(const DoubleChain& dc, const KDPT& t, const KDPT& target, int cap) {
    FlipGraph fg = build_flip_graph(dc.ps, dart_count(t), cap);
    int from = fg.node_index(canonical_key(t));
    int to = fg.node_index(canonical_key(target));
    if (from < 0 || to < 0)
        throw std::logic_error("canonicalize: state missing from enumeration");
    FlipPath path;
    path.start_key = canonical_key(t);
    path.end_key = canonical_key(target);
    path.flips = shortest_flip_path(fg, from, to);
    path.fallback = true;
    return path;
}

}  // namespace

FlipPath canonicalize(const DoubleChain& dc, const KDPT& t, int cap) {
    int k = dart_count(t);
    auto bad = validate_kdpt(t, k);
    if (!bad.empty()) throw std::invalid_argument("canonicalize: invalid input: " + bad.front());
    Designation des = designation(dc, t);
    KDPT target = canonical_kdpt(dc, des);

    FlipPath path;
    path.start_key = canonical_key(t);
    path.end_key = canonical_key(target);
    if (path.start_key == path.end_key) return path;

    try {
        StagedCanon s(dc, t);
        s.process_chain(1, 0, des.k1);
        s.pocket_stage(1, des.k1);
        s.process_chain(2, des.k1, des.k2);
        s.pocket_stage(2, des.k2);
        s.finish(target);
        path.flips = std::move(s.log);
        KDPT end = replay_path(t, path, k);
        if (canonical_key(end) != path.end_key)
            throw StageFailure("canonicalize: replay mismatch");
        return path;
    } catch (const StageFailure&) {
        return canonicalize_fallback(dc, t, target, cap);
    }
}

}  // namespace dartflip
