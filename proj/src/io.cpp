#include "dartflip/io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace dartflip {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ParseError("invalid JSON document");
    return doc;
}

std::vector<Point> points_from(const json& doc) {
    if (!doc.contains("points") || !doc["points"].is_array())
        throw ParseError("missing \"points\" array");
    std::vector<Point> pts;
    for (const auto& p : doc["points"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
            !p[1].is_number_integer())
            throw ParseError("each point must be an integer pair");
        pts.push_back({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()});
    }
    return pts;
}

std::vector<int> indices_from(const json& arr, int n, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + " must be an index array");
    std::vector<int> out;
    for (const auto& v : arr) {
        if (!v.is_number_integer()) throw ParseError(std::string(what) + ": non-integer index");
        int i = v.get<int>();
        if (i < 0 || i >= n) throw ParseError(std::string(what) + ": index out of range");
        out.push_back(i);
    }
    return out;
}

}  // namespace

PointSetFile parse_point_set(const std::string& json_text) {
    json doc = parse_json(json_text);
    PointSetFile out;
    try {
        out.ps = std::make_shared<PointSet>(PointSet::make(points_from(doc)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad point set: ") + e.what());
    }
    if (doc.contains("chains")) {
        const json& c = doc["chains"];
        if (!c.is_object() || !c.contains("p1") || !c.contains("p2"))
            throw ParseError("\"chains\" needs \"p1\" and \"p2\"");
        DoubleChain dc;
        dc.ps = out.ps;
        dc.p1 = indices_from(c["p1"], out.ps->n(), "p1");
        dc.p2 = indices_from(c["p2"], out.ps->n(), "p2");
        auto bad = double_chain_violations(*out.ps, dc.p1, dc.p2);
        if (!bad.empty()) throw ParseError("chains are not a double chain: " + bad.front());
        out.chains = std::move(dc);
    }
    return out;
}

std::string emit_point_set(const PointSet& ps, const DoubleChain* dc) {
    json doc;
    doc["points"] = json::array();
    for (int i = 0; i < ps.n(); ++i)
        doc["points"].push_back({ps.at(i).x, ps.at(i).y});
    if (dc) {
        doc["chains"]["p1"] = dc->p1;
        doc["chains"]["p2"] = dc->p2;
    }
    return doc.dump(2) + "\n";
}

KDPT parse_kdpt(const std::string& json_text) {
    json doc = parse_json(json_text);
    std::shared_ptr<const PointSet> ps;
    try {
        ps = std::make_shared<PointSet>(PointSet::make(points_from(doc)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad point set: ") + e.what());
    }
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("missing \"edges\" array");
    std::vector<Edge> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError("each edge must be an integer pair");
        int a = e[0].get<int>(), b = e[1].get<int>();
        if (a < 0 || a >= ps->n() || b < 0 || b >= ps->n() || a == b)
            throw ParseError("edge index out of range");
        edges.emplace_back(a, b);
    }
    if (!doc.contains("k") || !doc["k"].is_number_integer())
        throw ParseError("missing integer \"k\"");
    int k = doc["k"].get<int>();
    KDPT t(ps, edges);
    auto bad = validate_kdpt(t, k);
    if (!bad.empty()) throw std::invalid_argument("not a valid k-DPT: " + bad.front());
    return t;
}

std::string emit_kdpt(const KDPT& t) {
    json doc;
    doc["points"] = json::array();
    for (int i = 0; i < t.ps().n(); ++i)
        doc["points"].push_back({t.ps().at(i).x, t.ps().at(i).y});
    doc["edges"] = json::array();
    for (const Edge& e : t.edges()) doc["edges"].push_back({e.a, e.b});
    doc["k"] = dart_count(t);
    return doc.dump(2) + "\n";
}

std::string emit_flip_path(const FlipPath& path) {
    json doc;
    doc["start"] = path.start_key;
    doc["end"] = path.end_key;
    doc["fallback"] = path.fallback;
    doc["flips"] = json::array();
    for (const Flip& f : path.flips)
        doc["flips"].push_back({{"removed", {f.removed.a, f.removed.b}},
                                {"inserted", {f.inserted.a, f.inserted.b}}});
    return doc.dump(2) + "\n";
}

std::string graph_to_dot(const FlipGraph& fg) {
    std::ostringstream out;
    out << "graph flipgraph {\n";
    for (std::size_t i = 0; i < fg.keys.size(); ++i)
        out << "  n" << i << " [label=\"" << fg.keys[i] << "\\ncomponent "
            << fg.component[i] << "\"];\n";
    for (std::size_t i = 0; i < fg.adjacency.size(); ++i)
        for (int j : fg.adjacency[i])
            if (static_cast<std::size_t>(j) > i) out << "  n" << i << " -- n" << j << ";\n";
    out << "}\n";
    return out.str();
}

std::string graph_to_json(const FlipGraph& fg) {
    json doc;
    doc["nodes"] = fg.keys;
    doc["edges"] = json::array();
    for (std::size_t i = 0; i < fg.adjacency.size(); ++i)
        for (int j : fg.adjacency[i])
            if (static_cast<std::size_t>(j) > i)
                doc["edges"].push_back({static_cast<int>(i), j});
    doc["components"] = fg.component;
    doc["meta"] = {{"n", fg.meta.n},
                   {"h", fg.meta.h},
                   {"k", fg.meta.k},
                   {"node_count", fg.meta.node_count},
                   {"edge_count", fg.meta.edge_count},
                   {"component_count", fg.meta.component_count},
                   {"component_sizes", fg.meta.component_sizes}};
    return doc.dump(2) + "\n";
}

std::string render_svg(const KDPT& t) {
    const PointSet& ps = t.ps();
    std::int64_t minx = ps.at(0).x, maxx = minx, miny = ps.at(0).y, maxy = miny;
    for (int i = 1; i < ps.n(); ++i) {
        minx = std::min(minx, ps.at(i).x);
        maxx = std::max(maxx, ps.at(i).x);
        miny = std::min(miny, ps.at(i).y);
        maxy = std::max(maxy, ps.at(i).y);
    }
    const double margin = std::max<std::int64_t>({maxx - minx, maxy - miny, 10}) * 0.08;
    const double r = margin * 0.25;
    std::ostringstream out;
    // flip y so larger y renders upward
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (minx - margin) << " "
        << (-maxy - margin) << " " << (maxx - minx + 2 * margin) << " "
        << (maxy - miny + 2 * margin) << "\">\n";
    auto px = [&](int i) { return ps.at(i).x; };
    auto py = [&](int i) { return -ps.at(i).y; };
    for (const Face& f : faces(t)) {
        if (!f.is_dart()) continue;
        out << "  <polygon points=\"";
        for (std::size_t i = 0; i < f.walk.size(); ++i)
            out << (i ? " " : "") << px(f.walk[i]) << "," << py(f.walk[i]);
        out << "\" fill=\"#c8c8e8\" stroke=\"none\"/>\n";
    }
    for (const Edge& e : t.edges())
        out << "  <line x1=\"" << px(e.a) << "\" y1=\"" << py(e.a) << "\" x2=\"" << px(e.b)
            << "\" y2=\"" << py(e.b) << "\" stroke=\"black\" stroke-width=\"" << r * 0.2
            << "\"/>\n";
    for (const Face& f : faces(t)) {
        if (!f.is_dart()) continue;
        DartInfo d = f.dart();
        out << "  <line x1=\"" << px(d.tail) << "\" y1=\"" << py(d.tail) << "\" x2=\""
            << px(d.tip) << "\" y2=\"" << py(d.tip)
            << "\" stroke=\"#505050\" stroke-width=\"" << r * 0.15 << "\" stroke-dasharray=\""
            << r * 0.5 << "," << r * 0.5 << "\"/>\n";
    }
    for (int i = 0; i < ps.n(); ++i) {
        out << "  <circle cx=\"" << px(i) << "\" cy=\"" << py(i) << "\" r=\"" << r
            << "\" fill=\"black\"/>\n";
        out << "  <text x=\"" << px(i) + 1.2 * r << "\" y=\"" << py(i) - 1.2 * r
            << "\" font-size=\"" << 3 * r << "\">" << i << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

PointSet random_point_set(int n, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("random_point_set: need at least 3 points");
    std::mt19937_64 rng(seed);
    const std::int64_t range = 1000;
    std::vector<Point> pts;
    int attempts = 0;
    while (static_cast<int>(pts.size()) < n) {
        if (++attempts > 100000)
            throw std::runtime_error("random_point_set: rejection sampling stalled");
        Point p{static_cast<std::int64_t>(rng() % (2 * range + 1)) - range,
                static_cast<std::int64_t>(rng() % (2 * range + 1)) - range};
        bool ok = true;
        for (const Point& q : pts)
            if (q.x == p.x && q.y == p.y) ok = false;
        for (std::size_t i = 0; ok && i < pts.size(); ++i)
            for (std::size_t j = i + 1; ok && j < pts.size(); ++j)
                if (orient(pts[i], pts[j], p) == Orientation::Collinear) ok = false;
        if (ok) pts.push_back(p);
    }
    return PointSet::make(pts);
}

PointSet convex_point_set(int n) {
    if (n < 3) throw std::invalid_argument("convex_point_set: need at least 3 points");
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        std::int64_t x = 2 * i - (n - 1);
        pts.push_back({10 * x, x * x});
    }
    if (4LL * (n - 1) * (n - 1) > kCoordBound)
        throw std::invalid_argument("convex_point_set: too many points");
    return PointSet::make(pts);
}

}  // namespace dartflip
