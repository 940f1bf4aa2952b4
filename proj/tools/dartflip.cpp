#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dartflip/doublechain.hpp"
#include "dartflip/enumerate.hpp"
#include "dartflip/flipgraph.hpp"
#include "dartflip/io.hpp"

using namespace dartflip;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitCap = 4;
constexpr int kExitInvariant = 5;

int enumeration_cap() {
    if (const char* env = std::getenv("DARTFLIP_CAP")) {
        try {
            return std::max(3, std::stoi(env));
        } catch (const std::exception&) {
            throw ParseError("DARTFLIP_CAP must be an integer");
        }
    }
    return kDefaultEnumerationCap;
}

void output(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_file(path, content);
}

int cmd_gen(const std::string& kind, int p, int q, std::uint64_t seed, const std::string& out) {
    if (kind == "double-chain") {
        DoubleChain dc = generate(p, q);
        output(out, emit_point_set(*dc.ps, &dc));
    } else if (kind == "random") {
        output(out, emit_point_set(random_point_set(p, seed)));
    } else if (kind == "convex") {
        output(out, emit_point_set(convex_point_set(p)));
    } else {
        throw std::invalid_argument("unknown kind: " + kind);
    }
    return kExitOk;
}

int cmd_enum(const std::string& file, int k) {
    PointSetFile f = parse_point_set(read_file(file));
    EnumerationResult r = all_kdpts(f.ps, k, enumeration_cap());
    std::cout << "n " << f.ps->n() << " h " << f.ps->h() << " k " << k << "\n";
    std::cout << "count " << r.count() << "\n";
    std::map<int, int> tails;
    for (const KDPT& t : r.items)
        for (const Face& face : faces(t))
            if (face.is_dart()) tails[face.dart().tail] += 1;
    if (!tails.empty()) {
        std::cout << "darts by tail:\n";
        for (const auto& [tail, count] : tails)
            std::cout << "  " << tail << " " << count << "\n";
    }
    return kExitOk;
}

int cmd_graph(const std::string& file, int k, const std::string& out, std::string format) {
    PointSetFile f = parse_point_set(read_file(file));
    FlipGraph fg = build_flip_graph(f.ps, k, enumeration_cap());
    if (format.empty())
        format = out.size() > 4 && out.substr(out.size() - 4) == ".dot" ? "dot" : "json";
    if (format == "dot")
        output(out, graph_to_dot(fg));
    else if (format == "json")
        output(out, graph_to_json(fg));
    else
        throw std::invalid_argument("unknown format: " + format);
    std::cerr << "nodes " << fg.meta.node_count << " edges " << fg.meta.edge_count
              << " components " << fg.meta.component_count << "\n";
    return kExitOk;
}

int cmd_predict(const std::string& file) {
    PointSetFile f = parse_point_set(read_file(file));
    auto parts = predicted_components_1dpt(*f.ps);
    std::cout << "predicted components (by dart tail):\n";
    for (const auto& part : parts) {
        std::cout << " ";
        for (int v : part) std::cout << " " << v;
        std::cout << "\n";
    }
    if (f.ps->n() <= enumeration_cap()) {
        FlipGraph fg = build_flip_graph(f.ps, 1, enumeration_cap());
        std::map<int, std::set<int>> brute;
        for (std::size_t i = 0; i < fg.nodes.size(); ++i)
            for (const Face& face : faces(fg.nodes[i]))
                if (face.is_dart()) brute[fg.component[i]].insert(face.dart().tail);
        std::set<std::set<int>> got, want;
        for (const auto& [c, tails] : brute) got.insert(tails);
        for (const auto& part : parts) want.insert(std::set<int>(part.begin(), part.end()));
        std::cout << "brute-force components: " << fg.meta.component_count << "\n";
        if (got != want) {
            std::cout << "MISMATCH with brute force\n";
            return kExitInvariant;
        }
        std::cout << "matches brute force\n";
    }
    return kExitOk;
}

int cmd_canonicalize(const std::string& kdpt_file, const std::string& chains_file,
                     const std::string& out) {
    KDPT t = parse_kdpt(read_file(kdpt_file));
    PointSetFile f = parse_point_set(read_file(chains_file));
    if (!f.chains) throw std::invalid_argument("chains file has no \"chains\" field");
    if (f.ps->points() != t.ps().points())
        throw std::invalid_argument("chains file points differ from the k-DPT points");
    DoubleChain dc = *f.chains;
    dc.ps = t.ps_ptr();
    FlipPath path = canonicalize(dc, t, enumeration_cap());
    replay_path(t, path, dart_count(t));
    output(out, emit_flip_path(path));
    return kExitOk;
}

int cmd_render(const std::string& kdpt_file, const std::string& out) {
    KDPT t = parse_kdpt(read_file(kdpt_file));
    output(out, render_svg(t));
    return kExitOk;
}

struct VerifyReport {
    int checks = 0;
    int failures = 0;

    void check(bool ok, const std::string& instance) {
        ++checks;
        if (!ok) {
            ++failures;
            std::cout << "FAIL: " << instance << "\n";
        }
    }
};

void verify_onedart(VerifyReport& rep, int nmax, int samples, std::uint64_t seed, int cap) {
    for (int s = 0; s < samples; ++s) {
        int n = 5 + static_cast<int>((seed + static_cast<std::uint64_t>(s)) % 4);
        n = std::min(n, nmax);
        auto ps = std::make_shared<PointSet>(random_point_set(n, seed + static_cast<std::uint64_t>(s)));
        auto parts = predicted_components_1dpt(*ps);
        FlipGraph fg = build_flip_graph(ps, 1, cap);
        std::map<int, std::set<int>> brute;
        for (std::size_t i = 0; i < fg.nodes.size(); ++i)
            for (const Face& f : faces(fg.nodes[i]))
                if (f.is_dart()) brute[fg.component[i]].insert(f.dart().tail);
        std::set<std::set<int>> got, want;
        for (const auto& [c, tails] : brute) got.insert(tails);
        for (const auto& part : parts) want.insert(std::set<int>(part.begin(), part.end()));
        rep.check(got == want,
                  "predicted components mismatch on random seed " + std::to_string(seed + static_cast<std::uint64_t>(s)));
        for (const KDPT& t : fg.nodes) {
            FlipPath path = dart_triangle_path(t);
            KDPT end = replay_path(t, path, 1);
            DartInfo before, after;
            for (const Face& f : faces(t))
                if (f.is_dart()) before = f.dart();
            for (const Face& f : faces(end))
                if (f.is_dart()) after = f.dart();
            rep.check(dart_in_dart_triangle(end) && before.tip == after.tip &&
                          before.tail == after.tail,
                      "dart_triangle_path failed from " + canonical_key(t));
        }
    }
}

void verify_doublechain(VerifyReport& rep, int amax, int bmax, int cap) {
    for (int a = 0; a <= amax; ++a) {
        for (int b = 0; b <= bmax; ++b) {
            DoubleChain dc = generate(a, b);
            for (int k = 0; k <= a + b; ++k) {
                FlipGraph fg = build_flip_graph(dc.ps, k, cap);
                rep.check(fg.meta.component_count == component_count_formula(a, b, k),
                          "component count off for a=" + std::to_string(a) +
                              " b=" + std::to_string(b) + " k=" + std::to_string(k));
                for (std::size_t i = 0; i < fg.nodes.size(); ++i) {
                    Designation di = designation(dc, fg.nodes[i]);
                    for (int j : fg.adjacency[i])
                        rep.check(designation(dc, fg.nodes[static_cast<std::size_t>(j)]) == di,
                                  "designation changed across a flip at " + fg.keys[i]);
                }
                for (const KDPT& t : fg.nodes) {
                    FlipPath path = canonicalize(dc, t, cap);
                    KDPT end = replay_path(t, path, k);
                    rep.check(canonical_key(end) ==
                                  canonical_key(canonical_kdpt(dc, designation(dc, t))),
                              "canonicalize missed the target from " + canonical_key(t));
                }
            }
        }
    }
}

void verify_micro(VerifyReport& rep, int cap) {
    auto t4 = std::make_shared<PointSet>(PointSet::make({{0, 0}, {4, 0}, {2, 4}, {2, 1}}));
    FlipGraph g1 = build_flip_graph(t4, 1, cap);
    rep.check(g1.meta.node_count == 3 && g1.meta.edge_count == 3 &&
                  g1.meta.component_count == 1,
              "T4 k=1 flip graph is not K3");

    auto c5 = std::make_shared<PointSet>(
        PointSet::make({{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}}));
    FlipGraph g2 = build_flip_graph(c5, 0, cap);
    bool cycle = g2.meta.node_count == 5 && g2.meta.edge_count == 5 &&
                 g2.meta.component_count == 1;
    for (const auto& adj : g2.adjacency) cycle = cycle && adj.size() == 2;
    rep.check(cycle, "CONVEX5 k=0 flip graph is not a 5-cycle");

    auto dc11 = std::make_shared<PointSet>(
        PointSet::make({{0, 10}, {5, 8}, {10, 10}, {0, 0}, {5, 2}, {10, 0}}));
    const int want[] = {1, 2, 1};
    for (int k = 0; k <= 2; ++k)
        rep.check(build_flip_graph(dc11, k, cap).meta.component_count == want[k],
                  "DC11 k=" + std::to_string(k) + " component count");
}

int cmd_verify(const std::string& suite, int amax, int bmax, int nmax, int samples,
               std::uint64_t seed) {
    int cap = enumeration_cap();
    VerifyReport rep;
    if (suite == "onedart" || suite == "all") verify_onedart(rep, nmax, samples, seed, cap);
    if (suite == "doublechain" || suite == "all") verify_doublechain(rep, amax, bmax, cap);
    if (suite == "micro" || suite == "all") verify_micro(rep, cap);
    if (rep.checks == 0) throw std::invalid_argument("unknown suite: " + suite);
    std::cout << rep.checks << " checks, " << rep.failures << " failures\n";
    return rep.failures == 0 ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-dart pseudo-triangulations: enumeration, flips, flip graphs"};
    app.require_subcommand(1);

    std::string kind, file, chains_file, out, format;
    int p = 0, q = 0, k = 0;
    std::uint64_t seed = 1;
    int amax = 2, bmax = 2, nmax = 8, samples = 10;
    std::string suite = "all";

    auto* gen = app.add_subcommand("gen", "generate a point set file");
    gen->add_option("kind", kind, "double-chain | random | convex")->required();
    gen->add_option("p", p, "a (double-chain) or n")->required();
    gen->add_option("q", q, "b (double-chain only)");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("-o,--out", out, "output file (default stdout)");

    auto* en = app.add_subcommand("enum", "enumerate all k-DPTs");
    en->add_option("file", file, "point set file")->required();
    en->add_option("-k", k, "number of darts")->required();

    auto* gr = app.add_subcommand("graph", "build and export the flip graph");
    gr->add_option("file", file, "point set file")->required();
    gr->add_option("-k", k, "number of darts")->required();
    gr->add_option("-o,--out", out, "output file (default stdout)");
    gr->add_option("--format", format, "dot | json (default from extension)");

    auto* pr = app.add_subcommand("predict", "predict 1-DPT components from the tail graph");
    pr->add_option("file", file, "point set file")->required();

    auto* ca = app.add_subcommand("canonicalize", "flip path to the canonical k-DPT");
    ca->add_option("file", file, "k-DPT file")->required();
    ca->add_option("--chains", chains_file, "point set file with chains")->required();
    ca->add_option("-o,--out", out, "output file (default stdout)");

    auto* ve = app.add_subcommand("verify", "run a verification suite");
    ve->add_option("suite", suite, "onedart | doublechain | micro | all");
    ve->add_option("--amax", amax, "max a for double chains");
    ve->add_option("--bmax", bmax, "max b for double chains");
    ve->add_option("--nmax", nmax, "max n for random sets");
    ve->add_option("--samples", samples, "random sets per suite");
    ve->add_option("--seed", seed, "random seed");

    auto* re = app.add_subcommand("render", "render a k-DPT as SVG");
    re->add_option("file", file, "k-DPT file")->required();
    re->add_option("-o,--out", out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(kind, p, q, seed, out);
        if (en->parsed()) return cmd_enum(file, k);
        if (gr->parsed()) return cmd_graph(file, k, out, format);
        if (pr->parsed()) return cmd_predict(file);
        if (ca->parsed()) return cmd_canonicalize(file, chains_file, out);
        if (ve->parsed()) return cmd_verify(suite, amax, bmax, nmax, samples, seed);
        if (re->parsed()) return cmd_render(file, out);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}
