#include "dartflip/flipgraph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace dartflip {

int FlipGraph::node_index(const std::string& key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return -1;
    return static_cast<int>(it - keys.begin());
}

FlipGraph build_flip_graph(std::shared_ptr<const PointSet> ps, int k, int cap) {
    FlipGraph fg;
    EnumerationResult nodes = all_kdpts(ps, k, cap);
    fg.nodes = std::move(nodes.items);
    fg.keys.reserve(fg.nodes.size());
    for (const KDPT& t : fg.nodes) fg.keys.push_back(canonical_key(t));

    const int n = static_cast<int>(fg.nodes.size());
    fg.adjacency.assign(static_cast<std::size_t>(n), {});
    UnionFind uf(n);
    int edge_count = 0;
    for (int i = 0; i < n; ++i) {
        for (const Flip& f : flippable_edges(fg.nodes[static_cast<std::size_t>(i)])) {
            KDPT next =
                fg.nodes[static_cast<std::size_t>(i)].with_edge_exchanged(f.removed, f.inserted);
            int j = fg.node_index(canonical_key(next));
            if (j < 0) throw std::logic_error("flip graph: neighbor missing from enumeration");
            if (j == i) throw std::logic_error("flip graph: self loop");
            fg.adjacency[static_cast<std::size_t>(i)].push_back(j);
            uf.unite(i, j);
        }
    }
    for (auto& adj : fg.adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        edge_count += static_cast<int>(adj.size());
    }
    edge_count /= 2;

    fg.component.assign(static_cast<std::size_t>(n), -1);
    std::map<int, int> relabel;
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        auto [it, fresh] = relabel.emplace(root, static_cast<int>(relabel.size()));
        fg.component[static_cast<std::size_t>(i)] = it->second;
        (void)fresh;
    }
    fg.meta.n = ps->n();
    fg.meta.h = ps->h();
    fg.meta.k = k;
    fg.meta.node_count = n;
    fg.meta.edge_count = edge_count;
    fg.meta.component_count = static_cast<int>(relabel.size());
    fg.meta.component_sizes.assign(relabel.size(), 0);
    for (int c : fg.component) fg.meta.component_sizes[static_cast<std::size_t>(c)] += 1;
    return fg;
}

std::vector<Flip> shortest_flip_path(const FlipGraph& fg, int from, int to) {
    if (from == to) return {};
    const int n = static_cast<int>(fg.nodes.size());
    std::vector<int> prev(static_cast<std::size_t>(n), -2);
    std::deque<int> q{from};
    prev[static_cast<std::size_t>(from)] = -1;
    while (!q.empty()) {
        int cur = q.front();
        q.pop_front();
        if (cur == to) break;
        for (int nb : fg.adjacency[static_cast<std::size_t>(cur)]) {
            if (prev[static_cast<std::size_t>(nb)] == -2) {
                prev[static_cast<std::size_t>(nb)] = cur;
                q.push_back(nb);
            }
        }
    }
    if (prev[static_cast<std::size_t>(to)] == -2)
        throw std::invalid_argument("shortest_flip_path: nodes in different components");
    std::vector<int> rev_nodes{to};
    for (int cur = to; prev[static_cast<std::size_t>(cur)] != -1;
         cur = prev[static_cast<std::size_t>(cur)])
        rev_nodes.push_back(prev[static_cast<std::size_t>(cur)]);
    std::reverse(rev_nodes.begin(), rev_nodes.end());

    std::vector<Flip> path;
    for (std::size_t i = 0; i + 1 < rev_nodes.size(); ++i) {
        const KDPT& a = fg.nodes[static_cast<std::size_t>(rev_nodes[i])];
        const KDPT& b = fg.nodes[static_cast<std::size_t>(rev_nodes[i + 1])];
        Edge removed(-1, -1), inserted(-1, -1);
        for (const Edge& e : a.edges())
            if (!b.has_edge(e)) removed = e;
        for (const Edge& e : b.edges())
            if (!a.has_edge(e)) inserted = e;
        path.push_back(Flip{removed, inserted});
    }
    return path;
}

}  // namespace dartflip
