#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dartflip/enumerate.hpp"
#include "dartflip/flip.hpp"

namespace dartflip {

struct FlipGraphMeta {
    int n = 0;
    int h = 0;
    int k = 0;
    int node_count = 0;
    int edge_count = 0;
    int component_count = 0;
    std::vector<int> component_sizes;  // indexed by component id
};

/// Explicit flip graph over all k-DPTs of a point set. Nodes are numbered
/// in sorted-canonical-key order, so the graph is reproducible.
struct FlipGraph {
    std::vector<std::string> keys;              // sorted
    std::vector<KDPT> nodes;                    // aligned with keys
    std::vector<std::vector<int>> adjacency;    // sorted neighbor indices
    std::vector<int> component;                 // node -> contiguous component id
    FlipGraphMeta meta;

    int node_index(const std::string& key) const;
};

FlipGraph build_flip_graph(std::shared_ptr<const PointSet> ps, int k,
                           int cap = kDefaultEnumerationCap);

/// Per-component multiset of labels.
template <typename Label>
std::map<int, std::map<Label, int>> components_by(const FlipGraph& fg,
                                                  const std::function<Label(const KDPT&)>& labeler) {
    std::map<int, std::map<Label, int>> out;
    for (std::size_t i = 0; i < fg.nodes.size(); ++i)
        out[fg.component[i]][labeler(fg.nodes[i])] += 1;
    return out;
}

/// Shortest flip path between two nodes of the same component (BFS).
std::vector<Flip> shortest_flip_path(const FlipGraph& fg, int from, int to);

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

}  // namespace dartflip
