#ifndef DYNPATH_TREE_DECOMPOSITION_HPP
#define DYNPATH_TREE_DECOMPOSITION_HPP

#include <algorithm>
#include <numeric>
#include <ostream>
#include <vector>

#include "dynpath/graph.hpp"

namespace dynpath {

/// Rooted tree decomposition: node 0..size-1, parent index per node (-1 for
/// roots; a forest of bags is linked into one tree by construction elsewhere).
struct TreeDecomposition {
    struct Node {
        int parent = -1;
        std::vector<Vertex> bag; // sorted
    };

    std::vector<Node> nodes;

    int size() const { return static_cast<int>(nodes.size()); }

    /// Max bag size minus one; -1 for the empty decomposition.
    int width() const {
        int w = 0;
        for (const Node& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()));
        return w - 1;
    }

    int addNode(int parent, std::vector<Vertex> bag) {
        std::sort(bag.begin(), bag.end());
        nodes.push_back({parent, std::move(bag)});
        return static_cast<int>(nodes.size()) - 1;
    }
};

/// Checks the two defining conditions: every vertex occurs in a non-empty set
/// of bags inducing a connected subtree, and every edge has both endpoints
/// together in some bag.
inline bool isValidDecomposition(const Graph& g, const TreeDecomposition& td) {
    const int n = g.vertexCount();
    const int m = td.size();
    std::vector<std::vector<int>> occ(static_cast<std::size_t>(n));
    for (int x = 0; x < m; ++x) {
        for (Vertex v : td.nodes[static_cast<std::size_t>(x)].bag) {
            if (v < 0 || v >= n) return false;
            occ[static_cast<std::size_t>(v)].push_back(x);
        }
        if (!std::is_sorted(td.nodes[static_cast<std::size_t>(x)].bag.begin(),
                            td.nodes[static_cast<std::size_t>(x)].bag.end()))
            return false;
        int p = td.nodes[static_cast<std::size_t>(x)].parent;
        if (p < -1 || p >= m || p == x) return false;
    }

    // Tree shape: one root, acyclic parent chain.
    if (m > 0) {
        int roots = 0;
        for (int x = 0; x < m; ++x)
            if (td.nodes[static_cast<std::size_t>(x)].parent == -1) ++roots;
        if (roots != 1) return false;
        std::vector<char> state(static_cast<std::size_t>(m), 0); // 0 new, 1 open, 2 done
        for (int x = 0; x < m; ++x) {
            int y = x;
            std::vector<int> chain;
            while (y != -1 && state[static_cast<std::size_t>(y)] == 0) {
                state[static_cast<std::size_t>(y)] = 1;
                chain.push_back(y);
                y = td.nodes[static_cast<std::size_t>(y)].parent;
            }
            if (y != -1 && state[static_cast<std::size_t>(y)] == 1) return false; // cycle
            for (int z : chain) state[static_cast<std::size_t>(z)] = 2;
        }
    }

    // (i) non-empty, connected occurrence subtrees: within the occurrence
    // set, every node but one must attach to another occurrence via parent.
    std::vector<char> inOcc(static_cast<std::size_t>(m), 0);
    for (Vertex v = 0; v < n; ++v) {
        const auto& nodes = occ[static_cast<std::size_t>(v)];
        if (nodes.empty()) return false;
        for (int x : nodes) inOcc[static_cast<std::size_t>(x)] = 1;
        int roots = 0;
        for (int x : nodes) {
            int p = td.nodes[static_cast<std::size_t>(x)].parent;
            if (p == -1 || !inOcc[static_cast<std::size_t>(p)]) ++roots;
        }
        for (int x : nodes) inOcc[static_cast<std::size_t>(x)] = 0;
        if (roots != 1) return false;
    }

    // (ii) every edge covered by some bag.
    for (Edge e : g.edges()) {
        bool covered = false;
        for (int x : occ[static_cast<std::size_t>(e.u)]) {
            const auto& bag = td.nodes[static_cast<std::size_t>(x)].bag;
            if (std::binary_search(bag.begin(), bag.end(), e.v)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

/// Text dump, one line per node: `B <id> <parent> : v1 v2 ...`
inline void writeDecomposition(const TreeDecomposition& td, std::ostream& out) {
    for (int x = 0; x < td.size(); ++x) {
        out << "B " << x << ' ' << td.nodes[static_cast<std::size_t>(x)].parent << " :";
        for (Vertex v : td.nodes[static_cast<std::size_t>(x)].bag) out << ' ' << v;
        out << '\n';
    }
}

} // namespace dynpath

#endif
