#ifndef DYNPATH_BOUNDED_TW_HPP
#define DYNPATH_BOUNDED_TW_HPP

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "dynpath/bipartite.hpp" // InsertOutcome
#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/path_automaton.hpp"
#include "dynpath/tree_decomposition.hpp"
#include "dynpath/treewidth.hpp"

namespace dynpath {

/// A dynamic subgraph H constrained to tw(H) <= threshold, with a maintained
/// witness decomposition. Insertions that would push the treewidth beyond the
/// threshold are aborted with no state change. Longest/shortest (u,v)-path
/// queries run the path automaton over a per-call decomposition of the
/// (u,v)-relevant part of H, with {u,v} injected into every bag.
class BoundedTreewidthSubgraph {
public:
    BoundedTreewidthSubgraph(int n, int threshold, TreewidthBudget budget = {})
        : h_(n), threshold_(threshold), budget_(budget) {
        if (threshold < 0) throw OutOfRangeError("treewidth threshold must be non-negative");
    }

    int threshold() const { return threshold_; }
    const Graph& graph() const { return h_; }

    /// Witness decomposition of the current H, recomputed after accepted
    /// insertions (lazily, on access; deletions keep it valid as is).
    const TreeDecomposition& decomposition() const {
        if (tdDirty_) {
            auto refreshed = decomposeWidthAtMost(h_, threshold_, budget_);
            if (!refreshed) throw Error("bounded-tw: lost the width invariant");
            td_ = std::move(*refreshed);
            tdDirty_ = false;
        }
        return td_;
    }

    bool hasEdge(Edge e) const { return h_.hasEdge(e); }

    /// Accepts iff tw(H + e) stays within the threshold. Only the biconnected
    /// block merged by e needs re-checking: all other blocks are untouched.
    /// A rejection is remembered together with the rejected block; while that
    /// block is still present in H, retrying the same edge (queries retry
    /// marked edges often) is refused without re-solving.
    InsertOutcome tryInsert(Edge e) {
        if (h_.hasEdge(e))
            throw DuplicateEdgeError("bounded-tw: edge already present");
        if (auto it = refuted_.find(e); it != refuted_.end()) {
            bool intact = true;
            for (Edge f : it->second)
                if (f != e && !h_.hasEdge(f)) {
                    intact = false;
                    break;
                }
            if (intact) return InsertOutcome::Aborted;
            refuted_.erase(it);
        }
        RelevantPart merged = blockWithVirtualEdge(e);
        if (!decomposeWidthAtMost(merged.graph, threshold_, budget_)) {
            if (merged.graph.edgeCount() <= kMaxWitnessEdges) {
                std::vector<Edge> witness;
                witness.reserve(static_cast<std::size_t>(merged.graph.edgeCount()));
                for (Edge f : merged.graph.edges())
                    witness.emplace_back(merged.vertices[static_cast<std::size_t>(f.u)],
                                         merged.vertices[static_cast<std::size_t>(f.v)]);
                refuted_.emplace(e, std::move(witness));
            }
            return InsertOutcome::Aborted;
        }
        h_.addEdge(e);
        tdDirty_ = true;
        return InsertOutcome::Accepted;
    }

    /// Removing an edge cannot raise the treewidth; the old decomposition
    /// stays valid and is kept.
    void erase(Edge e) {
        h_.removeEdge(e);
        refuted_.erase(e);
    }

    std::int64_t longestPath(Vertex u, Vertex v) const {
        return pathLength(u, v, PathObjective::Longest);
    }

    std::int64_t shortestPath(Vertex u, Vertex v) const {
        return pathLength(u, v, PathObjective::Shortest);
    }

    std::int64_t pathLength(Vertex u, Vertex v, PathObjective objective) const {
        h_.checkVertex(u);
        h_.checkVertex(v);
        if (u == v) throw EqualEndpointsError("bounded-tw: equal endpoints");
        const std::int64_t identity =
            objective == PathObjective::Longest ? kMinusInfinity : kPlusInfinity;
        if (!reachable(u, v)) return identity;

        // All simple (u,v)-paths live in the block of H + uv containing uv;
        // the DP runs on the subgraph of H induced by that block.
        RelevantPart part = blockWithVirtualEdge(Edge(u, v));
        Graph sub(static_cast<int>(part.vertices.size()));
        for (int a = 0; a < sub.vertexCount(); ++a) {
            Vertex va = part.vertices[static_cast<std::size_t>(a)];
            for (Vertex w : h_.neighbors(va)) {
                int b = part.localOf(w);
                if (b > a) sub.addEdge(Edge(a, b));
            }
        }
        auto subTd = decomposeWidthAtMost(sub, threshold_, budget_);
        if (!subTd) throw Error("bounded-tw: relevant part exceeds width bound");

        const Vertex lu = part.localOf(u);
        const Vertex lv = part.localOf(v);
        for (auto& node : subTd->nodes) {
            auto& bag = node.bag;
            for (Vertex b : {lu, lv})
                if (!std::binary_search(bag.begin(), bag.end(), b))
                    bag.insert(std::lower_bound(bag.begin(), bag.end(), b), b);
        }
        PathAutomatonState state =
            runPathAutomaton(sub, *subTd, {lu, lv}, objective, threshold_ + 2);
        return state.pathLength(lu, lv);
    }

private:
    struct RelevantPart {
        Graph graph; // the block as a standalone graph over local ids
        std::vector<Vertex> vertices;
        std::vector<int> local;

        int localOf(Vertex v) const { return local[static_cast<std::size_t>(v)]; }
    };

    /// The biconnected block of H + e containing e, without materializing
    /// H + e: the DFS walks H's adjacency plus the one virtual edge.
    RelevantPart blockWithVirtualEdge(Edge extra) const {
        const int n = h_.vertexCount();
        const bool virtualEdge = !h_.hasEdge(extra);

        struct Frame {
            Vertex u;
            Vertex parent;
        };
        std::vector<int> entry(static_cast<std::size_t>(n), -1);
        std::vector<int> low(static_cast<std::size_t>(n), 0);
        std::vector<Edge> stack;
        std::optional<std::vector<Edge>> found;
        int timer = 0;

        auto neighborsOf = [&](Vertex x, auto&& fn) {
            for (Vertex w : h_.neighbors(x)) fn(w);
            if (virtualEdge) {
                if (x == extra.u) fn(extra.v);
                else if (x == extra.v) fn(extra.u);
            }
        };

        auto dfs = [&](auto&& self, Vertex u, Vertex parent) -> void {
            entry[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
            neighborsOf(u, [&](Vertex w) {
                if (w == parent || found) return;
                if (entry[static_cast<std::size_t>(w)] == -1) {
                    stack.emplace_back(u, w);
                    self(self, w, u);
                    low[static_cast<std::size_t>(u)] = std::min(
                        low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
                    if (found) return;
                    if (low[static_cast<std::size_t>(w)] >= entry[static_cast<std::size_t>(u)]) {
                        std::vector<Edge> block;
                        const Edge top(u, w);
                        bool hit = false;
                        while (true) {
                            Edge e = stack.back();
                            stack.pop_back();
                            if (e == extra) hit = true;
                            block.push_back(e);
                            if (e == top) break;
                        }
                        if (hit) found = std::move(block);
                    }
                } else if (entry[static_cast<std::size_t>(w)] <
                           entry[static_cast<std::size_t>(u)]) {
                    stack.emplace_back(u, w);
                    low[static_cast<std::size_t>(u)] = std::min(
                        low[static_cast<std::size_t>(u)], entry[static_cast<std::size_t>(w)]);
                }
            });
        };
        dfs(dfs, extra.u, -1);
        if (!found) throw Error("bounded-tw: block search lost the edge");

        RelevantPart out;
        out.local.assign(static_cast<std::size_t>(n), -1);
        for (Edge f : *found)
            for (Vertex x : {f.u, f.v})
                if (out.local[static_cast<std::size_t>(x)] == -1) {
                    out.local[static_cast<std::size_t>(x)] = static_cast<int>(out.vertices.size());
                    out.vertices.push_back(x);
                }
        out.graph = Graph(static_cast<int>(out.vertices.size()));
        for (Edge f : *found) out.graph.addEdge(Edge(out.localOf(f.u), out.localOf(f.v)));
        return out;
    }

    bool reachable(Vertex u, Vertex v) const {
        std::vector<char> seen(static_cast<std::size_t>(h_.vertexCount()), 0);
        std::vector<Vertex> stack{u};
        seen[static_cast<std::size_t>(u)] = 1;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            if (x == v) return true;
            for (Vertex w : h_.neighbors(x))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
        return false;
    }

    static constexpr int kMaxWitnessEdges = 4096;

    Graph h_;
    int threshold_;
    TreewidthBudget budget_;
    mutable TreeDecomposition td_;
    mutable bool tdDirty_ = true;
    std::unordered_map<Edge, std::vector<Edge>, EdgeHash> refuted_;
};

} // namespace dynpath

#endif
