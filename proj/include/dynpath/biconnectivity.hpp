#ifndef DYNPATH_BICONNECTIVITY_HPP
#define DYNPATH_BICONNECTIVITY_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"

namespace dynpath {

/// Partition of E(g) into biconnected components (lowpoint DFS with an edge
/// stack). Every edge lands in exactly one block; isolated vertices land in
/// none.
inline std::vector<std::vector<Edge>> biconnectedComponents(const Graph& g) {
    const int n = g.vertexCount();
    std::vector<int> entry(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<Edge> stack;
    std::vector<std::vector<Edge>> blocks;
    int timer = 0;

    auto dfs = [&](auto&& self, Vertex u, Vertex parent) -> void {
        entry[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
        for (Vertex w : g.neighbors(u)) {
            if (w == parent) continue;
            if (entry[static_cast<std::size_t>(w)] == -1) {
                stack.emplace_back(u, w);
                self(self, w, u);
                low[static_cast<std::size_t>(u)] =
                    std::min(low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
                if (low[static_cast<std::size_t>(w)] >= entry[static_cast<std::size_t>(u)]) {
                    std::vector<Edge> block;
                    const Edge top(u, w);
                    while (true) {
                        Edge e = stack.back();
                        stack.pop_back();
                        block.push_back(e);
                        if (e == top) break;
                    }
                    blocks.push_back(std::move(block));
                }
            } else if (entry[static_cast<std::size_t>(w)] < entry[static_cast<std::size_t>(u)]) {
                stack.emplace_back(u, w);
                low[static_cast<std::size_t>(u)] =
                    std::min(low[static_cast<std::size_t>(u)], entry[static_cast<std::size_t>(w)]);
            }
        }
    };

    for (Vertex v = 0; v < n; ++v)
        if (entry[static_cast<std::size_t>(v)] == -1) dfs(dfs, v, -1);
    return blocks;
}

/// Dynamic biconnectivity with a mark bit per edge and marked-edge search
/// within a biconnected component. Updates only touch adjacency; the block
/// index is rebuilt lazily when the next query needs it. The interface is the
/// module boundary, so a faster engine can drop in.
class MarkedBiconnectivity {
public:
    struct Block {
        std::vector<Edge> edges;      // sorted canonical
        std::vector<Vertex> vertices; // sorted
    };

    explicit MarkedBiconnectivity(int n)
        : g_(n), adj_(static_cast<std::size_t>(n)), vertexBlocks_(static_cast<std::size_t>(n)) {}

    const Graph& graph() const { return g_; }

    /// Marked edges in canonical order.
    std::set<Edge> marks() const {
        std::set<Edge> out;
        for (const auto& [e, slot] : marks_) out.insert(e);
        return out;
    }

    int markCount() const { return static_cast<int>(marks_.size()); }

    void insert(Edge e) {
        g_.addEdge(e); // throws DuplicateEdge / OutOfRange
        int slot;
        if (freeSlots_.empty()) {
            slot = static_cast<int>(slotEdge_.size());
            slotEdge_.push_back(e);
            slotMarked_.push_back(0);
        } else {
            slot = freeSlots_.back();
            freeSlots_.pop_back();
            slotEdge_[static_cast<std::size_t>(slot)] = e;
            slotMarked_[static_cast<std::size_t>(slot)] = 0;
        }
        slotOf_.emplace(e, slot);
        adj_[static_cast<std::size_t>(e.u)].push_back({e.v, slot});
        adj_[static_cast<std::size_t>(e.v)].push_back({e.u, slot});
        dirty_ = true;
    }

    /// Removes the edge; a mark on it is discarded.
    void erase(Edge e) {
        g_.removeEdge(e); // throws MissingEdge
        auto it = slotOf_.find(e);
        int slot = it->second;
        if (slotMarked_[static_cast<std::size_t>(slot)]) {
            slotMarked_[static_cast<std::size_t>(slot)] = 0;
            marks_.erase(e);
        }
        slotOf_.erase(it);
        dropArc(e.u, e.v);
        dropArc(e.v, e.u);
        freeSlots_.push_back(slot);
        dirty_ = true;
    }

    bool isBiconnected(Vertex u, Vertex v) const {
        g_.checkVertex(u);
        g_.checkVertex(v);
        if (u == v) throw EqualEndpointsError("biconnectivity: equal endpoints");
        ensure();
        const auto& bu = vertexBlocks_[static_cast<std::size_t>(u)];
        const auto& bv = vertexBlocks_[static_cast<std::size_t>(v)];
        auto i = bu.begin();
        auto j = bv.begin();
        while (i != bu.end() && j != bv.end()) {
            if (*i == *j) return true;
            (*i < *j) ? ++i : ++j;
        }
        return false;
    }

    void mark(Edge e) {
        int slot = requireSlot(e);
        if (slotMarked_[static_cast<std::size_t>(slot)])
            throw AlreadyMarkedError("biconnectivity: edge already marked");
        slotMarked_[static_cast<std::size_t>(slot)] = 1;
        marks_.emplace(e, slot);
        if (!dirty_) markBucket_[static_cast<std::size_t>(blockOfSlot_[static_cast<std::size_t>(slot)])]
                         .push_back(slot);
    }

    void unmark(Edge e) {
        int slot = requireSlot(e);
        if (!slotMarked_[static_cast<std::size_t>(slot)])
            throw NotMarkedError("biconnectivity: edge not marked");
        slotMarked_[static_cast<std::size_t>(slot)] = 0;
        marks_.erase(e);
        // stale bucket entries are skipped and pruned during searches
    }

    bool isMarked(Edge e) const {
        auto it = slotOf_.find(e);
        return it != slotOf_.end() && slotMarked_[static_cast<std::size_t>(it->second)];
    }

    /// The minimum-canonical marked edge biconnected with e (e itself
    /// qualifies when marked), or nullopt if its block holds no marked edge.
    std::optional<Edge> findMarkedEdge(Edge e) const {
        int slot = requireSlot(e);
        ensure();
        int block = blockOfSlot_[static_cast<std::size_t>(slot)];
        auto& bucket = markBucket_[static_cast<std::size_t>(block)];
        std::optional<Edge> best;
        std::size_t keep = 0;
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            int s = bucket[i];
            if (!slotMarked_[static_cast<std::size_t>(s)] ||
                blockOfSlot_[static_cast<std::size_t>(s)] != block)
                continue; // stale: unmarked, or re-slotted since the rebuild
            bucket[keep++] = s;
            Edge f = slotEdge_[static_cast<std::size_t>(s)];
            if (!best || f < *best) best = f;
        }
        bucket.resize(keep);
        return best;
    }

    Block blockOfEdge(Edge e) const {
        int slot = requireSlot(e);
        ensure();
        int block = blockOfSlot_[static_cast<std::size_t>(slot)];
        Block out;
        for (int s = 0; s < static_cast<int>(slotEdge_.size()); ++s) {
            if (!slotLive(s) || blockOfSlot_[static_cast<std::size_t>(s)] != block) continue;
            out.edges.push_back(slotEdge_[static_cast<std::size_t>(s)]);
        }
        std::sort(out.edges.begin(), out.edges.end());
        for (Edge f : out.edges) {
            out.vertices.push_back(f.u);
            out.vertices.push_back(f.v);
        }
        std::sort(out.vertices.begin(), out.vertices.end());
        out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()),
                           out.vertices.end());
        return out;
    }

    std::vector<Block> blocks() const {
        ensure();
        std::vector<Block> out(static_cast<std::size_t>(blockCount_));
        for (int s = 0; s < static_cast<int>(slotEdge_.size()); ++s) {
            if (!slotLive(s)) continue;
            out[static_cast<std::size_t>(blockOfSlot_[static_cast<std::size_t>(s)])].edges.push_back(
                slotEdge_[static_cast<std::size_t>(s)]);
        }
        for (Block& b : out) {
            std::sort(b.edges.begin(), b.edges.end());
            for (Edge f : b.edges) {
                b.vertices.push_back(f.u);
                b.vertices.push_back(f.v);
            }
            std::sort(b.vertices.begin(), b.vertices.end());
            b.vertices.erase(std::unique(b.vertices.begin(), b.vertices.end()), b.vertices.end());
        }
        return out;
    }

private:
    struct Arc {
        Vertex to;
        int slot;
    };

    bool slotLive(int s) const {
        Edge e = slotEdge_[static_cast<std::size_t>(s)];
        auto it = slotOf_.find(e);
        return it != slotOf_.end() && it->second == s;
    }

    int requireSlot(Edge e) const {
        auto it = slotOf_.find(e);
        if (it == slotOf_.end())
            throw MissingEdgeError("biconnectivity: edge (" + std::to_string(e.u) + "," +
                                   std::to_string(e.v) + ") not present");
        return it->second;
    }

    void dropArc(Vertex from, Vertex to) {
        auto& arcs = adj_[static_cast<std::size_t>(from)];
        for (std::size_t i = 0; i < arcs.size(); ++i)
            if (arcs[i].to == to) {
                arcs[i] = arcs.back();
                arcs.pop_back();
                return;
            }
    }

    /// Lowpoint DFS over the slot-carrying adjacency; assigns a block id per
    /// edge slot, rebuilds the per-vertex block lists and the per-block
    /// marked-slot buckets.
    void ensure() const {
        if (!dirty_) return;
        const int n = g_.vertexCount();
        blockOfSlot_.assign(slotEdge_.size(), -1);
        for (auto& vb : vertexBlocks_) vb.clear();
        blockCount_ = 0;

        std::vector<int> entry(static_cast<std::size_t>(n), -1);
        std::vector<int> low(static_cast<std::size_t>(n), 0);
        std::vector<int> slotStack;
        int timer = 0;

        auto dfs = [&](auto&& self, Vertex u, int parentSlot) -> void {
            entry[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
            for (const Arc& arc : adj_[static_cast<std::size_t>(u)]) {
                if (arc.slot == parentSlot) continue;
                Vertex w = arc.to;
                if (entry[static_cast<std::size_t>(w)] == -1) {
                    slotStack.push_back(arc.slot);
                    self(self, w, arc.slot);
                    low[static_cast<std::size_t>(u)] = std::min(
                        low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
                    if (low[static_cast<std::size_t>(w)] >= entry[static_cast<std::size_t>(u)]) {
                        int id = blockCount_++;
                        while (true) {
                            int s = slotStack.back();
                            slotStack.pop_back();
                            blockOfSlot_[static_cast<std::size_t>(s)] = id;
                            if (s == arc.slot) break;
                        }
                    }
                } else if (entry[static_cast<std::size_t>(w)] <
                           entry[static_cast<std::size_t>(u)]) {
                    slotStack.push_back(arc.slot);
                    low[static_cast<std::size_t>(u)] = std::min(
                        low[static_cast<std::size_t>(u)], entry[static_cast<std::size_t>(w)]);
                }
            }
        };
        for (Vertex v = 0; v < n; ++v)
            if (entry[static_cast<std::size_t>(v)] == -1 &&
                !adj_[static_cast<std::size_t>(v)].empty())
                dfs(dfs, v, -1);

        // per-vertex block membership, ascending by construction order
        std::vector<int> lastBlockOf(static_cast<std::size_t>(n), -1);
        for (int s = 0; s < static_cast<int>(slotEdge_.size()); ++s) {
            if (!slotLive(s)) continue;
            int b = blockOfSlot_[static_cast<std::size_t>(s)];
            Edge e = slotEdge_[static_cast<std::size_t>(s)];
            for (Vertex x : {e.u, e.v}) {
                if (lastBlockOf[static_cast<std::size_t>(x)] == b) continue;
                auto& list = vertexBlocks_[static_cast<std::size_t>(x)];
                if (std::find(list.begin(), list.end(), b) == list.end()) list.push_back(b);
                lastBlockOf[static_cast<std::size_t>(x)] = b;
            }
        }
        for (auto& vb : vertexBlocks_) std::sort(vb.begin(), vb.end());

        markBucket_.assign(static_cast<std::size_t>(blockCount_), {});
        for (const auto& [e, slot] : marks_)
            markBucket_[static_cast<std::size_t>(blockOfSlot_[static_cast<std::size_t>(slot)])]
                .push_back(slot);
        dirty_ = false;
    }

    Graph g_;
    std::vector<std::vector<Arc>> adj_;
    std::unordered_map<Edge, int, EdgeHash> slotOf_;
    std::vector<Edge> slotEdge_;
    std::vector<char> slotMarked_;
    std::vector<int> freeSlots_;
    std::map<Edge, int> marks_; // edge -> slot, canonical iteration order

    mutable bool dirty_ = true;
    mutable int blockCount_ = 0;
    mutable std::vector<int> blockOfSlot_;
    mutable std::vector<std::vector<int>> vertexBlocks_;
    mutable std::vector<std::vector<int>> markBucket_;
};

} // namespace dynpath

#endif
