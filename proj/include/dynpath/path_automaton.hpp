#ifndef DYNPATH_PATH_AUTOMATON_HPP
#define DYNPATH_PATH_AUTOMATON_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/tree_decomposition.hpp"

namespace dynpath {

enum class PathObjective { Longest, Shortest };

inline constexpr std::int64_t kMinusInfinity = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kPlusInfinity = std::numeric_limits<std::int64_t>::max();

namespace padetail {

// A state over the current bag: delta packs a {0,1,2} value per slot (2 bits),
// match packs the partner slot per degree-1 slot (4 bits, 0xF = none).
// Slots beyond the bag keep delta 0 and partner 0xF, so keys are canonical.
inline constexpr int kMaxSlots = 16;

struct DpKey {
    std::uint64_t delta = 0;
    std::uint64_t match = ~0ULL;
    friend bool operator==(const DpKey&, const DpKey&) = default;
};

struct DpKeyHash {
    std::size_t operator()(const DpKey& k) const {
        std::uint64_t x = k.delta * 0x9e3779b97f4a7c15ULL;
        x ^= k.match + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
        x ^= x >> 29;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 32;
        return static_cast<std::size_t>(x);
    }
};

inline int deltaAt(const DpKey& k, int s) { return static_cast<int>((k.delta >> (2 * s)) & 3u); }

inline void setDelta(DpKey& k, int s, int v) {
    k.delta = (k.delta & ~(3ULL << (2 * s))) | (static_cast<std::uint64_t>(v) << (2 * s));
}

inline int partnerAt(const DpKey& k, int s) { return static_cast<int>((k.match >> (4 * s)) & 0xFu); }

inline void setPartner(DpKey& k, int s, int p) {
    k.match = (k.match & ~(0xFULL << (4 * s))) | (static_cast<std::uint64_t>(p & 0xF) << (4 * s));
}

using Table = std::unordered_map<DpKey, std::int64_t, DpKeyHash>;

} // namespace padetail

/// Root state of the path automaton: for every (delta, matching) over the
/// boundary, the optimal total length of a family of vertex-disjoint paths
/// whose endpoint pairs are exactly the matching and in which each boundary
/// vertex b has exactly delta(b) incident path edges. Entries with no
/// realizing family are absent and read back as the identity.
class PathAutomatonState {
public:
    PathAutomatonState(std::vector<Vertex> boundary, PathObjective objective,
                       padetail::Table table)
        : boundary_(std::move(boundary)),
          objective_(objective),
          table_(std::move(table)) {}

    const std::vector<Vertex>& boundary() const { return boundary_; }
    PathObjective objective() const { return objective_; }

    std::int64_t identity() const {
        return objective_ == PathObjective::Longest ? kMinusInfinity : kPlusInfinity;
    }

    /// Value for an explicit (delta, matching); delta is indexed by position
    /// in the sorted boundary.
    std::int64_t value(const std::vector<int>& delta,
                       const std::vector<std::pair<Vertex, Vertex>>& matching) const {
        if (delta.size() != boundary_.size())
            throw Error("path automaton: delta arity mismatch");
        padetail::DpKey key;
        for (std::size_t s = 0; s < delta.size(); ++s)
            padetail::setDelta(key, static_cast<int>(s), delta[s]);
        for (auto [a, b] : matching) {
            int sa = slotOf(a);
            int sb = slotOf(b);
            padetail::setPartner(key, sa, sb);
            padetail::setPartner(key, sb, sa);
        }
        auto it = table_.find(key);
        return it == table_.end() ? identity() : it->second;
    }

    /// Optimal length of a single (u,v)-path: the best entry whose only
    /// degree-1 vertices are u and v, paired together.
    std::int64_t pathLength(Vertex u, Vertex v) const {
        int su = slotOf(u);
        int sv = slotOf(v);
        std::int64_t best = identity();
        for (const auto& [key, val] : table_) {
            if (padetail::deltaAt(key, su) != 1 || padetail::deltaAt(key, sv) != 1) continue;
            if (padetail::partnerAt(key, su) != sv) continue;
            bool clean = true;
            for (std::size_t s = 0; s < boundary_.size(); ++s) {
                if (static_cast<int>(s) == su || static_cast<int>(s) == sv) continue;
                if (padetail::deltaAt(key, static_cast<int>(s)) == 1) {
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            best = objective_ == PathObjective::Longest ? std::max(best, val)
                                                        : std::min(best, val);
        }
        return best;
    }

    std::size_t tableSize() const { return table_.size(); }

private:
    int slotOf(Vertex v) const {
        auto it = std::lower_bound(boundary_.begin(), boundary_.end(), v);
        if (it == boundary_.end() || *it != v)
            throw Error("path automaton: vertex not in boundary");
        return static_cast<int>(it - boundary_.begin());
    }

    std::vector<Vertex> boundary_;
    PathObjective objective_;
    padetail::Table table_;
};

namespace padetail {

struct NiceNode {
    enum Kind { Leaf, IntroduceVertex, IntroduceEdge, Forget, Join } kind;
    std::vector<Vertex> bag; // sorted bag after this node's operation
    Vertex x = -1, y = -1;   // introduced/forgotten vertex, or edge endpoints
    int child1 = -1, child2 = -1;
};

class NiceBuilder {
public:
    NiceBuilder(const Graph& g, const TreeDecomposition& td, const std::vector<Vertex>& boundary)
        : g_(g), td_(td), boundary_(boundary) {
        children_.resize(static_cast<std::size_t>(td.size()));
        root_ = -1;
        for (int x = 0; x < td.size(); ++x) {
            int p = td.nodes[static_cast<std::size_t>(x)].parent;
            if (p == -1) {
                root_ = x;
            } else {
                children_[static_cast<std::size_t>(p)].push_back(x);
            }
        }
        assignEdges();
    }

    std::vector<NiceNode> build() {
        int top = expand(root_);
        // Final descent from the root bag to the boundary, emitting the
        // root-assigned edges along the way.
        top = transition(top, bagOf(root_), boundary_, edgesAt_[static_cast<std::size_t>(root_)]);
        return std::move(nodes_);
    }

private:
    const std::vector<Vertex>& bagOf(int x) const {
        return td_.nodes[static_cast<std::size_t>(x)].bag;
    }

    // Assign every edge to the node closest to the root whose bag contains
    // both endpoints, so it is introduced as late as possible.
    void assignEdges() {
        edgesAt_.resize(static_cast<std::size_t>(td_.size()));
        std::vector<int> depth(static_cast<std::size_t>(td_.size()), -1);
        auto computeDepth = [&](auto&& self, int x) -> int {
            int& d = depth[static_cast<std::size_t>(x)];
            if (d >= 0) return d;
            int p = td_.nodes[static_cast<std::size_t>(x)].parent;
            d = (p == -1) ? 0 : self(self, p) + 1;
            return d;
        };
        std::unordered_map<Edge, std::pair<int, int>, EdgeHash> best; // edge -> (depth, node)
        for (int x = 0; x < td_.size(); ++x) {
            computeDepth(computeDepth, x);
            const auto& bag = bagOf(x);
            for (std::size_t i = 0; i < bag.size(); ++i)
                for (std::size_t j = i + 1; j < bag.size(); ++j) {
                    Edge e(bag[i], bag[j]);
                    if (!g_.hasEdge(e)) continue;
                    auto [it, inserted] =
                        best.emplace(e, std::make_pair(depth[static_cast<std::size_t>(x)], x));
                    if (!inserted && depth[static_cast<std::size_t>(x)] < it->second.first)
                        it->second = {depth[static_cast<std::size_t>(x)], x};
                }
        }
        for (const auto& [e, where] : best)
            edgesAt_[static_cast<std::size_t>(where.second)].push_back(e);
        for (auto& list : edgesAt_) std::sort(list.begin(), list.end());
    }

    int emit(NiceNode node) {
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size()) - 1;
    }

    int emitLeafChain(const std::vector<Vertex>& bag) {
        int cur = emit({NiceNode::Leaf, {}, -1, -1, -1, -1});
        std::vector<Vertex> acc;
        for (Vertex v : bag) {
            acc.push_back(v);
            cur = emit({NiceNode::IntroduceVertex, acc, v, -1, cur, -1});
        }
        return cur;
    }

    /// From bag `from` (node `cur`) to bag `to`: forgets first (each preceded
    /// by the pending edges it is the first forgotten endpoint of), then
    /// introduces. Edges touching no forgotten vertex are emitted up front.
    int transition(int cur, std::vector<Vertex> from, const std::vector<Vertex>& to,
                   const std::vector<Edge>& pending) {
        std::vector<Vertex> forgets;
        for (Vertex v : from)
            if (!std::binary_search(to.begin(), to.end(), v)) forgets.push_back(v);

        auto forgetRank = [&](Vertex v) {
            auto it = std::lower_bound(forgets.begin(), forgets.end(), v);
            if (it == forgets.end() || *it != v) return static_cast<int>(forgets.size());
            return static_cast<int>(it - forgets.begin());
        };

        std::vector<std::vector<Edge>> slot(forgets.size() + 1);
        for (Edge e : pending)
            slot[static_cast<std::size_t>(std::min(forgetRank(e.u), forgetRank(e.v)))].push_back(e);

        // Edges whose endpoints both survive: emit before any forgetting.
        for (Edge e : slot[forgets.size()])
            cur = emit({NiceNode::IntroduceEdge, from, e.u, e.v, cur, -1});
        for (std::size_t i = 0; i < forgets.size(); ++i) {
            for (Edge e : slot[i])
                cur = emit({NiceNode::IntroduceEdge, from, e.u, e.v, cur, -1});
            from.erase(std::find(from.begin(), from.end(), forgets[i]));
            cur = emit({NiceNode::Forget, from, forgets[i], -1, cur, -1});
        }
        for (Vertex v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            from.insert(std::lower_bound(from.begin(), from.end(), v), v);
            cur = emit({NiceNode::IntroduceVertex, from, v, -1, cur, -1});
        }
        return cur;
    }

    int expand(int x) {
        const auto& kids = children_[static_cast<std::size_t>(x)];
        if (kids.empty()) return emitLeafChain(bagOf(x));
        int combined = -1;
        for (int c : kids) {
            int sub = expand(c);
            sub = transition(sub, bagOf(c), bagOf(x), edgesAt_[static_cast<std::size_t>(c)]);
            combined = (combined == -1)
                           ? sub
                           : emit({NiceNode::Join, bagOf(x), -1, -1, combined, sub});
        }
        return combined;
    }

    const Graph& g_;
    const TreeDecomposition& td_;
    std::vector<Vertex> boundary_;
    std::vector<std::vector<int>> children_;
    std::vector<std::vector<Edge>> edgesAt_;
    std::vector<NiceNode> nodes_;
    int root_;
};

inline int slotIn(const std::vector<Vertex>& bag, Vertex v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    return static_cast<int>(it - bag.begin());
}

} // namespace padetail

/// Runs the longest/shortest path automaton over a tree decomposition whose
/// every bag contains `boundary`, returning the root state over exactly that
/// boundary. Bags may not exceed widthLimit+1 vertices.
inline PathAutomatonState runPathAutomaton(const Graph& g, const TreeDecomposition& td,
                                           std::vector<Vertex> boundary, PathObjective objective,
                                           int widthLimit) {
    using namespace padetail;
    std::sort(boundary.begin(), boundary.end());
    for (Vertex b : boundary) g.checkVertex(b);

    if (!isValidDecomposition(g, td))
        throw Error("path automaton: invalid tree decomposition");
    for (const auto& node : td.nodes) {
        if (static_cast<int>(node.bag.size()) > widthLimit + 1)
            throw WidthExceededError("path automaton: bag of " +
                                     std::to_string(node.bag.size()) + " vertices exceeds width " +
                                     std::to_string(widthLimit));
        if (static_cast<int>(node.bag.size()) > kMaxSlots)
            throw TooLargeError("path automaton: bag exceeds slot capacity");
        if (!std::includes(node.bag.begin(), node.bag.end(), boundary.begin(), boundary.end()))
            throw Error("path automaton: boundary not contained in every bag");
    }
    if (td.size() == 0 && !boundary.empty())
        throw Error("path automaton: empty decomposition with non-empty boundary");

    std::vector<NiceNode> nice =
        td.size() == 0 ? std::vector<NiceNode>{{NiceNode::Leaf, {}, -1, -1, -1, -1}}
                       : NiceBuilder(g, td, boundary).build();

    const bool maximize = objective == PathObjective::Longest;
    auto better = [maximize](std::int64_t a, std::int64_t b) { return maximize ? std::max(a, b) : std::min(a, b); };

    std::vector<Table> tables(nice.size());
    for (std::size_t idx = 0; idx < nice.size(); ++idx) {
        const NiceNode& node = nice[idx];
        Table out;
        auto upsert = [&](const DpKey& key, std::int64_t val) {
            auto [it, inserted] = out.emplace(key, val);
            if (!inserted) it->second = better(it->second, val);
        };
        switch (node.kind) {
            case NiceNode::Leaf: {
                out.emplace(DpKey{}, 0);
                break;
            }
            case NiceNode::IntroduceVertex: {
                Table& child = tables[static_cast<std::size_t>(node.child1)];
                const auto& childBag = nice[static_cast<std::size_t>(node.child1)].bag;
                int s = slotIn(node.bag, node.x);
                out.reserve(child.size());
                for (const auto& [key, val] : child) {
                    DpKey k;
                    for (int cs = 0; cs < static_cast<int>(childBag.size()); ++cs) {
                        int ns = cs < s ? cs : cs + 1;
                        setDelta(k, ns, deltaAt(key, cs));
                        int p = partnerAt(key, cs);
                        if (p != 0xF) setPartner(k, ns, p < s ? p : p + 1);
                    }
                    upsert(k, val);
                }
                break;
            }
            case NiceNode::Forget: {
                Table& child = tables[static_cast<std::size_t>(node.child1)];
                const auto& childBag = nice[static_cast<std::size_t>(node.child1)].bag;
                int s = slotIn(childBag, node.x);
                out.reserve(child.size());
                for (const auto& [key, val] : child) {
                    int d = deltaAt(key, s);
                    if (d == 1) continue; // a dangling endpoint may not leave
                    DpKey k;
                    for (int cs = 0; cs < static_cast<int>(childBag.size()); ++cs) {
                        if (cs == s) continue;
                        int ns = cs < s ? cs : cs - 1;
                        setDelta(k, ns, deltaAt(key, cs));
                        int p = partnerAt(key, cs);
                        if (p != 0xF) setPartner(k, ns, p < s ? p : p - 1);
                    }
                    upsert(k, val);
                }
                break;
            }
            case NiceNode::IntroduceEdge: {
                Table& child = tables[static_cast<std::size_t>(node.child1)];
                int su = slotIn(node.bag, node.x);
                int sv = slotIn(node.bag, node.y);
                out.reserve(child.size() * 2);
                for (const auto& [key, val] : child) {
                    upsert(key, val); // skip the edge
                    int du = deltaAt(key, su);
                    int dv = deltaAt(key, sv);
                    if (du >= 2 || dv >= 2) continue;
                    DpKey k = key;
                    if (du == 0 && dv == 0) {
                        setDelta(k, su, 1);
                        setDelta(k, sv, 1);
                        setPartner(k, su, sv);
                        setPartner(k, sv, su);
                    } else if (du == 1 && dv == 1) {
                        int wu = partnerAt(key, su);
                        int wv = partnerAt(key, sv);
                        if (wu == sv) continue; // closing a cycle
                        setDelta(k, su, 2);
                        setDelta(k, sv, 2);
                        setPartner(k, su, 0xF);
                        setPartner(k, sv, 0xF);
                        setPartner(k, wu, wv);
                        setPartner(k, wv, wu);
                    } else {
                        int endpoint = du == 0 ? su : sv; // becomes a new endpoint
                        int interior = du == 0 ? sv : su; // was an endpoint, now interior
                        int w = partnerAt(key, interior);
                        setDelta(k, endpoint, 1);
                        setDelta(k, interior, 2);
                        setPartner(k, interior, 0xF);
                        setPartner(k, endpoint, w);
                        setPartner(k, w, endpoint);
                    }
                    upsert(k, val + 1);
                }
                break;
            }
            case NiceNode::Join: {
                Table& left = tables[static_cast<std::size_t>(node.child1)];
                Table& right = tables[static_cast<std::size_t>(node.child2)];
                const int nb = static_cast<int>(node.bag.size());
                Table& small = left.size() <= right.size() ? left : right;
                Table& large = left.size() <= right.size() ? right : left;
                for (const auto& [k1, v1] : small) {
                    for (const auto& [k2, v2] : large) {
                        DpKey k;
                        bool ok = true;
                        for (int s = 0; s < nb && ok; ++s) {
                            int d = deltaAt(k1, s) + deltaAt(k2, s);
                            if (d > 2) ok = false;
                            else setDelta(k, s, d);
                        }
                        if (!ok) continue;
                        // Merge the two matchings: alternate chains become new
                        // endpoint pairs; any cycle kills the combination.
                        int visited = 0;
                        int present = 0;
                        for (int s = 0; s < nb; ++s)
                            if (partnerAt(k1, s) != 0xF || partnerAt(k2, s) != 0xF)
                                present |= 1 << s;
                        for (int s = 0; s < nb && ok; ++s) {
                            if (!(present & (1 << s)) || (visited & (1 << s))) continue;
                            bool p1 = partnerAt(k1, s) != 0xF;
                            bool p2 = partnerAt(k2, s) != 0xF;
                            if (p1 && p2) continue; // interior of a chain (or cycle)
                            // Walk the chain starting at endpoint s.
                            int side = p1 ? 1 : 2;
                            int cur = s;
                            visited |= 1 << cur;
                            while (true) {
                                int nxt = side == 1 ? partnerAt(k1, cur) : partnerAt(k2, cur);
                                visited |= 1 << nxt;
                                bool cont = side == 1 ? (partnerAt(k2, nxt) != 0xF)
                                                      : (partnerAt(k1, nxt) != 0xF);
                                if (!cont) {
                                    setPartner(k, s, nxt);
                                    setPartner(k, nxt, s);
                                    break;
                                }
                                side = 3 - side;
                                cur = nxt;
                            }
                        }
                        if (ok && visited != present) continue; // leftover cycles
                        if (!ok) continue;
                        upsert(k, v1 + v2);
                    }
                }
                break;
            }
        }
        tables[idx] = std::move(out);
        if (node.child1 != -1) Table().swap(tables[static_cast<std::size_t>(node.child1)]);
        if (node.child2 != -1) Table().swap(tables[static_cast<std::size_t>(node.child2)]);
    }

    return PathAutomatonState(std::move(boundary), objective, std::move(tables.back()));
}

} // namespace dynpath

#endif
