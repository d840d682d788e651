#ifndef DYNPATH_ORACLE_HPP
#define DYNPATH_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"

// Brute-force ground truth for the query engines and their sub-structures.
// Everything here is written against Graph alone and shares no code with the
// data structures it validates.

namespace dynpath::oracle {

inline constexpr std::int64_t kNoPathMax = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kNoPathMin = std::numeric_limits<std::int64_t>::max();

struct Budget {
    int maxVertices = 12;
};

inline void checkBudget(const Graph& g, const Budget& budget, const char* where) {
    if (g.vertexCount() > budget.maxVertices)
        throw TooLargeError(std::string(where) + ": " + std::to_string(g.vertexCount()) +
                            " vertices exceeds oracle budget " + std::to_string(budget.maxVertices));
}

/// Summary of all simple (s,t)-paths: extreme lengths and which parities occur.
struct PathSummary {
    std::int64_t minLen = kNoPathMin;
    std::int64_t maxLen = kNoPathMax;
    bool hasEven = false;
    bool hasOdd = false;

    bool anyPath() const { return maxLen != kNoPathMax; }
    friend bool operator==(const PathSummary&, const PathSummary&) = default;
};

namespace detail {

template <typename OnArrive>
void dfsPaths(const Graph& g, Vertex cur, Vertex t, std::vector<char>& visited, int len,
              OnArrive&& onArrive) {
    if (cur == t) {
        onArrive(len);
        return;
    }
    for (Vertex w : g.neighbors(cur)) {
        if (visited[static_cast<std::size_t>(w)]) continue;
        visited[static_cast<std::size_t>(w)] = 1;
        dfsPaths(g, w, t, visited, len + 1, onArrive);
        visited[static_cast<std::size_t>(w)] = 0;
    }
}

} // namespace detail

/// Exhaustive DFS over simple (s,t)-paths with visited-set backtracking.
inline PathSummary enumeratePaths(const Graph& g, Vertex s, Vertex t, const Budget& budget = {}) {
    checkBudget(g, budget, "enumeratePaths");
    g.checkVertex(s);
    g.checkVertex(t);
    if (s == t) throw EqualEndpointsError("enumeratePaths: s == t");
    PathSummary out;
    std::vector<char> visited(static_cast<std::size_t>(g.vertexCount()), 0);
    visited[static_cast<std::size_t>(s)] = 1;
    detail::dfsPaths(g, s, t, visited, 0, [&](int len) {
        out.minLen = std::min<std::int64_t>(out.minLen, len);
        out.maxLen = std::max<std::int64_t>(out.maxLen, len);
        (len % 2 == 0 ? out.hasEven : out.hasOdd) = true;
    });
    return out;
}

/// Vertices lying on at least one simple (s,t)-path; empty when no path exists.
inline std::vector<Vertex> relevantPart(const Graph& g, Vertex s, Vertex t,
                                        const Budget& budget = {}) {
    checkBudget(g, budget, "relevantPart");
    g.checkVertex(s);
    g.checkVertex(t);
    if (s == t) throw EqualEndpointsError("relevantPart: s == t");
    std::vector<char> onSomePath(static_cast<std::size_t>(g.vertexCount()), 0);
    std::vector<Vertex> stack;
    std::vector<char> visited(static_cast<std::size_t>(g.vertexCount()), 0);

    // Re-walk the DFS tree of simple paths, marking every vertex of each
    // complete path.
    auto dfs = [&](auto&& self, Vertex cur) -> void {
        stack.push_back(cur);
        visited[static_cast<std::size_t>(cur)] = 1;
        if (cur == t) {
            for (Vertex w : stack) onSomePath[static_cast<std::size_t>(w)] = 1;
        } else {
            for (Vertex w : g.neighbors(cur))
                if (!visited[static_cast<std::size_t>(w)]) self(self, w);
        }
        visited[static_cast<std::size_t>(cur)] = 0;
        stack.pop_back();
    };
    dfs(dfs, s);

    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertexCount(); ++v)
        if (onSomePath[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

/// Partition of E(g) into biconnected components, computed from the
/// definition: edges e, f are equivalent iff some simple cycle contains both.
/// Cycle membership is collected by enumerating, for every edge (a,b), the
/// simple (a,b)-paths that avoid the edge itself.
inline std::vector<std::vector<Edge>> blocks(const Graph& g, const Budget& budget = {}) {
    checkBudget(g, budget, "blocks");
    std::vector<Edge> all = g.edges();
    const int m = static_cast<int>(all.size());
    std::vector<int> cls(static_cast<std::size_t>(m));
    std::iota(cls.begin(), cls.end(), 0);
    auto find = [&](int x) {
        while (cls[static_cast<std::size_t>(x)] != x) x = cls[static_cast<std::size_t>(x)];
        return x;
    };
    auto unite = [&](int a, int b) { cls[static_cast<std::size_t>(find(a))] = find(b); };

    auto edgeIndex = [&](Vertex a, Vertex b) {
        Edge e(a, b);
        return static_cast<int>(std::lower_bound(all.begin(), all.end(), e) - all.begin());
    };

    // For edge i = (a,b): any simple (a,b)-path not using (a,b) closes a cycle
    // through i; every edge of that path is biconnected with i.
    std::vector<char> visited(static_cast<std::size_t>(g.vertexCount()), 0);
    std::vector<Vertex> stack;
    for (int i = 0; i < m; ++i) {
        const Edge e = all[static_cast<std::size_t>(i)];
        auto dfs = [&](auto&& self, Vertex cur) -> void {
            if (cur == e.v) {
                // stack holds the path e.u -> ... -> e.v (excluding e.u).
                Vertex prev = e.u;
                for (Vertex w : stack) {
                    unite(i, edgeIndex(prev, w));
                    prev = w;
                }
                return;
            }
            for (Vertex w : g.neighbors(cur)) {
                if (visited[static_cast<std::size_t>(w)]) continue;
                if (cur == e.u && w == e.v) continue; // skip the edge itself
                visited[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
                self(self, w);
                stack.pop_back();
                visited[static_cast<std::size_t>(w)] = 0;
            }
        };
        std::fill(visited.begin(), visited.end(), 0);
        visited[static_cast<std::size_t>(e.u)] = 1;
        stack.clear();
        dfs(dfs, e.u);
    }

    std::vector<std::vector<Edge>> out;
    std::vector<int> classIndex(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
        int root = find(i);
        if (classIndex[static_cast<std::size_t>(root)] < 0) {
            classIndex[static_cast<std::size_t>(root)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(classIndex[static_cast<std::size_t>(root)])].push_back(
            all[static_cast<std::size_t>(i)]);
    }
    return out;
}

/// Exact treewidth by dynamic programming over elimination orderings.
/// State: the set S of already-eliminated vertices. Eliminating v next costs
/// |{w not in S : w reachable from v through S}|.
inline int treewidth(const Graph& g, const Budget& budget = {}) {
    checkBudget(g, budget, "treewidth");
    const int n = g.vertexCount();
    if (n == 0) return -1;
    if (n > 25) throw TooLargeError("treewidth oracle: subset DP limit");

    auto eliminationDegree = [&](std::uint32_t eliminated, Vertex v) {
        // Count vertices outside `eliminated` reachable from v via eliminated
        // vertices only.
        std::uint32_t seen = 1u << v;
        std::vector<Vertex> queue{v};
        int deg = 0;
        while (!queue.empty()) {
            Vertex x = queue.back();
            queue.pop_back();
            for (Vertex w : g.neighbors(x)) {
                if (seen & (1u << w)) continue;
                seen |= 1u << w;
                if (eliminated & (1u << w)) {
                    queue.push_back(w);
                } else {
                    ++deg;
                }
            }
        }
        return deg;
    };

    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    std::vector<std::int8_t> best(static_cast<std::size_t>(full) + 1, -2);
    auto solve = [&](auto&& self, std::uint32_t eliminated) -> int {
        if (eliminated == full) return -1; // no bag cost left
        auto& memo = best[eliminated];
        if (memo != -2) return memo;
        int result = n; // upper bound sentinel
        for (Vertex v = 0; v < n; ++v) {
            if (eliminated & (1u << v)) continue;
            int deg = eliminationDegree(eliminated, v);
            int rest = self(self, eliminated | (1u << v));
            result = std::min(result, std::max(deg, rest));
        }
        memo = static_cast<std::int8_t>(result);
        return result;
    };
    return solve(solve, 0);
}

/// BFS two-coloring test.
inline bool isBipartite(const Graph& g) {
    const int n = g.vertexCount();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> queue;
    for (Vertex s = 0; s < n; ++s) {
        if (color[static_cast<std::size_t>(s)] != -1) continue;
        color[static_cast<std::size_t>(s)] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            Vertex x = queue.back();
            queue.pop_back();
            for (Vertex w : g.neighbors(x)) {
                if (color[static_cast<std::size_t>(w)] == -1) {
                    color[static_cast<std::size_t>(w)] = color[static_cast<std::size_t>(x)] ^ 1;
                    queue.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(x)]) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// BFS reachability, used as the connectivity oracle.
inline bool isConnectedBfs(const Graph& g, Vertex s, Vertex t) {
    g.checkVertex(s);
    g.checkVertex(t);
    if (s == t) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.vertexCount()), 0);
    seen[static_cast<std::size_t>(s)] = 1;
    std::vector<Vertex> queue{s};
    while (!queue.empty()) {
        Vertex x = queue.back();
        queue.pop_back();
        for (Vertex w : g.neighbors(x)) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            if (w == t) return true;
            seen[static_cast<std::size_t>(w)] = 1;
            queue.push_back(w);
        }
    }
    return false;
}

/// Vertex-deletion biconnectivity test: u,v are biconnected iff uv is an edge
/// or u,v stay connected after removing any single other vertex.
inline bool isBiconnectedPair(const Graph& g, Vertex u, Vertex v) {
    g.checkVertex(u);
    g.checkVertex(v);
    if (u == v) throw EqualEndpointsError("isBiconnectedPair: u == v");
    if (g.hasEdge(Edge(u, v))) return true;
    if (!isConnectedBfs(g, u, v)) return false;
    for (Vertex w = 0; w < g.vertexCount(); ++w) {
        if (w == u || w == v) continue;
        Graph h = g;
        for (Vertex x : std::vector<Vertex>(g.neighbors(w))) h.removeEdge(Edge(w, x));
        if (!isConnectedBfs(h, u, v)) return false;
    }
    return true;
}

} // namespace dynpath::oracle

#endif
