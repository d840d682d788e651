#ifndef DYNPATH_GRAPH_HPP
#define DYNPATH_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dynpath/errors.hpp"

namespace dynpath {

/// Dense vertex index in [0, n). The vertex count is fixed at construction.
using Vertex = int;

/// Unordered pair of distinct vertices, stored canonically with u < v.
struct Edge {
    Vertex u;
    Vertex v;

    Edge(Vertex a, Vertex b) {
        if (a == b)
            throw SelfLoopError("self-loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
        u = std::min(a, b);
        v = std::max(a, b);
    }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const {
        std::uint64_t x = (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

/// Mutable simple undirected graph on a fixed vertex set [0, n).
///
/// Adjacency lists are kept sorted; attempts to insert a present edge or
/// remove an absent one are errors, not no-ops.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw OutOfRangeError("negative vertex count");
    }

    int vertexCount() const { return static_cast<int>(adj_.size()); }
    int edgeCount() const { return edgeCount_; }

    void checkVertex(Vertex v) const {
        if (v < 0 || v >= vertexCount())
            throw OutOfRangeError("vertex " + std::to_string(v) + " not in [0," +
                                  std::to_string(vertexCount()) + ")");
    }

    bool hasEdge(Edge e) const {
        checkVertex(e.u);
        checkVertex(e.v);
        const auto& nu = adj_[static_cast<std::size_t>(e.u)];
        return std::binary_search(nu.begin(), nu.end(), e.v);
    }

    void addEdge(Edge e) {
        if (hasEdge(e))
            throw DuplicateEdgeError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                     ") already present");
        insertSorted(adj_[static_cast<std::size_t>(e.u)], e.v);
        insertSorted(adj_[static_cast<std::size_t>(e.v)], e.u);
        ++edgeCount_;
    }

    void removeEdge(Edge e) {
        if (!hasEdge(e))
            throw MissingEdgeError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                   ") not present");
        eraseSorted(adj_[static_cast<std::size_t>(e.u)], e.v);
        eraseSorted(adj_[static_cast<std::size_t>(e.v)], e.u);
        --edgeCount_;
    }

    int degree(Vertex v) const {
        checkVertex(v);
        return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
    }

    /// Sorted neighbor list.
    const std::vector<Vertex>& neighbors(Vertex v) const {
        checkVertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    /// All edges in canonical (u,v) lexicographic order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(edgeCount_));
        for (Vertex u = 0; u < vertexCount(); ++u)
            for (Vertex v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    static void insertSorted(std::vector<Vertex>& vec, Vertex v) {
        vec.insert(std::lower_bound(vec.begin(), vec.end(), v), v);
    }
    static void eraseSorted(std::vector<Vertex>& vec, Vertex v) {
        vec.erase(std::lower_bound(vec.begin(), vec.end(), v));
    }

    std::vector<std::vector<Vertex>> adj_;
    int edgeCount_ = 0;
};

} // namespace dynpath

#endif
