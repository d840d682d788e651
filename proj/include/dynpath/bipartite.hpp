#ifndef DYNPATH_BIPARTITE_HPP
#define DYNPATH_BIPARTITE_HPP

#include <set>
#include <vector>

#include "dynpath/connectivity.hpp"
#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"

namespace dynpath {

enum class InsertOutcome { Accepted, Aborted };

/// Dynamic bipartiteness over a doubled graph: vertex v becomes copies
/// v0 = 2v and v1 = 2v+1, and each stored edge uv becomes the two edges
/// (v0,u1) and (v1,u0). An insertion that would close an odd cycle is
/// detected as v0 and v1 becoming connected and is rolled back.
class DynamicBipartite {
public:
    explicit DynamicBipartite(int n) : n_(n), doubled_(2 * n) {}

    int vertexCount() const { return n_; }

    bool hasEdge(Edge e) const {
        checkVertex(e.u);
        checkVertex(e.v);
        return edges_.contains(e);
    }

    /// Inserts uv unless that would make the stored graph non-bipartite, in
    /// which case the state is left exactly as before the call.
    InsertOutcome tryInsert(Edge e) {
        if (hasEdge(e))
            throw DuplicateEdgeError("bipartite: edge already present");
        doubled_.insert(doubledA(e));
        doubled_.insert(doubledB(e));
        if (doubled_.isConnected(2 * e.v, 2 * e.v + 1)) {
            doubled_.erase(doubledA(e));
            doubled_.erase(doubledB(e));
            return InsertOutcome::Aborted;
        }
        edges_.insert(e);
        return InsertOutcome::Accepted;
    }

    void erase(Edge e) {
        if (!hasEdge(e))
            throw MissingEdgeError("bipartite: edge not present");
        doubled_.erase(doubledA(e));
        doubled_.erase(doubledB(e));
        edges_.erase(e);
    }

    bool evenPath(Vertex u, Vertex v) const {
        checkPair(u, v);
        return doubled_.isConnected(2 * u, 2 * v);
    }

    bool oddPath(Vertex u, Vertex v) const {
        checkPair(u, v);
        return doubled_.isConnected(2 * u, 2 * v + 1);
    }

    const std::set<Edge>& edges() const { return edges_; }

    /// Stored graph as a Graph snapshot (for invariant checks).
    Graph snapshot() const {
        Graph g(n_);
        for (Edge e : edges_) g.addEdge(e);
        return g;
    }

    const DynamicConnectivity& doubledGraph() const { return doubled_; }

private:
    static Edge doubledA(Edge e) { return Edge(2 * e.v, 2 * e.u + 1); }
    static Edge doubledB(Edge e) { return Edge(2 * e.v + 1, 2 * e.u); }

    void checkVertex(Vertex v) const {
        if (v < 0 || v >= n_) throw OutOfRangeError("bipartite: vertex out of range");
    }

    void checkPair(Vertex u, Vertex v) const {
        checkVertex(u);
        checkVertex(v);
        if (u == v) throw EqualEndpointsError("bipartite: equal endpoints");
    }

    int n_;
    DynamicConnectivity doubled_;
    std::set<Edge> edges_;
};

} // namespace dynpath

#endif
