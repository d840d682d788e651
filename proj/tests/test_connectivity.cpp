#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "dynpath/connectivity.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/oracle.hpp"

using namespace dynpath;

namespace {

std::vector<std::vector<bool>> reachabilityMatrix(const Graph& g) {
    int n = g.vertexCount();
    std::vector<std::vector<bool>> m(static_cast<std::size_t>(n),
                                     std::vector<bool>(static_cast<std::size_t>(n)));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v)
            m[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                oracle::isConnectedBfs(g, u, v);
    return m;
}

struct Lcg {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

} // namespace

TEST_CASE("basic insert and component merging") {
    DynamicConnectivity c(4);
    c.insert(Edge(0, 1));
    CHECK(c.isConnected(0, 1));
    CHECK_FALSE(c.isConnected(0, 2));
    CHECK_FALSE(c.isConnected(2, 3));

    c.insert(Edge(2, 3));
    c.insert(Edge(1, 2));
    CHECK(c.isConnected(0, 3));
    CHECK_THROWS_AS(c.insert(Edge(0, 1)), DuplicateEdgeError);
}

TEST_CASE("delete with and without replacement") {
    DynamicConnectivity c(3);
    c.insert(Edge(0, 1));
    c.insert(Edge(1, 2));
    c.insert(Edge(0, 2));
    c.erase(Edge(0, 1)); // replacement path through 2 remains
    CHECK(c.isConnected(0, 1));

    DynamicConnectivity d(2);
    d.insert(Edge(0, 1));
    d.erase(Edge(0, 1));
    CHECK_FALSE(d.isConnected(0, 1));
    CHECK_THROWS_AS(d.erase(Edge(0, 1)), MissingEdgeError);
}

TEST_CASE("representative is the component minimum") {
    DynamicConnectivity c(6);
    c.insert(Edge(4, 5));
    c.insert(Edge(3, 4));
    CHECK(c.representative(5) == 3);
    CHECK(c.representative(3) == 3);
    CHECK(c.representative(0) == 0);
    c.insert(Edge(0, 5));
    CHECK(c.representative(4) == 0);
    CHECK(c.componentSize(5) == 4);
}

TEST_CASE("out-of-range queries") {
    DynamicConnectivity c(3);
    CHECK_THROWS_AS(c.isConnected(0, 3), OutOfRangeError);
    CHECK_THROWS_AS(c.insert(Edge(-1, 1)), OutOfRangeError);
}

TEST_CASE("matches BFS oracle on random traces") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Lcg rng{seed * 1337};
        const int n = 10;
        DynamicConnectivity c(n);
        Graph shadow(n);
        for (int step = 0; step < 300; ++step) {
            Vertex u = rng.below(n);
            Vertex v = rng.below(n);
            if (u == v) continue;
            Edge e(u, v);
            if (shadow.hasEdge(e)) {
                shadow.removeEdge(e);
                c.erase(e);
            } else {
                shadow.addEdge(e);
                c.insert(e);
            }
            Vertex a = rng.below(n);
            Vertex b = rng.below(n);
            CHECK(c.isConnected(a, b) == oracle::isConnectedBfs(shadow, a, b));
        }
        // Full cross-check at the end of the trace.
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b)
                CHECK(c.isConnected(a, b) == oracle::isConnectedBfs(shadow, a, b));
    }
}

TEST_CASE("insert followed by delete restores the connectivity relation") {
    Lcg rng{777};
    const int n = 9;
    DynamicConnectivity c(n);
    Graph shadow(n);
    for (int step = 0; step < 60; ++step) {
        Vertex u = rng.below(n);
        Vertex v = rng.below(n);
        if (u == v) continue;
        Edge e(u, v);
        if (shadow.hasEdge(e)) continue;
        auto before = reachabilityMatrix(shadow);
        c.insert(e);
        c.erase(e);
        shadow.addEdge(e);
        shadow.removeEdge(e);
        CHECK(reachabilityMatrix(shadow) == before);
        for (Vertex a = 0; a < n; ++a)
            for (Vertex b = 0; b < n; ++b)
                CHECK(c.isConnected(a, b) == before[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
        // leave some edges in place to vary the structure
        if (step % 3 == 0) {
            c.insert(e);
            shadow.addEdge(e);
        }
    }
}

TEST_CASE("edge snapshot matches the stored set") {
    DynamicConnectivity c(5);
    c.insert(Edge(0, 1));
    c.insert(Edge(2, 3));
    c.insert(Edge(1, 2));
    c.erase(Edge(2, 3));
    CHECK(c.edges() == std::vector<Edge>{Edge(0, 1), Edge(1, 2)});
    CHECK(c.edgeCount() == 2);
    CHECK(c.hasEdge(Edge(0, 1)));
    CHECK_FALSE(c.hasEdge(Edge(2, 3)));
}
