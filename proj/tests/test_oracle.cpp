#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dynpath/graph.hpp"
#include "dynpath/oracle.hpp"

using namespace dynpath;

namespace {

Graph pathGraph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.addEdge(Edge(i, i + 1));
    return g;
}

Graph cycleGraph(int n) {
    Graph g = pathGraph(n);
    g.addEdge(Edge(0, n - 1));
    return g;
}

Graph completeGraph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.addEdge(Edge(u, v));
    return g;
}

Graph randomGraph(int n, int m, std::uint64_t seed) {
    Graph g(n);
    std::uint64_t s = seed;
    auto rnd = [&]() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    };
    int placed = 0;
    while (placed < m) {
        Vertex u = static_cast<Vertex>(rnd() % static_cast<std::uint64_t>(n));
        Vertex v = static_cast<Vertex>(rnd() % static_cast<std::uint64_t>(n));
        if (u == v) continue;
        Edge e(u, v);
        if (g.hasEdge(e)) continue;
        g.addEdge(e);
        ++placed;
    }
    return g;
}

} // namespace

TEST_CASE("enumeratePaths on the spec shapes") {
    Graph p = pathGraph(3);
    auto s = oracle::enumeratePaths(p, 0, 2);
    CHECK(s.minLen == 2);
    CHECK(s.maxLen == 2);
    CHECK(s.hasEven);
    CHECK_FALSE(s.hasOdd);

    Graph c5 = cycleGraph(5);
    s = oracle::enumeratePaths(c5, 0, 1);
    CHECK(s.minLen == 1);
    CHECK(s.maxLen == 4);
    CHECK(s.hasEven);
    CHECK(s.hasOdd);

    // K4: a direct edge, a 2-hop and a 3-hop path between any pair.
    Graph k4 = completeGraph(4);
    s = oracle::enumeratePaths(k4, 1, 3);
    CHECK(s.minLen == 1);
    CHECK(s.maxLen == 3);
    CHECK(s.hasEven);
    CHECK(s.hasOdd);
}

TEST_CASE("enumeratePaths conventions when no path exists") {
    Graph g(4);
    g.addEdge(Edge(0, 1));
    auto s = oracle::enumeratePaths(g, 0, 3);
    CHECK_FALSE(s.anyPath());
    CHECK(s.minLen == oracle::kNoPathMin);
    CHECK(s.maxLen == oracle::kNoPathMax);
    CHECK_FALSE(s.hasEven);
    CHECK_FALSE(s.hasOdd);
}

TEST_CASE("path summary invariants on random graphs") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Graph g = randomGraph(8, static_cast<int>(seed % 17), seed * 77 + 1);
        auto s = oracle::enumeratePaths(g, 0, 7);
        if (s.anyPath()) {
            CHECK(s.maxLen >= s.minLen);
            CHECK((s.hasEven || s.hasOdd));
        } else {
            CHECK_FALSE(s.hasEven);
            CHECK_FALSE(s.hasOdd);
        }
    }
}

TEST_CASE("relevantPart basics") {
    // Path 0-1-2 with a pendant 3 hanging off 1.
    Graph g(4);
    g.addEdge(Edge(0, 1));
    g.addEdge(Edge(1, 2));
    g.addEdge(Edge(1, 3));
    CHECK(oracle::relevantPart(g, 0, 2) == std::vector<Vertex>{0, 1, 2});

    Graph disc(4);
    disc.addEdge(Edge(0, 1));
    disc.addEdge(Edge(2, 3));
    CHECK(oracle::relevantPart(g, 0, 2) == std::vector<Vertex>{0, 1, 2});
    CHECK(oracle::relevantPart(disc, 0, 2).empty());
}

TEST_CASE("relevantPart is monotone under edge addition") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Graph g = randomGraph(7, 6, seed * 13 + 5);
        auto before = oracle::relevantPart(g, 0, 6);
        // add one absent edge
        bool added = false;
        for (int u = 0; u < 7 && !added; ++u)
            for (int v = u + 1; v < 7 && !added; ++v)
                if (!g.hasEdge(Edge(u, v))) {
                    g.addEdge(Edge(u, v));
                    added = true;
                }
        auto after = oracle::relevantPart(g, 0, 6);
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    }
}

TEST_CASE("blocks on the spec shapes") {
    // Bowtie: triangles 0-1-2 and 2-3-4 sharing vertex 2.
    Graph g(5);
    g.addEdge(Edge(0, 1));
    g.addEdge(Edge(1, 2));
    g.addEdge(Edge(0, 2));
    g.addEdge(Edge(2, 3));
    g.addEdge(Edge(3, 4));
    g.addEdge(Edge(2, 4));
    auto blocks = oracle::blocks(g);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].size() == 3);
    CHECK(blocks[1].size() == 3);

    Graph tree = pathGraph(4);
    CHECK(oracle::blocks(tree).size() == 3); // each bridge is its own block
}

TEST_CASE("treewidth oracle on forced values") {
    CHECK(oracle::treewidth(pathGraph(5)) == 1);
    CHECK(oracle::treewidth(cycleGraph(4)) == 2);
    CHECK(oracle::treewidth(completeGraph(4)) == 3);
    CHECK(oracle::treewidth(Graph(3)) == 0);
    CHECK(oracle::treewidth(Graph(0)) == -1);
    CHECK(oracle::treewidth(cycleGraph(5)) == 2);
    CHECK(oracle::treewidth(completeGraph(6)) == 5);
}

TEST_CASE("bipartite oracle") {
    CHECK(oracle::isBipartite(pathGraph(6)));
    CHECK(oracle::isBipartite(cycleGraph(6)));
    CHECK_FALSE(oracle::isBipartite(cycleGraph(5)));
    CHECK_FALSE(oracle::isBipartite(completeGraph(3)));
    CHECK(oracle::isBipartite(Graph(4)));
}

TEST_CASE("budget enforcement") {
    Graph big(20);
    CHECK_THROWS_AS(oracle::enumeratePaths(big, 0, 1), TooLargeError);
    CHECK_THROWS_AS(oracle::relevantPart(big, 0, 1), TooLargeError);
    CHECK_THROWS_AS(oracle::blocks(big), TooLargeError);
    oracle::Budget wide{25};
    CHECK_NOTHROW(oracle::enumeratePaths(big, 0, 1, wide));
}
