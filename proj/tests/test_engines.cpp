#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dynpath/engines.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/oracle.hpp"

using namespace dynpath;

namespace {

struct Lcg {
    std::uint64_t s;
    std::uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

template <typename Engine>
std::set<Edge> expectedMarks(const Engine& engine) {
    std::set<Edge> got;
    Graph h = [&] {
        if constexpr (std::is_same_v<Engine, ParityEngine>) return engine.subgraph().snapshot();
        else return engine.subgraph().graph();
    }();
    for (Edge e : engine.graph().edges())
        if (!h.hasEdge(e)) got.insert(e);
    return got;
}

template <typename Engine>
void checkPileInvariant(const Engine& engine) {
    CHECK(engine.biconnectivity().marks() == expectedMarks(engine));
}

} // namespace

TEST_CASE("k must be at least 1") {
    CHECK_THROWS_AS(LongPathEngine(4, 0), OutOfRangeError);
    CHECK_THROWS_AS(LongDetourEngine(4, 0), OutOfRangeError);
    CHECK_NOTHROW(LongPathEngine(4, 1));
}

TEST_CASE("thresholds are the fixed constants derived from k") {
    CHECK(LongPathEngine(4, 1).threshold() == 2);
    CHECK(LongPathEngine(4, 3).threshold() == 6);
    CHECK(LongDetourEngine(4, 1).threshold() == 79);
    CHECK(LongDetourEngine(4, 2).threshold() == 111);
}

TEST_CASE("insert marks exactly the rejected edges") {
    // k=1 so t=2: a triangle fits with no marks.
    LongPathEngine e(3, 1);
    e.insert(0, 1);
    e.insert(1, 2);
    e.insert(0, 2);
    CHECK(e.biconnectivity().marks().empty());
    CHECK(e.stats().marksCreated == 0);
    checkPileInvariant(e);

    // t=1 via the testing hook: the closing edge of a cycle gets marked.
    auto tight = LongPathEngine::forTesting(4, 1, EngineTweaks{.thresholdOverride = 1});
    tight.insert(0, 1);
    tight.insert(1, 2);
    tight.insert(2, 3);
    tight.insert(0, 3);
    CHECK(tight.biconnectivity().marks() == std::set<Edge>{Edge(0, 3)});
    CHECK(tight.stats().marksCreated == 1);
    checkPileInvariant(tight);

    // parity: an odd-cycle-closing edge gets marked.
    ParityEngine p(3);
    p.insert(0, 1);
    p.insert(1, 2);
    p.insert(0, 2);
    CHECK(p.biconnectivity().marks() == std::set<Edge>{Edge(0, 2)});
    checkPileInvariant(p);
}

TEST_CASE("delete drops marks and shrinks H") {
    ParityEngine p(3);
    p.insert(0, 1);
    p.insert(1, 2);
    p.insert(0, 2); // marked
    p.erase(0, 2);  // marked edge: marks shrink, H unchanged
    CHECK(p.biconnectivity().marks().empty());
    CHECK(p.subgraph().edges().size() == 2);
    p.erase(0, 1); // H edge: H shrinks
    CHECK(p.subgraph().edges().size() == 1);
    CHECK_THROWS_AS(p.erase(0, 1), MissingEdgeError);
    checkPileInvariant(p);
}

TEST_CASE("long path query base cases") {
    LongPathEngine e(2, 1);
    e.insert(0, 1);
    CHECK(e.query(0, 1)); // k=1 on a single edge

    // path of length k-1 -> no, length k -> yes
    LongPathEngine f(5, 3);
    f.insert(0, 1);
    f.insert(1, 2);
    f.insert(2, 3);
    CHECK(f.query(0, 3));       // the path has length exactly k
    CHECK_FALSE(f.query(0, 2)); // that one is only k-1
    LongPathEngine g2(5, 4);
    g2.insert(0, 1);
    g2.insert(1, 2);
    g2.insert(2, 3);
    CHECK_FALSE(g2.query(0, 3)); // longest is 3 < 4
    g2.insert(3, 4);
    CHECK(g2.query(0, 4)); // length 4 path
    CHECK_FALSE(g2.query(0, 3));

    CHECK_THROWS_AS(g2.query(1, 1), EqualEndpointsError);
    CHECK_THROWS_AS(g2.query(0, 9), OutOfRangeError);
}

TEST_CASE("disconnected endpoints answer no everywhere") {
    LongPathEngine lp(4, 1);
    lp.insert(0, 1);
    CHECK_FALSE(lp.query(0, 3));
    LongDetourEngine ld(4, 1);
    ld.insert(0, 1);
    CHECK_FALSE(ld.query(0, 3));
    ParityEngine pe(4);
    pe.insert(0, 1);
    CHECK_FALSE(pe.evenPath(0, 3));
    CHECK_FALSE(pe.oddPath(0, 3));
}

TEST_CASE("detour query base cases") {
    // A tree has a unique path between any pair: never a detour.
    LongDetourEngine t(6, 1);
    t.insert(0, 1);
    t.insert(1, 2);
    t.insert(1, 3);
    t.insert(3, 4);
    CHECK_FALSE(t.query(0, 4));
    CHECK_FALSE(t.query(2, 4));

    // C_n with adjacent endpoints: detour of n-2 exists.
    for (int n : {4, 5, 6}) {
        for (int k = 1; k <= n - 1; ++k) {
            LongDetourEngine c(n, k);
            for (int i = 0; i + 1 < n; ++i) c.insert(i, i + 1);
            c.insert(0, n - 1);
            CHECK(c.query(0, 1) == (k <= n - 2));
        }
    }
}

TEST_CASE("parity query base cases") {
    ParityEngine p(2);
    p.insert(0, 1);
    CHECK(p.oddPath(0, 1));
    CHECK_FALSE(p.evenPath(0, 1));

    ParityEngine tri(3);
    tri.insert(0, 1);
    tri.insert(1, 2);
    tri.insert(0, 2);
    for (Vertex a = 0; a < 3; ++a)
        for (Vertex b = a + 1; b < 3; ++b) {
            CHECK(tri.evenPath(a, b));
            CHECK(tri.oddPath(a, b));
        }
}

TEST_CASE("queries leave the graph unchanged and only migrate the pile") {
    auto e = LongPathEngine::forTesting(6, 1, EngineTweaks{.thresholdOverride = 1});
    Lcg rng{2024};
    for (int step = 0; step < 40; ++step) {
        Vertex u = rng.below(6);
        Vertex v = rng.below(6);
        if (u == v) continue;
        Edge edge(u, v);
        if (e.graph().hasEdge(edge)) e.erase(u, v);
        else e.insert(u, v);

        Vertex s = rng.below(6);
        Vertex t = rng.below(6);
        if (s == t) continue;

        Graph before = e.graph();
        bool hadHelper = !before.hasEdge(Edge(s, t));
        Graph hBefore = e.subgraph().graph();
        auto marksBefore = e.biconnectivity().marks();

        bool first = e.query(s, t);
        Graph after = e.graph();
        CHECK(after == before); // query purity on G

        // helper hygiene: a temporary st edge never survives nor enters H
        if (hadHelper) {
            CHECK_FALSE(after.hasEdge(Edge(s, t)));
            CHECK_FALSE(e.subgraph().hasEdge(Edge(s, t)));
        }

        // H only grows, marks only shrink
        for (Edge f : hBefore.edges()) CHECK(e.subgraph().graph().hasEdge(f));
        for (Edge f : e.biconnectivity().marks()) CHECK(marksBefore.contains(f));

        bool second = e.query(s, t);
        CHECK(first == second);
        checkPileInvariant(e);
    }
}

TEST_CASE("exhaustive micro-test against the oracle") {
    // All graphs on 4 vertices (up to 6 edges), every query pair, k in {1,2}.
    const int n = 4;
    std::vector<Edge> all;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
    for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
        Graph g(n);
        for (std::size_t i = 0; i < all.size(); ++i)
            if (mask & (1u << i)) g.addEdge(all[i]);

        for (int k = 1; k <= 2; ++k) {
            LongPathEngine lp(n, k);
            LongDetourEngine ld(n, k);
            ParityEngine pe(n);
            for (Edge e : g.edges()) {
                lp.insert(e.u, e.v);
                ld.insert(e.u, e.v);
                if (k == 1) pe.insert(e.u, e.v);
            }
            for (Vertex s = 0; s < n; ++s)
                for (Vertex t = 0; t < n; ++t) {
                    if (s == t) continue;
                    auto sum = oracle::enumeratePaths(g, s, t);
                    CHECK(lp.query(s, t) == (sum.anyPath() && sum.maxLen >= k));
                    CHECK(ld.query(s, t) == (sum.anyPath() && sum.maxLen - sum.minLen >= k));
                    if (k == 1) {
                        CHECK(pe.evenPath(s, t) == sum.hasEven);
                        CHECK(pe.oddPath(s, t) == sum.hasOdd);
                    }
                }
        }
    }
}

TEST_CASE("amortization bookkeeping: unmark consumes a previously created mark") {
    auto e = LongPathEngine::forTesting(7, 1, EngineTweaks{.thresholdOverride = 1});
    Lcg rng{555};
    for (int step = 0; step < 300; ++step) {
        Vertex u = rng.below(7);
        Vertex v = rng.below(7);
        if (u == v) continue;
        if (rng.below(3) == 0) {
            if (e.graph().hasEdge(Edge(u, v))) e.erase(u, v);
            else e.insert(u, v);
        } else if (rng.below(2)) {
            e.query(u, v);
        } else if (!e.graph().hasEdge(Edge(u, v))) {
            e.insert(u, v);
        }
        const auto& st = e.stats();
        CHECK(st.queryUnmarks <= st.marksCreated);
        CHECK(st.queryTryInserts == st.queryUnmarks + st.queryAborts);
    }
}
