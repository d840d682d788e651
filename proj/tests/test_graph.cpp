#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dynpath/graph.hpp"
#include "dynpath/trace.hpp"

using namespace dynpath;

TEST_CASE("edge canonical form and self-loop rejection") {
    Edge e(3, 1);
    CHECK(e.u == 1);
    CHECK(e.v == 3);
    CHECK(Edge(1, 3) == e);
    CHECK_THROWS_AS(Edge(2, 2), SelfLoopError);
}

TEST_CASE("addEdge base cases") {
    Graph g(3);
    g.addEdge(Edge(0, 1));
    CHECK(g.edgeCount() == 1);
    CHECK(g.hasEdge(Edge(0, 1)));
    CHECK_THROWS_AS(g.addEdge(Edge(0, 1)), DuplicateEdgeError);

    g.addEdge(Edge(1, 2));
    g.addEdge(Edge(0, 2)); // path closes into a triangle
    CHECK(g.edgeCount() == 3);
}

TEST_CASE("removeEdge base cases") {
    Graph g(3);
    g.addEdge(Edge(0, 1));
    g.addEdge(Edge(1, 2));
    g.addEdge(Edge(0, 2));
    g.removeEdge(Edge(0, 2));
    CHECK(g.edgeCount() == 2);
    CHECK_FALSE(g.hasEdge(Edge(0, 2)));

    Graph single(2);
    single.addEdge(Edge(0, 1));
    single.removeEdge(Edge(0, 1));
    CHECK(single.edgeCount() == 0);
    CHECK_THROWS_AS(single.removeEdge(Edge(0, 1)), MissingEdgeError);
}

TEST_CASE("hasEdge and vertex range checks") {
    Graph g(4);
    g.addEdge(Edge(0, 1));
    g.addEdge(Edge(1, 2));
    CHECK(g.hasEdge(Edge(0, 1)));
    CHECK_FALSE(g.hasEdge(Edge(0, 3)));
    CHECK_FALSE(g.hasEdge(Edge(0, 2)));
    CHECK_THROWS_AS(g.hasEdge(Edge(0, 7)), OutOfRangeError);
}

TEST_CASE("adjacency stays symmetric under random churn") {
    Graph g(8);
    std::uint64_t state = 12345;
    auto rnd = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int step = 0; step < 500; ++step) {
        Vertex u = static_cast<Vertex>(rnd() % 8);
        Vertex v = static_cast<Vertex>(rnd() % 8);
        if (u == v) continue;
        Edge e(u, v);
        if (g.hasEdge(e)) g.removeEdge(e);
        else g.addEdge(e);

        for (Vertex a = 0; a < 8; ++a)
            for (Vertex b : g.neighbors(a)) {
                const auto& nb = g.neighbors(b);
                CHECK(std::binary_search(nb.begin(), nb.end(), a));
            }
        int degSum = 0;
        for (Vertex a = 0; a < 8; ++a) degSum += g.degree(a);
        CHECK(degSum == 2 * g.edgeCount());
    }
}

TEST_CASE("replaying a trace and its inverse returns to the edgeless graph") {
    Graph g(6);
    std::vector<Edge> inserted;
    std::uint64_t state = 99;
    auto rnd = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    for (int step = 0; step < 12; ++step) {
        Vertex u = static_cast<Vertex>(rnd() % 6);
        Vertex v = static_cast<Vertex>(rnd() % 6);
        if (u == v) continue;
        Edge e(u, v);
        if (!g.hasEdge(e)) {
            g.addEdge(e);
            inserted.push_back(e);
        }
    }
    for (auto it = inserted.rbegin(); it != inserted.rend(); ++it) g.removeEdge(*it);
    CHECK(g == Graph(6));
}

TEST_CASE("trace round-trip and parse errors") {
    const char* text =
        "# demo\n"
        "N 5\n"
        "\n"
        "I 0 1\n"
        "I 1 2   # grow the path\n"
        "QLP 0 2\n"
        "D 0 1\n"
        "QEP 1 2\n"
        "QOP 1 2\n"
        "QLD 1 2\n";
    std::istringstream in(text);
    Trace t = parseTrace(in);
    CHECK(t.n == 5);
    REQUIRE(t.events.size() == 7);
    CHECK(t.events[0] == TraceEvent{EventKind::Insert, 0, 1});
    CHECK(t.events[2] == TraceEvent{EventKind::QueryLongPath, 0, 2});
    CHECK(t.events[4] == TraceEvent{EventKind::QueryEvenPath, 1, 2});

    std::ostringstream out;
    writeTrace(t, out);
    std::istringstream in2(out.str());
    Trace t2 = parseTrace(in2);
    CHECK(t2.n == t.n);
    CHECK(t2.events == t.events);
}

TEST_CASE("trace parser rejects malformed input") {
    auto parse = [](const char* s) {
        std::istringstream in(s);
        return parseTrace(in);
    };
    CHECK_THROWS_AS(parse("I 0 1\n"), TraceParseError);        // missing header
    CHECK_THROWS_AS(parse("N 3\nX 0 1\n"), TraceParseError);   // unknown opcode
    CHECK_THROWS_AS(parse("N 3\nI 0 3\n"), TraceParseError);   // out of range
    CHECK_THROWS_AS(parse("N 3\nI 1 1\n"), TraceParseError);   // equal endpoints
    CHECK_THROWS_AS(parse("N 3\nI 0\n"), TraceParseError);     // missing operand
    CHECK_THROWS_AS(parse("N 3\nI 0 1 2\n"), TraceParseError); // trailing token
}
