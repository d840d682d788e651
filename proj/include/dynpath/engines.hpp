#ifndef DYNPATH_ENGINES_HPP
#define DYNPATH_ENGINES_HPP

#include <cstdint>
#include <optional>
#include <utility>

#include "dynpath/biconnectivity.hpp"
#include "dynpath/bipartite.hpp"
#include "dynpath/bounded_tw.hpp"
#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"

namespace dynpath {

struct EngineStats {
    long long marksCreated = 0;    // rejected insertions parked in the pile
    long long queryTryInserts = 0; // pile re-insertion attempts during queries
    long long queryUnmarks = 0;    // pile edges migrated into the subgraph
    long long queryAborts = 0;     // queries answered Yes from the abort branch
};

/// Test-only knobs. Production engines use the fixed thresholds derived
/// from k; the fuzz harness uses these to plant bugs it must then find.
struct EngineTweaks {
    int thresholdOverride = -1; // inner structure threshold, -1 = derived
    int compareSlack = 0;       // final comparison uses k - compareSlack
};

namespace endetail {

/// Shared skeleton of the three engines: a marked biconnectivity structure
/// over the full graph G plus an invariant-bounded inner structure over a
/// subgraph H. Edges rejected by the inner structure are marked in bc; a
/// query retries the marked edges in the biconnected component of its
/// endpoints until the pile is drained or an insertion aborts.
template <typename Inner>
class DelayedInsertionCore {
public:
    DelayedInsertionCore(int n, Inner inner) : bc_(n), inner_(std::move(inner)) {}

    const Graph& graph() const { return bc_.graph(); }
    const MarkedBiconnectivity& biconnectivity() const { return bc_; }
    const Inner& inner() const { return inner_; }
    const EngineStats& stats() const { return stats_; }

    void insert(Edge e) {
        bc_.insert(e);
        if (inner_.tryInsert(e) == InsertOutcome::Aborted) {
            bc_.mark(e);
            ++stats_.marksCreated;
        }
    }

    void erase(Edge e) {
        bc_.erase(e); // discards any mark on e
        if (inner_.hasEdge(e)) inner_.erase(e);
    }

    /// Runs the marked-edge migration loop for a query with endpoints (s,t).
    /// Returns true when an insertion aborted (the query answers Yes).
    bool migrate(Vertex s, Vertex t) {
        graph().checkVertex(s);
        graph().checkVertex(t);
        if (s == t) throw EqualEndpointsError("query: equal endpoints");
        const Edge st(s, t);

        struct HelperGuard {
            MarkedBiconnectivity* bc;
            Edge e;
            bool active;
            ~HelperGuard() {
                if (active) bc->erase(e);
            }
        } helper{&bc_, st, false};
        if (!graph().hasEdge(st)) {
            bc_.insert(st);
            helper.active = true;
        }

        while (true) {
            std::optional<Edge> e = bc_.findMarkedEdge(st);
            if (!e) break;
            ++stats_.queryTryInserts;
            if (inner_.tryInsert(*e) == InsertOutcome::Aborted) {
                ++stats_.queryAborts;
                return true;
            }
            bc_.unmark(*e);
            ++stats_.queryUnmarks;
        }
        return false;
    }

private:
    MarkedBiconnectivity bc_;
    Inner inner_;
    EngineStats stats_;
};

inline int requireK(int k) {
    if (k < 1) throw OutOfRangeError("engine parameter k must be at least 1");
    return k;
}

} // namespace endetail

/// Decides "is there a simple (s,t)-path of length at least k" under edge
/// insertions and deletions. Maintains a subgraph H with tw(H) <= 2k; a query
/// whose biconnected component cannot fit inside the width bound is a Yes.
class LongPathEngine {
public:
    LongPathEngine(int n, int k)
        : k_(endetail::requireK(k)),
          compareAt_(k),
          core_(n, BoundedTreewidthSubgraph(n, 2 * k)) {}

    static LongPathEngine forTesting(int n, int k, const EngineTweaks& tweaks) {
        return LongPathEngine(n, k, tweaks);
    }

    int k() const { return k_; }
    int threshold() const { return core_.inner().threshold(); }
    const Graph& graph() const { return core_.graph(); }
    const MarkedBiconnectivity& biconnectivity() const { return core_.biconnectivity(); }
    const BoundedTreewidthSubgraph& subgraph() const { return core_.inner(); }
    const EngineStats& stats() const { return core_.stats(); }

    void insert(Vertex u, Vertex v) { core_.insert(Edge(u, v)); }
    void erase(Vertex u, Vertex v) { core_.erase(Edge(u, v)); }

    bool query(Vertex s, Vertex t) {
        if (core_.migrate(s, t)) return true;
        std::int64_t len = core_.inner().longestPath(s, t);
        return len != kMinusInfinity && len >= compareAt_;
    }

private:
    LongPathEngine(int n, int k, const EngineTweaks& tweaks)
        : k_(endetail::requireK(k)),
          compareAt_(k - tweaks.compareSlack),
          core_(n, BoundedTreewidthSubgraph(
                       n, tweaks.thresholdOverride >= 0 ? tweaks.thresholdOverride : 2 * k)) {}

    int k_;
    int compareAt_;
    endetail::DelayedInsertionCore<BoundedTreewidthSubgraph> core_;
};

/// Decides "is there a simple (s,t)-path of length at least dist(s,t) + k".
/// Same skeleton as LongPathEngine with a wider bound, tw(H) <= 32k + 47, and
/// the final answer compares longest minus shortest path length against k.
class LongDetourEngine {
public:
    LongDetourEngine(int n, int k)
        : k_(endetail::requireK(k)),
          compareAt_(k),
          core_(n, BoundedTreewidthSubgraph(n, 32 * k + 47)) {}

    static LongDetourEngine forTesting(int n, int k, const EngineTweaks& tweaks) {
        return LongDetourEngine(n, k, tweaks);
    }

    int k() const { return k_; }
    int threshold() const { return core_.inner().threshold(); }
    const Graph& graph() const { return core_.graph(); }
    const MarkedBiconnectivity& biconnectivity() const { return core_.biconnectivity(); }
    const BoundedTreewidthSubgraph& subgraph() const { return core_.inner(); }
    const EngineStats& stats() const { return core_.stats(); }

    void insert(Vertex u, Vertex v) { core_.insert(Edge(u, v)); }
    void erase(Vertex u, Vertex v) { core_.erase(Edge(u, v)); }

    bool query(Vertex s, Vertex t) {
        if (core_.migrate(s, t)) return true;
        std::int64_t longest = core_.inner().longestPath(s, t);
        std::int64_t shortest = core_.inner().shortestPath(s, t);
        if (longest == kMinusInfinity || shortest == kPlusInfinity) return false;
        return longest - shortest >= compareAt_;
    }

private:
    LongDetourEngine(int n, int k, const EngineTweaks& tweaks)
        : k_(endetail::requireK(k)),
          compareAt_(k - tweaks.compareSlack),
          core_(n, BoundedTreewidthSubgraph(n, tweaks.thresholdOverride >= 0
                                                   ? tweaks.thresholdOverride
                                                   : 32 * k + 47)) {}

    int k_;
    int compareAt_;
    endetail::DelayedInsertionCore<BoundedTreewidthSubgraph> core_;
};

/// Decides whether an (s,t)-path of even (resp. odd) length exists. Maintains
/// a bipartite subgraph H; a query whose biconnected component is not
/// bipartite has paths of both parities and answers Yes directly.
class ParityEngine {
public:
    explicit ParityEngine(int n) : core_(n, DynamicBipartite(n)) {}

    const Graph& graph() const { return core_.graph(); }
    const MarkedBiconnectivity& biconnectivity() const { return core_.biconnectivity(); }
    const DynamicBipartite& subgraph() const { return core_.inner(); }
    const EngineStats& stats() const { return core_.stats(); }

    void insert(Vertex u, Vertex v) { core_.insert(Edge(u, v)); }
    void erase(Vertex u, Vertex v) { core_.erase(Edge(u, v)); }

    bool evenPath(Vertex s, Vertex t) {
        if (core_.migrate(s, t)) return true;
        return core_.inner().evenPath(s, t);
    }

    bool oddPath(Vertex s, Vertex t) {
        if (core_.migrate(s, t)) return true;
        return core_.inner().oddPath(s, t);
    }

private:
    endetail::DelayedInsertionCore<DynamicBipartite> core_;
};

} // namespace dynpath

#endif
