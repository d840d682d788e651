#ifndef DYNPATH_REPLAY_HPP
#define DYNPATH_REPLAY_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "dynpath/engines.hpp"
#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/oracle.hpp"
#include "dynpath/trace.hpp"

namespace dynpath {

enum class EngineMode { LongPath, Detour, Parity };

inline const char* modeName(EngineMode m) {
    switch (m) {
        case EngineMode::LongPath: return "longpath";
        case EngineMode::Detour: return "detour";
        case EngineMode::Parity: return "parity";
    }
    return "?";
}

struct FuzzWeights {
    int insert = 45;
    int erase = 25;
    int query = 30;
};

struct RunConfig {
    EngineMode mode = EngineMode::LongPath;
    int k = 1; // ignored by parity
    bool checkOracle = false;
    std::uint64_t seed = 1;
    int n = 10;
    int ops = 1000;
    FuzzWeights weights;
    EngineTweaks tweaks;
    oracle::Budget oracleBudget;
};

/// One engine instance behind the trace-event interface, dispatching query
/// kinds and exposing the internals the invariant checks need.
class EngineHarness {
public:
    EngineHarness(EngineMode mode, int n, int k, const EngineTweaks& tweaks = {}) : mode_(mode) {
        switch (mode) {
            case EngineMode::LongPath:
                longPath_.emplace(LongPathEngine::forTesting(n, k, tweaks));
                break;
            case EngineMode::Detour:
                detour_.emplace(LongDetourEngine::forTesting(n, k, tweaks));
                break;
            case EngineMode::Parity:
                parity_.emplace(n);
                break;
        }
    }

    EngineMode mode() const { return mode_; }

    void insert(Vertex u, Vertex v) {
        if (longPath_) longPath_->insert(u, v);
        else if (detour_) detour_->insert(u, v);
        else parity_->insert(u, v);
    }

    void erase(Vertex u, Vertex v) {
        if (longPath_) longPath_->erase(u, v);
        else if (detour_) detour_->erase(u, v);
        else parity_->erase(u, v);
    }

    bool query(const TraceEvent& ev) {
        switch (ev.kind) {
            case EventKind::QueryLongPath:
                if (!longPath_) break;
                return longPath_->query(ev.u, ev.v);
            case EventKind::QueryLongDetour:
                if (!detour_) break;
                return detour_->query(ev.u, ev.v);
            case EventKind::QueryEvenPath:
                if (!parity_) break;
                return parity_->evenPath(ev.u, ev.v);
            case EventKind::QueryOddPath:
                if (!parity_) break;
                return parity_->oddPath(ev.u, ev.v);
            default:
                throw Error("harness: not a query event");
        }
        throw Error(std::string("query kind ") + eventOpcode(ev.kind) + " not served by mode " +
                    modeName(mode_));
    }

    const Graph& graph() const {
        if (longPath_) return longPath_->graph();
        if (detour_) return detour_->graph();
        return parity_->graph();
    }

    const MarkedBiconnectivity& biconnectivity() const {
        if (longPath_) return longPath_->biconnectivity();
        if (detour_) return detour_->biconnectivity();
        return parity_->biconnectivity();
    }

    const EngineStats& stats() const {
        if (longPath_) return longPath_->stats();
        if (detour_) return detour_->stats();
        return parity_->stats();
    }

    /// Snapshot of the invariant-bounded subgraph H.
    Graph subgraphSnapshot() const {
        if (parity_) return parity_->subgraph().snapshot();
        return longPath_ ? longPath_->subgraph().graph() : detour_->subgraph().graph();
    }

    /// Treewidth structure, when this mode has one.
    const BoundedTreewidthSubgraph* treewidthSubgraph() const {
        if (longPath_) return &longPath_->subgraph();
        if (detour_) return &detour_->subgraph();
        return nullptr;
    }

private:
    EngineMode mode_;
    std::optional<LongPathEngine> longPath_;
    std::optional<LongDetourEngine> detour_;
    std::optional<ParityEngine> parity_;
};

/// Oracle answer for one query event over the current graph.
inline bool oracleAnswer(const Graph& g, const TraceEvent& ev, int k,
                         const oracle::Budget& budget) {
    oracle::PathSummary s = oracle::enumeratePaths(g, ev.u, ev.v, budget);
    switch (ev.kind) {
        case EventKind::QueryLongPath:
            return s.anyPath() && s.maxLen >= k;
        case EventKind::QueryLongDetour:
            return s.anyPath() && s.maxLen - s.minLen >= k;
        case EventKind::QueryEvenPath:
            return s.hasEven;
        case EventKind::QueryOddPath:
            return s.hasOdd;
        default:
            throw Error("oracle: not a query event");
    }
}

enum class ReplayStatus { Ok, OracleMismatch, IllegalEvent };

struct ReplayResult {
    ReplayStatus status = ReplayStatus::Ok;
    std::vector<bool> answers;
    std::size_t failedAt = 0; // event index for non-Ok statuses
    std::string message;
    EngineStats stats;
    long long updates = 0;
    long long queries = 0;
    double wallSeconds = 0.0;
};

/// Observer invoked after every successfully applied event; the answer is
/// present for query events.
using ReplayObserver =
    std::function<void(std::size_t, const TraceEvent&, std::optional<bool>, EngineHarness&)>;

/// Replays a trace; with checkOracle every query answer is verified against
/// the enumeration oracle and the first mismatch stops the run.
inline ReplayResult replayTrace(const Trace& trace, const RunConfig& config,
                                const ReplayObserver& observer = nullptr) {
    ReplayResult result;
    EngineHarness harness(config.mode, trace.n, config.k, config.tweaks);
    Graph shadow(trace.n);
    const auto start = std::chrono::steady_clock::now();

    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const TraceEvent& ev = trace.events[i];
        std::optional<bool> answer;
        try {
            switch (ev.kind) {
                case EventKind::Insert:
                    harness.insert(ev.u, ev.v);
                    if (config.checkOracle) shadow.addEdge(Edge(ev.u, ev.v));
                    ++result.updates;
                    break;
                case EventKind::Delete:
                    harness.erase(ev.u, ev.v);
                    if (config.checkOracle) shadow.removeEdge(Edge(ev.u, ev.v));
                    ++result.updates;
                    break;
                default: {
                    bool got = harness.query(ev);
                    answer = got;
                    result.answers.push_back(got);
                    ++result.queries;
                    if (config.checkOracle) {
                        bool want = oracleAnswer(shadow, ev, config.k, config.oracleBudget);
                        if (got != want) {
                            result.status = ReplayStatus::OracleMismatch;
                            result.failedAt = i;
                            result.message = std::string(eventOpcode(ev.kind)) + " " +
                                             std::to_string(ev.u) + " " + std::to_string(ev.v) +
                                             ": engine says " + (got ? "YES" : "NO") +
                                             ", oracle says " + (want ? "YES" : "NO");
                            result.stats = harness.stats();
                            return result;
                        }
                    }
                    break;
                }
            }
        } catch (const DuplicateEdgeError& err) {
            result.status = ReplayStatus::IllegalEvent;
            result.failedAt = i;
            result.message = err.what();
            return result;
        } catch (const MissingEdgeError& err) {
            result.status = ReplayStatus::IllegalEvent;
            result.failedAt = i;
            result.message = err.what();
            return result;
        } catch (const OutOfRangeError& err) {
            result.status = ReplayStatus::IllegalEvent;
            result.failedAt = i;
            result.message = err.what();
            return result;
        } catch (const EqualEndpointsError& err) {
            result.status = ReplayStatus::IllegalEvent;
            result.failedAt = i;
            result.message = err.what();
            return result;
        }
        if (observer) observer(i, ev, answer, harness);
    }

    result.stats = harness.stats();
    result.wallSeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

/// Small deterministic generator so traces are bit-stable across platforms.
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

/// Generates a legal random trace: inserts target absent pairs, deletions
/// present ones, queries distinct endpoint pairs matching the mode.
inline Trace generateTrace(const RunConfig& config) {
    Trace trace;
    trace.n = config.n;
    SplitMix rng(config.seed);
    std::set<Edge> present;
    std::vector<Edge> presentList;
    const long long allPairs = static_cast<long long>(config.n) * (config.n - 1) / 2;

    auto sampleAbsent = [&]() -> std::optional<Edge> {
        if (static_cast<long long>(present.size()) >= allPairs) return std::nullopt;
        for (int tries = 0; tries < 64; ++tries) {
            Vertex u = rng.below(config.n);
            Vertex v = rng.below(config.n);
            if (u == v) continue;
            Edge e(u, v);
            if (!present.contains(e)) return e;
        }
        // Dense fallback: collect the absent pairs and pick one directly.
        std::vector<Edge> absent;
        for (Vertex u = 0; u < config.n; ++u)
            for (Vertex v = u + 1; v < config.n; ++v)
                if (!present.contains(Edge(u, v))) absent.emplace_back(u, v);
        return absent[static_cast<std::size_t>(rng.next() % absent.size())];
    };

    for (int i = 0; i < config.ops; ++i) {
        int wi = present.size() < static_cast<std::size_t>(allPairs) ? config.weights.insert : 0;
        int wd = !presentList.empty() ? config.weights.erase : 0;
        int wq = config.n >= 2 ? config.weights.query : 0;
        int total = wi + wd + wq;
        if (total == 0) break;
        int roll = rng.below(total);
        if (roll < wi) {
            Edge e = *sampleAbsent();
            trace.events.push_back({EventKind::Insert, e.u, e.v});
            present.insert(e);
            presentList.push_back(e);
        } else if (roll < wi + wd) {
            std::size_t idx = static_cast<std::size_t>(rng.below(static_cast<int>(presentList.size())));
            Edge e = presentList[idx];
            presentList[idx] = presentList.back();
            presentList.pop_back();
            present.erase(e);
            trace.events.push_back({EventKind::Delete, e.u, e.v});
        } else {
            Vertex u = rng.below(config.n);
            Vertex v = rng.below(config.n);
            while (v == u) v = rng.below(config.n);
            EventKind kind;
            switch (config.mode) {
                case EngineMode::LongPath: kind = EventKind::QueryLongPath; break;
                case EngineMode::Detour: kind = EventKind::QueryLongDetour; break;
                case EngineMode::Parity:
                    kind = (rng.next() & 1) ? EventKind::QueryOddPath : EventKind::QueryEvenPath;
                    break;
                default: kind = EventKind::QueryLongPath; break;
            }
            trace.events.push_back({kind, u, v});
        }
    }
    return trace;
}

struct FuzzResult {
    bool pass = true;
    Trace trace;
    ReplayResult replay;
};

/// Generates a seeded legal trace and replays it with oracle checking.
inline FuzzResult fuzzRun(RunConfig config) {
    config.checkOracle = true;
    FuzzResult out;
    out.trace = generateTrace(config);
    out.replay = replayTrace(out.trace, config);
    out.pass = out.replay.status == ReplayStatus::Ok;
    return out;
}

/// The failing prefix of a trace: all events up to and including failedAt.
inline Trace failurePrefix(const Trace& trace, std::size_t failedAt) {
    Trace out;
    out.n = trace.n;
    out.events.assign(trace.events.begin(),
                      trace.events.begin() + static_cast<std::ptrdiff_t>(failedAt) + 1);
    return out;
}

} // namespace dynpath

#endif
