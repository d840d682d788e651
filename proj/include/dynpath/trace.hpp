#ifndef DYNPATH_TRACE_HPP
#define DYNPATH_TRACE_HPP

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"

namespace dynpath {

enum class EventKind {
    Insert,
    Delete,
    QueryLongPath,
    QueryLongDetour,
    QueryEvenPath,
    QueryOddPath,
};

inline bool isQuery(EventKind k) {
    return k != EventKind::Insert && k != EventKind::Delete;
}

struct TraceEvent {
    EventKind kind;
    Vertex u;
    Vertex v;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// A replayable update/query sequence over a fixed vertex set.
struct Trace {
    int n = 0;
    std::vector<TraceEvent> events;
};

inline const char* eventOpcode(EventKind k) {
    switch (k) {
        case EventKind::Insert: return "I";
        case EventKind::Delete: return "D";
        case EventKind::QueryLongPath: return "QLP";
        case EventKind::QueryLongDetour: return "QLD";
        case EventKind::QueryEvenPath: return "QEP";
        case EventKind::QueryOddPath: return "QOP";
    }
    return "?";
}

/// Parses the line-oriented trace format:
///   N <n>
///   I u v | D u v | QLP u v | QLD u v | QEP u v | QOP u v
/// Blank lines and text after '#' are ignored.
inline Trace parseTrace(std::istream& in) {
    Trace trace;
    bool haveHeader = false;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;

        if (!haveHeader) {
            if (op != "N") throw TraceParseError(lineNo, "expected header 'N <n>'");
            long long n;
            if (!(ls >> n) || n < 0) throw TraceParseError(lineNo, "bad vertex count");
            std::string rest;
            if (ls >> rest) throw TraceParseError(lineNo, "trailing tokens after header");
            trace.n = static_cast<int>(n);
            haveHeader = true;
            continue;
        }

        EventKind kind;
        if (op == "I") kind = EventKind::Insert;
        else if (op == "D") kind = EventKind::Delete;
        else if (op == "QLP") kind = EventKind::QueryLongPath;
        else if (op == "QLD") kind = EventKind::QueryLongDetour;
        else if (op == "QEP") kind = EventKind::QueryEvenPath;
        else if (op == "QOP") kind = EventKind::QueryOddPath;
        else throw TraceParseError(lineNo, "unknown opcode '" + op + "'");

        long long u, v;
        if (!(ls >> u >> v)) throw TraceParseError(lineNo, "expected two vertex ids");
        std::string rest;
        if (ls >> rest) throw TraceParseError(lineNo, "trailing tokens after event");
        if (u < 0 || u >= trace.n || v < 0 || v >= trace.n)
            throw TraceParseError(lineNo, "vertex id out of range");
        if (u == v) throw TraceParseError(lineNo, "equal endpoints");
        trace.events.push_back({kind, static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    if (!haveHeader) throw TraceParseError(lineNo, "missing 'N <n>' header");
    return trace;
}

inline void writeTrace(const Trace& trace, std::ostream& out) {
    out << "N " << trace.n << '\n';
    for (const TraceEvent& ev : trace.events)
        out << eventOpcode(ev.kind) << ' ' << ev.u << ' ' << ev.v << '\n';
}

} // namespace dynpath

#endif
