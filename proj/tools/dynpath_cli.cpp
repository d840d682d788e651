// Trace replay, fuzzing and benchmark front-end for the dynamic path-query
// engines. Answers go to stdout (one YES/NO line per query), diagnostics to
// stderr. Exit codes: 0 ok, 2 oracle mismatch, 3 parse error, 4 illegal
// event, 1 anything else.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "dynpath/replay.hpp"
#include "dynpath/trace.hpp"

using namespace dynpath;

namespace {

int parseWeights(const std::string& spec, FuzzWeights& out) {
    int i = 0, d = 0, q = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(spec);
    if (!(ss >> i >> c1 >> d >> c2 >> q) || c1 != ':' || c2 != ':' || i < 0 || d < 0 || q < 0 ||
        i + d + q == 0) {
        std::cerr << "bad --weights, expected i:d:q with a positive sum\n";
        return 1;
    }
    out = {i, d, q};
    return 0;
}

void dumpFailure(const Trace& trace, std::size_t failedAt, const std::string& path) {
    Trace prefix = failurePrefix(trace, failedAt);
    std::ofstream out(path);
    writeTrace(prefix, out);
    std::cerr << "failing prefix written to " << path << "\n";
}

void printSummary(const ReplayResult& r) {
    std::cerr << "ops: " << (r.updates + r.queries) << " (" << r.updates << " updates, "
              << r.queries << " queries)\n"
              << "marks created: " << r.stats.marksCreated
              << ", consumed by queries: " << r.stats.queryUnmarks
              << ", abort answers: " << r.stats.queryAborts << "\n";
    if (r.updates + r.queries > 0)
        std::cerr << "wall: " << r.wallSeconds << " s, per op: "
                  << (r.wallSeconds * 1e6 / static_cast<double>(r.updates + r.queries))
                  << " us\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic long-path / detour / parity query engine"};

    std::string modeName;
    int k = 1;
    std::string tracePath;
    bool checkOracle = false;
    bool fuzz = false;
    std::uint64_t seed = 1;
    int n = 10;
    int ops = 1000;
    std::string weightsSpec = "45:25:30";
    std::string dumpPath = "failure.trace";
    std::string faultName = "none";

    app.add_option("--mode", modeName, "engine: longpath | detour | parity")->required();
    app.add_option("--k", k, "path-length parameter (ignored by parity)");
    app.add_option("--trace", tracePath, "replay this trace file");
    app.add_flag("--check-oracle", checkOracle, "verify every answer against the brute-force oracle");
    app.add_flag("--fuzz", fuzz, "generate and replay a random trace (oracle always on)");
    app.add_option("--seed", seed, "fuzz seed");
    app.add_option("--n", n, "fuzz vertex count");
    app.add_option("--ops", ops, "fuzz operation count");
    app.add_option("--weights", weightsSpec, "fuzz insert:delete:query weights");
    app.add_option("--dump", dumpPath, "where to write a failing trace prefix");
    app.add_option("--inject-fault", faultName,
                   "plant a bug for harness testing: none | threshold-2k-1 | compare-low")
        ->group("");

    CLI11_PARSE(app, argc, argv);

    RunConfig config;
    if (modeName == "longpath") config.mode = EngineMode::LongPath;
    else if (modeName == "detour") config.mode = EngineMode::Detour;
    else if (modeName == "parity") config.mode = EngineMode::Parity;
    else {
        std::cerr << "unknown --mode " << modeName << "\n";
        return 1;
    }
    config.k = k;
    config.checkOracle = checkOracle;
    config.seed = seed;
    config.n = n;
    config.ops = ops;
    if (parseWeights(weightsSpec, config.weights) != 0) return 1;

    if (faultName == "threshold-2k-1") config.tweaks.thresholdOverride = 2 * k - 1;
    else if (faultName == "compare-low") config.tweaks.compareSlack = 1;
    else if (faultName != "none") {
        std::cerr << "unknown --inject-fault " << faultName << "\n";
        return 1;
    }

    const bool haveTrace = !tracePath.empty();
    if (fuzz == haveTrace) { // both or neither
        std::cerr << "need exactly one of --trace or --fuzz\n";
        return 1;
    }

    try {
        Trace trace;
        if (fuzz) {
            config.checkOracle = true;
            trace = generateTrace(config);
        } else {
            std::ifstream in(tracePath);
            if (!in) {
                std::cerr << "cannot open " << tracePath << "\n";
                return 3;
            }
            trace = parseTrace(in);
            config.n = trace.n;
        }

        ReplayObserver printAnswers = [](std::size_t, const TraceEvent&, std::optional<bool> ans,
                                         EngineHarness&) {
            if (ans) std::cout << (*ans ? "YES" : "NO") << "\n";
        };
        ReplayResult result = replayTrace(trace, config, printAnswers);

        switch (result.status) {
            case ReplayStatus::Ok:
                if (fuzz) std::cerr << "fuzz PASS (seed " << seed << ", " << ops << " ops)\n";
                printSummary(result);
                return 0;
            case ReplayStatus::OracleMismatch:
                std::cerr << "oracle mismatch at event " << result.failedAt << ": "
                          << result.message << "\n";
                if (fuzz) std::cerr << "fuzz FAIL (seed " << seed << ")\n";
                dumpFailure(trace, result.failedAt, dumpPath);
                return 2;
            case ReplayStatus::IllegalEvent:
                std::cerr << "illegal event " << result.failedAt << ": " << result.message << "\n";
                return 4;
        }
    } catch (const TraceParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
