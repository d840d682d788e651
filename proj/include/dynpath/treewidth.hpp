#ifndef DYNPATH_TREEWIDTH_HPP
#define DYNPATH_TREEWIDTH_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dynpath/biconnectivity.hpp"
#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"
#include "dynpath/tree_decomposition.hpp"

namespace dynpath {

struct TreewidthBudget {
    long long maxExpansions = 20'000'000; // elimination steps in the exact search
    int directSearchLimit = 22;           // kernel size beyond which separators are tried first
};

inline std::optional<TreeDecomposition> decomposeWidthAtMost(const Graph& g, int t,
                                                             const TreewidthBudget& budget);

namespace twdetail {

/// One elimination step: vertex and its neighborhood at elimination time.
struct ElimEntry {
    Vertex v;
    std::vector<Vertex> nbrs;
};

struct BitKey {
    std::vector<std::uint64_t> words;
    friend bool operator==(const BitKey&, const BitKey&) = default;
};

struct BitKeyHash {
    std::size_t operator()(const BitKey& k) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint64_t w : k.words) {
            h ^= w;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Exhaustive decision for kernels of at most 64 vertices: DFS over the
/// lattice of eliminated subsets with bitmask adjacency, failed-state
/// memoization on the subset word, and a contraction lower bound pruning the
/// shallow levels. Produces an elimination order on success.
class BitsetKernelSearch {
public:
    BitsetKernelSearch(std::vector<std::uint64_t> adjacency, int t, long long& expansions,
                       long long maxExpansions)
        : adj_(std::move(adjacency)),
          n_(static_cast<int>(adj_.size())),
          t_(t),
          expansions_(expansions),
          maxExpansions_(maxExpansions) {
        all_ = n_ == 64 ? ~0ULL : ((1ULL << n_) - 1);
    }

    /// Elimination order (vertex, neighborhood mask at elimination), or
    /// nullopt when no width <= t order exists.
    std::optional<std::vector<std::pair<int, std::uint64_t>>> run() {
        if (search(0)) return order_;
        return std::nullopt;
    }

private:
    static int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

    bool simplicial(int v, std::uint64_t nb) const {
        for (std::uint64_t rest = nb; rest;) {
            int w = __builtin_ctzll(rest);
            rest &= rest - 1;
            if ((nb & ~(1ULL << w)) & ~adj_[static_cast<std::size_t>(w)]) return false;
        }
        return true;
    }

    void eliminate(int v, std::uint64_t nb) {
        Undo u;
        u.v = v;
        u.nb = nb;
        for (std::uint64_t rest = nb; rest;) {
            int a = __builtin_ctzll(rest);
            rest &= rest - 1;
            std::uint64_t missing = nb & ~(1ULL << a) & ~adj_[static_cast<std::size_t>(a)];
            u.added[static_cast<std::size_t>(a)] = missing;
            adj_[static_cast<std::size_t>(a)] |= missing;
            adj_[static_cast<std::size_t>(a)] &= ~(1ULL << v);
        }
        // mirror fill edges
        for (std::uint64_t rest = nb; rest;) {
            int a = __builtin_ctzll(rest);
            rest &= rest - 1;
            for (std::uint64_t add = u.added[static_cast<std::size_t>(a)]; add;) {
                int b = __builtin_ctzll(add);
                add &= add - 1;
                adj_[static_cast<std::size_t>(b)] |= 1ULL << a;
            }
        }
        adj_[static_cast<std::size_t>(v)] = 0;
        eliminated_ |= 1ULL << v;
        order_.emplace_back(v, nb);
        undo_.push_back(u);
    }

    void undoLast() {
        Undo u = undo_.back();
        undo_.pop_back();
        order_.pop_back();
        eliminated_ &= ~(1ULL << u.v);
        adj_[static_cast<std::size_t>(u.v)] = u.nb;
        for (std::uint64_t rest = u.nb; rest;) {
            int a = __builtin_ctzll(rest);
            rest &= rest - 1;
            for (std::uint64_t add = u.added[static_cast<std::size_t>(a)]; add;) {
                int b = __builtin_ctzll(add);
                add &= add - 1;
                adj_[static_cast<std::size_t>(b)] &= ~(1ULL << a);
            }
            adj_[static_cast<std::size_t>(a)] &= ~u.added[static_cast<std::size_t>(a)];
            adj_[static_cast<std::size_t>(a)] |= 1ULL << u.v;
        }
    }

    /// Contraction lower bound of the remaining fill graph: contract a
    /// minimum-degree vertex into its least-degree neighbor; the largest
    /// minimum degree seen bounds the treewidth from below.
    int contractionBound() const {
        std::vector<std::uint64_t> adj = adj_;
        std::uint64_t alive = all_ & ~eliminated_;
        int lb = 0;
        while (popcount(alive) > 1) {
            int v = -1, dv = 1 << 30;
            for (std::uint64_t rest = alive; rest;) {
                int x = __builtin_ctzll(rest);
                rest &= rest - 1;
                int d = popcount(adj[static_cast<std::size_t>(x)]);
                if (d < dv) {
                    dv = d;
                    v = x;
                }
            }
            lb = std::max(lb, dv);
            if (lb > t_) return lb;
            if (dv == 0) {
                alive &= ~(1ULL << v);
                continue;
            }
            int u = -1, du = 1 << 30;
            for (std::uint64_t rest = adj[static_cast<std::size_t>(v)]; rest;) {
                int w = __builtin_ctzll(rest);
                rest &= rest - 1;
                int d = popcount(adj[static_cast<std::size_t>(w)]);
                if (d < du) {
                    du = d;
                    u = w;
                }
            }
            // contract v into u
            std::uint64_t nb = adj[static_cast<std::size_t>(v)];
            for (std::uint64_t rest = nb; rest;) {
                int w = __builtin_ctzll(rest);
                rest &= rest - 1;
                adj[static_cast<std::size_t>(w)] &= ~(1ULL << v);
            }
            std::uint64_t merged = (adj[static_cast<std::size_t>(u)] | nb) & ~(1ULL << u) & ~(1ULL << v);
            adj[static_cast<std::size_t>(u)] = merged;
            for (std::uint64_t rest = merged; rest;) {
                int w = __builtin_ctzll(rest);
                rest &= rest - 1;
                adj[static_cast<std::size_t>(w)] |= 1ULL << u;
            }
            adj[static_cast<std::size_t>(v)] = 0;
            alive &= ~(1ULL << v);
        }
        return lb;
    }

    bool search(int depth) {
        if (eliminated_ == all_) return true;
        if (failed_.contains(eliminated_)) return false;
        if (++expansions_ > maxExpansions_)
            throw TooLargeError("treewidth search budget exhausted");

        if (depth <= 2 && contractionBound() > t_) {
            failed_.insert(eliminated_);
            return false;
        }

        // Forced move: a simplicial vertex can always go first.
        for (std::uint64_t rest = all_ & ~eliminated_; rest;) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            std::uint64_t nb = adj_[static_cast<std::size_t>(v)];
            if (!simplicial(v, nb)) continue;
            if (popcount(nb) > t_) {
                failed_.insert(eliminated_);
                return false;
            }
            eliminate(v, nb);
            bool ok = search(depth + 1);
            if (ok) return true;
            undoLast();
            failed_.insert(eliminated_);
            return false;
        }

        std::vector<std::pair<int, int>> candidates;
        for (std::uint64_t rest = all_ & ~eliminated_; rest;) {
            int v = __builtin_ctzll(rest);
            rest &= rest - 1;
            int d = popcount(adj_[static_cast<std::size_t>(v)]);
            if (d <= t_) candidates.emplace_back(d, v);
        }
        std::sort(candidates.begin(), candidates.end());
        for (auto [d, v] : candidates) {
            eliminate(v, adj_[static_cast<std::size_t>(v)]);
            if (search(depth + 1)) return true;
            undoLast();
        }
        failed_.insert(eliminated_);
        return false;
    }

    struct Undo {
        int v;
        std::uint64_t nb;
        std::array<std::uint64_t, 64> added{};
    };

    std::vector<std::uint64_t> adj_;
    int n_;
    int t_;
    long long& expansions_;
    long long maxExpansions_;
    std::uint64_t all_;
    std::uint64_t eliminated_ = 0;
    std::vector<std::pair<int, std::uint64_t>> order_;
    std::vector<Undo> undo_;
    std::unordered_set<std::uint64_t> failed_;
};

/// Tree decomposition from a complete elimination order: bag(i) is the
/// eliminated vertex plus its recorded neighborhood, parented on the
/// first-eliminated neighbor.
inline TreeDecomposition fromElimination(const std::vector<ElimEntry>& order) {
    TreeDecomposition td;
    std::vector<std::pair<Vertex, int>> position;
    position.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::vector<Vertex> bag = order[i].nbrs;
        bag.push_back(order[i].v);
        td.addNode(-1, std::move(bag));
        position.emplace_back(order[i].v, static_cast<int>(i));
    }
    std::sort(position.begin(), position.end());
    auto posOf = [&](Vertex v) {
        return std::lower_bound(position.begin(), position.end(), std::make_pair(v, -1))->second;
    };
    int firstRoot = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i].nbrs.empty()) {
            // component root; chain extra roots under the first
            if (firstRoot == -1) firstRoot = static_cast<int>(i);
            else td.nodes[i].parent = firstRoot;
            continue;
        }
        int best = 1 << 30;
        for (Vertex w : order[i].nbrs) best = std::min(best, posOf(w));
        td.nodes[i].parent = best;
    }
    return td;
}

/// Reverse-replays reduction records onto a decomposition of the reduced
/// graph: each eliminated vertex hangs off a bag containing its recorded
/// clique neighborhood (such a bag exists by clique containment).
inline void attachReductions(TreeDecomposition& td, const std::vector<ElimEntry>& reductions) {
    // occurrence lists for host-bag lookups
    std::unordered_map<Vertex, std::vector<int>> occ;
    for (int x = 0; x < td.size(); ++x)
        for (Vertex v : td.nodes[static_cast<std::size_t>(x)].bag) occ[v].push_back(x);

    for (auto it = reductions.rbegin(); it != reductions.rend(); ++it) {
        int host = -1;
        if (it->nbrs.empty()) {
            host = td.size() == 0 ? -1 : 0;
        } else {
            for (int cand : occ[it->nbrs.front()]) {
                const auto& bag = td.nodes[static_cast<std::size_t>(cand)].bag;
                bool all = true;
                for (Vertex c : it->nbrs)
                    if (!std::binary_search(bag.begin(), bag.end(), c)) {
                        all = false;
                        break;
                    }
                if (all) {
                    host = cand;
                    break;
                }
            }
            if (host == -1) throw Error("treewidth: no host bag for a reduction record");
        }
        std::vector<Vertex> bag = it->nbrs;
        bag.push_back(it->v);
        int node = td.addNode(host, std::move(bag));
        for (Vertex v : td.nodes[static_cast<std::size_t>(node)].bag) occ[v].push_back(node);
    }
}

/// Flips the parent pointers on the path from `node` to its root, making
/// `node` the root of its tree.
inline void rerootAt(TreeDecomposition& td, int node) {
    std::vector<int> chain;
    for (int x = node; x != -1; x = td.nodes[static_cast<std::size_t>(x)].parent)
        chain.push_back(x);
    for (std::size_t i = chain.size(); i-- > 1;)
        td.nodes[static_cast<std::size_t>(chain[i])].parent = chain[i - 1];
    td.nodes[static_cast<std::size_t>(node)].parent = -1;
}

/// Appends `piece` into `td`, returning the index offset.
inline int appendDecomposition(TreeDecomposition& td, const TreeDecomposition& piece) {
    int offset = td.size();
    for (const auto& node : piece.nodes) {
        td.nodes.push_back(node);
        if (td.nodes.back().parent != -1) td.nodes.back().parent += offset;
    }
    return offset;
}

/// Decides tw <= t for one connected block and produces a witness
/// decomposition over the block's original vertex ids. Pipeline: safe
/// reductions, cheap bounds, greedy elimination, then either an exhaustive
/// elimination search or a safe-separator split into recursively solved
/// pieces.
class BlockSolver {
public:
    BlockSolver(const std::vector<Edge>& blockEdges, int t, const TreewidthBudget& budget,
                long long& expansions)
        : t_(t), budget_(budget), expansions_(expansions) {
        for (Edge e : blockEdges) {
            localId(e.u);
            localId(e.v);
        }
        adj_.resize(toOriginal_.size());
        for (Edge e : blockEdges) {
            int a = localId(e.u), b = localId(e.v);
            addArc(a, b);
            addArc(b, a);
        }
        alive_.assign(toOriginal_.size(), 1);
        remaining_ = static_cast<int>(toOriginal_.size());
        key_.words.assign((toOriginal_.size() + 63) / 64, 0);
    }

    std::optional<TreeDecomposition> solve() {
        if (!reduce()) return std::nullopt;
        if (remaining_ == 0) return fromElimination(originalRecords());
        if (t_ <= 1) return std::nullopt; // leftover kernel contains a cycle
        if (edgeCountBoundExceeded()) return std::nullopt;
        if (contractionLowerBound() > t_) return std::nullopt;
        if (greedyFinish()) return fromElimination(originalRecords());

        if (remaining_ > budget_.directSearchLimit) {
            std::optional<TreeDecomposition> split;
            switch (solveBySeparator(split)) {
                case SplitOutcome::Fits: return split;
                case SplitOutcome::Exceeds: return std::nullopt;
                case SplitOutcome::NotApplicable: break;
            }
        }

        if (remaining_ <= 64) return bitsetSolve();
        if (!search()) return std::nullopt;
        return fromElimination(originalRecords());
    }

private:
    enum class SplitOutcome { NotApplicable, Fits, Exceeds };
    struct Step {
        int v;
        std::vector<int> nbrs;
        std::vector<std::pair<int, int>> fills;
    };

    int localId(Vertex v) {
        auto [it, inserted] = localOf_.emplace(v, static_cast<int>(toOriginal_.size()));
        if (inserted) toOriginal_.push_back(v);
        return it->second;
    }

    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    bool hasArc(int a, int b) const {
        const auto& nb = adj_[static_cast<std::size_t>(a)];
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    void addArc(int a, int b) {
        auto& nb = adj_[static_cast<std::size_t>(a)];
        nb.insert(std::lower_bound(nb.begin(), nb.end(), b), b);
    }

    void dropArc(int a, int b) {
        auto& nb = adj_[static_cast<std::size_t>(a)];
        nb.erase(std::lower_bound(nb.begin(), nb.end(), b));
    }

    bool isSimplicial(int v) const {
        const auto& nb = adj_[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!hasArc(nb[i], nb[j])) return false;
        return true;
    }

    std::vector<ElimEntry> originalRecords() const {
        std::vector<ElimEntry> out;
        out.reserve(order_.size());
        for (const Step& s : order_) {
            ElimEntry e;
            e.v = toOriginal_[static_cast<std::size_t>(s.v)];
            for (int w : s.nbrs) e.nbrs.push_back(toOriginal_[static_cast<std::size_t>(w)]);
            out.push_back(std::move(e));
        }
        return out;
    }

    /// Kernel decision on the bitmask fast path (kernels up to 64 vertices).
    std::optional<TreeDecomposition> bitsetSolve() {
        std::vector<int> bitToLocal;
        std::vector<int> localToBit(alive_.size(), -1);
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
            if (alive_[static_cast<std::size_t>(v)]) {
                localToBit[static_cast<std::size_t>(v)] = static_cast<int>(bitToLocal.size());
                bitToLocal.push_back(v);
            }
        std::vector<std::uint64_t> rows(bitToLocal.size(), 0);
        for (std::size_t b = 0; b < bitToLocal.size(); ++b)
            for (int w : adj_[static_cast<std::size_t>(bitToLocal[b])])
                rows[b] |= 1ULL << localToBit[static_cast<std::size_t>(w)];

        BitsetKernelSearch kernelSearch(std::move(rows), t_, expansions_, budget_.maxExpansions);
        auto kernelOrder = kernelSearch.run();
        if (!kernelOrder) return std::nullopt;

        std::vector<ElimEntry> records = originalRecords();
        for (auto [bit, mask] : *kernelOrder) {
            ElimEntry e;
            e.v = toOriginal_[static_cast<std::size_t>(bitToLocal[static_cast<std::size_t>(bit)])];
            for (std::uint64_t rest = mask; rest;) {
                int w = __builtin_ctzll(rest);
                rest &= rest - 1;
                e.nbrs.push_back(
                    toOriginal_[static_cast<std::size_t>(bitToLocal[static_cast<std::size_t>(w)])]);
            }
            records.push_back(std::move(e));
        }
        return fromElimination(records);
    }

    void eliminate(int v) {
        Step step;
        step.v = v;
        step.nbrs = adj_[static_cast<std::size_t>(v)];
        for (int w : step.nbrs) dropArc(w, v);
        for (std::size_t i = 0; i < step.nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < step.nbrs.size(); ++j) {
                int a = step.nbrs[i], b = step.nbrs[j];
                if (!hasArc(a, b)) {
                    addArc(a, b);
                    addArc(b, a);
                    step.fills.emplace_back(a, b);
                }
            }
        adj_[static_cast<std::size_t>(v)].clear();
        alive_[static_cast<std::size_t>(v)] = 0;
        key_.words[static_cast<std::size_t>(v) / 64] |= 1ULL << (v % 64);
        --remaining_;
        order_.push_back(std::move(step));
    }

    void undoLast() {
        Step step = std::move(order_.back());
        order_.pop_back();
        for (auto [a, b] : step.fills) {
            dropArc(a, b);
            dropArc(b, a);
        }
        adj_[static_cast<std::size_t>(step.v)] = step.nbrs;
        for (int w : step.nbrs) addArc(w, step.v);
        alive_[static_cast<std::size_t>(step.v)] = 1;
        key_.words[static_cast<std::size_t>(step.v) / 64] &= ~(1ULL << (step.v % 64));
        ++remaining_;
    }

    /// Safe reductions: isolated and pendant vertices, degree-2 vertices when
    /// t >= 2, and simplicial vertices. A simplicial vertex of degree > t
    /// certifies tw > t. Returns false on such a certificate.
    bool reduce() {
        bool progress = true;
        while (remaining_ > 0 && progress) {
            progress = false;
            for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
                if (!alive_[static_cast<std::size_t>(v)]) continue;
                int d = degree(v);
                if (d <= 2 && d <= t_) {
                    eliminate(v);
                    progress = true;
                } else if (d <= 2 && isSimplicial(v)) {
                    return false; // tw >= d > t
                }
            }
            if (!progress) {
                // One simplicial pass once cheap degrees are exhausted.
                for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
                    if (!alive_[static_cast<std::size_t>(v)]) continue;
                    if (isSimplicial(v)) {
                        if (degree(v) > t_) return false;
                        eliminate(v);
                        progress = true;
                        break;
                    }
                }
            }
        }
        return true;
    }

    /// Graphs of treewidth <= t have at most t*n - t(t+1)/2 edges.
    bool edgeCountBoundExceeded() const {
        long long n = remaining_;
        if (n <= t_ + 1) return false;
        long long m = 0;
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
            if (alive_[static_cast<std::size_t>(v)]) m += degree(v);
        m /= 2;
        return m > t_ * n - static_cast<long long>(t_) * (t_ + 1) / 2;
    }

    /// Contraction-based lower bound: repeatedly contract a minimum-degree
    /// vertex into its least-degree neighbor; the largest minimum degree seen
    /// is a treewidth lower bound.
    int contractionLowerBound() const {
        std::vector<std::set<int>> adj;
        std::vector<int> ids;
        std::vector<int> pos(alive_.size(), -1);
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
            if (alive_[static_cast<std::size_t>(v)]) {
                pos[static_cast<std::size_t>(v)] = static_cast<int>(ids.size());
                ids.push_back(v);
            }
        adj.resize(ids.size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (int w : adj_[static_cast<std::size_t>(ids[i])])
                adj[i].insert(pos[static_cast<std::size_t>(w)]);

        int lb = 0;
        std::vector<char> live(ids.size(), 1);
        int left = static_cast<int>(ids.size());
        while (left > 1) {
            int v = -1, dv = 1 << 30;
            for (int x = 0; x < static_cast<int>(ids.size()); ++x)
                if (live[static_cast<std::size_t>(x)] &&
                    static_cast<int>(adj[static_cast<std::size_t>(x)].size()) < dv) {
                    dv = static_cast<int>(adj[static_cast<std::size_t>(x)].size());
                    v = x;
                }
            lb = std::max(lb, dv);
            if (dv == 0) {
                live[static_cast<std::size_t>(v)] = 0;
                --left;
                continue;
            }
            int u = -1, du = 1 << 30;
            for (int w : adj[static_cast<std::size_t>(v)])
                if (static_cast<int>(adj[static_cast<std::size_t>(w)].size()) < du) {
                    du = static_cast<int>(adj[static_cast<std::size_t>(w)].size());
                    u = w;
                }
            for (int w : adj[static_cast<std::size_t>(v)]) {
                adj[static_cast<std::size_t>(w)].erase(v);
                if (w != u) {
                    adj[static_cast<std::size_t>(w)].insert(u);
                    adj[static_cast<std::size_t>(u)].insert(w);
                }
            }
            adj[static_cast<std::size_t>(v)].clear();
            live[static_cast<std::size_t>(v)] = 0;
            --left;
        }
        return lb;
    }

    /// Min-fill greedy attempt; succeeds for most instances that fit.
    bool greedyFinish() {
        std::size_t checkpoint = order_.size();
        while (remaining_ > 0) {
            int best = -1;
            long long bestScore = -1;
            for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
                if (!alive_[static_cast<std::size_t>(v)]) continue;
                if (degree(v) > t_) continue;
                long long score = fillCount(v) * 1024 + degree(v);
                if (best == -1 || score < bestScore) {
                    best = v;
                    bestScore = score;
                }
            }
            if (best == -1) {
                while (order_.size() > checkpoint) undoLast();
                return false;
            }
            eliminate(best);
        }
        return true;
    }

    long long fillCount(int v) const {
        const auto& nb = adj_[static_cast<std::size_t>(v)];
        long long fill = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!hasArc(nb[i], nb[j])) ++fill;
        return fill;
    }

    /// Safe-separator split: a two-vertex separator whose removal leaves
    /// components all adjacent to both separator vertices decomposes the
    /// kernel; each piece (completed with the separator edge) is a minor of
    /// the kernel, so treewidth is the maximum over the pieces. Pieces are
    /// solved through the full pipeline recursively and their decompositions
    /// glued at a bag containing the separator pair.
    SplitOutcome solveBySeparator(std::optional<TreeDecomposition>& out) {
        // kernel as a standalone graph
        std::vector<int> kernelIds;
        std::vector<int> kpos(alive_.size(), -1);
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
            if (alive_[static_cast<std::size_t>(v)]) {
                kpos[static_cast<std::size_t>(v)] = static_cast<int>(kernelIds.size());
                kernelIds.push_back(v);
            }
        const int kn = static_cast<int>(kernelIds.size());
        Graph kernel(kn);
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
            if (!alive_[static_cast<std::size_t>(v)]) continue;
            for (int w : adj_[static_cast<std::size_t>(v)])
                if (w > v)
                    kernel.addEdge(Edge(kpos[static_cast<std::size_t>(v)],
                                        kpos[static_cast<std::size_t>(w)]));
        }

        auto separator = findBalancedSeparator(kernel);
        if (!separator) return SplitOutcome::NotApplicable;
        auto [x, y] = *separator;

        // components of kernel - {x,y}
        std::vector<int> comp(static_cast<std::size_t>(kn), -1);
        int nComp = 0;
        for (int s = 0; s < kn; ++s) {
            if (s == x || s == y || comp[static_cast<std::size_t>(s)] != -1) continue;
            std::vector<int> stack{s};
            comp[static_cast<std::size_t>(s)] = nComp;
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                for (int b : kernel.neighbors(a)) {
                    if (b == x || b == y || comp[static_cast<std::size_t>(b)] != -1) continue;
                    comp[static_cast<std::size_t>(b)] = nComp;
                    stack.push_back(b);
                }
            }
            ++nComp;
        }
        if (nComp < 2) return SplitOutcome::NotApplicable;

        TreeDecomposition glued;
        int attachBag = -1;
        for (int c = 0; c < nComp; ++c) {
            // piece: component plus the separator pair, with the xy edge
            std::vector<int> pieceIds;
            std::vector<int> ppos(static_cast<std::size_t>(kn), -1);
            auto pieceId = [&](int kv) {
                if (ppos[static_cast<std::size_t>(kv)] == -1) {
                    ppos[static_cast<std::size_t>(kv)] = static_cast<int>(pieceIds.size());
                    pieceIds.push_back(kv);
                }
                return ppos[static_cast<std::size_t>(kv)];
            };
            int px = pieceId(x);
            int py = pieceId(y);
            for (int s = 0; s < kn; ++s)
                if (comp[static_cast<std::size_t>(s)] == c) pieceId(s);
            Graph piece(static_cast<int>(pieceIds.size()));
            piece.addEdge(Edge(px, py));
            for (int s = 0; s < kn; ++s) {
                if (comp[static_cast<std::size_t>(s)] != c) continue;
                for (int b : kernel.neighbors(s))
                    if (comp[static_cast<std::size_t>(b)] == c ? b > s : true)
                        if (comp[static_cast<std::size_t>(b)] == c || b == x || b == y)
                            piece.addEdge(Edge(pieceId(s), pieceId(b)));
            }

            auto pieceTd = decomposeWidthAtMost(piece, t_, budget_);
            if (!pieceTd) return SplitOutcome::Exceeds; // piece is a minor of the kernel

            // remap the piece decomposition to the block's original ids
            for (auto& node : pieceTd->nodes) {
                for (Vertex& v : node.bag)
                    v = toOriginal_[static_cast<std::size_t>(
                        kernelIds[static_cast<std::size_t>(pieceIds[static_cast<std::size_t>(v)])])];
                std::sort(node.bag.begin(), node.bag.end());
            }

            // a bag holding both separator endpoints exists (their edge does)
            Vertex ox = toOriginal_[static_cast<std::size_t>(kernelIds[static_cast<std::size_t>(x)])];
            Vertex oy = toOriginal_[static_cast<std::size_t>(kernelIds[static_cast<std::size_t>(y)])];
            int xyBag = -1;
            for (int i = 0; i < pieceTd->size() && xyBag == -1; ++i) {
                const auto& bag = pieceTd->nodes[static_cast<std::size_t>(i)].bag;
                if (std::binary_search(bag.begin(), bag.end(), ox) &&
                    std::binary_search(bag.begin(), bag.end(), oy))
                    xyBag = i;
            }
            if (xyBag == -1) throw Error("treewidth: separator bag missing in piece");

            rerootAt(*pieceTd, xyBag);
            int offset = appendDecomposition(glued, *pieceTd);
            if (attachBag == -1) attachBag = offset + xyBag;
            else glued.nodes[static_cast<std::size_t>(offset + xyBag)].parent = attachBag;
        }

        attachReductions(glued, originalRecords());
        out = std::move(glued);
        return SplitOutcome::Fits;
    }

    /// A two-vertex separator with every component of kernel-{x,y} adjacent
    /// to both x and y, preferring the smallest largest piece. Returns local
    /// kernel ids.
    static std::optional<std::pair<int, int>> findBalancedSeparator(const Graph& kernel) {
        const int n = kernel.vertexCount();
        std::optional<std::pair<int, int>> best;
        int bestLargest = 1 << 30;

        std::vector<int> entry(static_cast<std::size_t>(n));
        std::vector<int> low(static_cast<std::size_t>(n));
        std::vector<int> sub(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) {
            // articulation points of kernel - x via lowpoint DFS
            std::fill(entry.begin(), entry.end(), -1);
            int timer = 0;
            int rootOfDfs = -1;
            auto consider = [&](int y, int largest) {
                if (largest < bestLargest) {
                    bestLargest = largest;
                    best = {std::min(x, y), std::max(x, y)};
                }
            };
            auto dfs = [&](auto&& self, int u, int parent) -> void {
                entry[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
                sub[static_cast<std::size_t>(u)] = 1;
                int rootChildren = 0;
                int maxChild = 0;
                int maxCut = 0;
                int total = 0;
                for (int w : kernel.neighbors(u)) {
                    if (w == x || w == parent) continue;
                    if (entry[static_cast<std::size_t>(w)] == -1) {
                        self(self, w, u);
                        sub[static_cast<std::size_t>(u)] += sub[static_cast<std::size_t>(w)];
                        low[static_cast<std::size_t>(u)] = std::min(
                            low[static_cast<std::size_t>(u)], low[static_cast<std::size_t>(w)]);
                        ++rootChildren;
                        maxChild = std::max(maxChild, sub[static_cast<std::size_t>(w)]);
                        if (parent != -1 &&
                            low[static_cast<std::size_t>(w)] >= entry[static_cast<std::size_t>(u)]) {
                            maxCut = std::max(maxCut, sub[static_cast<std::size_t>(w)]);
                            total += sub[static_cast<std::size_t>(w)];
                        }
                    } else {
                        low[static_cast<std::size_t>(u)] = std::min(
                            low[static_cast<std::size_t>(u)], entry[static_cast<std::size_t>(w)]);
                    }
                }
                if (parent != -1 && total > 0) {
                    // u cuts kernel - x: pieces are the cut subtrees and the rest
                    int rest = (n - 2) - total; // vertices outside u's cut subtrees
                    consider(u, std::max(maxCut, rest));
                } else if (parent == -1 && rootChildren >= 2) {
                    consider(u, maxChild);
                }
            };
            for (int s = 0; s < n && rootOfDfs == -1; ++s)
                if (s != x) rootOfDfs = s;
            if (rootOfDfs == -1) continue;
            dfs(dfs, rootOfDfs, -1);
            // vertices unreachable from the DFS root mean x itself was a cut
            // vertex; those splits are handled by the block decomposition.
        }
        if (!best) return std::nullopt;

        // fullness check: every component of kernel-{x,y} adjacent to both
        auto [x, y] = *best;
        std::vector<int> comp(static_cast<std::size_t>(n), -1);
        int nComp = 0;
        for (int s = 0; s < n; ++s) {
            if (s == x || s == y || comp[static_cast<std::size_t>(s)] != -1) continue;
            std::vector<int> stack{s};
            comp[static_cast<std::size_t>(s)] = nComp;
            bool seesX = false, seesY = false;
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                for (int b : kernel.neighbors(a)) {
                    if (b == x) seesX = true;
                    else if (b == y) seesY = true;
                    else if (comp[static_cast<std::size_t>(b)] == -1) {
                        comp[static_cast<std::size_t>(b)] = nComp;
                        stack.push_back(b);
                    }
                }
            }
            if (!seesX || !seesY) return std::nullopt;
            ++nComp;
        }
        if (nComp < 2) return std::nullopt;
        return best;
    }

    /// Exhaustive memoized search over elimination orders with per-step
    /// degree at most t. States are keyed by the eliminated vertex set.
    bool search() {
        if (remaining_ == 0) return true;
        if (failed_.contains(key_)) return false;
        if (++expansions_ > budget_.maxExpansions)
            throw TooLargeError("treewidth search budget exhausted");

        // Forced move: a simplicial vertex can always go first.
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v) {
            if (!alive_[static_cast<std::size_t>(v)]) continue;
            if (isSimplicial(v)) {
                if (degree(v) > t_) {
                    failed_.insert(key_);
                    return false;
                }
                eliminate(v);
                if (search()) return true;
                undoLast();
                failed_.insert(key_);
                return false;
            }
        }

        std::vector<std::pair<int, int>> candidates;
        for (int v = 0; v < static_cast<int>(alive_.size()); ++v)
            if (alive_[static_cast<std::size_t>(v)] && degree(v) <= t_)
                candidates.emplace_back(degree(v), v);
        std::sort(candidates.begin(), candidates.end());
        for (auto [d, v] : candidates) {
            eliminate(v);
            if (search()) return true;
            undoLast();
        }
        failed_.insert(key_);
        return false;
    }

    int t_;
    TreewidthBudget budget_;
    long long& expansions_;
    std::unordered_map<Vertex, int> localOf_;
    std::vector<Vertex> toOriginal_;
    std::vector<std::vector<int>> adj_;
    std::vector<char> alive_;
    int remaining_ = 0;
    std::vector<Step> order_;
    BitKey key_;
    std::unordered_set<BitKey, BitKeyHash> failed_;
};

} // namespace twdetail

/// A width <= t tree decomposition of g, or nullopt if tw(g) > t.
///
/// Treewidth is the maximum over biconnected components, so each block is
/// solved independently and the block decompositions are glued at cut
/// vertices.
inline std::optional<TreeDecomposition> decomposeWidthAtMost(const Graph& g, int t,
                                                             const TreewidthBudget& budget = {}) {
    const int n = g.vertexCount();
    TreeDecomposition td;
    if (n == 0) return td;
    if (t < 0) return std::nullopt;

    auto blocks = biconnectedComponents(g);
    long long expansions = 0;

    const int nBlocks = static_cast<int>(blocks.size());
    std::vector<TreeDecomposition> blockTds;
    blockTds.reserve(blocks.size());
    std::vector<std::vector<Vertex>> blockVertices(static_cast<std::size_t>(nBlocks));
    std::vector<std::vector<int>> vertexBlocks(static_cast<std::size_t>(n));
    for (int b = 0; b < nBlocks; ++b) {
        twdetail::BlockSolver solver(blocks[static_cast<std::size_t>(b)], t, budget, expansions);
        auto solved = solver.solve();
        if (!solved) return std::nullopt;
        blockTds.push_back(std::move(*solved));
        auto& verts = blockVertices[static_cast<std::size_t>(b)];
        for (Edge e : blocks[static_cast<std::size_t>(b)]) {
            verts.push_back(e.u);
            verts.push_back(e.v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        for (Vertex v : verts) vertexBlocks[static_cast<std::size_t>(v)].push_back(b);
    }

    // Glue blocks sharing cut vertices: BFS over the block adjacency, attach
    // each new block by rerooting it at a bag holding the shared vertex.
    std::vector<int> bagWith(static_cast<std::size_t>(n), -1);
    std::vector<char> blockDone(static_cast<std::size_t>(nBlocks), 0);
    for (int start = 0; start < nBlocks; ++start) {
        if (blockDone[static_cast<std::size_t>(start)]) continue;
        std::vector<int> queue{start};
        blockDone[static_cast<std::size_t>(start)] = 1;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int b = queue[qi];
            TreeDecomposition& piece = blockTds[static_cast<std::size_t>(b)];

            Vertex cut = -1;
            if (b != start) {
                for (Vertex v : blockVertices[static_cast<std::size_t>(b)])
                    if (bagWith[static_cast<std::size_t>(v)] != -1) {
                        cut = v;
                        break;
                    }
            }
            int cutBag = -1;
            if (cut != -1) {
                for (int i = 0; i < piece.size() && cutBag == -1; ++i) {
                    const auto& bag = piece.nodes[static_cast<std::size_t>(i)].bag;
                    if (std::binary_search(bag.begin(), bag.end(), cut)) cutBag = i;
                }
                twdetail::rerootAt(piece, cutBag);
            }
            int offset = twdetail::appendDecomposition(td, piece);
            if (cut != -1)
                td.nodes[static_cast<std::size_t>(offset + cutBag)].parent =
                    bagWith[static_cast<std::size_t>(cut)];

            for (int i = 0; i < piece.size(); ++i)
                for (Vertex v : td.nodes[static_cast<std::size_t>(offset + i)].bag)
                    if (bagWith[static_cast<std::size_t>(v)] == -1)
                        bagWith[static_cast<std::size_t>(v)] = offset + i;

            for (Vertex v : blockVertices[static_cast<std::size_t>(b)])
                for (int b2 : vertexBlocks[static_cast<std::size_t>(v)])
                    if (!blockDone[static_cast<std::size_t>(b2)]) {
                        blockDone[static_cast<std::size_t>(b2)] = 1;
                        queue.push_back(b2);
                    }
        }
    }

    // Isolated vertices get singleton bags.
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 0) td.addNode(-1, {v});

    // Link component roots into one tree.
    int globalRoot = -1;
    for (int x = 0; x < td.size(); ++x) {
        if (td.nodes[static_cast<std::size_t>(x)].parent != -1) continue;
        if (globalRoot == -1) globalRoot = x;
        else td.nodes[static_cast<std::size_t>(x)].parent = globalRoot;
    }
    return td;
}

struct TreewidthResult {
    int width = -1;
    TreeDecomposition decomposition;
};

/// Exact treewidth with a witness decomposition of that width.
inline TreewidthResult exactTreewidth(const Graph& g, const TreewidthBudget& budget = {}) {
    TreewidthResult out;
    if (g.vertexCount() == 0) return out;
    for (int t = 0; t < g.vertexCount(); ++t) {
        if (auto td = decomposeWidthAtMost(g, t, budget)) {
            out.width = t;
            out.decomposition = std::move(*td);
            return out;
        }
    }
    // Unreachable: width n-1 always admits the single-bag decomposition.
    throw Error("exactTreewidth: no decomposition found");
}

} // namespace dynpath

#endif
