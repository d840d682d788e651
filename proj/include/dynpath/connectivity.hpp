#ifndef DYNPATH_CONNECTIVITY_HPP
#define DYNPATH_CONNECTIVITY_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dynpath/errors.hpp"
#include "dynpath/graph.hpp"

namespace dynpath {

/// Fully dynamic connectivity: a spanning forest maintained with edge levels
/// and replacement search (amortized O(log^2 n)), on Euler tour trees backed
/// by treaps. Deterministic: treap priorities come from a seeded counter.
class DynamicConnectivity {
    struct Node {
        Node* left = nullptr;
        Node* right = nullptr;
        Node* parent = nullptr;
        std::uint64_t priority = 0;
        Vertex u = 0, v = 0; // loop iff u == v
        int size = 1;        // subtree node count
        int loops = 0;       // subtree loop count
        Vertex minLoop = std::numeric_limits<Vertex>::max();
        bool selfNontree = false; // loops: vertex has level-i nontree edges
        bool subNontree = false;
        bool selfOwnsEdge = false; // arcs: the edge's level equals this forest's level
        bool subOwnsEdge = false;

        bool isLoop() const { return u == v; }
    };

public:
    explicit DynamicConnectivity(int n) : n_(n) {
        if (n < 0) throw OutOfRangeError("negative vertex count");
        levels_ = 1;
        while ((1 << levels_) < std::max(2, n)) ++levels_;
        levels_ += 1;
        level_.resize(static_cast<std::size_t>(levels_));
        for (auto& lv : level_) {
            lv.loop.assign(static_cast<std::size_t>(n), nullptr);
            lv.nontree.assign(static_cast<std::size_t>(n), {});
        }
    }

    DynamicConnectivity(const DynamicConnectivity&) = delete;
    DynamicConnectivity& operator=(const DynamicConnectivity&) = delete;

    DynamicConnectivity(DynamicConnectivity&& other) noexcept
        : n_(other.n_),
          levels_(other.levels_),
          prioCounter_(other.prioCounter_),
          level_(std::move(other.level_)),
          edges_(std::move(other.edges_)) {
        other.level_.clear();
        other.edges_.clear();
    }

    ~DynamicConnectivity() {
        for (auto& lv : level_)
            for (auto& [key, node] : lv.arc) delete node;
        for (auto& lv : level_)
            for (Node* loop : lv.loop) delete loop;
    }

    int vertexCount() const { return n_; }
    int edgeCount() const { return static_cast<int>(edges_.size()); }

    bool hasEdge(Edge e) const {
        checkVertex(e.u);
        checkVertex(e.v);
        return edges_.contains(e);
    }

    void insert(Edge e) {
        if (hasEdge(e))
            throw DuplicateEdgeError("connectivity: edge already present");
        if (!isConnected(e.u, e.v)) {
            linkTree(0, e, /*owner=*/true);
            edges_.emplace(e, EdgeInfo{0, true});
        } else {
            addNontree(0, e);
            edges_.emplace(e, EdgeInfo{0, false});
        }
    }

    void erase(Edge e) {
        auto it = edges_.find(e);
        if (it == edges_.end())
            throw MissingEdgeError("connectivity: edge not present");
        const EdgeInfo info = it->second;
        edges_.erase(it);
        if (!info.tree) {
            removeNontree(info.level, e);
            return;
        }
        for (int i = 0; i <= info.level; ++i) cutTree(i, e);
        findReplacement(info.level, e);
    }

    bool isConnected(Vertex u, Vertex v) const {
        checkVertex(u);
        checkVertex(v);
        if (u == v) return true;
        Node* lu = level_[0].loop[static_cast<std::size_t>(u)];
        Node* lv = level_[0].loop[static_cast<std::size_t>(v)];
        if (!lu || !lv) return false;
        return root(lu) == root(lv);
    }

    /// Canonical component representative: the minimum vertex id.
    Vertex representative(Vertex v) const {
        checkVertex(v);
        Node* lv = level_[0].loop[static_cast<std::size_t>(v)];
        if (!lv) return v;
        return root(lv)->minLoop;
    }

    int componentSize(Vertex v) const {
        checkVertex(v);
        Node* lv = level_[0].loop[static_cast<std::size_t>(v)];
        if (!lv) return 1;
        return root(lv)->loops;
    }

    /// Snapshot of the stored edge set, sorted.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edges_.size());
        for (const auto& [e, info] : edges_) out.push_back(e);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct EdgeInfo {
        int level;
        bool tree;
    };

    struct LevelForest {
        std::vector<Node*> loop;
        std::unordered_map<std::uint64_t, Node*> arc; // directed (u,v) -> node
        std::vector<std::unordered_set<Vertex>> nontree;
    };

    void checkVertex(Vertex v) const {
        if (v < 0 || v >= n_)
            throw OutOfRangeError("connectivity: vertex out of range");
    }

    static std::uint64_t arcKey(Vertex a, Vertex b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    std::uint64_t nextPriority() {
        std::uint64_t x = (prioCounter_ += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    static int sizeOf(Node* t) { return t ? t->size : 0; }

    static void pull(Node* t) {
        t->size = 1 + sizeOf(t->left) + sizeOf(t->right);
        t->loops = (t->isLoop() ? 1 : 0);
        t->minLoop = t->isLoop() ? t->u : std::numeric_limits<Vertex>::max();
        t->subNontree = t->selfNontree;
        t->subOwnsEdge = t->selfOwnsEdge;
        for (Node* c : {t->left, t->right}) {
            if (!c) continue;
            t->loops += c->loops;
            t->minLoop = std::min(t->minLoop, c->minLoop);
            t->subNontree = t->subNontree || c->subNontree;
            t->subOwnsEdge = t->subOwnsEdge || c->subOwnsEdge;
        }
    }

    static void pullToRoot(Node* t) {
        while (t) {
            pull(t);
            t = t->parent;
        }
    }

    static Node* root(Node* t) {
        while (t->parent) t = t->parent;
        return t;
    }

    /// Number of nodes strictly before t in its sequence.
    static int indexOf(Node* t) {
        int idx = sizeOf(t->left);
        for (Node* c = t; c->parent; c = c->parent)
            if (c->parent->right == c) idx += sizeOf(c->parent->left) + 1;
        return idx;
    }

    static Node* merge(Node* a, Node* b) {
        if (!a) return b;
        if (!b) return a;
        if (a->priority > b->priority) {
            Node* r = merge(a->right, b);
            a->right = r;
            if (r) r->parent = a;
            pull(a);
            return a;
        }
        Node* l = merge(a, b->left);
        b->left = l;
        if (l) l->parent = b;
        pull(b);
        return b;
    }

    /// Splits into (first k nodes, rest).
    static std::pair<Node*, Node*> split(Node* t, int k) {
        if (!t) return {nullptr, nullptr};
        if (k <= sizeOf(t->left)) {
            auto [a, b] = split(t->left, k);
            t->left = b;
            if (b) b->parent = t;
            t->parent = nullptr;
            pull(t);
            if (a) a->parent = nullptr;
            return {a, t};
        }
        auto [a, b] = split(t->right, k - sizeOf(t->left) - 1);
        t->right = a;
        if (a) a->parent = t;
        t->parent = nullptr;
        pull(t);
        if (b) b->parent = nullptr;
        return {t, b};
    }

    Node* ensureLoop(int lvl, Vertex v) {
        Node*& slot = level_[static_cast<std::size_t>(lvl)].loop[static_cast<std::size_t>(v)];
        if (!slot) {
            slot = new Node();
            slot->priority = nextPriority();
            slot->u = slot->v = v;
            pull(slot);
        }
        return slot;
    }

    /// Rotates v's tour to start at loop(v); returns the new root.
    Node* reroot(int lvl, Vertex v) {
        Node* lp = ensureLoop(lvl, v);
        Node* r = root(lp);
        int idx = indexOf(lp);
        auto [a, b] = split(r, idx);
        return merge(b, a);
    }

    void linkTree(int lvl, Edge e, bool owner) {
        auto& lv = level_[static_cast<std::size_t>(lvl)];
        Node* tu = reroot(lvl, e.u);
        Node* tv = reroot(lvl, e.v);
        Node* a1 = new Node();
        a1->priority = nextPriority();
        a1->u = e.u;
        a1->v = e.v;
        a1->selfOwnsEdge = owner;
        pull(a1);
        Node* a2 = new Node();
        a2->priority = nextPriority();
        a2->u = e.v;
        a2->v = e.u;
        pull(a2);
        lv.arc.emplace(arcKey(e.u, e.v), a1);
        lv.arc.emplace(arcKey(e.v, e.u), a2);
        merge(merge(tu, a1), merge(tv, a2));
    }

    void cutTree(int lvl, Edge e) {
        auto& lv = level_[static_cast<std::size_t>(lvl)];
        Node* a1 = lv.arc.at(arcKey(e.u, e.v));
        Node* a2 = lv.arc.at(arcKey(e.v, e.u));
        lv.arc.erase(arcKey(e.u, e.v));
        lv.arc.erase(arcKey(e.v, e.u));
        if (indexOf(a1) > indexOf(a2)) std::swap(a1, a2);
        Node* r = root(a1);
        auto [p, q] = split(r, indexOf(a1));
        auto [x, y] = split(q, 1); // x == a1
        auto [mid, s] = split(y, indexOf(a2));
        auto [z, tail] = split(s, 1); // z == a2
        merge(p, tail);
        delete a1;
        delete a2;
        (void)x;
        (void)z;
        (void)mid;
    }

    void addNontree(int lvl, Edge e) {
        auto& lv = level_[static_cast<std::size_t>(lvl)];
        for (Vertex x : {e.u, e.v}) {
            Vertex y = (x == e.u) ? e.v : e.u;
            ensureLoop(lvl, x);
            lv.nontree[static_cast<std::size_t>(x)].insert(y);
            setNontreeFlag(lvl, x);
        }
    }

    void removeNontree(int lvl, Edge e) {
        auto& lv = level_[static_cast<std::size_t>(lvl)];
        for (Vertex x : {e.u, e.v}) {
            Vertex y = (x == e.u) ? e.v : e.u;
            lv.nontree[static_cast<std::size_t>(x)].erase(y);
            setNontreeFlag(lvl, x);
        }
    }

    void setNontreeFlag(int lvl, Vertex v) {
        auto& lv = level_[static_cast<std::size_t>(lvl)];
        Node* lp = lv.loop[static_cast<std::size_t>(v)];
        bool want = !lv.nontree[static_cast<std::size_t>(v)].empty();
        if (lp->selfNontree != want) {
            lp->selfNontree = want;
            pullToRoot(lp);
        }
    }

    static Node* findOwnedArc(Node* t) {
        if (!t || !t->subOwnsEdge) return nullptr;
        while (true) {
            if (t->left && t->left->subOwnsEdge) {
                t = t->left;
            } else if (t->selfOwnsEdge) {
                return t;
            } else {
                t = t->right;
            }
        }
    }

    static Node* findNontreeLoop(Node* t) {
        if (!t || !t->subNontree) return nullptr;
        while (true) {
            if (t->left && t->left->subNontree) {
                t = t->left;
            } else if (t->selfNontree) {
                return t;
            } else {
                t = t->right;
            }
        }
    }

    void findReplacement(int topLevel, Edge removed) {
        for (int i = topLevel; i >= 0; --i) {
            auto& lv = level_[static_cast<std::size_t>(i)];
            Node* ru = root(lv.loop[static_cast<std::size_t>(removed.u)]);
            Node* rv = root(lv.loop[static_cast<std::size_t>(removed.v)]);
            Node* small = (ru->loops <= rv->loops) ? ru : rv;

            // Push the level-i tree edges of the smaller side one level down;
            // its components keep at most half the vertices, which bounds
            // every edge level by log2(n).
            while (Node* arc = findOwnedArc(small)) {
                Edge f(arc->u, arc->v);
                arc->selfOwnsEdge = false;
                pullToRoot(arc);
                edges_.at(f).level = i + 1;
                linkTree(i + 1, f, /*owner=*/true);
            }

            // Scan level-i nontree edges incident to the smaller side.
            std::optional<Edge> replacement;
            while (!replacement) {
                Node* loopNode = findNontreeLoop(small);
                if (!loopNode) break;
                Vertex x = loopNode->u;
                std::vector<Vertex> partners(lv.nontree[static_cast<std::size_t>(x)].begin(),
                                             lv.nontree[static_cast<std::size_t>(x)].end());
                for (Vertex y : partners) {
                    Node* ry = root(ensureLoop(i, y));
                    if (ry == root(small)) {
                        // Internal to the smaller side: push to level i+1.
                        removeNontree(i, Edge(x, y));
                        addNontree(i + 1, Edge(x, y));
                        edges_.at(Edge(x, y)).level = i + 1;
                    } else {
                        replacement = Edge(x, y);
                        removeNontree(i, *replacement);
                        break;
                    }
                }
                small = root(small);
            }

            if (replacement) {
                edges_.at(*replacement).tree = true;
                // Level stays i; the edge joins every forest at or below it.
                for (int j = 0; j <= i; ++j) linkTree(j, *replacement, /*owner=*/j == i);
                return;
            }
        }
    }

    int n_;
    int levels_;
    std::uint64_t prioCounter_ = 0x6b7d9c3a2f1e5508ULL;
    std::vector<LevelForest> level_;
    std::unordered_map<Edge, EdgeInfo, EdgeHash> edges_;
};

} // namespace dynpath

#endif
