#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ordering.hpp"
#include "varset.hpp"

namespace ordermap {

using Arc = std::pair<Var, Var>;  // (parent, child)

/// Directed acyclic graph over nodes 0..n-1, stored as parent and child masks.
class Dag {
public:
    Dag() = default;
    explicit Dag(int n) : parents_(static_cast<std::size_t>(n)), children_(static_cast<std::size_t>(n)) {
        if (n < 0 || n > max_variables) throw InvalidArgument("node count out of range");
    }

    static Dag from_arcs(int n, const std::vector<Arc>& arcs) {
        Dag d(n);
        for (auto [p, c] : arcs) {
            if (p < 0 || p >= n || c < 0 || c >= n) throw InvalidArgument("arc endpoint out of range");
            if (p == c) throw InvalidArgument("self-loop on node " + std::to_string(p));
            d.add_arc(p, c);
        }
        if (!d.acyclic()) throw InvalidArgument("arcs contain a directed cycle");
        return d;
    }

    int size() const { return static_cast<int>(parents_.size()); }
    VarSet parents(Var v) const { return parents_.at(static_cast<std::size_t>(v)); }
    VarSet children(Var v) const { return children_.at(static_cast<std::size_t>(v)); }
    VarSet neighbours(Var v) const { return parents(v) | children(v); }
    bool has_arc(Var p, Var c) const { return parents(c).contains(p); }
    bool adjacent(Var a, Var b) const { return has_arc(a, b) || has_arc(b, a); }

    int arc_count() const {
        int total = 0;
        for (VarSet p : parents_) total += p.size();
        return total;
    }

    /// Arcs sorted by (parent, child).
    std::vector<Arc> arcs() const {
        std::vector<Arc> out;
        for (Var p = 0; p < size(); ++p)
            for (Var c : children(p)) out.emplace_back(p, c);
        return out;
    }

    /// Arcs with both endpoints in s.
    int arcs_within(VarSet s) const {
        int total = 0;
        for (Var v : s) total += (parents(v) & s).size();
        return total;
    }

    void add_arc(Var p, Var c) {
        parents_.at(static_cast<std::size_t>(c)).insert(p);
        children_.at(static_cast<std::size_t>(p)).insert(c);
    }
    void remove_arc(Var p, Var c) {
        parents_.at(static_cast<std::size_t>(c)).erase(p);
        children_.at(static_cast<std::size_t>(p)).erase(c);
    }
    Dag without_arc(Var p, Var c) const {
        Dag d = *this;
        d.remove_arc(p, c);
        return d;
    }

    bool acyclic() const {
        VarSet placed;
        for (int round = 0; round < size(); ++round) {
            bool progress = false;
            for (Var v = 0; v < size(); ++v) {
                if (!placed.contains(v) && parents(v).subset_of(placed)) {
                    placed.insert(v);
                    progress = true;
                }
            }
            if (!progress) break;
        }
        return placed == VarSet::full(size());
    }

    friend bool operator==(const Dag&, const Dag&) = default;

private:
    std::vector<VarSet> parents_;
    std::vector<VarSet> children_;
};

/// Nodes reachable from v along directed paths, v excluded.
inline VarSet descendants(const Dag& dag, Var v) {
    VarSet seen;
    VarSet frontier = dag.children(v);
    while (!frontier.empty()) {
        seen |= frontier;
        VarSet next;
        for (Var u : frontier) next |= dag.children(u);
        frontier = next - seen;
    }
    return seen;
}

/// Ancestors of every node in s, s included.
inline VarSet ancestral_closure(const Dag& dag, VarSet s) {
    VarSet seen = s;
    VarSet frontier = s;
    while (!frontier.empty()) {
        VarSet next;
        for (Var u : frontier) next |= dag.parents(u);
        frontier = next - seen;
        seen |= frontier;
    }
    return seen;
}

/// A_c: the ancestors of c including c itself.
inline VarSet ancestor_set(const Dag& dag, Var c) { return ancestral_closure(dag, VarSet::single(c)); }

/// True when some node of `within` has two non-adjacent parents that are also in `within`.
inline bool has_head_to_head(const Dag& dag, VarSet within) {
    for (Var b : within) {
        const VarSet pa = dag.parents(b) & within;
        for (Var a : pa)
            for (Var c : pa)
                if (a < c && !dag.adjacent(a, c)) return true;
    }
    return false;
}

/// True when some node of `within` has two non-adjacent children that are also in `within`.
inline bool has_tail_to_tail(const Dag& dag, VarSet within) {
    for (Var e : within) {
        const VarSet ch = dag.children(e) & within;
        for (Var d : ch)
            for (Var f : ch)
                if (d < f && !dag.adjacent(d, f)) return true;
    }
    return false;
}

/// Is x separated from y given z? Answered on the moral graph of the ancestral set of x, y, z.
inline bool d_separated(const Dag& dag, VarSet x, VarSet z, VarSet y) {
    Statement{x, z, y}.validate();
    const VarSet all = VarSet::full(dag.size());
    if (!(x | y | z).subset_of(all)) throw InvalidArgument("statement references a node outside the graph");

    const VarSet anc = ancestral_closure(dag, x | y | z);
    std::vector<VarSet> moral(static_cast<std::size_t>(dag.size()));
    for (Var v : anc) {
        const VarSet pa = dag.parents(v);
        moral[static_cast<std::size_t>(v)] |= pa;
        for (Var p : pa) moral[static_cast<std::size_t>(p)] |= pa.with(v).without(p);
    }

    VarSet reached = x;
    VarSet frontier = x;
    while (!frontier.empty()) {
        VarSet next;
        for (Var u : frontier) next |= moral[static_cast<std::size_t>(u)];
        next = (next & anc) - z - reached;
        if (next.intersects(y)) return false;
        reached |= next;
        frontier = next;
    }
    return true;
}

/// Undirected edges {a, b} with a < b.
inline std::vector<std::pair<Var, Var>> skeleton(const Dag& dag) {
    std::vector<std::pair<Var, Var>> edges;
    for (Var a = 0; a < dag.size(); ++a)
        for (Var b : dag.neighbours(a))
            if (a < b) edges.emplace_back(a, b);
    return edges;
}

namespace detail {

inline void bron_kerbosch(const Dag& dag, VarSet r, VarSet p, VarSet x, std::vector<VarSet>& out) {
    if (p.empty() && x.empty()) {
        if (r.size() >= 3) out.push_back(r);
        return;
    }
    // Pivot on the candidate with the most neighbours in p.
    Var pivot = (p | x).front();
    int best = -1;
    for (Var u : p | x) {
        const int k = (dag.neighbours(u) & p).size();
        if (k > best) {
            best = k;
            pivot = u;
        }
    }
    for (Var v : p - dag.neighbours(pivot)) {
        const VarSet nv = dag.neighbours(v);
        bron_kerbosch(dag, r.with(v), p & nv, x & nv, out);
        p.erase(v);
        x.insert(v);
    }
}

} // namespace detail

/// Maximal sets of pairwise adjacent nodes with at least three members, sorted.
inline std::vector<VarSet> maximal_cliques(const Dag& dag) {
    std::vector<VarSet> out;
    detail::bron_kerbosch(dag, {}, VarSet::full(dag.size()), {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Maximal cliques (size >= 3) of the subgraph induced by `within`.
inline std::vector<VarSet> maximal_cliques_within(const Dag& dag, VarSet within) {
    std::vector<VarSet> out;
    Dag induced(dag.size());
    for (Var c : within)
        for (Var p : dag.parents(c) & within) induced.add_arc(p, c);
    detail::bron_kerbosch(induced, {}, within, {}, out);
    std::sort(out.begin(), out.end());
    return out;
}

/// Pairwise adjacency of every member of s.
inline bool is_clique(const Dag& dag, VarSet s) {
    for (Var v : s)
        if (!(s.without(v)).subset_of(dag.neighbours(v))) return false;
    return true;
}

/// D_theta: one arc into each u from every member of its boundary.
inline Dag dag_from_boundaries(const Ordering& order, const BoundaryMap& bmap) {
    if (order.size() != bmap.size()) throw InvalidState("boundary map and ordering differ in size");
    Dag d(order.size());
    for (Var u = 0; u < bmap.size(); ++u) {
        for (Var p : bmap[u]) {
            if (order.rank(p) >= order.rank(u))
                throw InvalidState("boundary of variable " + std::to_string(u) + " contains a successor");
            d.add_arc(p, u);
        }
    }
    return d;
}

inline Dag dag_of(const State& s) { return dag_from_boundaries(s.order, s.bmap); }

} // namespace ordermap
