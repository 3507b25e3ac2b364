#pragma once

#include <optional>

#include "swap.hpp"

namespace ordermap {

enum class ReversalStatus {
    applied,
    identity,               // A_c = {c}
    skipped_head_to_head,   // A_c holds a head-to-head node
    skipped_tail_to_tail,   // a tail-to-tail node in A_c could not be removed by admissible swaps
};

inline const char* to_string(ReversalStatus s) {
    switch (s) {
    case ReversalStatus::applied: return "applied";
    case ReversalStatus::identity: return "identity";
    case ReversalStatus::skipped_head_to_head: return "skipped-head-to-head";
    case ReversalStatus::skipped_tail_to_tail: return "skipped-tail-to-tail";
    }
    return "unknown";
}

/// The three stages of a reversal. When the status is not `applied` all three equal the input.
struct ReversalResult {
    ReversalStatus status = ReversalStatus::identity;
    VarSet ancestors;  // A_c
    State prepared;    // A_c moved to the front, tail-to-tail nodes removed
    State reversed;    // block order reversed, boundaries = transposed induced subgraph
    State refined;     // reversed, with boundaries re-derived from the oracle
    bool transpose_was_tight = true;  // refined == reversed
    std::uint64_t oracle_queries = 0;
};

namespace detail {

inline std::optional<State> try_reverse_arc(const Oracle& oracle, const State& s, Var tail, Var head) {
    try {
        State cur = shift(oracle, s, head, s.order.rank(tail) + 1);
        return apply_swap(oracle, cur, tail, head).state;
    } catch (const RejectedOperation&) {
        return std::nullopt;
    }
}

struct TailToTail {
    Var d, e, f;
};

inline std::optional<TailToTail> find_tail_to_tail(const Dag& dag, const Ordering& order, int block) {
    const VarSet within = order.prefix(block);
    for (int r = 0; r < block; ++r) {
        const Var e = order.at(r);
        const VarSet ch = dag.children(e) & within;
        for (Var d : ch)
            for (Var f : ch)
                if (d < f && !dag.adjacent(d, f)) return TailToTail{d, e, f};
    }
    return std::nullopt;
}

} // namespace detail

/// Reversal on the clique `clique`, whose first node is c.
///
/// Moves A_c (the ancestors of c, c included) to the front keeping their relative order, removes
/// tail-to-tail triples inside A_c by admissible swaps, then reverses the order of that block
/// and transposes its arcs. Boundaries outside A_c are unchanged since their predecessor sets
/// are. Skipped, not an error, when A_c holds a head-to-head node.
inline ReversalResult reversal(const Oracle& oracle, const State& s, VarSet clique) {
    const Dag dag = dag_of(s);
    if (clique.size() < 2 || !is_clique(dag, clique))
        throw InvalidArgument("reversal target is not a clique of the current graph");
    const std::uint64_t before = oracle.query_count();

    ReversalResult res;
    res.prepared = res.reversed = res.refined = s;
    const Var c = s.order.first_of(clique);
    res.ancestors = ancestor_set(dag, c);
    const int k = res.ancestors.size();
    if (k == 1) return res;
    if (has_head_to_head(dag, res.ancestors)) {
        res.status = ReversalStatus::skipped_head_to_head;
        return res;
    }

    // Step 1: no member of A_c has a parent outside A_c, so these swaps never touch a boundary.
    State cur = s;
    const std::vector<Var> block_order = s.order.arrange(res.ancestors);
    for (int r = 0; r < k; ++r) cur = shift(oracle, cur, block_order[static_cast<std::size_t>(r)], r);

    // Step 2: reverse one arc of each tail-to-tail triple until none is left.
    for (int guard = 0;; ++guard) {
        const Dag d = dag_of(cur);
        const bool hopeless = guard > 4 * k * k || has_head_to_head(d, res.ancestors);
        const auto t2t = hopeless ? std::nullopt : detail::find_tail_to_tail(d, cur.order, k);
        if (!hopeless && !t2t) break;
        std::optional<State> next;
        if (t2t) {
            next = detail::try_reverse_arc(oracle, cur, t2t->e, t2t->d);
            if (!next) next = detail::try_reverse_arc(oracle, cur, t2t->e, t2t->f);
        }
        if (!next) {
            res.status = ReversalStatus::skipped_tail_to_tail;
            res.oracle_queries = oracle.query_count() - before;
            return res;
        }
        cur = std::move(*next);
    }
    res.prepared = cur;

    // Step 3: reverse the block; each member's new parents are its former children in the block.
    const Dag prepared_dag = dag_of(cur);
    std::vector<Var> reversed_block(cur.order.sequence().begin(), cur.order.sequence().begin() + k);
    std::reverse(reversed_block.begin(), reversed_block.end());
    res.reversed = cur;
    res.reversed.order.assign_block(0, reversed_block);
    for (Var a : res.ancestors) res.reversed.bmap[a] = prepared_dag.children(a) & res.ancestors;

    res.refined = res.reversed;
    for (Var a : res.ancestors) {
        const VarSet preds = res.refined.order.predecessors(a);
        res.refined.bmap[a] = shrink_boundary(oracle, a, preds, res.reversed.bmap[a], res.reversed.bmap[a]);
    }
    res.transpose_was_tight = res.refined == res.reversed;
    res.status = ReversalStatus::applied;
    res.oracle_queries = oracle.query_count() - before;
    return res;
}

} // namespace ordermap
