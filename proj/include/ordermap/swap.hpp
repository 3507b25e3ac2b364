#pragma once

#include <string>
#include <utility>

#include "causal_list.hpp"
#include "errors.hpp"

namespace ordermap {

/// Result of exchanging two consecutive variables.
struct SwapOutcome {
    State state;
    std::pair<Var, Var> changed;  // (i, j) as passed: i was directly before j
    std::uint64_t oracle_queries = 0;
};

inline void require_consecutive(const Ordering& order, Var i, Var j) {
    if (order.rank(i) + 1 != order.rank(j))
        throw InvalidArgument("swap needs i directly before j (got ranks " + std::to_string(order.rank(i) + 1) +
                              " and " + std::to_string(order.rank(j) + 1) + ")");
}

/// Swapping i and j keeps every represented independency iff i is not in B_j or B_i = B_j \ {i}.
inline bool swap_admissible(const BoundaryMap& bmap, Var i, Var j) {
    return !bmap[j].contains(i) || bmap[i] == bmap[j].without(i);
}

inline bool swap_admissible(const State& s, Var i, Var j) {
    require_consecutive(s.order, i, j);
    return swap_admissible(s.bmap, i, j);
}

/// Swap i with its successor j and update B_i and B_j.
///
/// If i is not a parent of j nothing but the ranks changes. Otherwise the new boundaries are
/// shrunk from (B_i | B_j | {j}) \ {i} and (B_i | B_j) \ {i}. Only members of B_j are tested for
/// removal from B'_i; whatever leaves B'_i stays in B'_j.
inline SwapOutcome apply_swap(const Oracle& oracle, const State& s, Var i, Var j, bool force = false) {
    require_consecutive(s.order, i, j);
    if (!force && !swap_admissible(s.bmap, i, j))
        throw RejectedOperation("swap of " + std::to_string(i) + " and " + std::to_string(j) +
                                    " would lose represented independencies",
                                i, j);
    const std::uint64_t before = oracle.query_count();
    SwapOutcome out{s, {i, j}, 0};
    out.state.order.swap_adjacent(s.order.rank(i));
    if (!s.bmap[j].contains(i)) return out;

    const VarSet preds_i = s.order.predecessors(i);  // also the new predecessors of j
    const VarSet bi = s.bmap[i];
    const VarSet bj = s.bmap[j];

    const VarSet start_i = (bi | bj).with(j).without(i);
    const VarSet new_bi = shrink_boundary(oracle, i, preds_i.with(j), start_i, bj.without(i));
    const VarSet dropped = start_i - new_bi;

    const VarSet start_j = (bi | bj).without(i);
    const VarSet new_bj = shrink_boundary(oracle, j, preds_i, start_j, start_j - dropped);

    out.state.bmap[i] = new_bi;
    out.state.bmap[j] = new_bj;
    out.oracle_queries = oracle.query_count() - before;
    return out;
}

/// Move v to `target_rank` by adjacent swaps. Inadmissible steps throw RejectedOperation
/// naming the blocking pair unless `force` is set.
inline State shift(const Oracle& oracle, const State& s, Var v, int target_rank, bool force = false) {
    if (target_rank < 0 || target_rank >= s.order.size()) throw InvalidArgument("shift target rank out of range");
    State cur = s;
    while (cur.order.rank(v) > target_rank) {
        const Var prev = cur.order.at(cur.order.rank(v) - 1);
        cur = apply_swap(oracle, cur, prev, v, force).state;
    }
    while (cur.order.rank(v) < target_rank) {
        const Var next = cur.order.at(cur.order.rank(v) + 1);
        cur = apply_swap(oracle, cur, v, next, force).state;
    }
    return cur;
}

} // namespace ordermap
