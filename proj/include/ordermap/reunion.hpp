#pragma once

#include <vector>

#include "swap.hpp"

namespace ordermap {

/// Free sets of a clique, each listed in clique order; their concatenation is the clique in clique order.
using FreeSetPartition = std::vector<std::vector<Var>>;

/// Can b follow a inside one free set? Requires B_a strictly inside B_b and every other parent x
/// of b outside B_a to satisfy B_x = B_b \ {x}.
inline bool free_set_link(const BoundaryMap& bmap, Var a, Var b) {
    if (!bmap[a].strict_subset_of(bmap[b])) return false;
    for (Var x : bmap[b] - bmap[a].with(a))
        if (bmap[x] != bmap[b].without(x)) return false;
    return true;
}

/// Split the clique, in clique order, into maximal runs of linked neighbours.
inline FreeSetPartition free_sets(const State& s, VarSet clique) {
    if (!is_clique(dag_of(s), clique)) throw InvalidArgument("free sets requested for a non-clique");
    FreeSetPartition out;
    Var prev = -1;
    for (Var v : s.order.arrange(clique)) {
        if (prev >= 0 && free_set_link(s.bmap, prev, v)) {
            out.back().push_back(v);
        } else {
            out.push_back({v});
        }
        prev = v;
    }
    return out;
}

struct ReunionResult {
    State state;
    FreeSetPartition partition;   // free sets as actually gathered
    int blocked_links = 0;        // links split because a restriction blocked the shift
    std::uint64_t oracle_queries = 0;
};

namespace detail {

inline bool gathered(const State& s, const FreeSetPartition& partition) {
    for (const auto& fs : partition)
        for (std::size_t k = 1; k < fs.size(); ++k)
            if (s.order.rank(fs[k]) != s.order.rank(fs[k - 1]) + 1) return false;
    return true;
}

} // namespace detail

/// Gather each free set into consecutive ranks by shifting every member down to its predecessor
/// in the set, using admissible swaps only.
///
/// Gathering changes boundaries, which can merge free sets, so the partition is recomputed and
/// gathered again until it is stable. With `strict` a blocked shift throws RejectedOperation
/// and nothing changes. Otherwise the blocked member starts a new free set and the remaining
/// members continue from there.
inline ReunionResult clique_reunion(const Oracle& oracle, const State& s, VarSet clique, bool strict = false) {
    const std::uint64_t before = oracle.query_count();
    ReunionResult res{s, {}, 0, 0};
    for (int round = 0; round <= clique.size(); ++round) {
        const FreeSetPartition sets = free_sets(res.state, clique);
        if (round > 0 && detail::gathered(res.state, sets)) {
            res.partition = sets;
            break;
        }
        res.partition.clear();
        for (const auto& fs : sets) {
            res.partition.push_back({fs.front()});
            for (std::size_t k = 1; k < fs.size(); ++k) {
                const Var a = res.partition.back().back();
                const Var b = fs[k];
                try {
                    res.state = shift(oracle, res.state, b, res.state.order.rank(a) + 1);
                    res.partition.back().push_back(b);
                } catch (const RejectedOperation&) {
                    if (strict) throw;
                    ++res.blocked_links;
                    res.partition.push_back({b});
                }
            }
        }
        if (!is_clique(dag_of(res.state), clique)) break;
    }
    res.oracle_queries = oracle.query_count() - before;
    return res;
}

} // namespace ordermap
