#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <vector>

#include "reunion.hpp"

namespace ordermap {

/// Default cap on orderings tried by one unclique call (8!).
inline constexpr std::uint64_t default_max_perms = 40320;

struct UncliqueOptions {
    std::uint64_t max_perms = default_max_perms;
    /// After the free-set arrangements fail, search orderings of the clique's rank window
    /// reachable by admissible swaps.
    bool swap_search = true;
};

struct UncliqueResult {
    std::optional<Arc> removed;          // first clique arc that disappeared, as (tail, head) before the move
    std::vector<Arc> removed_arcs;       // every clique arc that disappeared
    State state;
    std::uint64_t permutations_tried = 0;
    std::uint64_t oracle_queries = 0;
    const char* method = "none";         // "free-sets" or "swap-search" when an arc was removed
};

/// Runs of free-set members that sit on consecutive ranks; only these are permuted.
inline std::vector<std::vector<Var>> contiguous_groups(const State& s, const FreeSetPartition& partition) {
    std::vector<std::vector<Var>> groups;
    for (const auto& fs : partition) {
        std::vector<Var> run{fs.front()};
        for (std::size_t k = 1; k < fs.size(); ++k) {
            if (s.order.rank(fs[k]) == s.order.rank(run.back()) + 1) {
                run.push_back(fs[k]);
            } else {
                if (run.size() > 1) groups.push_back(run);
                run = {fs[k]};
            }
        }
        if (run.size() > 1) groups.push_back(run);
    }
    return groups;
}

/// Number of orderings that permute members only within their groups.
inline std::uint64_t arrangement_count(const std::vector<std::vector<Var>>& groups) {
    std::uint64_t total = 1;
    for (const auto& g : groups)
        for (std::uint64_t k = 2; k <= g.size(); ++k) {
            if (total > UINT64_MAX / k) return UINT64_MAX;
            total *= k;
        }
    return total;
}

/// Every adjacency of `a` is also one of `b`.
inline bool adjacency_subset(const Dag& a, const Dag& b) {
    for (Var v = 0; v < a.size(); ++v)
        if (!a.neighbours(v).subset_of(b.neighbours(v))) return false;
    return true;
}

namespace detail {

inline std::vector<Arc> lost_clique_arcs(const Dag& before, const Dag& after, VarSet clique) {
    std::vector<Arc> out;
    for (Var a : clique)
        for (Var b : clique)
            if (before.has_arc(a, b) && !after.adjacent(a, b)) out.emplace_back(a, b);
    return out;
}

} // namespace detail

/// Look for an arrangement of the clique's free sets that removes at least one clique arc.
///
/// Candidates are visited in lexicographic order of the permuted block (the first free set
/// varies slowest). Each candidate's permuted members get fresh boundaries from the oracle;
/// every other predecessor set is unchanged, so no other boundary moves. The first candidate
/// with strictly fewer arcs among the clique members and no new adjacency anywhere wins.
inline UncliqueResult unclique_free_sets(const Oracle& oracle, const State& s, VarSet clique,
                                        std::uint64_t max_perms = default_max_perms) {
    const std::uint64_t before = oracle.query_count();
    const auto groups = contiguous_groups(s, free_sets(s, clique));
    const std::uint64_t count = arrangement_count(groups);
    if (count > max_perms)
        throw BudgetExceeded("unclique needs " + std::to_string(count) + " orderings for a clique of size " +
                             std::to_string(clique.size()) + ", budget is " + std::to_string(max_perms));

    UncliqueResult res;
    res.state = s;
    const Dag current = dag_of(s);
    const int current_arcs = current.arcs_within(clique);

    std::vector<std::vector<Var>> arrangement = groups;
    std::vector<int> starts;
    for (const auto& g : groups) starts.push_back(s.order.rank(g.front()));
    auto advance = [&]() {
        for (std::size_t g = arrangement.size(); g-- > 0;) {
            auto& perm = arrangement[g];
            auto by_rank = [&](Var a, Var b) { return s.order.rank(a) < s.order.rank(b); };
            if (std::next_permutation(perm.begin(), perm.end(), by_rank)) return true;
        }
        return false;
    };

    while (advance()) {
        ++res.permutations_tried;
        State cand = s;
        for (std::size_t g = 0; g < arrangement.size(); ++g) cand.order.assign_block(starts[g], arrangement[g]);
        for (const auto& perm : arrangement) {
            if (std::is_sorted(perm.begin(), perm.end(),
                               [&](Var a, Var b) { return s.order.rank(a) < s.order.rank(b); }))
                continue;
            for (Var m : perm) cand.bmap[m] = boundary_of(oracle, m, cand.order.predecessors(m));
        }
        const Dag next = dag_of(cand);
        if (next.arcs_within(clique) >= current_arcs || !adjacency_subset(next, current)) continue;

        res.removed_arcs = detail::lost_clique_arcs(current, next, clique);
        if (!res.removed_arcs.empty()) res.removed = res.removed_arcs.front();
        res.state = std::move(cand);
        res.method = "free-sets";
        break;
    }
    res.oracle_queries = oracle.query_count() - before;
    return res;
}


/// Breadth-first search over orderings of the ranks spanned by the clique, moving only by
/// admissible swaps, for a state with fewer arcs among the clique members. Each swap keeps the
/// represented model from shrinking, so any hit is a monotone step. Visits at most max_states.
inline UncliqueResult unclique_swap_search(const Oracle& oracle, const State& s, VarSet clique,
                                           std::uint64_t max_states = default_max_perms) {
    const std::uint64_t before = oracle.query_count();
    UncliqueResult res;
    res.state = s;
    const Dag current = dag_of(s);
    const int current_arcs = current.arcs_within(clique);
    const auto members = s.order.arrange(clique);
    const int lo = s.order.rank(members.front());
    const int hi = s.order.rank(members.back());

    std::set<std::vector<Var>> seen{s.order.sequence()};
    std::deque<State> queue{s};
    while (!queue.empty()) {
        const State cur = std::move(queue.front());
        queue.pop_front();
        for (int r = lo; r < hi; ++r) {
            const Var i = cur.order.at(r);
            const Var j = cur.order.at(r + 1);
            if (!swap_admissible(cur.bmap, i, j)) continue;
            State next = apply_swap(oracle, cur, i, j).state;
            if (!seen.insert(next.order.sequence()).second) continue;
            ++res.permutations_tried;
            const Dag d = dag_of(next);
            if (d.arcs_within(clique) < current_arcs) {
                res.removed_arcs = detail::lost_clique_arcs(current, d, clique);
                if (!res.removed_arcs.empty()) res.removed = res.removed_arcs.front();
                res.state = std::move(next);
                res.method = "swap-search";
                res.oracle_queries = oracle.query_count() - before;
                return res;
            }
            if (res.permutations_tried >= max_states) {
                res.oracle_queries = oracle.query_count() - before;
                return res;
            }
            queue.push_back(std::move(next));
        }
    }
    res.oracle_queries = oracle.query_count() - before;
    return res;
}

/// Unclique: free-set arrangements first, then (optionally) the admissible-swap search.
inline UncliqueResult unclique(const Oracle& oracle, const State& s, VarSet clique,
                               const UncliqueOptions& options = {}) {
    UncliqueResult res = unclique_free_sets(oracle, s, clique, options.max_perms);
    if (res.removed || !options.swap_search) return res;
    UncliqueResult searched = unclique_swap_search(oracle, s, clique, options.max_perms);
    searched.permutations_tried += res.permutations_tried;
    searched.oracle_queries += res.oracle_queries;
    return searched;
}

} // namespace ordermap
