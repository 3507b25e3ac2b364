#pragma once

#include <algorithm>
#include <optional>
#include <unordered_map>
#include <vector>

#include "causal_list.hpp"
#include "model.hpp"

namespace ordermap {

/// Node cap for sweeping all orderings.
inline constexpr int sweep_limit = 8;
/// Node cap for comparing full singleton models.
inline constexpr int perfect_map_limit = 6;

struct SweepEntry {
    Ordering order;
    int arcs = 0;
    Dag dag;
};

/// Causal-input-list DAG of every ordering, in lexicographic order of the ordering.
struct OrderingSweep {
    std::vector<SweepEntry> entries;
    int min_arcs = 0;
    std::vector<std::size_t> argmin;  // indices into entries

    const SweepEntry& best() const { return entries.at(argmin.front()); }
};

inline OrderingSweep sweep(const Oracle& oracle) {
    const int n = oracle.size();
    if (n > sweep_limit)
        throw SizeLimitError("ordering sweep over " + std::to_string(n) + " variables exceeds the limit of " +
                             std::to_string(sweep_limit));
    // A boundary depends only on (u, predecessor set); orderings share most of them.
    std::unordered_map<std::uint64_t, VarSet> memo;
    auto boundary = [&](Var u, VarSet preds) {
        const std::uint64_t key = (preds.bits() << 6) | static_cast<std::uint64_t>(u);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const VarSet b = boundary_of(oracle, u, preds);
        memo.emplace(key, b);
        return b;
    };

    OrderingSweep out;
    std::vector<Var> seq = Ordering::identity(n).sequence();
    do {
        Ordering order(seq);
        BoundaryMap bmap(n);
        VarSet preds;
        for (Var u : seq) {
            bmap[u] = boundary(u, preds);
            preds.insert(u);
        }
        const int arcs = bmap.arc_count();
        out.entries.push_back({order, arcs, dag_from_boundaries(order, bmap)});
    } while (std::next_permutation(seq.begin(), seq.end()));

    out.min_arcs = out.entries.front().arcs;
    for (const auto& e : out.entries) out.min_arcs = std::min(out.min_arcs, e.arcs);
    for (std::size_t k = 0; k < out.entries.size(); ++k)
        if (out.entries[k].arcs == out.min_arcs) out.argmin.push_back(k);
    return out;
}

/// A sweep DAG whose singleton model equals the oracle's singleton model, if any.
inline std::optional<Dag> perfect_map_exists(const Oracle& oracle, const OrderingSweep& sw) {
    if (oracle.size() > perfect_map_limit)
        throw SizeLimitError("perfect-map search over " + std::to_string(oracle.size()) +
                             " variables exceeds the limit of " + std::to_string(perfect_map_limit));
    const RepresentedModel target = oracle_model(oracle, perfect_map_limit);
    // Only minimum-arc DAGs can be perfect maps: a perfect map's skeleton is forced.
    for (std::size_t k : sw.argmin) {
        const Dag& d = sw.entries[k].dag;
        if (represented_model(d, perfect_map_limit) == target) return d;
    }
    return std::nullopt;
}

inline std::optional<Dag> perfect_map_exists(const Oracle& oracle) {
    if (oracle.size() > perfect_map_limit)
        throw SizeLimitError("perfect-map search over " + std::to_string(oracle.size()) +
                             " variables exceeds the limit of " + std::to_string(perfect_map_limit));
    return perfect_map_exists(oracle, sweep(oracle));
}

} // namespace ordermap
