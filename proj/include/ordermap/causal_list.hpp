#pragma once

#include "dag.hpp"
#include "oracle.hpp"
#include "ordering.hpp"

namespace ordermap {

/// Greedy shrink of a boundary candidate for u.
///
/// Starting from `start` (assumed to satisfy I(u, start, preds \ start)), each member of
/// `removable` is dropped, in ascending index order, whenever the oracle confirms
/// I(u, B \ {v}, preds \ (B \ {v})).
inline VarSet shrink_boundary(const Oracle& oracle, Var u, VarSet preds, VarSet start, VarSet removable) {
    VarSet b = start;
    for (Var v : removable & start) {
        const VarSet candidate = b.without(v);
        if (oracle.independent(VarSet::single(u), candidate, preds - candidate)) b = candidate;
    }
    return b;
}

/// The minimal B within preds with I(u, B, preds \ B).
inline VarSet boundary_of(const Oracle& oracle, Var u, VarSet preds) {
    if (preds.contains(u)) throw InvalidArgument("a variable cannot be its own predecessor");
    return shrink_boundary(oracle, u, preds, preds, preds);
}

/// L_theta: the boundary of every variable among its predecessors in `order`.
inline BoundaryMap build_causal_input_list(const Oracle& oracle, const Ordering& order) {
    if (order.size() != oracle.size()) throw InvalidArgument("ordering and oracle differ in size");
    BoundaryMap bmap(order.size());
    VarSet preds;
    for (Var u : order.sequence()) {
        bmap[u] = boundary_of(oracle, u, preds);
        preds.insert(u);
    }
    return bmap;
}

inline State initial_state(const Oracle& oracle, const Ordering& order) {
    return {order, build_causal_input_list(oracle, order)};
}

} // namespace ordermap
