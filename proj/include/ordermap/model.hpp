#pragma once

#include <set>

#include "dag.hpp"
#include "oracle.hpp"

namespace ordermap {

/// Node cap for enumerating a represented model.
inline constexpr int default_model_limit = 7;

/// M_D: the symmetry-normalized statements d-separation reads off a DAG.
using RepresentedModel = std::set<Statement>;

namespace detail {

inline void require_limit(int n, int limit) {
    if (n > limit)
        throw SizeLimitError("model enumeration over " + std::to_string(n) + " nodes exceeds the limit of " +
                             std::to_string(limit));
}

/// Calls visit(stmt) for every canonical statement; singletons only unless `full`.
template <typename Visit>
void for_each_statement(int n, bool full, Visit&& visit) {
    const VarSet all = VarSet::full(n);
    if (!full) {
        for (Var a = 0; a < n; ++a)
            for (Var b = a + 1; b < n; ++b) {
                const VarSet rest = all.without(a).without(b);
                // Enumerate every subset of rest.
                for (std::uint64_t sub = rest.bits();; sub = (sub - 1) & rest.bits()) {
                    visit(Statement{VarSet::single(a), VarSet::from_bits(sub), VarSet::single(b)});
                    if (sub == 0) break;
                }
            }
        return;
    }
    // Assign each node to X, Y, Z or none: 4^n labellings.
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= 4;
    for (std::uint64_t code = 0; code < total; ++code) {
        VarSet x, y, z;
        std::uint64_t c = code;
        for (Var v = 0; v < n; ++v, c /= 4) {
            switch (c % 4) {
            case 1: x.insert(v); break;
            case 2: y.insert(v); break;
            case 3: z.insert(v); break;
            default: break;
            }
        }
        if (x.empty() || y.empty() || y < x) continue;
        visit(Statement{x, z, y});
    }
}

} // namespace detail

/// Statements <x, z, y> that hold in `dag`. Singleton X and Y unless `full` is set.
inline RepresentedModel represented_model(const Dag& dag, int limit = default_model_limit, bool full = false) {
    detail::require_limit(dag.size(), limit);
    RepresentedModel model;
    detail::for_each_statement(dag.size(), full, [&](const Statement& s) {
        if (d_separated(dag, s.x, s.z, s.y)) model.insert(s);
    });
    return model;
}

/// Statements the oracle confirms, enumerated the same way as represented_model.
inline RepresentedModel oracle_model(const Oracle& oracle, int limit = default_model_limit, bool full = false) {
    detail::require_limit(oracle.size(), limit);
    RepresentedModel model;
    detail::for_each_statement(oracle.size(), full, [&](const Statement& s) {
        if (oracle.independent(s)) model.insert(s);
    });
    return model;
}

/// Every separation in `dag` is an independency of the oracle's model.
inline bool is_imap(const Dag& dag, const Oracle& oracle, int limit = default_model_limit, bool full = false) {
    if (dag.size() != oracle.size()) throw InvalidArgument("graph and oracle differ in size");
    detail::require_limit(dag.size(), limit);
    bool ok = true;
    detail::for_each_statement(dag.size(), full, [&](const Statement& s) {
        if (ok && d_separated(dag, s.x, s.z, s.y) && !oracle.independent(s)) ok = false;
    });
    return ok;
}

/// An I-map from which no single arc can be removed without losing I-mappedness.
inline bool is_minimal_imap(const Dag& dag, const Oracle& oracle, int limit = default_model_limit,
                            bool full = false) {
    if (!is_imap(dag, oracle, limit, full)) return false;
    for (auto [p, c] : dag.arcs())
        if (is_imap(dag.without_arc(p, c), oracle, limit, full)) return false;
    return true;
}

/// M_a is contained in M_b, compared on singleton statements.
inline bool model_contains(const Dag& a, const Dag& b, int limit = default_model_limit) {
    if (a.size() != b.size()) throw InvalidArgument("graphs differ in size");
    detail::require_limit(a.size(), limit);
    bool ok = true;
    detail::for_each_statement(a.size(), false, [&](const Statement& s) {
        if (ok && d_separated(a, s.x, s.z, s.y) && !d_separated(b, s.x, s.z, s.y)) ok = false;
    });
    return ok;
}

} // namespace ordermap
