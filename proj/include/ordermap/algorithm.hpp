#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "model.hpp"
#include "reversal.hpp"
#include "reunion.hpp"
#include "unclique.hpp"

namespace ordermap {

/// A parent/child pair that cannot be swapped without losing independencies:
/// i in B_j and B_i != B_j \ {i}.
struct Restriction {
    Var i;
    Var j;
    friend auto operator<=>(const Restriction&, const Restriction&) = default;
};

inline std::vector<Restriction> find_restrictions(const BoundaryMap& bmap) {
    std::vector<Restriction> out;
    for (Var j = 0; j < bmap.size(); ++j)
        for (Var i : bmap[j])
            if (bmap[i] != bmap[j].without(i)) out.push_back({i, j});
    std::sort(out.begin(), out.end());
    return out;
}

/// Some a in cl is restricted by some b outside cl, and a clique of `cliques` holds both.
/// The direction of the restriction is ignored.
template <typename Cliques>
bool clique_restricted_by_clique(VarSet cl, const std::vector<Restriction>& restrictions, const Cliques& cliques) {
    for (const auto& r : restrictions) {
        const bool i_in = cl.contains(r.i);
        const bool j_in = cl.contains(r.j);
        if (i_in == j_in) continue;
        const VarSet pair = VarSet{r.i, r.j};
        for (VarSet other : cliques)
            if (pair.subset_of(other)) return true;
    }
    return false;
}

/// Processing class of a clique in S: 1 is chosen first.
///   1  no member takes part in any restriction
///   2  no other clique of S inside the ancestor set of its first node, and not restricted by S
///   3  not restricted by another clique of S
///   4  everything else
template <typename Cliques>
int clique_priority(VarSet cl, const Cliques& work_set, const Dag& dag, const Ordering& order,
                    const std::vector<Restriction>& restrictions) {
    bool touched = false;
    for (const auto& r : restrictions) touched = touched || cl.contains(r.i) || cl.contains(r.j);
    if (!touched) return 1;
    if (clique_restricted_by_clique(cl, restrictions, work_set)) return 4;
    const VarSet anc = ancestor_set(dag, order.first_of(cl));
    for (VarSet other : work_set)
        if (other != cl && other.subset_of(anc)) return 3;
    return 2;
}

/// Replace every clique holding both ends of the removed arc by its two remnants (size >= 3 only).
inline void split_cliques(std::set<VarSet>& cliques, Arc removed) {
    std::set<VarSet> out;
    for (VarSet c : cliques) {
        if (c.contains(removed.first) && c.contains(removed.second)) {
            for (VarSet part : {c.without(removed.first), c.without(removed.second)})
                if (part.size() >= 3) out.insert(part);
        } else {
            out.insert(c);
        }
    }
    cliques = std::move(out);
}

/// One operator application in a learning run.
struct TraceStep {
    std::string op;  // reversal-prepare, reversal, refine, reunion, unclique, budget
    VarSet clique;
    State before;
    State after;
    std::vector<Arc> arcs_removed;
    std::uint64_t oracle_queries = 0;
    std::string note;
};

using RunTrace = std::vector<TraceStep>;

struct LearnConfig {
    std::uint64_t max_perms = default_max_perms;
    bool swap_search = true;  // see UncliqueOptions
    int max_iterations = 100000;
};

struct LearnStats {
    std::uint64_t oracle_queries = 0;
    std::uint64_t permutations = 0;
    int iterations = 0;
    int splits = 0;
    int reversals = 0;
    int refinements = 0;
    int budget_failures = 0;
    bool incomplete = false;        // a clique was abandoned (budget or iteration ceiling)
    bool iteration_ceiling = false;
};

struct LearnResult {
    State state;
    Dag dag;
    RunTrace trace;
    LearnStats stats;
};

namespace detail {

/// Re-derive a clique collection against the current graph: surviving cliques stay, broken ones
/// are replaced by the maximal cliques left inside them.
inline void reconcile(std::set<VarSet>& cliques, const Dag& dag) {
    std::set<VarSet> out;
    for (VarSet c : cliques) {
        if (is_clique(dag, c)) {
            out.insert(c);
        } else {
            for (VarSet part : maximal_cliques_within(dag, c)) out.insert(part);
        }
    }
    cliques = std::move(out);
}

inline std::vector<Arc> lost_adjacencies(const Dag& before, const Dag& after) {
    std::vector<Arc> out;
    for (auto [p, c] : before.arcs())
        if (!after.adjacent(p, c)) out.emplace_back(p, c);
    return out;
}

class Run {
public:
    Run(const Oracle& oracle, const Ordering& initial, const LearnConfig& config)
        : oracle_(oracle), config_(config), start_queries_(oracle.query_count()) {
        state_ = initial_state(oracle, initial);
        for (VarSet c : maximal_cliques(dag_of(state_))) work_.insert(c);
    }

    LearnResult run() {
        while (true) {
            if (work_.empty() && !refill()) break;
            if (++stats_.iterations > config_.max_iterations) {
                stats_.iteration_ceiling = stats_.incomplete = true;
                break;
            }
            process(pick());
        }
        stats_.oracle_queries = oracle_.query_count() - start_queries_;
        return {state_, dag_of(state_), std::move(trace_), stats_};
    }

private:
    VarSet pick() const {
        const Dag dag = dag_of(state_);
        const auto restrictions = find_restrictions(state_.bmap);
        VarSet best;
        int best_class = 5;
        for (VarSet c : work_) {
            const int k = clique_priority(c, work_, dag, state_.order, restrictions);
            // work_ iterates in ascending order, which breaks ties by smallest member.
            if (k < best_class) {
                best_class = k;
                best = c;
            }
        }
        return best;
    }

    /// Move cliques of R back into S once the graph has lost arcs since they were last
    /// processed. False when nothing can be released.
    bool refill() {
        const int arcs = state_.bmap.arc_count();
        std::set<VarSet> released;
        for (VarSet c : restricted_) {
            auto seen = processed_at_.find(c);
            if (seen == processed_at_.end() || seen->second != arcs) released.insert(c);
        }
        if (released.empty()) return false;
        for (VarSet c : released) {
            restricted_.erase(c);
            work_.insert(c);
        }
        return true;
    }

    /// Adopt a new state and keep S and R consistent with its skeleton. Returns lost arcs.
    std::vector<Arc> adopt(State next) {
        const Dag before = dag_of(state_);
        const Dag after = dag_of(next);
        state_ = std::move(next);
        auto lost = lost_adjacencies(before, after);
        if (!lost.empty()) {
            for (Arc a : lost) {
                split_cliques(work_, a);
                split_cliques(restricted_, a);
            }
            reconcile(work_, after);
            reconcile(restricted_, after);
            stats_.splits += static_cast<int>(lost.size());
        }
        return lost;
    }

    void record(const char* op, VarSet clique, const State& before, const State& after, std::uint64_t queries,
                std::string note = {}) {
        trace_.push_back({op, clique, before, after, lost_adjacencies(dag_of(before), dag_of(after)), queries,
                          std::move(note)});
    }

    /// Apply a transition; true when `clique` is no longer a clique afterwards.
    bool step(const char* op, VarSet clique, State next, std::uint64_t queries, std::string note = {}) {
        if (next == state_) return false;
        record(op, clique, state_, next, queries, std::move(note));
        adopt(std::move(next));
        if (is_clique(dag_of(state_), clique)) return false;
        for (VarSet part : maximal_cliques_within(dag_of(state_), clique)) work_.insert(part);
        return true;
    }

    void process(VarSet cl) {
        work_.erase(cl);
        processed_at_[cl] = state_.bmap.arc_count();

        const ReversalResult rev = reversal(oracle_, state_, cl);
        if (rev.status == ReversalStatus::applied) {
            ++stats_.reversals;
            if (step("reversal-prepare", cl, rev.prepared, 0)) return;
            if (step("reversal", cl, rev.reversed, rev.oracle_queries)) return;
            if (!rev.transpose_was_tight) ++stats_.refinements;
            if (step("refine", cl, rev.refined, 0)) return;
        }

        const ReunionResult reu = clique_reunion(oracle_, state_, cl);
        if (step("reunion", cl, reu.state, reu.oracle_queries,
                 reu.blocked_links ? std::to_string(reu.blocked_links) + " blocked link(s)" : std::string{}))
            return;

        UncliqueResult un;
        try {
            un = unclique(oracle_, state_, cl, {config_.max_perms, config_.swap_search});
        } catch (const BudgetExceeded& e) {
            ++stats_.budget_failures;
            stats_.incomplete = true;
            trace_.push_back({"budget", cl, state_, state_, {}, 0, e.what()});
            return;
        }
        stats_.permutations += un.permutations_tried;
        if (un.removed) {
            step("unclique", cl, un.state, un.oracle_queries, un.method);
            return;
        }
        std::set<VarSet> others = work_;
        others.insert(restricted_.begin(), restricted_.end());
        if (clique_restricted_by_clique(cl, find_restrictions(state_.bmap), others)) restricted_.insert(cl);
    }

    const Oracle& oracle_;
    LearnConfig config_;
    std::uint64_t start_queries_;
    State state_;
    std::set<VarSet> work_;        // S
    std::set<VarSet> restricted_;  // R
    std::map<VarSet, int> processed_at_;
    RunTrace trace_;
    LearnStats stats_;
};

} // namespace detail

/// Learn a minimal I-map by optimizing the variable ordering, starting from `initial`.
inline LearnResult optimize_ordering(const Oracle& oracle, const Ordering& initial, const LearnConfig& config = {}) {
    if (initial.size() != oracle.size()) throw InvalidArgument("initial ordering and oracle differ in size");
    return detail::Run(oracle, initial, config).run();
}

/// Outcome of replaying a trace against represented-model containment.
struct TraceReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Every step must keep M_before inside M_after (singleton statements); reversal steps must
/// leave it unchanged. Each state along the way must also be an I-map of the oracle.
inline TraceReport verify_trace(const RunTrace& trace, const Oracle& oracle, int limit = 6) {
    TraceReport report;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const TraceStep& s = trace[k];
        const Dag before = dag_of(s.before);
        const Dag after = dag_of(s.after);
        if (before.size() > limit)
            throw SizeLimitError("trace verification over " + std::to_string(before.size()) + " nodes exceeds " +
                                 std::to_string(limit));
        auto fail = [&](const std::string& why) {
            report.ok = false;
            report.violations.push_back("step " + std::to_string(k) + " (" + s.op + "): " + why);
        };
        if (!model_contains(before, after, limit)) fail("represented model shrank");
        if (s.op == "reversal" && !model_contains(after, before, limit)) fail("reversal changed the represented model");
        if (!is_imap(after, oracle, limit)) fail("result is not an I-map");
    }
    return report;
}

} // namespace ordermap
