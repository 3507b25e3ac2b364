#pragma once

#include <future>
#include <memory>
#include <optional>

#include "algorithm.hpp"
#include "data_oracle.hpp"
#include "metrics.hpp"
#include "sampling.hpp"

namespace ordermap {

/// Generate a network, sample it, learn it back and score the result.
struct SimulationSpec {
    std::optional<Dag> truth;   // random when absent
    int n = 5;
    int max_parents = 3;
    double edge_prob = 0.5;
    std::vector<int> arity;     // default: binary
    std::size_t rows = 10000;
    int restarts = 1;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    bool exact = false;         // d-separation on the truth instead of tests on samples
    LearnConfig learn;
};

struct SimulationReport {
    Dag truth;
    LearnResult best;             // fewest arcs over the restarts, earliest on ties
    StructureMetrics metrics;
    std::uint64_t oracle_queries = 0;   // over all restarts, cache hits included
    std::uint64_t distinct_tests = 0;   // queries that reached the base oracle
    int incomplete_runs = 0;
};

inline constexpr int simulate_max_nodes = 10;

inline SimulationReport simulate(const SimulationSpec& spec) {
    if (spec.rows < 1) throw InvalidArgument("simulation needs at least one row");
    if (spec.restarts < 1) throw InvalidArgument("simulation needs at least one restart");
    if (!(spec.alpha > 0 && spec.alpha < 1)) throw InvalidArgument("alpha must lie in (0, 1)");
    if (!(spec.edge_prob >= 0 && spec.edge_prob <= 1)) throw InvalidArgument("edge probability must lie in [0, 1]");
    if (spec.max_parents < 0) throw InvalidArgument("parent cap must be non-negative");

    Rng rng(spec.seed);
    Dag truth;
    if (spec.truth) {
        truth = *spec.truth;
    } else {
        if (spec.n < 1 || spec.n > simulate_max_nodes)
            throw InvalidArgument("simulated networks have 1 to " + std::to_string(simulate_max_nodes) + " nodes");
        truth = random_dag(spec.n, spec.max_parents, spec.edge_prob, rng);
    }
    const int n = truth.size();
    std::vector<int> arity = spec.arity.empty() ? std::vector<int>(static_cast<std::size_t>(n), 2) : spec.arity;
    if (static_cast<int>(arity.size()) != n) throw InvalidArgument("arity list does not match the network size");
    for (int a : arity)
        if (a < 2) throw InvalidArgument("simulated variables need at least two states");

    const BayesNet net = random_cpts(truth, arity, rng);
    std::unique_ptr<Oracle> base;
    if (spec.exact) {
        base = std::make_unique<DagOracle>(truth);
    } else {
        base = std::make_unique<DataOracle>(arity, net.sample(spec.rows, rng), spec.alpha);
    }

    // Restarts share the read-only base oracle; each owns its cache and draws its own ordering.
    std::vector<std::future<LearnResult>> runs;
    for (int k = 0; k < spec.restarts; ++k) {
        runs.push_back(std::async(std::launch::async, [&, k] {
            Rng sub(spec.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1)));
            CachedOracle cache(*base);
            return optimize_ordering(cache, random_ordering(n, sub), spec.learn);
        }));
    }

    SimulationReport report;
    report.truth = truth;
    bool have = false;
    for (auto& f : runs) {
        LearnResult r = f.get();
        report.oracle_queries += r.stats.oracle_queries;
        report.incomplete_runs += r.stats.incomplete;
        if (!have || r.dag.arc_count() < report.best.dag.arc_count()) {
            report.best = std::move(r);
            have = true;
        }
    }
    report.distinct_tests = base->query_count();
    report.metrics = compare_structure(report.best.dag, truth);
    return report;
}

} // namespace ordermap
