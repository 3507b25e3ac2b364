#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "dag.hpp"
#include "errors.hpp"

namespace ordermap {

using Rng = std::mt19937_64;

/// Random DAG: a random causal order, each earlier node becomes a parent with probability
/// `edge_prob`, at most `max_parents` per node.
inline Dag random_dag(int n, int max_parents, double edge_prob, Rng& rng) {
    if (n < 1 || n > max_variables) throw InvalidArgument("random DAG size out of range");
    std::vector<Var> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution coin(edge_prob);
    Dag d(n);
    for (int r = 1; r < n; ++r) {
        std::vector<Var> earlier(order.begin(), order.begin() + r);
        std::shuffle(earlier.begin(), earlier.end(), rng);
        int taken = 0;
        for (Var p : earlier) {
            if (taken >= max_parents) break;
            if (coin(rng)) {
                d.add_arc(p, order[static_cast<std::size_t>(r)]);
                ++taken;
            }
        }
    }
    return d;
}

inline Ordering random_ordering(int n, Rng& rng) {
    std::vector<Var> seq = Ordering::identity(n).sequence();
    std::shuffle(seq.begin(), seq.end(), rng);
    return Ordering(std::move(seq));
}

/// Discrete Bayesian network: a DAG with one conditional table per node.
/// cpt[v] is row-major over the parent configuration (ascending parent index, last fastest),
/// each row a distribution over the states of v.
struct BayesNet {
    Dag dag;
    std::vector<int> arity;
    std::vector<std::vector<double>> cpt;

    std::size_t parent_config(Var v, const std::vector<int>& values) const {
        std::size_t idx = 0;
        for (Var p : dag.parents(v))
            idx = idx * static_cast<std::size_t>(arity[static_cast<std::size_t>(p)]) +
                  static_cast<std::size_t>(values[static_cast<std::size_t>(p)]);
        return idx;
    }

    std::vector<Var> topological_order() const {
        std::vector<Var> out;
        VarSet placed;
        while (static_cast<int>(out.size()) < dag.size())
            for (Var v = 0; v < dag.size(); ++v)
                if (!placed.contains(v) && dag.parents(v).subset_of(placed)) {
                    placed.insert(v);
                    out.push_back(v);
                }
        return out;
    }

    /// Joint distribution as a row-major table with the last variable fastest.
    std::vector<double> joint() const {
        std::size_t states = 1;
        for (int a : arity) states *= static_cast<std::size_t>(a);
        std::vector<double> table(states);
        std::vector<int> values(arity.size(), 0);
        for (std::size_t s = 0; s < states; ++s) {
            double p = 1;
            for (Var v = 0; v < dag.size(); ++v) {
                const std::size_t row = parent_config(v, values) * static_cast<std::size_t>(arity[static_cast<std::size_t>(v)]);
                p *= cpt[static_cast<std::size_t>(v)][row + static_cast<std::size_t>(values[static_cast<std::size_t>(v)])];
            }
            table[s] = p;
            for (std::size_t k = values.size(); k-- > 0;) {
                if (++values[k] < arity[k]) break;
                values[k] = 0;
            }
        }
        return table;
    }

    std::vector<std::vector<int>> sample(std::size_t rows, Rng& rng) const {
        const auto topo = topological_order();
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<std::vector<int>> out(rows, std::vector<int>(arity.size(), 0));
        for (auto& values : out) {
            for (Var v : topo) {
                const int k = arity[static_cast<std::size_t>(v)];
                const std::size_t row = parent_config(v, values) * static_cast<std::size_t>(k);
                double u = unit(rng);
                int state = k - 1;
                for (int s = 0; s < k - 1; ++s) {
                    u -= cpt[static_cast<std::size_t>(v)][row + static_cast<std::size_t>(s)];
                    if (u < 0) {
                        state = s;
                        break;
                    }
                }
                values[static_cast<std::size_t>(v)] = state;
            }
        }
        return out;
    }
};

/// Strictly positive random CPTs. Each row mixes uniform weights in [floor, 1], so no
/// probability is below floor / arity.
inline BayesNet random_cpts(const Dag& dag, const std::vector<int>& arity, Rng& rng, double floor = 0.1) {
    if (static_cast<int>(arity.size()) != dag.size()) throw InvalidArgument("arity list does not match the graph");
    BayesNet net{dag, arity, {}};
    std::uniform_real_distribution<double> weight(floor, 1.0);
    for (Var v = 0; v < dag.size(); ++v) {
        std::size_t configs = 1;
        for (Var p : dag.parents(v)) configs *= static_cast<std::size_t>(arity[static_cast<std::size_t>(p)]);
        const int k = arity[static_cast<std::size_t>(v)];
        std::vector<double> table;
        for (std::size_t c = 0; c < configs; ++c) {
            std::vector<double> w(static_cast<std::size_t>(k));
            for (auto& x : w) x = weight(rng);
            const double total = std::accumulate(w.begin(), w.end(), 0.0);
            for (double x : w) table.push_back(x / total);
        }
        net.cpt.push_back(std::move(table));
    }
    return net;
}

} // namespace ordermap
