#pragma once

#include <ordermap/sampling.hpp>
#include <ordermap/table_oracle.hpp>

namespace fixtures {

using namespace ordermap;

inline constexpr Var a = 0, b = 1, c = 2, d = 3;

/// a, b independent fair coins; c = [a == b] with 2% noise.
inline BayesNet soccer_net() {
    return {Dag::from_arcs(3, {{a, c}, {b, c}}),
            {2, 2, 2},
            {{0.5, 0.5}, {0.5, 0.5}, {0.02, 0.98, 0.98, 0.02, 0.98, 0.02, 0.02, 0.98}}};
}

/// a fair; b and c depend on a only; d depends on a, b, c through generic constants.
inline BayesNet four_net() {
    const double pd[8] = {0.15, 0.62, 0.38, 0.87, 0.71, 0.24, 0.93, 0.46};
    std::vector<double> cpt_d;
    for (double p : pd) {
        cpt_d.push_back(1 - p);
        cpt_d.push_back(p);
    }
    return {Dag::from_arcs(4, {{a, b}, {a, c}, {a, d}, {b, d}, {c, d}}),
            {2, 2, 2, 2},
            {{0.5, 0.5}, {0.2, 0.8, 0.7, 0.3}, {0.3, 0.7, 0.8, 0.2}, cpt_d}};
}

/// a -> b, a -> c, b -> d, c -> d.
inline Dag diamond() { return Dag::from_arcs(4, {{a, b}, {a, c}, {b, d}, {c, d}}); }

/// The diamond oracle with the reversed ordering (d, c, b, a): two mutually restricted triangles.
inline Ordering diamond_rev_order() { return Ordering({d, c, b, a}); }

/// Random ground truth as used by the property tests: up to three parents, arc probability 1/2.
inline Dag random_truth(Rng& rng, int n) { return random_dag(n, 3, 0.5, rng); }

inline TableOracle soccer_oracle() { return TableOracle({2, 2, 2}, soccer_net().joint()); }
inline TableOracle four_oracle() { return TableOracle({2, 2, 2, 2}, four_net().joint()); }

} // namespace fixtures
