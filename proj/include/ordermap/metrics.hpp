#pragma once

#include "dag.hpp"

namespace ordermap {

/// Structural comparison of a learned graph against a reference.
struct StructureMetrics {
    int true_edges = 0;
    int learned_edges = 0;
    int matched_edges = 0;
    int skeleton_shd = 0;   // edge insertions + deletions
    int directed_shd = 0;   // skeleton_shd + adjacencies with the wrong orientation
    double precision = 1;
    double recall = 1;
};

inline StructureMetrics compare_structure(const Dag& learned, const Dag& truth) {
    if (learned.size() != truth.size()) throw InvalidArgument("graphs differ in size");
    StructureMetrics m;
    int flipped = 0;
    for (Var a = 0; a < truth.size(); ++a)
        for (Var b = a + 1; b < truth.size(); ++b) {
            const bool t = truth.adjacent(a, b);
            const bool l = learned.adjacent(a, b);
            m.true_edges += t;
            m.learned_edges += l;
            if (t && l) {
                ++m.matched_edges;
                if (truth.has_arc(a, b) != learned.has_arc(a, b)) ++flipped;
            } else if (t != l) {
                ++m.skeleton_shd;
            }
        }
    m.directed_shd = m.skeleton_shd + flipped;
    if (m.learned_edges > 0) m.precision = static_cast<double>(m.matched_edges) / m.learned_edges;
    if (m.true_edges > 0) m.recall = static_cast<double>(m.matched_edges) / m.true_edges;
    return m;
}

} // namespace ordermap
