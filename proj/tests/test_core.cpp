#include <gtest/gtest.h>

#include <ordermap/bruteforce.hpp>
#include <ordermap/causal_list.hpp>
#include <ordermap/model.hpp>

#include "fixtures.hpp"
#include "reference.hpp"

using namespace ordermap;
using namespace fixtures;

namespace {

Dag collider() { return Dag::from_arcs(3, {{a, c}, {b, c}}); }
Dag chain() { return Dag::from_arcs(3, {{a, b}, {b, c}}); }
Dag complete(int n) {
    Dag g(n);
    for (Var i = 0; i < n; ++i)
        for (Var j = i + 1; j < n; ++j) g.add_arc(i, j);
    return g;
}

} // namespace

TEST(VarSet, MembershipAndAlgebra) {
    VarSet s{0, 3, 5};
    EXPECT_EQ(s.size(), 3);
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(4));
    EXPECT_EQ(s.without(3), (VarSet{0, 5}));
    EXPECT_EQ(s | VarSet{1}, (VarSet{0, 1, 3, 5}));
    EXPECT_EQ(s & (VarSet{3, 4}), VarSet{3});
    EXPECT_EQ(s - VarSet{0}, (VarSet{3, 5}));
    EXPECT_TRUE((VarSet{0, 3}).strict_subset_of(s));
    EXPECT_FALSE(s.strict_subset_of(s));
    EXPECT_EQ(s.front(), 0);
    EXPECT_EQ(VarSet::full(4), (VarSet{0, 1, 2, 3}));
    EXPECT_EQ(ref::members(s), (std::vector<int>{0, 3, 5}));
}

TEST(VarSet, OrderIsLexicographicOnSortedMembers) {
    EXPECT_LT((VarSet{0, 5}), (VarSet{1}));
    EXPECT_LT((VarSet{0, 1}), (VarSet{0, 1, 2}));
    EXPECT_LT((VarSet{}), (VarSet{0}));
    EXPECT_LT((VarSet{0, 2, 3}), (VarSet{0, 3}));
}

TEST(VariableTable, RejectsBadNames) {
    EXPECT_THROW(VariableTable({"a", "a"}), InvalidArgument);
    EXPECT_THROW(VariableTable({"a", ""}), InvalidArgument);
    EXPECT_THROW(VariableTable(std::vector<std::string>{}), InvalidArgument);
    EXPECT_THROW(VariableTable({"a", "b"}, {2}), InvalidArgument);
    EXPECT_THROW(VariableTable({"a"}, {0}), InvalidArgument);
    const VariableTable t({"x", "y"}, {2, 3});
    EXPECT_EQ(t.index("y"), 1);
    EXPECT_THROW(t.index("z"), InvalidArgument);
    EXPECT_EQ(t.format(VarSet{0, 1}), "{x,y}");
}

TEST(Statement, ValidatesDisjointNonEmptySets) {
    EXPECT_NO_THROW((Statement{VarSet{a}, {}, VarSet{b}}.validate()));
    EXPECT_THROW((Statement{VarSet{}, {}, VarSet{b}}.validate()), InvalidArgument);
    EXPECT_THROW((Statement{VarSet{a}, VarSet{a}, VarSet{b}}.validate()), InvalidArgument);
    EXPECT_THROW((Statement{VarSet{a, b}, {}, VarSet{b}}.validate()), InvalidArgument);
    const Statement s{VarSet{c}, VarSet{a}, VarSet{b}};
    EXPECT_EQ(s.canonical(), (Statement{VarSet{b}, VarSet{a}, VarSet{c}}));
}

TEST(Ordering, RanksAndPredecessors) {
    const Ordering o({b, a, d, c});
    EXPECT_EQ(o.rank(b), 0);
    EXPECT_EQ(o.rank(c), 3);
    EXPECT_EQ(o.predecessors(d), (VarSet{a, b}));
    EXPECT_EQ(o.first_of(VarSet{c, d}), d);
    EXPECT_THROW(Ordering({0, 0, 1}), InvalidArgument);
    EXPECT_THROW(Ordering({0, 2}), InvalidArgument);
}

TEST(BoundaryMap, ConsistencyCheckCatchesSuccessors) {
    BoundaryMap m(3);
    m[c] = VarSet{a, b};
    EXPECT_NO_THROW(m.check_consistent(Ordering({a, b, c})));
    EXPECT_THROW(m.check_consistent(Ordering({c, a, b})), InvalidState);
}

TEST(Dag, FromArcsRejectsCyclesAndBadEndpoints) {
    EXPECT_THROW(Dag::from_arcs(2, {{0, 1}, {1, 0}}), InvalidArgument);
    EXPECT_THROW(Dag::from_arcs(2, {{0, 2}}), InvalidArgument);
    EXPECT_THROW(Dag::from_arcs(2, {{1, 1}}), InvalidArgument);
}

TEST(Descendants, Examples) {
    EXPECT_EQ(descendants(chain(), a), (VarSet{b, c}));
    EXPECT_EQ(descendants(chain(), c), VarSet{});
    EXPECT_EQ(descendants(diamond(), a), (VarSet{b, c, d}));
}

TEST(DSeparation, Examples) {
    EXPECT_TRUE(d_separated(collider(), VarSet{a}, {}, VarSet{b}));
    EXPECT_FALSE(d_separated(collider(), VarSet{a}, VarSet{c}, VarSet{b}));
    Dag with_child(4);
    with_child.add_arc(a, c);
    with_child.add_arc(b, c);
    with_child.add_arc(c, d);
    EXPECT_FALSE(d_separated(with_child, VarSet{a}, VarSet{d}, VarSet{b}));
    EXPECT_TRUE(d_separated(chain(), VarSet{a}, VarSet{b}, VarSet{c}));
    EXPECT_THROW(d_separated(chain(), VarSet{a}, VarSet{a}, VarSet{c}), InvalidArgument);
    EXPECT_THROW(d_separated(chain(), VarSet{a}, {}, VarSet{a, c}), InvalidArgument);
}

TEST(DSeparation, MatchesPathDefinitionAndIsSymmetric) {
    Rng rng(101);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 5;
        const Dag g = random_truth(rng, n);
        std::uniform_int_distribution<int> label(0, 3);
        for (int q = 0; q < 40; ++q) {
            VarSet x, y, z;
            for (Var v = 0; v < n; ++v) {
                switch (label(rng)) {
                case 0: x.insert(v); break;
                case 1: y.insert(v); break;
                case 2: z.insert(v); break;
                default: break;
                }
            }
            if (x.empty() || y.empty()) continue;
            const bool fast = d_separated(g, x, z, y);
            EXPECT_EQ(fast, ref::d_separated_paths(g, x, z, y));
            EXPECT_EQ(fast, d_separated(g, y, z, x));
        }
    }
}

TEST(Boundary, SoccerExamples) {
    const TableOracle o = soccer_oracle();
    EXPECT_EQ(boundary_of(o, c, VarSet{a, b}), (VarSet{a, b}));
    EXPECT_EQ(boundary_of(o, b, VarSet{a}), VarSet{});
    EXPECT_EQ(boundary_of(o, a, VarSet{}), VarSet{});
}

TEST(CausalInputList, SoccerOrderings) {
    const TableOracle o = soccer_oracle();
    const BoundaryMap abc = build_causal_input_list(o, Ordering({a, b, c}));
    EXPECT_EQ(abc.all(), (std::vector<VarSet>{{}, {}, {a, b}}));
    const BoundaryMap acb = build_causal_input_list(o, Ordering({a, c, b}));
    EXPECT_EQ(acb[a], VarSet{});
    EXPECT_EQ(acb[c], VarSet{});
    EXPECT_EQ(acb[b], (VarSet{a, c}));
    const Dag g = dag_from_boundaries(Ordering({a, b, c}), abc);
    EXPECT_EQ(g.arcs(), (std::vector<Arc>{{a, c}, {b, c}}));
}

TEST(CausalInputList, FourFixtureStartsAsFullClique) {
    const TableOracle o = four_oracle();
    const Ordering theta({b, a, d, c});
    const BoundaryMap m = build_causal_input_list(o, theta);
    EXPECT_EQ(m[b], VarSet{});
    EXPECT_EQ(m[a], VarSet{b});
    EXPECT_EQ(m[d], (VarSet{a, b}));
    EXPECT_EQ(m[c], (VarSet{a, b, d}));
    for (Var u = 0; u < 4; ++u) EXPECT_EQ(m[u], ref::min_boundary(o, u, theta.predecessors(u)));
    const Dag g = dag_from_boundaries(theta, m);
    EXPECT_EQ(g.arc_count(), 6);
    EXPECT_EQ(maximal_cliques(g), (std::vector<VarSet>{{a, b, c, d}}));
}

TEST(CausalInputList, ImapSoundAndBoundariesMinimal) {
    Rng rng(202);
    for (int t = 0; t < 80; ++t) {
        const int n = 2 + t % 5;
        const DagOracle o(random_truth(rng, n));
        const Ordering theta = random_ordering(n, rng);
        const BoundaryMap m = build_causal_input_list(o, theta);
        EXPECT_NO_THROW(m.check_consistent(theta));
        for (Var u = 0; u < n; ++u) EXPECT_EQ(m[u], ref::min_boundary(o, u, theta.predecessors(u)));
        const Dag g = dag_from_boundaries(theta, m);
        EXPECT_TRUE(is_imap(g, o, 6));
        EXPECT_TRUE(ref::statements_within(ref::dag_statements(g), ref::dag_statements(o.truth())));
    }
}

TEST(DagFromBoundaries, RejectsSuccessorsAndHandlesEmpty) {
    BoundaryMap m(3);
    EXPECT_EQ(dag_from_boundaries(Ordering::identity(3), m).arc_count(), 0);
    m[a] = VarSet{b};
    EXPECT_THROW(dag_from_boundaries(Ordering::identity(3), m), InvalidState);
}

TEST(RepresentedModel, Examples) {
    const RepresentedModel m = represented_model(collider());
    EXPECT_EQ(m, (RepresentedModel{{VarSet{a}, {}, VarSet{b}}}));
    const RepresentedModel pair = represented_model(Dag(2));
    EXPECT_TRUE(pair.count(Statement{VarSet{a}, {}, VarSet{b}}));
    EXPECT_TRUE(represented_model(complete(4)).empty());
    EXPECT_TRUE(represented_model(complete(3), 7, true).empty());
    EXPECT_THROW(represented_model(Dag(8)), SizeLimitError);
}

TEST(RepresentedModel, FullSubsetsAgreeWithPathDefinition) {
    Rng rng(303);
    for (int t = 0; t < 10; ++t) {
        const Dag g = random_truth(rng, 4);
        for (const Statement& s : represented_model(g, 7, true)) EXPECT_TRUE(ref::d_separated_paths(g, s.x, s.z, s.y));
        std::size_t expected = 0;
        detail::for_each_statement(4, true, [&](const Statement& s) { expected += ref::d_separated_paths(g, s.x, s.z, s.y); });
        EXPECT_EQ(represented_model(g, 7, true).size(), expected);
    }
}

TEST(RepresentedModel, RelabelEquivariance) {
    Rng rng(404);
    for (int t = 0; t < 30; ++t) {
        const int n = 3 + t % 4;
        const Dag g = random_truth(rng, n);
        const auto perm = random_ordering(n, rng).sequence();
        Dag h(n);
        for (auto [p, q] : g.arcs()) h.add_arc(perm[static_cast<std::size_t>(p)], perm[static_cast<std::size_t>(q)]);
        auto map = [&](VarSet s) {
            VarSet out;
            for (Var v : s) out.insert(perm[static_cast<std::size_t>(v)]);
            return out;
        };
        RepresentedModel mapped;
        for (const Statement& s : represented_model(g)) mapped.insert(Statement{map(s.x), map(s.z), map(s.y)}.canonical());
        EXPECT_EQ(mapped, represented_model(h));
    }
}

TEST(Imap, Examples) {
    const TableOracle soccer = soccer_oracle();
    EXPECT_TRUE(is_imap(complete(3), soccer));
    EXPECT_FALSE(is_imap(Dag(3), soccer));
    EXPECT_TRUE(is_imap(collider(), soccer));
    EXPECT_TRUE(is_minimal_imap(collider(), soccer));
    EXPECT_FALSE(is_minimal_imap(complete(3), soccer));
    EXPECT_EQ(is_minimal_imap(collider(), soccer), ref::minimal_imap(collider(), soccer));
    EXPECT_EQ(is_minimal_imap(complete(3), soccer), ref::minimal_imap(complete(3), soccer));

    const DagOracle pair(Dag::from_arcs(2, {{0, 1}}));
    EXPECT_TRUE(is_minimal_imap(Dag::from_arcs(2, {{0, 1}}), pair));
}

TEST(Cliques, Examples) {
    EXPECT_TRUE(maximal_cliques(chain()).empty());
    const Dag after_unclique = Dag::from_arcs(4, {{b, a}, {a, c}, {b, d}, {a, d}, {c, d}});
    EXPECT_EQ(maximal_cliques(after_unclique), (std::vector<VarSet>{{a, b, d}, {a, c, d}}));
}

TEST(Cliques, MaximalPairwiseAdjacentAndCoverTriangles) {
    Rng rng(505);
    for (int t = 0; t < 60; ++t) {
        const int n = 3 + t % 6;
        const Dag g = random_dag(n, n, 0.6, rng);
        const auto cliques = maximal_cliques(g);
        for (VarSet cl : cliques) {
            EXPECT_TRUE(is_clique(g, cl));
            for (Var v = 0; v < n; ++v) {
                if (!cl.contains(v)) {
                    EXPECT_FALSE(is_clique(g, cl.with(v)));
                }
            }
        }
        for (Var i = 0; i < n; ++i)
            for (Var j = i + 1; j < n; ++j)
                for (Var k = j + 1; k < n; ++k) {
                    if (!is_clique(g, VarSet{i, j, k})) continue;
                    bool covered = false;
                    for (VarSet cl : cliques) covered = covered || (VarSet{i, j, k}).subset_of(cl);
                    EXPECT_TRUE(covered);
                }
        EXPECT_TRUE(std::is_sorted(cliques.begin(), cliques.end()));
    }
}

TEST(Ancestors, AncestorSetAndHeadToHead) {
    EXPECT_EQ(ancestor_set(diamond(), d), (VarSet{a, b, c, d}));
    EXPECT_TRUE(has_head_to_head(diamond(), ancestor_set(diamond(), d)));
    EXPECT_EQ(ancestor_set(chain(), c), (VarSet{a, b, c}));
    EXPECT_FALSE(has_head_to_head(chain(), VarSet{a, b, c}));
    const Dag married = Dag::from_arcs(3, {{a, b}, {c, b}, {a, c}});
    EXPECT_FALSE(has_head_to_head(married, VarSet{a, b, c}));
}

TEST(ModelContains, Examples) {
    const Dag g = diamond();
    EXPECT_TRUE(model_contains(g, g));
    EXPECT_TRUE(model_contains(complete(4), g));
    EXPECT_FALSE(model_contains(g, complete(4)));
}
