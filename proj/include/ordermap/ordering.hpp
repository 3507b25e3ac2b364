#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "varset.hpp"

namespace ordermap {

/// A total order over the variables. Ranks are 0-based here; user-facing output is 1-based.
class Ordering {
public:
    Ordering() = default;

    explicit Ordering(std::vector<Var> sequence) : sequence_(std::move(sequence)), rank_(sequence_.size(), -1) {
        const int n = static_cast<int>(sequence_.size());
        for (int r = 0; r < n; ++r) {
            const Var v = sequence_[static_cast<std::size_t>(r)];
            if (v < 0 || v >= n || rank_[static_cast<std::size_t>(v)] != -1)
                throw InvalidArgument("ordering is not a permutation of 0.." + std::to_string(n - 1));
            rank_[static_cast<std::size_t>(v)] = r;
        }
    }

    static Ordering identity(int n) {
        std::vector<Var> seq(static_cast<std::size_t>(n));
        std::iota(seq.begin(), seq.end(), 0);
        return Ordering(std::move(seq));
    }

    int size() const { return static_cast<int>(sequence_.size()); }
    Var at(int rank) const { return sequence_.at(static_cast<std::size_t>(rank)); }
    int rank(Var v) const { return rank_.at(static_cast<std::size_t>(v)); }
    const std::vector<Var>& sequence() const { return sequence_; }

    /// Variables strictly before v.
    VarSet predecessors(Var v) const {
        VarSet s;
        for (int r = 0; r < rank(v); ++r) s.insert(at(r));
        return s;
    }

    /// Variables occupying ranks [0, count).
    VarSet prefix(int count) const {
        VarSet s;
        for (int r = 0; r < count; ++r) s.insert(at(r));
        return s;
    }

    /// Members of s listed in this order.
    std::vector<Var> arrange(VarSet s) const {
        std::vector<Var> out = s.members();
        std::sort(out.begin(), out.end(), [this](Var a, Var b) { return rank(a) < rank(b); });
        return out;
    }

    /// The member of s with the lowest rank.
    Var first_of(VarSet s) const {
        if (s.empty()) throw InvalidArgument("first_of on an empty set");
        Var best = s.front();
        for (Var v : s)
            if (rank(v) < rank(best)) best = v;
        return best;
    }

    /// Exchange the variables at ranks r and r+1.
    void swap_adjacent(int r) {
        if (r < 0 || r + 1 >= size()) throw InvalidArgument("swap rank out of range");
        auto& a = sequence_[static_cast<std::size_t>(r)];
        auto& b = sequence_[static_cast<std::size_t>(r + 1)];
        std::swap(a, b);
        rank_[static_cast<std::size_t>(a)] = r;
        rank_[static_cast<std::size_t>(b)] = r + 1;
    }

    /// Rewrite ranks [start, start + block.size()) with block, which must be a permutation of them.
    void assign_block(int start, const std::vector<Var>& block) {
        for (std::size_t k = 0; k < block.size(); ++k) {
            sequence_.at(static_cast<std::size_t>(start) + k) = block[k];
            rank_.at(static_cast<std::size_t>(block[k])) = start + static_cast<int>(k);
        }
    }

    friend bool operator==(const Ordering&, const Ordering&) = default;

private:
    std::vector<Var> sequence_;
    std::vector<int> rank_;
};

/// Boundary B_u of every variable: its parent set in the ordering-induced DAG.
class BoundaryMap {
public:
    BoundaryMap() = default;
    explicit BoundaryMap(int n) : boundary_(static_cast<std::size_t>(n)) {}
    explicit BoundaryMap(std::vector<VarSet> boundary) : boundary_(std::move(boundary)) {}

    int size() const { return static_cast<int>(boundary_.size()); }
    VarSet operator[](Var v) const { return boundary_.at(static_cast<std::size_t>(v)); }
    VarSet& operator[](Var v) { return boundary_.at(static_cast<std::size_t>(v)); }
    const std::vector<VarSet>& all() const { return boundary_; }

    int arc_count() const {
        int total = 0;
        for (VarSet b : boundary_) total += b.size();
        return total;
    }

    /// Throws InvalidState unless every B_u lies inside the predecessors of u.
    void check_consistent(const Ordering& order) const {
        if (order.size() != size()) throw InvalidState("boundary map and ordering differ in size");
        for (Var u = 0; u < size(); ++u) {
            if (!(*this)[u].subset_of(order.predecessors(u)))
                throw InvalidState("boundary of variable " + std::to_string(u) + " contains a successor");
        }
    }

    friend bool operator==(const BoundaryMap&, const BoundaryMap&) = default;

private:
    std::vector<VarSet> boundary_;
};

/// The search state: an ordering with its causal input list.
struct State {
    Ordering order;
    BoundaryMap bmap;

    friend bool operator==(const State&, const State&) = default;
};

} // namespace ordermap
