#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <tuple>
#include <unordered_map>

#include "dag.hpp"
#include "varset.hpp"

namespace ordermap {

/// Answers independency queries I(x, z, y) against a complete independency model.
class Oracle {
public:
    virtual ~Oracle() = default;

    /// Number of variables the model ranges over.
    virtual int size() const = 0;

    bool independent(VarSet x, VarSet z, VarSet y) const {
        Statement{x, z, y}.validate();
        if (!(x | y | z).subset_of(VarSet::full(size())))
            throw InvalidArgument("statement references an unknown variable");
        ++queries_;
        return query(x, z, y);
    }
    bool independent(const Statement& s) const { return independent(s.x, s.z, s.y); }

    std::uint64_t query_count() const { return queries_.load(); }

protected:
    virtual bool query(VarSet x, VarSet z, VarSet y) const = 0;

private:
    mutable std::atomic<std::uint64_t> queries_{0};
};

/// Exact oracle: d-separation in a ground-truth DAG.
class DagOracle final : public Oracle {
public:
    explicit DagOracle(Dag truth) : truth_(std::move(truth)) {
        if (!truth_.acyclic()) throw InvalidArgument("ground-truth graph is cyclic");
    }

    int size() const override { return truth_.size(); }
    const Dag& truth() const { return truth_; }

protected:
    bool query(VarSet x, VarSet z, VarSet y) const override { return d_separated(truth_, x, z, y); }

private:
    Dag truth_;
};

/// Symmetry-canonical cache key: the lexicographically smaller of x and y comes first.
struct StatementKey {
    std::uint64_t first;
    std::uint64_t given;
    std::uint64_t second;
    friend bool operator==(const StatementKey&, const StatementKey&) = default;
};

inline StatementKey canonical_key(VarSet x, VarSet z, VarSet y) {
    const Statement c = Statement{x, z, y}.canonical();
    return {c.x.bits(), c.z.bits(), c.y.bits()};
}

struct StatementKeyHash {
    std::size_t operator()(const StatementKey& k) const noexcept {
        std::uint64_t h = k.first * 0x9E3779B97F4A7C15ull;
        h ^= k.given + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
        h ^= k.second + 0x85EBCA77C2B2AE63ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Memoizes an inner oracle. Safe to share across threads.
class CachedOracle final : public Oracle {
public:
    explicit CachedOracle(const Oracle& inner) : inner_(inner) {}

    int size() const override { return inner_.size(); }
    const Oracle& inner() const { return inner_; }
    std::size_t cache_size() const {
        std::lock_guard lock(mutex_);
        return cache_.size();
    }

protected:
    bool query(VarSet x, VarSet z, VarSet y) const override {
        const StatementKey key = canonical_key(x, z, y);
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(key); it != cache_.end()) return it->second;
        }
        const bool answer = inner_.independent(x, z, y);
        std::lock_guard lock(mutex_);
        cache_.emplace(key, answer);
        return answer;
    }

private:
    const Oracle& inner_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<StatementKey, bool, StatementKeyHash> cache_;
};

} // namespace ordermap
