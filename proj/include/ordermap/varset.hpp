#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"

namespace ordermap {

using Var = int;

/// Upper bound on the number of variables a single model may hold.
inline constexpr int max_variables = 64;

/// A set of variable indices backed by a 64-bit mask. Iteration is ascending.
class VarSet {
public:
    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = Var;
        using difference_type = std::ptrdiff_t;
        using pointer = const Var*;
        using reference = Var;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

        constexpr Var operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr iterator operator++(int) {
            iterator copy = *this;
            ++*this;
            return copy;
        }
        constexpr bool operator==(const iterator&) const = default;

    private:
        std::uint64_t rest_ = 0;
    };

    constexpr VarSet() = default;
    constexpr VarSet(std::initializer_list<Var> vars) {
        for (Var v : vars) insert(v);
    }

    static constexpr VarSet from_bits(std::uint64_t bits) {
        VarSet s;
        s.bits_ = bits;
        return s;
    }
    static constexpr VarSet single(Var v) { return from_bits(bit(v)); }
    /// {0, ..., n-1}
    static constexpr VarSet full(int n) {
        return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
    }
    template <typename Range>
    static VarSet of(const Range& vars) {
        VarSet s;
        for (Var v : vars) s.insert(v);
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(Var v) const { return v >= 0 && v < 64 && (bits_ & bit(v)) != 0; }
    /// Smallest member; undefined on the empty set.
    constexpr Var front() const { return std::countr_zero(bits_); }

    constexpr void insert(Var v) { bits_ |= bit(v); }
    constexpr void erase(Var v) { bits_ &= ~bit(v); }

    constexpr VarSet with(Var v) const { return from_bits(bits_ | bit(v)); }
    constexpr VarSet without(Var v) const { return from_bits(bits_ & ~bit(v)); }

    constexpr bool subset_of(VarSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool strict_subset_of(VarSet other) const { return subset_of(other) && bits_ != other.bits_; }
    constexpr bool intersects(VarSet other) const { return (bits_ & other.bits_) != 0; }

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<Var> members() const { return {begin(), end()}; }

    friend constexpr VarSet operator|(VarSet a, VarSet b) { return from_bits(a.bits_ | b.bits_); }
    friend constexpr VarSet operator&(VarSet a, VarSet b) { return from_bits(a.bits_ & b.bits_); }
    friend constexpr VarSet operator-(VarSet a, VarSet b) { return from_bits(a.bits_ & ~b.bits_); }
    constexpr VarSet& operator|=(VarSet o) { bits_ |= o.bits_; return *this; }
    constexpr VarSet& operator&=(VarSet o) { bits_ &= o.bits_; return *this; }
    constexpr VarSet& operator-=(VarSet o) { bits_ &= ~o.bits_; return *this; }

    friend constexpr bool operator==(VarSet a, VarSet b) { return a.bits_ == b.bits_; }

    // Lexicographic order of the ascending member lists, so {0,5} < {1} and {0} < {0,1}.
    friend constexpr std::strong_ordering operator<=>(VarSet a, VarSet b) {
        const std::uint64_t diff = a.bits_ ^ b.bits_;
        if (diff == 0) return std::strong_ordering::equal;
        const int v = std::countr_zero(diff);
        if ((a.bits_ >> v) & 1) {
            return (b.bits_ >> v) == 0 ? std::strong_ordering::greater : std::strong_ordering::less;
        }
        return (a.bits_ >> v) == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

private:
    static constexpr std::uint64_t bit(Var v) {
        if (v < 0 || v >= 64) throw InvalidArgument("variable index out of range: " + std::to_string(v));
        return std::uint64_t{1} << v;
    }

    std::uint64_t bits_ = 0;
};

struct VarSetHash {
    std::size_t operator()(VarSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

/// Names (and, for table/data oracles, arities) of the variable set.
class VariableTable {
public:
    VariableTable() = default;
    explicit VariableTable(std::vector<std::string> names, std::vector<int> arity = {})
        : names_(std::move(names)), arity_(std::move(arity)) {
        if (names_.empty()) throw InvalidArgument("a model needs at least one variable");
        if (static_cast<int>(names_.size()) > max_variables)
            throw InvalidArgument("at most " + std::to_string(max_variables) + " variables are supported");
        if (!arity_.empty() && arity_.size() != names_.size())
            throw InvalidArgument("arity list length does not match the variable list");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw InvalidArgument("variable names must be non-empty");
            if (!index_.emplace(names_[i], static_cast<Var>(i)).second)
                throw InvalidArgument("duplicate variable name: " + names_[i]);
        }
        for (int a : arity_)
            if (a < 1) throw InvalidArgument("arity must be positive");
    }

    /// Variables named a, b, c, ... (enough for the fixtures and random models).
    static VariableTable letters(int n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) {
            names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "v" + std::to_string(i));
        }
        return VariableTable(std::move(names));
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(Var v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& names() const { return names_; }
    bool has_arity() const { return !arity_.empty(); }
    const std::vector<int>& arity() const { return arity_; }

    Var index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InvalidArgument("unknown variable: " + name);
        return it->second;
    }

    VarSet set_of(const std::vector<std::string>& names) const {
        VarSet s;
        for (const auto& n : names) s.insert(index(n));
        return s;
    }

    std::string format(VarSet s) const {
        std::string out = "{";
        bool first = true;
        for (Var v : s) {
            if (!first) out += ",";
            out += name(v);
            first = false;
        }
        return out + "}";
    }

private:
    std::vector<std::string> names_;
    std::vector<int> arity_;
    std::unordered_map<std::string, Var> index_;
};

/// I(x, z, y): x independent of y given z.
struct Statement {
    VarSet x;
    VarSet z;
    VarSet y;

    void validate() const {
        if (x.empty() || y.empty()) throw InvalidArgument("independency statement needs non-empty X and Y");
        if (x.intersects(y) || x.intersects(z) || y.intersects(z))
            throw InvalidArgument("independency statement sets must be pairwise disjoint");
    }

    /// Representative of the symmetry class {I(x,z,y), I(y,z,x)}.
    Statement canonical() const { return y < x ? Statement{y, z, x} : *this; }

    friend auto operator<=>(const Statement&, const Statement&) = default;
    friend bool operator==(const Statement&, const Statement&) = default;
};

} // namespace ordermap
