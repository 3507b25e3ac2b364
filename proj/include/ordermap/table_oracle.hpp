#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "errors.hpp"
#include "oracle.hpp"
#include "varset.hpp"

namespace ordermap {

namespace detail {

/// Mixed-radix index of the configuration of `vars` inside a full assignment.
class ConfigIndex {
public:
    ConfigIndex(VarSet vars, const std::vector<int>& arity) {
        std::size_t stride = 1;
        // Last member varies fastest, matching the row-major table layout.
        std::vector<Var> m = vars.members();
        for (auto it = m.rbegin(); it != m.rend(); ++it) {
            members_.push_back(*it);
            strides_.push_back(stride);
            stride *= static_cast<std::size_t>(arity[static_cast<std::size_t>(*it)]);
        }
        count_ = stride;
    }

    std::size_t count() const { return count_; }

    template <typename Assignment>
    std::size_t operator()(const Assignment& values) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < members_.size(); ++k)
            idx += static_cast<std::size_t>(values[static_cast<std::size_t>(members_[k])]) * strides_[k];
        return idx;
    }

private:
    std::vector<Var> members_;
    std::vector<std::size_t> strides_;
    std::size_t count_ = 1;
};

/// Three-way contingency layout [z][x][y] shared by the table and data oracles.
struct Contingency {
    std::size_t nx = 1, ny = 1, nz = 1;
    std::vector<double> cells;

    double& at(std::size_t z, std::size_t x, std::size_t y) { return cells[(z * nx + x) * ny + y]; }
    double at(std::size_t z, std::size_t x, std::size_t y) const { return cells[(z * nx + x) * ny + y]; }
};

} // namespace detail

/// Exact oracle over an explicit joint distribution, row-major with the last variable fastest.
class TableOracle final : public Oracle {
public:
    TableOracle(std::vector<int> arity, std::vector<double> probs, double epsilon = 1e-9)
        : arity_(std::move(arity)), probs_(std::move(probs)), epsilon_(epsilon) {
        if (arity_.empty() || static_cast<int>(arity_.size()) > max_variables)
            throw InvalidArgument("table needs between 1 and 64 variables");
        std::size_t states = 1;
        for (int a : arity_) {
            if (a < 1) throw InvalidArgument("arity must be positive");
            states *= static_cast<std::size_t>(a);
        }
        if (probs_.size() != states)
            throw InvalidArgument("table has " + std::to_string(probs_.size()) + " entries, expected " +
                                  std::to_string(states));
        if (epsilon_ < 0) throw InvalidArgument("epsilon must be non-negative");
        double total = 0;
        for (double p : probs_) {
            if (!(p >= 0)) throw InvalidArgument("table entries must be non-negative");
            if (p == 0) has_zero_ = true;
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("table entries must sum to 1");
    }

    int size() const override { return static_cast<int>(arity_.size()); }
    const std::vector<int>& arity() const { return arity_; }
    const std::vector<double>& probs() const { return probs_; }
    double epsilon() const { return epsilon_; }
    /// Set when some entry is zero, i.e. the distribution is not strictly positive.
    bool positivity_warning() const { return has_zero_; }

    /// Joint marginal over `vars`, indexed like a table over those variables alone.
    std::vector<double> marginal(VarSet vars) const {
        detail::ConfigIndex index(vars, arity_);
        std::vector<double> out(index.count(), 0.0);
        std::vector<int> values(arity_.size(), 0);
        for (double p : probs_) {
            out[index(values)] += p;
            advance(values);
        }
        return out;
    }

protected:
    bool query(VarSet x, VarSet z, VarSet y) const override {
        const detail::Contingency t = contingency(x, z, y);
        for (std::size_t zc = 0; zc < t.nz; ++zc) {
            double pz = 0;
            std::vector<double> px(t.nx, 0.0), py(t.ny, 0.0);
            for (std::size_t xc = 0; xc < t.nx; ++xc) {
                for (std::size_t yc = 0; yc < t.ny; ++yc) {
                    const double p = t.at(zc, xc, yc);
                    pz += p;
                    px[xc] += p;
                    py[yc] += p;
                }
            }
            if (pz <= 0) continue;
            for (std::size_t xc = 0; xc < t.nx; ++xc)
                for (std::size_t yc = 0; yc < t.ny; ++yc)
                    if (std::abs(t.at(zc, xc, yc) / pz - (px[xc] / pz) * (py[yc] / pz)) > epsilon_) return false;
        }
        return true;
    }

private:
    void advance(std::vector<int>& values) const {
        for (std::size_t k = values.size(); k-- > 0;) {
            if (++values[k] < arity_[k]) return;
            values[k] = 0;
        }
    }

    detail::Contingency contingency(VarSet x, VarSet z, VarSet y) const {
        detail::ConfigIndex ix(x, arity_), iy(y, arity_), iz(z, arity_);
        detail::Contingency t{ix.count(), iy.count(), iz.count(), {}};
        t.cells.assign(t.nx * t.ny * t.nz, 0.0);
        std::vector<int> values(arity_.size(), 0);
        for (double p : probs_) {
            t.at(iz(values), ix(values), iy(values)) += p;
            advance(values);
        }
        return t;
    }

    std::vector<int> arity_;
    std::vector<double> probs_;
    double epsilon_;
    bool has_zero_ = false;
};

} // namespace ordermap
