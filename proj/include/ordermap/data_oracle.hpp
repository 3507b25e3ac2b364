#pragma once

#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "errors.hpp"
#include "oracle.hpp"
#include "table_oracle.hpp"

namespace ordermap {

/// G-squared conditional independence test over discrete samples.
///
/// Compound sets are treated as a single variable over the cartesian product of their
/// members' states. Only z-strata present in the data contribute; within a stratum, empty
/// rows and columns reduce the degrees of freedom. The query answers "independent" when
/// the test fails to reject at level alpha, including the zero-dof case.
class DataOracle final : public Oracle {
public:
    DataOracle(std::vector<int> arity, std::vector<std::vector<int>> rows, double alpha = 0.05)
        : arity_(std::move(arity)), rows_(std::move(rows)), alpha_(alpha) {
        if (arity_.empty() || static_cast<int>(arity_.size()) > max_variables)
            throw InvalidArgument("data needs between 1 and 64 variables");
        if (!(alpha_ > 0 && alpha_ < 1)) throw InvalidArgument("alpha must lie in (0, 1)");
        if (rows_.empty()) throw InvalidState("data oracle needs at least one row");
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (rows_[r].size() != arity_.size())
                throw InvalidArgument("row " + std::to_string(r) + " has the wrong number of columns");
            for (std::size_t k = 0; k < arity_.size(); ++k)
                if (rows_[r][k] < 0 || rows_[r][k] >= arity_[k])
                    throw InvalidArgument("row " + std::to_string(r) + " has a value outside the arity of column " +
                                          std::to_string(k));
        }
    }

    int size() const override { return static_cast<int>(arity_.size()); }
    double alpha() const { return alpha_; }
    std::size_t row_count() const { return rows_.size(); }

    struct TestResult {
        double statistic = 0;
        int dof = 0;
        double p_value = 1;
    };

    TestResult g2_test(VarSet x, VarSet z, VarSet y) const {
        detail::ConfigIndex ix(x, arity_), iy(y, arity_), iz(z, arity_);
        detail::Contingency t{ix.count(), iy.count(), iz.count(), {}};
        t.cells.assign(t.nx * t.ny * t.nz, 0.0);
        for (const auto& row : rows_) t.at(iz(row), ix(row), iy(row)) += 1.0;

        TestResult result;
        std::vector<double> rx(t.nx), cy(t.ny);
        for (std::size_t zc = 0; zc < t.nz; ++zc) {
            double nz = 0;
            std::fill(rx.begin(), rx.end(), 0.0);
            std::fill(cy.begin(), cy.end(), 0.0);
            for (std::size_t xc = 0; xc < t.nx; ++xc)
                for (std::size_t yc = 0; yc < t.ny; ++yc) {
                    const double o = t.at(zc, xc, yc);
                    nz += o;
                    rx[xc] += o;
                    cy[yc] += o;
                }
            if (nz == 0) continue;
            int live_x = 0, live_y = 0;
            for (double v : rx) live_x += v > 0;
            for (double v : cy) live_y += v > 0;
            result.dof += (live_x - 1) * (live_y - 1);
            for (std::size_t xc = 0; xc < t.nx; ++xc)
                for (std::size_t yc = 0; yc < t.ny; ++yc) {
                    const double o = t.at(zc, xc, yc);
                    if (o > 0) result.statistic += 2.0 * o * std::log(o * nz / (rx[xc] * cy[yc]));
                }
        }
        if (result.dof > 0) {
            const boost::math::chi_squared dist(result.dof);
            result.p_value = boost::math::cdf(boost::math::complement(dist, std::max(result.statistic, 0.0)));
        }
        return result;
    }

protected:
    bool query(VarSet x, VarSet z, VarSet y) const override {
        const TestResult r = g2_test(x, z, y);
        return r.dof == 0 || r.p_value > alpha_;
    }

private:
    std::vector<int> arity_;
    std::vector<std::vector<int>> rows_;
    double alpha_;
};

} // namespace ordermap
