#pragma once

// Sampled market-weight paths on the open simplex.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "spt/errors.hpp"
#include "spt/series.hpp"

namespace spt {

// Open-simplex floor: weights at or below this are rejected.
inline constexpr double kWeightFloor = 1e-12;
// Rows whose sum deviates from 1 by more than this are data errors, not float noise.
inline constexpr double kRowSumTolerance = 1e-9;

namespace detail {

// Compensated (Neumaier) sum.
inline double stable_sum(std::span<const double> xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

// Scale a row to unit sum, then rewrite the last entry as 1 minus the prefix
// sum: the plain left-to-right double sum of the row is then exactly 1.
inline void renormalize_row(std::span<double> row) {
    const double s = stable_sum(row);
    for (double& w : row) w /= s;
    double prefix = 0.0;
    for (std::size_t j = 0; j + 1 < row.size(); ++j) prefix += row[j];
    row[row.size() - 1] = 1.0 - prefix;
}

}  // namespace detail

class WeightPath {
public:
    // rows: row-major size() x assets() weight matrix. Rows are renormalized
    // (see kRowSumTolerance) so every stored row sums to 1 in double arithmetic.
    WeightPath(std::vector<double> times, std::vector<double> rows, std::size_t assets)
        : times_(std::move(times)), weights_(std::move(rows)), assets_(assets) {
        if (assets_ < 2) throw DomainError("need at least 2 assets");
        if (times_.size() < 2) throw DomainError("need at least 2 time points");
        if (weights_.size() != times_.size() * assets_)
            throw DomainError("weight matrix size does not match times x assets");
        for (std::size_t k = 0; k < times_.size(); ++k) {
            if (!std::isfinite(times_[k])) throw DomainError("non-finite time");
            if (k > 0 && !(times_[k] > times_[k - 1]))
                throw DomainError("times must be strictly increasing");
        }
        for (std::size_t k = 0; k < times_.size(); ++k) {
            std::span<double> row{weights_.data() + k * assets_, assets_};
            double sum = 0.0;
            for (double w : row) {
                if (!std::isfinite(w) || w <= 0.0)
                    throw DomainError("weights must be strictly positive and finite");
                sum += w;
            }
            if (std::abs(sum - 1.0) > kRowSumTolerance)
                throw DomainError("weight row sums to " + std::to_string(sum) +
                                  ", outside the 1e-9 band around 1");
            detail::renormalize_row(row);
            for (double w : row)
                if (w < kWeightFloor)
                    throw DomainError("weight below the open-simplex floor 1e-12");
        }
    }

    std::size_t size() const { return times_.size(); }
    std::size_t assets() const { return assets_; }
    double time(std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }

    std::span<const double> row(std::size_t k) const {
        return {weights_.data() + k * assets_, assets_};
    }
    double weight(std::size_t k, std::size_t j) const { return weights_[k * assets_ + j]; }

private:
    std::vector<double> times_;
    std::vector<double> weights_;  // row-major
    std::size_t assets_ = 0;
};

// mu_j := S_j / sum_k S_k from positive capitalizations (row-major, like WeightPath).
inline WeightPath weights_from_caps(std::vector<double> times,
                                    const std::vector<double>& caps,
                                    std::size_t assets) {
    if (assets < 2) throw DomainError("need at least 2 assets");
    if (times.size() < 2) throw DomainError("need at least 2 rows of capitalizations");
    if (caps.size() != times.size() * assets)
        throw DomainError("capitalization matrix size does not match times x assets");
    std::vector<double> rows(caps.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::span<const double> in{caps.data() + k * assets, assets};
        for (double c : in)
            if (!std::isfinite(c) || c <= 0.0)
                throw DomainError("capitalizations must be strictly positive and finite");
        const double total = detail::stable_sum(in);
        for (std::size_t j = 0; j < assets; ++j) rows[k * assets + j] = in[j] / total;
    }
    return WeightPath(std::move(times), std::move(rows), assets);
}

// Series of one coordinate mu_j along a level.
inline ProcessSeries coordinate_series(const WeightPath& path,
                                       std::span<const std::size_t> level,
                                       std::size_t j) {
    std::vector<double> t(level.size()), v(level.size());
    for (std::size_t k = 0; k < level.size(); ++k) {
        t[k] = path.time(level[k]);
        v[k] = path.weight(level[k], j);
    }
    return ProcessSeries(std::move(t), std::move(v));
}

inline ProcessSeries log_coordinate_series(const WeightPath& path,
                                           std::span<const std::size_t> level,
                                           std::size_t j) {
    std::vector<double> t(level.size()), v(level.size());
    for (std::size_t k = 0; k < level.size(); ++k) {
        t[k] = path.time(level[k]);
        v[k] = std::log(path.weight(level[k], j));
    }
    return ProcessSeries(std::move(t), std::move(v));
}

}  // namespace spt
