#pragma once

// Shared test utilities: samplers, random series, and the independent
// brute-force oracles the library results are checked against. Everything
// here deliberately avoids the library's own Doleans/QV code paths.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "spt/portfolio.hpp"
#include "spt/series.hpp"
#include "spt/weight_path.hpp"

namespace spt_test {

inline spt::ProcessSeries series_from(std::vector<double> values) {
    std::vector<double> times(values.size());
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = static_cast<double>(k);
    return spt::ProcessSeries(std::move(times), std::move(values));
}

inline spt::ProcessSeries random_walk_series(std::size_t n, double step, std::uint64_t seed,
                                             double start = 0.0) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    v[0] = start;
    for (std::size_t k = 1; k < n; ++k) v[k] = v[k - 1] + ((rng() & 1ULL) ? step : -step);
    return series_from(std::move(v));
}

inline spt::ProcessSeries uniform_series(std::size_t n, double lo, double hi,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return series_from(std::move(v));
}

// Geometric random path, strictly positive.
inline spt::ProcessSeries positive_price_series(std::size_t n, double vol,
                                                std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(n);
    double log_price = 0.0;
    v[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        log_price += vol * gauss(rng) / std::sqrt(static_cast<double>(n));
        v[k] = std::exp(log_price);
    }
    return series_from(std::move(v));
}

// Uniform sample from the simplex interior, with the row nudged so its plain
// sum is exactly 1 (mirrors what WeightPath construction guarantees).
inline std::vector<double> random_simplex_point(std::mt19937_64& rng, std::size_t j_count) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> x(j_count);
    double sum = 0.0;
    for (auto& xi : x) {
        xi = expo(rng) + 1e-9;
        sum += xi;
    }
    for (auto& xi : x) xi /= sum;
    std::size_t top = 0;
    for (std::size_t j = 1; j < j_count; ++j)
        if (x[j] > x[top]) top = j;
    for (int pass = 0; pass < 2; ++pass) {
        double t = 0.0;
        for (double xi : x) t += xi;
        if (t == 1.0) break;
        x[top] += 1.0 - t;
    }
    return x;
}

// Oracle 1: explicit share-holdings rebalancing. Holds shares_j = pi_j * W / mu_j
// between rebalances and revalues at the next grid point. Independent of the
// Doleans-product implementation of value_process.
inline std::vector<double> holdings_wealth_oracle(const spt::Portfolio& pi,
                                                  const spt::WeightPath& path,
                                                  std::span<const std::size_t> level) {
    std::vector<double> wealth(level.size());
    wealth[0] = 1.0;
    std::vector<double> shares(path.assets());
    for (std::size_t k = 1; k < level.size(); ++k) {
        const auto prev = path.row(level[k - 1]);
        const auto curr = path.row(level[k]);
        const std::vector<double> w = pi.weights(prev);
        for (std::size_t j = 0; j < path.assets(); ++j)
            shares[j] = w[j] * wealth[k - 1] / prev[j];
        double value = 0.0;
        for (std::size_t j = 0; j < path.assets(); ++j) value += shares[j] * curr[j];
        wealth[k] = value;
    }
    return wealth;
}

// Oracle 2: brute-force first passage of the cumulative squared-increment sum.
inline std::optional<std::size_t> first_passage_scan(const spt::WeightPath& path,
                                                     std::span<const std::size_t> level,
                                                     double a) {
    double acc = 0.0;
    if (acc >= a) return 0;
    for (std::size_t k = 1; k < level.size(); ++k) {
        for (std::size_t j = 0; j < path.assets(); ++j) {
            const double d = path.weight(level[k], j) - path.weight(level[k - 1], j);
            acc += d * d;
        }
        if (acc >= a) return k;
    }
    return std::nullopt;
}

}  // namespace spt_test
