#pragma once

// Synthetic market-weight paths. Three models:
//   gbm           independent lognormal capitalization increments
//   roughwalk     +-sigma*sqrt(dt) coin-flip log increments
//   deterministic smooth sinusoidal capitalizations (zero QV in the limit)
// Step counts are powers of two so every grid has 2^m + 1 points.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spt/errors.hpp"
#include "spt/weight_path.hpp"

namespace spt {

enum class PathModel { gbm, roughwalk, deterministic };

struct PathGenSpec {
    PathModel model = PathModel::gbm;
    std::size_t assets = 3;
    std::size_t steps = 4096;  // must be a power of two
    double dt = 1.0 / 4096.0;
    std::vector<double> vol;    // per asset; size 1 broadcasts; empty -> 0.2
    std::vector<double> drift;  // per asset; size 1 broadcasts; empty -> 0
    std::uint64_t seed = 1;
};

// Derive an independent substream seed for (seed, path index).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t path_index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (path_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace detail {

inline std::vector<double> broadcast_param(const std::vector<double>& in,
                                           std::size_t assets, double fallback,
                                           const char* what) {
    std::vector<double> out;
    if (in.empty())
        out.assign(assets, fallback);
    else if (in.size() == 1)
        out.assign(assets, in[0]);
    else if (in.size() == assets)
        out = in;
    else
        throw DomainError(std::string(what) + " vector must have 1 or J entries");
    return out;
}

}  // namespace detail

inline WeightPath simulate_path(const PathGenSpec& spec) {
    if (spec.assets < 2) throw DomainError("need at least 2 assets");
    if (spec.steps < 1 || (spec.steps & (spec.steps - 1)) != 0)
        throw DomainError("steps must be a power of two (grids are 2^m + 1 points)");
    if (!(spec.dt > 0.0) || !std::isfinite(spec.dt))
        throw DomainError("step size must be positive");
    const auto vol = detail::broadcast_param(spec.vol, spec.assets, 0.2, "volatility");
    const auto drift = detail::broadcast_param(spec.drift, spec.assets, 0.0, "drift");
    for (double v : vol)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("volatilities must be >= 0");
    for (double d : drift)
        if (!std::isfinite(d)) throw DomainError("drifts must be finite");

    const std::size_t n = spec.steps + 1;
    const std::size_t j_count = spec.assets;
    std::vector<double> times(n);
    for (std::size_t k = 0; k < n; ++k) times[k] = static_cast<double>(k) * spec.dt;

    std::vector<double> log_caps(j_count, 0.0);
    std::vector<double> rows(n * j_count);
    const double sqrt_dt = std::sqrt(spec.dt);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Shift by the row max before exponentiating: weights depend only on
    // relative log-caps, and exp cannot overflow on long walks.
    auto emit_row = [&](std::size_t k) {
        double top = log_caps[0];
        for (std::size_t j = 1; j < j_count; ++j) top = std::max(top, log_caps[j]);
        double total = 0.0;
        for (std::size_t j = 0; j < j_count; ++j) {
            rows[k * j_count + j] = std::exp(log_caps[j] - top);
            total += rows[k * j_count + j];
        }
        for (std::size_t j = 0; j < j_count; ++j) rows[k * j_count + j] /= total;
    };

    switch (spec.model) {
        case PathModel::gbm:
            emit_row(0);
            for (std::size_t k = 1; k < n; ++k) {
                for (std::size_t j = 0; j < j_count; ++j)
                    log_caps[j] += drift[j] * spec.dt + vol[j] * sqrt_dt * gauss(rng);
                emit_row(k);
            }
            break;
        case PathModel::roughwalk:
            emit_row(0);
            for (std::size_t k = 1; k < n; ++k) {
                for (std::size_t j = 0; j < j_count; ++j) {
                    const double sign = (rng() & 1ULL) ? 1.0 : -1.0;
                    log_caps[j] += sign * vol[j] * sqrt_dt;
                }
                emit_row(k);
            }
            break;
        case PathModel::deterministic:
            for (std::size_t k = 0; k < n; ++k) {
                const double t = times[k];
                for (std::size_t j = 0; j < j_count; ++j) {
                    const double phase = 2.0 * M_PI * (t + static_cast<double>(j) / j_count);
                    log_caps[j] = drift[j] * t + vol[j] * std::sin(phase);
                }
                emit_row(k);
            }
            break;
    }
    return WeightPath(std::move(times), std::move(rows), j_count);
}

}  // namespace spt
