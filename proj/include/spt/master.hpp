#pragma once

// The master equation ln Z_pi = ln S(mu_t)/S(mu_0) + Theta and its corollaries,
// verified numerically per partition level. Identities stated "quasi always"
// in the continuum become refinement-trend assertions here.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "spt/generator.hpp"
#include "spt/partition.hpp"
#include "spt/series.hpp"
#include "spt/value_process.hpp"
#include "spt/weight_path.hpp"

namespace spt {

// Slack allowed to the bound corollaries at desk-scale mesh sizes.
inline constexpr double kBoundSlackTolerance = 5e-2;

// Residuals shrink under refinement: the finest level must beat the level two
// below it (or already sit at the float floor).
inline bool refinement_trend_ok(std::span<const double> residuals, double floor = 1e-12) {
    if (residuals.empty()) return false;
    const double finest = residuals.back();
    if (finest < floor) return true;
    if (residuals.size() < 3) return finest <= residuals.front();
    return finest < residuals[residuals.size() - 3];
}

// Theta(t): cumulative -1/(2 S(mu)) sum_ij D_ij S(mu) dmu_i dmu_j, left-point.
inline ProcessSeries theta_drift(const Generator& gen, const WeightPath& path,
                                 std::span<const std::size_t> level) {
    const std::size_t j_count = path.assets();
    std::vector<double> t(level.size()), v(level.size());
    if (level.empty()) return ProcessSeries{};
    t[0] = path.time(level[0]);
    v[0] = 0.0;
    double acc = 0.0;
    std::vector<double> dmu(j_count);
    for (std::size_t k = 1; k < level.size(); ++k) {
        const auto prev = path.row(level[k - 1]);
        const auto curr = path.row(level[k]);
        const double s = gen.value(prev);  // throws DomainError if S <= 0
        const std::vector<double> hess = gen.hessian(prev);
        for (std::size_t j = 0; j < j_count; ++j) dmu[j] = curr[j] - prev[j];
        double quad = 0.0;
        for (std::size_t i = 0; i < j_count; ++i) {
            double row_dot = 0.0;
            for (std::size_t j = 0; j < j_count; ++j) row_dot += hess[i * j_count + j] * dmu[j];
            quad += dmu[i] * row_dot;
        }
        acc += -quad / (2.0 * s);
        t[k] = path.time(level[k]);
        v[k] = acc;
    }
    return ProcessSeries(std::move(t), std::move(v));
}

struct MasterLevel {
    ProcessSeries log_value;       // ln Z_pi for the generated portfolio
    ProcessSeries diversity_term;  // ln S(mu_t)/S(mu_0)
    ProcessSeries theta;
    double residual;  // max_t |log_value - diversity_term - theta|
};

inline MasterLevel master_level(const Generator& gen, const WeightPath& path,
                                std::span<const std::size_t> level) {
    const Portfolio pi = portfolio_from(gen);
    const ProcessSeries z = value_process(pi, path, level);
    std::vector<double> log_z(z.size()), diversity(z.size());
    const double s0 = gen.value(path.row(level[0]));
    for (std::size_t k = 0; k < level.size(); ++k) {
        log_z[k] = std::log(z.values[k]);
        diversity[k] = std::log(gen.value(path.row(level[k])) / s0);
    }
    ProcessSeries theta = theta_drift(gen, path, level);
    double residual = 0.0;
    for (std::size_t k = 0; k < level.size(); ++k)
        residual = std::max(residual,
                            std::abs(log_z[k] - diversity[k] - theta.values[k]));
    return {ProcessSeries(z.times, std::move(log_z)),
            ProcessSeries(z.times, std::move(diversity)), std::move(theta), residual};
}

struct MasterReport {
    ProcessSeries log_value;       // finest level
    ProcessSeries diversity_term;  // finest level
    ProcessSeries theta;           // finest level
    std::vector<int> level_numbers;
    std::vector<double> residual_by_level;
};

inline MasterReport verify_master(const Generator& gen, const WeightPath& path,
                                  const PartitionSequence& parts) {
    MasterReport report;
    for (std::size_t i = 0; i < parts.count(); ++i) {
        MasterLevel lvl = master_level(gen, path, parts.level(i));
        report.level_numbers.push_back(parts.number(i));
        report.residual_by_level.push_back(lvl.residual);
        if (i + 1 == parts.count()) {
            report.log_value = std::move(lvl.log_value);
            report.diversity_term = std::move(lvl.diversity_term);
            report.theta = std::move(lvl.theta);
        }
    }
    return report;
}

struct CorollaryReport {
    Generator::Kind kind;
    double p;
    double identity_residual;  // max_t gap in the kind's exact decomposition
    double bound_slack;        // min_t slack in its lower bound; +inf when none
};

// Identity and bound checks for the three named generators on one level.
//   quadratic: ln Z = ln S ratio + sum_j int d[mu_j]/(2S), and the bound
//              ln Z >= -ln 2 + 1/2 sum_j [mu_j]
//   entropy:   ln Z = ln S ratio + int d Gamma*_mu / S(mu)
//   diversity: ln Z = ln D_p ratio + (1-p) Gamma*_pi, and the bound
//              ln Z >= (1-p) Gamma*_pi - ((1-p)/p) ln J
inline CorollaryReport corollary_check(Generator::Kind kind, const WeightPath& path,
                                       std::span<const std::size_t> level, double p = 0.5) {
    const std::size_t j_count = path.assets();
    const Generator gen = kind == Generator::Kind::quadratic ? Generator::quadratic()
                          : kind == Generator::Kind::entropy ? Generator::entropy()
                          : kind == Generator::Kind::diversity
                              ? Generator::diversity(p)
                              : throw DomainError("corollary_check needs a named generator");
    const Portfolio pi = portfolio_from(gen);
    const ProcessSeries z = value_process(pi, path, level);
    const double s0 = gen.value(path.row(level[0]));

    // Shared ingredients along the level.
    std::vector<double> total_qv(level.size(), 0.0);  // sum_j [mu_j]
    for (std::size_t k = 1; k < level.size(); ++k) {
        const auto prev = path.row(level[k - 1]);
        const auto curr = path.row(level[k]);
        double step = 0.0;
        for (std::size_t j = 0; j < j_count; ++j) {
            const double d = curr[j] - prev[j];
            step += d * d;
        }
        total_qv[k] = total_qv[k - 1] + step;
    }

    CorollaryReport report{kind, p, 0.0, std::numeric_limits<double>::infinity()};
    if (kind == Generator::Kind::quadratic) {
        double drift = 0.0;  // sum_j int d[mu_j] / (2 S(mu))
        for (std::size_t k = 0; k < level.size(); ++k) {
            if (k > 0) {
                const auto prev = path.row(level[k - 1]);
                const auto curr = path.row(level[k]);
                const double s = gen.value(prev);
                double step = 0.0;
                for (std::size_t j = 0; j < j_count; ++j) {
                    const double d = curr[j] - prev[j];
                    step += d * d;
                }
                drift += step / (2.0 * s);
            }
            const double lhs = std::log(z.values[k]);
            const double rhs =
                std::log(gen.value(path.row(level[k])) / s0) + drift;
            report.identity_residual =
                std::max(report.identity_residual, std::abs(lhs - rhs));
            const double bound = -std::log(2.0) + 0.5 * total_qv[k];
            report.bound_slack = std::min(report.bound_slack, lhs - bound);
        }
    } else if (kind == Generator::Kind::entropy) {
        const ProcessSeries gamma_mu =
            excess_growth_exact(Portfolio::market(), path, level);
        double drift = 0.0;  // int d Gamma*_mu / S(mu), left-point
        for (std::size_t k = 0; k < level.size(); ++k) {
            if (k > 0) {
                const double s = gen.value(path.row(level[k - 1]));
                drift += (gamma_mu.values[k] - gamma_mu.values[k - 1]) / s;
            }
            const double lhs = std::log(z.values[k]);
            const double rhs =
                std::log(gen.value(path.row(level[k])) / s0) + drift;
            report.identity_residual =
                std::max(report.identity_residual, std::abs(lhs - rhs));
        }
    } else {
        const ProcessSeries gamma_pi = excess_growth_exact(pi, path, level);
        const double floor = -((1.0 - p) / p) * std::log(static_cast<double>(j_count));
        for (std::size_t k = 0; k < level.size(); ++k) {
            const double lhs = std::log(z.values[k]);
            const double rhs = std::log(gen.value(path.row(level[k])) / s0) +
                               (1.0 - p) * gamma_pi.values[k];
            report.identity_residual =
                std::max(report.identity_residual, std::abs(lhs - rhs));
            const double bound = (1.0 - p) * gamma_pi.values[k] + floor;
            report.bound_slack = std::min(report.bound_slack, lhs - bound);
        }
    }
    return report;
}

}  // namespace spt
