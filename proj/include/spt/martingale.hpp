#pragma once

// Stroock-Varadhan martingales, Fernholz's master martingale, the stopping
// times tau_A, and the quantitative comparison of the two arbitrage bounds
// 1/2 e^{A/2} (Fernholz) and A (Stroock-Varadhan) plus the game-theoretic
// 1.25 J^{-3/2} A^{1/2} bound.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "spt/generator.hpp"
#include "spt/ito.hpp"
#include "spt/master.hpp"
#include "spt/partition.hpp"
#include "spt/series.hpp"
#include "spt/value_process.hpp"
#include "spt/weight_path.hpp"

namespace spt {

struct ItoFormulaCheck {
    ProcessSeries martingale;     // f(mu_t) - f(mu_0) - 1/2 sum_ij int D_ij f d[mu_i,mu_j]
    ProcessSeries integral_side;  // sum_j int D_j f dmu_j
    double residual;              // max_t |martingale - integral_side|
};

inline ItoFormulaCheck sv_martingale(const SmoothFunction& f, const WeightPath& path,
                                     std::span<const std::size_t> level) {
    const std::size_t j_count = path.assets();
    std::vector<double> t(level.size()), lhs(level.size()), rhs(level.size());
    if (level.empty()) return {};
    t[0] = path.time(level[0]);
    lhs[0] = rhs[0] = 0.0;
    const double f0 = f.value(path.row(level[0]));
    double drift = 0.0, integral = 0.0;
    std::vector<double> dmu(j_count);
    for (std::size_t k = 1; k < level.size(); ++k) {
        const auto prev = path.row(level[k - 1]);
        const auto curr = path.row(level[k]);
        for (std::size_t j = 0; j < j_count; ++j) dmu[j] = curr[j] - prev[j];
        const std::vector<double> hess = f.hessian(prev);
        const std::vector<double> grad = f.gradient(prev);
        double quad = 0.0;
        for (std::size_t i = 0; i < j_count; ++i) {
            double row_dot = 0.0;
            for (std::size_t j = 0; j < j_count; ++j) row_dot += hess[i * j_count + j] * dmu[j];
            quad += dmu[i] * row_dot;
            integral += grad[i] * dmu[i];
        }
        drift += 0.5 * quad;
        t[k] = path.time(level[k]);
        lhs[k] = f.value(curr) - f0 - drift;
        rhs[k] = integral;
    }
    double residual = 0.0;
    for (std::size_t k = 0; k < level.size(); ++k)
        residual = std::max(residual, std::abs(lhs[k] - rhs[k]));
    ProcessSeries m(t, std::move(lhs));
    ProcessSeries i(std::move(t), std::move(rhs));
    return {std::move(m), std::move(i), residual};
}

// X = 2Y + 1 for f = -1/2 sum x_j^2:
//   Y(t) = 1/2 sum mu_j(0)^2 - 1/2 sum mu_j(t)^2 + 1/2 sum [mu_j](t).
// Nonnegative, X(0) = 1, and X(tau_A) >= A.
inline ProcessSeries sv_quadratic_X(const WeightPath& path,
                                    std::span<const std::size_t> level) {
    const std::size_t j_count = path.assets();
    std::vector<double> t(level.size()), v(level.size());
    if (level.empty()) return {};
    auto sum_sq = [&](std::size_t grid_idx) {
        double s = 0.0;
        for (std::size_t j = 0; j < j_count; ++j) {
            const double w = path.weight(grid_idx, j);
            s += w * w;
        }
        return s;
    };
    const double initial = sum_sq(level[0]);
    t[0] = path.time(level[0]);
    v[0] = 1.0;
    double qv = 0.0;
    for (std::size_t k = 1; k < level.size(); ++k) {
        const auto prev = path.row(level[k - 1]);
        const auto curr = path.row(level[k]);
        for (std::size_t j = 0; j < j_count; ++j) {
            const double d = curr[j] - prev[j];
            qv += d * d;
        }
        t[k] = path.time(level[k]);
        v[k] = 1.0 + initial - sum_sq(level[k]) + qv;
    }
    return ProcessSeries(std::move(t), std::move(v));
}

// (S(mu_t)/S(mu_0)) exp(-1/2 sum_ij int (D_ij S / S) d[mu_i,mu_j]).
inline ProcessSeries fernholz_martingale(const Generator& gen, const WeightPath& path,
                                         std::span<const std::size_t> level) {
    const ProcessSeries theta = theta_drift(gen, path, level);
    const double s0 = gen.value(path.row(level[0]));
    std::vector<double> v(level.size());
    for (std::size_t k = 0; k < level.size(); ++k)
        v[k] = (gen.value(path.row(level[k])) / s0) * std::exp(theta.values[k]);
    return ProcessSeries(theta.times, std::move(v));
}

struct FernholzConsistency {
    std::vector<int> level_numbers;
    std::vector<double> vs_value_process;  // max_t |F - Z| / Z
    std::vector<double> vs_doleans_of_sv;  // max_t |E(SV(ln S)) - F| / F
};

inline FernholzConsistency fernholz_consistency(const Generator& gen, const WeightPath& path,
                                                const PartitionSequence& parts) {
    FernholzConsistency out;
    const Portfolio pi = portfolio_from(gen);
    const SmoothFunction log_s = gen.log_field();
    for (std::size_t i = 0; i < parts.count(); ++i) {
        const auto level = parts.level(i);
        const ProcessSeries fern = fernholz_martingale(gen, path, level);
        const ProcessSeries z = value_process(pi, path, level);
        double res_z = 0.0;
        for (std::size_t k = 0; k < level.size(); ++k)
            res_z = std::max(res_z, std::abs(fern.values[k] - z.values[k]) / z.values[k]);
        double res_sv = std::numeric_limits<double>::infinity();
        try {
            const ItoFormulaCheck sv = sv_martingale(log_s, path, level);
            const ProcessSeries wrapped = doleans_exp(sv.martingale, ExpMode::product);
            res_sv = 0.0;
            for (std::size_t k = 0; k < level.size(); ++k)
                res_sv = std::max(res_sv, std::abs(wrapped.values[k] - fern.values[k]) /
                                              fern.values[k]);
        } catch (const DomainError&) {
            // a coarse step moved ln S by more than -1; leave the level at +inf
        }
        out.level_numbers.push_back(parts.number(i));
        out.vs_value_process.push_back(res_z);
        out.vs_doleans_of_sv.push_back(res_sv);
    }
    return out;
}

// Total quadratic variation sum_j [mu_j] along a level.
inline ProcessSeries total_quadratic_variation(const WeightPath& path,
                                               std::span<const std::size_t> level) {
    const std::size_t j_count = path.assets();
    std::vector<double> t(level.size()), v(level.size());
    if (level.empty()) return {};
    t[0] = path.time(level[0]);
    v[0] = 0.0;
    double acc = 0.0;
    for (std::size_t k = 1; k < level.size(); ++k) {
        const auto prev = path.row(level[k - 1]);
        const auto curr = path.row(level[k]);
        for (std::size_t j = 0; j < j_count; ++j) {
            const double d = curr[j] - prev[j];
            acc += d * d;
        }
        t[k] = path.time(level[k]);
        v[k] = acc;
    }
    return ProcessSeries(std::move(t), std::move(v));
}

struct FirstPassage {
    std::optional<std::size_t> position;  // index within the level, if reached
    double qv_at_stop = std::numeric_limits<double>::quiet_NaN();
    double total_qv = 0.0;  // accumulated over the whole level

    bool reached() const { return position.has_value(); }
};

// First grid time where the summed quadratic variations reach A.
inline FirstPassage stopping_time(const WeightPath& path, double a,
                                  std::span<const std::size_t> level) {
    if (!(a > 0.0)) throw DomainError("stopping level A must be positive");
    const ProcessSeries qv = total_quadratic_variation(path, level);
    FirstPassage out;
    out.total_qv = qv.values.empty() ? 0.0 : qv.values.back();
    for (std::size_t k = 0; k < qv.size(); ++k) {
        if (qv.values[k] >= a) {
            out.position = k;
            out.qv_at_stop = qv.values[k];
            break;
        }
    }
    return out;
}

// ---- analytic bounds ------------------------------------------------------

inline double fernholz_bound(double a) { return 0.5 * std::exp(0.5 * a); }

inline double appendix_bound(std::size_t assets, double a) {
    if (assets < 1 || !(a > 0.0)) throw DomainError("appendix bound needs J >= 1, A > 0");
    return 1.25 * std::pow(static_cast<double>(assets), -1.5) * std::sqrt(a);
}

// Gaussian-tail ingredient of the appendix proof: sqrt(2/pi) * sqrt(J/A) bounds
// the probability that Brownian motion started at 1 misses zero over time A/J.
inline double gaussian_no_hit_bound(std::size_t assets, double a) {
    if (assets < 1 || !(a > 0.0)) throw DomainError("needs J >= 1, A > 0");
    return std::sqrt(2.0 / M_PI) * std::sqrt(static_cast<double>(assets) / a);
}

// The proof's constant sqrt(pi/2), rounded down to 1.25 in the statement.
inline double appendix_proof_constant() { return std::sqrt(M_PI / 2.0); }

struct BoundCrossings {
    double fernholz_lower;  // smaller root of 1/2 e^{A/2} = A
    double fernholz_upper;  // larger root
    double appendix;        // root of 1.25 J^{-3/2} sqrt(A) = A
};

namespace detail {

// Bisection for 1/2 e^{A/2} - A on a sign-changing bracket.
inline double bisect_fernholz_line(double lo, double hi) {
    auto f = [](double a) { return 0.5 * std::exp(0.5 * a) - a; };
    double flo = f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if ((flo > 0.0) == (fmid > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

// Brackets [0.1, 1] and [3, 6] carry sign changes of 1/2 e^{A/2} - A; the
// appendix crossing is closed-form: (1.25 J^{-3/2})^2 = 1.5625 / J^3.
inline BoundCrossings bound_crossings(std::size_t assets) {
    if (assets < 1) throw DomainError("bound_crossings needs J >= 1");
    const double j = static_cast<double>(assets);
    return {detail::bisect_fernholz_line(0.1, 1.0), detail::bisect_fernholz_line(3.0, 6.0),
            (1.25 * 1.25) / (j * j * j)};
}

// ---- comparison at the stopping times -------------------------------------

struct ComparisonRow {
    double a = 0.0;
    std::optional<double> tau_time;           // absent when never reached
    std::optional<std::size_t> tau_position;  // index within the level
    double z_at_tau = std::numeric_limits<double>::quiet_NaN();
    double x_at_tau = std::numeric_limits<double>::quiet_NaN();
    double bound_fernholz = 0.0;  // 1/2 e^{A/2}
    double bound_line = 0.0;      // A itself
    double bound_appendix = 0.0;  // 1.25 J^{-3/2} sqrt(A)
    double sv_equality_gap = std::numeric_limits<double>::quiet_NaN();
    //   1 + sum mu_j(0)^2 - sum mu_j(tau)^2, the gap in X(tau_A) >= A

    bool reached() const { return tau_position.has_value(); }
};

struct ComparisonReport {
    std::vector<ComparisonRow> rows;
    BoundCrossings crossings{};
    std::size_t assets = 0;
    double total_qv = 0.0;
    double max_step_qv = 0.0;  // largest one-step QV increment (overshoot allowance)
};

inline ComparisonReport compare_at_tau(const WeightPath& path, std::span<const double> a_grid,
                                       const Generator& gen,
                                       std::span<const std::size_t> level) {
    for (std::size_t i = 0; i < a_grid.size(); ++i) {
        if (!(a_grid[i] > 0.0)) throw DomainError("A grid must be positive");
        if (i > 0 && !(a_grid[i] > a_grid[i - 1]))
            throw DomainError("A grid must be strictly increasing");
    }
    const ProcessSeries qv = total_quadratic_variation(path, level);
    const ProcessSeries z = value_process(portfolio_from(gen), path, level);
    const ProcessSeries x = sv_quadratic_X(path, level);

    ComparisonReport report;
    report.assets = path.assets();
    report.crossings = bound_crossings(path.assets());
    report.total_qv = qv.values.back();
    for (std::size_t k = 1; k < qv.size(); ++k)
        report.max_step_qv = std::max(report.max_step_qv, qv.values[k] - qv.values[k - 1]);

    double init_sq = 0.0;
    for (std::size_t j = 0; j < path.assets(); ++j) {
        const double w = path.weight(level[0], j);
        init_sq += w * w;
    }

    std::size_t cursor = 0;
    for (double a : a_grid) {
        ComparisonRow row;
        row.a = a;
        row.bound_fernholz = fernholz_bound(a);
        row.bound_line = a;
        row.bound_appendix = appendix_bound(path.assets(), a);
        while (cursor < qv.size() && qv.values[cursor] < a) ++cursor;
        if (cursor < qv.size()) {
            row.tau_position = cursor;
            row.tau_time = qv.times[cursor];
            row.z_at_tau = z.values[cursor];
            row.x_at_tau = x.values[cursor];
            double stop_sq = 0.0;
            for (std::size_t j = 0; j < path.assets(); ++j) {
                const double w = path.weight(level[cursor], j);
                stop_sq += w * w;
            }
            row.sv_equality_gap = 1.0 + init_sq - stop_sq;
        }
        report.rows.push_back(row);
    }
    return report;
}

// Names of rows violating Z(tau_A) >= (1 - rel_slack) * 1/2 e^{A/2} or
// X(tau_A) >= A; empty means all reachable bounds hold.
inline std::vector<std::string> comparison_violations(const ComparisonReport& report,
                                                      double rel_slack = 0.1) {
    std::vector<std::string> bad;
    for (const auto& row : report.rows) {
        if (!row.reached()) continue;
        if (row.z_at_tau < (1.0 - rel_slack) * row.bound_fernholz)
            bad.push_back("Z(tau_" + std::to_string(row.a) + ") = " +
                          std::to_string(row.z_at_tau) + " below Fernholz bound");
        if (row.x_at_tau < row.a - 1e-12)
            bad.push_back("X(tau_" + std::to_string(row.a) + ") = " +
                          std::to_string(row.x_at_tau) + " below A");
    }
    return bad;
}

}  // namespace spt
