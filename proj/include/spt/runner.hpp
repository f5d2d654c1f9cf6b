#pragma once

// The command implementations behind the CLI: simulate paths or ingest CSVs,
// run the master-equation and corollary verification, and build the
// stopping-time comparison tables and plot. Exit codes report assertion
// outcomes; every output file is written atomically.

#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "spt/csv.hpp"
#include "spt/generator.hpp"
#include "spt/martingale.hpp"
#include "spt/master.hpp"
#include "spt/partition.hpp"
#include "spt/simulate.hpp"
#include "spt/svg.hpp"
#include "spt/weight_path.hpp"

namespace spt {

struct RunConfig {
    std::string input;  // CSV path; empty means simulate
    PathGenSpec path_spec;
    std::string generator = "quadratic";  // quadratic | entropy | diversity
    double p = 0.5;
    int depth = 10;
    double a_min = 0.05;
    double a_max = 6.0;
    std::size_t a_count = 64;
    std::string out_dir = "out";
    std::string format = "svg";  // csv: tables only; svg: tables + plot
};

inline Generator generator_from_config(const RunConfig& config) {
    if (config.generator == "quadratic") return Generator::quadratic();
    if (config.generator == "entropy") return Generator::entropy();
    if (config.generator == "diversity") return Generator::diversity(config.p);
    throw DomainError("unknown generator '" + config.generator + "'");
}

inline WeightPath load_or_simulate(const RunConfig& config) {
    if (!config.input.empty()) return read_path_csv(config.input);
    return simulate_path(config.path_spec);
}

inline std::vector<double> log_spaced_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > lo) || count < 2)
        throw DomainError("A grid needs 0 < min < max and at least 2 points");
    std::vector<double> grid(count);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

inline int run_simulate(const RunConfig& config, std::ostream& log) {
    const WeightPath path = simulate_path(config.path_spec);
    const std::filesystem::path file = std::filesystem::path(config.out_dir) / "weights.csv";
    write_weights_csv(file, path);
    const auto grid = full_grid(path);
    log << "wrote " << file.string() << "\n";
    log << "J=" << path.assets() << " steps=" << path.size() - 1
        << " dt=" << format_double(config.path_spec.dt) << "\n";
    log << "total QV per coordinate:";
    for (std::size_t j = 0; j < path.assets(); ++j) {
        const ProcessSeries qv = quadratic_variation(coordinate_series(path, grid, j));
        log << " " << format_double(qv.values.back());
    }
    log << "\n";
    return 0;
}

inline int run_verify(const RunConfig& config, std::ostream& log) {
    const WeightPath path = load_or_simulate(config);
    const Generator gen = generator_from_config(config);
    const PartitionSequence parts = dyadic_partitions(path, config.depth);

    std::string csv = "level,time,ln_Z,ln_S_ratio,theta,residual\n";
    std::vector<double> residuals;
    for (std::size_t i = 0; i < parts.count(); ++i) {
        const MasterLevel lvl = master_level(gen, path, parts.level(i));
        residuals.push_back(lvl.residual);
        for (std::size_t k = 0; k < lvl.log_value.size(); ++k) {
            const double pointwise = std::abs(lvl.log_value.values[k] -
                                              lvl.diversity_term.values[k] -
                                              lvl.theta.values[k]);
            csv += std::to_string(parts.number(i));
            csv += "," + format_double(lvl.log_value.times[k]);
            csv += "," + format_double(lvl.log_value.values[k]);
            csv += "," + format_double(lvl.diversity_term.values[k]);
            csv += "," + format_double(lvl.theta.values[k]);
            csv += "," + format_double(pointwise);
            csv += "\n";
        }
        log << "level " << parts.number(i) << ": master residual "
            << format_double(lvl.residual) << "\n";
    }
    const std::filesystem::path file =
        std::filesystem::path(config.out_dir) / ("master_" + config.generator + ".csv");
    atomic_write(file, csv);
    log << "wrote " << file.string() << "\n";

    std::vector<std::string> failures;
    if (!refinement_trend_ok(residuals))
        failures.push_back("master_residual_trend (finest level did not improve on finest-2)");

    const CorollaryReport cor = corollary_check(gen.kind(), path, parts.finest(), config.p);
    std::vector<double> identity_by_level;
    for (std::size_t i = 0; i < parts.count(); ++i)
        identity_by_level.push_back(
            corollary_check(gen.kind(), path, parts.level(i), config.p).identity_residual);
    log << "corollary identity residual (finest): " << format_double(cor.identity_residual)
        << "\n";
    if (!refinement_trend_ok(identity_by_level))
        failures.push_back("corollary_identity_trend");
    if (cor.bound_slack < -kBoundSlackTolerance)
        failures.push_back("corollary_bound (slack " + std::to_string(cor.bound_slack) + ")");

    if (gen.kind() == Generator::Kind::quadratic) {
        const ProcessSeries z = value_process(portfolio_from(gen), path, parts.finest());
        double z_min = z.values[0];
        for (double v : z.values) z_min = std::min(z_min, v);
        log << "min Z_pi: " << format_double(z_min) << "\n";
        if (z_min < 0.5 * (1.0 - kBoundSlackTolerance))
            failures.push_back("drawdown_floor (min Z " + std::to_string(z_min) + ")");
    }

    for (const auto& f : failures) log << "assertion failed: " << f << "\n";
    if (failures.empty()) log << "all assertions passed\n";
    return failures.empty() ? 0 : 1;
}

inline int run_compare(const RunConfig& config, std::ostream& log) {
    const WeightPath path = load_or_simulate(config);
    const Generator gen = generator_from_config(config);
    const std::vector<double> a_grid =
        log_spaced_grid(config.a_min, config.a_max, config.a_count);
    const auto grid = full_grid(path);
    const ComparisonReport report = compare_at_tau(path, a_grid, gen, grid);

    std::string csv = "A,tau_time_or_NA,Z_pi_at_tau,X_at_tau,bound_fernholz,bound_line,"
                      "bound_appendix\n";
    for (const auto& row : report.rows) {
        csv += format_double(row.a);
        if (row.reached()) {
            csv += "," + format_double(*row.tau_time);
            csv += "," + format_double(row.z_at_tau);
            csv += "," + format_double(row.x_at_tau);
        } else {
            csv += ",NA,NA,NA";
        }
        csv += "," + format_double(row.bound_fernholz);
        csv += "," + format_double(row.bound_line);
        csv += "," + format_double(row.bound_appendix);
        csv += "\n";
    }
    const std::filesystem::path out_dir(config.out_dir);
    atomic_write(out_dir / "comparison.csv", csv);
    log << "wrote " << (out_dir / "comparison.csv").string() << "\n";

    if (config.format != "csv") {
        PlotSeries fern{"Fernholz bound 0.5*exp(A/2)", "#c0392b", {}, false, false};
        PlotSeries line{"Stroock-Varadhan line A", "#2471a3", {}, false, false};
        PlotSeries appendix{"appendix bound 1.25*J^-1.5*sqrt(A)", "#117a65", {}, false, true};
        PlotSeries z_marks{"Z_pi(tau_A) on this path", "#e67e22", {}, true, false};
        PlotSeries x_marks{"X(tau_A) on this path", "#6c3483", {}, true, false};
        for (const auto& row : report.rows) {
            fern.points.emplace_back(row.a, row.bound_fernholz);
            line.points.emplace_back(row.a, row.bound_line);
            appendix.points.emplace_back(row.a, row.bound_appendix);
            if (row.reached()) {
                z_marks.points.emplace_back(row.a, row.z_at_tau);
                x_marks.points.emplace_back(row.a, row.x_at_tau);
            }
        }
        const std::vector<PlotRule> rules = {
            {report.crossings.fernholz_lower, "A=" + detail::tick_label(report.crossings.fernholz_lower)},
            {report.crossings.fernholz_upper, "A=" + detail::tick_label(report.crossings.fernholz_upper)},
            {report.crossings.appendix, "A=" + detail::tick_label(report.crossings.appendix)},
        };
        const std::string svg =
            render_line_chart("Martingale values at tau_A (J=" +
                                  std::to_string(report.assets) + ")",
                              "A", "value at tau_A",
                              {fern, line, appendix, z_marks, x_marks}, rules);
        atomic_write(out_dir / "comparison.svg", svg);
        log << "wrote " << (out_dir / "comparison.svg").string() << "\n";
    }

    std::size_t reached = 0;
    for (const auto& row : report.rows)
        if (row.reached()) ++reached;
    log << "total QV " << format_double(report.total_qv) << "; " << reached << "/"
        << report.rows.size() << " grid values reached\n";

    const std::vector<std::string> violations = comparison_violations(report);
    for (const auto& v : violations) log << "assertion failed: " << v << "\n";
    if (violations.empty()) log << "all reachable bounds hold\n";
    return violations.empty() ? 0 : 1;
}

}  // namespace spt
