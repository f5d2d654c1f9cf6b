#pragma once

// Pathwise Ito calculus along one partition level: quadratic variation,
// covariation, left-point integrals, and the Doleans exponential/logarithm
// pair. Everything is a plain cumulative sum over increments; the continuum
// identities become refinement statements checked elsewhere.

#include <cmath>
#include <cstddef>
#include <vector>

#include "spt/errors.hpp"
#include "spt/series.hpp"

namespace spt {

// [X]_k = sum_{i<=k} (X_i - X_{i-1})^2. Starts at 0, nondecreasing.
inline ProcessSeries quadratic_variation(const ProcessSeries& x) {
    std::vector<double> v(x.size());
    double acc = 0.0;
    if (!v.empty()) v[0] = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double dx = x.values[k] - x.values[k - 1];
        acc += dx * dx;
        v[k] = acc;
    }
    return ProcessSeries(x.times, std::move(v));
}

// [X,Y]_k = sum_{i<=k} (X_i - X_{i-1})(Y_i - Y_{i-1}).
inline ProcessSeries covariation(const ProcessSeries& x, const ProcessSeries& y) {
    require_same_level(x, y);
    std::vector<double> v(x.size());
    double acc = 0.0;
    if (!v.empty()) v[0] = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        acc += (x.values[k] - x.values[k - 1]) * (y.values[k] - y.values[k - 1]);
        v[k] = acc;
    }
    return ProcessSeries(x.times, std::move(v));
}

// Left-point Riemann sums: (int H dX)_k = sum_{i<=k} H_{i-1} (X_i - X_{i-1}).
inline ProcessSeries ito_integral(const ProcessSeries& h, const ProcessSeries& x) {
    require_same_level(h, x);
    std::vector<double> v(x.size());
    double acc = 0.0;
    if (!v.empty()) v[0] = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        acc += h.values[k - 1] * (x.values[k] - x.values[k - 1]);
        v[k] = acc;
    }
    return ProcessSeries(x.times, std::move(v));
}

enum class ExpMode {
    product,      // prod (1 + dX): exactly self-financing wealth
    exponential,  // exp(X - X_0 - [X]/2): the continuum form
};

inline ProcessSeries doleans_exp(const ProcessSeries& x, ExpMode mode) {
    std::vector<double> v(x.size());
    if (!v.empty()) v[0] = 1.0;
    if (mode == ExpMode::product) {
        double acc = 1.0;
        for (std::size_t k = 1; k < x.size(); ++k) {
            const double factor = 1.0 + (x.values[k] - x.values[k - 1]);
            if (!(factor > 0.0))
                throw DomainError("Doleans product factor <= 0 at time " +
                                  std::to_string(x.times[k]));
            acc *= factor;
            v[k] = acc;
        }
    } else {
        double qv = 0.0;
        for (std::size_t k = 1; k < x.size(); ++k) {
            const double dx = x.values[k] - x.values[k - 1];
            qv += dx * dx;
            v[k] = std::exp(x.values[k] - x.values[0] - 0.5 * qv);
        }
    }
    return ProcessSeries(x.times, std::move(v));
}

// Cumulative return of a positive price path: sum (Y_i - Y_{i-1}) / Y_{i-1}.
// doleans_exp(doleans_log(Y), product) reproduces Y / Y_0.
inline ProcessSeries doleans_log(const ProcessSeries& y) {
    for (double v : y.values)
        if (!(v > 0.0)) throw DomainError("Doleans logarithm needs strictly positive values");
    std::vector<double> v(y.size());
    double acc = 0.0;
    if (!v.empty()) v[0] = 0.0;
    for (std::size_t k = 1; k < y.size(); ++k) {
        acc += (y.values[k] - y.values[k - 1]) / y.values[k - 1];
        v[k] = acc;
    }
    return ProcessSeries(y.times, std::move(v));
}

// max_t | [L(Y)] - [ln Y] |, a convergence diagnostic for the bracket identity.
inline double bracket_log_identity(const ProcessSeries& y) {
    const ProcessSeries lhs = quadratic_variation(doleans_log(y));
    std::vector<double> logs(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) logs[k] = std::log(y.values[k]);
    const ProcessSeries rhs = quadratic_variation(ProcessSeries(y.times, std::move(logs)));
    return sup_distance(lhs, rhs);
}

}  // namespace spt
