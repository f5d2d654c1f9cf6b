#pragma once

// Generators (measures of diversity) and the portfolios they generate.
// A SmoothFunction is any C^2 scalar field on a neighbourhood of the simplex;
// a Generator additionally has to be strictly positive there.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spt/errors.hpp"
#include "spt/portfolio.hpp"

namespace spt {

class SmoothFunction {
public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using GradientFn = std::function<std::vector<double>(std::span<const double>)>;
    using HessianFn = std::function<std::vector<double>(std::span<const double>)>;  // row-major

    static SmoothFunction from_callables(std::string name, ValueFn value, GradientFn gradient,
                                         HessianFn hessian) {
        return SmoothFunction(std::move(name), std::move(value), std::move(gradient),
                              std::move(hessian));
    }

    // Value only; derivatives fall back to central differences.
    static SmoothFunction from_value(std::string name, ValueFn value) {
        SmoothFunction f(std::move(name), std::move(value), nullptr, nullptr);
        f.install_numeric_derivatives();
        return f;
    }

    static SmoothFunction linear(std::vector<double> coeffs, double constant) {
        auto c = std::make_shared<std::vector<double>>(std::move(coeffs));
        return SmoothFunction(
            "linear",
            [c, constant](std::span<const double> x) {
                double s = constant;
                for (std::size_t j = 0; j < x.size(); ++j) s += (*c)[j] * x[j];
                return s;
            },
            [c](std::span<const double> x) {
                (void)x;
                return *c;
            },
            [](std::span<const double> x) {
                return std::vector<double>(x.size() * x.size(), 0.0);
            });
    }

    // f(x) = -1/2 sum_j x_j^2, the quadratic field of the Stroock-Varadhan example.
    static SmoothFunction neg_half_sum_squares() {
        return SmoothFunction(
            "neg_half_sum_squares",
            [](std::span<const double> x) {
                double s = 0.0;
                for (double xi : x) s += xi * xi;
                return -0.5 * s;
            },
            [](std::span<const double> x) {
                std::vector<double> g(x.size());
                for (std::size_t j = 0; j < x.size(); ++j) g[j] = -x[j];
                return g;
            },
            [](std::span<const double> x) {
                std::vector<double> h(x.size() * x.size(), 0.0);
                for (std::size_t j = 0; j < x.size(); ++j) h[j * x.size() + j] = -1.0;
                return h;
            });
    }

    double value(std::span<const double> x) const { return value_(x); }
    std::vector<double> gradient(std::span<const double> x) const { return gradient_(x); }
    std::vector<double> hessian(std::span<const double> x) const { return hessian_(x); }
    const std::string& name() const { return name_; }

private:
    SmoothFunction(std::string name, ValueFn v, GradientFn g, HessianFn h)
        : name_(std::move(name)), value_(std::move(v)), gradient_(std::move(g)),
          hessian_(std::move(h)) {}

    // Central differences. Gradient step follows max(1e-6, 1e-6 |x_j|), clamped
    // to keep coordinates inside (0,1); the Hessian uses a wider 1e-4 step since
    // second differences lose half the significant digits at 1e-6.
    void install_numeric_derivatives() {
        ValueFn value = value_;
        gradient_ = [value](std::span<const double> x) {
            std::vector<double> pt(x.begin(), x.end());
            std::vector<double> g(x.size());
            for (std::size_t j = 0; j < x.size(); ++j) {
                const double h = step(x[j], 1e-6);
                const double keep = pt[j];
                pt[j] = keep + h;
                const double up = value(pt);
                pt[j] = keep - h;
                const double dn = value(pt);
                pt[j] = keep;
                g[j] = (up - dn) / (2.0 * h);
            }
            return g;
        };
        hessian_ = [value](std::span<const double> x) {
            const std::size_t n = x.size();
            std::vector<double> pt(x.begin(), x.end());
            std::vector<double> h(n * n);
            const double f0 = value(pt);
            for (std::size_t i = 0; i < n; ++i) {
                const double hi = step(x[i], 1e-4);
                const double keep_i = pt[i];
                pt[i] = keep_i + hi;
                const double up = value(pt);
                pt[i] = keep_i - hi;
                const double dn = value(pt);
                pt[i] = keep_i;
                h[i * n + i] = (up - 2.0 * f0 + dn) / (hi * hi);
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double hj = step(x[j], 1e-4);
                    const double keep_j = pt[j];
                    pt[i] = keep_i + hi; pt[j] = keep_j + hj;
                    const double pp = value(pt);
                    pt[j] = keep_j - hj;
                    const double pm = value(pt);
                    pt[i] = keep_i - hi; pt[j] = keep_j + hj;
                    const double mp = value(pt);
                    pt[j] = keep_j - hj;
                    const double mm = value(pt);
                    pt[i] = keep_i; pt[j] = keep_j;
                    const double mixed = (pp - pm - mp + mm) / (4.0 * hi * hj);
                    h[i * n + j] = mixed;
                    h[j * n + i] = mixed;
                }
            }
            return h;
        };
    }

    static double step(double coord, double base) {
        double h = std::max(base, base * std::abs(coord));
        const double room = std::min(coord, 1.0 - coord);
        if (room > 0.0 && h > 0.5 * room) h = 0.5 * room;
        return h;
    }

    std::string name_;
    ValueFn value_;
    GradientFn gradient_;
    HessianFn hessian_;
};

class Generator {
public:
    enum class Kind { quadratic, entropy, diversity, custom };

    // S(x) = 1 - 1/2 sum x_j^2
    static Generator quadratic() {
        return Generator(Kind::quadratic, 0.0,
                         SmoothFunction::from_callables(
                             "quadratic",
                             [](std::span<const double> x) {
                                 double s = 0.0;
                                 for (double xi : x) s += xi * xi;
                                 return 1.0 - 0.5 * s;
                             },
                             [](std::span<const double> x) {
                                 std::vector<double> g(x.size());
                                 for (std::size_t j = 0; j < x.size(); ++j) g[j] = -x[j];
                                 return g;
                             },
                             [](std::span<const double> x) {
                                 std::vector<double> h(x.size() * x.size(), 0.0);
                                 for (std::size_t j = 0; j < x.size(); ++j)
                                     h[j * x.size() + j] = -1.0;
                                 return h;
                             }));
    }

    // S(x) = -sum x_j ln x_j
    static Generator entropy() {
        return Generator(Kind::entropy, 0.0,
                         SmoothFunction::from_callables(
                             "entropy",
                             [](std::span<const double> x) {
                                 double s = 0.0;
                                 for (double xi : x) s -= xi * std::log(xi);
                                 return s;
                             },
                             [](std::span<const double> x) {
                                 std::vector<double> g(x.size());
                                 for (std::size_t j = 0; j < x.size(); ++j)
                                     g[j] = -(std::log(x[j]) + 1.0);
                                 return g;
                             },
                             [](std::span<const double> x) {
                                 std::vector<double> h(x.size() * x.size(), 0.0);
                                 for (std::size_t j = 0; j < x.size(); ++j)
                                     h[j * x.size() + j] = -1.0 / x[j];
                                 return h;
                             }));
    }

    // D_p(x) = (sum x_j^p)^{1/p}, p in (0,1)
    static Generator diversity(double p) {
        if (!(p > 0.0 && p < 1.0))
            throw DomainError("diversity parameter p must lie in (0,1)");
        return Generator(
            Kind::diversity, p,
            SmoothFunction::from_callables(
                "diversity_p",
                [p](std::span<const double> x) {
                    double u = 0.0;
                    for (double xi : x) u += std::pow(xi, p);
                    return std::pow(u, 1.0 / p);
                },
                [p](std::span<const double> x) {
                    double u = 0.0;
                    for (double xi : x) u += std::pow(xi, p);
                    const double outer = std::pow(u, 1.0 / p - 1.0);
                    std::vector<double> g(x.size());
                    for (std::size_t j = 0; j < x.size(); ++j)
                        g[j] = outer * std::pow(x[j], p - 1.0);
                    return g;
                },
                [p](std::span<const double> x) {
                    const std::size_t n = x.size();
                    double u = 0.0;
                    for (double xi : x) u += std::pow(xi, p);
                    const double cross_factor = (1.0 - p) * std::pow(u, 1.0 / p - 2.0);
                    const double diag_factor = (p - 1.0) * std::pow(u, 1.0 / p - 1.0);
                    std::vector<double> h(n * n);
                    for (std::size_t i = 0; i < n; ++i) {
                        const double xi_pow = std::pow(x[i], p - 1.0);
                        for (std::size_t j = 0; j < n; ++j) {
                            h[i * n + j] = cross_factor * xi_pow * std::pow(x[j], p - 1.0);
                            if (i == j) h[i * n + j] += diag_factor * std::pow(x[j], p - 2.0);
                        }
                    }
                    return h;
                }));
    }

    static Generator custom(SmoothFunction field) {
        return Generator(Kind::custom, 0.0, std::move(field));
    }

    double value(std::span<const double> x) const {
        const double s = field_.value(x);
        if (!(s > 0.0))
            throw DomainError("generator '" + field_.name() + "' is not positive here");
        return s;
    }
    std::vector<double> gradient(std::span<const double> x) const { return field_.gradient(x); }
    std::vector<double> hessian(std::span<const double> x) const { return field_.hessian(x); }

    // ln S as a C^2 field: D_j ln S = D_j S / S, D_ij ln S = D_ij S / S - D_i f D_j f.
    SmoothFunction log_field() const {
        const SmoothFunction f = field_;
        return SmoothFunction::from_callables(
            "ln_" + f.name(),
            [f](std::span<const double> x) { return std::log(f.value(x)); },
            [f](std::span<const double> x) {
                const double s = f.value(x);
                std::vector<double> g = f.gradient(x);
                for (double& gi : g) gi /= s;
                return g;
            },
            [f](std::span<const double> x) {
                const std::size_t n = x.size();
                const double s = f.value(x);
                const std::vector<double> g = f.gradient(x);
                std::vector<double> h = f.hessian(x);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        h[i * n + j] = h[i * n + j] / s - (g[i] / s) * (g[j] / s);
                return h;
            });
    }

    Kind kind() const { return kind_; }
    double p() const { return p_; }
    const std::string& name() const { return field_.name(); }
    const SmoothFunction& field() const { return field_; }

private:
    Generator(Kind kind, double p, SmoothFunction field)
        : kind_(kind), p_(p), field_(std::move(field)) {}

    Kind kind_;
    double p_;
    SmoothFunction field_;
};

inline void require_open_simplex(std::span<const double> x) {
    double sum = 0.0;
    for (double xi : x) {
        if (!(xi > 0.0) || !std::isfinite(xi))
            throw DomainError("point is outside the open simplex");
        sum += xi;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw DomainError("point coordinates sum to " + std::to_string(sum) + ", not 1");
}

// pi_j(x) = (D_j ln S + 1 - sum_k x_k D_k ln S) x_j; sums to 1 by construction.
inline std::vector<double> generated_portfolio(const Generator& gen,
                                               std::span<const double> x) {
    require_open_simplex(x);
    const double s = gen.value(x);
    const std::vector<double> grad = gen.gradient(x);
    double weighted = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) weighted += x[k] * grad[k] / s;
    const double shift = 1.0 - weighted;
    std::vector<double> pi(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) pi[j] = (grad[j] / s + shift) * x[j];
    return pi;
}

// The closed forms of the three named generators.
inline std::vector<double> closed_form_portfolio(Generator::Kind kind,
                                                 std::span<const double> x,
                                                 double p = 0.5) {
    require_open_simplex(x);
    std::vector<double> pi(x.size());
    switch (kind) {
        case Generator::Kind::quadratic: {
            double s = 0.0;
            for (double xi : x) s += xi * xi;
            s = 1.0 - 0.5 * s;
            for (std::size_t j = 0; j < x.size(); ++j)
                pi[j] = ((2.0 - x[j]) / s - 1.0) * x[j];
            return pi;
        }
        case Generator::Kind::entropy: {
            double s = 0.0;
            for (double xi : x) s -= xi * std::log(xi);
            for (std::size_t j = 0; j < x.size(); ++j) pi[j] = -x[j] * std::log(x[j]) / s;
            return pi;
        }
        case Generator::Kind::diversity: {
            if (!(p > 0.0 && p < 1.0))
                throw DomainError("diversity parameter p must lie in (0,1)");
            double u = 0.0;
            for (double xi : x) u += std::pow(xi, p);
            for (std::size_t j = 0; j < x.size(); ++j) pi[j] = std::pow(x[j], p) / u;
            return pi;
        }
        case Generator::Kind::custom:
            throw DomainError("custom generators have no closed-form portfolio");
    }
    throw DomainError("unknown generator kind");
}

// S(x) with the range checks the corollaries rely on.
inline double diversity_value(const Generator& gen, std::span<const double> x) {
    require_open_simplex(x);
    const double s = gen.value(x);
    if (gen.kind() == Generator::Kind::quadratic) {
        if (s < 0.5 - 1e-12 || s > 1.0 + 1e-12)
            throw DomainError("quadratic diversity left [1/2, 1]");
    } else if (gen.kind() == Generator::Kind::diversity) {
        const double top =
            std::pow(static_cast<double>(x.size()), (1.0 - gen.p()) / gen.p());
        if (s < 1.0 - 1e-12 || s > top * (1.0 + 1e-12))
            throw DomainError("D_p left [1, J^((1-p)/p)]");
    }
    return s;
}

inline Portfolio portfolio_from(const Generator& gen) {
    const Generator copy = gen;
    return Portfolio::from_function(
        "generated_by_" + gen.name(),
        [copy](std::span<const double> mu) { return generated_portfolio(copy, mu); });
}

}  // namespace spt
