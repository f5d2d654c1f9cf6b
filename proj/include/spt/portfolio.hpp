#pragma once

// Basic portfolios: maps from the open simplex to the closed simplex.

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spt/errors.hpp"

namespace spt {

class Portfolio {
public:
    using WeightFn = std::function<std::vector<double>(std::span<const double>)>;

    static Portfolio market() {
        return Portfolio("market", [](std::span<const double> mu) {
            return std::vector<double>(mu.begin(), mu.end());
        });
    }

    static Portfolio equal_weight() {
        return Portfolio("equal_weight", [](std::span<const double> mu) {
            return std::vector<double>(mu.size(), 1.0 / static_cast<double>(mu.size()));
        });
    }

    static Portfolio single_asset(std::size_t j) {
        return Portfolio("asset_" + std::to_string(j + 1), [j](std::span<const double> mu) {
            std::vector<double> w(mu.size(), 0.0);
            if (j >= mu.size()) throw DomainError("single_asset index out of range");
            w[j] = 1.0;
            return w;
        });
    }

    static Portfolio from_function(std::string name, WeightFn fn) {
        return Portfolio(std::move(name), std::move(fn));
    }

    // Skips the closed-simplex output check; for leveraged experiments only.
    static Portfolio unchecked(std::string name, WeightFn fn) {
        Portfolio p(std::move(name), std::move(fn));
        p.validate_ = false;
        return p;
    }

    std::vector<double> weights(std::span<const double> mu) const {
        std::vector<double> w = fn_(mu);
        if (w.size() != mu.size())
            throw DomainError("portfolio '" + name_ + "' returned wrong dimension");
        if (validate_) {
            double sum = 0.0;
            for (double x : w) {
                if (!std::isfinite(x) || x < -1e-12 || x > 1.0 + 1e-12)
                    throw DomainError("portfolio '" + name_ + "' left the closed simplex");
                sum += x;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw DomainError("portfolio '" + name_ + "' weights sum to " +
                                  std::to_string(sum));
        }
        return w;
    }

    const std::string& name() const { return name_; }

private:
    Portfolio(std::string name, WeightFn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    std::string name_;
    WeightFn fn_;
    bool validate_ = true;
};

}  // namespace spt
