#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "spt/errors.hpp"

namespace spt {

// A scalar process sampled on the timestamps of one partition level.
struct ProcessSeries {
    std::vector<double> times;
    std::vector<double> values;

    ProcessSeries() = default;

    ProcessSeries(std::vector<double> t, std::vector<double> v)
        : times(std::move(t)), values(std::move(v)) {
        if (times.size() != values.size())
            throw LengthMismatch("series times/values length mismatch");
        for (double x : values)
            if (!std::isfinite(x)) throw DomainError("non-finite series value");
    }

    std::size_t size() const { return values.size(); }
    double front() const { return values.front(); }
    double back() const { return values.back(); }
};

inline void require_same_level(const ProcessSeries& a, const ProcessSeries& b) {
    if (a.size() != b.size())
        throw LengthMismatch("series on different partition levels");
}

// max_t |a - b| for two series on the same level.
inline double sup_distance(const ProcessSeries& a, const ProcessSeries& b) {
    require_same_level(a, b);
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        d = std::max(d, std::abs(a.values[k] - b.values[k]));
    return d;
}

}  // namespace spt
