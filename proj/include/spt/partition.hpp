#pragma once

// Nested refining sub-grids of a sampled path. Level n of a grid with
// 2^m + 1 points keeps every 2^(m-n)-th index; the finest stored level is
// always the full grid.

#include <cstddef>
#include <span>
#include <vector>

#include "spt/errors.hpp"
#include "spt/weight_path.hpp"

namespace spt {

class PartitionSequence {
public:
    PartitionSequence(std::size_t base_size,
                      std::vector<int> numbers,
                      std::vector<std::vector<std::size_t>> levels)
        : base_size_(base_size), numbers_(std::move(numbers)), levels_(std::move(levels)) {
        if (levels_.empty() || levels_.size() != numbers_.size())
            throw DomainError("empty or inconsistent partition sequence");
        for (const auto& lv : levels_) {
            if (lv.size() < 2 || lv.front() != 0 || lv.back() != base_size_ - 1)
                throw DomainError("each level must contain both endpoints");
            for (std::size_t i = 1; i < lv.size(); ++i)
                if (lv[i] <= lv[i - 1])
                    throw DomainError("level indices must be strictly increasing");
        }
        if (levels_.back().size() != base_size_)
            throw DomainError("finest level must be the full sample grid");
        // Nesting: every level is a subset of the next.
        for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
            const auto& coarse = levels_[i];
            const auto& fine = levels_[i + 1];
            std::size_t pos = 0;
            for (std::size_t idx : coarse) {
                while (pos < fine.size() && fine[pos] < idx) ++pos;
                if (pos == fine.size() || fine[pos] != idx)
                    throw DomainError("partition levels are not nested");
            }
        }
    }

    std::size_t count() const { return levels_.size(); }
    std::size_t base_size() const { return base_size_; }
    int number(std::size_t i) const { return numbers_[i]; }
    int max_number() const { return numbers_.back(); }
    std::span<const std::size_t> level(std::size_t i) const { return levels_[i]; }
    std::span<const std::size_t> finest() const { return levels_.back(); }

    std::span<const std::size_t> by_number(int n) const {
        for (std::size_t i = 0; i < numbers_.size(); ++i)
            if (numbers_[i] == n) return levels_[i];
        throw DomainError("no partition level with number " + std::to_string(n));
    }

private:
    std::size_t base_size_;
    std::vector<int> numbers_;
    std::vector<std::vector<std::size_t>> levels_;
};

// True if n == 2^m + 1; reports m.
inline bool dyadic_grid_exponent(std::size_t n, int& m) {
    if (n < 3) return false;
    std::size_t steps = n - 1;
    if ((steps & (steps - 1)) != 0) return false;
    m = 0;
    while ((std::size_t{1} << m) < steps) ++m;
    return true;
}

// Levels 1..min(depth, m) by dyadic striding, plus the full grid.
inline PartitionSequence dyadic_partitions(const WeightPath& path, int depth) {
    if (depth < 1) throw DomainError("partition depth must be >= 1");
    int m = 0;
    if (!dyadic_grid_exponent(path.size(), m))
        throw DomainError("grid length " + std::to_string(path.size()) +
                          " is not 2^m + 1; dyadic partitions undefined");
    const int d = std::min(depth, m);
    std::vector<int> numbers;
    std::vector<std::vector<std::size_t>> levels;
    for (int n = 1; n <= d; ++n) {
        const std::size_t stride = std::size_t{1} << (m - n);
        std::vector<std::size_t> idx;
        idx.reserve((path.size() - 1) / stride + 1);
        for (std::size_t i = 0; i < path.size(); i += stride) idx.push_back(i);
        numbers.push_back(n);
        levels.push_back(std::move(idx));
    }
    if (d < m) {
        std::vector<std::size_t> full(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) full[i] = i;
        numbers.push_back(m);
        levels.push_back(std::move(full));
    }
    return PartitionSequence(path.size(), std::move(numbers), std::move(levels));
}

// Convenience: the identity level over the full sample grid.
inline std::vector<std::size_t> full_grid(const WeightPath& path) {
    std::vector<std::size_t> idx(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) idx[i] = i;
    return idx;
}

}  // namespace spt
