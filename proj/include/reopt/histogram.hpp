#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reopt/gk_sketch.hpp"
#include "reopt/value.hpp"

namespace reopt {

/// Equi-height histogram materialized from a GK sketch: B buckets holding
/// roughly total/B rows each, bucket borders at the i/B quantiles.
class Histogram {
public:
    Histogram() = default;
    static Histogram from_sketch(const GKSketch &s, std::size_t buckets);

    // Estimated fraction of rows in [lo, hi] (either end may be unbounded).
    // Int64 buckets interpolate uniformly inside a bucket; string buckets
    // count any intersected bucket in full.
    double range_selectivity(const std::optional<Value> &lo, const std::optional<Value> &hi) const;

    std::size_t bucket_count() const { return bucket_count_; }
    uint64_t total() const { return total_; }
    const std::vector<Value> &boundaries() const { return boundaries_; }
    const Value &min_value() const { return min_; }
    const Value &max_value() const { return max_; }

private:
    std::size_t bucket_count_ = 0;
    uint64_t total_ = 0;
    Value min_;
    Value max_;
    std::vector<Value> boundaries_;  // B-1 inner borders, non-decreasing
};

}  // namespace reopt
