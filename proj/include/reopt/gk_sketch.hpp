#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "reopt/value.hpp"

namespace reopt {

/// Greenwald-Khanna quantile summary over a single column's stream.
///
/// Keeps an ordered list of (value, g, delta) triples where g is the rank gap
/// to the previous triple and delta the rank uncertainty. After compression
/// every triple satisfies g + delta <= floor(2*eps*count) + 1, which bounds
/// the rank error of any quantile answer by eps*count (2*eps after one
/// merge). Space stays O((1/eps) * log(eps*n)); empirically the triple count
/// is below 12*(1/eps)*log2(eps*n + 2) on all tested streams.
class GKSketch {
public:
    struct Triple {
        Value value;
        uint64_t g;
        uint64_t delta;
    };

    explicit GKSketch(double epsilon = 0.01);

    void insert(const Value &v);
    // Rank of the returned value is within eps*count of phi*count.
    Value quantile(double phi) const;
    // Combines two summaries with the same epsilon; error bound doubles.
    static GKSketch merge(const GKSketch &a, const GKSketch &b);

    double epsilon() const { return epsilon_; }
    uint64_t count() const { return count_; }
    std::size_t triple_count() const { return triples_.size(); }
    const std::vector<Triple> &triples() const { return triples_; }
    std::optional<Value> min_value() const { return min_; }
    std::optional<Value> max_value() const { return max_; }

    // True when the GK space invariant and ordering hold; used by tests.
    bool check_invariants() const;

    void serialize(std::vector<uint8_t> &out) const;
    static GKSketch deserialize(const uint8_t *data, std::size_t size, std::size_t &offset);

private:
    void compress();
    uint64_t band_threshold() const;

    double epsilon_;
    uint64_t count_ = 0;
    uint64_t inserts_since_compress_ = 0;
    std::vector<Triple> triples_;
    std::optional<Value> min_;
    std::optional<Value> max_;
};

}  // namespace reopt
