#include "reopt/histogram.hpp"

#include <algorithm>

namespace reopt {

Histogram Histogram::from_sketch(const GKSketch &s, std::size_t buckets) {
    if (s.count() == 0) throw Error("histogram requires a non-empty sketch");
    if (buckets < 1) throw Error("histogram requires at least one bucket");
    Histogram h;
    h.bucket_count_ = buckets;
    h.total_ = s.count();
    h.min_ = *s.min_value();
    h.max_ = *s.max_value();
    h.boundaries_.reserve(buckets - 1);
    for (std::size_t i = 1; i < buckets; ++i) {
        h.boundaries_.push_back(s.quantile(static_cast<double>(i) / static_cast<double>(buckets)));
    }
    // GK answers can locally invert across adjacent phi values; borders must
    // stay non-decreasing for the bucket walk below.
    for (std::size_t i = 1; i < h.boundaries_.size(); ++i) {
        if (h.boundaries_[i] < h.boundaries_[i - 1]) h.boundaries_[i] = h.boundaries_[i - 1];
    }
    return h;
}

namespace {

double overlap_fraction(const Value &a, const Value &b, const std::optional<Value> &lo,
                        const std::optional<Value> &hi) {
    // Bucket [a, b] against query [lo, hi]; unbounded ends cover everything.
    const Value &eff_lo = (lo && *lo > a) ? *lo : a;
    const Value &eff_hi = (hi && *hi < b) ? *hi : b;
    if (eff_hi < eff_lo) return 0.0;
    if (!(a < b)) return 1.0;  // point bucket inside the range
    if (type_of(a) == ValueType::Int64 && type_of(b) == ValueType::Int64) {
        double width = static_cast<double>(std::get<int64_t>(b) - std::get<int64_t>(a));
        double span = static_cast<double>(std::get<int64_t>(eff_hi) - std::get<int64_t>(eff_lo));
        return width > 0 ? std::min(1.0, span / width) : 1.0;
    }
    return 1.0;  // string buckets: no intra-bucket interpolation
}

}  // namespace

double Histogram::range_selectivity(const std::optional<Value> &lo,
                                    const std::optional<Value> &hi) const {
    if (bucket_count_ == 0) throw Error("selectivity query on empty histogram");
    if (lo && hi && *hi < *lo) return 0.0;
    if (lo && max_ < *lo) return 0.0;
    if (hi && *hi < min_) return 0.0;

    double mass = 1.0 / static_cast<double>(bucket_count_);
    double fraction = 0.0;
    Value left = min_;
    for (std::size_t b = 0; b < bucket_count_; ++b) {
        const Value &right = b + 1 < bucket_count_ ? boundaries_[b] : max_;
        fraction += mass * overlap_fraction(left, right, lo, hi);
        left = right;
    }
    return std::clamp(fraction, 0.0, 1.0);
}

}  // namespace reopt
