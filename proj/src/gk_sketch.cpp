#include "reopt/gk_sketch.hpp"

#include <algorithm>
#include <cmath>

#include "reopt/binio.hpp"

namespace reopt {

namespace {
constexpr uint8_t kGkVersion = 1;
}

GKSketch::GKSketch(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("GK epsilon must be in (0,1)");
}

uint64_t GKSketch::band_threshold() const {
    return static_cast<uint64_t>(std::floor(2.0 * epsilon_ * static_cast<double>(count_)));
}

void GKSketch::insert(const Value &v) {
    if (!triples_.empty() && type_of(triples_.front().value) != type_of(v)) {
        throw Error("mixed value types in one column sketch");
    }
    if (!min_ || v < *min_) min_ = v;
    if (!max_ || *max_ < v) max_ = v;

    ++count_;
    auto it = std::upper_bound(triples_.begin(), triples_.end(), v,
                               [](const Value &x, const Triple &t) { return x < t.value; });
    uint64_t delta = 0;
    if (it != triples_.begin() && it != triples_.end()) {
        uint64_t band = band_threshold();
        delta = band > 0 ? band - 1 : 0;
    }
    triples_.insert(it, Triple{v, 1, delta});

    // Amortized compression keeps the summary at O((1/eps) log(eps n)) triples.
    if (++inserts_since_compress_ >= static_cast<uint64_t>(std::ceil(1.0 / (2.0 * epsilon_)))) {
        compress();
        inserts_since_compress_ = 0;
    }
}

void GKSketch::compress() {
    if (triples_.size() < 2) return;
    uint64_t threshold = band_threshold();
    std::vector<Triple> kept;
    kept.reserve(triples_.size());
    // Sweep from the right, folding each triple into its successor while the
    // band condition g_i + g_{i+1} + delta_{i+1} <= floor(2 eps n) holds.
    Triple succ = triples_.back();
    for (std::size_t i = triples_.size() - 1; i-- > 0;) {
        const Triple &cur = triples_[i];
        if (cur.g + succ.g + succ.delta <= threshold) {
            succ.g += cur.g;
        } else {
            kept.push_back(succ);
            succ = cur;
        }
    }
    kept.push_back(succ);
    std::reverse(kept.begin(), kept.end());
    triples_ = std::move(kept);
}

Value GKSketch::quantile(double phi) const {
    if (count_ == 0) throw Error("quantile query on empty sketch");
    if (phi <= 0.0) return *min_;
    if (phi >= 1.0) return *max_;

    double rank = std::ceil(phi * static_cast<double>(count_));
    double err = epsilon_ * static_cast<double>(count_);
    uint64_t rmin = 0;
    for (const Triple &t : triples_) {
        rmin += t.g;
        double rmax = static_cast<double>(rmin + t.delta);
        if (rmax - err <= rank && rank <= static_cast<double>(rmin) + err) return t.value;
    }
    return triples_.back().value;
}

GKSketch GKSketch::merge(const GKSketch &a, const GKSketch &b) {
    if (a.epsilon_ != b.epsilon_) throw Error("GK merge requires equal epsilon");
    if (a.count_ == 0) return b;
    if (b.count_ == 0) return a;

    GKSketch out(a.epsilon_);
    out.count_ = a.count_ + b.count_;
    out.min_ = std::min(*a.min_, *b.min_);
    out.max_ = std::max(*a.max_, *b.max_);
    out.triples_.reserve(a.triples_.size() + b.triples_.size());
    std::merge(a.triples_.begin(), a.triples_.end(), b.triples_.begin(), b.triples_.end(),
               std::back_inserter(out.triples_),
               [](const Triple &x, const Triple &y) { return x.value < y.value; });
    out.compress();
    return out;
}

bool GKSketch::check_invariants() const {
    uint64_t gsum = 0;
    uint64_t bound = band_threshold() + 1;
    for (std::size_t i = 0; i < triples_.size(); ++i) {
        const Triple &t = triples_[i];
        if (t.g < 1) return false;
        if (t.g + t.delta > bound) return false;
        if (i > 0 && t.value < triples_[i - 1].value) return false;
        gsum += t.g;
    }
    return gsum == count_;
}

void GKSketch::serialize(std::vector<uint8_t> &out) const {
    std::vector<uint8_t> body;
    binio::put_u8(body, kGkVersion);
    binio::put_f64(body, epsilon_);
    binio::put_u64(body, count_);
    binio::put_u64(body, triples_.size());
    for (const Triple &t : triples_) {
        binio::put_value(body, t.value);
        binio::put_u64(body, t.g);
        binio::put_u64(body, t.delta);
    }
    binio::put_u8(body, min_ ? 1 : 0);
    if (min_) binio::put_value(body, *min_);
    binio::put_u8(body, max_ ? 1 : 0);
    if (max_) binio::put_value(body, *max_);
    binio::put_u64(out, body.size());
    out.insert(out.end(), body.begin(), body.end());
}

GKSketch GKSketch::deserialize(const uint8_t *data, std::size_t size, std::size_t &offset) {
    binio::Reader frame{data, size, offset};
    uint64_t len = frame.u64();
    frame.need(len);
    binio::Reader r{data, frame.pos + len, frame.pos};
    if (r.u8() != kGkVersion) throw Error("unsupported GK sketch version");
    GKSketch s(r.f64());
    s.count_ = r.u64();
    uint64_t n = r.u64();
    s.triples_.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        Value v = r.value();
        uint64_t g = r.u64();
        uint64_t d = r.u64();
        s.triples_.push_back(Triple{v, g, d});
    }
    if (r.u8()) s.min_ = r.value();
    if (r.u8()) s.max_ = r.value();
    offset = frame.pos + len;
    return s;
}

}  // namespace reopt
