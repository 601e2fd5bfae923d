#include "reopt/hll_sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "reopt/binio.hpp"

namespace reopt {

namespace {
constexpr uint8_t kHllVersion = 1;

double alpha_for(std::size_t m) {
    switch (m) {
        case 16: return 0.673;
        case 32: return 0.697;
        case 64: return 0.709;
        default: return 0.7213 / (1.0 + 1.079 / static_cast<double>(m));
    }
}
}  // namespace

HLLSketch::HLLSketch(int precision, uint64_t salt) : precision_(precision), salt_(salt) {
    if (precision < 4 || precision > 16) throw Error("HLL precision must be in [4,16]");
    registers_.assign(std::size_t{1} << precision, 0);
}

void HLLSketch::insert(const Value &v) {
    uint64_t h = hash_value(v, salt_);
    std::size_t idx = static_cast<std::size_t>(h >> (64 - precision_));
    uint64_t rest = h << precision_;
    int max_rank = 64 - precision_ + 1;
    int rank = rest == 0 ? max_rank : std::min(max_rank, std::countl_zero(rest) + 1);
    uint8_t r = static_cast<uint8_t>(rank);
    if (r > registers_[idx]) registers_[idx] = r;
}

double HLLSketch::estimate() const {
    const double m = static_cast<double>(registers_.size());
    double inv_sum = 0.0;
    std::size_t zeros = 0;
    for (uint8_t r : registers_) {
        inv_sum += std::ldexp(1.0, -static_cast<int>(r));
        if (r == 0) ++zeros;
    }
    double raw = alpha_for(registers_.size()) * m * m / inv_sum;
    if (raw <= 2.5 * m && zeros > 0) {
        return m * std::log(m / static_cast<double>(zeros));
    }
    return raw;
}

HLLSketch HLLSketch::merge(const HLLSketch &a, const HLLSketch &b) {
    if (a.precision_ != b.precision_) throw Error("HLL merge requires equal precision");
    if (a.salt_ != b.salt_) throw Error("HLL merge requires equal salt");
    HLLSketch out(a.precision_, a.salt_);
    for (std::size_t i = 0; i < out.registers_.size(); ++i) {
        out.registers_[i] = std::max(a.registers_[i], b.registers_[i]);
    }
    return out;
}

void HLLSketch::serialize(std::vector<uint8_t> &out) const {
    std::vector<uint8_t> body;
    binio::put_u8(body, kHllVersion);
    binio::put_u8(body, static_cast<uint8_t>(precision_));
    binio::put_u64(body, salt_);
    body.insert(body.end(), registers_.begin(), registers_.end());
    binio::put_u64(out, body.size());
    out.insert(out.end(), body.begin(), body.end());
}

HLLSketch HLLSketch::deserialize(const uint8_t *data, std::size_t size, std::size_t &offset) {
    binio::Reader frame{data, size, offset};
    uint64_t len = frame.u64();
    frame.need(len);
    binio::Reader r{data, frame.pos + len, frame.pos};
    if (r.u8() != kHllVersion) throw Error("unsupported HLL sketch version");
    int precision = r.u8();
    uint64_t salt = r.u64();
    HLLSketch s(precision, salt);
    for (std::size_t i = 0; i < s.registers_.size(); ++i) s.registers_[i] = r.u8();
    offset = frame.pos + len;
    return s;
}

}  // namespace reopt
