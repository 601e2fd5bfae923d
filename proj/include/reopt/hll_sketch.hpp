#pragma once

#include <cstdint>
#include <vector>

#include "reopt/value.hpp"

namespace reopt {

/// HyperLogLog distinct counter with the classic linear-counting small-range
/// correction. Registers are 2^p bytes; estimates are deterministic given the
/// same inputs and salt, in any insertion order.
class HLLSketch {
public:
    static constexpr uint64_t kDefaultSalt = 0x9e3779b97f4a7c15ULL;

    explicit HLLSketch(int precision = 14, uint64_t salt = kDefaultSalt);

    void insert(const Value &v);
    double estimate() const;
    static HLLSketch merge(const HLLSketch &a, const HLLSketch &b);

    int precision() const { return precision_; }
    uint64_t salt() const { return salt_; }
    const std::vector<uint8_t> &registers() const { return registers_; }

    void serialize(std::vector<uint8_t> &out) const;
    static HLLSketch deserialize(const uint8_t *data, std::size_t size, std::size_t &offset);

private:
    int precision_;
    uint64_t salt_;
    std::vector<uint8_t> registers_;
};

}  // namespace reopt
