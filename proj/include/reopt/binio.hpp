#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "reopt/value.hpp"

namespace reopt::binio {

inline void put_u8(std::vector<uint8_t> &out, uint8_t v) { out.push_back(v); }

inline void put_u64(std::vector<uint8_t> &out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

inline void put_i64(std::vector<uint8_t> &out, int64_t v) { put_u64(out, static_cast<uint64_t>(v)); }

inline void put_f64(std::vector<uint8_t> &out, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

inline void put_string(std::vector<uint8_t> &out, const std::string &s) {
    put_u64(out, s.size());
    out.insert(out.end(), s.begin(), s.end());
}

inline void put_value(std::vector<uint8_t> &out, const Value &v) {
    if (std::holds_alternative<int64_t>(v)) {
        put_u8(out, 0);
        put_i64(out, std::get<int64_t>(v));
    } else {
        put_u8(out, 1);
        put_string(out, std::get<std::string>(v));
    }
}

struct Reader {
    const uint8_t *data;
    std::size_t size;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > size) throw Error("binary input truncated");
    }
    uint8_t u8() {
        need(1);
        return data[pos++];
    }
    uint64_t u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    int64_t i64() { return static_cast<int64_t>(u64()); }
    double f64() {
        uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }
    std::string string() {
        uint64_t n = u64();
        need(n);
        std::string s(reinterpret_cast<const char *>(data + pos), n);
        pos += n;
        return s;
    }
    Value value() {
        uint8_t tag = u8();
        if (tag == 0) return Value(i64());
        if (tag == 1) return Value(string());
        throw Error("bad value tag in binary input");
    }
};

}  // namespace reopt::binio
