#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace reopt {

// Field values are 64-bit integers or UTF-8 strings. Columns are
// homogeneously typed; mixed columns are rejected at load.
using Value = std::variant<int64_t, std::string>;

enum class ValueType { Int64, String };

inline ValueType type_of(const Value &v) {
    return std::holds_alternative<int64_t>(v) ? ValueType::Int64 : ValueType::String;
}

inline std::string to_display(const Value &v) {
    if (std::holds_alternative<int64_t>(v)) return std::to_string(std::get<int64_t>(v));
    return "\"" + std::get<std::string>(v) + "\"";
}

inline std::size_t value_byte_width(const Value &v) {
    return std::holds_alternative<int64_t>(v) ? 8 : std::get<std::string>(v).size();
}

// 64-bit mix finalizer (murmur3 fmix64).
inline uint64_t mix64(uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return h;
}

// Deterministic value hash: integers over their little-endian bytes,
// strings over UTF-8 bytes (FNV-1a), both mixed with the salt.
inline uint64_t hash_value(const Value &v, uint64_t salt) {
    if (std::holds_alternative<int64_t>(v)) {
        return mix64(static_cast<uint64_t>(std::get<int64_t>(v)) ^ salt);
    }
    const std::string &s = std::get<std::string>(v);
    uint64_t h = 0xcbf29ce484222325ULL ^ salt;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h);
}

inline uint64_t hash_values(const std::vector<Value> &vs, uint64_t salt) {
    uint64_t h = salt;
    for (const Value &v : vs) h = mix64(h ^ hash_value(v, salt));
    return h;
}

struct Error : std::runtime_error {
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace reopt
