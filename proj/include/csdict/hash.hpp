#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "csdict/error.hpp"

namespace csdict {

enum class HashFunctionId { MMH, JENKINS };

inline const char* to_string(HashFunctionId f) {
    return f == HashFunctionId::MMH ? "mmh" : "jenkins";
}

// ---------------------------------------------------------------------------
// MMH: shift-XOR fold over the input bytes.
//
//   h0 = 0
//   h  = h ^ ((h << 10) + (h >> 7) + byte)
//
// State is a 64-bit unsigned word with wraparound arithmetic; shifts are
// logical. One fold step per input byte, no seed.
// ---------------------------------------------------------------------------

inline uint64_t mmh_step(uint64_t h, uint8_t v) {
    return h ^ ((h << 10) + (h >> 7) + v);
}

inline uint64_t mmh_hash(std::span<const uint8_t> key) {
    uint64_t h = 0;
    for (uint8_t v : key) h = mmh_step(h, v);
    return h;
}

inline uint64_t mmh_hash(std::string_view key) {
    return mmh_hash(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(key.data()), key.size()));
}

// ---------------------------------------------------------------------------
// Jenkins lookup3 (hashlittle): 12 bytes per round, final partial-block
// switch, 32-bit result widened to 64 bits with zero high bits.
// ---------------------------------------------------------------------------

namespace detail {

inline uint32_t jrot(uint32_t x, int k) { return std::rotl(x, k); }

inline void jenkins_mix(uint32_t& a, uint32_t& b, uint32_t& c) {
    a -= c;  a ^= jrot(c, 4);  c += b;
    b -= a;  b ^= jrot(a, 6);  a += c;
    c -= b;  c ^= jrot(b, 8);  b += a;
    a -= c;  a ^= jrot(c, 16); c += b;
    b -= a;  b ^= jrot(a, 19); a += c;
    c -= b;  c ^= jrot(b, 4);  b += a;
}

inline void jenkins_final(uint32_t& a, uint32_t& b, uint32_t& c) {
    c ^= b;  c -= jrot(b, 14);
    a ^= c;  a -= jrot(c, 11);
    b ^= a;  b -= jrot(a, 25);
    c ^= b;  c -= jrot(b, 16);
    a ^= c;  a -= jrot(c, 4);
    b ^= a;  b -= jrot(a, 14);
    c ^= b;  c -= jrot(b, 24);
}

inline uint32_t load_le32(const uint8_t* p, size_t n) {
    uint32_t w = 0;
    for (size_t i = 0; i < n; ++i) w |= static_cast<uint32_t>(p[i]) << (8 * i);
    return w;
}

} // namespace detail

inline uint64_t jenkins_hash(std::span<const uint8_t> key, uint32_t init = 0) {
    const uint8_t* k = key.data();
    size_t length = key.size();

    uint32_t a, b, c;
    a = b = c = 0xdeadbeef + static_cast<uint32_t>(key.size()) + init;

    while (length > 12) {
        a += detail::load_le32(k, 4);
        b += detail::load_le32(k + 4, 4);
        c += detail::load_le32(k + 8, 4);
        detail::jenkins_mix(a, b, c);
        length -= 12;
        k += 12;
    }

    // Final block: 0..12 remaining bytes.
    if (length == 0) return c;
    a += detail::load_le32(k, length < 4 ? length : 4);
    if (length > 4) b += detail::load_le32(k + 4, length < 8 ? length - 4 : 4);
    if (length > 8) c += detail::load_le32(k + 8, length - 8);
    detail::jenkins_final(a, b, c);
    return c;
}

inline uint64_t jenkins_hash(std::string_view key, uint32_t init = 0) {
    return jenkins_hash(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(key.data()), key.size()), init);
}

inline uint64_t hash_bytes(HashFunctionId f, std::span<const uint8_t> key) {
    return f == HashFunctionId::MMH ? mmh_hash(key) : jenkins_hash(key, 0);
}

inline uint64_t hash_bytes(HashFunctionId f, std::string_view key) {
    return f == HashFunctionId::MMH ? mmh_hash(key) : jenkins_hash(key, 0);
}

// ---------------------------------------------------------------------------
// Bucket selection and quality diagnostics.
// ---------------------------------------------------------------------------

inline bool is_power_of_two(uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline uint64_t bucket_of(uint64_t h, uint64_t nbuckets) {
    if (nbuckets < 2 || !is_power_of_two(nbuckets))
        throw ContractViolation("bucket_of: nbuckets must be a power of two >= 2");
    return h & (nbuckets - 1);
}

struct HashQualityReport {
    uint64_t nbuckets = 0;
    uint64_t key_count = 0;
    double chi_square = 0.0;
    uint64_t max_chain = 0;
    double mean_chain = 0.0;
    uint64_t empty_buckets = 0;
    double avalanche_mean = 0.0;
};

namespace detail {

// Avalanche sample: up to 256 keys, every input bit position of each.
// The flipped-bit fraction is measured over the function's real output
// width (32 bits for the widened Jenkins, 64 for MMH).
inline constexpr size_t kAvalancheKeySample = 256;

inline double avalanche_mean(const std::vector<std::string>& keys, HashFunctionId f) {
    const int out_bits = (f == HashFunctionId::JENKINS) ? 32 : 64;
    uint64_t trials = 0;
    uint64_t flipped = 0;
    size_t sampled = 0;
    for (const std::string& key : keys) {
        if (key.empty()) continue;
        if (sampled++ == kAvalancheKeySample) break;
        const uint64_t h0 = hash_bytes(f, key);
        std::string mutant = key;
        for (size_t bit = 0; bit < key.size() * 8; ++bit) {
            mutant[bit / 8] = static_cast<char>(
                static_cast<uint8_t>(key[bit / 8]) ^ (1u << (bit % 8)));
            flipped += std::popcount(h0 ^ hash_bytes(f, mutant));
            trials += out_bits;
            mutant[bit / 8] = key[bit / 8];
        }
    }
    return trials == 0 ? 0.0 : static_cast<double>(flipped) / static_cast<double>(trials);
}

inline HashQualityReport quality_from_occupancy(const std::vector<uint64_t>& occupancy,
                                                uint64_t key_count) {
    HashQualityReport r;
    r.nbuckets = occupancy.size();
    r.key_count = key_count;
    const double expected =
        static_cast<double>(key_count) / static_cast<double>(occupancy.size());
    for (uint64_t n : occupancy) {
        if (n == 0) ++r.empty_buckets;
        if (n > r.max_chain) r.max_chain = n;
        if (expected > 0.0) {
            const double d = static_cast<double>(n) - expected;
            r.chi_square += d * d / expected;
        }
    }
    const uint64_t used = r.nbuckets - r.empty_buckets;
    r.mean_chain = used == 0 ? 0.0
                             : static_cast<double>(key_count) / static_cast<double>(used);
    return r;
}

} // namespace detail

inline HashQualityReport quality_report(const std::vector<std::string>& keys,
                                        HashFunctionId f, uint64_t nbuckets) {
    if (keys.empty())
        throw ContractViolation("quality_report: key list must be nonempty");
    if (!is_power_of_two(nbuckets) || nbuckets < 2)
        throw ContractViolation("quality_report: nbuckets must be a power of two >= 2");
    std::vector<uint64_t> occupancy(nbuckets, 0);
    for (const std::string& key : keys)
        ++occupancy[bucket_of(hash_bytes(f, key), nbuckets)];
    HashQualityReport r = detail::quality_from_occupancy(occupancy, keys.size());
    r.avalanche_mean = detail::avalanche_mean(keys, f);
    return r;
}

} // namespace csdict
