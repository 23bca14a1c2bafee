#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "csdict/error.hpp"
#include "csdict/hash.hpp"

namespace csdict {

// Reference to a stored string: (byte offset of the string's first byte) >> 3.
// The heap never relocates entries, so refs stay valid for its lifetime.
struct ElemRef {
    uint64_t index = 0;

    friend bool operator==(ElemRef, ElemRef) = default;
};

// Append-only string arena with chained hash buckets.
//
// Entry layout at an 8-byte-aligned offset o:
//   [8-byte link word][string bytes][NUL][zero padding to a multiple of 8]
//
// Link words and bucket heads hold the stridx of the next entry in the
// chain: the byte offset of that entry's first string byte (entry offset
// + 8). Every such stridx is 8-byte aligned, nonzero, and strictly below
// the free watermark, so 0 serves as the nil terminator.
class StringHeap {
public:
    static constexpr uint64_t kDefaultBuckets = 1u << 10;
    static constexpr uint64_t kMinCapacity = 64;
    static constexpr uint64_t kMaxStringLen = uint64_t{1} << 31;
    static constexpr double kMaxLoadFactor = 0.75;

    StringHeap(uint64_t initial_buckets, uint64_t initial_capacity, HashFunctionId f)
        : hash_fn_(f) {
        if (initial_buckets < 2 || !is_power_of_two(initial_buckets))
            throw ContractViolation("StringHeap: bucket count must be a power of two >= 2");
        if (initial_capacity < kMinCapacity)
            throw ContractViolation("StringHeap: initial capacity must be >= 64");
        try {
            arena_.resize(initial_capacity, 0);
            buckets_.assign(initial_buckets, 0);
        } catch (const std::bad_alloc&) {
            throw ResourceError("StringHeap: allocation failed");
        }
    }

    explicit StringHeap(HashFunctionId f)
        : StringHeap(kDefaultBuckets, 8 * kDefaultBuckets, f) {}

    HashFunctionId hash_fn() const { return hash_fn_; }
    uint64_t entry_count() const { return entry_count_; }
    uint64_t bucket_count() const { return buckets_.size(); }
    uint64_t free_offset() const { return free_; }

    // Insert-if-absent; returns the (possibly preexisting) ref.
    ElemRef insert(std::string_view s) {
        check_string(s);
        const uint64_t h = hash_bytes(hash_fn_, s);
        uint64_t bucket = h & (buckets_.size() - 1);
        if (std::optional<ElemRef> hit = find_in_chain(bucket, s)) return *hit;

        if (static_cast<double>(entry_count_ + 1) >
            kMaxLoadFactor * static_cast<double>(buckets_.size())) {
            grow();
            bucket = h & (buckets_.size() - 1);
        }

        const uint64_t entry_size = padded_entry_size(s.size());
        if (free_ + entry_size > arena_.size()) grow_arena(free_ + entry_size);

        const uint64_t off = free_;
        const uint64_t link = buckets_[bucket];
        std::memcpy(arena_.data() + off, &link, sizeof(link));
        if (!s.empty()) std::memcpy(arena_.data() + off + 8, s.data(), s.size());
        // NUL and pad bytes are already zero: the arena is zero-filled and
        // free space is never written twice.
        buckets_[bucket] = off == 0 ? kOffsetZeroHead : off;
        free_ = off + entry_size;
        entry_offsets_.push_back(off);
        ++entry_count_;
        return ElemRef{(off + 8) >> 3};
    }

    std::optional<ElemRef> lookup(std::string_view s) const {
        check_string(s);
        const uint64_t bucket = hash_bytes(hash_fn_, s) & (buckets_.size() - 1);
        return find_in_chain(bucket, s);
    }

    std::string_view deref(ElemRef r) const {
        const uint64_t str_off = r.index << 3;
        if (str_off < 8 || str_off >= free_)
            throw ContractViolation("deref: ref outside heap");
        const uint64_t entry_off = str_off - 8;
        if (!std::binary_search(entry_offsets_.begin(), entry_offsets_.end(), entry_off))
            throw ContractViolation("deref: ref is not an entry");
        return string_at(entry_off);
    }

    HashQualityReport stats() const {
        std::vector<uint64_t> occupancy(buckets_.size(), 0);
        std::vector<std::string> keys;
        keys.reserve(entry_count_);
        for (size_t b = 0; b < buckets_.size(); ++b) {
            for (uint64_t off = head(b); off != kNil; off = next_of(off)) {
                ++occupancy[b];
                keys.emplace_back(string_at(off));
            }
        }
        HashQualityReport r = detail::quality_from_occupancy(occupancy, entry_count_);
        r.avalanche_mean = detail::avalanche_mean(keys, hash_fn_);
        return r;
    }

    // Visits every entry in arena order as (ref, string).
    template <typename Fn>
    void for_each_entry(Fn&& fn) const {
        for (uint64_t off = 0; off < free_;) {
            std::string_view s = string_at(off);
            fn(ElemRef{(off + 8) >> 3}, s);
            off += padded_entry_size(s.size());
        }
    }

    // Text rendering "offset<TAB>bucket<TAB>string" for diffing in tests.
    std::string debug_dump() const {
        std::ostringstream out;
        for_each_entry([&](ElemRef r, std::string_view s) {
            const uint64_t off = (r.index << 3) - 8;
            out << off << '\t' << (hash_bytes(hash_fn_, s) & (buckets_.size() - 1))
                << '\t' << s << '\n';
        });
        return out.str();
    }

private:
    // Bucket heads store the entry offset, except that a head pointing at
    // offset 0 is stored as this sentinel so 0 can stay the nil terminator.
    static constexpr uint64_t kOffsetZeroHead = ~uint64_t{0};
    static constexpr uint64_t kNil = ~uint64_t{0} - 1;

    static void check_string(std::string_view s) {
        if (s.size() > kMaxStringLen)
            throw ContractViolation("string longer than 2^31 bytes");
        if (s.find('\0') != std::string_view::npos)
            throw ContractViolation("string contains embedded NUL");
    }

    static uint64_t padded_entry_size(uint64_t str_len) {
        return 8 + ((str_len + 1 + 7) & ~uint64_t{7});
    }

    uint64_t head(size_t bucket) const {
        const uint64_t h = buckets_[bucket];
        if (h == 0) return kNil;
        return h == kOffsetZeroHead ? 0 : h;
    }

    // The link word is a raw offset; 0 terminates. An entry at offset 0 is
    // always a chain tail (it was pushed onto an empty bucket).
    uint64_t next_of(uint64_t entry_off) const {
        uint64_t link;
        std::memcpy(&link, arena_.data() + entry_off, sizeof(link));
        return link == 0 ? kNil : link;
    }

    std::string_view string_at(uint64_t entry_off) const {
        const char* p = reinterpret_cast<const char*>(arena_.data() + entry_off + 8);
        return std::string_view(p);
    }

    std::optional<ElemRef> find_in_chain(uint64_t bucket, std::string_view s) const {
        for (uint64_t off = head(bucket); off != kNil; off = next_of(off)) {
            if (string_at(off) == s) return ElemRef{(off + 8) >> 3};
        }
        return std::nullopt;
    }

    // Doubles the bucket table and relinks every entry. Entry bytes other
    // than the link word never move, so refs stay valid.
    void grow() {
        std::vector<uint64_t> fresh;
        try {
            fresh.assign(buckets_.size() * 2, 0);
        } catch (const std::bad_alloc&) {
            throw ResourceError("StringHeap: bucket growth failed");
        }
        buckets_ = std::move(fresh);
        const uint64_t mask = buckets_.size() - 1;
        for (uint64_t off = 0; off < free_;) {
            std::string_view s = string_at(off);
            const uint64_t bucket = hash_bytes(hash_fn_, s) & mask;
            uint64_t link = buckets_[bucket] == kOffsetZeroHead ? 0 : buckets_[bucket];
            std::memcpy(arena_.data() + off, &link, sizeof(link));
            buckets_[bucket] = off == 0 ? kOffsetZeroHead : off;
            off += padded_entry_size(s.size());
        }
    }

    void grow_arena(uint64_t needed) {
        uint64_t cap = arena_.size();
        while (cap < needed) cap *= 2;
        try {
            arena_.resize(cap, 0);
        } catch (const std::bad_alloc&) {
            throw ResourceError("StringHeap: arena growth failed");
        }
    }

    std::vector<uint8_t> arena_;
    uint64_t free_ = 0;
    std::vector<uint64_t> entry_offsets_;  // ascending, one per entry
    std::vector<uint64_t> buckets_;
    HashFunctionId hash_fn_;
    uint64_t entry_count_ = 0;
};

inline StringHeap heap_alloc(uint64_t initial_buckets, uint64_t initial_capacity,
                             HashFunctionId f) {
    return StringHeap(initial_buckets, initial_capacity, f);
}

} // namespace csdict
