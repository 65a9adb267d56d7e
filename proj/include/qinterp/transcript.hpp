#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qinterp {

/// Stable 64-bit digest (FNV-1a) for transcript payload fingerprints.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

inline std::uint64_t digest_values(std::string_view tag, const std::vector<std::uint64_t>& values) {
    std::string buf(tag);
    for (auto v : values) {
        buf.push_back(':');
        buf += std::to_string(v);
    }
    return fnv1a64(buf);
}

namespace msg {
inline constexpr const char* kQuery = "query";
inline constexpr const char* kShare = "share";
inline constexpr const char* kResult = "result";
inline constexpr const char* kDestroyed = "destroyed";
}  // namespace msg

struct TranscriptEntry {
    std::uint32_t step = 0;
    std::string from;
    std::string to;
    std::string kind;  // one of msg::*
    std::uint64_t digest = 0;
};

/// Ordered message log of one protocol session. Steps are assigned on
/// append and strictly increase; payloads appear only as digests.
class Transcript {
  public:
    std::uint32_t append(std::string from, std::string to, std::string kind, std::uint64_t digest) {
        const std::uint32_t step = static_cast<std::uint32_t>(entries_.size()) + 1;
        entries_.push_back({step, std::move(from), std::move(to), std::move(kind), digest});
        return step;
    }

    const std::vector<TranscriptEntry>& entries() const { return entries_; }

    std::size_t count_kind(std::string_view kind) const {
        std::size_t n = 0;
        for (const auto& e : entries_)
            if (e.kind == kind) ++n;
        return n;
    }

  private:
    std::vector<TranscriptEntry> entries_;
};

}  // namespace qinterp
