#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinterp {

/// Family of player subsets, stored as sorted unique bitmasks over a player
/// set {1..num_players}. An adversary structure proper is downward-closed;
/// construction accepts any family so the predicate itself can be queried.
struct AdversaryStructure {
    static constexpr std::uint32_t kMaxPlayersPredicates = 20;
    static constexpr std::uint32_t kMaxPlayersDual = 12;

    std::uint32_t num_players = 0;
    std::vector<std::uint32_t> sets;  // sorted ascending, unique

    static AdversaryStructure from_masks(std::uint32_t players, std::vector<std::uint32_t> masks) {
        if (players < 1 || players > kMaxPlayersPredicates)
            throw std::invalid_argument("AdversaryStructure: player count out of supported range");
        const std::uint32_t full = (1u << players) - 1;
        for (auto m : masks)
            if ((m & ~full) != 0)
                throw std::invalid_argument("AdversaryStructure: subset references unknown player");
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        return AdversaryStructure{players, std::move(masks)};
    }

    /// Subsets given as lists of 1-based player indices.
    static AdversaryStructure from_subsets(std::uint32_t players,
                                           const std::vector<std::vector<std::uint32_t>>& subsets) {
        std::vector<std::uint32_t> masks;
        masks.reserve(subsets.size());
        for (const auto& subset : subsets) {
            std::uint32_t mask = 0;
            for (auto player : subset) {
                if (player < 1 || player > players)
                    throw std::invalid_argument("AdversaryStructure: player index out of range");
                mask |= 1u << (player - 1);
            }
            masks.push_back(mask);
        }
        return from_masks(players, std::move(masks));
    }

    bool contains(std::uint32_t mask) const {
        return std::binary_search(sets.begin(), sets.end(), mask);
    }

    std::uint32_t full_mask() const { return (1u << num_players) - 1; }

    /// Subsets as sorted 1-based index lists, ordered by (size, lexicographic).
    std::vector<std::vector<std::uint32_t>> subsets() const {
        std::vector<std::vector<std::uint32_t>> out;
        out.reserve(sets.size());
        for (auto mask : sets) {
            std::vector<std::uint32_t> subset;
            for (std::uint32_t player = 1; player <= num_players; ++player)
                if (mask & (1u << (player - 1))) subset.push_back(player);
            out.push_back(std::move(subset));
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        return out;
    }

    bool operator==(const AdversaryStructure& other) const {
        return num_players == other.num_players && sets == other.sets;
    }
};

/// Closed under taking subsets. Checked via single-element removals.
inline bool is_downward_closed(const AdversaryStructure& a) {
    for (auto mask : a.sets)
        for (std::uint32_t bit = 0; bit < a.num_players; ++bit)
            if ((mask & (1u << bit)) && !a.contains(mask & ~(1u << bit))) return false;
    return true;
}

namespace detail {

inline void require_downward_closed(const AdversaryStructure& a, const char* predicate) {
    if (!is_downward_closed(a))
        throw std::invalid_argument(std::string(predicate) + ": structure is not downward-closed");
}

}  // namespace detail

/// Q2: no two sets of the structure are complementary to each other.
inline bool is_q2(const AdversaryStructure& a) {
    detail::require_downward_closed(a, "is_q2");
    for (auto mask : a.sets)
        if (a.contains(a.full_mask() & ~mask)) return false;
    return true;
}

/// Dual structure {B : complement(B) not in A}; exhaustive over 2^players.
inline AdversaryStructure dual(const AdversaryStructure& a) {
    if (a.num_players > AdversaryStructure::kMaxPlayersDual)
        throw std::length_error("dual: player count exceeds the exhaustive-enumeration bound");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t b = 0; b <= a.full_mask(); ++b)
        if (!a.contains(a.full_mask() & ~b)) masks.push_back(b);
    return AdversaryStructure{a.num_players, std::move(masks)};
}

inline bool is_q2_star(const AdversaryStructure& a) {
    detail::require_downward_closed(a, "is_q2_star");
    return is_q2(dual(a));
}

/// Self-dual in the access-structure sense: both Q2 and Q2*.
inline bool is_self_dual(const AdversaryStructure& a) { return is_q2(a) && is_q2_star(a); }

/// Threshold structure: every coalition of at most t players is tolerable.
inline AdversaryStructure threshold_structure(std::uint32_t players, std::uint32_t t) {
    if (players < 1 || players > AdversaryStructure::kMaxPlayersPredicates)
        throw std::invalid_argument("threshold_structure: player count out of supported range");
    if (t >= players) throw std::invalid_argument("threshold_structure: need t < player count");
    std::vector<std::uint32_t> masks;
    const std::uint32_t full = (1u << players) - 1;
    for (std::uint32_t mask = 0; mask <= full; ++mask)
        if (static_cast<std::uint32_t>(std::popcount(mask)) <= t) masks.push_back(mask);
    return AdversaryStructure{players, std::move(masks)};
}

}  // namespace qinterp
