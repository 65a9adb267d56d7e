#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "qinterp/adversary.hpp"
#include "qinterp/polynomial.hpp"

using namespace qinterp;

namespace {

std::vector<AdversaryStructure> all_downward_closed(std::uint32_t players) {
    std::vector<AdversaryStructure> out;
    const std::uint32_t subset_count = 1u << players;
    for (std::uint64_t family = 0; family < (1ull << subset_count); ++family) {
        std::vector<std::uint32_t> masks;
        for (std::uint32_t m = 0; m < subset_count; ++m)
            if (family & (1ull << m)) masks.push_back(m);
        AdversaryStructure a = AdversaryStructure::from_masks(players, std::move(masks));
        if (is_downward_closed(a)) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST_CASE("construction and subset listing", "[adversary]") {
    AdversaryStructure a = AdversaryStructure::from_subsets(3, {{2, 1}, {}, {3}});
    CHECK(a.num_players == 3);
    CHECK(a.contains(0));
    CHECK(a.contains(0b011));
    CHECK(a.contains(0b100));
    CHECK_FALSE(a.contains(0b010));
    CHECK(a.subsets() == std::vector<std::vector<std::uint32_t>>{{}, {3}, {1, 2}});

    CHECK_THROWS_AS(AdversaryStructure::from_subsets(2, {{3}}), std::invalid_argument);
    CHECK_THROWS_AS(AdversaryStructure::from_subsets(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(AdversaryStructure::from_subsets(21, {}), std::invalid_argument);
}

TEST_CASE("downward closure predicate", "[adversary]") {
    CHECK(is_downward_closed(AdversaryStructure::from_subsets(2, {{}, {1}})));
    CHECK_FALSE(is_downward_closed(AdversaryStructure::from_subsets(2, {{1}})));  // missing {}
    CHECK_FALSE(is_downward_closed(AdversaryStructure::from_subsets(3, {{}, {1}, {1, 2}})));
    CHECK(is_downward_closed(AdversaryStructure::from_subsets(3, {{}, {1}, {2}, {1, 2}})));
}

TEST_CASE("q2 and duality on worked structures", "[adversary]") {
    // P = {1,2}, A = {{}, {1}}: dual equals A, so both predicates hold
    AdversaryStructure a = AdversaryStructure::from_subsets(2, {{}, {1}});
    CHECK(dual(a) == a);
    CHECK(is_q2(a));
    CHECK(is_q2_star(a));
    CHECK(is_self_dual(a));

    // all subsets of size <= 2 over three players: {1} and {2,3} collide
    AdversaryStructure b = threshold_structure(3, 2);
    CHECK_FALSE(is_q2(b));

    // A = {{}}: vacuously Q2 (the full set is not a member)
    AdversaryStructure c = AdversaryStructure::from_subsets(2, {{}});
    CHECK(is_q2(c));

    // predicates refuse families that are not adversary structures
    AdversaryStructure bad = AdversaryStructure::from_subsets(2, {{1}});
    CHECK_THROWS_AS(is_q2(bad), std::invalid_argument);
    CHECK_THROWS_AS(is_q2_star(bad), std::invalid_argument);
}

TEST_CASE("threshold structures", "[adversary]") {
    AdversaryStructure one_of_two = threshold_structure(2, 1);
    CHECK(one_of_two.subsets() == std::vector<std::vector<std::uint32_t>>{{}, {1}, {2}});

    for (std::uint32_t players = 2; players <= 6; ++players)
        for (std::uint32_t t = 0; t < players; ++t) {
            std::uint64_t expected = 0;
            for (std::uint32_t j = 0; j <= t; ++j) expected += binomial_checked(players, j);
            CHECK(threshold_structure(players, t).sets.size() == expected);
        }

    CHECK(is_q2(threshold_structure(3, 1)));  // singleton complements are pairs
    CHECK_THROWS_AS(threshold_structure(3, 3), std::invalid_argument);
}

TEST_CASE("threshold self-duality survey", "[adversary]") {
    // The (k, k-1) arrangement is NOT self-dual at k = 2: {1} and {2} are
    // complementary, so Q2 already fails (its dual {{}} is fine).
    AdversaryStructure two = threshold_structure(2, 1);
    CHECK_FALSE(is_q2(two));
    CHECK(is_q2(dual(two)));
    CHECK_FALSE(is_self_dual(two));

    // (3, 1) is self-dual: the dual is again the size-<=-1 family.
    AdversaryStructure three = threshold_structure(3, 1);
    CHECK(dual(three) == three);
    CHECK(is_self_dual(three));
}

TEST_CASE("dual is an involution on downward-closed families", "[adversary]") {
    for (std::uint32_t players = 1; players <= 3; ++players) {
        const auto families = all_downward_closed(players);
        CHECK(families.size() >= 2);
        for (const auto& a : families) CHECK(dual(dual(a)) == a);
    }
    CHECK_THROWS_AS(dual(threshold_structure(13, 1)), std::length_error);
}
