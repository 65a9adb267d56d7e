#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qinterp/secret_sharing.hpp"
#include "qinterp/serialization.hpp"

using namespace qinterp;

TEST_CASE("field and element round trips", "[serialization]") {
    Field f9(3, 2);
    const Json j = field_to_json(f9);
    CHECK(j.at("p") == 3);
    CHECK(j.at("r") == 2);
    CHECK(j.at("modulus") == Json({1, 0, 1}));  // default x^2+1 over Z_3
    CHECK(field_from_json(j) == f9);

    CHECK(element_to_json(f9, 5) == Json({2, 1}));
}

TEST_CASE("polynomial round trip", "[serialization]") {
    Field f4(2, 2);
    Polynomial poly = Polynomial::random(f4, MonomialBasis(2, 2, true), 99);
    const Json j = polynomial_to_json(poly);
    CHECK(j.at("n") == 2);
    CHECK(j.at("d") == 2);
    CHECK(j.at("include_constant") == true);
    CHECK(j.at("coeffs").size() == poly.basis().size());
    CHECK(polynomial_from_json(j) == poly);
}

TEST_CASE("adversary structure round trip and ordering", "[serialization]") {
    AdversaryStructure a = AdversaryStructure::from_subsets(3, {{3}, {}, {1, 2}, {1}});
    const Json j = adversary_to_json(a);
    CHECK(j.dump() == "[[],[1],[3],[1,2]]");  // by size, then lexicographic
    CHECK(adversary_from_json(3, j) == a);
    CHECK_THROWS_AS(adversary_from_json(3, Json::parse("{\"not\":\"array\"}")), std::invalid_argument);
    CHECK_THROWS_AS(adversary_from_json(1, Json::parse("[[2]]")), std::invalid_argument);
}

TEST_CASE("transcript json lines", "[serialization]") {
    Transcript t;
    t.append("dealer", "player1", msg::kQuery, 17);
    t.append("player1", "recipient", msg::kShare, 99);
    std::ostringstream os;
    transcript_to_jsonl(t, os);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == R"({"step":1,"from":"dealer","to":"player1","kind":"query","digest":17})");
    REQUIRE(std::getline(is, line));
    CHECK(Json::parse(line).at("kind") == "share");
    CHECK_FALSE(std::getline(is, line));
}

TEST_CASE("transversal cache round trip", "[serialization]") {
    ProtocolParams params(Field(3), MonomialBasis(1, 1, true));
    const TransversalTable table = build_image(params);
    const Json j = transversal_to_json(params, table);
    const TransversalTable loaded = transversal_from_json(params, j);
    CHECK(loaded.image == table.image);
    CHECK(loaded.preimage == table.preimage);
    CHECK(loaded.domain_size == table.domain_size);
    CHECK(loaded.codomain_size == table.codomain_size);

    // a different parameter set must refuse the cached table
    ProtocolParams other(Field(5), MonomialBasis(1, 1, true));
    CHECK_THROWS_AS(transversal_from_json(other, j), std::invalid_argument);
}
