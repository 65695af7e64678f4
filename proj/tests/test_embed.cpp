#include "latmass/embed.hpp"

#include <doctest.h>

using namespace latmass;

namespace {

BigInt rc(const char* s, const char* t) { return rep_count(RootSystem::parse(s), RootSystem::parse(t)); }
Component comp(const char* s) { return RootSystem::parse(s).components().front(); }

}  // namespace

TEST_CASE("irreducible table entries") {
    const auto& a1e8 = emb_irreducible(comp("A1"), comp("E8"));
    REQUIRE(a1e8.size() == 1);
    CHECK(a1e8[0].count == 240);
    CHECK(a1e8[0].complement.str() == "E7");

    const auto& a3d7 = emb_irreducible(comp("A3"), comp("D7"));
    REQUIRE(a3d7.size() == 2);
    CHECK(a3d7[0].count == 8 * binomial(7, 4) * 48);
    CHECK(a3d7[0].complement.str() == "A3");
    CHECK(a3d7[1].count == binomial(7, 3) * 48);
    CHECK(a3d7[1].complement.str() == "D4");

    CHECK(emb_irreducible(comp("E8"), comp("A5")).empty());
    CHECK(emb_irreducible(comp("D5"), comp("A7")).empty());
    const auto& a7e8 = emb_irreducible(comp("A7"), comp("E8"));
    CHECK(a7e8.size() == 2);
}

TEST_CASE("representation counts") {
    CHECK(rc("0", "A3 E8") == 1);
    CHECK(rc("A1^2", "E8") == 30240);
    CHECK(rc("A1", "D4") == 24);
    CHECK(rc("A2", "A2") == 12);
    CHECK(rc("D4", "A4") == 0);
    CHECK(rc("A1", "E8^2") == 480);
    CHECK(rc("E8", "E8^2") == 2 * BigInt(696729600));
    CHECK(rc("A2", "E8") == 13440);
}

TEST_CASE("automorphism orders are self counts") {
    for (const auto& r : enumerate_root_systems(8)) {
        CAPTURE(r.str());
        CHECK(rep_count(r, r) == r.aut_order());
    }
}

TEST_CASE("cheap pruning agrees with the rank and determinant conditions") {
    CHECK_FALSE(may_embed(RootSystem::parse("A3"), RootSystem::parse("A1^2")));
    CHECK_FALSE(may_embed(RootSystem::parse("A1^4"), RootSystem::parse("A4")));
    CHECK(may_embed(RootSystem::parse("A1^4"), RootSystem::parse("D4")));
    CHECK_FALSE(may_embed(RootSystem::parse("E6"), RootSystem::parse("A8")));
}

TEST_CASE("bounded memo") {
    EmbeddingCounter small(4);
    EmbeddingCounter big;
    for (const char* t : {"E8", "D8", "A4^2", "E7 A1", "D4^2"})
        for (const char* s : {"A1^3", "A2 A1", "A3", "D4", "A1^4"}) {
            CAPTURE(s);
            CAPTURE(t);
            CHECK(small.count(RootSystem::parse(s), RootSystem::parse(t)) == big.count(RootSystem::parse(s), RootSystem::parse(t)));
        }
    CHECK(small.size() <= 4);
    CHECK(small.evictions() > 0);
    big.clear();
    CHECK(big.size() == 0);
}
