#include "latmass/roots.hpp"
#include "latmass/padic.hpp"

#include <doctest.h>

#include <map>

using namespace latmass;

TEST_CASE("parsing and canonical strings") {
    const RootSystem r = RootSystem::parse("A1^2 D4");
    CHECK(r.rank() == 6);
    CHECK(r.str() == "A1^2 D4");
    CHECK(RootSystem::parse("").empty());
    CHECK(RootSystem::parse("0").empty());
    CHECK(RootSystem().str() == "0");
    CHECK(RootSystem::parse("E8 E8") == RootSystem::parse("E8^2"));
    CHECK(RootSystem::parse("D4 A1 A1") == r);
    CHECK(RootSystem::parse("Z^2 A1").z_count() == 2);
    CHECK_THROWS(RootSystem::parse("D3"));
    CHECK_THROWS(RootSystem::parse("E9"));
    CHECK_THROWS(RootSystem::parse("A0"));
    CHECK_THROWS(RootSystem::parse("B2"));
    CHECK_THROWS(RootSystem::parse("A1^"));
}

TEST_CASE("orders and counts") {
    CHECK(RootSystem::parse("E8").weyl_order() == 696729600);
    CHECK(RootSystem::parse("E6").weyl_order() == 51840);
    CHECK(RootSystem::parse("E7").weyl_order() == 2903040);
    CHECK(RootSystem::parse("D5").weyl_order() == 1920);
    CHECK(RootSystem::parse("A3").weyl_order() == 24);
    CHECK(RootSystem::parse("D5").root_count() == 40);
    CHECK(RootSystem::parse("A4").root_count() == 20);
    CHECK(RootSystem::parse("E6").root_count() == 72);
    CHECK(RootSystem::parse("E7").root_count() == 126);
    CHECK(RootSystem::parse("A1^2").aut_order() == 8);
    CHECK(RootSystem::parse("A1").aut_order() == 2);
    CHECK(RootSystem::parse("A2").aut_order() == 12);
    CHECK(RootSystem::parse("D4").aut_order() == 1152);
    CHECK(RootSystem::parse("D5").aut_order() == 3840);
    CHECK(RootSystem::parse("E6").aut_order() == 103680);
    CHECK(RootSystem::parse("E7").aut_order() == 2903040);
    CHECK(RootSystem::parse("E8^3").aut_order() == BigInt(696729600) * 696729600 * 696729600 * 6);
    CHECK(RootSystem::parse("A3 D5 E6").det() == 48);
    CHECK(RootSystem::parse("E8").det() == 1);
}

TEST_CASE("gram matrices have the right determinant") {
    for (const char* s : {"A5", "D6", "E6", "E7", "E8", "A2 D4"}) {
        const RootSystem r = RootSystem::parse(s);
        const auto g = r.gram();
        RatMatrix m(g.size(), std::vector<BigRational>(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) m[i][j] = g[i][j];
        CHECK(determinant(m) == BigRational(static_cast<unsigned long>(r.det())));
    }
}

TEST_CASE("small enumeration") {
    const auto two = enumerate_root_systems(2);
    REQUIRE(two.size() == 4);
    CHECK(two[0].empty());
    CHECK(two[1].str() == "A1");
    CHECK(two[2].str() == "A1^2");
    CHECK(two[3].str() == "A2");
}

namespace {

// coefficient extraction from prod over component types of 1/(1 - x^rank)
std::vector<unsigned long long> generating_counts(int max_rank) {
    std::vector<unsigned long long> c(max_rank + 1, 0);
    c[0] = 1;
    std::vector<int> ranks;
    for (int n = 1; n <= max_rank; ++n) ranks.push_back(n);
    for (int n = 4; n <= max_rank; ++n) ranks.push_back(n);
    for (int n : {6, 7, 8})
        if (n <= max_rank) ranks.push_back(n);
    for (int r : ranks)
        for (int k = r; k <= max_rank; ++k) c[k] += c[k - r];
    return c;
}

}  // namespace

TEST_CASE("enumeration counts match the generating function") {
    const auto gf = generating_counts(24);
    const auto all = enumerate_root_systems(24);
    std::map<int, unsigned long long> by_rank;
    for (const auto& r : all) by_rank[r.rank()]++;
    unsigned long long total = 0;
    for (int k = 0; k <= 24; ++k) {
        CHECK(by_rank[k] == gf[k]);
        total += gf[k];
    }
    CHECK(all.size() == total);
}

TEST_CASE("enumeration order and round trip") {
    const auto all = enumerate_root_systems(16);
    for (std::size_t i = 1; i < all.size(); ++i) {
        CHECK(all[i - 1].rank() <= all[i].rank());
        if (all[i - 1].rank() == all[i].rank()) CHECK(all[i - 1].det() >= all[i].det());
    }
    for (const auto& r : all) CHECK(RootSystem::parse(r.str()) == r);
}

TEST_CASE("rank 32 counts") {
    unsigned long long total = 0;
    for (auto c : generating_counts(32)) total += c;
    CHECK(total == 405844);
    CHECK(enumerate_root_systems(32).size() == 405844);
    CHECK(enumerate_root_systems(32, 32, EnumerationFilters{}).size() == 135443);
}

TEST_CASE("congruence filter") {
    CHECK(borcherds_filter(RootSystem::parse("E8"), 32));
    CHECK_FALSE(borcherds_filter(RootSystem::parse("E7"), 32));
    CHECK(borcherds_filter(RootSystem::parse("D9"), 32));
    CHECK(borcherds_filter(RootSystem::parse("E7"), 24));
}
