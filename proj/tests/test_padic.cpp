#include "latmass/padic.hpp"
#include "latmass/roots.hpp"

#include <doctest.h>

using namespace latmass;

namespace {

HalfIntegralMatrix halved(const char* r) { return HalfIntegralMatrix::from_gram(RootSystem::parse(r).gram()); }

}  // namespace

TEST_CASE("matrix validation and parsing") {
    CHECK(HalfIntegralMatrix::parse("(4)").n() == 1);
    const auto a2 = HalfIntegralMatrix::parse("[[1,-1/2],[-1/2,1]]");
    CHECK(a2.det() == BigRational(3, 4));
    CHECK(HalfIntegralMatrix::parse("1 -1/2; -1/2 1").det() == a2.det());
    CHECK(halved("A2").det() == a2.det());
    CHECK_THROWS(HalfIntegralMatrix::parse("1/2"));
    CHECK_THROWS(HalfIntegralMatrix::parse("1 1/4; 1/4 1"));
    CHECK_THROWS(HalfIntegralMatrix::parse("1 2 3"));
    CHECK_THROWS(HalfIntegralMatrix::from_gram({{3}}));
    CHECK(a2.positive_definite());
    CHECK_FALSE(HalfIntegralMatrix::parse("0 1/2; 1/2 0").positive_definite());
}

TEST_CASE("jordan decomposition examples") {
    auto one = jordan_decompose(HalfIntegralMatrix::parse("(1)"), 3);
    REQUIRE(one.blocks.size() == 1);
    CHECK(one.blocks[0] == JordanBlock{JordanBlock::Unit, 0, 1});

    auto a2 = jordan_decompose(halved("A2"), 3);
    REQUIRE(a2.blocks.size() == 2);
    CHECK(a2.blocks[0] == JordanBlock{JordanBlock::Unit, 1, 1});
    CHECK(a2.blocks[1] == JordanBlock{JordanBlock::Unit, 0, 1});

    auto e8 = jordan_decompose(halved("E8"), 2);
    REQUIRE(e8.blocks.size() == 4);
    for (const auto& b : e8.blocks) CHECK(b == JordanBlock{JordanBlock::H, 0, 0});

    auto e6 = jordan_decompose(halved("E6"), 2);
    CHECK(e6.rank() == 6);
    CHECK(local::d(e6.blocks, 2) == 0);

    CHECK_THROWS(jordan_decompose(halved("A2"), 4));
    CHECK_THROWS(jordan_decompose(HalfIntegralMatrix::parse("1 1; 1 1"), 3));
}

TEST_CASE("hilbert symbol") {
    CHECK(hilbert_symbol(2, 3, 5) == 1);
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(3, 2, 3) == -1);
    CHECK(hilbert_symbol(-1, -1, kInfinitePlace) == -1);
    CHECK(hilbert_symbol(5, 7, 2) == 1);
    CHECK(hilbert_symbol(BigRational(1, 3), 2, 3) == -1);
    CHECK_THROWS(hilbert_symbol(0, 1, 3));
}

TEST_CASE("hasse invariant") {
    CHECK(hasse_invariant(HalfIntegralMatrix::parse("1 0 0; 0 1 0; 0 0 1"), 2) == 1);
    CHECK(hasse_invariant(halved("A2"), 3) == 1);
    for (long p : {2, 3, 5, 7}) CHECK(hasse_invariant(halved("E8"), p) == 1);
}

TEST_CASE("chi_p") {
    CHECK(chi_p(1, 2) == 1);
    CHECK(chi_p(1, 7) == 1);
    CHECK(chi_p(3, 3) == 0);
    CHECK(chi_p(5, 2) == -1);
    CHECK(chi_p(2, 3) == -1);
}

TEST_CASE("local invariants") {
    const auto d13 = local_invariants(HalfIntegralMatrix::parse("1 0; 0 3"), 3);
    CHECK(d13.i == 1);
    CHECK(d13.d == 1);
    REQUIRE(d13.xi);
    CHECK(*d13.xi == 0);
    CHECK(*d13.xi_prime == 1);
    CHECK_FALSE(d13.eta);

    // H^{-1} = (0 2; 2 0); 2^{-2} H^{-1} is still half-integral, so the least exponent is -2.
    CHECK(i_p(HalfIntegralMatrix::parse("0 1/2; 1/2 0"), 2) == -2);

    const auto odd = local_invariants(HalfIntegralMatrix::parse("(2)"), 2);
    CHECK(odd.eta);
    CHECK_FALSE(odd.xi);

    std::vector<JordanBlock> none;
    CHECK(local::xi(none, 5) == 1);
    CHECK(local::rank(none) == 0);
}

TEST_CASE("unramified primes give one unimodular scale") {
    const auto b = halved("A4");   // det 5/16
    for (long p : {3, 7, 11}) {
        const auto jd = jordan_decompose(b, p);
        CHECK(local_invariants(b, p).d == 0);
        for (const auto& blk : jd.blocks) CHECK(blk.e == 0);
    }
}
