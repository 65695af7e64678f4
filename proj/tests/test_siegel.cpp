#include "latmass/embed.hpp"
#include "latmass/siegel.hpp"

#include <doctest.h>

using namespace latmass;

namespace {

BigInt sigma(unsigned long m, unsigned long k) {
    BigInt s = 0;
    for (unsigned long d = 1; d <= m; ++d)
        if (m % d == 0) {
            BigInt t;
            mpz_ui_pow_ui(t.get_mpz_t(), d, k);
            s += t;
        }
    return s;
}

HalfIntegralMatrix scalar(long m) { return HalfIntegralMatrix::parse("(" + std::to_string(m) + ")"); }

std::vector<BigRational> poly(const HalfIntegralMatrix& b, long p) { return f_p_polynomial(jordan_decompose(b, p)); }

}  // namespace

TEST_CASE("local polynomials of scalars at 2") {
    CHECK(poly(scalar(1), 2) == std::vector<BigRational>{1});
    CHECK(poly(scalar(2), 2) == std::vector<BigRational>{1, 2});
    CHECK(poly(scalar(4), 2) == std::vector<BigRational>{1, 2, 4});
    CHECK(f_p_eval(scalar(2), 2, BigRational(1, 16)) == BigRational(9, 8));
    CHECK(f_p_eval(scalar(4), 2, BigRational(1, 16)) == BigRational(73, 64));
    const auto nodes = f_p_at_nodes(scalar(4), 2);
    REQUIRE(nodes.size() == 3);
    CHECK(nodes[2].first == 4);
    CHECK(nodes[2].second == 1 + 8 + 64);
}

TEST_CASE("siegel series values") {
    const AnalyticScalar b1 = siegel_series_b(scalar(1), 4);
    CHECK(b1 == AnalyticScalar(BigRational(90), 1, -8));
    CHECK(siegel_series_b(scalar(2), 4) == AnalyticScalar(BigRational(90) * BigRational(9, 8), 1, -8));
    const auto e8 = HalfIntegralMatrix::from_gram(RootSystem::parse("E8").gram());
    const long k = 8;
    AnalyticScalar expect = (zeta_value(k) * zeta_value(2 * k - 2) * zeta_value(2 * k - 4) * zeta_value(2 * k - 6) * zeta_value(2 * k - 8)).inverse() * zeta_value(k - 4);
    CHECK(siegel_series_b(e8, k) == expect);
}

TEST_CASE("weight 4 Eisenstein coefficients") {
    for (long m = 1; m <= 20; ++m) {
        CAPTURE(m);
        CHECK(eisenstein_coefficient(scalar(m), 4) == 240 * sigma(m, 3));
        CHECK(a_average(scalar(m), 8) == 240 * sigma(m, 3));
    }
}

TEST_CASE("weight 12 Eisenstein coefficients") {
    for (long m = 1; m <= 5; ++m) {
        CAPTURE(m);
        CHECK(a_average(scalar(m), 24) == BigRational(65520, 691) * BigRational(sigma(m, 11)));
    }
}

TEST_CASE("root system coefficients") {
    CHECK(a_average(RootSystem::parse("A1"), 8) == 240);
    CHECK(a_average(RootSystem::parse("A2"), 8) == 13440);
    CHECK(a_average(RootSystem::parse("A1"), 24) == BigRational(65520, 691));
    CHECK(a_average(RootSystem(), 32) == 1);
    CHECK(a_average(RootSystem::parse("E8"), 8) == RootSystem::parse("E8").aut_order());
}

TEST_CASE("root-system and full-matrix paths agree") {
    for (const char* s : {"A1", "A2", "A1^2", "D4", "A3 A1", "E7 A1", "D8", "A4^2", "A2^4", "E6 A2"}) {
        CAPTURE(s);
        const RootSystem r = RootSystem::parse(s);
        const auto b = HalfIntegralMatrix::from_gram(r.gram());
        CHECK(a_average(r, 16) == a_average(b, 16));
    }
}

TEST_CASE("dim 8 genus: analytic average equals combinatorial count") {
    for (const auto& r : enumerate_root_systems(8)) {
        CAPTURE(r.str());
        CHECK(a_average(r, 8) == BigRational(rep_count(r, RootSystem::parse("E8"))));
    }
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS(a_average(HalfIntegralMatrix::parse("0 1/2; 1/2 0"), 8));
    CHECK_THROWS(a_average(RootSystem::parse("A9"), 8));
    CHECK_THROWS(siegel_input(RootSystem::parse("Z A1")));
}
