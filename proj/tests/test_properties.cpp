#include "latmass/embed.hpp"
#include "latmass/mass.hpp"
#include "latmass/padic.hpp"
#include "latmass/siegel.hpp"

#include <doctest.h>

#include <random>

using namespace latmass;

namespace {

std::mt19937_64 rng(20240601);

long rnd(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Random symmetric half-integral matrix, not necessarily definite; nonsingular.
HalfIntegralMatrix random_half_integral(std::size_t n) {
    for (;;) {
        RatMatrix b(n, std::vector<BigRational>(n));
        for (std::size_t i = 0; i < n; ++i) {
            b[i][i] = rnd(-30, 30);
            for (std::size_t j = 0; j < i; ++j) {
                b[i][j] = BigRational(rnd(-20, 20), 2);
                b[i][j].canonicalize();
                b[j][i] = b[i][j];
            }
        }
        if (determinant(b) != 0) return HalfIntegralMatrix(b);
    }
}

// Random positive definite half-integral matrix: M^T B0 M with B0 a halved root lattice Gram.
HalfIntegralMatrix random_definite(std::size_t n) {
    static const std::vector<std::vector<RootSystem>> by_rank = [] {
        std::vector<std::vector<RootSystem>> out(7);
        for (const auto& r : enumerate_root_systems(6))
            if (!r.empty()) out[static_cast<std::size_t>(r.rank())].push_back(r);
        return out;
    }();
    const auto& pool = by_rank.at(n);
    for (;;) {
        const RootSystem r = pool[static_cast<std::size_t>(rnd(0, static_cast<long>(pool.size()) - 1))];
        const auto g = r.gram();
        std::vector<std::vector<long>> m(n, std::vector<long>(n));
        for (auto& row : m)
            for (auto& x : row) x = rnd(-2, 2);
        std::vector<std::vector<long>> out(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) out[i][j] += m[a][i] * g[a][b] * m[b][j];
        RatMatrix q(n, std::vector<BigRational>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) q[i][j] = out[i][j];
        if (determinant(q) == 0) continue;
        return HalfIntegralMatrix::from_gram(out);
    }
}

HalfIntegralMatrix from_blocks(const JordanDecomposition& jd) {
    const std::size_t n = static_cast<std::size_t>(jd.rank());
    RatMatrix b(n, std::vector<BigRational>(n, 0));
    std::size_t at = 0;
    for (const auto& blk : jd.blocks) {
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(jd.p), static_cast<unsigned long>(blk.e));
        if (blk.kind == JordanBlock::Unit) {
            b[at][at] = BigRational(scale * blk.u);
            at += 1;
            continue;
        }
        const BigRational d = blk.kind == JordanBlock::H ? 0 : 1;
        b[at][at] = b[at + 1][at + 1] = d * BigRational(scale);
        b[at][at + 1] = b[at + 1][at] = BigRational(scale) / 2;
        at += 2;
    }
    return HalfIntegralMatrix(b);
}

bool same_square_class(const BigRational& a, const BigRational& b, long p) {
    const LocalNum q = local_num(a / b, p);
    if (q.v % 2) return false;
    return p == 2 ? q.u % 8 == 1 : legendre(q.u, p) == 1;
}

BigRational random_rational() {
    BigRational q(rnd(-50, 50), rnd(1, 40));
    q.canonicalize();
    return q;
}

BigRational random_nonzero() {
    for (;;) {
        BigRational q(rnd(-300, 300), rnd(1, 60));
        q.canonicalize();
        if (q != 0) return q;
    }
}

BigInt shuffled_count(RootSystem source, const RootSystem& target) {
    if (source.empty()) return 1;
    const auto& sc = source.components();
    const Component s = sc[rnd(0, sc.size() - 1)];
    const RootSystem rest = source.minus_one(s);
    BigInt total = 0;
    for (const auto& t : target.components())
        for (const auto& o : emb_irreducible(s, t)) total += o.count * shuffled_count(rest, target.minus_one(t).plus(o.complement));
    return total;
}

}  // namespace

TEST_CASE("jordan round trip preserves local invariants") {
    for (long p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t n = static_cast<std::size_t>(rnd(1, 5));
            const HalfIntegralMatrix b = trial % 2 ? random_half_integral(n) : random_definite(n);
            const JordanDecomposition jd = jordan_decompose(b, p);
            const HalfIntegralMatrix r = from_blocks(jd);
            CAPTURE(p);
            CAPTURE(b.str());
            CAPTURE(jd.key());
            REQUIRE(r.n() == b.n());
            CHECK(same_square_class(r.det(), b.det(), p));
            CHECK(hasse_invariant(r, p) == hasse_invariant(b, p));
            CHECK(local_invariants(r, p).d == local_invariants(b, p).d);
            CHECK(local::d(jd.blocks, p) == local_invariants(b, p).d);
        }
    }
}

TEST_CASE("hilbert symbol is bilinear and satisfies the product formula") {
    for (int trial = 0; trial < 300; ++trial) {
        const BigRational a = random_nonzero(), b = random_nonzero(), c = random_nonzero();
        for (long p : {2, 3, 5, 7, 11, 13}) CHECK(hilbert_symbol(a, b * c, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a, c, p));
        std::vector<long> places{kInfinitePlace, 2};
        for (const BigInt& x : {a.get_num(), a.get_den(), b.get_num(), b.get_den()})
            for (long p : prime_divisors(abs(x))) places.push_back(p);
        std::sort(places.begin(), places.end());
        places.erase(std::unique(places.begin(), places.end()), places.end());
        int prod = 1;
        for (long p : places) prod *= hilbert_symbol(a, b, p);
        CAPTURE(to_string(a));
        CAPTURE(to_string(b));
        CHECK(prod == 1);
    }
}

TEST_CASE("xi prime relation and character consistency") {
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(2 * rnd(1, 3));
        const HalfIntegralMatrix b = random_definite(n);
        const SiegelInput in = siegel_input(b);
        const BigInt D = discriminant_d(in);
        const BigInt signedD = (n / 2) % 2 ? BigInt(-D) : D;
        const DirichletCharacter chi = character_of(signedD);
        for (long p : {2, 3, 5, 7, 11, 13}) {
            const LocalInvariants li = local_invariants(b, p);
            REQUIRE(li.xi);
            CHECK(*li.xi_prime == 1 + *li.xi - *li.xi * *li.xi);
            if (D % p != 0) CHECK(*li.xi == chi(p));
        }
    }
}

TEST_CASE("local polynomials: trivial off the discriminant, constant term one, interpolation matches recursion") {
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rnd(1, 5));
        const HalfIntegralMatrix b = random_definite(n);
        const BigInt D = discriminant_d(siegel_input(b));
        CAPTURE(b.str());
        for (long p : {2, 3, 5, 7, 11}) {
            const JordanDecomposition jd = jordan_decompose(b, p);
            CAPTURE(p);
            CHECK(f_p_eval(jd, 0) == 1);
            const auto poly = f_p_polynomial(jd);
            CHECK(poly.front() == 1);
            CHECK(static_cast<int>(poly.size()) - 1 <= local::d(jd.blocks, p));
            if (D % p != 0) {
                CHECK(poly.size() == 1);
                CHECK(f_p_eval(jd, random_rational()) == 1);
                continue;
            }
            int compared = 0;
            for (int k = 0; k < 20; ++k) {
                const BigRational x = random_rational();
                BigRational direct;
                try {
                    direct = f_p_direct(jd, x);
                } catch (const std::domain_error&) {
                    continue;
                }
                ++compared;
                CHECK(f_p_eval(jd, x) == direct);
            }
            CHECK(compared > 0);
        }
    }
}

TEST_CASE("rep_count does not depend on the peeling order") {
    const auto sources = enumerate_root_systems(6);
    const char* targets[] = {"E8", "D8", "A4^2", "E7 A1", "D4^2", "E6 A2", "A8", "D6 A1^2", "D10", "E8 A2"};
    for (const char* t : targets) {
        const RootSystem tg = RootSystem::parse(t);
        for (const auto& s : sources) {
            if (s.rank() > tg.rank()) continue;
            CAPTURE(s.str());
            CAPTURE(t);
            CHECK(shuffled_count(s, tg) == rep_count(s, tg));
        }
    }
}

TEST_CASE("enumeration order triangularizes the representation matrix") {
    const auto all = enumerate_root_systems(8);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(rep_count(all[i], all[j]) == 0);
}

TEST_CASE("purity holds on the rank <= 16 corpus") {
    const auto all = enumerate_root_systems(16, 16, EnumerationFilters{});
    std::size_t ok = 0;
    for (const auto& r : all) {
        CAPTURE(r.str());
        CHECK_NOTHROW(a_average(r, 16));
        ++ok;
    }
    CHECK(ok == all.size());
}
