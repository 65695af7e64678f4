#pragma once

#include "latmass/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latmass {

using RatMatrix = std::vector<std::vector<BigRational>>;

constexpr long kInfinitePlace = 0;   // p = 0 stands for the real place

// Symmetric B with 2B integral and integral diagonal.
class HalfIntegralMatrix {
public:
    HalfIntegralMatrix() = default;
    explicit HalfIntegralMatrix(RatMatrix b);
    static HalfIntegralMatrix from_gram(const std::vector<std::vector<long>>& gram);   // B = G/2, G even
    static HalfIntegralMatrix parse(const std::string& text);                         // "(4)", "[[1,-1/2],[-1/2,1]]", "1 -1/2; -1/2 1"

    std::size_t n() const { return b_.size(); }
    const BigRational& operator()(std::size_t i, std::size_t j) const { return b_[i][j]; }
    const RatMatrix& entries() const { return b_; }
    BigRational det() const;
    RatMatrix inverse() const;
    bool positive_definite() const;
    std::string str() const;

private:
    RatMatrix b_;
};

BigRational determinant(RatMatrix a);
std::vector<BigRational> rational_diagonal(const RatMatrix& a);   // congruent diagonal form, a nonsingular

bool is_prime(long p);
long ord_p(const BigRational& q, long p);   // q != 0
std::vector<long> prime_divisors(const BigInt& n);

// p-adic square-class carrier: p^v * u, u an integer unit residue (mod 8 for p = 2, mod p otherwise).
struct LocalNum {
    long v = 0;
    long u = 1;
};
LocalNum local_num(const BigRational& q, long p);
LocalNum local_mul(LocalNum a, LocalNum b, long p);
int legendre(long a, long p);
long least_nonresidue(long p);

int hilbert_local(LocalNum a, LocalNum b, long p);
int hilbert_symbol(const BigRational& a, const BigRational& b, long p);
int hasse_invariant(const HalfIntegralMatrix& b, long p);   // prod_{i<j} (a_i,a_j)_p
int chi_p(const BigRational& a, long p);
int chi_local(LocalNum a, long p);

struct JordanBlock {
    enum Kind : char { Unit = 'U', H = 'H', Y = 'Y' };
    Kind kind = Unit;
    int e = 0;
    int u = 1;   // unit residue for Unit blocks; 0 otherwise
    int rank() const { return kind == Unit ? 1 : 2; }
    bool operator==(const JordanBlock&) const = default;
};

// Blocks in B-convention (Unit: p^e u; H/Y: 2^e times (0 1/2;1/2 0) or (1 1/2;1/2 1)),
// stored in peel order: highest constituent first.
struct JordanDecomposition {
    long p = 2;
    std::vector<JordanBlock> blocks;
    int rank() const;
    std::string key() const;
    bool operator==(const JordanDecomposition&) const = default;
};

JordanDecomposition jordan_decompose(const HalfIntegralMatrix& b, long p);
JordanDecomposition normalize_jordan(long p, std::vector<JordanBlock> blocks);
JordanDecomposition direct_sum(const JordanDecomposition& a, const JordanDecomposition& b);

constexpr int kMinusInfinity = -(1 << 28);

// Invariants of a list of blocks (suffix of a decomposition).
namespace local {
int rank(const std::vector<JordanBlock>& bl, std::size_t from = 0);
LocalNum det(const std::vector<JordanBlock>& bl, long p, std::size_t from = 0);
int d(const std::vector<JordanBlock>& bl, long p, std::size_t from = 0);
int hasse_le(const std::vector<JordanBlock>& bl, long p, std::size_t from = 0);
int xi(const std::vector<JordanBlock>& bl, long p, std::size_t from = 0);
int eta(const std::vector<JordanBlock>& bl, long p, std::size_t from = 0);
int delta(const std::vector<JordanBlock>& bl, long p, std::size_t from = 0);
int i_index(const std::vector<JordanBlock>& bl, std::size_t from = 0);
}  // namespace local

struct LocalInvariants {
    long p = 2;
    std::optional<int> xi;         // even rank only
    std::optional<int> xi_prime;
    std::optional<int> eta;        // odd rank only
    int delta = 0;
    int d = 0;
    int i = kMinusInfinity;
};

LocalInvariants local_invariants(const HalfIntegralMatrix& b, long p);
int i_p(const HalfIntegralMatrix& b, long p);

}  // namespace latmass
