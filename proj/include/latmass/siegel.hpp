#pragma once

#include "latmass/exact.hpp"
#include "latmass/padic.hpp"
#include "latmass/roots.hpp"

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace latmass {

using NodeValues = std::vector<std::pair<BigRational, BigRational>>;   // (X = p^j, F_p(B; X))

NodeValues f_p_at_nodes(const JordanDecomposition& jd);
NodeValues f_p_at_nodes(const HalfIntegralMatrix& b, long p);
BigRational f_p_eval(const JordanDecomposition& jd, const BigRational& x);
BigRational f_p_eval(const HalfIntegralMatrix& b, long p, const BigRational& x);

// Direct recursion at an arbitrary X, no interpolation and no memo; throws std::domain_error
// when a denominator vanishes.
BigRational f_p_direct(const JordanDecomposition& jd, const BigRational& x);

// Coefficients of F_p(B;X) in increasing degree (length d_p(B) + 1).
std::vector<BigRational> f_p_polynomial(const JordanDecomposition& jd);

void clear_siegel_cache();
std::size_t siegel_cache_size();

// Everything the global factorization needs: rank, det B and Jordan forms at each p.
struct SiegelInput {
    int n = 0;
    BigRational det_b = 1;
    std::function<JordanDecomposition(long)> jordan;
};

SiegelInput siegel_input(const HalfIntegralMatrix& b);
SiegelInput siegel_input(const RootSystem& r);   // B = Gram/2, Jordan forms assembled per component

BigInt discriminant_d(const SiegelInput& in);   // D(B) = 2^(2 floor(n/2)) det B

AnalyticScalar siegel_series_b(const SiegelInput& in, long k);
AnalyticScalar siegel_series_b(const HalfIntegralMatrix& b, long k);

// Throws PurityError when surds or powers of pi survive.
struct PurityError : std::logic_error {
    using std::logic_error::logic_error;
};
BigRational eisenstein_coefficient(const SiegelInput& in, long k);
BigRational eisenstein_coefficient(const HalfIntegralMatrix& b, long k);

BigRational a_average(const SiegelInput& in, int dim);
BigRational a_average(const HalfIntegralMatrix& b, int dim);
BigRational a_average(const RootSystem& r, int dim);

}  // namespace latmass
