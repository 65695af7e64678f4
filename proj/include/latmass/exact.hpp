#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace latmass {

using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational make_rational(const BigInt& num, const BigInt& den = 1);
BigRational parse_rational(const std::string& s);
std::string to_string(const BigRational& q);   // "num/den", or "num" when den = 1
std::string to_decimal(const BigRational& q, int digits = 15);

// value = coeff * sqrt(surd) * pi^(pi_half_power/2)
class AnalyticScalar {
public:
    AnalyticScalar() : coeff_(0), surd_(1), h_(0) {}
    AnalyticScalar(const BigRational& c) : AnalyticScalar(c, 1, 0) {}
    AnalyticScalar(BigRational c, BigInt surd, long h);

    static AnalyticScalar sqrt_of(const BigRational& q);   // q > 0
    static AnalyticScalar pi_power(long h) { return AnalyticScalar(1, 1, h); }

    const BigRational& coeff() const { return coeff_; }
    const BigInt& surd() const { return surd_; }
    long pi_half_power() const { return h_; }
    bool is_zero() const { return coeff_ == 0; }
    bool is_rational() const { return surd_ == 1 && h_ == 0; }

    AnalyticScalar inverse() const;
    AnalyticScalar pow(long e) const;

    friend AnalyticScalar operator*(const AnalyticScalar& a, const AnalyticScalar& b);
    friend AnalyticScalar operator/(const AnalyticScalar& a, const AnalyticScalar& b) { return a * b.inverse(); }
    AnalyticScalar& operator*=(const AnalyticScalar& o) { return *this = *this * o; }
    AnalyticScalar& operator/=(const AnalyticScalar& o) { return *this = *this / o; }
    friend bool operator==(const AnalyticScalar& a, const AnalyticScalar& b) {
        return a.coeff_ == b.coeff_ && a.surd_ == b.surd_ && a.h_ == b.h_;
    }

    double to_double() const;
    std::string str() const;

private:
    BigRational coeff_;
    BigInt surd_;
    long h_;
};

// d = e^2 * s with s squarefree (sign kept on s); returns {e, s}
std::pair<BigInt, BigInt> square_split(const BigInt& d);
BigInt squarefree_part(const BigInt& d);
bool is_square(const BigInt& d);

BigRational bernoulli(unsigned i);
AnalyticScalar zeta_value(long s);
AnalyticScalar gamma_half(long i);   // Gamma(i/2)
BigInt factorial(unsigned n);
BigInt binomial(long n, long k);

int kronecker_symbol(const BigInt& D, const BigInt& n);

// Kronecker character (D/.) for a fundamental discriminant D, or D = 1.
struct DirichletCharacter {
    BigInt D{1};
    bool trivial() const { return D == 1; }
    BigInt conductor() const { return abs(D); }
    bool even() const { return D > 0; }
    int operator()(const BigInt& n) const { return kronecker_symbol(D, n); }
};

BigInt fundamental_discriminant(const BigInt& N);   // N != 0; 1 when N is a square
DirichletCharacter character_of(const BigInt& N);

BigRational generalized_bernoulli(unsigned m, const DirichletCharacter& chi);
AnalyticScalar l_value(long s, const DirichletCharacter& chi);

}  // namespace latmass
