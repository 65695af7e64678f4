#include "latmass/exact.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace latmass {

BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    BigRational q(num, den);
    q.canonicalize();
    return q;
}

BigRational parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty rational");
    auto slash = t.find('/');
    try {
        if (slash == std::string::npos) return BigRational(BigInt(t));
        return make_rational(BigInt(t.substr(0, slash)), BigInt(t.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

std::string to_string(const BigRational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal(const BigRational& q, int digits) {
    if (q == 0) return "0";
    mpf_class f(q, 512);
    char buf[128];
    gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
    return buf;
}

// ---- square-free bookkeeping ------------------------------------------------

std::pair<BigInt, BigInt> square_split(const BigInt& d) {
    if (d == 0) throw std::domain_error("square_split(0)");
    BigInt n = abs(d), e = 1, s = d < 0 ? -1 : 1;
    for (unsigned long p = 2; p < 2000000 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
        unsigned k = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) { n /= p; ++k; }
        for (unsigned i = 0; i < k / 2; ++i) e *= p;
        if (k % 2) s *= p;
    }
    if (n > 1) {
        if (mpz_perfect_square_p(n.get_mpz_t())) {
            BigInt r;
            mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
            e *= r;
        } else {
            s *= n;
        }
    }
    return {e, s};
}

BigInt squarefree_part(const BigInt& d) { return square_split(d).second; }

bool is_square(const BigInt& d) { return d >= 0 && mpz_perfect_square_p(d.get_mpz_t()); }

// ---- AnalyticScalar ---------------------------------------------------------

AnalyticScalar::AnalyticScalar(BigRational c, BigInt surd, long h)
    : coeff_(std::move(c)), surd_(std::move(surd)), h_(h) {
    coeff_.canonicalize();
    if (surd_ <= 0) throw std::domain_error("surd must be positive");
    if (coeff_ == 0) {
        surd_ = 1;
        h_ = 0;
        return;
    }
    if (surd_ != 1) {
        auto [e, s] = square_split(surd_);
        coeff_ *= e;
        surd_ = s;
    }
}

AnalyticScalar AnalyticScalar::sqrt_of(const BigRational& q) {
    if (q <= 0) throw std::domain_error("sqrt_of non-positive");
    // sqrt(a/b) = sqrt(ab)/b
    BigInt ab = q.get_num() * q.get_den();
    return AnalyticScalar(make_rational(1, q.get_den()), ab, 0);
}

AnalyticScalar operator*(const AnalyticScalar& a, const AnalyticScalar& b) {
    if (a.is_zero() || b.is_zero()) return AnalyticScalar();
    BigInt g = gcd(a.surd_, b.surd_);
    // sqrt(d1 d2) = g sqrt(d1/g * d2/g) and the cofactors are coprime squarefree
    BigRational c = a.coeff_ * b.coeff_ * g;
    BigInt s = (a.surd_ / g) * (b.surd_ / g);
    AnalyticScalar r;
    r.coeff_ = c;
    r.surd_ = s;
    r.h_ = a.h_ + b.h_;
    return r;
}

AnalyticScalar AnalyticScalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    AnalyticScalar r;
    r.coeff_ = 1 / (coeff_ * surd_);
    r.surd_ = surd_;
    r.h_ = -h_;
    return r;
}

AnalyticScalar AnalyticScalar::pow(long e) const {
    AnalyticScalar base = e < 0 ? inverse() : *this, r(1);
    for (unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e); k; k >>= 1) {
        if (k & 1) r *= base;
        if (k > 1) base *= base;
    }
    return r;
}

double AnalyticScalar::to_double() const {
    return coeff_.get_d() * std::sqrt(surd_.get_d()) * std::pow(M_PI, h_ / 2.0);
}

std::string AnalyticScalar::str() const {
    std::string s = to_string(coeff_);
    if (surd_ != 1) s += "*sqrt(" + surd_.get_str() + ")";
    if (h_ != 0) {
        s += "*pi";
        if (h_ % 2 == 0) {
            if (h_ != 2) s += "^" + std::to_string(h_ / 2);
        } else {
            s += "^(" + std::to_string(h_) + "/2)";
        }
    }
    return s;
}

// ---- special values ----------------------------------------------------------

BigInt factorial(unsigned n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

namespace {
std::shared_mutex g_bern_mu;
std::vector<BigRational> g_bern{BigRational(1)};
}  // namespace

BigRational bernoulli(unsigned i) {
    {
        std::shared_lock lk(g_bern_mu);
        if (i < g_bern.size()) return g_bern[i];
    }
    std::unique_lock lk(g_bern_mu);
    while (g_bern.size() <= i) {
        unsigned m = static_cast<unsigned>(g_bern.size());
        BigRational s = 0;
        for (unsigned j = 0; j < m; ++j) s += BigRational(binomial(m + 1, j)) * g_bern[j];
        g_bern.push_back(-s / (m + 1));
    }
    return g_bern[i];
}

AnalyticScalar zeta_value(long s) {
    if (s < 0 || s % 2) throw std::domain_error("zeta_value needs even s >= 0");
    if (s == 0) return AnalyticScalar(BigRational(-1, 2));
    long m = s / 2;
    BigInt two_pow = BigInt(1) << static_cast<unsigned>(s);
    BigRational c = bernoulli(static_cast<unsigned>(s)) * BigRational(two_pow) /
                    BigRational(2 * factorial(static_cast<unsigned>(s)));
    if (m % 2 == 0) c = -c;
    return AnalyticScalar(c, 1, 2 * s);
}

AnalyticScalar gamma_half(long i) {
    if (i < 1) throw std::domain_error("gamma_half needs i >= 1");
    if (i % 2 == 0) return AnalyticScalar(BigRational(factorial(static_cast<unsigned>(i / 2 - 1))));
    unsigned m = static_cast<unsigned>((i - 1) / 2);
    BigRational c = make_rational(factorial(2 * m), (BigInt(1) << (2 * m)) * factorial(m));
    return AnalyticScalar(c, 1, 1);
}

int kronecker_symbol(const BigInt& D, const BigInt& n) { return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t()); }

BigInt fundamental_discriminant(const BigInt& N) {
    if (N == 0) throw std::domain_error("fundamental_discriminant(0)");
    BigInt f = squarefree_part(N);
    BigInt r = f % 4;
    if (r < 0) r += 4;
    return r == 1 ? f : 4 * f;
}

DirichletCharacter character_of(const BigInt& N) { return DirichletCharacter{fundamental_discriminant(N)}; }

namespace {
std::mutex g_gb_mu;
std::map<std::pair<std::string, unsigned>, BigRational> g_gb;
}  // namespace

BigRational generalized_bernoulli(unsigned m, const DirichletCharacter& chi) {
    if (m < 1) throw std::domain_error("generalized_bernoulli needs m >= 1");
    auto key = std::make_pair(chi.D.get_str(), m);
    {
        std::lock_guard lk(g_gb_mu);
        auto it = g_gb.find(key);
        if (it != g_gb.end()) return it->second;
    }
    // f^{m-1} sum_a chi(a) B_m(a/f) = sum_j C(m,j) B_j f^{j-1} T_j,  T_j = sum_a chi(a) a^{m-j}
    BigInt f = chi.conductor();
    unsigned long fu = f.get_ui();
    std::vector<BigInt> T(m + 1, 0);
    BigInt a_pow;
    for (unsigned long a = 1; a <= fu; ++a) {
        int c = chi(BigInt(a));
        if (!c) continue;
        a_pow = 1;
        // powers a^0..a^m land in T[m], T[m-1], ..., T[0]
        for (unsigned e = 0; e <= m; ++e) {
            if (c > 0) T[m - e] += a_pow;
            else T[m - e] -= a_pow;
            a_pow *= a;
        }
    }
    BigRational s = 0;
    for (unsigned j = 0; j <= m; ++j) {
        if (T[j] == 0) continue;
        BigRational b = bernoulli(j) * BigRational(binomial(m, j) * T[j]);
        if (j == 0) b /= f;
        else {
            BigInt fp;
            mpz_pow_ui(fp.get_mpz_t(), f.get_mpz_t(), j - 1);
            b *= fp;
        }
        s += b;
    }
    std::lock_guard lk(g_gb_mu);
    g_gb.emplace(key, s);
    return s;
}

AnalyticScalar l_value(long s, const DirichletCharacter& chi) {
    if (s < 0) throw std::domain_error("l_value needs s >= 0");
    if (chi.trivial()) return zeta_value(s);
    if (s == 0) return AnalyticScalar(-generalized_bernoulli(1, chi));
    long a = chi.even() ? 0 : 1;
    if ((s - a) % 2) throw std::logic_error("l_value parity mismatch");
    BigInt f = chi.conductor();
    BigInt fs;
    mpz_pow_ui(fs.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(s));
    BigRational c = generalized_bernoulli(static_cast<unsigned>(s), chi) * BigRational(BigInt(1) << static_cast<unsigned>(s)) /
                    BigRational(2 * fs * factorial(static_cast<unsigned>(s)));
    if (((s - a) / 2) % 2 == 0) c = -c;
    return AnalyticScalar(c, f, 2 * s);
}

}  // namespace latmass
