#include "latmass/siegel.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace latmass {

namespace {

BigRational pw(const BigRational& base, long e) {
    BigRational r = 1, b = e < 0 ? 1 / base : base;
    for (unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e); k; k >>= 1) {
        if (k & 1) r *= b;
        if (k > 1) b *= b;
    }
    return r;
}

BigRational pw2(long e) { return pw(BigRational(2), e); }

BigRational sgn(long e) { return (e % 2) ? BigRational(-1) : BigRational(1); }

void check_denominator(const BigRational& d) {
    if (d == 0) throw std::domain_error("Siegel series recursion hit a zero denominator");
}

using Blocks = std::vector<JordanBlock>;

Blocks prepend(const JordanBlock& b, const Blocks& bl, std::size_t from) {
    Blocks out;
    out.reserve(bl.size() - from + 1);
    out.push_back(b);
    out.insert(out.end(), bl.begin() + static_cast<long>(from), bl.end());
    return out;
}

// One recursion step for the suffix bl[from..]. get(f2, mult) returns F(bl[f2..]; mult*X).
template <class Get>
BigRational step(const Blocks& bl, std::size_t from, long p, const BigRational& X, Get&& get) {
    const JordanBlock& b0 = bl[from];
    const int n = local::rank(bl, from);
    const BigRational P = p;
    const bool pair = p == 2 && b0.kind == JordanBlock::Unit && from + 1 < bl.size() &&
                      bl[from + 1].kind == JordanBlock::Unit && bl[from + 1].e == b0.e;

    if (b0.kind == JordanBlock::Unit && !pair) {
        const std::size_t f2 = from + 1;
        if (b0.e < local::i_index(bl, f2) - 1 + (p == 2 ? 2 : 0))
            throw std::logic_error("one-entry recursion precondition violated");
        const int dl = local::delta(bl, p, from), dlt = local::delta(bl, p, f2);
        BigRational c1, c0;
        if (n % 2 == 0) {
            const int x = local::xi(bl, p, from), xp = 1 + x - x * x;
            const int et = f2 < bl.size() ? local::eta(bl, p, f2) : 1;
            BigRational den = 1 - pw(P, n + 1) * X * X;
            check_denominator(den);
            c1 = (1 - pw(P, n / 2) * x * X) / den;
            c0 = sgn(x + 1) * xp * et * (1 - pw(P, n / 2 + 1) * X * x) * pw(pw(P, n / 2) * X, dl - dlt + x * x) *
                 pw(P, dl / 2) / den;
        } else {
            const int xt = local::xi(bl, p, f2), xtp = 1 + xt - xt * xt;
            const int et = local::eta(bl, p, from);
            BigRational den = 1 - pw(P, (n + 1) / 2) * xt * X;
            check_denominator(den);
            c1 = 1 / den;
            const int ex = 2 * dl - dlt + 2;
            if (ex % 2) throw std::logic_error("odd exponent in one-entry recursion");
            c0 = sgn(xt) * xtp * et * pw(pw(P, (n - 1) / 2) * X, dl - dlt + 2 - xt * xt) * pw(P, ex / 2) / den;
        }
        BigRational r = 0;
        if (c1 != 0) r += c1 * get(f2, p);
        if (c0 != 0) r += c0 * get(f2, 1);
        return r;
    }

    if (p != 2) throw std::logic_error("even block at odd prime");
    const std::size_t f2 = from + (pair ? 2 : 1);
    const int m = b0.e;
    if (m < local::i_index(bl, f2) + 1) throw std::logic_error("rank-2 recursion precondition violated");
    const Blocks bt = prepend({JordanBlock::Unit, m, 1}, bl, f2);
    const int dl = local::delta(bl, 2, from), dlt = local::delta(bt, 2), dlh = local::delta(bl, 2, f2);
    const int dB = local::d(bl, 2, from);
    int sg = 0;
    if (n % 2 == 0) {
        if ((pair && dB % 2) || (!pair && local::xi(bl, 2, f2) == 0)) {
            int t = 2 * dlt - dl - dlh + 2;
            if (t % 2) throw std::logic_error("odd sigma numerator");
            sg = t / 2;
        }
    } else if (!pair && local::d(bt, 2) % 2 == 0) {
        sg = 2;
    }

    std::function<BigRational(const BigRational&)> C11, C10, C21, C20;
    if (n % 2 == 0) {
        const int x = local::xi(bl, 2, from), xp = 1 + x - x * x;
        const int xh = local::xi(bl, 2, f2), xhp = 1 + xh - xh * xh;
        int et = 1;
        if (pair && local::d(bl, 2, f2) % 2 == 0) {
            et = local::eta(prepend({JordanBlock::Unit, m, bl[from + 1].u}, bl, f2), 2);
        } else if (!pair && xh != 0) {
            LocalNum d2 = local::det(bl, 2, f2);
            if (((n - 2) / 2) % 2) d2 = local_mul(d2, {0, 7}, 2);
            et = local::hasse_le(bl, 2, f2) * hilbert_local({m, 1}, d2, 2);
            if ((((n - 1) * (n - 1) - 1) / 8) % 2) et = -et;
        }
        C11 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2(n + 1) * X * X;
            check_denominator(den);
            return (1 - pw2(n / 2) * x * X) / den;
        };
        C10 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2(n + 1) * X * X;
            check_denominator(den);
            return sgn(x + 1) * xp * et * (1 - pw2(n / 2 + 1) * X * x) * pw(pw2(n / 2) * X, dl - dlt + x * x + sg) *
                   pw2(dl / 2) / den;
        };
        C21 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2(n / 2) * xh * X;
            check_denominator(den);
            return 1 / den;
        };
        C20 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2(n / 2) * xh * X;
            check_denominator(den);
            const int ex = 2 * dlt - dlh + 2 - 2 * sg;
            if (ex % 2) throw std::logic_error("odd exponent in rank-2 recursion");
            return sgn(xh) * xhp * et * pw(pw2((n - 2) / 2) * X, dlt - dlh + 2 - xh * xh - sg) * pw2(ex / 2) / den;
        };
    } else {
        const int et = local::eta(bl, 2, from), eh = local::eta(bl, 2, f2);
        const int xt = (!pair && local::d(bt, 2) % 2 == 0) ? 1 : 0;
        C11 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2((n + 1) / 2) * xt * X;
            check_denominator(den);
            return 1 / den;
        };
        C10 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2((n + 1) / 2) * xt * X;
            check_denominator(den);
            const int ex = 2 * dl - dlt + 2 + sg;
            if (ex % 2) throw std::logic_error("odd exponent in rank-2 recursion");
            return sgn(xt) * et * pw(pw2((n - 1) / 2) * X, dl - dlt + 2 - xt * xt + sg) * pw2(ex / 2) / den;
        };
        C21 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2(n) * X * X;
            check_denominator(den);
            return (1 - pw2((n - 1) / 2) * xt * X) / den;
        };
        C20 = [=](const BigRational& X) -> BigRational {
            BigRational den = 1 - pw2(n) * X * X;
            check_denominator(den);
            const int ex = dlt - sg;
            if (ex % 2) throw std::logic_error("odd exponent in rank-2 recursion");
            return sgn(xt + 1) * eh * (1 - pw2((n + 1) / 2) * X * xt) * pw(pw2((n - 1) / 2) * X, dlt - dlh + xt * xt - sg) *
                   pw2(ex / 2) / den;
        };
    }
    const BigRational c11 = C11(X), c10 = C10(X);
    const BigRational c21x = C21(X), c20x = C20(X), c21y = C21(2 * X), c20y = C20(2 * X);
    BigRational r = 0;
    if (c11 != 0 && c21y != 0) r += c11 * c21y * get(f2, 4);
    BigRational mid = c11 * c20y + c10 * c21x;
    if (mid != 0) r += mid * get(f2, 2);
    if (c10 != 0 && c20x != 0) r += c10 * c20x * get(f2, 1);
    return r;
}

std::string suffix_key(const Blocks& bl, std::size_t from, long p) {
    std::string s = std::to_string(p) + ':';
    for (std::size_t i = from; i < bl.size(); ++i) {
        s += static_cast<char>(bl[i].kind);
        s += std::to_string(bl[i].e);
        if (bl[i].kind == JordanBlock::Unit) s += '.' + std::to_string(bl[i].u);
        s += ' ';
    }
    return s;
}

std::shared_mutex g_node_mu;
std::unordered_map<std::string, BigRational> g_nodes;
constexpr std::size_t kNodeCap = 4000000;

int mult_exp(long p, long mult) {
    int e = 0;
    while (mult > 1) {
        mult /= p;
        ++e;
    }
    return e;
}

// F(bl[from..]; p^j)
BigRational node_value(const Blocks& bl, std::size_t from, long p, int j) {
    if (from >= bl.size()) return 1;
    const std::string key = suffix_key(bl, from, p) + '@' + std::to_string(j);
    {
        std::shared_lock lk(g_node_mu);
        auto it = g_nodes.find(key);
        if (it != g_nodes.end()) return it->second;
    }
    BigRational X = pw(BigRational(p), j);
    BigRational v = step(bl, from, p, X, [&](std::size_t f2, long mult) { return node_value(bl, f2, p, j + mult_exp(p, mult)); });
    std::unique_lock lk(g_node_mu);
    if (g_nodes.size() >= kNodeCap) g_nodes.clear();
    g_nodes.emplace(key, v);
    return v;
}

BigRational direct_value(const Blocks& bl, std::size_t from, long p, const BigRational& X) {
    if (from >= bl.size()) return 1;
    return step(bl, from, p, X, [&](std::size_t f2, long mult) { return direct_value(bl, f2, p, X * mult); });
}

}  // namespace

void clear_siegel_cache() {
    std::unique_lock lk(g_node_mu);
    g_nodes.clear();
}

std::size_t siegel_cache_size() {
    std::shared_lock lk(g_node_mu);
    return g_nodes.size();
}

NodeValues f_p_at_nodes(const JordanDecomposition& jd) {
    const int d = local::d(jd.blocks, jd.p);
    NodeValues out;
    for (int j = 0; j <= d; ++j) out.emplace_back(pw(BigRational(jd.p), j), node_value(jd.blocks, 0, jd.p, j));
    return out;
}

NodeValues f_p_at_nodes(const HalfIntegralMatrix& b, long p) { return f_p_at_nodes(jordan_decompose(b, p)); }

std::vector<BigRational> f_p_polynomial(const JordanDecomposition& jd) {
    const NodeValues nv = f_p_at_nodes(jd);
    const std::size_t m = nv.size();
    // Newton divided differences, then expand to monomials
    std::vector<BigRational> c(m);
    for (std::size_t i = 0; i < m; ++i) c[i] = nv[i].second;
    for (std::size_t k = 1; k < m; ++k)
        for (std::size_t i = m - 1; i >= k; --i) {
            c[i] = (c[i] - c[i - 1]) / (nv[i].first - nv[i - k].first);
            if (i == k) break;
        }
    std::vector<BigRational> poly(m, 0);
    for (std::size_t k = m; k-- > 0;) {
        // poly = poly * (X - x_k) + c[k]
        std::vector<BigRational> np(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (poly[i] == 0) continue;
            if (i + 1 < m) np[i + 1] += poly[i];
            np[i] -= poly[i] * nv[k].first;
        }
        np[0] += c[k];
        poly = std::move(np);
    }
    return poly;
}

BigRational f_p_eval(const JordanDecomposition& jd, const BigRational& x) {
    if (jd.blocks.empty()) return 1;
    const NodeValues nv = f_p_at_nodes(jd);
    BigRational s = 0;
    for (std::size_t i = 0; i < nv.size(); ++i) {
        BigRational t = nv[i].second;
        for (std::size_t j = 0; j < nv.size(); ++j)
            if (j != i) t *= (x - nv[j].first) / (nv[i].first - nv[j].first);
        s += t;
    }
    return s;
}

BigRational f_p_eval(const HalfIntegralMatrix& b, long p, const BigRational& x) { return f_p_eval(jordan_decompose(b, p), x); }

BigRational f_p_direct(const JordanDecomposition& jd, const BigRational& x) { return direct_value(jd.blocks, 0, jd.p, x); }

// ---- global assembly ---------------------------------------------------------

SiegelInput siegel_input(const HalfIntegralMatrix& b) {
    SiegelInput in;
    in.n = static_cast<int>(b.n());
    in.det_b = b.n() ? b.det() : BigRational(1);
    in.jordan = [b](long p) { return jordan_decompose(b, p); };
    return in;
}

namespace {
std::mutex g_comp_mu;
std::map<std::tuple<char, int, long>, JordanDecomposition> g_comp_jordan;

JordanDecomposition component_jordan(const Component& c, long p) {
    auto key = std::make_tuple(c.family, c.n, p);
    {
        std::lock_guard lk(g_comp_mu);
        auto it = g_comp_jordan.find(key);
        if (it != g_comp_jordan.end()) return it->second;
    }
    JordanDecomposition jd = jordan_decompose(HalfIntegralMatrix::from_gram(c.cartan()), p);
    std::lock_guard lk(g_comp_mu);
    g_comp_jordan.emplace(key, jd);
    return jd;
}
}  // namespace

SiegelInput siegel_input(const RootSystem& r) {
    if (r.has_z()) throw std::invalid_argument("root system with Z components is not even");
    SiegelInput in;
    in.n = r.rank();
    in.det_b = make_rational(BigInt(static_cast<unsigned long>(r.det())), BigInt(1) << static_cast<unsigned>(r.rank()));
    in.jordan = [r](long p) {
        JordanDecomposition jd{p, {}};
        std::vector<JordanBlock> all;
        for (auto& c : r.components()) {
            auto cj = component_jordan(c, p);
            all.insert(all.end(), cj.blocks.begin(), cj.blocks.end());
        }
        return normalize_jordan(p, std::move(all));
    };
    return in;
}

BigInt discriminant_d(const SiegelInput& in) {
    BigRational D = in.det_b * BigRational(BigInt(1) << static_cast<unsigned>(2 * (in.n / 2)));
    if (D.get_den() != 1) throw std::logic_error("D(B) is not integral");
    return D.get_num();
}

AnalyticScalar siegel_series_b(const SiegelInput& in, long k) {
    const int n = in.n;
    if (2 * k < n) throw std::domain_error("siegel_series_b: weight too small for rank");
    if (in.det_b == 0) throw std::domain_error("siegel_series_b: singular matrix");
    AnalyticScalar b = zeta_value(k).inverse();
    for (int i = 1; i <= n / 2; ++i) b /= zeta_value(2 * k - 2 * i);
    const BigInt D = discriminant_d(in);
    BigRational fprod = 1;
    if (n > 0) {
        for (long p : prime_divisors(D)) {
            JordanDecomposition jd = in.jordan(p);
            fprod *= f_p_eval(jd, pw(BigRational(p), -k));
        }
    }
    b *= AnalyticScalar(fprod);
    if (n % 2 == 0) {
        BigInt N = (n / 2) % 2 ? BigInt(-D) : D;
        b *= l_value(k - n / 2, character_of(N));
    }
    return b;
}

AnalyticScalar siegel_series_b(const HalfIntegralMatrix& b, long k) { return siegel_series_b(siegel_input(b), k); }

BigRational eisenstein_coefficient(const SiegelInput& in, long k) {
    const long n = in.n;
    if (2 * k < n) throw std::domain_error("eisenstein_coefficient: weight too small for rank");
    if ((n * k) % 2) throw std::domain_error("eisenstein_coefficient: nk must be even");
    if (in.det_b <= 0) throw std::domain_error("eisenstein_coefficient: det B must be positive");
    AnalyticScalar b = siegel_series_b(in, k);
    if (b.is_zero()) return 0;
    AnalyticScalar c(sgn(n * k / 2));
    const long twoexp2 = 2 * n * k - n * (n - 1);   // twice the power of 2
    c *= AnalyticScalar(pw2(twoexp2 / 2));
    const long q = 2 * k - n - 1;
    if (q % 2 == 0) {
        c *= AnalyticScalar(pw(in.det_b, q / 2));
    } else {
        c *= AnalyticScalar(pw(in.det_b, (q - 1) / 2));
        c *= AnalyticScalar::sqrt_of(in.det_b);
    }
    c *= b;
    for (long i = 2 * k - n + 1; i <= 2 * k; ++i) c *= AnalyticScalar::pi_power(i) / gamma_half(i);
    if (!c.is_rational()) throw PurityError("Eisenstein coefficient is not rational: " + c.str());
    return c.coeff();
}

BigRational eisenstein_coefficient(const HalfIntegralMatrix& b, long k) { return eisenstein_coefficient(siegel_input(b), k); }

BigRational a_average(const SiegelInput& in, int dim) {
    if (dim <= 0 || dim % 8) throw std::domain_error("a_average: dimension must be a positive multiple of 8");
    if (in.n > dim) throw std::domain_error("a_average: rank exceeds dimension");
    if (in.n == 0) return 1;
    BigRational c = eisenstein_coefficient(in, dim / 2);
    if (in.n == dim - 1 || (in.n == dim && in.n > 1)) c /= 2;
    return c;
}

BigRational a_average(const HalfIntegralMatrix& b, int dim) {
    if (!b.positive_definite()) throw std::domain_error("a_average: matrix is not positive definite");
    return a_average(siegel_input(b), dim);
}

BigRational a_average(const RootSystem& r, int dim) { return a_average(siegel_input(r), dim); }

}  // namespace latmass
