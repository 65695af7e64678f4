#include "latmass/padic.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace latmass {

// ---- matrices ----------------------------------------------------------------

HalfIntegralMatrix::HalfIntegralMatrix(RatMatrix b) : b_(std::move(b)) {
    const std::size_t n = b_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (b_[i].size() != n) throw std::invalid_argument("matrix is not square");
        for (auto& x : b_[i]) x.canonicalize();
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (b_[i][i].get_den() != 1) throw std::invalid_argument("diagonal of B must be integral");
        for (std::size_t j = 0; j < n; ++j) {
            if (b_[i][j] != b_[j][i]) throw std::invalid_argument("matrix is not symmetric");
            BigRational t = 2 * b_[i][j];
            if (t.get_den() != 1) throw std::invalid_argument("2B must be integral");
        }
    }
}

HalfIntegralMatrix HalfIntegralMatrix::from_gram(const std::vector<std::vector<long>>& g) {
    RatMatrix b(g.size(), std::vector<BigRational>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].size() != g.size()) throw std::invalid_argument("Gram matrix is not square");
        if (g[i][i] % 2) throw std::invalid_argument("Gram matrix has an odd diagonal entry");
        for (std::size_t j = 0; j < g.size(); ++j) b[i][j] = BigRational(g[i][j], 2);
    }
    return HalfIntegralMatrix(std::move(b));
}

HalfIntegralMatrix HalfIntegralMatrix::parse(const std::string& text) {
    static const std::regex num(R"(-?\d+(?:/\d+)?)");
    std::vector<BigRational> xs;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it)
        xs.push_back(parse_rational(it->str()));
    std::size_t n = 0;
    while (n * n < xs.size()) ++n;
    if (n * n != xs.size()) throw std::invalid_argument("matrix entry count is not a square");
    RatMatrix b(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = xs[i * n + j];
    return HalfIntegralMatrix(std::move(b));
}

BigRational determinant(RatMatrix a) {
    const std::size_t n = a.size();
    BigRational d = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            d = -d;
        }
        d *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            BigRational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return d;
}

BigRational HalfIntegralMatrix::det() const { return determinant(b_); }

RatMatrix HalfIntegralMatrix::inverse() const {
    const std::size_t n = b_.size();
    RatMatrix a = b_, inv(n, std::vector<BigRational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        std::swap(a[piv], a[k]);
        std::swap(inv[piv], inv[k]);
        BigRational s = 1 / a[k][k];
        for (std::size_t j = 0; j < n; ++j) {
            a[k][j] *= s;
            inv[k][j] *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            BigRational f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[k][j];
                inv[i][j] -= f * inv[k][j];
            }
        }
    }
    return inv;
}

bool HalfIntegralMatrix::positive_definite() const {
    RatMatrix a = b_;
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] <= 0) return false;
        for (std::size_t i = k + 1; i < n; ++i) {
            BigRational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return true;
}

std::string HalfIntegralMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < n(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < n(); ++j) os << (j ? "," : "") << to_string(b_[i][j]);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::vector<BigRational> rational_diagonal(const RatMatrix& in) {
    RatMatrix a = in;
    const std::size_t n = a.size();
    std::vector<BigRational> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                std::swap(a[j], a[k]);
                for (auto& row : a) std::swap(row[j], row[k]);
            } else {
                j = k + 1;
                while (j < n && a[k][j] == 0) ++j;
                if (j == n) throw std::domain_error("singular matrix");
                // e_k <- e_k + e_j
                a[k][k] += 2 * a[k][j] + a[j][j];
                for (std::size_t t = 0; t < n; ++t)
                    if (t != k) {
                        a[k][t] += a[j][t];
                        a[t][k] = a[k][t];
                    }
            }
        }
        out.push_back(a[k][k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            BigRational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            a[i][k] = 0;
        }
        for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
    }
    return out;
}

// ---- primes, valuations, symbols -------------------------------------------------

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

namespace {
long ord_int(BigInt n, long p) {
    long o = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        n /= p;
        ++o;
    }
    return o;
}
long mod_pos(const BigInt& x, long m) {
    long r = static_cast<long>(mpz_fdiv_ui(x.get_mpz_t(), static_cast<unsigned long>(m)));
    return r;
}
long inv_mod(long a, long m) {
    BigInt r;
    BigInt aa = a, mm = m;
    if (!mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t())) throw std::domain_error("not invertible");
    return r.get_si();
}
}  // namespace

long ord_p(const BigRational& q, long p) {
    if (q == 0) throw std::domain_error("ord_p(0)");
    return ord_int(q.get_num(), p) - ord_int(q.get_den(), p);
}

std::vector<long> prime_divisors(const BigInt& n0) {
    BigInt n = abs(n0);
    std::vector<long> ps;
    for (long p = 2; p < 1000000 && BigInt(p) * p <= n; p += (p == 2 ? 1 : 2)) {
        if (!mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        ps.push_back(p);
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) n /= p;
    }
    if (n > 1) {
        if (!n.fits_slong_p() || !mpz_probab_prime_p(n.get_mpz_t(), 30)) throw std::domain_error("prime_divisors: cofactor too large to factor");
        ps.push_back(n.get_si());
    }
    return ps;
}

LocalNum local_num(const BigRational& q, long p) {
    if (q == 0) throw std::domain_error("local_num(0)");
    BigInt num = q.get_num(), den = q.get_den();
    long v = 0;
    while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
        den /= p;
        --v;
    }
    long m = p == 2 ? 8 : p;
    long u = mod_pos(num, m) * inv_mod(mod_pos(den, m), m) % m;
    return {v, u};
}

LocalNum local_mul(LocalNum a, LocalNum b, long p) {
    long m = p == 2 ? 8 : p;
    return {a.v + b.v, (a.u * b.u) % m};
}

int legendre(long a, long p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) return 0;
    return mpz_legendre(BigInt(a).get_mpz_t(), BigInt(p).get_mpz_t());
}

long least_nonresidue(long p) {
    for (long a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw std::domain_error("no non-residue");
}

int hilbert_local(LocalNum a, LocalNum b, long p) {
    if (p == 2) {
        auto eps = [](long x) { return ((x - 1) / 2) % 2; };
        auto om = [](long x) { return ((x * x - 1) / 8) % 2; };
        long e = eps(a.u) * eps(b.u) + (a.v & 1) * om(b.u) + (b.v & 1) * om(a.u);
        return (e & 1) ? -1 : 1;
    }
    int s = ((a.v & 1) && (b.v & 1) && ((p - 1) / 2) % 2) ? -1 : 1;
    if (b.v & 1) s *= legendre(a.u, p);
    if (a.v & 1) s *= legendre(b.u, p);
    return s;
}

int hilbert_symbol(const BigRational& a, const BigRational& b, long p) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol of zero");
    if (p == kInfinitePlace) return (a < 0 && b < 0) ? -1 : 1;
    if (!is_prime(p)) throw std::invalid_argument("hilbert_symbol: p must be prime");
    return hilbert_local(local_num(a, p), local_num(b, p), p);
}

int hasse_invariant(const HalfIntegralMatrix& b, long p) {
    if (b.n() == 0) return 1;
    if (b.det() == 0) throw std::domain_error("hasse_invariant of singular matrix");
    auto a = rational_diagonal(b.entries());
    int h = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) h *= hilbert_symbol(a[i], a[j], p);
    return h;
}

int chi_local(LocalNum a, long p) {
    if (a.v & 1) return 0;
    if (p == 2) return a.u == 1 ? 1 : (a.u == 5 ? -1 : 0);
    return legendre(a.u, p);
}

int chi_p(const BigRational& a, long p) { return chi_local(local_num(a, p), p); }

// ---- Jordan decomposition -------------------------------------------------------

int JordanDecomposition::rank() const { return local::rank(blocks); }

std::string JordanDecomposition::key() const {
    std::string s = std::to_string(p) + ':';
    for (auto& b : blocks) {
        s += static_cast<char>(b.kind);
        s += std::to_string(b.e);
        if (b.kind == JordanBlock::Unit) s += '.' + std::to_string(b.u);
        s += ' ';
    }
    return s;
}

JordanDecomposition normalize_jordan(long p, std::vector<JordanBlock> blocks) {
    JordanDecomposition out{p, {}};
    if (p != 2) {
        long eps = least_nonresidue(p);
        std::map<int, std::vector<int>, std::greater<>> by;
        for (auto& b : blocks) by[b.e].push_back(b.u);
        for (auto& [e, us] : by) {
            int s = 1;
            for (int u : us) s *= legendre(u, p);
            for (std::size_t i = 0; i + 1 < us.size(); ++i) out.blocks.push_back({JordanBlock::Unit, e, 1});
            out.blocks.push_back({JordanBlock::Unit, e, s == 1 ? 1 : static_cast<int>(eps)});
        }
        return out;
    }
    std::map<int, std::vector<int>> units;
    std::map<int, std::pair<int, int>> ks;   // e -> (#H, #Y)
    for (auto& b : blocks) {
        if (b.kind == JordanBlock::Unit) units[b.e].push_back(((b.u % 8) + 8) % 8);
        else if (b.kind == JordanBlock::H) ks[b.e].first++;
        else ks[b.e].second++;
    }
    // three odd units at one scale: a+b+c = t + 2K
    for (bool changed = true; changed;) {
        changed = false;
        for (auto& [e, us] : units) {
            if (us.size() <= 2) continue;
            int a = us[0], b = us[1], c = us[2];
            int s = (a * b + b * c + c * a) % 8;
            int t = static_cast<int>(a * b * c * inv_mod(s, 8) % 8);
            us.erase(us.begin(), us.begin() + 3);
            us.insert(us.begin(), t);
            if (s == 7) ks[e + 1].first++;
            else ks[e + 1].second++;
            changed = true;
        }
    }
    struct Item {
        int key, kindflag;
        JordanBlock b;
    };
    std::vector<Item> items;
    std::map<int, int> scales;
    for (auto& [e, us] : units) scales[e] = 1;
    for (auto& [e, k] : ks) scales[e] = 1;
    for (auto& [e, one] : scales) {
        auto us = units.count(e) ? units[e] : std::vector<int>{};
        std::sort(us.begin(), us.end());
        auto [nh, ny] = ks.count(e) ? ks[e] : std::pair<int, int>{0, 0};
        nh += 2 * (ny / 2);
        ny %= 2;
        for (int u : us) items.push_back({e, 0, {JordanBlock::Unit, e, u}});
        for (int i = 0; i < nh; ++i) items.push_back({e - 1, 1, {JordanBlock::H, e, 0}});
        for (int i = 0; i < ny; ++i) items.push_back({e - 1, 2, {JordanBlock::Y, e, 0}});
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.key != y.key) return x.key > y.key;
        return x.kindflag < y.kindflag;
    });
    for (auto& it : items) out.blocks.push_back(it.b);
    return out;
}

JordanDecomposition direct_sum(const JordanDecomposition& a, const JordanDecomposition& b) {
    if (a.p != b.p) throw std::invalid_argument("direct_sum: prime mismatch");
    auto bl = a.blocks;
    bl.insert(bl.end(), b.blocks.begin(), b.blocks.end());
    return normalize_jordan(a.p, std::move(bl));
}

JordanDecomposition jordan_decompose(const HalfIntegralMatrix& bm, long p) {
    if (!is_prime(p)) throw std::invalid_argument("jordan_decompose: p must be prime");
    const std::size_t n = bm.n();
    if (n && bm.det() == 0) throw std::domain_error("jordan_decompose: singular matrix");
    RatMatrix a(n, std::vector<BigRational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = 2 * bm(i, j);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<JordanBlock> blocks;
    while (!idx.empty()) {
        long best_o = 0;
        int best_kind = 2;
        std::size_t ba = 0, bb = 0;
        for (std::size_t x = 0; x < idx.size(); ++x)
            for (std::size_t y = x; y < idx.size(); ++y) {
                const auto& v = a[idx[x]][idx[y]];
                if (v == 0) continue;
                long o = ord_p(v, p);
                int kind = x == y ? 0 : 1;
                if (best_kind == 2 || o < best_o || (o == best_o && kind < best_kind)) {
                    best_o = o;
                    best_kind = kind;
                    ba = idx[x];
                    bb = idx[y];
                }
            }
        if (best_kind == 2) throw std::domain_error("jordan_decompose: singular matrix");
        if (best_kind == 1 && p != 2) {
            // e_a <- e_a + e_b makes the diagonal reach the minimal valuation
            a[ba][ba] += 2 * a[ba][bb] + a[bb][bb];
            for (auto t : idx)
                if (t != ba) {
                    a[ba][t] += a[bb][t];
                    a[t][ba] = a[ba][t];
                }
            continue;
        }
        if (best_kind == 0) {
            std::vector<std::size_t> rest;
            for (auto t : idx)
                if (t != ba) rest.push_back(t);
            for (auto s : rest) {
                if (a[s][ba] == 0) continue;
                BigRational f = a[s][ba] / a[ba][ba];
                for (auto t : rest) a[s][t] -= f * a[ba][t];
            }
            LocalNum ln = local_num(a[ba][ba] / 2, p);
            blocks.push_back({JordanBlock::Unit, static_cast<int>(ln.v), static_cast<int>(ln.u)});
            idx = std::move(rest);
        } else {
            const BigRational m00 = a[ba][ba], m01 = a[ba][bb], m11 = a[bb][bb];
            BigRational dt = m00 * m11 - m01 * m01;
            BigRational i00 = m11 / dt, i01 = -m01 / dt, i11 = m00 / dt;
            std::vector<std::size_t> rest;
            for (auto t : idx)
                if (t != ba && t != bb) rest.push_back(t);
            for (auto s : rest) {
                BigRational f0 = a[s][ba] * i00 + a[s][bb] * i01;
                BigRational f1 = a[s][ba] * i01 + a[s][bb] * i11;
                if (f0 == 0 && f1 == 0) continue;
                for (auto t : rest) a[s][t] -= f0 * a[ba][t] + f1 * a[bb][t];
            }
            BigRational scaled = dt;
            for (long k = 0; k < best_o; ++k) scaled /= 4;
            LocalNum ln = local_num(scaled, 2);
            if (ln.v != 0) throw std::logic_error("jordan_decompose: bad 2-adic block");
            blocks.push_back({ln.u == 7 ? JordanBlock::H : JordanBlock::Y, static_cast<int>(best_o), 0});
            idx = std::move(rest);
        }
    }
    return normalize_jordan(p, std::move(blocks));
}

// ---- invariants of block lists -----------------------------------------------------

namespace local {

int rank(const std::vector<JordanBlock>& bl, std::size_t from) {
    int r = 0;
    for (std::size_t i = from; i < bl.size(); ++i) r += bl[i].rank();
    return r;
}

LocalNum det(const std::vector<JordanBlock>& bl, long p, std::size_t from) {
    LocalNum d{0, 1};
    for (std::size_t i = from; i < bl.size(); ++i) {
        const auto& b = bl[i];
        LocalNum x;
        if (b.kind == JordanBlock::Unit) x = {b.e, b.u};
        else x = {2L * b.e - 2, b.kind == JordanBlock::H ? 7L : 3L};
        d = local_mul(d, x, p);
    }
    return d;
}

int d(const std::vector<JordanBlock>& bl, long p, std::size_t from) {
    int n = rank(bl, from);
    if (n == 0) return 0;
    return static_cast<int>(det(bl, p, from).v) + (p == 2 ? 2 * (n / 2) : 0);
}

int hasse_le(const std::vector<JordanBlock>& bl, long p, std::size_t from) {
    std::vector<LocalNum> a;
    for (std::size_t i = from; i < bl.size(); ++i) {
        const auto& b = bl[i];
        if (b.kind == JordanBlock::Unit) a.push_back({b.e, b.u});
        else {
            a.push_back({b.e, 1});
            a.push_back({b.e, b.kind == JordanBlock::H ? 7L : 3L});
        }
    }
    int h = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i; j < a.size(); ++j) h *= hilbert_local(a[i], a[j], p);
    return h;
}

namespace {
LocalNum minus_one(long p) { return {0, p == 2 ? 7L : p - 1}; }
}

int xi(const std::vector<JordanBlock>& bl, long p, std::size_t from) {
    int n = rank(bl, from);
    if (n == 0) return 1;
    if (n % 2) throw std::logic_error("xi requested for odd rank");
    LocalNum x = det(bl, p, from);
    if ((n / 2) % 2) x = local_mul(x, minus_one(p), p);
    return chi_local(x, p);
}

int eta(const std::vector<JordanBlock>& bl, long p, std::size_t from) {
    int n = rank(bl, from);
    if (n % 2 == 0) throw std::logic_error("eta requested for even rank");
    LocalNum dt = det(bl, p, from);
    LocalNum sd = ((n - 1) / 2) % 2 ? local_mul(dt, minus_one(p), p) : dt;
    int r = hasse_le(bl, p, from) * hilbert_local(dt, sd, p);
    if (p == 2 && ((n * n - 1) / 8) % 2) r = -r;
    return r;
}

int delta(const std::vector<JordanBlock>& bl, long p, std::size_t from) {
    int n = rank(bl, from);
    if (n == 0) return 0;
    int dd = d(bl, p, from);
    if (n % 2) return dd;
    int t = dd + 1 - (p == 2 ? 1 : 0);
    return 2 * (t >= 0 ? t / 2 : -((-t + 1) / 2));
}

int i_index(const std::vector<JordanBlock>& bl, std::size_t from) {
    int t = kMinusInfinity;
    for (std::size_t i = from; i < bl.size(); ++i)
        t = std::max(t, bl[i].kind == JordanBlock::Unit ? bl[i].e : bl[i].e - 2);
    return t;
}

}  // namespace local

int i_p(const HalfIntegralMatrix& b, long p) {
    if (b.n() == 0) return kMinusInfinity;
    auto inv = b.inverse();
    long t = kMinusInfinity;
    for (std::size_t i = 0; i < b.n(); ++i)
        for (std::size_t j = 0; j < b.n(); ++j) {
            if (inv[i][j] == 0) continue;
            long o = ord_p(inv[i][j], p);
            long need = (i == j || p != 2) ? -o : -1 - o;
            t = std::max(t, need);
        }
    return static_cast<int>(t);
}

LocalInvariants local_invariants(const HalfIntegralMatrix& b, long p) {
    LocalInvariants li;
    li.p = p;
    const long n = static_cast<long>(b.n());
    if (n == 0) {
        li.xi = 1;
        li.xi_prime = 1;
        return li;
    }
    BigRational dt = b.det();
    if (dt == 0) throw std::domain_error("local_invariants of singular matrix");
    BigRational D = dt;
    if (p == 2) D *= BigRational(BigInt(1) << static_cast<unsigned>(2 * (n / 2)));
    li.d = static_cast<int>(ord_p(D, p));
    if (n % 2 == 0) {
        int x = chi_p((n / 2) % 2 ? -dt : dt, p);
        li.xi = x;
        li.xi_prime = 1 + x - x * x;
        int t = li.d + 1 - (p == 2 ? 1 : 0);
        li.delta = 2 * (t >= 0 ? t / 2 : -((-t + 1) / 2));
    } else {
        int h = hasse_invariant(b, p) * hilbert_symbol(dt, -1, p);
        int e = h * hilbert_symbol(dt, ((n - 1) / 2) % 2 ? -dt : dt, p);
        if (p == 2 && ((n * n - 1) / 8) % 2) e = -e;
        li.eta = e;
        li.delta = li.d;
    }
    li.i = i_p(b, p);
    return li;
}

}  // namespace latmass
