#include "latmass/roots.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace latmass {

Component make_component(char family, int n) {
    bool ok = (family == 'A' && n >= 1) || (family == 'D' && n >= 4) || (family == 'E' && n >= 6 && n <= 8) ||
              (family == 'Z' && n == 1);
    if (!ok) throw std::invalid_argument(std::string("invalid root system component ") + family + std::to_string(n));
    return Component{family, n};
}

std::uint64_t Component::det() const {
    switch (family) {
        case 'A': return static_cast<std::uint64_t>(n) + 1;
        case 'D': return 4;
        case 'E': return static_cast<std::uint64_t>(9 - n);
        default: return 1;
    }
}

std::uint64_t Component::root_count() const {
    const std::uint64_t k = static_cast<std::uint64_t>(n);
    switch (family) {
        case 'A': return k * (k + 1);
        case 'D': return 2 * k * (k - 1);
        case 'E': return n == 6 ? 72 : n == 7 ? 126 : 240;
        default: return 2;
    }
}

BigInt Component::weyl_order() const {
    switch (family) {
        case 'A': return factorial(static_cast<unsigned>(n + 1));
        case 'D': return (BigInt(1) << static_cast<unsigned>(n - 1)) * factorial(static_cast<unsigned>(n));
        case 'E': return n == 6 ? BigInt(51840) : n == 7 ? BigInt(2903040) : BigInt(696729600);
        default: return 2;
    }
}

BigInt Component::aut_order() const {
    switch (family) {
        case 'A': return n == 1 ? BigInt(2) : 2 * factorial(static_cast<unsigned>(n + 1));
        case 'D': return n == 4 ? BigInt(1152) : (BigInt(1) << static_cast<unsigned>(n)) * factorial(static_cast<unsigned>(n));
        case 'E': return n == 6 ? BigInt(103680) : n == 7 ? BigInt(2903040) : BigInt(696729600);
        default: return 2;
    }
}

std::string Component::str() const { return family == 'Z' ? "Z" : family + std::to_string(n); }

std::vector<std::vector<long>> Component::cartan() const {
    std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
    if (family == 'Z') {
        g[0][0] = 1;
        return g;
    }
    for (int i = 0; i < n; ++i) g[i][i] = 2;
    auto link = [&](int a, int b) { g[a][b] = g[b][a] = -1; };
    if (family == 'A') {
        for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
    } else if (family == 'D') {
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(n - 3, n - 1);
    } else {
        for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
        link(2, n - 1);
    }
    return g;
}

RootSystem::RootSystem(std::vector<Component> comps) : comps_(std::move(comps)) {
    std::sort(comps_.begin(), comps_.end());
    for (auto& c : comps_) {
        make_component(c.family, c.n);
        rank_ += c.rank();
        det_ *= c.det();
        roots_ += c.root_count();
    }
}

RootSystem RootSystem::parse(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    std::vector<Component> comps;
    while (is >> tok) {
        if (tok == "0" || tok == "{}") continue;
        std::string base = tok;
        long mult = 1;
        if (auto caret = tok.find('^'); caret != std::string::npos) {
            base = tok.substr(0, caret);
            std::string m = tok.substr(caret + 1);
            if (m.empty() || !std::all_of(m.begin(), m.end(), ::isdigit)) throw std::invalid_argument("malformed token '" + tok + "'");
            mult = std::stol(m);
        }
        if (base.empty()) throw std::invalid_argument("malformed token '" + tok + "'");
        char fam = base[0];
        int n = 1;
        if (fam == 'Z') {
            if (base.size() != 1) throw std::invalid_argument("malformed token '" + tok + "'");
        } else {
            std::string num = base.substr(1);
            if (num.empty() || num.size() > 4 || !std::all_of(num.begin(), num.end(), ::isdigit))
                throw std::invalid_argument("malformed token '" + tok + "'");
            n = std::stoi(num);
            if (fam != 'A' && fam != 'D' && fam != 'E') throw std::invalid_argument("unknown family in '" + tok + "'");
        }
        Component c = make_component(fam, n);
        for (long i = 0; i < mult; ++i) comps.push_back(c);
    }
    return RootSystem(std::move(comps));
}

BigInt RootSystem::weyl_order() const {
    BigInt w = 1;
    for (auto& c : comps_) w *= c.weyl_order();
    return w;
}

BigInt RootSystem::aut_order() const {
    BigInt a = 1;
    for (std::size_t i = 0; i < comps_.size();) {
        std::size_t j = i;
        while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
        BigInt ai = comps_[i].aut_order();
        for (std::size_t k = i; k < j; ++k) a *= ai;
        a *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    return a;
}

std::string RootSystem::str() const {
    if (comps_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < comps_.size();) {
        std::size_t j = i;
        while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
        if (!s.empty()) s += ' ';
        s += comps_[i].str();
        if (j - i > 1) s += '^' + std::to_string(j - i);
        i = j;
    }
    return s;
}

std::vector<std::vector<long>> RootSystem::gram() const {
    std::vector<std::vector<long>> g(rank_, std::vector<long>(rank_, 0));
    int off = 0;
    for (auto& c : comps_) {
        auto cg = c.cartan();
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j) g[off + i][off + j] = cg[i][j];
        off += c.n;
    }
    return g;
}

int RootSystem::count(const Component& c) const {
    return static_cast<int>(std::count(comps_.begin(), comps_.end(), c));
}

bool RootSystem::has_z() const { return z_count() > 0; }

int RootSystem::z_count() const { return count(Component{'Z', 1}); }

RootSystem RootSystem::without_z() const {
    std::vector<Component> c;
    for (auto& x : comps_)
        if (x.family != 'Z') c.push_back(x);
    return RootSystem(std::move(c));
}

RootSystem RootSystem::plus(const RootSystem& o) const {
    auto c = comps_;
    c.insert(c.end(), o.comps_.begin(), o.comps_.end());
    return RootSystem(std::move(c));
}

RootSystem RootSystem::minus_one(const Component& x) const {
    auto c = comps_;
    auto it = std::find(c.begin(), c.end(), x);
    if (it == c.end()) throw std::invalid_argument("component not present");
    c.erase(it);
    return RootSystem(std::move(c));
}

std::size_t RootSystemHash::operator()(const RootSystem& r) const {
    std::size_t h = 1469598103934665603ull;
    for (auto& c : r.components()) {
        h ^= static_cast<std::size_t>(Component::order(c.family) * 64 + c.n);
        h *= 1099511628211ull;
    }
    return h;
}

BigInt weyl_order(const RootSystem& r) { return r.weyl_order(); }
BigInt aut_order(const RootSystem& r) { return r.aut_order(); }
std::uint64_t root_count(const RootSystem& r) { return r.root_count(); }

bool borcherds_filter(const RootSystem& r, int dim) {
    if (dim != 32) return true;
    const std::uint64_t roots = r.root_count();
    auto need = [&](bool cond, std::uint64_t m) { return !cond || roots % m == 0; };
    bool dbig = false;
    for (auto& c : r.components())
        if (c.family == 'D' && c.n > 8) dbig = true;
    return need(r.contains('E', 8), 24) && need(r.contains('E', 7), 12) && need(r.contains('E', 6), 6) &&
           need(r.contains('D', 6), 4) && need(r.contains('D', 7), 8) && need(r.contains('D', 8), 8) && need(dbig, 16);
}

bool enumeration_less(const RootSystem& a, const RootSystem& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    if (a.det() != b.det()) return a.det() > b.det();
    return a.str() < b.str();
}

std::vector<RootSystem> enumerate_root_systems(int max_rank, int dim, const EnumerationFilters& f) {
    std::vector<Component> kinds;
    for (int r = 1; r <= max_rank; ++r) {
        kinds.push_back({'A', r});
        if (r >= 4) kinds.push_back({'D', r});
        if (r >= 6 && r <= 8) kinds.push_back({'E', r});
    }
    std::vector<std::pair<std::string, RootSystem>> out;
    std::vector<Component> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
        RootSystem r(cur);
        bool keep = true;
        if (f.borcherds && !borcherds_filter(r, dim)) keep = false;
        if (f.square_det_full && r.rank() == dim && !is_square(BigInt(static_cast<unsigned long>(r.det())))) keep = false;
        if (keep) out.emplace_back(r.str(), std::move(r));
        for (std::size_t k = start; k < kinds.size(); ++k) {
            if (kinds[k].n > left) continue;
            cur.push_back(kinds[k]);
            rec(k, left - kinds[k].n);
            cur.pop_back();
        }
    };
    rec(0, max_rank);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second.rank() != b.second.rank()) return a.second.rank() < b.second.rank();
        if (a.second.det() != b.second.det()) return a.second.det() > b.second.det();
        return a.first < b.first;
    });
    std::vector<RootSystem> res;
    res.reserve(out.size());
    for (auto& [s, r] : out) res.push_back(std::move(r));
    return res;
}

std::vector<RootSystem> enumerate_root_systems(int max_rank) {
    return enumerate_root_systems(max_rank, 0, EnumerationFilters{false, false});
}

}  // namespace latmass
