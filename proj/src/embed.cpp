#include "latmass/embed.hpp"

#include <map>
#include <mutex>

namespace latmass {

namespace {

RootSystem sys(std::initializer_list<Component> c) { return RootSystem(std::vector<Component>(c)); }

RootSystem a_comp(int j) { return j >= 1 ? sys({{'A', j}}) : RootSystem(); }

RootSystem d_comp(int j) {
    if (j <= 1) return RootSystem();
    if (j == 2) return sys({{'A', 1}, {'A', 1}});
    if (j == 3) return sys({{'A', 3}});
    return sys({{'D', j}});
}

struct ERow {
    char sf;
    int si, tj;
    long c1;
    const char* comp1;
    long c2;
    const char* comp2;
};

// S into E_j: emb/|Aut(S)| and complements
const ERow kERows[] = {
    {'A', 1, 6, 36, "A5", 0, ""},       {'A', 2, 6, 120, "A2^2", 0, ""},   {'A', 3, 6, 270, "A1^2", 0, ""},
    {'A', 4, 6, 216, "A1", 0, ""},      {'A', 5, 6, 36, "A1", 0, ""},      {'D', 4, 6, 45, "", 0, ""},
    {'D', 5, 6, 27, "", 0, ""},         {'E', 6, 6, 1, "", 0, ""},
    {'A', 1, 7, 63, "D6", 0, ""},       {'A', 2, 7, 336, "A5", 0, ""},     {'A', 3, 7, 1260, "A3 A1", 0, ""},
    {'A', 4, 7, 2016, "A2", 0, ""},     {'A', 5, 7, 336, "A2", 1008, "A1"}, {'A', 6, 7, 288, "", 0, ""},
    {'A', 7, 7, 36, "", 0, ""},         {'D', 4, 7, 315, "A1^3", 0, ""},   {'D', 5, 7, 378, "A1", 0, ""},
    {'D', 6, 7, 63, "A1", 0, ""},       {'E', 6, 7, 28, "", 0, ""},        {'E', 7, 7, 1, "", 0, ""},
    {'A', 1, 8, 120, "E7", 0, ""},      {'A', 2, 8, 1120, "E6", 0, ""},    {'A', 3, 8, 7560, "D5", 0, ""},
    {'A', 4, 8, 24192, "A4", 0, ""},    {'A', 5, 8, 40320, "A2 A1", 0, ""}, {'A', 6, 8, 34560, "A1", 0, ""},
    {'A', 7, 8, 4320, "A1", 8640, ""},  {'A', 8, 8, 960, "", 0, ""},       {'D', 4, 8, 3150, "D4", 0, ""},
    {'D', 5, 8, 7560, "A3", 0, ""},     {'D', 6, 8, 3780, "A1^2", 0, ""},  {'D', 7, 8, 1080, "", 0, ""},
    {'D', 8, 8, 135, "", 0, ""},        {'E', 6, 8, 1120, "A2", 0, ""},    {'E', 7, 8, 120, "A1", 0, ""},
    {'E', 8, 8, 1, "", 0, ""},
};

std::vector<OrbitEntry> compute_orbits(const Component& s, const Component& t) {
    std::vector<OrbitEntry> out;
    const BigInt aut = s.aut_order();
    auto add = [&](const BigInt& c, RootSystem comp) {
        if (c > 0) out.push_back({c * aut, std::move(comp)});
    };
    const int i = s.n, j = t.n;
    if (s.family == 'Z' || t.family == 'Z') return out;
    if (t.family == 'A') {
        if (s.family == 'A' && j >= i) add(binomial(j + 1, i + 1), a_comp(j - i - 1));
    } else if (t.family == 'D') {
        if (s.family == 'A') {
            if (i == 1) add(binomial(j, 2) * 2, sys({{'A', 1}}).plus(d_comp(j - 2)));
            else if (i == 3) {
                add(binomial(j, 4) * 8, d_comp(j - 4));
                add(binomial(j, 3), d_comp(j - 3));
            } else if (j > i) {
                add(binomial(j, i + 1) * (BigInt(1) << static_cast<unsigned>(i)), d_comp(j - i - 1));
            }
        } else if (s.family == 'D' && j >= i) {
            add(binomial(j, i), d_comp(j - i));
        }
    } else {
        for (const auto& r : kERows)
            if (r.sf == s.family && r.si == i && r.tj == j) {
                add(r.c1, RootSystem::parse(r.comp1));
                if (r.c2) add(r.c2, RootSystem::parse(r.comp2));
            }
    }
    return out;
}

std::mutex g_irr_mu;
std::map<std::pair<Component, Component>, std::vector<OrbitEntry>> g_irr;

}  // namespace

const std::vector<OrbitEntry>& emb_irreducible(const Component& s, const Component& t) {
    std::lock_guard lk(g_irr_mu);
    auto key = std::make_pair(s, t);
    auto it = g_irr.find(key);
    if (it == g_irr.end()) it = g_irr.emplace(key, compute_orbits(s, t)).first;
    return it->second;
}

bool may_embed(const RootSystem& source, const RootSystem& target) {
    if (source.rank() > target.rank()) return false;
    if (source.root_count() > target.root_count()) return false;
    if (source.rank() == target.rank()) {
        if (source.det() % target.det()) return false;
        if (!is_square(BigInt(static_cast<unsigned long>(source.det() / target.det())))) return false;
    }
    const auto& tc = target.components();
    const auto& sc = source.components();
    for (std::size_t k = 0; k < sc.size(); ++k) {
        if (k && sc[k] == sc[k - 1]) continue;
        bool any = false;
        for (std::size_t m = 0; m < tc.size() && !any; ++m) {
            if (m && tc[m] == tc[m - 1]) continue;
            any = !emb_irreducible(sc[k], tc[m]).empty();
        }
        if (!any) return false;
    }
    return true;
}

BigInt EmbeddingCounter::count(const RootSystem& source, const RootSystem& target) { return rec(source, target); }

void EmbeddingCounter::clear() {
    std::unique_lock lk(mu_);
    memo_.clear();
}

std::size_t EmbeddingCounter::size() const {
    std::shared_lock lk(mu_);
    return memo_.size();
}

BigInt EmbeddingCounter::rec(const RootSystem& source, const RootSystem& target) {
    if (source.empty()) return 1;
    if (!may_embed(source, target)) return 0;
    Key key{source, target};
    {
        std::shared_lock lk(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    const Component s = source.components().back();
    const RootSystem rest = source.minus_one(s);
    BigInt total = 0;
    const auto& tc = target.components();
    for (std::size_t m = 0; m < tc.size();) {
        std::size_t e = m;
        while (e < tc.size() && tc[e] == tc[m]) ++e;
        const auto& orbits = emb_irreducible(s, tc[m]);
        if (!orbits.empty()) {
            const RootSystem without = target.minus_one(tc[m]);
            BigInt sub = 0;
            for (const auto& o : orbits) {
                BigInt r = rec(rest, without.plus(o.complement));
                if (r != 0) sub += o.count * r;
            }
            total += sub * static_cast<unsigned long>(e - m);
        }
        m = e;
    }
    std::unique_lock lk(mu_);
    if (memo_.size() >= capacity_) {
        memo_.clear();
        evictions_++;
    }
    memo_.emplace(std::move(key), total);
    return total;
}

EmbeddingCounter& default_embedding_counter() {
    static EmbeddingCounter c;
    return c;
}

BigInt rep_count(const RootSystem& source, const RootSystem& target) { return default_embedding_counter().count(source, target); }

}  // namespace latmass
