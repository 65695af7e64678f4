#include "latmass/reduce.hpp"

#include <stdexcept>

namespace latmass {

namespace {

RootSystem a_sys(int j) { return j >= 1 ? RootSystem({Component{'A', j}}) : RootSystem(); }

RootSystem d_sys(int j) {
    if (j <= 1) return RootSystem();
    if (j == 2) return RootSystem::parse("A1^2");
    if (j == 3) return a_sys(3);
    return RootSystem({Component{'D', j}});
}

BigInt pow2(unsigned k) { return BigInt(1) << k; }

std::vector<std::pair<Component, int>> grouped(const RootSystem& r) {
    std::vector<std::pair<Component, int>> out;
    for (const auto& c : r.components()) {
        if (!out.empty() && out.back().first == c) out.back().second++;
        else out.emplace_back(c, 1);
    }
    return out;
}

void add_part(OddMassTable& t, int dim, const RootSystem& target, const RootSystem& source, std::string rule, const BigRational& m) {
    OddEntry& e = t.by_dim[dim][target];
    e.mass += m;
    e.parts.push_back({source, std::move(rule), m});
}

void reduce_entry(OddMassTable& t, const RootSystem& r, const BigRational& m) {
    const int base = t.base;
    const auto g = grouped(r);
    std::vector<ReductionRule> rules;
    for (const auto& [c, mult] : g) rules.push_back(reduction_rule(c, base));

    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = i; j < g.size(); ++j) {
            const long ci = g[i].second, cj = g[j].second;
            const BigInt pairs = i == j ? binomial(ci, 2) : BigInt(ci * cj);
            if (pairs == 0) continue;
            const BigInt v = pairs * rules[i].roots * rules[j].roots;
            const RootSystem target = r.minus_one(g[i].first).minus_one(g[j].first).plus(rules[i].hat).plus(rules[j].hat);
            add_part(t, base - 2, target, r, "r+s in " + g[i].first.str() + "," + g[j].first.str(), BigRational(v) * m);
        }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const auto& s : rules[i].shapes) {
            const BigInt f = BigInt(g[i].second) * s.vectors * orbit_factor(base, s.reduced_dim);
            const RootSystem target = r.minus_one(g[i].first).plus(s.tilde);
            add_part(t, s.reduced_dim, target, r, "r+s in " + g[i].first.str() + " " + s.label, BigRational(f) * m);
        }
    }
}

void fill_even(OddMassTable& t, const MassTable& even_table) {
    const Component e8{'E', 8};
    const BigInt w8 = e8.weyl_order();
    std::map<RootSystem, BigRational> prev;
    for (const auto& e : even_table.entries)
        if (e.mass && *e.mass != 0) prev.emplace(e.root_system, *e.mass);
    for (int d = t.base - 8; d >= 0; d -= 8) {
        std::map<RootSystem, BigRational> cur;
        for (const auto& [r, m] : prev) {
            const int c = r.count(e8);
            if (c) cur[r.minus_one(e8)] += BigRational(w8 * c) * m;
        }
        t.even[d] = cur;
        prev = std::move(cur);
    }
}

bool is_e8_rule(const OddContribution& p) { return p.rule == "r+s in E8 any"; }

}  // namespace

ReductionRule reduction_rule(const Component& c, int base) {
    ReductionRule r{c, c.root_count(), {}, {}};
    const int n = c.n;
    switch (c.family) {
    case 'A':
        r.hat = a_sys(n - 2);
        if (n >= 3) r.shapes.push_back({"any", 6 * binomial(n + 1, 4), a_sys(n - 4), base - 3});
        break;
    case 'D':
        if (n == 4) {
            r.hat = RootSystem::parse("A1^3");
            r.shapes.push_back({"any", 24, {}, base - 4});
        } else {
            r.hat = d_sys(n - 2).plus(Component{'A', 1});
            r.shapes.push_back({"+-1^4", 16 * binomial(n, 4), d_sys(n - 4), base - 4});
            r.shapes.push_back({"+-2", BigInt(2 * n), {}, base - n});
        }
        break;
    case 'E':
        if (n == 6) {
            r.hat = a_sys(5);
            r.shapes.push_back({"any", 270, {}, base - 5});
        } else if (n == 7) {
            r.hat = d_sys(6);
            r.shapes.push_back({"any", 756, a_sys(1), base - 6});
        } else {
            r.hat = RootSystem({Component{'E', 7}});
            r.shapes.push_back({"any", 2160, {}, base - 8});
        }
        break;
    default:
        throw std::invalid_argument("no reduction rule for " + c.str());
    }
    return r;
}

BigInt orbit_factor(int base, int reduced_dim) {
    const int k = base - 1 - reduced_dim;
    if (k < 1) throw std::domain_error("orbit_factor: reduced dimension too large");
    return pow2(static_cast<unsigned>(k - 1)) * factorial(static_cast<unsigned>(k));
}

void check_reduction_identities(int base) {
    auto w = [](const char* s) -> BigInt { return RootSystem::parse(s).weyl_order(); };
    auto factor = [&](const char* comp, std::size_t shape) -> BigInt {
        const auto rule = reduction_rule(RootSystem::parse(comp).components().front(), base);
        const auto& s = rule.shapes.at(shape);
        return s.vectors * orbit_factor(base, s.reduced_dim);
    };
    auto expect = [](bool ok, const std::string& what) {
        if (!ok) throw std::logic_error("reduction identity failed: " + what);
    };
    expect(factor("A3", 0) == w("A3"), "A3");
    expect(factor("A4", 0) == w("A4"), "A4");
    expect(factor("D4", 0) == 3 * w("D4"), "D4");
    expect(factor("D5", 0) == w("D5"), "D5 +-1^4");
    expect(factor("E6", 0) == w("E6"), "E6");
    expect(factor("E7", 0) * w("A1") == w("E7"), "E7");
    expect(factor("E8", 0) == w("E8"), "E8");
    for (int j = 5; j <= base; ++j) {
        const std::string d = "D" + std::to_string(j);
        expect(factor(d.c_str(), 1) == w(d.c_str()), d + " +-2");
    }
    auto roots = [](const char* s) -> BigInt { return BigInt(static_cast<unsigned long>(RootSystem::parse(s).root_count())); };
    expect(roots("A1") * roots("A1") == w("A1^2"), "A1 A1");
    expect(roots("A1") * roots("A2") == w("A1 A2"), "A1 A2");
    expect(roots("A2") * roots("A2") == w("A2^2"), "A2 A2");
}

BigRational OddMassTable::mass(int n, const RootSystem& r) const {
    auto d = by_dim.find(n);
    if (d == by_dim.end()) return 0;
    auto it = d->second.find(r);
    return it == d->second.end() ? BigRational(0) : it->second.mass;
}

BigRational OddMassTable::even_mass(int n, const RootSystem& r) const {
    auto d = even.find(n);
    if (d == even.end()) return 0;
    auto it = d->second.find(r);
    return it == d->second.end() ? BigRational(0) : it->second;
}

OddMassTable reduce_masses(const MassTable& even_table) {
    if (!even_table.complete() || even_table.dim % 8) throw std::invalid_argument("reduce_masses needs a full even mass table");
    check_reduction_identities(even_table.dim);
    OddMassTable t;
    t.base = even_table.dim;
    for (const auto& e : even_table.entries) {
        if (!e.mass) throw std::invalid_argument("reduce_masses: missing mass for " + e.root_system.str());
        if (*e.mass != 0) reduce_entry(t, e.root_system, *e.mass);
    }
    fill_even(t, even_table);
    return t;
}

std::map<int, BigRational> no_root_masses(const MassTable& even_table) {
    const int base = even_table.dim;
    if (base < 16 || base % 8) throw std::invalid_argument("no_root_masses needs a table of dimension 8k >= 16");
    check_reduction_identities(base);
    OddMassTable t;
    t.base = base;
    auto m = [&](const char* s) -> BigRational { return even_table.mass_of(RootSystem::parse(s)); };
    auto w = [](const char* s) -> BigRational { return BigRational(RootSystem::parse(s).weyl_order()); };
    for (const auto& e : even_table.entries) {
        if (!e.mass || *e.mass == 0) continue;
        const auto& c = e.root_system.components();
        const bool single = c.size() == 1 && (c[0].family != 'A' || c[0].n <= 4);
        const bool pair = c.size() == 2 && c[0].family == 'A' && c[1].family == 'A' && c[1].n <= 2;
        if (single || pair) reduce_entry(t, e.root_system, *e.mass);
    }
    std::map<int, BigRational> out;
    const RootSystem none;
    for (int n = base - 9; n <= base - 2; ++n) {
        BigRational v = 0;
        if (auto d = t.by_dim.find(n); d != t.by_dim.end())
            if (auto it = d->second.find(none); it != d->second.end())
                for (const auto& p : it->second.parts)
                    if (!is_e8_rule(p)) v += p.mass;
        out[n] = v;
    }
    auto dw = [&](int j) -> BigRational {
        const std::string s = "D" + std::to_string(j);
        return m(s.c_str()) * w(s.c_str());
    };
    std::map<int, BigRational> closed;
    for (int n = base - 9; n <= base - 6; ++n) closed[n] = dw(base - n);
    closed[base - 5] = dw(5) + m("E6") * w("E6");
    closed[base - 4] = m("D4") * 3 * w("D4") + dw(5);
    closed[base - 3] = m("A3") * w("A3") + m("A4") * w("A4");
    closed[base - 2] = m("A1^2") * w("A1^2") + m("A1 A2") * w("A1 A2") + m("A2^2") * w("A2^2");
    for (const auto& [n, v] : closed)
        if (out[n] != v) throw std::logic_error("no-root mass identity failed at n = " + std::to_string(n));
    return out;
}

BigInt milgram_count(int n) {
    if (n <= 0 || n % 8) throw std::domain_error("milgram_count: n must be a positive multiple of 8");
    return pow2(static_cast<unsigned>(n - 1)) + pow2(static_cast<unsigned>(n / 2 - 1));
}

BigRational bound_dim31(const BigRational& m32_noroots) { return BigRational(146880, 2) * m32_noroots; }

BigRational bound_dim32_odd(const BigRational& m32_noroots) {
    const BigInt count = milgram_count(32) - 146880 / 2 - 1;
    return BigRational(count) / 2 * m32_noroots;
}

BigInt w_prime(const RootSystem& r, int lattice_dim) {
    if (lattice_dim < 1) throw std::domain_error("w_prime: dimension must be positive");
    const int j = r.z_count();
    const RootSystem rest = r.without_z();
    BigInt w = pow2(static_cast<unsigned>(j)) * factorial(static_cast<unsigned>(j)) * rest.weyl_order();
    bool minus_one = r.rank() == lattice_dim;
    for (const auto& c : rest.components()) {
        const bool ok = (c.family == 'A' && c.n == 1) || (c.family == 'E' && c.n >= 7) || (c.family == 'D' && c.n % 2 == 0);
        minus_one = minus_one && ok;
    }
    return minus_one ? w : BigInt(2 * w);
}

BigInt mod_ceiling(const BigRational& x) {
    if (x < 0) throw std::domain_error("mod_ceiling: negative argument");
    BigInt q = x.get_num() / x.get_den();
    const BigInt a = x.get_num() - q * x.get_den();
    if (a == 0) return q;
    return a == 1 ? BigInt(q + 1) : BigInt(q + 2);
}

ClassBound class_lower_bound(const OddMassTable& t, int n) {
    if (n < 1 || n > t.base - 2) throw std::domain_error("class_lower_bound: dimension out of range");
    ClassBound out{0, 0};
    for (int j = 0; j <= n; ++j) {
        const int d = n - j;
        auto dim = t.by_dim.find(d);
        if (dim == t.by_dim.end()) continue;
        RootSystem zs;
        for (int i = 0; i < j; ++i) zs = zs.plus(Component{'Z', 1});
        const BigRational strip(pow2(static_cast<unsigned>(j)) * factorial(static_cast<unsigned>(j)));
        for (const auto& [r, e] : dim->second) {
            const BigRational wp(w_prime(r.plus(zs), n));
            if (j > 0) {
                if (e.mass == 0) continue;
                out.root_systems++;
                for (const auto& p : e.parts) out.bound += mod_ceiling(p.mass / strip * wp);
                continue;
            }
            const BigRational ev = t.even_mass(n, r);
            const BigRational odd = e.mass - ev;
            if (odd < 0) throw std::logic_error("negative odd mass for " + r.str());
            if (odd == 0) continue;
            out.root_systems++;
            if (ev == 0) {
                for (const auto& p : e.parts) out.bound += mod_ceiling(p.mass * wp);
                continue;
            }
            BigRational e8 = 0;
            if (n == t.base - 8)
                for (const auto& p : e.parts)
                    if (is_e8_rule(p)) e8 += p.mass;
            if (n == t.base - 8 && e8 == ev) {
                for (const auto& p : e.parts)
                    if (!is_e8_rule(p)) out.bound += mod_ceiling(p.mass * wp);
            } else {
                out.bound += mod_ceiling(odd * wp);
            }
        }
    }
    return out;
}

ClassBound even_class_bound(const MassTable& t) {
    if (!t.complete()) throw std::invalid_argument("even_class_bound needs a full mass table");
    ClassBound out{0, 0};
    for (const auto& e : t.entries) {
        if (!e.mass || *e.mass == 0) continue;
        out.root_systems++;
        out.bound += mod_ceiling(*e.mass * BigRational(w_prime(e.root_system, t.dim)));
    }
    return out;
}

}  // namespace latmass
