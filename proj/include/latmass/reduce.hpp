#pragma once

#include "latmass/mass.hpp"
#include "latmass/roots.hpp"

#include <map>
#include <string>
#include <vector>

namespace latmass {

// Norm-4 vectors v = r + s of one shape inside a single component.
struct ReductionShape {
    std::string label;   // "any", "+-1^4", "+-2"
    BigInt vectors;      // #v
    RootSystem tilde;    // replacement for the component
    int reduced_dim;     // dimension of the reduced lattice
};

struct ReductionRule {
    Component component;
    std::uint64_t roots;   // #r
    RootSystem hat;        // replacement when one root is taken from here
    std::vector<ReductionShape> shapes;
};

ReductionRule reduction_rule(const Component& c, int base);

// 2^(k-1) k!, the mass factor for k = base - 1 - reduced_dim
BigInt orbit_factor(int base, int reduced_dim);

// Asserts the closed-form Weyl identities behind the per-orbit factor; throws std::logic_error.
void check_reduction_identities(int base);

struct OddContribution {
    RootSystem source;   // root system of the even lattice
    std::string rule;    // which vectors v produced it
    BigRational mass;
};

struct OddEntry {
    BigRational mass;                     // all lattices, any parity, minimum norm 2
    std::vector<OddContribution> parts;   // summands, in source order
};

// Unimodular lattices without norm-1 vectors, dims 0 .. base-2.
struct OddMassTable {
    int base = 0;
    std::map<int, std::map<RootSystem, OddEntry>> by_dim;
    std::map<int, std::map<RootSystem, BigRational>> even;   // m^II_n(R) for n = 0 mod 8, n < base

    BigRational mass(int n, const RootSystem& r) const;        // 0 when absent
    BigRational even_mass(int n, const RootSystem& r) const;   // 0 when absent
    BigRational odd_mass(int n, const RootSystem& r) const { return mass(n, r) - even_mass(n, r); }
};

OddMassTable reduce_masses(const MassTable& even_table);

// m^I_n(no roots) for n = base-9 .. base-2 (23 .. 30 at base 32)
std::map<int, BigRational> no_root_masses(const MassTable& even_table);

BigInt milgram_count(int n);   // 2^(n-1) + 2^(n/2-1), n = 0 mod 8
BigRational bound_dim31(const BigRational& m32_noroots);
BigRational bound_dim32_odd(const BigRational& m32_noroots);

BigInt w_prime(const RootSystem& r, int lattice_dim);
BigInt mod_ceiling(const BigRational& x);

struct ClassBound {
    BigInt bound;               // beta_n
    std::size_t root_systems;   // r_n
};

// Odd unimodular lattices of dimension n (1 <= n <= base-2), with norm-1 vectors allowed.
ClassBound class_lower_bound(const OddMassTable& t, int n);
// Even unimodular lattices of the table's dimension.
ClassBound even_class_bound(const MassTable& t);

}  // namespace latmass
