#pragma once

#include "latmass/exact.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latmass {

struct Component {
    char family = 'A';   // 'A', 'D', 'E', 'Z'
    int n = 1;

    int rank() const { return n; }
    std::uint64_t det() const;
    std::uint64_t root_count() const;
    BigInt weyl_order() const;
    BigInt aut_order() const;
    std::string str() const;
    std::vector<std::vector<long>> cartan() const;   // Gram of the simple roots (Z: (1))

    auto operator<=>(const Component& o) const {
        if (auto c = order(family) <=> order(o.family); c != 0) return c;
        return n <=> o.n;
    }
    bool operator==(const Component&) const = default;
    static int order(char f) { return f == 'A' ? 0 : f == 'D' ? 1 : f == 'E' ? 2 : 3; }
};

Component make_component(char family, int n);   // validates index ranges

class RootSystem {
public:
    RootSystem() = default;
    explicit RootSystem(std::vector<Component> comps);
    static RootSystem parse(const std::string& text);

    const std::vector<Component>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    int rank() const { return rank_; }
    std::uint64_t det() const { return det_; }
    std::uint64_t root_count() const { return roots_; }
    BigInt weyl_order() const;
    BigInt aut_order() const;
    std::string str() const;   // canonical; "0" for the empty system
    std::vector<std::vector<long>> gram() const;
    int count(const Component& c) const;
    bool contains(char family, int n) const { return count(Component{family, n}) > 0; }
    bool has_z() const;
    RootSystem without_z() const;
    int z_count() const;

    RootSystem plus(const RootSystem& o) const;
    RootSystem plus(const Component& c) const { return plus(RootSystem({c})); }
    RootSystem minus_one(const Component& c) const;   // removes one instance

    auto operator<=>(const RootSystem& o) const { return comps_ <=> o.comps_; }
    bool operator==(const RootSystem& o) const { return comps_ == o.comps_; }

private:
    std::vector<Component> comps_;
    int rank_ = 0;
    std::uint64_t det_ = 1;
    std::uint64_t roots_ = 0;
};

struct RootSystemHash {
    std::size_t operator()(const RootSystem& r) const;
};

BigInt weyl_order(const RootSystem& r);
BigInt aut_order(const RootSystem& r);
std::uint64_t root_count(const RootSystem& r);

struct EnumerationFilters {
    bool borcherds = true;        // congruences on roots(R); only applied at dim 32
    bool square_det_full = true;  // drop rank-dim systems with non-square determinant
};

bool borcherds_filter(const RootSystem& r, int dim);
bool enumeration_less(const RootSystem& a, const RootSystem& b);
std::vector<RootSystem> enumerate_root_systems(int max_rank, int dim, const EnumerationFilters& f);
std::vector<RootSystem> enumerate_root_systems(int max_rank);   // no filters

}  // namespace latmass
