#pragma once

#include "latmass/roots.hpp"

#include <atomic>
#include <cstddef>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace latmass {

struct OrbitEntry {
    BigInt count;           // emb_i(S, T), already multiplied by |Aut(S)|
    RootSystem complement;  // comp_i(S, T)
};

// All orbits of embeddings of S into T (zero, one or two entries).
const std::vector<OrbitEntry>& emb_irreducible(const Component& s, const Component& t);

// Number of inner-product preserving maps source -> target.
class EmbeddingCounter {
public:
    explicit EmbeddingCounter(std::size_t capacity = 2000000) : capacity_(capacity) {}

    BigInt count(const RootSystem& source, const RootSystem& target);
    void clear();
    std::size_t size() const;
    std::size_t evictions() const { return evictions_.load(); }
    void set_capacity(std::size_t c) { capacity_ = c; }

private:
    struct Key {
        RootSystem s, t;
        bool operator==(const Key& o) const { return s == o.s && t == o.t; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            RootSystemHash h;
            return h(k.s) * 31 + h(k.t);
        }
    };
    BigInt rec(const RootSystem& source, const RootSystem& target);

    std::size_t capacity_;
    mutable std::shared_mutex mu_;
    std::unordered_map<Key, BigInt, KeyHash> memo_;
    std::atomic<std::size_t> evictions_{0};
};

bool may_embed(const RootSystem& source, const RootSystem& target);   // cheap necessary conditions
BigInt rep_count(const RootSystem& source, const RootSystem& target);   // shared process-wide memo
EmbeddingCounter& default_embedding_counter();

}  // namespace latmass
