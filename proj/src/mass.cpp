#include "latmass/mass.hpp"

#include "latmass/siegel.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace latmass {

BigRational genus_mass(int dim) {
    if (dim <= 0 || dim % 8) throw std::domain_error("genus_mass: dimension must be a positive multiple of 8");
    const unsigned k = static_cast<unsigned>(dim / 8);
    BigRational m = abs(bernoulli(4 * k)) / (8 * k);
    for (unsigned j = 1; j < 4 * k; ++j) m *= abs(bernoulli(2 * j)) / (4 * j);
    return m;
}

const MassEntry* MassTable::find(const RootSystem& r) const {
    for (const auto& e : entries)
        if (e.root_system == r) return &e;
    return nullptr;
}

BigRational MassTable::mass_of(const RootSystem& r) const {
    const MassEntry* e = find(r);
    return e && e->mass ? *e->mass : BigRational(0);
}

std::size_t MassTable::nonzero_count() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const MassEntry& e) { return e.mass && *e.mass != 0; }));
}

namespace {

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            try {
                for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<BigRational> compute_coefficients(const std::vector<RootSystem>& systems, int dim, unsigned threads) {
    std::vector<BigRational> a(systems.size());
    parallel_for(systems.size(), threads, [&](std::size_t i) { a[i] = a_average(systems[i], dim); });
    return a;
}

MassTable solve_masses(int dim, const SolveOptions& opts) {
    const BigRational m = genus_mass(dim);
    MassTable t;
    t.dim = dim;
    t.max_rank = opts.max_rank < 0 ? dim : opts.max_rank;
    if (t.max_rank > dim) throw std::domain_error("max_rank exceeds dimension");
    t.filters = opts.filters;
    t.total = m;
    const auto systems = enumerate_root_systems(t.max_rank, dim, opts.filters);
    const std::size_t N = systems.size();
    EmbeddingCounter& counter = opts.counter ? *opts.counter : default_embedding_counter();
    const unsigned threads = std::max(1u, opts.threads);

    SolverState st;
    if (opts.resume) {
        st = *opts.resume;
        if (st.a.size() != N) throw std::invalid_argument("checkpoint does not match the enumeration");
    } else {
        if (opts.progress) opts.progress("coefficients: " + std::to_string(N) + " root systems");
        st.a = compute_coefficients(systems, dim, threads);
        st.next_index = N;
        if (opts.on_checkpoint && t.complete()) opts.on_checkpoint(st);
    }

    t.entries.resize(N);
    for (std::size_t i = 0; i < N; ++i) t.entries[i] = {systems[i], st.a[i], std::nullopt};
    if (!t.complete()) return t;

    std::vector<std::pair<std::size_t, BigRational>> nonzero = st.masses;
    std::sort(nonzero.begin(), nonzero.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    std::vector<BigRational> solved(N, 0);
    for (auto& [idx, v] : nonzero) solved[idx] = v;

    std::size_t since = 0;
    for (std::size_t i = st.next_index; i-- > 0;) {
        const RootSystem& ri = systems[i];
        BigRational s = m * st.a[i];
        if (!nonzero.empty()) {
            const unsigned chunks = std::min<unsigned>(threads, static_cast<unsigned>(nonzero.size()));
            std::vector<BigRational> part(chunks, 0);
            parallel_for(chunks, chunks, [&](std::size_t c) {
                for (std::size_t q = c; q < nonzero.size(); q += chunks) {
                    const auto& [j, mj] = nonzero[q];
                    BigInt r = counter.count(ri, systems[j]);
                    if (r != 0) part[c] += BigRational(r) * mj;
                }
            });
            for (auto& x : part) s -= x;
        }
        BigRational mi = s / BigRational(ri.aut_order());
        if (mi < 0)
            throw NegativeMassError(ri, "negative mass " + to_string(mi) + " for root system " + ri.str());
        solved[i] = mi;
        if (mi != 0) {
            nonzero.emplace_back(i, mi);
            st.masses.emplace_back(i, mi);
        }
        st.next_index = i;
        if (opts.checkpoint_every && opts.on_checkpoint && ++since >= opts.checkpoint_every) {
            since = 0;
            opts.on_checkpoint(st);
        }
        if (opts.progress && i % 10000 == 0)
            opts.progress("solved down to index " + std::to_string(i) + ", nonzero " + std::to_string(nonzero.size()));
    }
    if (opts.on_checkpoint) opts.on_checkpoint(st);
    for (std::size_t i = 0; i < N; ++i) t.entries[i].mass = solved[i];
    return t;
}

VerifyReport verify_total(const MassTable& t) {
    VerifyReport rep;
    if (!t.complete()) {
        rep.ok = false;
        rep.problems.push_back("table is partial (max_rank < dim)");
        return rep;
    }
    BigRational sum = 0;
    for (const auto& e : t.entries) {
        if (!e.mass) {
            rep.problems.push_back("missing mass for " + e.root_system.str());
            continue;
        }
        if (*e.mass < 0) rep.problems.push_back("negative mass for " + e.root_system.str());
        sum += *e.mass;
    }
    const BigRational expect = genus_mass(t.dim);
    if (sum != expect) rep.problems.push_back("sum of masses " + to_string(sum) + " differs from genus mass " + to_string(expect));
    rep.ok = rep.problems.empty();
    return rep;
}

}  // namespace latmass
