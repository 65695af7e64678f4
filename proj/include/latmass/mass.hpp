#pragma once

#include "latmass/embed.hpp"
#include "latmass/roots.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace latmass {

BigRational genus_mass(int dim);

struct MassEntry {
    RootSystem root_system;
    BigRational a;                      // a(R) for the genus
    std::optional<BigRational> mass;    // absent in partial (max_rank < dim) tables
};

struct MassTable {
    int dim = 0;
    int max_rank = 0;
    EnumerationFilters filters;
    BigRational total;                  // genus mass
    std::vector<MassEntry> entries;     // enumeration order
    bool complete() const { return max_rank == dim; }
    const MassEntry* find(const RootSystem& r) const;
    BigRational mass_of(const RootSystem& r) const;   // 0 when absent
    std::size_t nonzero_count() const;
};

struct NegativeMassError : std::runtime_error {
    RootSystem root_system;
    NegativeMassError(const RootSystem& r, const std::string& what) : std::runtime_error(what), root_system(r) {}
};

// Resumable solver state: coefficients, and masses found so far for indices >= next_index.
struct SolverState {
    std::vector<BigRational> a;
    std::size_t next_index = 0;                               // entries [next_index, N) are solved
    std::vector<std::pair<std::size_t, BigRational>> masses;  // nonzero solved masses
};

struct SolveOptions {
    int max_rank = -1;   // -1: dim
    EnumerationFilters filters;
    unsigned threads = 1;
    EmbeddingCounter* counter = nullptr;   // default: process-wide counter
    std::size_t checkpoint_every = 0;
    std::function<void(const SolverState&)> on_checkpoint;
    std::optional<SolverState> resume;
    std::function<void(const std::string&)> progress;
};

std::vector<BigRational> compute_coefficients(const std::vector<RootSystem>& systems, int dim, unsigned threads);
MassTable solve_masses(int dim, const SolveOptions& opts = {});

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> problems;
};
VerifyReport verify_total(const MassTable& t);

}  // namespace latmass
