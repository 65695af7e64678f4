#pragma once

#include "latmass/mass.hpp"
#include "latmass/reduce.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace latmass {

inline constexpr int kSchemaVersion = 1;

enum class Format { json, csv, tsv };
Format parse_format(const std::string& s);   // throws std::invalid_argument

// Column-ordered rows of strings plus free-form metadata (JSON only).
struct TextTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json meta = nlohmann::json::object();

    bool operator==(const TextTable&) const = default;
    std::size_t column(const std::string& name) const;   // throws when missing
};

nlohmann::json table_json(const TextTable& t);
void write_table(std::ostream& out, const TextTable& t, Format f);
TextTable read_table(std::istream& in, Format f);
TextTable read_table_file(const std::filesystem::path& p);   // format from content

nlohmann::json filters_json(const EnumerationFilters& f);
EnumerationFilters filters_from_json(const nlohmann::json& j);

TextTable mass_table_text(const MassTable& t, bool include_zero);
// Rebuilds a table from its emitted form; dim must be given when meta is absent (csv/tsv).
MassTable mass_table_from_text(const TextTable& t, std::optional<int> dim = std::nullopt);

TextTable odd_table_text(const OddMassTable& t, std::optional<int> only_dim = std::nullopt);

nlohmann::json checkpoint_json(int dim, int max_rank, const EnumerationFilters& f, const SolverState& st);
// nullopt when the checkpoint belongs to a different configuration
std::optional<SolverState> checkpoint_from_json(const nlohmann::json& j, int dim, int max_rank, const EnumerationFilters& f);

nlohmann::json load_json(const std::filesystem::path& p);
void save_json_atomic(const std::filesystem::path& p, const nlohmann::json& j);

// --cache flag, else LATTICE_MASS_CACHE, else none
std::optional<std::filesystem::path> cache_dir(const std::optional<std::string>& flag);
std::string cache_stem(int dim, int max_rank, const EnumerationFilters& f);

}  // namespace latmass
