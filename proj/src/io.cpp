#include "latmass/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace latmass {

using nlohmann::json;

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "tsv") return Format::tsv;
    throw std::invalid_argument("unknown format '" + s + "' (json, csv, tsv)");
}

std::size_t TextTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::invalid_argument("table has no column '" + name + "'");
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') out.back() += '"', ++i;
            else if (c == '"') quoted = false;
            else out.back() += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quote in csv line");
    return out;
}

std::vector<std::string> split_tsv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) out.push_back(f);
    if (!line.empty() && line.back() == '\t') out.emplace_back();
    return out;
}

std::string weighted(const BigRational& m, const RootSystem& r) { return to_string(m * BigRational(r.weyl_order())); }

}  // namespace

json table_json(const TextTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json o = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r.at(i);
        rows.push_back(std::move(o));
    }
    return {{"meta", t.meta}, {"columns", t.columns}, {"rows", rows}};
}

void write_table(std::ostream& out, const TextTable& t, Format f) {
    if (f == Format::json) {
        out << table_json(t).dump(2) << "\n";
        return;
    }
    const char sep = f == Format::csv ? ',' : '\t';
    auto line = [&](const std::vector<std::string>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (f == Format::tsv && v[i].find_first_of("\t\n") != std::string::npos)
                throw std::invalid_argument("tab or newline inside a tsv field");
            if (i) out << sep;
            out << (f == Format::csv ? csv_field(v[i]) : v[i]);
        }
        out << "\n";
    };
    line(t.columns);
    for (const auto& r : t.rows) line(r);
}

TextTable read_table(std::istream& in, Format f) {
    TextTable t;
    if (f == Format::json) {
        const json doc = json::parse(in);
        t.meta = doc.value("meta", json::object());
        t.columns = doc.at("columns").get<std::vector<std::string>>();
        for (const auto& o : doc.at("rows")) {
            std::vector<std::string> r;
            for (const auto& c : t.columns) r.push_back(o.at(c).get<std::string>());
            t.rows.push_back(std::move(r));
        }
        return t;
    }
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = f == Format::csv ? split_csv(line) : split_tsv(line);
        if (header) {
            t.columns = std::move(fields);
            header = false;
            continue;
        }
        if (fields.size() != t.columns.size()) throw std::invalid_argument("row width differs from header: " + line);
        t.rows.push_back(std::move(fields));
    }
    if (header) throw std::invalid_argument("empty table");
    return t;
}

TextTable read_table_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    Format f = Format::csv;
    if (first != std::string::npos && text[first] == '{') f = Format::json;
    else if (text.substr(0, text.find('\n')).find('\t') != std::string::npos) f = Format::tsv;
    std::istringstream body(text);
    return read_table(body, f);
}

json filters_json(const EnumerationFilters& f) { return {{"borcherds", f.borcherds}, {"square_det_full", f.square_det_full}}; }

EnumerationFilters filters_from_json(const json& j) {
    EnumerationFilters f;
    f.borcherds = j.at("borcherds").get<bool>();
    f.square_det_full = j.at("square_det_full").get<bool>();
    return f;
}

TextTable mass_table_text(const MassTable& t, bool include_zero) {
    TextTable out;
    out.meta = {{"schema_version", kSchemaVersion}, {"kind", "mass_table"},      {"dim", t.dim},
                {"max_rank", t.max_rank},          {"filters", filters_json(t.filters)}, {"genus_mass", to_string(t.total)}};
    if (!t.complete()) {
        out.columns = {"root_system", "a", "decimal"};
        for (const auto& e : t.entries) out.rows.push_back({e.root_system.str(), to_string(e.a), to_decimal(e.a)});
        return out;
    }
    out.columns = {"root_system", "mass", "mass_times_weyl", "decimal"};
    for (const auto& e : t.entries) {
        const BigRational m = e.mass.value_or(0);
        if (m == 0 && !include_zero) continue;
        out.rows.push_back({e.root_system.str(), to_string(m), weighted(m, e.root_system), to_decimal(m)});
    }
    return out;
}

MassTable mass_table_from_text(const TextTable& t, std::optional<int> dim) {
    MassTable m;
    if (t.meta.contains("dim")) {
        if (t.meta.value("kind", "") != "mass_table") throw std::invalid_argument("not a mass table");
        if (t.meta.value("schema_version", 0) != kSchemaVersion) throw std::invalid_argument("unsupported schema version");
        m.dim = t.meta.at("dim").get<int>();
        if (dim && *dim != m.dim) throw std::invalid_argument("table dimension " + std::to_string(m.dim) + " differs from requested " + std::to_string(*dim));
        m.max_rank = t.meta.value("max_rank", m.dim);
        if (t.meta.contains("filters")) m.filters = filters_from_json(t.meta.at("filters"));
    } else {
        if (!dim) throw std::invalid_argument("table carries no dimension; pass it explicitly");
        m.dim = *dim;
        m.max_rank = *dim;
    }
    m.total = genus_mass(m.dim);
    const std::size_t rc = t.column("root_system");
    const bool partial = std::find(t.columns.begin(), t.columns.end(), "a") != t.columns.end();
    if (partial && m.complete()) throw std::invalid_argument("coefficient table marked as complete");
    const std::size_t vc = t.column(partial ? "a" : "mass");
    for (const auto& r : t.rows) {
        MassEntry e{RootSystem::parse(r.at(rc)), 0, std::nullopt};
        if (partial) e.a = parse_rational(r.at(vc));
        else e.mass = parse_rational(r.at(vc));
        m.entries.push_back(std::move(e));
    }
    return m;
}

TextTable odd_table_text(const OddMassTable& t, std::optional<int> only_dim) {
    TextTable out;
    out.meta = {{"schema_version", kSchemaVersion}, {"kind", "odd_mass_table"}, {"base", t.base}};
    out.columns = {"dimension", "root_system", "mass", "odd_mass", "mass_times_weyl", "decimal"};
    for (const auto& [n, systems] : t.by_dim) {
        if (only_dim && n != *only_dim) continue;
        for (const auto& [r, e] : systems) {
            const BigRational odd = e.mass - t.even_mass(n, r);
            out.rows.push_back({std::to_string(n), r.str(), to_string(e.mass), to_string(odd), weighted(e.mass, r), to_decimal(e.mass)});
        }
    }
    return out;
}

json checkpoint_json(int dim, int max_rank, const EnumerationFilters& f, const SolverState& st) {
    json a = json::array();
    for (const auto& x : st.a) a.push_back(to_string(x));
    json masses = json::array();
    for (const auto& [i, m] : st.masses) masses.push_back(json::array({i, to_string(m)}));
    return {{"schema_version", kSchemaVersion},
            {"kind", "checkpoint"},
            {"dim", dim},
            {"max_rank", max_rank},
            {"filters", filters_json(f)},
            {"next_index", st.next_index},
            {"a", a},
            {"masses", masses}};
}

std::optional<SolverState> checkpoint_from_json(const json& j, int dim, int max_rank, const EnumerationFilters& f) {
    if (j.value("kind", "") != "checkpoint" || j.value("schema_version", 0) != kSchemaVersion) return std::nullopt;
    if (j.value("dim", -1) != dim || j.value("max_rank", -1) != max_rank) return std::nullopt;
    const EnumerationFilters g = filters_from_json(j.at("filters"));
    if (g.borcherds != f.borcherds || g.square_det_full != f.square_det_full) return std::nullopt;
    SolverState st;
    for (const auto& x : j.at("a")) st.a.push_back(parse_rational(x.get<std::string>()));
    st.next_index = j.at("next_index").get<std::size_t>();
    for (const auto& p : j.at("masses")) st.masses.emplace_back(p.at(0).get<std::size_t>(), parse_rational(p.at(1).get<std::string>()));
    if (st.next_index > st.a.size()) throw std::invalid_argument("corrupt checkpoint: next_index out of range");
    return st;
}

json load_json(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return json::parse(in);
}

void save_json_atomic(const std::filesystem::path& p, const json& j) {
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    const auto tmp = std::filesystem::path(p.string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << j.dump() << "\n";
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

std::optional<std::filesystem::path> cache_dir(const std::optional<std::string>& flag) {
    if (flag && !flag->empty()) return std::filesystem::path(*flag);
    if (const char* env = std::getenv("LATTICE_MASS_CACHE"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

std::string cache_stem(int dim, int max_rank, const EnumerationFilters& f) {
    return "d" + std::to_string(dim) + "-r" + std::to_string(max_rank) + "-f" + (f.borcherds ? "1" : "0") + (f.square_det_full ? "1" : "0");
}

}  // namespace latmass
