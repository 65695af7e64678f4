#include "latmass/embed.hpp"
#include "latmass/io.hpp"
#include "latmass/mass.hpp"
#include "latmass/reduce.hpp"
#include "latmass/siegel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace latmass;
namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConsistency = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format = "json";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string cache;
    bool no_filters = false;
    std::size_t checkpoint_every = 0;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "json, csv or tsv")->check(CLI::IsMember({"json", "csv", "tsv"}));
    app->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--cache", c.cache, "cache directory (overrides LATTICE_MASS_CACHE)");
    app->add_flag("--no-filters", c.no_filters, "disable the a-priori enumeration filters");
    app->add_option("--checkpoint-every", c.checkpoint_every, "persist solver state every N root systems");
}

EnumerationFilters filters_of(const Common& c) {
    EnumerationFilters f;
    if (c.no_filters) f.borcherds = f.square_det_full = false;
    return f;
}

void check_dim(int dim) {
    if (dim != 8 && dim != 16 && dim != 24 && dim != 32) throw ConfigError("--dim must be one of 8, 16, 24, 32");
}

void emit(const TextTable& t, const Common& c) { write_table(std::cout, t, parse_format(c.format)); }

TextTable single_row(std::vector<std::string> cols, std::vector<std::string> row) {
    TextTable t;
    t.meta = {{"schema_version", kSchemaVersion}};
    t.columns = std::move(cols);
    t.rows.push_back(std::move(row));
    return t;
}

MassTable load_or_solve(int dim, int max_rank, const Common& c) {
    check_dim(dim);
    if (max_rank < 0 || max_rank > dim) throw ConfigError("--max-rank must lie in 0..dim");
    const EnumerationFilters f = filters_of(c);
    const auto dir = cache_dir(c.cache.empty() ? std::nullopt : std::optional<std::string>(c.cache));
    const std::string stem = cache_stem(dim, max_rank, f);
    std::optional<fs::path> table_file, ckpt_file;
    if (dir) {
        table_file = *dir / ("mass-" + stem + ".json");
        ckpt_file = *dir / ("checkpoint-" + stem + ".json");
    }
    if (table_file && fs::exists(*table_file)) {
        try {
            const TextTable t = read_table_file(*table_file);
            const auto& m = t.meta;
            if (m.value("schema_version", 0) == kSchemaVersion && m.value("max_rank", -1) == max_rank && m.contains("filters")) {
                const EnumerationFilters g = filters_from_json(m.at("filters"));
                if (g.borcherds == f.borcherds && g.square_det_full == f.square_det_full) {
                    std::cerr << "using cached table " << table_file->string() << "\n";
                    return mass_table_from_text(t, dim);
                }
            }
            std::cerr << "cache entry does not match the configuration; recomputing\n";
        } catch (const std::exception& e) {
            std::cerr << "ignoring unreadable cache entry: " << e.what() << "\n";
        }
    }

    SolveOptions o;
    o.max_rank = max_rank;
    o.filters = f;
    o.threads = c.threads;
    o.progress = [](const std::string& s) { std::cerr << s << "\n"; };
    if (ckpt_file) {
        if (fs::exists(*ckpt_file)) {
            try {
                o.resume = checkpoint_from_json(load_json(*ckpt_file), dim, max_rank, f);
                if (o.resume) std::cerr << "resuming from " << ckpt_file->string() << " at index " << o.resume->next_index << "\n";
            } catch (const std::exception& e) {
                std::cerr << "ignoring unreadable checkpoint: " << e.what() << "\n";
            }
        }
        o.checkpoint_every = c.checkpoint_every;
        o.on_checkpoint = [&](const SolverState& st) { save_json_atomic(*ckpt_file, checkpoint_json(dim, max_rank, f, st)); };
    } else if (c.checkpoint_every) {
        std::cerr << "--checkpoint-every ignored: no cache directory (use --cache or LATTICE_MASS_CACHE)\n";
    }
    const auto t0 = std::chrono::steady_clock::now();
    MassTable t = solve_masses(dim, o);
    std::cerr << "solved dim " << dim << " in " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    if (table_file && t.complete()) save_json_atomic(*table_file, table_json(mass_table_text(t, true)));
    return t;
}

void require_verified(const MassTable& t) {
    const VerifyReport r = verify_total(t);
    if (r.ok) return;
    for (const auto& p : r.problems) std::cerr << "verify: " << p << "\n";
    throw ConsistencyError("mass table failed verification");
}

HalfIntegralMatrix gram_from_text(const std::string& text) {
    const HalfIntegralMatrix g = HalfIntegralMatrix::parse(text);
    std::vector<std::vector<long>> rows;
    for (const auto& r : g.entries()) {
        rows.emplace_back();
        for (const auto& x : r) {
            if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw ConfigError("Gram matrix entries must be integers");
            rows.back().push_back(x.get_num().get_si());
        }
    }
    return HalfIntegralMatrix::from_gram(rows);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// multiples of 8 default to their own even genus
int default_base(int n) {
    if (n % 8 == 0) return n;
    return n <= 22 ? 24 : 32;
}

int run(int argc, char** argv) {
    CLI::App app{"Masses of even unimodular lattices with prescribed root system"};
    app.require_subcommand(1);
    Common c;

    int dim = 0, base = 0, max_rank = -1;
    bool all = false, verify = false;
    std::string from_table, gram, gram_file, root_text, x_text, source, target;
    long p = 0;

    auto* mass = app.add_subcommand("mass", "solve for m(R) over all root systems");
    mass->add_option("--dim", dim, "8, 16, 24 or 32")->required();
    mass->add_option("--max-rank", max_rank, "largest rank enumerated (partial tables list a(R) only)");
    mass->add_flag("--all", all, "include zero masses");
    mass->add_flag("--verify", verify, "check the masses sum to the genus mass");
    add_common(mass, c);

    auto* coeff = app.add_subcommand("coeff", "average representation number a(N)");
    coeff->add_option("root_system", root_text, "root system such as \"A1^2 D4\"");
    coeff->add_option("--gram", gram_file, "file holding an even Gram matrix");
    coeff->add_option("--dim", dim, "genus dimension 8k")->required();
    add_common(coeff, c);

    auto* reduce = app.add_subcommand("reduce", "masses of unimodular lattices without norm-1 vectors");
    reduce->add_option("--base", base, "even dimension 8k the table comes from")->default_val(24);
    reduce->add_option("--dim", dim, "only this reduced dimension");
    reduce->add_option("--from-table", from_table, "mass table emitted by 'mass'");
    add_common(reduce, c);

    auto* bounds = app.add_subcommand("bounds", "class number lower bounds");
    bounds->add_option("--dim", dim, "lattice dimension")->required();
    bounds->add_option("--base", base, "even dimension 8k used for the reduction");
    bounds->add_option("--from-table", from_table, "mass table emitted by 'mass'");
    add_common(bounds, c);

    auto* emb = app.add_subcommand("emb", "number of embeddings r(target, source)");
    emb->add_option("source", source)->required();
    emb->add_option("target", target)->required();
    add_common(emb, c);

    auto* siegel = app.add_subcommand("siegel", "local factor F_p(B; X)");
    siegel->add_option("--p", p, "prime")->required();
    siegel->add_option("--gram", gram, "half-integral matrix B, e.g. \"(4)\" or \"1 -1/2; -1/2 1\"")->required();
    siegel->add_option("--x", x_text, "rational X")->required();
    add_common(siegel, c);

    auto* ver = app.add_subcommand("verify", "solve and check consistency");
    ver->add_option("--dim", dim, "8, 16, 24 or 32")->required();
    add_common(ver, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    if (*mass) {
        MassTable t = load_or_solve(dim, max_rank < 0 ? dim : max_rank, c);
        if (verify) require_verified(t);
        emit(mass_table_text(t, all), c);
    } else if (*coeff) {
        if (dim <= 0 || dim % 8) throw ConfigError("--dim must be a positive multiple of 8");
        if (root_text.empty() == gram_file.empty()) throw ConfigError("give either a root system or --gram");
        BigRational a;
        std::string input;
        if (!gram_file.empty()) {
            const HalfIntegralMatrix b = gram_from_text(slurp(gram_file));
            if (!b.positive_definite()) throw ConfigError("Gram matrix is not positive definite");
            a = a_average(b, dim);
            input = gram_file;
        } else {
            const RootSystem r = RootSystem::parse(root_text);
            if (r.has_z()) throw ConfigError("Z components are not even");
            if (r.rank() > dim) throw ConfigError("rank exceeds dimension");
            a = a_average(r, dim);
            input = r.str();
        }
        emit(single_row({"input", "dim", "a", "decimal"}, {input, std::to_string(dim), to_string(a), to_decimal(a)}), c);
    } else if (*reduce || *bounds) {
        if (*bounds && !*bounds->get_option("--base")) base = default_base(dim);
        check_dim(base);
        MassTable t = from_table.empty() ? load_or_solve(base, base, c) : mass_table_from_text(read_table_file(from_table), base);
        if (!t.complete()) throw ConfigError("reduction needs a full table (max_rank = dim)");
        require_verified(t);
        if (*reduce) {
            const OddMassTable o = reduce_masses(t);
            if (*reduce->get_option("--dim") && (dim < 0 || dim > base - 2)) throw ConfigError("--dim must lie in 0..base-2");
            emit(odd_table_text(o, *reduce->get_option("--dim") ? std::optional<int>(dim) : std::nullopt), c);
        } else {
            TextTable out;
            out.meta = {{"schema_version", kSchemaVersion}, {"kind", "class_bounds"}, {"base", base}};
            out.columns = {"dimension", "parity", "bound", "root_systems"};
            if (dim == base) {
                const ClassBound b = even_class_bound(t);
                out.rows.push_back({std::to_string(dim), "even", b.bound.get_str(), std::to_string(b.root_systems)});
            } else if (dim >= 1 && dim <= base - 2) {
                const OddMassTable o = reduce_masses(t);
                const ClassBound b = class_lower_bound(o, dim);
                out.rows.push_back({std::to_string(dim), "odd", b.bound.get_str(), std::to_string(b.root_systems)});
                if (dim % 8 == 0) {
                    BigInt eb = 0;
                    std::size_t er = 0;
                    for (const auto& [r, m] : o.even.at(dim)) {
                        if (m == 0) continue;
                        ++er;
                        eb += mod_ceiling(m * BigRational(w_prime(r, dim)));
                    }
                    out.rows.push_back({std::to_string(dim), "even", eb.get_str(), std::to_string(er)});
                }
            } else {
                throw ConfigError("--dim must be base or lie in 1..base-2");
            }
            emit(out, c);
        }
    } else if (*emb) {
        const RootSystem s = RootSystem::parse(source), tg = RootSystem::parse(target);
        if (s.has_z() || tg.has_z()) throw ConfigError("embeddings are defined for A, D, E components only");
        emit(single_row({"source", "target", "count"}, {s.str(), tg.str(), rep_count(s, tg).get_str()}), c);
    } else if (*siegel) {
        if (!is_prime(p)) throw ConfigError("--p must be prime");
        const HalfIntegralMatrix b = HalfIntegralMatrix::parse(gram);
        if (!b.positive_definite()) throw ConfigError("B must be positive definite");
        const BigRational x = parse_rational(x_text);
        const JordanDecomposition jd = jordan_decompose(b, p);
        const BigRational v = f_p_eval(jd, x);
        const auto poly = f_p_polynomial(jd);
        emit(single_row({"p", "x", "value", "degree"}, {std::to_string(p), to_string(x), to_string(v), std::to_string(poly.size() - 1)}), c);
    } else if (*ver) {
        MassTable t = load_or_solve(dim, dim, c);
        const VerifyReport r = verify_total(t);
        TextTable out;
        out.meta = {{"schema_version", kSchemaVersion}, {"kind", "verify"}, {"dim", dim}};
        out.columns = {"check", "status", "detail"};
        out.rows.push_back({"sum_equals_genus_mass", r.ok ? "pass" : "fail", to_string(t.total)});
        for (const auto& pr : r.problems) out.rows.push_back({"problem", "fail", pr});
        const ClassBound b = even_class_bound(t);
        out.rows.push_back({"class_bound", "info", b.bound.get_str()});
        out.rows.push_back({"nonzero_masses", "info", std::to_string(t.nonzero_count())});
        emit(out, c);
        if (!r.ok) return kExitConsistency;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const NegativeMassError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const PurityError& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::logic_error& e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kExitConsistency;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
