#include "latmass/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace latmass;

namespace {

TextTable round_trip(const TextTable& t, Format f) {
    std::stringstream ss;
    write_table(ss, t, f);
    return read_table(ss, f);
}

std::string emit(const TextTable& t, Format f) {
    std::ostringstream ss;
    write_table(ss, t, f);
    return ss.str();
}

}  // namespace

TEST_CASE("formats") {
    CHECK(parse_format("json") == Format::json);
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("tsv") == Format::tsv);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("tables survive every format") {
    TextTable t;
    t.columns = {"root_system", "mass", "note"};
    t.rows = {{"A1^2 A2", "3/7", "plain"}, {"0", "-1/2", "has, comma"}, {"E8", "1", "quote \" inside"}};
    CHECK(round_trip(t, Format::csv) == t);
    t.rows[1][2] = "no comma";
    t.rows[2][2] = "tab free";
    CHECK(round_trip(t, Format::tsv) == t);
    t.meta = {{"dim", 8}};
    CHECK(round_trip(t, Format::json) == t);
    TextTable bad = t;
    bad.rows[0][2] = "a\tb";
    std::ostringstream sink;
    CHECK_THROWS(write_table(sink, bad, Format::tsv));
}

TEST_CASE("mass tables parse back to the same output") {
    const MassTable m = solve_masses(16);
    const TextTable text = mass_table_text(m, false);
    CHECK(text.columns.front() == "root_system");
    CHECK(text.rows.size() == 2);
    CHECK(text.meta.at("dim") == 16);
    for (Format f : {Format::json, Format::csv, Format::tsv}) {
        std::stringstream ss;
        write_table(ss, text, f);
        const TextTable back = read_table(ss, f);
        const MassTable again = mass_table_from_text(back, 16);
        CHECK(emit(mass_table_text(again, false), f) == emit(text, f));
        CHECK(again.mass_of(RootSystem::parse("D16")) == m.mass_of(RootSystem::parse("D16")));
    }
    std::stringstream cs(emit(text, Format::csv));
    CHECK_THROWS(mass_table_from_text(read_table(cs, Format::csv)));
    std::stringstream js(emit(text, Format::json));
    CHECK_THROWS(mass_table_from_text(read_table(js, Format::json), 24));
}

TEST_CASE("partial tables list coefficients") {
    const MassTable m = solve_masses(24, SolveOptions{.max_rank = 1});
    const TextTable text = mass_table_text(m, true);
    CHECK(text.columns == std::vector<std::string>{"root_system", "a", "decimal"});
    REQUIRE(text.rows.size() == 2);
    CHECK(text.rows[1][1] == "65520/691");
    std::stringstream ss(emit(text, Format::json));
    const MassTable back = mass_table_from_text(read_table(ss, Format::json));
    CHECK_FALSE(back.complete());
    CHECK(back.entries[1].a == BigRational(65520, 691));
}

TEST_CASE("files are detected by content") {
    const auto dir = std::filesystem::temp_directory_path() / "latmass_io_test";
    std::filesystem::create_directories(dir);
    TextTable t;
    t.columns = {"x", "y"};
    t.rows = {{"1", "2"}};
    for (Format f : {Format::json, Format::csv, Format::tsv}) {
        const auto p = dir / "t.txt";
        {
            std::ofstream out(p);
            write_table(out, t, f);
        }
        TextTable back = read_table_file(p);
        back.meta = t.meta;
        CHECK(back == t);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("checkpoints") {
    SolverState st;
    st.a = {1, BigRational(65520, 691), BigRational(-3, 4)};
    st.next_index = 2;
    st.masses = {{2, BigRational(1, 9)}};
    const EnumerationFilters f{};
    const auto j = checkpoint_json(24, 24, f, st);
    const auto back = checkpoint_from_json(nlohmann::json::parse(j.dump()), 24, 24, f);
    REQUIRE(back);
    CHECK(back->a == st.a);
    CHECK(back->next_index == 2);
    CHECK(back->masses == st.masses);
    CHECK_FALSE(checkpoint_from_json(j, 32, 24, f));
    CHECK_FALSE(checkpoint_from_json(j, 24, 20, f));
    EnumerationFilters g = f;
    g.borcherds = !g.borcherds;
    CHECK_FALSE(checkpoint_from_json(j, 24, 24, g));
    auto broken = j;
    broken["next_index"] = 7;
    CHECK_THROWS(checkpoint_from_json(broken, 24, 24, f));

    const auto dir = std::filesystem::temp_directory_path() / "latmass_ckpt_test";
    const auto p = dir / "c.json";
    save_json_atomic(p, j);
    CHECK(load_json(p) == j);
    CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache directory resolution") {
    ::unsetenv("LATTICE_MASS_CACHE");
    CHECK_FALSE(cache_dir(std::nullopt));
    ::setenv("LATTICE_MASS_CACHE", "/tmp/from-env", 1);
    CHECK(*cache_dir(std::nullopt) == "/tmp/from-env");
    CHECK(*cache_dir(std::string("/tmp/from-flag")) == "/tmp/from-flag");
    ::unsetenv("LATTICE_MASS_CACHE");
    CHECK(cache_stem(24, 24, EnumerationFilters{}) != cache_stem(24, 20, EnumerationFilters{}));
}
