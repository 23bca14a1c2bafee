#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "csdict/tpchgen.hpp"

using namespace csdict;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::set<int64_t> column_values(const Relation& r, const char* col) {
    std::set<int64_t> out;
    for (int64_t v : r.column(col).values) out.insert(v);
    return out;
}

bool fk_holds(const Relation& child, const char* fk, const Relation& parent,
              const char* pk) {
    const std::set<int64_t> keys = column_values(parent, pk);
    for (int64_t v : child.column(fk).values)
        if (!keys.contains(v)) return false;
    return true;
}

} // namespace

TEST_CASE("cardinalities and fixed tables") {
    GenConfig cfg;
    cfg.seed = 1;
    cfg.scale_rows = 100;
    const Database db = generate(cfg);

    CHECK(db.rel("region").row_count() == 5);
    CHECK(db.rel("nation").row_count() == 25);
    CHECK(db.rel("supplier").row_count() == 100);
    CHECK(db.rel("part").row_count() == 200);
    CHECK(db.rel("partsupp").row_count() == 800);
    CHECK(db.rel("customer").row_count() == 150);
    CHECK(db.rel("orders").row_count() == 1500);
    const uint64_t li = db.rel("lineitem").row_count();
    CHECK(li >= 1500);
    CHECK(li <= 7 * 1500);

    CHECK(db.rel("region").distinct_count("r_name") == 5);
    // the case-study literal must be generable
    CHECK(db.rel("region").column("r_name").dict->lookup("MIDDLE EAST").has_value());
}

TEST_CASE("small-table cardinality is scale independent") {
    GenConfig cfg;
    cfg.scale_rows = 7;
    const Database db = generate(cfg);
    CHECK(db.rel("region").row_count() == 5);
    CHECK(db.rel("nation").row_count() == 25);
}

TEST_CASE("determinism: identical dumps under equal config") {
    namespace fs = std::filesystem;
    const fs::path a = fs::temp_directory_path() / "csdict_gen_a";
    const fs::path b = fs::temp_directory_path() / "csdict_gen_b";
    GenConfig cfg;
    cfg.seed = 1;
    cfg.scale_rows = 50;
    dump_tbl(generate(cfg), a.string());
    dump_tbl(generate(cfg), b.string());
    for (const char* name : tpch::kRelationNames) {
        const std::string fa = slurp(a / (std::string(name) + ".tbl"));
        CHECK(fa == slurp(b / (std::string(name) + ".tbl")));
        CHECK(!fa.empty());
    }
    // region.tbl has exactly 5 lines
    const std::string region = slurp(a / "region.tbl");
    CHECK(std::count(region.begin(), region.end(), '\n') == 5);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("referential integrity across all FK edges") {
    GenConfig cfg;
    cfg.seed = 3;
    cfg.scale_rows = 60;
    const Database db = generate(cfg);

    CHECK(fk_holds(db.rel("nation"), "n_regionkey", db.rel("region"), "r_regionkey"));
    CHECK(fk_holds(db.rel("supplier"), "s_nationkey", db.rel("nation"), "n_nationkey"));
    CHECK(fk_holds(db.rel("customer"), "c_nationkey", db.rel("nation"), "n_nationkey"));
    CHECK(fk_holds(db.rel("partsupp"), "ps_partkey", db.rel("part"), "p_partkey"));
    CHECK(fk_holds(db.rel("partsupp"), "ps_suppkey", db.rel("supplier"), "s_suppkey"));
    CHECK(fk_holds(db.rel("orders"), "o_custkey", db.rel("customer"), "c_custkey"));
    CHECK(fk_holds(db.rel("lineitem"), "l_orderkey", db.rel("orders"), "o_orderkey"));

    // lineitem -> partsupp is a compound edge
    std::set<std::pair<int64_t, int64_t>> ps;
    const Relation& partsupp = db.rel("partsupp");
    for (uint64_t t = 0; t < partsupp.row_count(); ++t)
        ps.emplace(partsupp.column("ps_partkey").values[t],
                   partsupp.column("ps_suppkey").values[t]);
    const Relation& lineitem = db.rel("lineitem");
    bool ok = true;
    for (uint64_t t = 0; t < lineitem.row_count(); ++t)
        ok = ok && ps.contains({lineitem.column("l_partkey").values[t],
                                lineitem.column("l_suppkey").values[t]});
    CHECK(ok);
}

TEST_CASE("dump then reload reproduces every cell") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "csdict_gen_rt";
    GenConfig cfg;
    cfg.seed = 9;
    cfg.scale_rows = 30;
    const Database db = generate(cfg);
    dump_tbl(db, dir.string());
    const Database back = load_dbgen_dir(dir.string(), HashFunctionId::JENKINS);
    for (const char* name : tpch::kRelationNames) {
        const Relation& a = db.rel(name);
        const Relation& b = back.rel(name);
        REQUIRE(a.row_count() == b.row_count());
        for (const Column& col : a.columns())
            for (uint64_t t = 0; t < a.row_count(); ++t)
                REQUIRE(a.get_value(col.name, TupleId{t}) ==
                        b.get_value(col.name, TupleId{t}));
    }
    fs::remove_all(dir);
}

TEST_CASE("load_dbgen_dir names the missing relation") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "csdict_gen_missing";
    GenConfig cfg;
    cfg.scale_rows = 5;
    dump_tbl(generate(cfg), dir.string());
    fs::remove(dir / "lineitem.tbl");
    CHECK_THROWS_WITH_AS(load_dbgen_dir(dir.string(), HashFunctionId::MMH),
                         doctest::Contains("lineitem"), ResourceError);
    fs::remove_all(dir);
}

TEST_CASE("dump_tbl rejects unusable directory") {
    GenConfig cfg;
    cfg.scale_rows = 1;
    const Database db = generate(cfg);
    CHECK_THROWS_AS(dump_tbl(db, ""), ResourceError);
}
