#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "csdict/colstore.hpp"
#include "csdict/error.hpp"

namespace csdict {

// splitmix64. The generator is pinned to this exact mix so any
// implementation reproduces identical streams from the same seed.
class Prng {
public:
    explicit Prng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi] via modulo; bias is irrelevant at these ranges
    // and the reduction must stay identical across platforms.
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + next() % (hi - lo + 1); }

    int64_t srange(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(next() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    uint64_t state_;
};

struct GenConfig {
    uint64_t seed = 1;
    uint64_t scale_rows = 100; // supplier row count; everything else scales off it
    HashFunctionId out_hash = HashFunctionId::MMH;
};

struct Database {
    std::map<std::string, Relation> relations;
    HashFunctionId hash_fn = HashFunctionId::MMH;

    Relation& rel(const std::string& name) {
        auto it = relations.find(name);
        if (it == relations.end())
            throw ContractViolation("unknown relation " + name);
        return it->second;
    }
    const Relation& rel(const std::string& name) const {
        auto it = relations.find(name);
        if (it == relations.end())
            throw ContractViolation("unknown relation " + name);
        return it->second;
    }
};

namespace tpch {

inline const std::array<const char*, 8> kRelationNames = {
    "region", "nation", "supplier", "customer",
    "part",   "partsupp", "orders", "lineitem"};

inline const std::array<const char*, 5> kRegionNames = {
    "AFRICA", "AMERICA", "ASIA", "EUROPE", "MIDDLE EAST"};

struct NationDef { const char* name; int64_t regionkey; };
inline const std::array<NationDef, 25> kNations = {{
    {"ALGERIA", 0},    {"ARGENTINA", 1}, {"BRAZIL", 1},     {"CANADA", 1},
    {"EGYPT", 4},      {"ETHIOPIA", 0},  {"FRANCE", 3},     {"GERMANY", 3},
    {"INDIA", 2},      {"INDONESIA", 2}, {"IRAN", 4},       {"IRAQ", 4},
    {"JAPAN", 2},      {"JORDAN", 4},    {"KENYA", 0},      {"MOROCCO", 0},
    {"MOZAMBIQUE", 0}, {"PERU", 1},      {"CHINA", 2},      {"ROMANIA", 3},
    {"SAUDI ARABIA", 4}, {"VIETNAM", 2}, {"RUSSIA", 3},     {"UNITED KINGDOM", 3},
    {"UNITED STATES", 1}}};

inline const std::array<const char*, 6> kTypeSyllable1 = {
    "STANDARD", "SMALL", "MEDIUM", "LARGE", "ECONOMY", "PROMO"};
inline const std::array<const char*, 5> kTypeSyllable2 = {
    "ANODIZED", "BURNISHED", "PLATED", "POLISHED", "BRUSHED"};
inline const std::array<const char*, 5> kTypeSyllable3 = {
    "TIN", "NICKEL", "BRASS", "STEEL", "COPPER"};

inline const std::array<const char*, 8> kContainers = {
    "SM CASE", "SM BOX",  "MED BAG", "MED BOX",
    "LG CASE", "LG DRUM", "JUMBO PKG", "WRAP JAR"};

inline const std::array<const char*, 5> kSegments = {
    "AUTOMOBILE", "BUILDING", "FURNITURE", "MACHINERY", "HOUSEHOLD"};

inline const std::array<const char*, 5> kPriorities = {
    "1-URGENT", "2-HIGH", "3-MEDIUM", "4-NOT SPECIFIED", "5-LOW"};

inline const std::array<const char*, 4> kInstructions = {
    "DELIVER IN PERSON", "COLLECT COD", "NONE", "TAKE BACK RETURN"};

inline const std::array<const char*, 7> kModes = {
    "REG AIR", "AIR", "RAIL", "SHIP", "TRUCK", "MAIL", "FOB"};

inline const std::array<const char*, 5> kColors = {
    "almond", "antique", "aquamarine", "azure", "beige"};

// Seeded word pool for comment/address text (stands in for the official
// dbgen grammar; documented divergence).
inline const std::array<const char*, 24> kWords = {
    "packages", "deposits", "accounts",  "requests", "instructions", "theodolites",
    "pinto",    "beans",    "foxes",     "ideas",    "platelets",    "excuses",
    "asymptotes", "courts", "dolphins",  "multipliers", "sauternes", "warthogs",
    "frays",    "braids",   "hockey",    "players",  "dependencies", "waters"};

inline std::string words(Prng& rng, uint64_t lo, uint64_t hi) {
    const uint64_t n = rng.range(lo, hi);
    std::string s;
    for (uint64_t i = 0; i < n; ++i) {
        if (i) s += ' ';
        s += kWords[rng.range(0, kWords.size() - 1)];
    }
    return s;
}

inline std::string numbered(const char* prefix, uint64_t n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%09llu", static_cast<unsigned long long>(n));
    return std::string(prefix) + buf;
}

inline std::string phone(Prng& rng, int64_t nationkey) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld-%llu-%llu-%llu",
                  static_cast<long long>(nationkey + 10),
                  static_cast<unsigned long long>(rng.range(100, 999)),
                  static_cast<unsigned long long>(rng.range(100, 999)),
                  static_cast<unsigned long long>(rng.range(1000, 9999)));
    return buf;
}

// Suppliers of a part, dbgen-style spread over the supplier key space.
inline int64_t part_supplier(uint64_t partkey, uint64_t j, uint64_t supplier_count) {
    const uint64_t step = std::max<uint64_t>(1, supplier_count / 4);
    return static_cast<int64_t>((partkey + j * step) % supplier_count) + 1;
}

inline std::vector<std::pair<std::string, ColumnKind>> schema(const std::string& rel) {
    using K = ColumnKind;
    if (rel == "region")
        return {{"r_regionkey", K::INT64}, {"r_name", K::DICT_STRING},
                {"r_comment", K::DICT_STRING}};
    if (rel == "nation")
        return {{"n_nationkey", K::INT64}, {"n_name", K::DICT_STRING},
                {"n_regionkey", K::INT64}, {"n_comment", K::DICT_STRING}};
    if (rel == "supplier")
        return {{"s_suppkey", K::INT64},   {"s_name", K::DICT_STRING},
                {"s_address", K::DICT_STRING}, {"s_nationkey", K::INT64},
                {"s_phone", K::DICT_STRING},   {"s_acctbal", K::DECIMAL_CENTS},
                {"s_comment", K::DICT_STRING}};
    if (rel == "customer")
        return {{"c_custkey", K::INT64},   {"c_name", K::DICT_STRING},
                {"c_address", K::DICT_STRING}, {"c_nationkey", K::INT64},
                {"c_phone", K::DICT_STRING},   {"c_acctbal", K::DECIMAL_CENTS},
                {"c_mktsegment", K::DICT_STRING}, {"c_comment", K::DICT_STRING}};
    if (rel == "part")
        return {{"p_partkey", K::INT64},  {"p_name", K::DICT_STRING},
                {"p_mfgr", K::DICT_STRING}, {"p_brand", K::DICT_STRING},
                {"p_type", K::DICT_STRING}, {"p_size", K::INT64},
                {"p_container", K::DICT_STRING},
                {"p_retailprice", K::DECIMAL_CENTS}, {"p_comment", K::DICT_STRING}};
    if (rel == "partsupp")
        return {{"ps_partkey", K::INT64}, {"ps_suppkey", K::INT64},
                {"ps_availqty", K::INT64}, {"ps_supplycost", K::DECIMAL_CENTS},
                {"ps_comment", K::DICT_STRING}};
    if (rel == "orders")
        return {{"o_orderkey", K::INT64},    {"o_custkey", K::INT64},
                {"o_orderstatus", K::DICT_STRING}, {"o_totalprice", K::DECIMAL_CENTS},
                {"o_orderdate", K::DATE_DAYS},
                {"o_orderpriority", K::DICT_STRING}, {"o_clerk", K::DICT_STRING},
                {"o_shippriority", K::INT64}, {"o_comment", K::DICT_STRING}};
    if (rel == "lineitem")
        return {{"l_orderkey", K::INT64},  {"l_partkey", K::INT64},
                {"l_suppkey", K::INT64},   {"l_linenumber", K::INT64},
                {"l_quantity", K::INT64},  {"l_extendedprice", K::DECIMAL_CENTS},
                {"l_discount", K::DECIMAL_CENTS}, {"l_tax", K::DECIMAL_CENTS},
                {"l_returnflag", K::DICT_STRING}, {"l_linestatus", K::DICT_STRING},
                {"l_shipdate", K::DATE_DAYS}, {"l_commitdate", K::DATE_DAYS},
                {"l_receiptdate", K::DATE_DAYS},
                {"l_shipinstruct", K::DICT_STRING}, {"l_shipmode", K::DICT_STRING},
                {"l_comment", K::DICT_STRING}};
    throw ContractViolation("unknown relation " + rel);
}

} // namespace tpch

inline Database generate(const GenConfig& cfg) {
    if (cfg.scale_rows < 1)
        throw ContractViolation("generate: scale_rows must be >= 1");
    const uint64_t S = cfg.scale_rows;          // supplier
    const uint64_t P = 2 * S;                   // part
    const uint64_t C = std::max<uint64_t>(1, (3 * S) / 2); // customer
    const uint64_t O = 10 * C;                  // orders

    Database db;
    db.hash_fn = cfg.out_hash;
    for (const char* name : tpch::kRelationNames)
        db.relations.emplace(name, Relation(name, tpch::schema(name), cfg.out_hash));

    Prng rng(cfg.seed);
    const int64_t date_lo = *parse_date_days("1992-01-01");
    const int64_t date_hi = *parse_date_days("1998-08-02");

    Relation& region = db.rel("region");
    for (int64_t k = 0; k < 5; ++k)
        region.append_row({k, std::string(tpch::kRegionNames[k]),
                           tpch::words(rng, 4, 10)});

    Relation& nation = db.rel("nation");
    for (int64_t k = 0; k < 25; ++k)
        nation.append_row({k, std::string(tpch::kNations[k].name),
                           tpch::kNations[k].regionkey, tpch::words(rng, 4, 10)});

    Relation& supplier = db.rel("supplier");
    for (uint64_t k = 1; k <= S; ++k) {
        const int64_t nationkey = rng.srange(0, 24);
        supplier.append_row({static_cast<int64_t>(k), tpch::numbered("Supplier#", k),
                             tpch::words(rng, 2, 4), nationkey,
                             tpch::phone(rng, nationkey),
                             rng.srange(-99999, 999999), tpch::words(rng, 5, 12)});
    }

    Relation& customer = db.rel("customer");
    for (uint64_t k = 1; k <= C; ++k) {
        const int64_t nationkey = rng.srange(0, 24);
        customer.append_row(
            {static_cast<int64_t>(k), tpch::numbered("Customer#", k),
             tpch::words(rng, 2, 4), nationkey, tpch::phone(rng, nationkey),
             rng.srange(-99999, 999999),
             std::string(tpch::kSegments[rng.range(0, 4)]), tpch::words(rng, 5, 12)});
    }

    Relation& part = db.rel("part");
    for (uint64_t k = 1; k <= P; ++k) {
        std::string type = tpch::kTypeSyllable1[rng.range(0, 5)];
        type += ' ';
        type += tpch::kTypeSyllable2[rng.range(0, 4)];
        type += ' ';
        type += tpch::kTypeSyllable3[rng.range(0, 4)];
        std::string name = tpch::kColors[rng.range(0, 4)];
        name += ' ';
        name += tpch::kColors[rng.range(0, 4)];
        char brand[16];
        std::snprintf(brand, sizeof brand, "Brand#%llu%llu",
                      static_cast<unsigned long long>(rng.range(1, 5)),
                      static_cast<unsigned long long>(rng.range(1, 5)));
        char mfgr[24];
        std::snprintf(mfgr, sizeof mfgr, "Manufacturer#%llu",
                      static_cast<unsigned long long>(rng.range(1, 5)));
        part.append_row({static_cast<int64_t>(k), std::move(name), std::string(mfgr),
                         std::string(brand), std::move(type), rng.srange(1, 50),
                         std::string(tpch::kContainers[rng.range(0, 7)]),
                         rng.srange(90000, 200000), tpch::words(rng, 3, 8)});
    }

    Relation& partsupp = db.rel("partsupp");
    for (uint64_t pk = 1; pk <= P; ++pk) {
        for (uint64_t j = 0; j < 4; ++j) {
            partsupp.append_row({static_cast<int64_t>(pk),
                                 tpch::part_supplier(pk, j, S), rng.srange(1, 9999),
                                 rng.srange(100, 100000), tpch::words(rng, 5, 12)});
        }
    }

    Relation& orders = db.rel("orders");
    Relation& lineitem = db.rel("lineitem");
    const char* statuses = "OFP";
    const char* flags = "RAN";
    for (uint64_t ok = 1; ok <= O; ++ok) {
        const int64_t orderdate = rng.srange(date_lo, date_hi);
        orders.append_row({static_cast<int64_t>(ok),
                           static_cast<int64_t>(rng.range(1, C)),
                           std::string(1, statuses[rng.range(0, 2)]),
                           rng.srange(10000, 40000000), orderdate,
                           std::string(tpch::kPriorities[rng.range(0, 4)]),
                           tpch::numbered("Clerk#", rng.range(1, std::max<uint64_t>(1, S))),
                           int64_t{0}, tpch::words(rng, 5, 12)});
        const uint64_t lines = rng.range(1, 7);
        for (uint64_t ln = 1; ln <= lines; ++ln) {
            const uint64_t pk = rng.range(1, P);
            const int64_t sk = tpch::part_supplier(pk, rng.range(0, 3), S);
            const int64_t ship = orderdate + rng.srange(1, 121);
            lineitem.append_row(
                {static_cast<int64_t>(ok), static_cast<int64_t>(pk), sk,
                 static_cast<int64_t>(ln), rng.srange(1, 50),
                 rng.srange(90000, 10000000), rng.srange(0, 10), rng.srange(0, 8),
                 std::string(1, flags[rng.range(0, 2)]),
                 std::string(1, "OF"[rng.range(0, 1)]), ship,
                 ship + rng.srange(-30, 30), ship + rng.srange(1, 30),
                 std::string(tpch::kInstructions[rng.range(0, 3)]),
                 std::string(tpch::kModes[rng.range(0, 6)]), tpch::words(rng, 4, 10)});
        }
    }

    return db;
}

// Writes one .tbl per relation in load_tbl's exact external format.
inline std::vector<std::string> dump_tbl(const Database& db, const std::string& directory) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (directory.empty() || (!fs::is_directory(directory, ec) &&
                              !fs::create_directories(directory, ec)))
        throw ResourceError("dump_tbl: cannot use directory '" + directory + "'");
    std::vector<std::string> written;
    for (const char* name : tpch::kRelationNames) {
        const Relation& rel = db.rel(name);
        const std::string path = (fs::path(directory) / (std::string(name) + ".tbl")).string();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ResourceError("dump_tbl: cannot write " + path);
        for (uint64_t t = 0; t < rel.row_count(); ++t)
            out << rel.format_row_tbl(TupleId{t}) << '\n';
        if (!out) throw ResourceError("dump_tbl: write failed on " + path);
        written.push_back(path);
    }
    return written;
}

inline Database load_dbgen_dir(const std::string& directory, HashFunctionId hash_fn) {
    namespace fs = std::filesystem;
    Database db;
    db.hash_fn = hash_fn;
    for (const char* name : tpch::kRelationNames) {
        const fs::path path = fs::path(directory) / (std::string(name) + ".tbl");
        std::error_code ec;
        if (!fs::exists(path, ec))
            throw ResourceError(std::string("load_dbgen_dir: missing relation ") + name +
                                " (" + path.string() + ")");
        auto [it, _] = db.relations.emplace(name, Relation(name, tpch::schema(name), hash_fn));
        load_tbl(path.string(), it->second);
    }
    return db;
}

} // namespace csdict
