#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "csdict/colstore.hpp"
#include "csdict/costmodel.hpp"
#include "csdict/error.hpp"
#include "csdict/tpchgen.hpp"

namespace csdict {

// Sorted, strictly increasing tuple ids.
using TidList = std::vector<TupleId>;

struct ScanStats {
    uint64_t code_reads = 0; // code-vector cells touched
};

// Equality scan. For DICT_STRING the literal goes through one dictionary
// lookup; a miss short-circuits without reading the code vector.
inline TidList hash_scan_eq(const Relation& rel, std::string_view column,
                            const CellValue& literal, ScanStats* stats = nullptr) {
    const Column& c = rel.column(column);
    TidList out;
    if (c.kind == ColumnKind::DICT_STRING) {
        if (!std::holds_alternative<std::string>(literal))
            throw ContractViolation("hash_scan_eq: string literal required for " +
                                    std::string(column));
        const auto ref = c.dict->lookup(std::get<std::string>(literal));
        if (!ref) return out;
        const int64_t code = static_cast<int64_t>(ref->index);
        for (uint64_t t = 0; t < c.values.size(); ++t) {
            if (stats) ++stats->code_reads;
            if (c.values[t] == code) out.push_back(TupleId{t});
        }
        return out;
    }
    if (!std::holds_alternative<int64_t>(literal))
        throw ContractViolation("hash_scan_eq: integer literal required for " +
                                std::string(column));
    const int64_t v = std::get<int64_t>(literal);
    for (uint64_t t = 0; t < c.values.size(); ++t) {
        if (stats) ++stats->code_reads;
        if (c.values[t] == v) out.push_back(TupleId{t});
    }
    return out;
}

// Suffix LIKE ('%suffix'): tested once per distinct dictionary entry, then
// qualifying codes are mapped back to tuple ids.
inline TidList scan_like_suffix(const Relation& rel, std::string_view column,
                                std::string_view suffix) {
    const Column& c = rel.column(column);
    if (c.kind != ColumnKind::DICT_STRING)
        throw ContractViolation("scan_like_suffix: " + std::string(column) +
                                " is not a string column");
    std::unordered_set<int64_t> matching;
    c.dict->for_each_entry([&](ElemRef r, std::string_view s) {
        if (s.ends_with(suffix)) matching.insert(static_cast<int64_t>(r.index));
    });
    TidList out;
    for (uint64_t t = 0; t < c.values.size(); ++t)
        if (matching.contains(c.values[t])) out.push_back(TupleId{t});
    return out;
}

struct FetchResult {
    std::vector<std::vector<CellValue>> rows; // tid order, one cell per column
    int64_t modeled_seeks = 0;                // seeks_with_remainder, MROW = |tids|
};

inline FetchResult fetch_remainder(const Relation& rel, const TidList& tids,
                                   const std::vector<std::string>& columns,
                                   int64_t tid_bytes = 8, int64_t blocksize = 4096) {
    FetchResult res;
    for (const std::string& col : columns) rel.column(col); // validate names up front
    for (TupleId t : tids) {
        std::vector<CellValue> row;
        row.reserve(columns.size());
        for (const std::string& col : columns) row.push_back(rel.get_value(col, t));
        res.rows.push_back(std::move(row));
    }
    SeekParams p;
    p.number_of_rows = static_cast<int64_t>(rel.row_count());
    p.attr_bytes = Column::kAttrBytes;
    p.tid_bytes = tid_bytes;
    p.matched_rows = static_cast<int64_t>(tids.size());
    p.blocksize = blocksize;
    res.modeled_seeks = seeks_with_remainder(p);
    return res;
}

// Build/probe equi-join; the build table hashes cell bytes with the given
// function (integers via their 8-byte little-endian encoding).
inline std::vector<std::pair<TupleId, TupleId>> hash_join_eq(
    const Relation& build_rel, std::string_view build_col, const Relation& probe_rel,
    std::string_view probe_col, HashFunctionId f) {
    const Column& bc = build_rel.column(build_col);
    const Column& pc = probe_rel.column(probe_col);
    if (bc.kind != pc.kind)
        throw ContractViolation("hash_join_eq: column kind mismatch");

    auto key_bytes = [](const Column& c, uint64_t t) {
        if (c.kind == ColumnKind::DICT_STRING)
            return std::string(c.dict->deref(ElemRef{static_cast<uint64_t>(c.values[t])}));
        std::string k(8, '\0');
        const uint64_t v = static_cast<uint64_t>(c.values[t]);
        for (int i = 0; i < 8; ++i) k[i] = static_cast<char>((v >> (8 * i)) & 0xff);
        return k;
    };

    std::unordered_map<uint64_t, std::vector<uint64_t>> table;
    table.reserve(bc.values.size());
    std::vector<std::string> build_keys(bc.values.size());
    for (uint64_t t = 0; t < bc.values.size(); ++t) {
        build_keys[t] = key_bytes(bc, t);
        table[hash_bytes(f, build_keys[t])].push_back(t);
    }

    std::vector<std::pair<TupleId, TupleId>> out;
    for (uint64_t t = 0; t < pc.values.size(); ++t) {
        const std::string k = key_bytes(pc, t);
        auto it = table.find(hash_bytes(f, k));
        if (it == table.end()) continue;
        for (uint64_t bt : it->second)
            if (build_keys[bt] == k) out.emplace_back(TupleId{bt}, TupleId{t});
    }
    return out;
}

// ---------------------------------------------------------------------------
// The fixed Q2-style plan:
//   part filtered on p_size = 29 and p_type LIKE '% BURNISHED TIN',
//   region filtered on r_name = 'MIDDLE EAST', joined through nation,
//   supplier and partsupp, keeping per part only the rows that achieve the
//   minimum ps_supplycost among qualifying suppliers.
// ---------------------------------------------------------------------------

struct Q2Row {
    int64_t s_acctbal = 0;
    std::string s_name;
    std::string n_name;
    int64_t p_partkey = 0;
    std::string p_mfgr;
    std::string s_address;
    std::string s_phone;
    std::string s_comment;

    friend bool operator==(const Q2Row&, const Q2Row&) = default;
};

using Q2Result = std::vector<Q2Row>;

inline void sort_q2(Q2Result& rows) {
    std::sort(rows.begin(), rows.end(), [](const Q2Row& a, const Q2Row& b) {
        if (a.s_acctbal != b.s_acctbal) return a.s_acctbal > b.s_acctbal;
        if (a.n_name != b.n_name) return a.n_name < b.n_name;
        if (a.s_name != b.s_name) return a.s_name < b.s_name;
        return a.p_partkey < b.p_partkey;
    });
}

inline Q2Result run_q2_like(const Database& db) {
    const Relation& region = db.rel("region");
    const Relation& nation = db.rel("nation");
    const Relation& supplier = db.rel("supplier");
    const Relation& part = db.rel("part");
    const Relation& partsupp = db.rel("partsupp");
    const HashFunctionId f = db.hash_fn;

    // region: r_name = 'MIDDLE EAST'
    const TidList region_tids =
        hash_scan_eq(region, "r_name", CellValue{std::string("MIDDLE EAST")});
    std::unordered_set<int64_t> regionkeys;
    for (TupleId t : region_tids)
        regionkeys.insert(std::get<int64_t>(region.get_value("r_regionkey", t)));

    // nation in qualifying regions
    std::unordered_map<int64_t, std::string> nation_name; // nationkey -> n_name
    for (uint64_t t = 0; t < nation.row_count(); ++t) {
        if (regionkeys.contains(std::get<int64_t>(nation.get_value("n_regionkey", TupleId{t}))))
            nation_name[std::get<int64_t>(nation.get_value("n_nationkey", TupleId{t}))] =
                std::get<std::string>(nation.get_value("n_name", TupleId{t}));
    }

    // suppliers in qualifying nations: suppkey -> supplier tid
    std::unordered_map<int64_t, uint64_t> supp_tid;
    for (uint64_t t = 0; t < supplier.row_count(); ++t) {
        if (nation_name.contains(std::get<int64_t>(supplier.get_value("s_nationkey", TupleId{t}))))
            supp_tid[std::get<int64_t>(supplier.get_value("s_suppkey", TupleId{t}))] = t;
    }

    // part: p_size = 29 and p_type like '% BURNISHED TIN'
    const TidList size_tids = hash_scan_eq(part, "p_size", CellValue{int64_t{29}});
    const TidList type_tids = scan_like_suffix(part, "p_type", " BURNISHED TIN");
    TidList part_tids;
    std::set_intersection(size_tids.begin(), size_tids.end(), type_tids.begin(),
                          type_tids.end(), std::back_inserter(part_tids));
    std::unordered_map<int64_t, uint64_t> part_tid; // partkey -> part tid
    for (TupleId t : part_tids)
        part_tid[std::get<int64_t>(part.get_value("p_partkey", t))] = t.ordinal;

    // partsupp rows hitting both filters; per-part minimum supply cost
    struct Candidate { int64_t suppkey; int64_t cost; };
    std::unordered_map<int64_t, std::vector<Candidate>> by_part;
    std::unordered_map<int64_t, int64_t> min_cost;
    for (uint64_t t = 0; t < partsupp.row_count(); ++t) {
        const int64_t pk = std::get<int64_t>(partsupp.get_value("ps_partkey", TupleId{t}));
        if (!part_tid.contains(pk)) continue;
        const int64_t sk = std::get<int64_t>(partsupp.get_value("ps_suppkey", TupleId{t}));
        if (!supp_tid.contains(sk)) continue;
        const int64_t cost =
            std::get<int64_t>(partsupp.get_value("ps_supplycost", TupleId{t}));
        by_part[pk].push_back({sk, cost});
        auto it = min_cost.find(pk);
        if (it == min_cost.end() || cost < it->second) min_cost[pk] = cost;
    }

    Q2Result out;
    for (const auto& [pk, candidates] : by_part) {
        const int64_t best = min_cost.at(pk);
        for (const Candidate& cand : candidates) {
            if (cand.cost != best) continue;
            const TupleId st{supp_tid.at(cand.suppkey)};
            const int64_t nk = std::get<int64_t>(supplier.get_value("s_nationkey", st));
            const TupleId pt{part_tid.at(pk)};
            out.push_back(Q2Row{
                std::get<int64_t>(supplier.get_value("s_acctbal", st)),
                std::get<std::string>(supplier.get_value("s_name", st)),
                nation_name.at(nk),
                pk,
                std::get<std::string>(part.get_value("p_mfgr", pt)),
                std::get<std::string>(supplier.get_value("s_address", st)),
                std::get<std::string>(supplier.get_value("s_phone", st)),
                std::get<std::string>(supplier.get_value("s_comment", st)),
            });
        }
    }
    sort_q2(out);
    return out;
}

} // namespace csdict
