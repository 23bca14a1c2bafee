#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "csdict/error.hpp"
#include "csdict/scan.hpp"
#include "csdict/tpchgen.hpp"

namespace csdict {

struct BenchCell {
    std::string workload;
    HashFunctionId hash_fn = HashFunctionId::MMH;
    uint64_t repetitions = 0;
    std::vector<double> times_ms;
    double median_ms = 0.0;
    double cv = 0.0; // stddev / mean
    uint64_t result_hash = 0;
    uint64_t result_count = 0;
};

struct BenchReport {
    std::vector<BenchCell> cells;
    std::string environment;
    uint64_t seed = 0;
    uint64_t scale_rows = 0;

    const BenchCell* find(const std::string& workload, HashFunctionId f) const {
        for (const BenchCell& c : cells)
            if (c.workload == workload && c.hash_fn == f) return &c;
        return nullptr;
    }
};

namespace detail {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double coeff_of_variation(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (mean == 0.0) return 0.0;
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    return std::sqrt(var) / mean;
}

// FNV-1a, for result-identity gating only.
inline uint64_t fnv1a(uint64_t h, const void* data, size_t n) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t fnv1a_str(uint64_t h, const std::string& s) {
    return fnv1a(h, s.data(), s.size());
}

} // namespace detail

// One discarded warmup run, then `reps` timed runs. The workload returns a
// result fingerprint so timings can be gated on result identity.
inline BenchCell time_workload(const std::string& workload, HashFunctionId f,
                               uint64_t reps,
                               const std::function<std::pair<uint64_t, uint64_t>()>& run) {
    if (reps < 1) throw ContractViolation("time_workload: reps must be >= 1");
    BenchCell cell;
    cell.workload = workload;
    cell.hash_fn = f;
    cell.repetitions = reps;
    auto [h0, n0] = run(); // warmup, discarded timing
    cell.result_hash = h0;
    cell.result_count = n0;
    for (uint64_t i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        auto [h, n] = run();
        const auto t1 = std::chrono::steady_clock::now();
        if (h != cell.result_hash)
            throw ContractViolation("time_workload: result changed between reps of " +
                                    workload);
        cell.times_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    cell.median_ms = detail::median(cell.times_ms);
    cell.cv = detail::coeff_of_variation(cell.times_ms);
    return cell;
}

inline std::vector<HashFunctionId> hash_selection(const std::string& which) {
    if (which == "mmh") return {HashFunctionId::MMH};
    if (which == "jenkins") return {HashFunctionId::JENKINS};
    if (which == "both") return {HashFunctionId::MMH, HashFunctionId::JENKINS};
    throw ContractViolation("unknown hash selection '" + which + "'");
}

// ---------------------------------------------------------------------------
// Workloads
// ---------------------------------------------------------------------------

inline const std::vector<std::string> kQueryWorkloads = {"q2like", "point_k", "join_ps"};

namespace detail {

inline uint64_t fingerprint_tids(uint64_t h, const TidList& tids) {
    for (TupleId t : tids) h = fnv1a(h, &t.ordinal, sizeof t.ordinal);
    return h;
}

inline std::pair<uint64_t, uint64_t> run_q2_workload(const Database& db) {
    const Q2Result rows = run_q2_like(db);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const Q2Row& r : rows) {
        h = fnv1a(h, &r.s_acctbal, sizeof r.s_acctbal);
        h = fnv1a(h, &r.p_partkey, sizeof r.p_partkey);
        h = fnv1a_str(h, r.s_name);
        h = fnv1a_str(h, r.n_name);
        h = fnv1a_str(h, r.p_mfgr);
        h = fnv1a_str(h, r.s_address);
        h = fnv1a_str(h, r.s_phone);
        h = fnv1a_str(h, r.s_comment);
    }
    return {h, rows.size()};
}

// Batched point probes over part at three selectivity tiers, chosen from
// distinct counts: p_partkey (all distinct, rare), p_type (~150 distinct,
// medium), p_container (a handful of values, common).
inline std::pair<uint64_t, uint64_t> run_point_workload(const Database& db) {
    const Relation& part = db.rel("part");
    uint64_t h = 0xcbf29ce484222325ULL;
    uint64_t total = 0;
    Prng rng(42);

    const uint64_t rows = part.row_count();
    for (int i = 0; i < 16; ++i) { // rare: selectivity n/distinct = 1
        const TidList tids = hash_scan_eq(
            part, "p_partkey", CellValue{static_cast<int64_t>(rng.range(1, rows))});
        h = fingerprint_tids(h, tids);
        total += tids.size();
    }
    for (int i = 0; i < 16; ++i) { // medium
        std::string type = tpch::kTypeSyllable1[rng.range(0, 5)];
        type += ' ';
        type += tpch::kTypeSyllable2[rng.range(0, 4)];
        type += ' ';
        type += tpch::kTypeSyllable3[rng.range(0, 4)];
        const TidList tids = hash_scan_eq(part, "p_type", CellValue{std::move(type)});
        h = fingerprint_tids(h, tids);
        total += tids.size();
    }
    for (int i = 0; i < 16; ++i) { // common
        const TidList tids = hash_scan_eq(
            part, "p_container",
            CellValue{std::string(tpch::kContainers[rng.range(0, 7)])});
        h = fingerprint_tids(h, tids);
        total += tids.size();
    }
    return {h, total};
}

inline std::pair<uint64_t, uint64_t> run_join_workload(const Database& db) {
    const auto pairs = hash_join_eq(db.rel("supplier"), "s_suppkey", db.rel("partsupp"),
                                    "ps_suppkey", db.hash_fn);
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& [b, p] : pairs) {
        h = fnv1a(h, &b.ordinal, sizeof b.ordinal);
        h = fnv1a(h, &p.ordinal, sizeof p.ordinal);
    }
    return {h, pairs.size()};
}

} // namespace detail

// Per-relation dictionary load timing (fresh relation per rep).
inline BenchReport load_bench(const std::string& data_dir,
                              const std::vector<HashFunctionId>& hashes, uint64_t reps,
                              uint64_t seed = 0, uint64_t scale_rows = 0) {
    namespace fs = std::filesystem;
    for (const char* name : tpch::kRelationNames) {
        if (!fs::exists(fs::path(data_dir) / (std::string(name) + ".tbl")))
            throw ResourceError(std::string("load_bench: missing relation ") + name);
    }
    BenchReport report;
    report.seed = seed;
    report.scale_rows = scale_rows;
    for (const char* name : tpch::kRelationNames) {
        const std::string path = (fs::path(data_dir) / (std::string(name) + ".tbl")).string();
        for (HashFunctionId f : hashes) {
            report.cells.push_back(time_workload(
                name, f, reps, [&]() -> std::pair<uint64_t, uint64_t> {
                    Relation rel(name, tpch::schema(name), f);
                    const uint64_t rows = load_tbl(path, rel);
                    return {rows, rows};
                }));
        }
    }
    return report;
}

// Query workloads over a database loaded once per hash function. Aborts via
// ContractViolation if any workload's result fingerprint differs between
// hash functions.
inline BenchReport query_bench(const std::string& data_dir,
                               const std::vector<std::string>& workloads,
                               const std::vector<HashFunctionId>& hashes, uint64_t reps,
                               uint64_t seed = 0, uint64_t scale_rows = 0) {
    for (const std::string& w : workloads) {
        if (std::find(kQueryWorkloads.begin(), kQueryWorkloads.end(), w) ==
            kQueryWorkloads.end()) {
            std::string valid;
            for (const std::string& v : kQueryWorkloads) valid += " " + v;
            throw ContractViolation("unknown workload '" + w + "'; valid:" + valid);
        }
    }
    BenchReport report;
    report.seed = seed;
    report.scale_rows = scale_rows;
    for (HashFunctionId f : hashes) {
        const Database db = load_dbgen_dir(data_dir, f);
        for (const std::string& w : workloads) {
            auto run = [&]() -> std::pair<uint64_t, uint64_t> {
                if (w == "q2like") return detail::run_q2_workload(db);
                if (w == "point_k") return detail::run_point_workload(db);
                return detail::run_join_workload(db);
            };
            report.cells.push_back(time_workload(w, f, reps, run));
        }
    }
    // Correctness gate: identical results under every hash function.
    for (const std::string& w : workloads) {
        std::optional<uint64_t> expected;
        for (HashFunctionId f : hashes) {
            const BenchCell* cell = report.find(w, f);
            if (!cell) continue;
            if (expected && *expected != cell->result_hash)
                throw std::runtime_error("correctness gate: workload '" + w +
                                         "' results differ between hash functions");
            expected = cell->result_hash;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

enum class ReportFormat { Csv, Markdown };

inline double delta_pct(double jenkins_median, double mmh_median) {
    return (jenkins_median - mmh_median) / jenkins_median;
}

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::vector<std::string> workload_order(const BenchReport& r) {
    std::vector<std::string> order;
    for (const BenchCell& c : r.cells)
        if (std::find(order.begin(), order.end(), c.workload) == order.end())
            order.push_back(c.workload);
    return order;
}

} // namespace detail

// CSV columns: workload,hash_fn,reps,median_ms,cv,delta_pct. Per-cell rows
// leave delta_pct empty; when both functions are present an aggregate row
// per workload carries the delta.
inline uint64_t emit_report(const BenchReport& report, ReportFormat format,
                            std::ostream& sink) {
    if (report.cells.empty()) throw ContractViolation("emit_report: empty report");
    std::ostringstream out;
    const std::vector<std::string> order = detail::workload_order(report);
    const bool dual = std::any_of(report.cells.begin(), report.cells.end(),
                                  [](const BenchCell& c) {
                                      return c.hash_fn == HashFunctionId::MMH;
                                  }) &&
                      std::any_of(report.cells.begin(), report.cells.end(),
                                  [](const BenchCell& c) {
                                      return c.hash_fn == HashFunctionId::JENKINS;
                                  });
    if (format == ReportFormat::Csv) {
        out << "workload,hash_fn,reps,median_ms,cv,delta_pct\n";
        for (const BenchCell& c : report.cells)
            out << c.workload << ',' << to_string(c.hash_fn) << ',' << c.repetitions
                << ',' << detail::fmt(c.median_ms) << ',' << detail::fmt(c.cv) << ",\n";
        if (dual) {
            for (const std::string& w : order) {
                const BenchCell* m = report.find(w, HashFunctionId::MMH);
                const BenchCell* j = report.find(w, HashFunctionId::JENKINS);
                if (m && j)
                    out << w << ",both," << m->repetitions << ",,,"
                        << detail::fmt(100.0 * delta_pct(j->median_ms, m->median_ms))
                        << '\n';
            }
        }
    } else {
        out << "| workload |";
        if (dual) {
            out << " jenkins (ms) | mmh (ms) | delta |\n|---|---|---|---|\n";
            for (const std::string& w : order) {
                const BenchCell* m = report.find(w, HashFunctionId::MMH);
                const BenchCell* j = report.find(w, HashFunctionId::JENKINS);
                out << "| " << w << " | " << (j ? detail::fmt(j->median_ms) : "-")
                    << " | " << (m ? detail::fmt(m->median_ms) : "-") << " | "
                    << (m && j
                            ? detail::fmt(100.0 * delta_pct(j->median_ms, m->median_ms)) + "%"
                            : "-")
                    << " |\n";
            }
        } else {
            const HashFunctionId f = report.cells.front().hash_fn;
            out << ' ' << to_string(f) << " (ms) |\n|---|---|\n";
            for (const std::string& w : order) {
                const BenchCell* c = report.find(w, f);
                out << "| " << w << " | " << (c ? detail::fmt(c->median_ms) : "-")
                    << " |\n";
            }
        }
    }
    const std::string text = out.str();
    sink << text;
    if (!sink) throw ResourceError("emit_report: write failed");
    return text.size();
}

} // namespace csdict
