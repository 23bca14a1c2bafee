// csdict: TPC-H-style data generation, dictionary load and query
// micro-benchmarks, and hash-quality reports for the MMH / Jenkins
// string-dictionary engine.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csdict/bench.hpp"
#include "csdict/colstore.hpp"
#include "csdict/hash.hpp"
#include "csdict/scan.hpp"
#include "csdict/tpchgen.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::string default_data_dir() {
    const char* env = std::getenv("CSDICT_DATA");
    return env ? env : "";
}

csdict::ReportFormat parse_format(const std::string& f) {
    if (f == "csv") return csdict::ReportFormat::Csv;
    if (f == "md") return csdict::ReportFormat::Markdown;
    throw CLI::ValidationError("--format", "expected csv or md");
}

void write_report(const csdict::BenchReport& report, const std::string& format,
                  const std::string& out_path) {
    const csdict::ReportFormat fmt = parse_format(format);
    if (out_path.empty()) {
        csdict::emit_report(report, fmt, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw csdict::ResourceError("cannot open " + out_path);
        csdict::emit_report(report, fmt, out);
        std::cout << "wrote " << out_path << "\n";
    }
}

int cmd_generate(uint64_t seed, uint64_t scale_rows, const std::string& out_dir) {
    csdict::GenConfig cfg;
    cfg.seed = seed;
    cfg.scale_rows = scale_rows;
    const csdict::Database db = csdict::generate(cfg);
    csdict::dump_tbl(db, out_dir);
    for (const char* name : csdict::tpch::kRelationNames)
        std::cout << name << ": " << db.rel(name).row_count() << " rows\n";
    return kExitOk;
}

int cmd_load_bench(const std::string& data, const std::string& hash, uint64_t reps,
                   const std::string& format, const std::string& out) {
    const auto report = csdict::load_bench(data, csdict::hash_selection(hash), reps);
    write_report(report, format, out);
    return kExitOk;
}

int cmd_query_bench(const std::string& data, const std::string& hash, uint64_t reps,
                    const std::vector<std::string>& workloads, const std::string& format,
                    const std::string& out) {
    const auto report =
        csdict::query_bench(data, workloads, csdict::hash_selection(hash), reps);
    for (const csdict::BenchCell& c : report.cells)
        std::cout << "# " << c.workload << "/" << csdict::to_string(c.hash_fn)
                  << ": result rows = " << c.result_count << "\n";
    write_report(report, format, out);
    return kExitOk;
}

int cmd_quality(const std::string& data, const std::string& hash,
                const std::string& column, uint64_t buckets) {
    const size_t dot = column.find('.');
    if (dot == std::string::npos)
        throw CLI::ValidationError("--column", "expected REL.COL");
    const std::string rel_name = column.substr(0, dot);
    const std::string col_name = column.substr(dot + 1);

    csdict::Relation rel(rel_name, csdict::tpch::schema(rel_name), csdict::HashFunctionId::MMH);
    csdict::load_tbl(data + "/" + rel_name + ".tbl", rel);
    const csdict::Column& col = rel.column(col_name);

    // Distinct values of the column; integers hashed via their 8-byte
    // little-endian encoding.
    std::vector<std::string> keys;
    {
        std::unordered_set<int64_t> seen;
        for (int64_t v : col.values) {
            if (!seen.insert(v).second) continue;
            if (col.kind == csdict::ColumnKind::DICT_STRING) {
                keys.emplace_back(
                    col.dict->deref(csdict::ElemRef{static_cast<uint64_t>(v)}));
            } else {
                std::string k(8, '\0');
                for (int i = 0; i < 8; ++i)
                    k[i] = static_cast<char>((static_cast<uint64_t>(v) >> (8 * i)) & 0xff);
                keys.push_back(std::move(k));
            }
        }
    }

    for (csdict::HashFunctionId f : csdict::hash_selection(hash)) {
        const auto report = csdict::quality_report(keys, f, buckets);
        std::map<uint64_t, uint64_t> histogram; // chain length -> bucket count
        std::vector<uint64_t> occupancy(buckets, 0);
        for (const std::string& key : keys)
            ++occupancy[csdict::bucket_of(csdict::hash_bytes(f, key), buckets)];
        for (uint64_t n : occupancy) ++histogram[n];

        std::cout << "== " << column << " under " << csdict::to_string(f) << " ==\n"
                  << "keys:           " << report.key_count << "\n"
                  << "buckets:        " << report.nbuckets << "\n"
                  << "chi_square:     " << report.chi_square << "\n"
                  << "max_chain:      " << report.max_chain << "\n"
                  << "mean_chain:     " << report.mean_chain << "\n"
                  << "empty_buckets:  " << report.empty_buckets << "\n"
                  << "avalanche_mean: " << report.avalanche_mean << "\n"
                  << "chain histogram (length: buckets):\n";
        for (const auto& [len, count] : histogram)
            std::cout << "  " << len << ": " << count << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"column-store string dictionary benchmark harness"};
    app.require_subcommand(1);

    uint64_t seed = 1;
    uint64_t scale_rows = 100;
    uint64_t reps = 5;
    uint64_t buckets = 1024;
    std::string data = default_data_dir();
    std::string hash = "both";
    std::string format = "md";
    std::string out;
    std::string out_dir;
    std::string column;
    std::vector<std::string> workloads = csdict::kQueryWorkloads;

    auto* gen = app.add_subcommand("gen", "generate TPC-H .tbl files");
    gen->add_option("--seed", seed, "PRNG seed");
    gen->add_option("--scale-rows", scale_rows, "supplier row count (drives all ratios)");
    gen->add_option("--out", out_dir, "output directory")->required();

    auto* load = app.add_subcommand("load-bench", "per-relation dictionary load timing");
    load->add_option("--data", data, "directory with the eight .tbl files");
    load->add_option("--hash", hash, "mmh|jenkins|both");
    load->add_option("--reps", reps, "timed repetitions per cell");
    load->add_option("--format", format, "csv|md");
    load->add_option("--out", out, "output file (default stdout)");

    auto* query = app.add_subcommand("query-bench", "query workload timing");
    query->add_option("--data", data, "directory with the eight .tbl files");
    query->add_option("--hash", hash, "mmh|jenkins|both");
    query->add_option("--reps", reps, "timed repetitions per cell");
    query->add_option("--workloads", workloads, "subset of q2like,point_k,join_ps")
        ->delimiter(',');
    query->add_option("--format", format, "csv|md");
    query->add_option("--out", out, "output file (default stdout)");

    auto* quality = app.add_subcommand("quality", "hash quality report for one column");
    quality->add_option("--data", data, "directory with the eight .tbl files");
    quality->add_option("--hash", hash, "mmh|jenkins|both");
    quality->add_option("--column", column, "REL.COL, e.g. part.p_type")->required();
    quality->add_option("--buckets", buckets, "bucket count (power of two)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_generate(seed, scale_rows, out_dir);
        if (load->parsed()) return cmd_load_bench(data, hash, reps, format, out);
        if (query->parsed())
            return cmd_query_bench(data, hash, reps, workloads, format, out);
        if (quality->parsed()) return cmd_quality(data, hash, column, buckets);
    } catch (const csdict::ContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
