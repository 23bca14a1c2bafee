// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "csdict/bench.hpp"
#include "csdict/colstore.hpp"
#include "csdict/costmodel.hpp"
#include "csdict/hash.hpp"
#include "csdict/scan.hpp"
#include "csdict/strheap.hpp"
#include "csdict/tpchgen.hpp"
#include "oracles.hpp"
#include "q2_oracle.hpp"

using namespace csdict;

namespace {

int failures = 0;

void report(const std::string& name, bool pass, const std::string& note = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << name;
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << "\n";
    if (!pass) ++failures;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

std::string random_bytes(std::mt19937_64& rng, size_t len) {
    std::string s(len, '\0');
    for (char& c : s) c = static_cast<char>(rng() & 0xff);
    return s;
}

// 1. MMH fold fidelity: 10,000 random strings, lengths 0-256, < 1 s.
void criterion_mmh_fidelity() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1001);
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        const std::string s = random_bytes(rng, rng() % 257);
        ok = mmh_hash(s) == oracle::mmh_fold(s);
    }
    const double elapsed = ms_since(t0);
    report("1 mmh fold fidelity (10k random strings)", ok && elapsed < 1000.0,
           std::to_string(elapsed) + " ms");
}

// 2. Jenkins fidelity: transcribed reference, partial blocks 0-11, 10,000
// random (key, init) pairs.
void criterion_jenkins_fidelity() {
    bool ok = oracle::lookup3::selftest();
    std::mt19937_64 rng(1002);
    for (size_t tail = 0; tail <= 11 && ok; ++tail) {
        const std::string s = random_bytes(rng, 24 + tail);
        ok = jenkins_hash(s, 9) == oracle::lookup3::hashlittle(s.data(), s.size(), 9);
    }
    for (int i = 0; i < 10000 && ok; ++i) {
        const std::string s = random_bytes(rng, rng() % 80);
        const uint32_t init = static_cast<uint32_t>(rng());
        ok = jenkins_hash(s, init) ==
             oracle::lookup3::hashlittle(s.data(), s.size(), init);
    }
    report("2 jenkins baseline fidelity (reference transcription)", ok);
}

// 3. Dictionary correctness: 10^5 mixed ops vs a shadow map, both
// functions, grows forced by a tiny initial table.
void criterion_dictionary() {
    // mixed corpus: random strings plus TPC-H string pool
    std::vector<std::string> corpus;
    for (const char* a : tpch::kTypeSyllable1)
        for (const char* b : tpch::kTypeSyllable2)
            for (const char* c : tpch::kTypeSyllable3)
                corpus.push_back(std::string(a) + " " + b + " " + c);
    for (const char* r : tpch::kRegionNames) corpus.push_back(r);
    for (const auto& n : tpch::kNations) corpus.push_back(n.name);
    std::mt19937_64 seed_rng(1003);
    for (int i = 0; i < 3000; ++i) {
        std::string s = random_bytes(seed_rng, 1 + seed_rng() % 24);
        for (char& c : s)
            if (c == '\0') c = 'x';
        corpus.push_back(std::move(s));
    }

    bool ok = true;
    for (HashFunctionId f : {HashFunctionId::MMH, HashFunctionId::JENKINS}) {
        StringHeap heap(2, 64, f); // grows are guaranteed
        std::map<std::string, ElemRef> shadow;
        std::mt19937_64 rng(f == HashFunctionId::MMH ? 11 : 22);
        for (int i = 0; i < 100000 && ok; ++i) {
            const std::string& s = corpus[rng() % corpus.size()];
            switch (rng() % 3) {
                case 0: {
                    const ElemRef r = heap.insert(s);
                    auto it = shadow.find(s);
                    if (it != shadow.end() && !(it->second == r)) ok = false;
                    shadow[s] = r;
                    break;
                }
                case 1: {
                    const auto r = heap.lookup(s);
                    const auto it = shadow.find(s);
                    if (r.has_value() != (it != shadow.end())) ok = false;
                    else if (r && !(*r == it->second)) ok = false;
                    break;
                }
                case 2: {
                    if (!shadow.empty()) {
                        auto it = shadow.lower_bound(s);
                        if (it == shadow.end()) it = shadow.begin();
                        if (heap.deref(it->second) != it->first) ok = false;
                    }
                    break;
                }
            }
        }
        ok = ok && heap.entry_count() == shadow.size();
    }
    report("3 dictionary correctness (1e5-op shadow oracle, both functions)", ok);
}

// 4. Cost-model exactness.
void criterion_costmodel() {
    bool ok = true;
    std::mt19937_64 rng(1004);
    for (int i = 0; i < 1000 && ok; ++i) {
        const uint64_t n = 1 + rng() % 1000000;
        const uint64_t d = 1 + rng() % n;
        const Rational s = selectivity({n, d});
        ok = pdf(s) * s == Rational(1, 1);
    }
    ok = ok && seeks_scanned_segment({10, 4, 4, 0, 2}) == 88;
    ok = ok && seeks_with_remainder({10, 4, 4, 3, 2}) == 120;
    ok = ok && seeks_scanned_segment({0, 8, 8, 0, 4096}) == 32768;
    report("4 cost-model exactness (rational identity + hand-substituted seeks)", ok);
}

// 5. Q2 plan vs brute-force oracle, 5 seeds, each < 10 s.
void criterion_q2() {
    bool ok = true;
    double worst = 0.0;
    for (uint64_t seed = 1; seed <= 5 && ok; ++seed) {
        const auto t0 = std::chrono::steady_clock::now();
        GenConfig cfg;
        cfg.seed = seed;
        cfg.scale_rows = 100;
        const Database db = generate(cfg);
        ok = run_q2_like(db) == oracle::q2_nested_loop(db);
        const double elapsed = ms_since(t0);
        worst = std::max(worst, elapsed);
        ok = ok && elapsed < 10000.0;
    }
    report("5 q2 plan vs nested-loop oracle (5 seeds)", ok,
           "worst " + std::to_string(worst) + " ms");
}

// 6. Benchmark protocol: shapes, < 60 s, cv <= 0.10, correctness gate.
void criterion_bench_protocol() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "csdict_acceptance_data";
    GenConfig cfg;
    cfg.seed = 1;
    cfg.scale_rows = 100;
    dump_tbl(generate(cfg), dir.string());

    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string note;
    try {
        const BenchReport load =
            load_bench(dir.string(), hash_selection("both"), 5, 1, 100);
        const BenchReport query =
            query_bench(dir.string(), {"q2like", "point_k", "join_ps"},
                        hash_selection("both"), 5, 1, 100);

        // 8 x 2 load matrix, dual columns per workload
        ok = load.cells.size() == 16 && query.cells.size() == 6;
        for (const char* name : tpch::kRelationNames)
            ok = ok && load.find(name, HashFunctionId::MMH) &&
                 load.find(name, HashFunctionId::JENKINS);
        double worst_cv = 0.0;
        for (const BenchReport* r : {&load, &query})
            for (const BenchCell& c : r->cells) worst_cv = std::max(worst_cv, c.cv);
        ok = ok && worst_cv <= 0.10;

        std::ostringstream md_load, md_query, csv;
        emit_report(load, ReportFormat::Markdown, md_load);
        emit_report(query, ReportFormat::Markdown, md_query);
        emit_report(query, ReportFormat::Csv, csv);
        // Table II shape: header + separator + 8 rows; Table I shape: dual
        // timing columns plus delta per workload
        ok = ok && std::count(md_load.str().begin(), md_load.str().end(), '\n') == 10;
        ok = ok && md_query.str().find("| jenkins (ms) | mmh (ms) | delta |") !=
                       std::string::npos;
        const double elapsed = ms_since(t0);
        ok = ok && elapsed < 60000.0;
        note = std::to_string(elapsed) + " ms, worst cv " + std::to_string(worst_cv);
    } catch (const std::exception& e) {
        ok = false;
        note = e.what();
    }
    fs::remove_all(dir);
    report("6 benchmark protocol (shape, runtime, cv, correctness gate)", ok, note);
}

// 7. Hash quality: jenkins p > 0.001 on the 150-value p_type corpus; the
// MMH report is emitted and archived.
void criterion_quality() {
    std::vector<std::string> keys;
    for (const char* a : tpch::kTypeSyllable1)
        for (const char* b : tpch::kTypeSyllable2)
            for (const char* c : tpch::kTypeSyllable3)
                keys.push_back(std::string(a) + " " + b + " " + c);
    bool ok = keys.size() == 150;

    const auto jenkins = quality_report(keys, HashFunctionId::JENKINS, 1024);
    const double p = oracle::chisq::survival(jenkins.chi_square, 1023.0);
    ok = ok && p > 0.001;

    // archive the MMH report (informational)
    const auto mmh = quality_report(keys, HashFunctionId::MMH, 1024);
    const auto path =
        std::filesystem::temp_directory_path() / "csdict_mmh_ptype_quality.txt";
    {
        std::ofstream out(path);
        out << "keys " << mmh.key_count << "\nbuckets " << mmh.nbuckets
            << "\nchi_square " << mmh.chi_square << "\nmax_chain " << mmh.max_chain
            << "\nmean_chain " << mmh.mean_chain << "\nempty_buckets "
            << mmh.empty_buckets << "\navalanche_mean " << mmh.avalanche_mean << "\n";
        ok = ok && out.good();
    }
    char note[160];
    std::snprintf(note, sizeof note, "jenkins chi2 %.2f p %.4f; mmh report at %s",
                  jenkins.chi_square, p, path.string().c_str());
    report("7 hash quality suite (p_type corpus)", ok, note);
}

} // namespace

int main() {
    criterion_mmh_fidelity();
    criterion_jenkins_fidelity();
    criterion_dictionary();
    criterion_costmodel();
    criterion_q2();
    criterion_bench_protocol();
    criterion_quality();
    if (failures) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
