// Copyright 2026 The mlcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlcount/bench.hpp"
#include "mlcount/codes.hpp"
#include "mlcount/counting.hpp"
#include "mlcount/selftest.hpp"

namespace {

using namespace mlcount;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Method parse_method(const std::string& name) {
    if (name == "auto") return Method::Auto;
    if (name == "general") return Method::General;
    if (name == "special") return Method::Special;
    if (name == "oracle") return Method::Oracle;
    throw SchemaError("unknown method: " + name);
}

int cmd_count(const std::string& path, const std::string& method_name, bool json_out,
              int threads, bool force_oracle) {
    const Method method = parse_method(method_name);
    CountQuery query = parse_problem(read_file(path), /*require_rank=*/method != Method::Oracle);
    OracleOptions oracle;
    oracle.threads = threads;
    oracle.force = force_oracle;
    CountResult res = count(query, method, oracle);
    if (json_out) {
        nlohmann::json doc;
        doc["count"] = res.count.get_str();
        doc["method"] = res.method;
        doc["ns"] = res.elapsed.count();
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << res.count.get_str() << "\n";
    }
    return 0;
}

int cmd_weights(const std::string& path, bool hierarchy, bool min_dist,
                const std::string& word) {
    CodeSpec code = parse_code(read_file(path));
    std::cout << "length: " << code.length().get_str() << "\n";
    std::cout << "dimension: " << code.dimension() << "\n";
    if (hierarchy) {
        const std::vector<BigInt> d = weight_hierarchy(code);
        std::cout << "d:";
        for (const BigInt& v : d) std::cout << ' ' << v.get_str();
        std::cout << "\n";
    }
    if (min_dist) std::cout << "min-distance: " << min_distance(code).get_str() << "\n";
    if (!word.empty()) {
        std::vector<std::uint32_t> coeffs;
        std::stringstream ss(word);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                coeffs.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            } catch (const std::exception&) {
                throw SchemaError("--word expects comma-separated element indices, got \"" +
                                  tok + "\"");
            }
        }
        std::cout << "weight: " << codeword_weight(code, coeffs).get_str() << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& path, int repeat, const std::string& csv_path,
              bool skip_oracle, bool force_oracle, int threads) {
    CountQuery query = parse_problem(read_file(path));
    OracleOptions oracle;
    oracle.threads = threads;
    oracle.force = force_oracle;
    BenchReport report = run_bench(query, path, repeat, !skip_oracle, oracle);
    for (const BenchSample& s : report.samples)
        std::cout << s.method << ": count " << s.count.get_str() << ", median "
                  << s.median_ns << " ns, speedup " << s.speedup << "\n";
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw SchemaError("cannot write CSV: " + csv_path);
        write_bench_csv(report, out);
    }
    return 0;
}

int cmd_selftest(int max_bits, std::uint64_t seed, int threads) {
    SelftestOptions opts;
    opts.max_bits = max_bits;
    opts.seed = seed;
    opts.threads = threads;
    const std::vector<SuiteResult> results = run_selftest(opts);
    bool ok = true;
    for (const SuiteResult& r : results) {
        std::cout << "suite " << r.name << ": " << r.passed << " passed, " << r.failed
                  << " failed\n";
        if (!r.ok()) {
            ok = false;
            for (const std::string& f : r.failures) std::cerr << "FAIL " << f << "\n";
        }
    }
    std::cout << "selftest: " << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solution counts for products of multilinear polynomials with "
                 "separated variables over finite fields, and weight hierarchies of the "
                 "associated codes"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --threads appear after the subcommand too

    int threads = 1;
    app.add_option("--threads", threads, "worker threads for enumeration")
        ->envname("MLCOUNT_THREADS")
        ->check(CLI::Range(1, 256));

    auto* c_count = app.add_subcommand("count", "count solutions of f_1...f_k = a");
    std::string count_problem, count_method = "auto";
    bool count_json = false, count_force = false;
    c_count->add_option("--problem", count_problem, "problem JSON file")->required();
    c_count->add_option("--method", count_method, "auto|general|special|oracle")
        ->check(CLI::IsMember({"auto", "general", "special", "oracle"}));
    c_count->add_flag("--json", count_json, "machine-readable output");
    c_count->add_flag("--force-oracle", count_force, "lift the oracle point guard");

    auto* c_weights = app.add_subcommand("weights", "code parameters and weights");
    std::string weights_code, weights_word;
    bool weights_hierarchy = false, weights_min = false;
    c_weights->add_option("--code", weights_code, "code JSON file")->required();
    c_weights->add_flag("--hierarchy", weights_hierarchy, "print d_1 ... d_m");
    c_weights->add_flag("--min-distance", weights_min, "print the minimum distance");
    c_weights->add_option("--word", weights_word,
                          "comma-separated coefficients a_1,...,a_m; prints the weight");

    auto* c_bench = app.add_subcommand("bench", "time formula path vs oracle");
    std::string bench_problem, bench_csv;
    int bench_repeat = 5;
    bool bench_skip_oracle = false, bench_force_oracle = false;
    c_bench->add_option("--problem", bench_problem, "problem JSON file")->required();
    c_bench->add_option("--repeat", bench_repeat, "runs per method")->check(CLI::Range(1, 1000));
    c_bench->add_option("--csv", bench_csv, "write samples as CSV");
    c_bench->add_flag("--skip-oracle", bench_skip_oracle, "time the formula path only");
    c_bench->add_flag("--force-oracle", bench_force_oracle, "lift the oracle point guard");

    auto* c_selftest = app.add_subcommand("selftest", "fixture and property suites");
    int st_max_bits = 20;
    std::uint64_t st_seed = 20260808;
    c_selftest->add_option("--max-bits", st_max_bits,
                           "restrict oracle-backed suites to q^n <= 2^B")
        ->check(CLI::Range(4, 26));
    c_selftest->add_option("--seed", st_seed, "seed for the randomized suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_count)
            return cmd_count(count_problem, count_method, count_json, threads, count_force);
        if (*c_weights)
            return cmd_weights(weights_code, weights_hierarchy, weights_min, weights_word);
        if (*c_bench)
            return cmd_bench(bench_problem, bench_repeat, bench_csv, bench_skip_oracle,
                             bench_force_oracle, threads);
        if (*c_selftest) return cmd_selftest(st_max_bits, st_seed, threads);
    } catch (const Error& e) {
        std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
        return exit_status_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
