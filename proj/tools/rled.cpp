// Command-line front end: compute RLE edit distances, generate random
// instances, verify against the naive DP, and benchmark scaling.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
// 3 resource guard refused.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rled/engine.hpp"
#include "rled/oracle.hpp"
#include "rled/random_instance.hpp"
#include "rled/rle.hpp"

using json = nlohmann::json;
using namespace rled;

namespace {

std::int64_t naive_cap_from_env() {
    if (const char* env = std::getenv("RLED_NAIVE_CAP")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring malformed RLED_NAIVE_CAP\n";
    }
    return kDefaultDecompressCap;
}

std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct DistArgs {
    std::string a, b;
    bool raw = false;
    bool as_json = false;
    bool debug_borders = false;
};

int cmd_dist(const DistArgs& args) {
    RleString x = args.raw ? encode_raw(args.a) : parse_rle(args.a);
    RleString y = args.raw ? encode_raw(args.b) : parse_rle(args.b);

    if (args.debug_borders) {
        json blocks = json::array();
        EngineOptions opts;
        opts.on_block = [&](const BlockDump& d) {
            // every border as its domain plus [x2, y2] turning points
            auto curve = [](const auto& v) {
                json pts = json::array();
                for (auto [px, py] : v) pts.push_back({px, py});
                return json{{"domain", {v.front().first, v.back().first}},
                            {"points", std::move(pts)}};
            };
            blocks.push_back({{"p", d.p},
                              {"q", d.q},
                              {"is_match", d.is_match},
                              {"bottom", curve(d.bottom)},
                              {"right", curve(d.right)}});
        };
        std::int64_t dist = rle_edit_distance(x, y, opts);
        json doc{{"distance", dist}, {"blocks", std::move(blocks)}};
        std::cout << doc.dump() << "\n";
        return 0;
    }

    std::int64_t t0 = now_ns();
    std::int64_t dist = rle_edit_distance(x, y);
    std::int64_t elapsed = now_ns() - t0;
    if (args.as_json) {
        json doc{{"distance", dist}, {"m", x.run_count()},  {"n", y.run_count()},
                 {"M", x.length()},  {"N", y.length()},     {"time_ns", elapsed}};
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << dist << "\n";
    }
    return 0;
}

struct GenArgs {
    std::int64_t runs = 8;
    std::int64_t max_run = 10;
    int alphabet = 2;
    std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& args) {
    std::cout << render(gen_random_rle(args.runs, args.max_run, args.alphabet,
                                       args.seed))
              << "\n";
    return 0;
}

struct VerifyArgs {
    std::int64_t cases = 1000;
    std::int64_t max_runs = 8;
    std::int64_t max_run = 6;
    int alphabet = 3;
    std::uint64_t seed = 1;
    bool borders = false;
};

int cmd_verify(const VerifyArgs& args) {
    std::int64_t cap = naive_cap_from_env();
    SplitMix64 rng(args.seed);
    std::int64_t passed = 0;
    for (std::int64_t i = 0; i < args.cases; ++i) {
        RleString x = gen_random_rle(
            rng.bounded(static_cast<std::uint64_t>(args.max_runs) + 1),
            args.max_run, args.alphabet, rng.next());
        RleString y = gen_random_rle(
            rng.bounded(static_cast<std::uint64_t>(args.max_runs) + 1),
            args.max_run, args.alphabet, rng.next());
        std::string a = decompress(x, cap);
        std::string b = decompress(y, cap);
        EngineOptions opts;
        opts.check_invariants = args.borders;
        std::int64_t got = rle_edit_distance(x, y, opts);
        std::int64_t want = oracle::naive_ed_rows(a, b);
        if (got != want) {
            std::cout << "FAIL: dist(" << render(x) << ", " << render(y)
                      << ") = " << got << ", naive DP says " << want << "\n";
            std::cout << passed << "/" << args.cases << " passed before the mismatch\n";
            return 1;
        }
        ++passed;
    }
    std::cout << passed << "/" << args.cases << " cases passed\n";
    return 0;
}

struct BenchArgs {
    std::vector<std::int64_t> sizes{64, 128, 256, 512, 1024, 2048};
    std::int64_t max_run = 1'000'000'000;
    std::uint64_t seed = 1;
    std::string out;
};

struct BenchRecord {
    std::int64_t m, n;
    std::int64_t max_run;
    std::uint64_t seed;
    std::int64_t time_ns;
    std::int64_t distance;
    std::uint64_t ops;
    std::uint64_t segments_created;
};

BenchRecord run_bench_case(std::int64_t m, std::int64_t max_run, std::uint64_t seed) {
    std::uint64_t seed_x = SplitMix64(seed + static_cast<std::uint64_t>(m)).next();
    std::uint64_t seed_y = SplitMix64(seed_x).next();
    RleString x = gen_random_rle(m, max_run, 4, seed_x);
    RleString y = gen_random_rle(m, max_run, 4, seed_y);
    curve_stats().reset();
    std::int64_t t0 = now_ns();
    std::int64_t dist = rle_edit_distance(x, y);
    std::int64_t elapsed = now_ns() - t0;
    const CurveStats& s = curve_stats();
    return {m, m, max_run, seed, elapsed, dist, s.ops, s.segments_created};
}

int cmd_bench(const BenchArgs& args) {
    for (std::size_t i = 1; i < args.sizes.size(); ++i)
        if (args.sizes[i] <= args.sizes[i - 1])
            throw CLI::ValidationError("--sizes must be ascending");
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!args.out.empty()) {
        file.open(args.out);
        if (!file) {
            std::cerr << "error: cannot write " << args.out << "\n";
            return 3;
        }
        os = &file;
    }
    *os << "m,n,max_run,seed,time_ns,distance,ops,segments_created\n";
    for (std::int64_t m : args.sizes) {
        BenchRecord r = run_bench_case(m, args.max_run, args.seed);
        *os << r.m << "," << r.n << "," << r.max_run << "," << r.seed << ","
            << r.time_ns << "," << r.distance << "," << r.ops << ","
            << r.segments_created << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edit distance between run-length encoded strings"};
    app.require_subcommand(1);

    DistArgs dist_args;
    auto* dist = app.add_subcommand("dist", "compute the edit distance of two strings");
    dist->add_option("a", dist_args.a, "first string (RLE text, e.g. a3b4a3)")->required();
    dist->add_option("b", dist_args.b, "second string")->required();
    dist->add_flag("--raw", dist_args.raw, "treat inputs as literal text");
    dist->add_flag("--json", dist_args.as_json, "emit a JSON record");
    dist->add_flag("--debug-borders", dist_args.debug_borders,
                   "dump per-block output borders as JSON");

    GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "generate a random RLE string");
    gen->add_option("--runs", gen_args.runs, "number of runs")->check(CLI::NonNegativeNumber);
    gen->add_option("--max-run", gen_args.max_run, "maximum run length");
    gen->add_option("--alphabet", gen_args.alphabet, "alphabet size");
    gen->add_option("--seed", gen_args.seed, "RNG seed");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "differential test against the naive DP");
    verify->add_option("--cases", verify_args.cases, "number of random cases");
    verify->add_option("--max-runs", verify_args.max_runs, "maximum runs per string");
    verify->add_option("--max-run", verify_args.max_run, "maximum run length");
    verify->add_option("--alphabet", verify_args.alphabet, "alphabet size");
    verify->add_option("--seed", verify_args.seed, "RNG seed");
    verify->add_flag("--check-invariants", verify_args.borders,
                     "audit curve invariants inside every block");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "time the engine across sizes, CSV output");
    bench->add_option("--sizes", bench_args.sizes, "ascending m=n sizes")->delimiter(',');
    bench->add_option("--max-run", bench_args.max_run, "maximum run length");
    bench->add_option("--seed", bench_args.seed, "RNG seed");
    bench->add_option("--out", bench_args.out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
        if (dist->parsed()) return cmd_dist(dist_args);
        if (gen->parsed()) return cmd_gen(gen_args);
        if (verify->parsed()) return cmd_verify(verify_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
