#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kregular/arcbounds.hpp"
#include "kregular/asymptotics.hpp"
#include "kregular/finitecheck.hpp"
#include "kregular/series.hpp"
#include "kregular/table_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kregular;

namespace {

std::string cache_dir_or_default(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("KREGULAR_CACHE")) return env;
    return "";
}

// Build the exact table, or load it from the cache directory when present.
series::PartCountTable get_table(int k, int t, long N, const std::string& cache_dir) {
    if (cache_dir.empty()) return series::d_table(k, t, N);
    fs::create_directories(cache_dir);
    std::ostringstream name;
    name << "d_k" << k << "_t" << t << "_N" << N << ".tbl";
    fs::path path = fs::path(cache_dir) / name.str();
    if (fs::exists(path)) return table_io::load_part_count_table(path.string());
    auto tab = series::d_table(k, t, N);
    table_io::save_part_count_table(tab, path.string());
    return tab;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

json counterexamples_json(const std::vector<finitecheck::Counterexample>& list) {
    json arr = json::array();
    for (const auto& c : list) arr.push_back({{"k", c.k}, {"t", c.t}, {"r", c.r}, {"s", c.s}, {"n", c.n}});
    return arr;
}

json report_json(const finitecheck::CheckReport& rep) {
    return {
        {"schema_version", 1},
        {"scope",
         {{"k_min", rep.scope.k_min},
          {"k_max", rep.scope.k_max},
          {"t_min", rep.scope.t_min},
          {"t_max", rep.scope.t_max},
          {"n_max", rep.scope.n_max}}},
        {"weak_counterexamples", counterexamples_json(rep.weak_counterexamples)},
        {"strict_counterexamples", counterexamples_json(rep.strict_counterexamples)},
        {"verdicts",
         {{"weak_only_k2_n_le_8", rep.weak_only_k2_small_n},
          {"strict_only_n_le_16", rep.strict_only_small_n}}},
        {"cells_checked", rep.cells_checked},
        {"seconds", rep.seconds},
    };
}

json find_result_json(const finitecheck::FindResult& r) {
    json rates = json::array();
    for (const auto& rc : r.certificate.rates)
        rates.push_back({{"component", rc.component},
                         {"lhs_rate", rc.lhs_rate},
                         {"rhs_rate", rc.rhs_rate},
                         {"strict", rc.strict}});
    return {
        {"k", r.k},
        {"t", r.t},
        {"delta", r.delta},
        {"n_floor", r.n_floor},
        {"N", r.N},
        {"last_fail", r.last_fail},
        {"scanned_to", r.scanned_to},
        {"certificate",
         {{"margin_monotone", r.certificate.margin_monotone},
          {"window", r.certificate.window},
          {"rates", rates},
          {"rates_strict", r.certificate.rates_strict},
          {"passed", r.certificate.passed()}}},
    };
}

int run_exact(int k, int t, long N, const std::string& out, const std::string& cache) {
    auto tab = get_table(k, t, N, cache_dir_or_default(cache));
    std::ofstream file;
    table_io::write_part_count_csv(tab, open_out(file, out));
    return 0;
}

int run_figures(const std::string& id, const std::string& out, const std::string& cache,
                bool strict_mode) {
    std::ofstream file;
    std::ostream& os = open_out(file, out);
    if (id == "q-table") {
        os << "# q-table v1: Q = exact / two-term asymptotic, t = 4\n";
        os << "k,r,t,n,Q\n";
        const long ns[4] = {10, 100, 1000, 10000};
        for (int k : {3, 4}) {
            auto tab = get_table(k, 4, 10000, cache_dir_or_default(cache));
            for (int r : {1, 2}) {
                asymptotics::RegularityParams p{k, 4, r};
                for (long n : ns) {
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.5f", asymptotics::q_ratio(p, tab, n));
                    os << k << ',' << r << ",4," << n << ',' << buf << "\n";
                }
            }
        }
        return 0;
    }
    if (id == "nkt-table") {
        os << "# nkt-table v1: threshold N(k,t,delta) with dominance certificate\n";
        os << "k,t,delta,N,certificate\n";
        struct Cell {
            int k, t;
            double delta;
        };
        const Cell cells[] = {{2, 2, 8.6}, {3, 2, 3.95}, {4, 3, 2.3}, {10, 2, 1.7}};
        for (const auto& c : cells) {
            auto r = finitecheck::find_N(c.k, c.t, c.delta, 0, strict_mode);
            os << c.k << ',' << c.t << ',' << c.delta << ',' << r.N << ','
               << (r.certificate.passed() ? "pass" : "FAIL") << "\n";
        }
        return 0;
    }
    std::cerr << "unknown figure id: " << id << " (expected q-table or nkt-table)\n";
    return 2;
}

int run_validate(const std::string& suite, std::uint64_t seed, int count, long nmax,
                 const std::string& out) {
    json rep;
    rep["schema_version"] = 1;
    rep["suite"] = suite;
    bool ok = true;
    if (suite == "arc-bounds") {
        rep["seed"] = seed;
        rep["count_per_bound"] = count;
        json suites = json::array();
        for (auto id : arcbounds::all_bounds()) {
            auto results = arcbounds::run_bound_suite(id, count, seed);
            int failures = 0;
            json failed = json::array();
            for (const auto& b : results)
                if (!b.holds) {
                    ++failures;
                    failed.push_back({{"lhs", b.lhs},
                                      {"rhs", b.rhs},
                                      {"k", b.input.k},
                                      {"t", b.input.t},
                                      {"r", b.input.r},
                                      {"eta", b.input.point.eta},
                                      {"y", b.input.point.y},
                                      {"delta", b.input.point.delta}});
                }
            if (failures > 0) ok = false;
            suites.push_back({{"bound_id", arcbounds::bound_name(id)},
                              {"points", static_cast<int>(results.size())},
                              {"failures", failures},
                              {"failed", failed}});
        }
        rep["bounds"] = suites;
    } else if (suite == "census") {
        finitecheck::CensusScope scope;
        scope.n_max = nmax;
        auto census_rep = finitecheck::census(scope);
        rep["census"] = report_json(census_rep);
        ok = census_rep.weak_only_k2_small_n && census_rep.strict_only_small_n;
    } else if (suite == "oracle") {
        json cases = json::array();
        for (int k = 2; k <= 5 && ok; ++k)
            for (int t = 2; t <= 5 && ok; ++t) {
                long n_hi = std::min(nmax, 30L);
                auto tab = series::d_table(k, t, n_hi);
                for (long n = 0; n <= n_hi; ++n) {
                    auto oracle = series::enumerate_oracle(k, t, static_cast<int>(n));
                    for (int r = 1; r <= t; ++r)
                        if (tab.counts[r - 1][n] != oracle[r - 1]) {
                            ok = false;
                            cases.push_back({{"k", k}, {"t", t}, {"r", r}, {"n", n}});
                        }
                }
            }
        for (int k = 2; k <= 6; ++k) {
            auto pk = series::k_regular_table(k, 60);
            for (long n = 0; n <= 60; ++n)
                if (pk.coeffs[n] != series::indivisible_count(k, n)) {
                    ok = false;
                    cases.push_back({{"k", k}, {"n", n}, {"check", "indivisible"}});
                }
        }
        rep["mismatches"] = cases;
    } else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
    }
    rep["passed"] = ok;
    std::ofstream file;
    open_out(file, out) << rep.dump(2) << "\n";
    return ok ? 0 : 1;
}

int run_find_n(int k, int t, double delta, long scan_cap, bool strict_mode,
               const std::string& out) {
    auto r = finitecheck::find_N(k, t, delta, scan_cap, strict_mode);
    std::ofstream file;
    open_out(file, out) << find_result_json(r).dump(2) << "\n";
    return r.certificate.passed() ? 0 : 1;
}

int run_minimize(int k, int t, bool strict_mode, const std::string& out) {
    auto r = finitecheck::minimize_N(k, t, 0.0, 0.0, 0.05, strict_mode);
    std::ofstream file;
    open_out(file, out) << find_result_json(r).dump(2) << "\n";
    return r.certificate.passed() ? 0 : 1;
}

int run_census(const finitecheck::CensusScope& scope, const std::string& checkpoint,
               double interval, long chunk, int threads, const std::string& out) {
    finitecheck::CheckReport rep;
    if (!checkpoint.empty()) {
        rep = finitecheck::census_resumable(scope, checkpoint, interval, chunk);
    } else if (threads > 1) {
        // parallel over (k,t) pairs; deterministic merge by final sort
        std::vector<std::future<finitecheck::CheckReport>> futs;
        for (int k = scope.k_min; k <= scope.k_max; ++k)
            for (int t = scope.t_min; t <= scope.t_max; ++t)
                futs.push_back(std::async(std::launch::async, [k, t, &scope] {
                    finitecheck::CensusScope one{k, k, t, t, scope.n_max};
                    return finitecheck::census(one);
                }));
        rep.scope = scope;
        for (auto& f : futs) {
            auto part = f.get();
            rep.cells_checked += part.cells_checked;
            rep.weak_counterexamples.insert(rep.weak_counterexamples.end(),
                                            part.weak_counterexamples.begin(),
                                            part.weak_counterexamples.end());
            rep.strict_counterexamples.insert(rep.strict_counterexamples.end(),
                                              part.strict_counterexamples.begin(),
                                              part.strict_counterexamples.end());
        }
        finitecheck::detail::finalize_report(rep);
    } else {
        rep = finitecheck::census(scope);
    }
    std::ofstream file;
    open_out(file, out) << report_json(rep).dump(2) << "\n";
    return (rep.weak_only_k2_small_n && rep.strict_only_small_n) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and asymptotic part-count computations for k-regular partitions"};
    app.require_subcommand(1);

    int k = 2, t = 2, r = 1;
    long N = 100, nmax = 300, scan_cap = 0, chunk = 64;
    double delta = 3.0, interval = 60.0;
    int count = 500, threads = 1;
    std::uint64_t seed = 7;
    std::string out, cache, figure_id, suite, checkpoint;
    bool strict_mode = false;
    (void)r;

    auto* exact = app.add_subcommand("exact", "build the exact part-count table, emit CSV");
    exact->add_option("--k", k, "regularity bound")->required();
    exact->add_option("--t", t, "modulus")->required();
    exact->add_option("--N", N, "largest n")->required();
    exact->add_option("--out", out, "output path (default stdout)");
    exact->add_option("--cache", cache, "table cache directory");

    auto* figures = app.add_subcommand("figures", "reference numeric tables");
    figures->add_option("--id", figure_id, "q-table | nkt-table")->required();
    figures->add_option("--out", out, "output path (default stdout)");
    figures->add_option("--cache", cache, "table cache directory");
    figures->add_flag("--strict", strict_mode, "strict error-budget mode");

    auto* validate = app.add_subcommand("validate", "run a validation suite");
    validate->add_option("--suite", suite, "arc-bounds | census | oracle")->required();
    validate->add_option("--seed", seed, "RNG seed for sampled suites");
    validate->add_option("--count", count, "points per bound id");
    validate->add_option("--nmax", nmax, "largest n for census/oracle");
    validate->add_option("--out", out, "output path (default stdout)");

    auto* findn = app.add_subcommand("find-n", "threshold N(k,t,delta) with certificate");
    findn->add_option("--k", k, "regularity bound")->required();
    findn->add_option("--t", t, "modulus")->required();
    findn->add_option("--delta", delta, "arc-splitting parameter")->required();
    findn->add_option("--scan-cap", scan_cap, "scan limit override");
    findn->add_flag("--strict", strict_mode, "strict error-budget mode");
    findn->add_option("--out", out, "output path (default stdout)");

    auto* minimize = app.add_subcommand("minimize", "minimize N(k,t,delta) over delta");
    minimize->add_option("--k", k, "regularity bound")->required();
    minimize->add_option("--t", t, "modulus")->required();
    minimize->add_flag("--strict", strict_mode, "strict error-budget mode");
    minimize->add_option("--out", out, "output path (default stdout)");

    finitecheck::CensusScope scope;
    auto* census = app.add_subcommand("census", "exact counterexample census");
    census->add_option("--kmin", scope.k_min, "smallest k");
    census->add_option("--kmax", scope.k_max, "largest k");
    census->add_option("--tmin", scope.t_min, "smallest t");
    census->add_option("--tmax", scope.t_max, "largest t");
    census->add_option("--nmax", scope.n_max, "largest n");
    census->add_option("--checkpoint", checkpoint, "checkpoint path (enables resume)");
    census->add_option("--checkpoint-interval", interval, "seconds between checkpoints");
    census->add_option("--chunk", chunk, "rows per checkpointable chunk");
    census->add_option("--threads", threads, "worker threads (no checkpoint mode)");
    census->add_option("--out", out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exact->parsed()) return run_exact(k, t, N, out, cache);
        if (figures->parsed()) return run_figures(figure_id, out, cache, strict_mode);
        if (validate->parsed()) return run_validate(suite, seed, count, nmax, out);
        if (findn->parsed()) return run_find_n(k, t, delta, scan_cap, strict_mode, out);
        if (minimize->parsed()) return run_minimize(k, t, strict_mode, out);
        if (census->parsed()) return run_census(scope, checkpoint, interval, chunk, threads, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
