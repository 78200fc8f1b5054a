// Acceptance gate: one pass/fail line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "kregular/arcbounds.hpp"
#include "kregular/asymptotics.hpp"
#include "kregular/finitecheck.hpp"
#include "kregular/series.hpp"

using namespace kregular;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail) {
    std::printf("criterion %d (%s): %s%s%s\n", criterion, label.c_str(), pass ? "PASS" : "FAIL",
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

}  // namespace

int main() {
    Timer total;

    // Exact tables shared by criteria 1 and 7.
    std::printf("building exact tables (k = 3, 4; t = 4; n <= 10000)...\n");
    std::fflush(stdout);
    auto tab3 = series::d_table(3, 4, 10000);
    auto tab4 = series::d_table(4, 4, 10000);

    {  // 1: two-term asymptotic ratios, 16 reference cells to 1e-5
        struct Cell {
            int k, r;
            double q[4];
        };
        const Cell cells[] = {
            {3, 1, {1.02401, 1.00616, 1.00249, 1.00084}},
            {3, 2, {1.06157, 1.00469, 1.00233, 1.00083}},
            {4, 1, {0.97589, 1.01034, 1.00401, 1.00135}},
            {4, 2, {0.97172, 1.00691, 1.00366, 1.00131}},
        };
        const long ns[4] = {10, 100, 1000, 10000};
        bool ok = true;
        double worst = 0.0;
        for (const auto& c : cells) {
            const auto& tab = (c.k == 3) ? tab3 : tab4;
            for (int i = 0; i < 4; ++i) {
                double q = asymptotics::q_ratio({c.k, 4, c.r}, tab, ns[i]);
                double err = std::fabs(q - c.q[i]);
                worst = std::max(worst, err);
                if (err >= 1e-5) ok = false;
            }
        }
        char d[64];
        std::snprintf(d, sizeof d, "worst |Q - reference| = %.2e", worst);
        report(1, "two-term ratio table, 16 cells within 1e-5", ok, d);
    }

    {  // 2: exact census at desk scale + stable equality families
        finitecheck::CensusScope scope;  // 2..10 x 2..10, n <= 300
        auto rep = finitecheck::census(scope);
        bool verdicts = rep.weak_only_k2_small_n && rep.strict_only_small_n;
        bool families = true;
        std::vector<finitecheck::Counterexample> expected;
        for (int t = 6; t <= 10; ++t) expected.push_back({2, t, t - 1, t, t + 3});
        for (int t = 5; t <= 10; ++t) expected.push_back({3, t, t - 1, t, t + 2});
        for (int k = 4; k <= 10; ++k)
            for (int t = 4; t <= 10; ++t) expected.push_back({k, t, t - 1, t, t});
        for (const auto& e : expected) {
            bool found = false;
            for (const auto& c : rep.strict_counterexamples)
                if (c == e) found = true;
            if (!found) families = false;
        }
        bool equalities = true;
        for (const auto& sp : finitecheck::stable_patterns(4, 10))
            if (!sp.equal) equalities = false;
        char d[128];
        std::snprintf(d, sizeof d, "%zu weak, %zu strict counterexamples; %.1f s",
                      rep.weak_counterexamples.size(), rep.strict_counterexamples.size(),
                      rep.seconds);
        report(2, "census verdicts + stable equality families", verdicts && families && equalities,
               d);
    }

    {  // 3: threshold search against the four reference cells, with certificates
        struct Cell {
            int k, t;
            double delta;
            long ref;
        };
        const Cell cells[] = {{2, 2, 8.6, 27633}, {3, 2, 3.95, 4718}, {4, 3, 2.3, 7430},
                              {10, 2, 1.7, 11333}};
        bool ok = true;
        std::string detail;
        for (const auto& c : cells) {
            auto r = finitecheck::find_N(c.k, c.t, c.delta);
            bool in_band = std::fabs(static_cast<double>(r.N - c.ref)) <= 0.02 * c.ref;
            if (!in_band || !r.certificate.passed()) ok = false;
            char buf[96];
            std::snprintf(buf, sizeof buf, "(%d,%d,%.2f): N=%ld ref=%ld cert=%s; ", c.k, c.t,
                          c.delta, r.N, c.ref, r.certificate.passed() ? "ok" : "FAIL");
            detail += buf;
        }
        report(3, "threshold cells within 2% with dominance certificates", ok, detail);
    }

    {  // 4: two-sided main-term assembly at (3,4,1), delta = 3
        bool ok = true;
        std::string detail;
        for (long n : {2000L, 5000L}) {
            auto tab = series::d_table(3, 4, n);
            finitecheck::EffectiveParams p{3, 4, 1, 3.0, n};
            auto res = finitecheck::sandwich_check(p, tab.counts[0][n]);
            if (!res.holds) ok = false;
            char buf[64];
            std::snprintf(buf, sizeof buf, "n=%ld: |dev|/radius=%.3e; ", n, res.deviation_ratio);
            detail += buf;
        }
        report(4, "exact count inside Bessel main terms +- error radius", ok, detail);
    }

    {  // 5: 500 seeded admissible points per explicit inequality
        bool ok = true;
        std::string detail;
        for (auto id : arcbounds::all_bounds()) {
            auto results = arcbounds::run_bound_suite(id, 500, 20260823ULL);
            int fail = 0;
            for (const auto& b : results)
                if (!b.holds) ++fail;
            if (fail > 0) {
                ok = false;
                detail += std::string(arcbounds::bound_name(id)) + ": " + std::to_string(fail) +
                          " failures; ";
            }
        }
        if (ok) detail = "8 bounds x 500 points, all hold";
        report(5, "explicit inequality suites", ok, detail);
    }

    {  // 6: oracle equivalences, exact
        bool ok = true;
        for (int k = 2; k <= 5 && ok; ++k)
            for (int t = 2; t <= 5 && ok; ++t) {
                auto tab = series::d_table(k, t, 30);
                for (int n = 0; n <= 30 && ok; ++n) {
                    auto oracle = series::enumerate_oracle(k, t, n);
                    for (int r = 1; r <= t; ++r)
                        if (tab.counts[r - 1][n] != oracle[r - 1]) ok = false;
                }
            }
        for (int k = 2; k <= 6 && ok; ++k) {
            auto pk = series::k_regular_table(k, 60);
            for (long n = 0; n <= 60; ++n)
                if (pk.coeffs[n] != series::indivisible_count(k, n)) ok = false;
        }
        {  // independent DP for p(100)
            std::vector<series::BigInt> dp(101, 0);
            dp[0] = 1;
            for (long part = 1; part <= 100; ++part)
                for (long v = part; v <= 100; ++v) dp[v] += dp[v - part];
            if (dp[100] != 190569292) ok = false;
            if (series::partition_table(100).coeffs[100] != 190569292) ok = false;
        }
        report(6, "convolution = enumeration; regular = indivisible; p(100)", ok, "");
    }

    {  // 7: difference-asymptotic convergence at n = 10000
        bool ok = true;
        std::string detail;
        struct Case {
            int k, r, s;
        };
        for (const auto& c : {Case{3, 1, 2}, Case{4, 1, 3}}) {
            const auto& tab = (c.k == 3) ? tab3 : tab4;
            series::BigInt diff = tab.counts[c.r - 1][10000] - tab.counts[c.s - 1][10000];
            LogScaled exact = logscaled_from_bigint(diff);
            LogScaled predicted = asymptotics::corollary_diff({c.k, 4, c.r}, c.s, 10000);
            double ratio = (exact / predicted).to_double();
            if (!(ratio >= 0.9 && ratio <= 1.1)) ok = false;
            char buf[64];
            std::snprintf(buf, sizeof buf, "(k=%d,r=%d,s=%d): ratio=%.4f; ", c.k, c.r, c.s, ratio);
            detail += buf;
        }
        report(7, "difference ratio in [0.9, 1.1] at n = 10000", ok, detail);
    }

    std::printf("acceptance total: %.1f s, %d failing criteria\n", total.seconds(), failures);
    return failures == 0 ? 0 : 1;
}
