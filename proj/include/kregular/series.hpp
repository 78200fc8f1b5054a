#ifndef KREGULAR_SERIES_HPP
#define KREGULAR_SERIES_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace kregular {
namespace series {

using BigInt = mpz_class;

enum class SeriesLabel : std::uint32_t {
    P = 1,    // partition function p(n)
    Pk = 2,   // k-regular partition count p_k(n)
    Ell = 3,  // divisor-sum coefficients of L_k(r,t;q)
    D = 4,    // part counts D_k(r,t;n)
};

// Arbitrary-precision coefficient sequence tagged with the generating
// function it represents.
struct CoefficientTable {
    SeriesLabel label;
    int k = 0, r = 0, t = 0;  // unused fields stay 0
    long N = 0;
    std::vector<BigInt> coeffs;  // indexed 0..N
};

// Exact D_k(r,t;n) for all residues 1..t plus totals P_k(n).
struct PartCountTable {
    int k = 0, t = 0;
    long N = 0;
    std::vector<std::vector<BigInt>> counts;  // counts[r-1][n], r = 1..t
    std::vector<BigInt> totals;               // P_k(n)
};

namespace detail {

// generalized pentagonal numbers m(3m-1)/2, m(3m+1)/2 with signs (-1)^m
struct Pentagonal {
    long g;
    int sign;
};

inline std::vector<Pentagonal> pentagonal_numbers(long N) {
    std::vector<Pentagonal> out;
    for (long m = 1;; ++m) {
        long g1 = m * (3 * m - 1) / 2;
        if (g1 > N) break;
        int s = (m % 2 == 1) ? -1 : +1;
        out.push_back({g1, s});
        long g2 = m * (3 * m + 1) / 2;
        if (g2 <= N) out.push_back({g2, s});
    }
    return out;
}

}  // namespace detail

// p(0..N) via Euler's pentagonal recurrence.
inline CoefficientTable partition_table(long N) {
    if (N < 0) throw std::invalid_argument("partition_table: N >= 0 required");
    CoefficientTable tab{SeriesLabel::P, 0, 0, 0, N, {}};
    tab.coeffs.assign(N + 1, 0);
    tab.coeffs[0] = 1;
    auto pent = detail::pentagonal_numbers(N);
    for (long n = 1; n <= N; ++n) {
        BigInt acc = 0;
        for (const auto& [g, s] : pent) {
            if (g > n) break;
            if (s < 0)
                acc += tab.coeffs[n - g];
            else
                acc -= tab.coeffs[n - g];
        }
        tab.coeffs[n] = acc;
    }
    return tab;
}

// p_k(0..N) from xi_k(q) (q;q)_inf = (q^k;q^k)_inf: the right-hand side is
// supported on k * (pentagonal numbers), so the recurrence stays sparse.
inline CoefficientTable k_regular_table(int k, long N) {
    if (k < 2) throw std::invalid_argument("k_regular_table: k >= 2 required");
    if (N < 0) throw std::invalid_argument("k_regular_table: N >= 0 required");
    CoefficientTable tab{SeriesLabel::Pk, k, 0, 0, N, {}};
    tab.coeffs.assign(N + 1, 0);
    tab.coeffs[0] = 1;
    auto pent = detail::pentagonal_numbers(N);
    // rhs(n): coefficient of q^n in (q^k;q^k)_inf
    std::vector<int> rhs(N + 1, 0);
    rhs[0] = 1;
    for (const auto& [g, s] : detail::pentagonal_numbers(N / k)) rhs[g * k] += s;
    for (long n = 1; n <= N; ++n) {
        BigInt acc = rhs[n];
        for (const auto& [g, s] : pent) {
            if (g > n) break;
            if (s < 0)
                acc += tab.coeffs[n - g];
            else
                acc -= tab.coeffs[n - g];
        }
        tab.coeffs[n] = acc;
    }
    return tab;
}

// ell(n) = #{d|n : d == r mod t} - k #{d|n : k|d, d/k == r mod t}, n = 1..N,
// by sieving multiples of every m == r (mod t); no factorization.
// Values fit in machine words for any table size we build (|ell| <= (k+1) d(n)).
inline std::vector<std::int64_t> ell_coeffs(int k, int r, int t, long N) {
    if (k < 2 || t < 1 || r < 1 || r > t)
        throw std::invalid_argument("ell_coeffs: need k >= 2, 1 <= r <= t");
    std::vector<std::int64_t> ell(N + 1, 0);
    for (long m = r; m <= N; m += t) {
        for (long j = m; j <= N; j += m) ell[j] += 1;
        long km = static_cast<long>(k) * m;
        for (long j = km; j <= N; j += km) ell[j] -= k;
    }
    return ell;
}

// Exact D_k(r,t;n) for all residues via the Cauchy product
// D_k(r,t;n) = sum_{j=1}^{n} ell(j) p_k(n-j), small-int x big-int.
inline PartCountTable d_table(int k, int t, long N) {
    if (k < 2 || t < 2) throw std::invalid_argument("d_table: k, t >= 2 required");
    if (N < 0) throw std::invalid_argument("d_table: N >= 0 required");
    auto pk = k_regular_table(k, N);
    PartCountTable tab;
    tab.k = k;
    tab.t = t;
    tab.N = N;
    tab.counts.assign(t, std::vector<BigInt>(N + 1, 0));
    tab.totals.assign(N + 1, 0);
    BigInt term;
    for (int r = 1; r <= t; ++r) {
        auto ell = ell_coeffs(k, r, t, N);
        auto& row = tab.counts[r - 1];
        for (long n = 1; n <= N; ++n) {
            BigInt acc = 0;
            for (long j = 1; j <= n; ++j) {
                std::int64_t e = ell[j];
                if (e == 0) continue;
                if (e > 0)
                    mpz_addmul_ui(acc.get_mpz_t(), pk.coeffs[n - j].get_mpz_t(),
                                  static_cast<unsigned long>(e));
                else
                    mpz_submul_ui(acc.get_mpz_t(), pk.coeffs[n - j].get_mpz_t(),
                                  static_cast<unsigned long>(-e));
            }
            row[n] = acc;
            tab.totals[n] += acc;
        }
    }
    return tab;
}

// Brute-force oracle: enumerate every partition of n with all part
// multiplicities < k and tally parts by residue class mod t.
inline std::vector<BigInt> enumerate_oracle(int k, int t, int n) {
    if (n > 40) throw std::length_error("enumerate_oracle: n <= 40 (combinatorial explosion guard)");
    if (n < 0 || k < 2 || t < 1) throw std::invalid_argument("enumerate_oracle: bad arguments");
    std::vector<BigInt> tally(t, 0);
    // parts chosen in decreasing order; mult[] counts within the current part
    std::vector<int> part_of;  // flattened list of parts in the current partition
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            for (int p : part_of) tally[((p - 1) % t)] += 1;  // residue r in 1..t -> slot r-1
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            for (int mult = 1; mult < k && mult * p <= remaining; ++mult) {
                for (int i = 0; i < mult; ++i) part_of.push_back(p);
                self(self, remaining - mult * p, p - 1);
                for (int i = 0; i < mult; ++i) part_of.pop_back();
            }
        }
    };
    rec(rec, n, n);
    // slot r-1 currently holds residue class ((p-1) mod t)+1 = r; already aligned
    return tally;
}

// Number of partitions of n with no part divisible by k (bounded DP).
inline BigInt indivisible_count(int k, long n) {
    if (k < 2 || n < 0) throw std::invalid_argument("indivisible_count: bad arguments");
    std::vector<BigInt> dp(n + 1, 0);
    dp[0] = 1;
    for (long part = 1; part <= n; ++part) {
        if (part % k == 0) continue;
        for (long v = part; v <= n; ++v) dp[v] += dp[v - part];
    }
    return dp[n];
}

}  // namespace series
}  // namespace kregular

#endif
