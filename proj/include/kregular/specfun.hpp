#ifndef KREGULAR_SPECFUN_HPP
#define KREGULAR_SPECFUN_HPP

#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "kregular/logscaled.hpp"

namespace kregular {

// Exact rational; mpq_class keeps lowest terms with positive denominator.
using Rational = mpq_class;
using BigInt = mpz_class;

// Exact big integer mapped into log scale (for ratios against e^{1000}-sized
// asymptotic quantities).
inline LogScaled logscaled_from_bigint(const mpz_class& v) {
    int sgn = mpz_sgn(v.get_mpz_t());
    if (sgn == 0) return LogScaled::zero();
    signed long exp2;
    double m = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return LogScaled::from_log(sgn, std::log(std::fabs(m)) + exp2 * std::numbers::ln2);
}

namespace specfun {

inline constexpr int kBernoulliCacheMax = 64;
inline constexpr int kEulerianMax = 30;

namespace detail {

// B_0..B_64 by the defining recurrence B_n = -1/(n+1) sum_{j<n} C(n+1,j) B_j.
inline const std::vector<Rational>& bernoulli_cache() {
    static const std::vector<Rational> cache = [] {
        std::vector<Rational> b(kBernoulliCacheMax + 1);
        b[0] = 1;
        for (int n = 1; n <= kBernoulliCacheMax; ++n) {
            Rational acc = 0;
            BigInt binom = 1;  // C(n+1, 0)
            for (int j = 0; j < n; ++j) {
                acc += Rational(binom) * b[j];
                binom = binom * (n + 1 - j) / (j + 1);
            }
            b[n] = -acc / Rational(binom);  // binom = C(n+1, n) = n+1
        }
        return b;
    }();
    return cache;
}

}  // namespace detail

// Exact Bernoulli number B_n.
inline Rational bernoulli_number(int n) {
    if (n < 0 || n > kBernoulliCacheMax)
        throw std::out_of_range("bernoulli_number: n outside cache bound 64");
    return detail::bernoulli_cache()[n];
}

// Exact Bernoulli polynomial B_n(x) = sum_j C(n,j) B_j x^{n-j}.
inline Rational bernoulli_poly(int n, const Rational& x) {
    if (n < 0 || n > kBernoulliCacheMax)
        throw std::out_of_range("bernoulli_poly: n outside cache bound 64");
    const auto& b = detail::bernoulli_cache();
    Rational acc = 0;
    BigInt binom = 1;
    Rational xpow = 1;
    // accumulate from j = n down so x powers build upward
    std::vector<Rational> terms(n + 1);
    for (int j = n; j >= 0; --j) {
        terms[j] = Rational(binom) * b[j];  // x power applied below
        binom = binom * j / (n - j + 1);
    }
    for (int j = n; j >= 0; --j) {
        acc += terms[j] * xpow;
        xpow *= x;
    }
    return acc;
}

// zeta(n) for integer n >= 2.  Even n: exact formula through B_n.
// Odd n: direct series with integral tail bound, accurate to ~1e-16.
inline double zeta_int(int n) {
    if (n < 2) throw std::domain_error("zeta_int: n >= 2 required");
    if (n % 2 == 0 && n <= kBernoulliCacheMax) {
        // zeta(2m) = |B_2m| (2pi)^{2m} / (2 (2m)!)
        Rational b = bernoulli_number(n);
        double lg = n * std::log(2.0 * std::numbers::pi) - std::lgamma(n + 1.0) - std::log(2.0);
        return std::abs(b.get_d()) * std::exp(lg);
    }
    // Euler-Maclaurin: direct sum to M, then integral + trapezoid + B_{2j}
    // corrections; remainder ~ |B_10|/10! n^9 M^{-n-9} << 1e-16 at M = 40.
    const int M = 40;
    double s = 0.0;
    for (int m = M - 1; m >= 1; --m) s += std::pow(m, -n);
    double Mn = std::pow(M, -n);
    s += static_cast<double>(M) * Mn / (n - 1) + 0.5 * Mn;
    double rising = n;              // n (n+1) ... (n+2j-2)
    double Mpow = Mn / M;           // M^{-n-2j+1}
    for (int j = 1; j <= 4; ++j) {
        double B2j = bernoulli_number(2 * j).get_d();
        double fact = std::exp(std::lgamma(2 * j + 1.0));
        s += B2j / fact * rising * Mpow;
        rising *= (n + 2.0 * j - 1) * (n + 2.0 * j);
        Mpow /= static_cast<double>(M) * M;
    }
    return s;
}

// Lehmer's uniform bound 2 zeta(n) n! / (2pi)^n for |B_n(x)| on [0,1].
inline double lehmer_bound(int n) {
    if (n < 2) throw std::domain_error("lehmer_bound: n >= 2 required");
    double lg = std::lgamma(n + 1.0) - n * std::log(2.0 * std::numbers::pi);
    return 2.0 * zeta_int(n) * std::exp(lg);
}

// Eulerian numbers <N,0>..<N,N-1> via <N,m> = (m+1)<N-1,m> + (N-m)<N-1,m-1>.
inline std::vector<BigInt> eulerian_row(int N) {
    if (N < 1 || N > kEulerianMax)
        throw std::out_of_range("eulerian_row: N outside [1, 30]");
    std::vector<BigInt> row{1};
    for (int n = 2; n <= N; ++n) {
        std::vector<BigInt> next(n);
        for (int m = 0; m < n; ++m) {
            BigInt v = 0;
            if (m < n - 1) v += BigInt(m + 1) * row[m];
            if (m >= 1) v += BigInt(n - m) * row[m - 1];
            next[m] = v;
        }
        row = std::move(next);
    }
    return row;
}

// Li_{-N}(q) as the rational function (1-q)^{-(N+1)} sum_m <N,m> q^{N-m}.
inline std::complex<double> polylog_neg(int N, std::complex<double> q) {
    if (std::abs(q) >= 1.0)
        throw std::domain_error("polylog_neg: |q| < 1 required");
    if (N < 0) throw std::domain_error("polylog_neg: N >= 0 required");
    if (N == 0) return q / (1.0 - q);
    auto row = eulerian_row(N);
    std::complex<double> num = 0.0;
    // Horner in q: sum_m <N,m> q^{N-m} = q * (<N,N-1> + q(<N,N-2> + ...))
    for (int m = 0; m < N; ++m) num = num * q + row[m].get_d();
    num *= q;
    return num / std::pow(1.0 - q, N + 1);
}

// ---- scaled modified Bessel functions -------------------------------------

namespace detail {

// Power series I_s(x) = sum_m (x/2)^{2m+s} / (m! (m+s)!); all terms positive.
inline double bessel_i_series(int s, double x) {
    double h = x / 2.0;
    double term = std::pow(h, s) / std::tgamma(s + 1.0);
    double sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= h * h / (m * (m + s));
        sum += term;
        if (term < sum * 1e-18) break;
    }
    return sum;
}

// Large-argument expansion e^x/sqrt(2 pi x) sum_j (-1)^j a_j(s)/x^j, truncated
// at the smallest term; strictly alternating once 4s^2 < (2j-1)^2, so the
// first omitted term bounds the remainder.
inline LogScaled bessel_i_asymptotic(int s, double x) {
    double mu = 4.0 * s * s;
    double sum = 1.0;
    double term = 1.0;
    double prev_abs = 1.0;
    for (int j = 1; j < 200; ++j) {
        double f = (mu - (2.0 * j - 1.0) * (2.0 * j - 1.0)) / (8.0 * j * x);
        term *= -f;
        if (std::fabs(term) >= prev_abs) break;  // smallest term reached
        sum += term;
        prev_abs = std::fabs(term);
        if (std::fabs(term) < 1e-17 * sum) break;
    }
    double logpre = x - 0.5 * std::log(2.0 * std::numbers::pi * x);
    return LogScaled::from_log(+1, logpre + std::log(sum));
}

}  // namespace detail

// I_{-s}(x) = I_s(x) for integer s, as LogScaled, relative error <= 1e-12.
// Regime switch at x = 30 between the power series and the asymptotic
// expansion truncated at its smallest term.
inline LogScaled scaled_bessel_I(int s, double x) {
    if (s != 0 && s != 1 && s != 2 && s != 4)
        throw std::domain_error("scaled_bessel_I: order must be in {0,1,2,4}");
    if (x <= 0.0) throw std::domain_error("scaled_bessel_I: x > 0 required");
    if (x <= 30.0) return LogScaled::from_double(detail::bessel_i_series(s, x));
    return detail::bessel_i_asymptotic(s, x);
}

// Uniform op entry point mirroring the LogScaled arithmetic contract.
enum class LogScaledOp { Add, Mul, Compare };

inline LogScaled logscaled_arith(const LogScaled& a, const LogScaled& b, LogScaledOp op) {
    switch (op) {
        case LogScaledOp::Add: return a + b;
        case LogScaledOp::Mul: return a * b;
        default: throw std::invalid_argument("logscaled_arith: Compare returns an ordering; use LogScaled::compare");
    }
}

}  // namespace specfun
}  // namespace kregular

#endif
