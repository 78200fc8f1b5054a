#ifndef KREGULAR_ASYMPTOTICS_HPP
#define KREGULAR_ASYMPTOTICS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kregular/logscaled.hpp"
#include "kregular/series.hpp"
#include "kregular/specfun.hpp"

namespace kregular {
namespace asymptotics {

struct RegularityParams {
    int k;
    int t;
    int r;
    double K() const { return 1.0 - 1.0 / k; }

    void validate() const {
        if (k < 2 || t < 2 || r < 1 || r > t)
            throw std::invalid_argument("RegularityParams: need k,t >= 2 and 1 <= r <= t");
    }
};

// Two-term truncation of the main asymptotic:
//   3^{1/4} e^{pi sqrt(2Kn/3)} / (pi t 2^{3/4} K^{1/4} n^{1/4} sqrt k)
//     * [log k + (3 log k/(8 sqrt6 pi sqrt K)
//                 - t pi (k-1) sqrt K/(2 sqrt6) (r/t - 1/2)) n^{-1/2}]
// The first n^{-1/2} coefficient carries 1/sqrt(K); this is the form that
// matches the reference numerics (it equals the Wright-expansion coefficient
// alpha_0/(16 sqrt A) with A = pi^2 K/6).
inline LogScaled hat_d(const RegularityParams& p, long n) {
    p.validate();
    if (n < 1) throw std::invalid_argument("hat_d: n >= 1 required");
    using std::numbers::pi;
    const double K = p.K();
    const double sqrtK = std::sqrt(K);
    const double logk = std::log(static_cast<double>(p.k));
    const double sqrt6 = std::sqrt(6.0);
    double log_front = 0.25 * std::log(3.0) + pi * std::sqrt(2.0 * K * n / 3.0) -
                       std::log(pi * p.t) - 0.75 * std::log(2.0) - 0.25 * std::log(K) -
                       0.25 * std::log(static_cast<double>(n)) - 0.5 * logk;
    double corr = 3.0 * logk / (8.0 * sqrt6 * pi * sqrtK) -
                  p.t * pi * (p.k - 1) * sqrtK / (2.0 * sqrt6) * (static_cast<double>(p.r) / p.t - 0.5);
    double bracket = logk + corr / std::sqrt(static_cast<double>(n));
    return LogScaled::from_log(bracket < 0 ? -1 : +1, log_front + std::log(std::fabs(bracket)));
}

// Main term of the difference D_k(r,t;n) - D_k(s,t;n), obtained by
// differencing the residue-dependent n^{-1/2} coefficient of hat_d:
//   (k-1) K^{1/4} (s-r) e^{pi sqrt(2Kn/3)} / (2^{9/4} 3^{1/4} t n^{3/4} sqrt k)
// At k = 2 this reduces to (s-r) e^{pi sqrt(n/3)} / (8 3^{1/4} t n^{3/4}),
// the distinct-partition case.
inline LogScaled corollary_diff(const RegularityParams& p, int s, long n) {
    p.validate();
    if (s <= p.r || s > p.t) throw std::domain_error("corollary_diff: need r < s <= t");
    if (n < 1) throw std::invalid_argument("corollary_diff: n >= 1 required");
    using std::numbers::pi;
    const double K = p.K();
    double lg = pi * std::sqrt(2.0 * K * n / 3.0) + std::log(static_cast<double>(p.k - 1)) +
                0.25 * std::log(K) - 2.25 * std::log(2.0) - 0.25 * std::log(3.0) -
                std::log(static_cast<double>(p.t)) - 0.75 * std::log(static_cast<double>(n)) -
                0.5 * std::log(static_cast<double>(p.k)) + std::log(static_cast<double>(s - p.r));
    return LogScaled::from_log(+1, lg);
}

// Q_k(r,t;n) = exact D / hat_d, as a plain real (the ratio is O(1)).
inline double q_ratio(const RegularityParams& p, const series::PartCountTable& table, long n) {
    p.validate();
    if (p.k != table.k || p.t != table.t || n > table.N)
        throw std::runtime_error("q_ratio: table does not cover requested (k,t,n)");
    const series::BigInt& D = table.counts[p.r - 1][n];
    LogScaled exact = logscaled_from_bigint(D);
    if (exact.is_zero()) return 0.0;
    return (exact / hat_d(p, n)).to_double();
}

}  // namespace asymptotics
}  // namespace kregular

#endif
