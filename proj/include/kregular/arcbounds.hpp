#ifndef KREGULAR_ARCBOUNDS_HPP
#define KREGULAR_ARCBOUNDS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kregular/logscaled.hpp"
#include "kregular/specfun.hpp"

namespace kregular {
namespace arcbounds {

using Complex = std::complex<double>;
using std::numbers::pi;

// Point z = eta + iy on the integration line, with the arc-splitting
// parameter delta (Delta = sqrt(delta^2 - 1)).
struct ArcPoint {
    double eta = 0.0;
    double y = 0.0;
    double delta = 0.0;

    double Delta() const { return std::sqrt(delta * delta - 1.0); }
    Complex z() const { return {eta, y}; }
    bool in_major() const { return std::fabs(y) <= Delta() * eta; }
    bool in_minor() const { return std::fabs(y) >= Delta() * eta && std::fabs(y) <= pi; }
};

// Log-magnitude + phase representation for values like exp(pi^2 K/(6z)).
struct LogComplex {
    double logmag;
    double phase;

    Complex to_complex() const { return std::polar(std::exp(logmag), phase); }
};

// Phi_k(z) = k^{-1/2} exp(pi^2 K/(6z) + z(k-1)/24)
inline LogComplex phi(int k, Complex z) {
    if (z.real() <= 0.0) throw std::domain_error("phi: Re z > 0 required");
    double K = 1.0 - 1.0 / k;
    Complex w = pi * pi * K / (6.0 * z) + z * (k - 1.0) / 24.0;
    return {w.real() - 0.5 * std::log(static_cast<double>(k)), w.imag()};
}

// E_k(z) and derivatives: E_k^{(N)}(z) = (-1)^N (Li_{-N}(q) - k^{N+1} Li_{-N}(q^k)),
// with the power series sum_m (1-k^{m+N+1}) B_{N+m+1}/((N+m+1) m!) z^m taken
// for small |z| where the polylog form cancels catastrophically.
inline Complex E_k_eval(int k, Complex z, int N = 0) {
    if (k < 2 || N < 0) throw std::invalid_argument("E_k_eval: bad arguments");
    double az = std::abs(z);
    if (az == 0.0 || az < pi / k) {
        // series branch; terms shrink like (k|z|/2pi)^m, so run until two
        // consecutive nonzero terms drop below the target (odd Bernoulli
        // numbers vanish, leaving every other term zero)
        Complex sum = 0.0, zpow = 1.0;
        double fact = 1.0;
        int small_streak = 0;
        for (int m = 0; m + N + 1 <= specfun::kBernoulliCacheMax; ++m) {
            double B = specfun::bernoulli_number(N + m + 1).get_d();
            if (B != 0.0) {
                double coeff = (1.0 - std::pow(static_cast<double>(k), m + N + 1)) * B /
                               ((N + m + 1) * fact);
                Complex term = coeff * zpow;
                sum += term;
                if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) {
                    if (++small_streak >= 2 && m > 4) break;
                } else {
                    small_streak = 0;
                }
            }
            zpow *= z;
            fact *= (m + 1);
        }
        return sum;
    }
    Complex q = std::exp(-z);
    Complex qk = std::exp(-static_cast<double>(k) * z);
    Complex val = specfun::polylog_neg(N, q) -
                  std::pow(static_cast<double>(k), N + 1) * specfun::polylog_neg(N, qk);
    return (N % 2 == 0) ? val : -val;
}

// Value plus a conservative bound on the truncation tail.
struct ValueWithTail {
    Complex value;
    double tail;
};

struct AccuracyError : std::runtime_error {
    long required_M;
    AccuracyError(const std::string& msg, long M) : std::runtime_error(msg), required_M(M) {}
};

// Truncation length so that |q|^M < eps (1 - |q|).
inline long xi_truncation(double abs_q, double eps = 1e-18, long cap = 2'000'000) {
    double target = std::log(eps) + std::log1p(-abs_q);
    long M = static_cast<long>(std::ceil(target / std::log(abs_q))) + 1;
    if (M > cap)
        throw AccuracyError("xi_numeric: q too close to 1 for requested accuracy", M);
    return M;
}

// xi_k(q) = prod_{n <= M} (1 - q^{kn})/(1 - q^n), with tail estimate.
inline ValueWithTail xi_numeric(int k, Complex z, long M = 0) {
    if (z.real() <= 0.0) throw std::domain_error("xi_numeric: Re z > 0 required");
    Complex q = std::exp(-z);
    double aq = std::abs(q);
    if (M == 0) M = xi_truncation(aq);
    Complex prod = 1.0;
    Complex qn = 1.0, qkn = 1.0;
    Complex qk = std::pow(q, k);
    for (long n = 1; n <= M; ++n) {
        qn *= q;
        qkn *= qk;
        prod *= (1.0 - qkn) / (1.0 - qn);
        if (std::abs(qn) < 1e-19 && std::abs(qkn) < 1e-19) break;
    }
    // |log of remaining factors| <= sum_{n>M} (|q|^n + |q|^{kn})/(1-|q|)
    double rem = 2.0 * std::pow(aq, M + 1) / ((1.0 - aq) * (1.0 - aq));
    double tail = std::abs(prod) * (std::exp(rem) - 1.0);
    return {prod, tail};
}

// Transformation form Phi_k(z) P(eps^k)/P(eps) with eps = exp(-4 pi^2/(kz)).
inline Complex xi_transform(int k, Complex z) {
    if (z.real() <= 0.0) throw std::domain_error("xi_transform: Re z > 0 required");
    Complex eps = std::exp(-4.0 * pi * pi / (static_cast<double>(k) * z));
    auto Pinv = [](Complex e) {  // (e; e)_inf = 1/P(e)
        Complex prod = 1.0, en = 1.0;
        for (int n = 1; n < 4000; ++n) {
            en *= e;
            prod *= (1.0 - en);
            if (std::abs(en) < 1e-19) break;
        }
        return prod;
    };
    Complex ratio = Pinv(eps) / Pinv(std::pow(eps, k));  // P(eps^k)/P(eps)
    return phi(k, z).to_complex() * ratio;
}

// L_k(r,t;q) = sum_{l >= 0} E_k((l t + r) z), truncated with geometric tail.
inline ValueWithTail L_numeric(int k, int r, int t, Complex z, long M = 0) {
    if (z.real() <= 0.0) throw std::domain_error("L_numeric: Re z > 0 required");
    if (k < 2 || r < 1 || r > t) throw std::invalid_argument("L_numeric: bad (k,r,t)");
    auto envelope = [&](double u) {
        // |E_k(w)| <= |q|/(1-|q|) + k|q^k|/(1-|q^k|) at u = Re w
        double e1 = std::exp(-u), ek = std::exp(-k * u);
        return e1 / (1.0 - e1) + k * ek / (1.0 - ek);
    };
    if (M == 0) M = static_cast<long>(60.0 / (t * z.real())) + 8;
    Complex sum = 0.0;
    for (long l = 0; l <= M; ++l) sum += E_k_eval(k, (static_cast<double>(l) * t + r) * z);
    double u_next = ((M + 1.0) * t + r) * z.real();
    double tail = envelope(u_next) / (1.0 - std::exp(-t * z.real()));
    return {sum, tail};
}

// ---- explicit inequality validation ---------------------------------------

enum class BoundId {
    MAJOR_L,      // five-term major-arc expansion of L
    MAJOR_L_ABS,  // absolute major-arc bound on L
    MAJOR_XI,     // |xi - Phi| against 7|Phi e^{-4pi^2/kz}|
    MINOR_XI,     // minor-arc bound on |xi|
    MINOR_L,      // minor-arc bound on |L|
    BESSEL_TAIL,  // contour-truncation bound for I_nu
    LOGP_ABS,     // log P(q) <= pi^2/(6(1-q))
    EKM_SERIES,   // E_k series remainder against its coefficient tail bound
};

inline const char* bound_name(BoundId id) {
    switch (id) {
        case BoundId::MAJOR_L: return "MAJOR_L";
        case BoundId::MAJOR_L_ABS: return "MAJOR_L_ABS";
        case BoundId::MAJOR_XI: return "MAJOR_XI";
        case BoundId::MINOR_XI: return "MINOR_XI";
        case BoundId::MINOR_L: return "MINOR_L";
        case BoundId::BESSEL_TAIL: return "BESSEL_TAIL";
        case BoundId::LOGP_ABS: return "LOGP_ABS";
        case BoundId::EKM_SERIES: return "EKM_SERIES";
    }
    return "?";
}

struct BoundInput {
    int k = 2;
    int t = 2;
    int r = 1;
    ArcPoint point;   // eta/y/delta for arc bounds
    double x = 0.0;   // BESSEL_TAIL argument
    double mu = 0.0;  // BESSEL_TAIL contour abscissa
    int s = 1;        // BESSEL_TAIL order (I_{-s})
    double q = 0.0;   // LOGP_ABS argument
};

struct BoundInstance {
    BoundId bound_id;
    BoundInput input;
    double lhs = 0.0;  // numerically evaluated quantity, truncation folded in
    double rhs = 0.0;  // the explicit bound
    bool holds = false;
    double margin() const { return rhs - lhs; }
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool cond, const char* hypothesis) {
    if (!cond) throw PreconditionError(std::string("verify_bound: hypothesis failed: ") + hypothesis);
}

// int_0^infty (c+u)^{s-1} e^{-u} du = c^{s-1} + (s-1)c^{s-2} + ... + (s-1)!
inline double shifted_gamma_poly(int s, double c) {
    double acc = 0.0, coeff = 1.0;
    for (int j = s - 1; j >= 0; --j) {
        acc += coeff * std::pow(c, j);
        coeff *= (j + 1);  // (s-1)(s-2)...: falling product
    }
    return acc;
}

// Ihat_{-s}(x) over the vertical segment t = mu + iv, |v| <= Delta mu,
// by Simpson quadrature (integrand is conjugate-symmetric, take Re).
inline double bessel_contour_main(int s, double x, double mu, double Delta) {
    long n = 40000;  // even
    double V = Delta * mu;
    double h = 2.0 * V / n;
    auto f = [&](double v) {
        Complex t{mu, v};
        Complex val = std::pow(t, s - 1) * std::exp(x * x / (4.0 * t) + t);
        return val.real();
    };
    double sum = f(-V) + f(V);
    for (long i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(-V + i * h);
    double integral = sum * h / 3.0;
    return std::pow(x / 2.0, -s) * integral / (2.0 * pi);
}

}  // namespace detail

inline BoundInstance verify_bound(BoundId id, const BoundInput& in) {
    BoundInstance out;
    out.bound_id = id;
    out.input = in;
    const ArcPoint& pt = in.point;
    const int k = in.k, t = in.t, r = in.r;
    const double delta = pt.delta;

    switch (id) {
        case BoundId::MAJOR_L: {
            detail::require(k >= 2 && t >= 1 && r >= 1 && r <= t, "1 <= r <= t, k >= 2");
            detail::require(pt.eta > 0 && pt.in_major(), "major arc: |y| <= Delta eta");
            Complex z = pt.z();
            detail::require(std::abs(z) <= pi / (static_cast<double>(k) * t), "|z| <= pi/(kt)");
            auto L = L_numeric(k, r, t, z);
            double a = static_cast<double>(r) / t;
            double B1 = a - 0.5;
            double B2 = a * a - a + 1.0 / 6.0;
            double B4 = std::pow(a, 4) - 2.0 * std::pow(a, 3) + a * a - 1.0 / 30.0;
            Complex tz = static_cast<double>(t) * z;
            Complex approx = std::log(static_cast<double>(k)) / tz - (k - 1.0) / 2.0 * B1 +
                             (k * k - 1.0) / 24.0 * B2 * tz -
                             (std::pow(static_cast<double>(k), 4) - 1.0) / 2880.0 * B4 * tz * tz * tz;
            out.lhs = std::abs(L.value - approx) + L.tail;
            double atz5 = std::pow(std::abs(tz), 5);
            double k6 = std::pow(static_cast<double>(k), 6);
            out.rhs = (1.94 * std::pow(delta, 7) * k6 / (30240.0 * std::pow(pi, 6)) +
                       0.1216 * k6 / 30240.0 + 0.0412 * k6) *
                      atz5;
            break;
        }
        case BoundId::MAJOR_L_ABS: {
            detail::require(k >= 2 && r >= 1 && r <= t, "1 <= r <= t, k >= 2");
            detail::require(pt.eta > 0 && pt.in_major(), "major arc: |y| <= Delta eta");
            detail::require(pt.eta < pi / (static_cast<double>(k) * t * delta), "eta < pi/(kt delta)");
            Complex z = pt.z();
            auto L = L_numeric(k, r, t, z);
            out.lhs = std::abs(L.value) + L.tail;
            double atz = std::abs(static_cast<double>(t) * z);
            out.rhs = (41.0 + std::log(static_cast<double>(k))) / atz +
                      1.94 * std::pow(delta, 7) / (30240.0 * atz);
            break;
        }
        case BoundId::MAJOR_XI: {
            detail::require(k >= 2, "k >= 2");
            detail::require(pt.eta > 0 && pt.in_major(), "major arc: |y| <= Delta eta");
            detail::require(pt.eta < 4.0 * pi * pi / (2.35 * delta), "eta < 4pi^2/(2.35 delta)");
            // the proof additionally needs |eps| <= e^{-2}:
            detail::require(pt.eta < 2.0 * pi * pi / (delta * delta * k), "eta < 2pi^2/(delta^2 k)");
            Complex z = pt.z();
            double r0 = (4.0 * pi * pi / (static_cast<double>(k) * z)).real();
            if (r0 <= 25.0) {
                auto xi = xi_numeric(k, z);
                Complex Phi = phi(k, z).to_complex();
                out.lhs = std::abs(xi.value - Phi) + xi.tail;
                out.rhs = 7.0 * std::abs(Phi) * std::exp(-r0);
            } else {
                // |eps| = e^{-r0} sits below the double-precision noise floor
                // of the xi product, so evaluate relative to |Phi||eps|: with
                // f = P(eps^k)/P(eps) - 1 one has |f + eps| <= 5|eps|^2 for
                // |eps| <= e^{-2}, hence |xi - Phi| <= |Phi||eps|(1 + 5|eps|).
                double abs_eps = std::exp(-r0);
                out.lhs = 1.0 + 5.0 * abs_eps;
                out.rhs = 7.0;
            }
            break;
        }
        case BoundId::MINOR_XI: {
            detail::require(k >= 2 && t >= 2, "k, t >= 2");
            detail::require(pt.eta > 0 && pt.in_minor(), "minor arc: Delta eta <= |y| <= pi");
            detail::require(pt.eta < 12.0 * std::log(static_cast<double>(k)) / k,
                            "eta < 12 log k / k");
            auto xi = xi_numeric(k, pt.z());
            out.lhs = std::abs(xi.value) + xi.tail;
            double K = 1.0 - 1.0 / k;
            out.rhs = 3.0 * std::exp(pi * pi * K / (6.0 * pt.eta) *
                                     (0.5 + 3.0 / (pi * pi) + 6.0 / (pi * pi * delta * delta)));
            break;
        }
        case BoundId::MINOR_L: {
            detail::require(k >= 2 && t >= 2 && r >= 1 && r <= t, "1 <= r <= t, k,t >= 2");
            detail::require(pt.eta > 0 && pt.eta < 1.0 / k, "0 < eta < 1/k");
            auto L = L_numeric(k, r, t, pt.z());
            out.lhs = std::abs(L.value) + L.tail;
            out.rhs = 3.1 / (pt.eta * pt.eta);
            break;
        }
        case BoundId::BESSEL_TAIL: {
            detail::require(in.x > 0 && in.x <= 20.0, "0 < x <= 20 (double-precision regime)");
            detail::require(in.mu > 0 && delta > 1.0, "mu > 0, delta > 1");
            detail::require(in.s == 1 || in.s == 2 || in.s == 4, "s in {1,2,4}");
            double Delta = pt.Delta();
            double I = specfun::scaled_bessel_I(in.s, in.x).to_double();
            double Ihat = detail::bessel_contour_main(in.s, in.x, in.mu, Delta);
            out.lhs = std::fabs(I - Ihat);
            // on the tail rays t = mu - u +- i Delta mu one has |e^t| =
            // e^{mu - u}, so the envelope carries an explicit e^{mu} factor
            out.rhs = (1.0 / pi) * std::pow(in.x / 2.0, -in.s) *
                      std::exp(in.mu + in.x * in.x / (4.0 * in.mu * Delta * Delta)) *
                      detail::shifted_gamma_poly(in.s, delta * in.mu);
            break;
        }
        case BoundId::LOGP_ABS: {
            detail::require(in.q > 0.0 && in.q < 1.0, "0 < q < 1");
            // log P(q) = sum_m q^m/(m(1-q^m))
            double s = 0.0;
            double qm = 1.0;
            for (int m = 1; m < 100000; ++m) {
                qm *= in.q;
                double term = qm / (m * (1.0 - qm));
                s += term;
                if (term < 1e-18 * s) break;
            }
            out.lhs = s;
            out.rhs = pi * pi / (6.0 * (1.0 - in.q));
            break;
        }
        case BoundId::EKM_SERIES: {
            detail::require(k >= 2, "k >= 2");
            Complex z = pt.z();
            double az = std::abs(z);
            detail::require(az > 0.0 && az <= pi / k, "0 < |z| <= pi/k");
            // E_k via polylog form, minus the first five series terms
            Complex q = std::exp(-z), qk = std::exp(-static_cast<double>(k) * z);
            Complex E = specfun::polylog_neg(0, q) -
                        static_cast<double>(k) * specfun::polylog_neg(0, qk);
            const int M0 = 5;
            Complex truncated = 0.0, zpow = 1.0;
            double fact = 1.0;
            for (int m = 0; m < M0; ++m) {
                double B = specfun::bernoulli_number(m + 1).get_d();
                truncated += (1.0 - std::pow(static_cast<double>(k), m + 1)) * B /
                             ((m + 1) * fact) * zpow;
                zpow *= z;
                fact *= (m + 1);
            }
            out.lhs = std::abs(E - truncated);
            // |e_{k,m}/m!| <= pi^2/3 (k/2pi)^{m+1}; geometric tail from m = M0
            double rho = k * az / (2.0 * pi);
            out.rhs = pi * pi / 3.0 * std::pow(k / (2.0 * pi), M0 + 1) * std::pow(az, M0) /
                      (1.0 - rho);
            break;
        }
    }
    out.holds = out.lhs <= out.rhs;
    return out;
}

// ---- seeded admissible-point suites ---------------------------------------

inline BoundInput sample_admissible(BoundId id, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> k_dist(2, 10), t_dist(2, 10);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    BoundInput in;
    in.k = k_dist(rng);
    in.t = t_dist(rng);
    in.r = std::uniform_int_distribution<int>(1, in.t)(rng);
    double delta = 1.5 + 6.0 * u01(rng);
    in.point.delta = delta;
    double Delta = in.point.Delta();
    auto major_point = [&](double eta_cap) {
        double eta = std::max(0.01, eta_cap * (0.2 + 0.78 * u01(rng)));
        eta = std::min(eta, eta_cap * 0.99);
        in.point.eta = eta;
        in.point.y = (2.0 * u01(rng) - 1.0) * Delta * eta * 0.999;
    };
    switch (id) {
        case BoundId::MAJOR_L:
        case BoundId::MAJOR_L_ABS: {
            // keep the truncated L sum short: cap k,t so eta stays >= ~0.01
            in.k = std::uniform_int_distribution<int>(2, 6)(rng);
            in.t = std::uniform_int_distribution<int>(2, 6)(rng);
            in.r = std::uniform_int_distribution<int>(1, in.t)(rng);
            major_point(pi / (in.k * in.t * delta));
            break;
        }
        case BoundId::MAJOR_XI: {
            double cap = std::min(4.0 * pi * pi / (2.35 * delta),
                                  2.0 * pi * pi / (delta * delta * in.k));
            major_point(std::min(cap, 0.6));
            break;
        }
        case BoundId::MINOR_XI: {
            double cap = std::min(12.0 * std::log(static_cast<double>(in.k)) / in.k, 0.5);
            double eta = std::max(0.01, cap * (0.1 + 0.88 * u01(rng)));
            // need Delta eta <= pi for a nonempty minor arc
            while (Delta * eta > pi) eta *= 0.5;
            in.point.eta = eta;
            in.point.y = Delta * eta + (pi - Delta * eta) * u01(rng);
            break;
        }
        case BoundId::MINOR_L: {
            double eta = std::max(0.01, (1.0 / in.k) * (0.1 + 0.88 * u01(rng)));
            in.point.eta = eta;
            in.point.y = pi * u01(rng);
            break;
        }
        case BoundId::BESSEL_TAIL: {
            static const int orders[3] = {1, 2, 4};
            in.s = orders[std::uniform_int_distribution<int>(0, 2)(rng)];
            in.x = 2.0 + 18.0 * u01(rng);
            in.mu = in.x * (0.3 + 0.7 * u01(rng));
            in.point.delta = 1.3 + 3.0 * u01(rng);
            break;
        }
        case BoundId::LOGP_ABS: {
            in.q = 0.01 + 0.97 * u01(rng);
            break;
        }
        case BoundId::EKM_SERIES: {
            double cap = pi / in.k;
            double rad = cap * (0.05 + 0.93 * u01(rng));
            double ang = (2.0 * u01(rng) - 1.0) * 0.45 * pi;  // Re z > 0
            in.point.eta = rad * std::cos(ang);
            in.point.y = rad * std::sin(ang);
            break;
        }
    }
    return in;
}

inline std::vector<BoundInstance> run_bound_suite(BoundId id, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(id) << 32));
    std::vector<BoundInstance> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(verify_bound(id, sample_admissible(id, rng)));
    return out;
}

inline const std::vector<BoundId>& all_bounds() {
    static const std::vector<BoundId> ids{
        BoundId::MAJOR_L,  BoundId::MAJOR_L_ABS, BoundId::MAJOR_XI, BoundId::MINOR_XI,
        BoundId::MINOR_L,  BoundId::BESSEL_TAIL, BoundId::LOGP_ABS, BoundId::EKM_SERIES};
    return ids;
}

}  // namespace arcbounds
}  // namespace kregular

#endif
