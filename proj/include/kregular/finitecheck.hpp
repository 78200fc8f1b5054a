#ifndef KREGULAR_FINITECHECK_HPP
#define KREGULAR_FINITECHECK_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <tuple>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kregular/logscaled.hpp"
#include "kregular/series.hpp"
#include "kregular/specfun.hpp"

namespace kregular {
namespace finitecheck {

using std::numbers::pi;

// delta_min(k) = sqrt(1.29 K / (1.28 K - 0.52)); > 1.3 for every k >= 2.
inline double delta_min(int k) {
    if (k < 2) throw std::invalid_argument("delta_min: k >= 2 required");
    double K = 1.0 - 1.0 / k;
    return std::sqrt(1.29 * K / (1.28 * K - 0.52));
}

struct EffectiveParams {
    int k = 2;
    int t = 2;
    int r = 1;
    double delta = 0.0;
    long n = 0;

    double K() const { return 1.0 - 1.0 / k; }
    double Delta() const { return std::sqrt(delta * delta - 1.0); }
    double c() const { return (k - 1) / 24.0; }
    double eta() const { return pi * std::sqrt(K() / (6.0 * n)); }
    double mu() const { return eta() * (n + c()); }
    double x() const { return pi * std::sqrt(2.0 * K() / 3.0 * (n + c())); }

    void validate() const {
        if (k < 2 || t < 2 || r < 1 || r >= t)
            throw std::invalid_argument("EffectiveParams: need k,t >= 2 and 1 <= r < t");
        if (!(delta > delta_min(k)))
            throw std::invalid_argument("EffectiveParams: delta > delta_min(k) required");
        if (!(n > delta * delta * k * k * t * t / 6.0))
            throw std::invalid_argument("EffectiveParams: n > delta^2 k^2 t^2 / 6 required");
    }
};

// ---- exact coefficient forms (rational arithmetic) -------------------------

// alpha_j(k,t,r) for j in {0,1,2,4}: log k/t is transcendental, so alpha_0 is
// exposed only as a double; the polynomial ones are exact.
inline Rational alpha_exact(int j, int k, int t, int r) {
    // mpq_class(num, den) is not auto-canonicalized; GMP arithmetic and
    // comparisons require lowest terms, so reduce every literal fraction.
    auto frac = [](long num, long den) {
        Rational q(num, den);
        q.canonicalize();
        return q;
    };
    Rational a = frac(r, t);
    switch (j) {
        case 1: return -frac(k - 1, 2) * specfun::bernoulli_poly(1, a);
        case 2: return frac(static_cast<long>(k) * k - 1, 24) * specfun::bernoulli_poly(2, a);
        case 4: {
            long k4 = static_cast<long>(k) * k * k * k;
            return -frac(k4 - 1, 2880) * specfun::bernoulli_poly(4, a);
        }
        default: throw std::invalid_argument("alpha_exact: j in {1,2,4}");
    }
}

// Closed beta forms from the threshold inequality; beta_j = alpha_j(r) - alpha_j(r+1).
inline Rational beta_closed(int j, int k, int t, int r) {
    long k2 = static_cast<long>(k) * k;
    long k4 = k2 * k2;
    long t2 = static_cast<long>(t) * t;
    auto frac = [](long num, long den) {
        Rational q(num, den);
        q.canonicalize();
        return q;
    };
    switch (j) {
        case 1: return frac(k - 1, 2 * t);
        case 2: return frac((k2 - 1) * (t - 2L * r - 1), 24 * t2);
        case 4: {
            long rr = r;
            long num = 4 * rr * rr * rr - 6 * rr * rr * (t - 1) +
                       static_cast<long>(t - 1) * (t - 1) + 2 * rr * (t2 - 3L * t + 2);
            return frac((k4 - 1) * num, 2880 * t2 * t2);
        }
        default: throw std::invalid_argument("beta_closed: j in {1,2,4}");
    }
}

// ---- the effective inequality ---------------------------------------------

struct BoundBreakdown {
    double alpha[4] = {};  // alpha_0, alpha_1, alpha_2, alpha_4
    double beta[3] = {};   // beta_1, beta_2, beta_4
    LogScaled W[3];        // W_1, W_2, W_4
    LogScaled bessel[3];   // I_{-1}(x), I_{-2}(x), I_{-4}(x)
    LogScaled tails[3];    // contour-truncation tails for s = 1, 2, 4
    LogScaled errors[4];   // E1, E2, E3, E = E1+E2+E3
    LogScaled lhs, rhs;
    bool holds = false;
    bool marginal = false;
    double margin_ratio = 0.0;       // lhs/rhs as double (may overflow to inf)
    double log_margin_ratio = 0.0;   // log(lhs) - log(rhs), overflow-safe
};

namespace detail {

// W_s as printed, carrying the 1/(2pi) that the reference thresholds imply.
inline LogScaled W_literal(int s, int k, double K, double npc) {
    double lg = (s - 1) * std::log(pi) + 0.25 * s * std::log(2.0 * K / 3.0) -
                0.5 * s * std::log(npc) - 0.5 * std::log(static_cast<double>(k)) -
                std::log(2.0 * pi);
    return LogScaled::from_log(+1, lg);
}

// W_s from the derivation: (pi/2)^s (2K/3)^{s/2} (n+c)^{-s/2} / sqrt k.
inline LogScaled W_derived(int s, int k, double K, double npc) {
    double lg = s * std::log(pi / 2.0) + 0.5 * s * std::log(2.0 * K / 3.0) -
                0.5 * s * std::log(npc) - 0.5 * std::log(static_cast<double>(k));
    return LogScaled::from_log(+1, lg);
}

struct ErrorBudget {
    LogScaled E1, E2, E3, E;
};

inline ErrorBudget error_budget(const EffectiveParams& p, bool strict_mode) {
    double K = p.K(), d = p.delta, D2 = d * d - 1.0;
    double n = static_cast<double>(p.n);
    double sq = std::sqrt(2.0 * K * n / 3.0);
    double logk = std::log(static_cast<double>(p.k));
    LogScaled E1 = LogScaled::from_log(
        +1, std::log(12.0 * n) +
                std::sqrt(n) * (0.52 / std::sqrt(K) + pi * std::sqrt(K / 6.0) +
                                1.29 * std::sqrt(K) / (d * d)));
    LogScaled E2 = LogScaled::from_log(
        +1, std::log(2.0 * std::sqrt(D2) * std::sqrt(n) / std::sqrt(K)) +
                std::log((41.0 + logk + 7e-5 * std::pow(d, 7)) / p.t) +
                pi * sq * (1.0 - 12.0 / (d * d * (p.k - 1))));
    double k6 = std::pow(static_cast<double>(p.k), 6);
    double e3_pref = (2.44 * std::pow(d, 7) * k6 / 1e7 + 0.151 * k6);
    if (strict_mode) e3_pref *= 2.0 * std::sqrt(D2) / 4.8;  // contour length 2*Delta*eta
    LogScaled E3 = LogScaled::from_log(
        +1, std::log(e3_pref) + 5.0 * std::log(static_cast<double>(p.t)) + 3.0 * std::log(K) +
                5.0 * std::log(d) - 3.0 * std::log(n) - 0.5 * logk + pi * sq);
    return {E1, E2, E3, E1 + E2 + E3};
}

// Contour tails for s = 1, 2, 4 (and separately s = 0 for the sandwich).
inline void contour_tails(const EffectiveParams& p, LogScaled out[3]) {
    double K = p.K(), d = p.delta, D2 = d * d - 1.0;
    double sq = std::sqrt(2.0 * K * p.n / 3.0);
    double lx = std::log(p.x());
    double tailexp = pi / (2.0 * D2) * sq;
    out[0] = LogScaled::from_log(+1, std::log(2.0 / pi) - lx + tailexp);
    out[1] = LogScaled::from_log(
        +1, std::log(4.0 / pi * (0.6 * d + 0.12 * d * d)) - lx + tailexp);
    double poly4 = std::pow(0.6 * d, 3) + std::pow(0.6 * d, 2) + 0.4 * d + 2.0 / 9.0;
    out[2] = LogScaled::from_log(+1, std::log(16.0 / pi * poly4) - lx + tailexp);
}

inline LogScaled contour_tail_s0(const EffectiveParams& p) {
    double K = p.K(), D2 = p.delta * p.delta - 1.0;
    double sq = std::sqrt(2.0 * K * p.n / 3.0);
    return LogScaled::from_log(
        +1, pi / (2.0 * D2) * sq - std::log(pi * p.delta * p.mu()));
}

}  // namespace detail

inline BoundBreakdown effective_constants(const EffectiveParams& p, bool strict_mode = false) {
    p.validate();
    BoundBreakdown b;
    double a = static_cast<double>(p.r) / p.t;
    b.alpha[0] = std::log(static_cast<double>(p.k)) / p.t;
    b.alpha[1] = alpha_exact(1, p.k, p.t, p.r).get_d();
    b.alpha[2] = alpha_exact(2, p.k, p.t, p.r).get_d();
    b.alpha[3] = alpha_exact(4, p.k, p.t, p.r).get_d();
    b.beta[0] = beta_closed(1, p.k, p.t, p.r).get_d();
    b.beta[1] = beta_closed(2, p.k, p.t, p.r).get_d();
    b.beta[2] = beta_closed(4, p.k, p.t, p.r).get_d();
    (void)a;
    double npc = p.n + p.c();
    const int orders[3] = {1, 2, 4};
    for (int i = 0; i < 3; ++i) {
        b.W[i] = detail::W_literal(orders[i], p.k, p.K(), npc);
        b.bessel[i] = specfun::scaled_bessel_I(orders[i], p.x());
    }
    detail::contour_tails(p, b.tails);
    auto eb = detail::error_budget(p, strict_mode);
    b.errors[0] = eb.E1;
    b.errors[1] = eb.E2;
    b.errors[2] = eb.E3;
    b.errors[3] = eb.E;
    return b;
}

// lhs = sum_s beta_s W_s I_{-s}(x)  vs  rhs = 2E + sum_s beta_s W_s Tail_s,
// with conservative widening by relative 1e-10 on each side before comparing.
inline BoundBreakdown inequality_check(const EffectiveParams& p, bool strict_mode = false) {
    BoundBreakdown b = effective_constants(p, strict_mode);
    LogScaled lhs = LogScaled::zero(), tail_sum = LogScaled::zero();
    for (int i = 0; i < 3; ++i) {
        LogScaled coeff = LogScaled::from_double(b.beta[i]) * b.W[i];
        lhs = lhs + coeff * b.bessel[i];
        tail_sum = tail_sum + coeff * b.tails[i];
    }
    LogScaled rhs = LogScaled::from_double(2.0) * b.errors[3] + tail_sum;
    b.lhs = lhs;
    b.rhs = rhs;
    // widen: lhs toward 0, rhs away from 0
    LogScaled lhs_w = lhs * LogScaled::from_double(1.0 - 1e-10);
    LogScaled rhs_w = rhs * LogScaled::from_double(1.0 + 1e-10);
    auto ord = LogScaled::compare(lhs_w, rhs_w);
    b.holds = (ord == LogScaled::Order::Greater);
    b.marginal = (ord == LogScaled::Order::Indeterminate);
    if (!lhs.is_zero() && !rhs.is_zero() && lhs.sign() > 0 && rhs.sign() > 0) {
        b.log_margin_ratio = lhs.log_abs() - rhs.log_abs();
        b.margin_ratio = std::exp(std::min(b.log_margin_ratio, 700.0));
    }
    return b;
}

// ---- threshold search ------------------------------------------------------

struct RateComparison {
    std::string component;
    double lhs_rate;
    double rhs_rate;
    bool strict;
};

struct DominanceCertificate {
    bool margin_monotone = false;  // over the window past N
    long window = 0;
    std::vector<RateComparison> rates;
    bool rates_strict = false;
    bool passed() const { return margin_monotone && rates_strict; }
};

struct FindResult {
    int k = 0, t = 0;
    double delta = 0.0;
    long n_floor = 0;      // ceil(delta^2 k^2 t^2 / 6)
    long N = 0;
    long last_fail = 0;
    long scanned_to = 0;
    DominanceCertificate certificate;
};

struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// min over r of the log margin at n; also reports whether all r hold.
inline std::pair<double, bool> scan_point(int k, int t, double delta, long n, bool strict_mode) {
    double worst = std::numeric_limits<double>::infinity();
    bool all_hold = true;
    for (int r = 1; r < t; ++r) {
        EffectiveParams p{k, t, r, delta, n};
        BoundBreakdown b = inequality_check(p, strict_mode);
        if (!b.holds) all_hold = false;
        worst = std::min(worst, b.log_margin_ratio);
    }
    return {worst, all_hold};
}

}  // namespace detail

inline FindResult find_N(int k, int t, double delta, long scan_cap = 0, bool strict_mode = false,
                         long cert_window = 1000) {
    if (!(delta > delta_min(k)))
        throw std::invalid_argument("find_N: delta > delta_min(k) required");
    if (t < 2) throw std::invalid_argument("find_N: t >= 2 required");
    FindResult res;
    res.k = k;
    res.t = t;
    res.delta = delta;
    long n0 = static_cast<long>(std::ceil(delta * delta * k * k * t * t / 6.0));
    res.n_floor = n0;
    if (scan_cap == 0) scan_cap = n0 + 1'000'000;
    long last_fail = n0, consec = 0;
    long n = n0 + 1;
    const long needed_consec = 400;
    for (; n < scan_cap; ++n) {
        auto [margin, ok] = detail::scan_point(k, t, delta, n, strict_mode);
        (void)margin;
        if (ok) {
            if (++consec > needed_consec) break;
        } else {
            last_fail = n;
            consec = 0;
        }
    }
    if (n >= scan_cap)
        throw InconclusiveError("find_N: scan cap reached with failures still occurring; "
                                "try a larger delta or scan cap");
    res.last_fail = last_fail;
    res.scanned_to = n;
    res.N = std::max(last_fail, n0);

    // certificate (a): strictly increasing worst-r margin on the next window
    DominanceCertificate& cert = res.certificate;
    cert.window = cert_window;
    cert.margin_monotone = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (long m = res.N + 1; m <= res.N + cert_window; ++m) {
        double margin = detail::scan_point(k, t, delta, m, strict_mode).first;
        if (!(margin > prev)) {
            cert.margin_monotone = false;
            break;
        }
        prev = margin;
    }
    // certificate (b): exponential-rate comparisons, all strict
    double K = 1.0 - 1.0 / k;
    double lhs_rate = pi * std::sqrt(2.0 * K / 3.0);
    double nn = static_cast<double>(res.N + 1);
    double lhs_rate_e3 = lhs_rate - 0.75 * std::log(nn) / std::sqrt(nn);
    cert.rates = {
        {"E1", lhs_rate,
         0.52 / std::sqrt(K) + pi * std::sqrt(K / 6.0) + 1.29 * std::sqrt(K) / (delta * delta),
         false},
        {"E2", lhs_rate, lhs_rate * (1.0 - 12.0 / (delta * delta * (k - 1))), false},
        {"E3", lhs_rate_e3, lhs_rate - 3.0 * std::log(nn) / std::sqrt(nn), false},
        {"tails", lhs_rate, pi / (2.0 * (delta * delta - 1.0)) * std::sqrt(2.0 * K / 3.0), false},
    };
    cert.rates_strict = true;
    for (auto& rc : cert.rates) {
        rc.strict = rc.lhs_rate > rc.rhs_rate;
        if (!rc.strict) cert.rates_strict = false;
    }
    return res;
}

// N_k(t) = min over delta of N_k(t,delta): coarse 0.05 grid over
// (delta_min, delta_min + 10], then golden-section refinement to 0.005.
inline FindResult minimize_N(int k, int t, double grid_lo = 0.0, double grid_hi = 0.0,
                             double coarse_step = 0.05, bool strict_mode = false) {
    double dmin = delta_min(k);
    if (grid_lo <= dmin) grid_lo = dmin + coarse_step;
    if (grid_hi <= grid_lo) grid_hi = dmin + 10.0;
    auto eval = [&](double d) -> std::optional<FindResult> {
        try {
            return find_N(k, t, d, 0, strict_mode, /*cert_window=*/0);
        } catch (const InconclusiveError&) {
            return std::nullopt;
        }
    };
    std::optional<FindResult> best;
    for (double d = grid_lo; d <= grid_hi + 1e-12; d += coarse_step) {
        auto r = eval(d);
        if (r && (!best || r->N < best->N)) best = r;
    }
    if (!best) throw InconclusiveError("minimize_N: no grid delta produced a conclusive scan");
    // golden-section refinement around the best coarse cell
    double lo = std::max(grid_lo, best->delta - coarse_step);
    double hi = std::min(grid_hi, best->delta + coarse_step);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    while (hi - lo > 0.005) {
        double d1 = hi - invphi * (hi - lo);
        double d2 = lo + invphi * (hi - lo);
        auto r1 = eval(d1), r2 = eval(d2);
        long n1 = r1 ? r1->N : std::numeric_limits<long>::max();
        long n2 = r2 ? r2->N : std::numeric_limits<long>::max();
        if (r1 && n1 < best->N) best = r1;
        if (r2 && n2 < best->N) best = r2;
        if (n1 <= n2)
            hi = d2;
        else
            lo = d1;
    }
    // re-run the winner with the full certificate window
    FindResult final = find_N(k, t, best->delta, 0, strict_mode);
    return final;
}

// ---- exact census ----------------------------------------------------------

struct Counterexample {
    int k, t, r, s;
    long n;
    friend bool operator<(const Counterexample& a, const Counterexample& b) {
        return std::tie(a.k, a.t, a.r, a.s, a.n) < std::tie(b.k, b.t, b.r, b.s, b.n);
    }
    friend bool operator==(const Counterexample& a, const Counterexample& b) {
        return std::tie(a.k, a.t, a.r, a.s, a.n) == std::tie(b.k, b.t, b.r, b.s, b.n);
    }
};

struct CensusScope {
    int k_min = 2, k_max = 10;
    int t_min = 2, t_max = 10;
    long n_max = 300;
};

struct CheckReport {
    CensusScope scope;
    std::vector<Counterexample> weak_counterexamples;    // D(r) < D(s), r < s
    std::vector<Counterexample> strict_counterexamples;  // D(r) <= D(s), r < s
    bool weak_only_k2_small_n = false;                   // all weak: k = 2, n <= 8
    bool strict_only_small_n = false;                    // all strict: n <= 16
    double seconds = 0.0;
    long cells_checked = 0;
};

namespace detail {

inline void census_pair(int k, int t, long n_max, long n_from, long n_to,
                        const series::PartCountTable& tab, CheckReport& rep) {
    (void)n_max;
    for (long n = std::max(1L, n_from); n <= n_to; ++n) {
        for (int r = 1; r < t; ++r) {
            const series::BigInt& Dr = tab.counts[r - 1][n];
            for (int s = r + 1; s <= t; ++s) {
                const series::BigInt& Ds = tab.counts[s - 1][n];
                int cmp = mpz_cmp(Dr.get_mpz_t(), Ds.get_mpz_t());
                if (cmp < 0) rep.weak_counterexamples.push_back({k, t, r, s, n});
                if (cmp <= 0) rep.strict_counterexamples.push_back({k, t, r, s, n});
                ++rep.cells_checked;
            }
        }
    }
}

inline void finalize_report(CheckReport& rep) {
    std::sort(rep.weak_counterexamples.begin(), rep.weak_counterexamples.end());
    std::sort(rep.strict_counterexamples.begin(), rep.strict_counterexamples.end());
    rep.weak_only_k2_small_n = std::all_of(
        rep.weak_counterexamples.begin(), rep.weak_counterexamples.end(),
        [](const Counterexample& c) { return c.k == 2 && c.n <= 8; });
    rep.strict_only_small_n = std::all_of(
        rep.strict_counterexamples.begin(), rep.strict_counterexamples.end(),
        [](const Counterexample& c) { return c.n <= 16; });
}

}  // namespace detail

inline CheckReport census(const CensusScope& scope) {
    auto t0 = std::chrono::steady_clock::now();
    CheckReport rep;
    rep.scope = scope;
    for (int k = scope.k_min; k <= scope.k_max; ++k)
        for (int t = scope.t_min; t <= scope.t_max; ++t) {
            auto tab = series::d_table(k, t, scope.n_max);
            detail::census_pair(k, t, scope.n_max, 1, scope.n_max, tab, rep);
        }
    detail::finalize_report(rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- resumable census with versioned checkpoints ---------------------------

inline constexpr int kCheckpointVersion = 1;

struct CensusCheckpoint {
    CensusScope scope;
    long pair_index = 0;  // completed (k,t) pairs, lexicographic
    long n_done = 0;      // progress inside the current pair
    long cells = 0;       // comparisons performed so far
    std::vector<Counterexample> weak, strict_;
};

inline void save_checkpoint(const CensusCheckpoint& cp, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw std::runtime_error("cannot write checkpoint: " + tmp);
        os << "KRCK " << kCheckpointVersion << "\n";
        os << cp.scope.k_min << ' ' << cp.scope.k_max << ' ' << cp.scope.t_min << ' '
           << cp.scope.t_max << ' ' << cp.scope.n_max << "\n";
        os << cp.pair_index << ' ' << cp.n_done << ' ' << cp.cells << "\n";
        os << "W " << cp.weak.size() << "\n";
        for (const auto& c : cp.weak)
            os << c.k << ' ' << c.t << ' ' << c.r << ' ' << c.s << ' ' << c.n << "\n";
        os << "S " << cp.strict_.size() << "\n";
        for (const auto& c : cp.strict_)
            os << c.k << ' ' << c.t << ' ' << c.r << ' ' << c.s << ' ' << c.n << "\n";
        if (!os) throw std::runtime_error("checkpoint write failed: " + tmp);
    }
    std::rename(tmp.c_str(), path.c_str());
}

inline std::optional<CensusCheckpoint> load_checkpoint(const std::string& path) {
    std::ifstream is(path);
    if (!is) return std::nullopt;
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "KRCK" || version != kCheckpointVersion)
        throw std::runtime_error("checkpoint: unrecognized format in " + path);
    CensusCheckpoint cp;
    is >> cp.scope.k_min >> cp.scope.k_max >> cp.scope.t_min >> cp.scope.t_max >>
        cp.scope.n_max >> cp.pair_index >> cp.n_done >> cp.cells;
    auto read_list = [&](char tag, std::vector<Counterexample>& out) {
        std::string label;
        std::size_t count = 0;
        is >> label >> count;
        if (label != std::string(1, tag)) throw std::runtime_error("checkpoint: bad section");
        out.resize(count);
        for (auto& c : out) is >> c.k >> c.t >> c.r >> c.s >> c.n;
    };
    read_list('W', cp.weak);
    read_list('S', cp.strict_);
    if (!is) throw std::runtime_error("checkpoint: truncated file " + path);
    return cp;
}

// Chunked census that persists progress.  `checkpoint_interval` is in seconds
// (0 = checkpoint after every chunk); chunk_size controls granularity and the
// result is independent of it.
inline CheckReport census_resumable(const CensusScope& scope, const std::string& checkpoint_path,
                                    double checkpoint_interval = 60.0, long chunk_size = 64,
                                    const std::function<void(long, long)>& progress = {}) {
    auto t0 = std::chrono::steady_clock::now();
    CensusCheckpoint cp;
    cp.scope = scope;
    if (auto loaded = load_checkpoint(checkpoint_path)) {
        const CensusScope& s = loaded->scope;
        if (s.k_min != scope.k_min || s.k_max != scope.k_max || s.t_min != scope.t_min ||
            s.t_max != scope.t_max || s.n_max != scope.n_max)
            throw std::runtime_error("checkpoint scope mismatch: " + checkpoint_path);
        cp = *loaded;
    }
    CheckReport rep;
    rep.scope = scope;
    rep.weak_counterexamples = cp.weak;
    rep.strict_counterexamples = cp.strict_;
    rep.cells_checked = cp.cells;

    long total_pairs = static_cast<long>(scope.k_max - scope.k_min + 1) *
                       (scope.t_max - scope.t_min + 1);
    auto last_save = std::chrono::steady_clock::now();
    long pair_idx = 0;
    for (int k = scope.k_min; k <= scope.k_max; ++k) {
        for (int t = scope.t_min; t <= scope.t_max; ++t, ++pair_idx) {
            if (pair_idx < cp.pair_index) continue;
            long n_start = (pair_idx == cp.pair_index) ? cp.n_done : 0;
            if (n_start >= scope.n_max) {
                continue;
            }
            auto tab = series::d_table(k, t, scope.n_max);
            for (long lo = n_start + 1; lo <= scope.n_max; lo += chunk_size) {
                long hi = std::min(lo + chunk_size - 1, scope.n_max);
                detail::census_pair(k, t, scope.n_max, lo, hi, tab, rep);
                cp.pair_index = pair_idx;
                cp.n_done = hi;
                cp.cells = rep.cells_checked;
                cp.weak = rep.weak_counterexamples;
                cp.strict_ = rep.strict_counterexamples;
                auto now = std::chrono::steady_clock::now();
                if (checkpoint_interval <= 0.0 ||
                    std::chrono::duration<double>(now - last_save).count() >= checkpoint_interval) {
                    save_checkpoint(cp, checkpoint_path);
                    last_save = now;
                }
                if (progress) progress(pair_idx, total_pairs);
            }
            cp.pair_index = pair_idx + 1;
            cp.n_done = 0;
        }
    }
    save_checkpoint(cp, checkpoint_path);
    detail::finalize_report(rep);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- stable equality families ---------------------------------------------

struct StablePattern {
    int k, t;
    long n;
    bool equal;
};

// The three families of exact equalities D_k(t-1,t;n) = D_k(t,t;n):
// k=2 at n=t+3 (t >= 6), k=3 at n=t+2 (t >= 5), k>=4 at n=t (t >= 4).
inline std::vector<StablePattern> stable_patterns(int t_min, int t_max) {
    std::vector<StablePattern> out;
    auto check = [&](int k, int t, long n) {
        auto tab = series::d_table(k, t, n);
        out.push_back({k, t, n, tab.counts[t - 2][n] == tab.counts[t - 1][n]});
    };
    for (int t = std::max(6, t_min); t <= t_max; ++t) check(2, t, t + 3L);
    for (int t = std::max(5, t_min); t <= t_max; ++t) check(3, t, t + 2L);
    for (int k = 4; k <= 10; ++k)
        for (int t = std::max(4, t_min); t <= t_max; ++t) check(k, t, t);
    return out;
}

// ---- two-sided assembly check (main-term sandwich) -------------------------

struct SandwichResult {
    LogScaled exact;
    LogScaled center;
    LogScaled radius;
    double deviation_ratio = 0.0;  // |exact - center| / radius
    bool holds = false;
};

// Checks that the exact count lies within sum_s alpha_s V_s +- (E + tails),
// V_s = W_s I_{-s}(x), using the derivation form of W_s and the alpha_2/alpha_4
// normalization carrying t and t^3 (the assembled expansion in powers of tz).
inline SandwichResult sandwich_check(const EffectiveParams& p, const series::BigInt& exact_count,
                                     bool strict_mode = false) {
    p.validate();
    double K = p.K();
    double npc = p.n + p.c();
    double a = static_cast<double>(p.r) / p.t;
    double logk = std::log(static_cast<double>(p.k));
    double B1 = a - 0.5;
    double B2 = a * a - a + 1.0 / 6.0;
    double B4 = std::pow(a, 4) - 2.0 * std::pow(a, 3) + a * a - 1.0 / 30.0;
    double k2 = static_cast<double>(p.k) * p.k, k4 = k2 * k2;
    double alpha[4] = {
        logk / p.t,
        -(p.k - 1) / 2.0 * B1,
        (k2 - 1.0) * p.t / 24.0 * B2,
        -(k4 - 1.0) * std::pow(static_cast<double>(p.t), 3) / 2880.0 * B4,
    };
    const int orders[4] = {0, 1, 2, 4};
    LogScaled center = LogScaled::zero(), tails = LogScaled::zero();
    LogScaled tail_s[4];
    tail_s[0] = detail::contour_tail_s0(p);
    detail::contour_tails(p, tail_s + 1);
    for (int i = 0; i < 4; ++i) {
        LogScaled W = detail::W_derived(orders[i], p.k, K, npc);
        LogScaled I = specfun::scaled_bessel_I(orders[i], p.x());
        center = center + LogScaled::from_double(alpha[i]) * W * I;
        tails = tails + LogScaled::from_double(std::fabs(alpha[i])) * W * tail_s[i];
    }
    auto eb = detail::error_budget(p, strict_mode);
    SandwichResult res;
    res.exact = logscaled_from_bigint(exact_count);
    res.center = center;
    res.radius = eb.E + tails;
    LogScaled dev = res.exact - center;
    if (dev.is_zero()) {
        res.deviation_ratio = 0.0;
        res.holds = true;
        return res;
    }
    res.deviation_ratio = std::exp(dev.log_abs() - res.radius.log_abs());
    LogScaled dev_abs = dev.sign() < 0 ? -dev : dev;
    res.holds = !dev_abs.definitely_greater(res.radius);
    return res;
}

}  // namespace finitecheck
}  // namespace kregular

#endif
