#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "kregular/arcbounds.hpp"
#include "kregular/series.hpp"

using namespace kregular;
using namespace kregular::arcbounds;
using std::numbers::pi;

TEST_CASE("E_k: series and polylog branches agree near the switch radius") {
    for (int k : {2, 3, 5, 10}) {
        double R = pi / k;
        for (double frac : {0.5, 0.8, 0.97}) {
            for (double ang : {-0.9, 0.0, 0.6}) {
                Complex z = std::polar(frac * R, ang);
                if (z.real() <= 0.0) continue;
                Complex series_val = E_k_eval(k, z);
                // polylog form evaluated directly
                Complex direct = specfun::polylog_neg(0, std::exp(-z)) -
                                 static_cast<double>(k) *
                                     specfun::polylog_neg(0, std::exp(-static_cast<double>(k) * z));
                CHECK(std::abs(series_val - direct) <= 1e-10 * (1.0 + std::abs(direct)));
            }
        }
    }
}

TEST_CASE("E_k: value at the origin is the m = 0 series coefficient") {
    // E_k(0) = (1 - k) B_1 = (k - 1)/2
    for (int k : {2, 4, 7}) {
        Complex v = E_k_eval(k, 0.0);
        CHECK(v.real() == doctest::Approx((k - 1) / 2.0).epsilon(1e-14));
        CHECK(v.imag() == doctest::Approx(0.0));
    }
}

TEST_CASE("E_k derivatives: N = 1 matches a central difference of N = 0") {
    Complex z(0.8, 0.3);
    double h = 1e-6;
    for (int k : {2, 3}) {
        Complex num = (E_k_eval(k, z + h) - E_k_eval(k, z - h)) / (2.0 * h);
        Complex d1 = E_k_eval(k, z, 1);
        CHECK(std::abs(d1 - num) <= 1e-7 * (1.0 + std::abs(num)));  // d/dz E_k = E_k^{(1)}
    }
}

TEST_CASE("phi: magnitude/phase representation is exact") {
    Complex z(0.2, 0.1);
    int k = 3;
    LogComplex p = phi(k, z);
    Complex direct = std::exp(pi * pi * (1.0 - 1.0 / k) / (6.0 * z) + z * (k - 1.0) / 24.0) /
                     std::sqrt(static_cast<double>(k));
    Complex via = p.to_complex();
    CHECK(std::abs(via - direct) <= 1e-12 * std::abs(direct));
    CHECK_THROWS_AS(phi(3, Complex(-0.1, 0.0)), std::domain_error);
}

TEST_CASE("xi product matches the k-regular generating function") {
    for (int k : {2, 3, 5}) {
        auto pk = series::k_regular_table(k, 220);
        for (double q : {0.3, 0.5}) {
            double z = -std::log(q);
            auto xi = xi_numeric(k, Complex(z, 0.0));
            // Horner over exact coefficients
            double series_sum = 0.0;
            for (long n = 220; n >= 0; --n) series_sum = series_sum * q + pk.coeffs[n].get_d();
            CHECK(xi.value.real() == doctest::Approx(series_sum).epsilon(1e-10));
            CHECK(std::abs(xi.value.imag()) < 1e-12 * series_sum);
            CHECK(xi.tail < 1e-10 * series_sum);
        }
    }
}

TEST_CASE("xi product agrees with the modular transformation form") {
    for (int k : {2, 3, 6}) {
        for (Complex z : {Complex(0.25, 0.1), Complex(0.1, 0.05), Complex(0.4, -0.3)}) {
            auto prod = xi_numeric(k, z);
            Complex trans = xi_transform(k, z);
            CHECK(std::abs(prod.value - trans) <= 1e-8 * std::abs(trans));
        }
    }
}

TEST_CASE("xi truncation refuses q too close to 1") {
    CHECK_THROWS_AS(xi_numeric(2, Complex(1e-9, 0.0)), AccuracyError);
    try {
        xi_numeric(2, Complex(1e-9, 0.0));
    } catch (const AccuracyError& e) {
        CHECK(e.required_M > 2'000'000);  // reports how much would be needed
    }
}

TEST_CASE("L sum matches the divisor-weighted series") {
    const int k = 3, t = 4;
    for (int r : {1, 3}) {
        auto ell = series::ell_coeffs(k, r, t, 4000);
        for (Complex z : {Complex(0.05, 0.02), Complex(0.12, -0.08)}) {
            auto L = L_numeric(k, r, t, z);
            // Horner over sum_n ell(n) e^{-nz}
            Complex direct = 0.0;
            Complex q = std::exp(-z);
            for (long n = 4000; n >= 1; --n) direct = direct * q + static_cast<double>(ell[n]);
            direct *= q;
            CHECK(std::abs(L.value - direct) <= 1e-9 * (1.0 + std::abs(direct)) + L.tail);
        }
    }
}

TEST_CASE("verify_bound: representative in-region instances hold") {
    BoundInput in;
    in.k = 3;
    in.t = 2;
    in.r = 1;
    in.point = {0.05, 0.03, 2.0};
    CHECK(verify_bound(BoundId::MAJOR_L, in).holds);
    CHECK(verify_bound(BoundId::MAJOR_L_ABS, in).holds);
    CHECK(verify_bound(BoundId::MAJOR_XI, in).holds);
    CHECK(verify_bound(BoundId::MINOR_L, in).holds);

    BoundInput minor = in;
    minor.point = {0.2, 1.5, 2.0};
    CHECK(verify_bound(BoundId::MINOR_XI, minor).holds);
    CHECK(verify_bound(BoundId::MINOR_L, minor).holds);

    BoundInput bess;
    bess.s = 2;
    bess.x = 10.0;
    bess.mu = 5.0;
    bess.point.delta = 2.0;
    CHECK(verify_bound(BoundId::BESSEL_TAIL, bess).holds);

    BoundInput logp;
    logp.q = 0.9;
    CHECK(verify_bound(BoundId::LOGP_ABS, logp).holds);

    BoundInput ekm;
    ekm.k = 4;
    ekm.point = {0.3, 0.4, 2.0};  // |z| = 0.5 < pi/4
    CHECK(verify_bound(BoundId::EKM_SERIES, ekm).holds);
}

TEST_CASE("verify_bound: out-of-region points are refused, not extrapolated") {
    BoundInput in;
    in.k = 3;
    in.t = 2;
    in.r = 1;
    in.point = {0.05, 2.0, 2.0};  // |y| > Delta eta: not major
    CHECK_THROWS_AS(verify_bound(BoundId::MAJOR_L, in), PreconditionError);
    CHECK_THROWS_AS(verify_bound(BoundId::MAJOR_XI, in), PreconditionError);
    BoundInput big_eta = in;
    big_eta.point = {0.9, 0.1, 2.0};
    CHECK_THROWS_AS(verify_bound(BoundId::MINOR_L, big_eta), PreconditionError);  // eta >= 1/k
    BoundInput far;
    far.k = 2;
    far.point = {2.0, 0.0, 2.0};  // |z| > pi/k
    CHECK_THROWS_AS(verify_bound(BoundId::EKM_SERIES, far), PreconditionError);
    BoundInput bx;
    bx.s = 2;
    bx.x = 25.0;  // outside the validated x range
    bx.mu = 5.0;
    bx.point.delta = 2.0;
    CHECK_THROWS_AS(verify_bound(BoundId::BESSEL_TAIL, bx), PreconditionError);
}

TEST_CASE("seeded suites are deterministic and admissible") {
    for (auto id : all_bounds()) {
        auto a = run_bound_suite(id, 40, 12345);
        auto b = run_bound_suite(id, 40, 12345);
        REQUIRE(a.size() == 40);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].lhs == b[i].lhs);
            CHECK(a[i].rhs == b[i].rhs);
            CHECK(a[i].holds);
        }
        auto c = run_bound_suite(id, 40, 999);
        bool any_diff = false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].lhs != c[i].lhs) any_diff = true;
        CHECK(any_diff);  // seed actually steers the sampler
    }
}
