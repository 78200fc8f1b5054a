#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "kregular/specfun.hpp"

using namespace kregular;
using namespace kregular::specfun;

TEST_CASE("Bernoulli numbers: known exact values") {
    CHECK(bernoulli_number(0) == Rational(1));
    CHECK(bernoulli_number(1) == Rational(-1, 2));
    CHECK(bernoulli_number(2) == Rational(1, 6));
    CHECK(bernoulli_number(3) == Rational(0));
    CHECK(bernoulli_number(4) == Rational(-1, 30));
    CHECK(bernoulli_number(12) == Rational(-691, 2730));
    CHECK(bernoulli_number(30) == Rational("8615841276005/14322"));
    for (int n = 3; n <= 63; n += 2) CHECK(bernoulli_number(n) == 0);
    CHECK_THROWS_AS(bernoulli_number(65), std::out_of_range);
}

TEST_CASE("Bernoulli polynomials: closed forms and reflection") {
    Rational x(1, 3);
    CHECK(bernoulli_poly(1, x) == x - Rational(1, 2));
    CHECK(bernoulli_poly(2, x) == x * x - x + Rational(1, 6));
    Rational x4 = x * x * x * x, x3 = x * x * x;
    CHECK(bernoulli_poly(4, x) == x4 - 2 * x3 + x * x - Rational(1, 30));
    // B_n(0) = B_n; B_n(1) = B_n for n != 1; reflection B_n(1-x) = (-1)^n B_n(x)
    for (int n = 2; n <= 12; ++n) {
        CHECK(bernoulli_poly(n, Rational(0)) == bernoulli_number(n));
        CHECK(bernoulli_poly(n, Rational(1)) == bernoulli_number(n));
        Rational lhs = bernoulli_poly(n, Rational(1) - x);
        Rational rhs = bernoulli_poly(n, x);
        if (n % 2 == 1) rhs = -rhs;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("zeta at integers") {
    using std::numbers::pi;
    CHECK(zeta_int(2) == doctest::Approx(pi * pi / 6.0).epsilon(1e-15));
    CHECK(zeta_int(4) == doctest::Approx(std::pow(pi, 4) / 90.0).epsilon(1e-15));
    CHECK(zeta_int(3) == doctest::Approx(1.2020569031595942854).epsilon(1e-13));
    CHECK(zeta_int(5) == doctest::Approx(1.0369277551433699263).epsilon(1e-14));
    CHECK_THROWS_AS(zeta_int(1), std::domain_error);
}

TEST_CASE("Lehmer bound dominates |B_n(x)| on a dense grid") {
    for (int n = 2; n <= 12; ++n) {
        double bound = lehmer_bound(n);
        for (int i = 0; i <= 1000; ++i) {
            Rational x(i, 1000);
            double val = std::fabs(bernoulli_poly(n, x).get_d());
            CHECK(val <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("Eulerian rows: factorial sum and symmetry") {
    for (int N = 1; N <= 12; ++N) {
        auto row = eulerian_row(N);
        REQUIRE(static_cast<int>(row.size()) == N);
        BigInt sum = 0, fact = 1;
        for (int i = 2; i <= N; ++i) fact *= i;
        for (int m = 0; m < N; ++m) {
            sum += row[m];
            CHECK(row[m] == row[N - 1 - m]);
        }
        CHECK(sum == fact);
    }
    auto r4 = eulerian_row(4);
    CHECK(r4[0] == 1);
    CHECK(r4[1] == 11);
    CHECK(r4[2] == 11);
    CHECK(r4[3] == 1);
    CHECK_THROWS_AS(eulerian_row(31), std::out_of_range);
}

TEST_CASE("negative-order polylog agrees with the defining series") {
    using C = std::complex<double>;
    for (int N : {0, 1, 2, 4, 7}) {
        for (C q : {C(0.3, 0.0), C(-0.4, 0.2), C(0.1, -0.55)}) {
            C direct = 0.0;
            for (int j = 1; j < 4000; ++j) {
                C term = std::pow(static_cast<double>(j), N) * std::pow(q, j);
                direct += term;
                if (std::abs(term) < 1e-19) break;
            }
            C rational = polylog_neg(N, q);
            CHECK(std::abs(rational - direct) <= 1e-12 * (1.0 + std::abs(direct)));
        }
    }
    CHECK_THROWS_AS(polylog_neg(0, std::complex<double>(1.0, 0.1)), std::domain_error);
}

TEST_CASE("Bessel I: three-term recurrence I_0 - I_2 = (2/x) I_1") {
    for (double x : {5.0, 50.0, 500.0}) {
        LogScaled i0 = scaled_bessel_I(0, x);
        LogScaled i1 = scaled_bessel_I(1, x);
        LogScaled i2 = scaled_bessel_I(2, x);
        LogScaled lhs = i0 - i2;
        LogScaled rhs = LogScaled::from_double(2.0 / x) * i1;
        CHECK(lhs.log_abs() == doctest::Approx(rhs.log_abs()).epsilon(1e-11));
        CHECK(lhs.sign() == rhs.sign());
    }
}

TEST_CASE("Bessel I: series and asymptotic branches agree across the switch") {
    // x = 50 sits in the asymptotic branch but the power series still
    // converges comfortably inside double range.
    for (int s : {0, 1, 2, 4}) {
        double series_val = specfun::detail::bessel_i_series(s, 50.0);
        LogScaled asym = specfun::detail::bessel_i_asymptotic(s, 50.0);
        CHECK(asym.log_abs() == doctest::Approx(std::log(series_val)).epsilon(1e-12));
    }
    // and both sides of the x = 30 switch line up
    for (int s : {0, 1, 2, 4}) {
        double lo = scaled_bessel_I(s, 29.999).log_abs();
        double hi = scaled_bessel_I(s, 30.001).log_abs();
        CHECK(hi - lo == doctest::Approx(0.002 * (1.0 - 0.5 / 30.0)).epsilon(1e-2));
    }
}

TEST_CASE("Bessel I: reference values") {
    // I_0(5) and I_1(5), classical tabulated values
    CHECK(scaled_bessel_I(0, 5.0).to_double() == doctest::Approx(27.239871823604442).epsilon(1e-13));
    CHECK(scaled_bessel_I(1, 5.0).to_double() == doctest::Approx(24.335642142450524).epsilon(1e-13));
    CHECK_THROWS_AS(scaled_bessel_I(3, 5.0), std::domain_error);
    CHECK_THROWS_AS(scaled_bessel_I(1, -1.0), std::domain_error);
}

TEST_CASE("big integer to log scale") {
    BigInt v = 1;
    for (int i = 0; i < 500; ++i) v *= 10;  // 10^500
    LogScaled ls = logscaled_from_bigint(v);
    CHECK(ls.log_abs() == doctest::Approx(500.0 * std::log(10.0)).epsilon(1e-14));
    CHECK(logscaled_from_bigint(BigInt(0)).is_zero());
    CHECK(logscaled_from_bigint(BigInt(-42)).to_double() == doctest::Approx(-42.0));
}

TEST_CASE("logscaled_arith op dispatch") {
    auto a = LogScaled::from_double(2.0), b = LogScaled::from_double(3.0);
    CHECK(logscaled_arith(a, b, LogScaledOp::Add).to_double() == doctest::Approx(5.0));
    CHECK(logscaled_arith(a, b, LogScaledOp::Mul).to_double() == doctest::Approx(6.0));
    CHECK_THROWS_AS(logscaled_arith(a, b, LogScaledOp::Compare), std::invalid_argument);
}
