#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "kregular/asymptotics.hpp"

using namespace kregular;
using asymptotics::RegularityParams;

TEST_CASE("hat_d: growth follows exp(pi sqrt(2Kn/3)) with n^{-1/4} damping") {
    RegularityParams p{3, 4, 1};
    double K = p.K();
    for (long n : {400L, 900L, 2500L}) {
        double lg_big = asymptotics::hat_d(p, 4 * n).log_abs();
        double lg = asymptotics::hat_d(p, n).log_abs();
        double expected = std::numbers::pi * std::sqrt(2.0 * K / 3.0) *
                              (std::sqrt(4.0 * n) - std::sqrt(static_cast<double>(n))) -
                          0.25 * std::log(4.0);
        // the bracket's n^{-1/2} correction shifts this only slightly
        CHECK(lg_big - lg == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("hat_d: residue dependence enters at order n^{-1/2}") {
    RegularityParams lo{3, 4, 1}, hi{3, 4, 4};
    long n = 10000;
    double gap = asymptotics::hat_d(lo, n).log_abs() - asymptotics::hat_d(hi, n).log_abs();
    CHECK(gap > 0.0);  // smaller residues carry more parts
    // gap ~ (t pi (k-1) sqrt K / (2 sqrt 6 log k)) * (3/4) / sqrt(n)
    double K = 2.0 / 3.0;
    double predicted = 4.0 * std::numbers::pi * 2.0 * std::sqrt(K) /
                       (2.0 * std::sqrt(6.0) * std::log(3.0)) * 0.75 / std::sqrt(10000.0);
    CHECK(gap == doctest::Approx(predicted).epsilon(0.02));
}

TEST_CASE("q_ratio approaches 1 on exact tables") {
    auto tab = series::d_table(3, 4, 1000);
    RegularityParams p{3, 4, 1};
    double q10 = asymptotics::q_ratio(p, tab, 10);
    double q100 = asymptotics::q_ratio(p, tab, 100);
    double q1000 = asymptotics::q_ratio(p, tab, 1000);
    CHECK(std::fabs(q100 - 1.0) < std::fabs(q10 - 1.0));
    CHECK(std::fabs(q1000 - 1.0) < std::fabs(q100 - 1.0));
    CHECK(q1000 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("q_ratio frozen spot values (t = 4 reference cells, small n)") {
    auto t3 = series::d_table(3, 4, 100);
    auto t4 = series::d_table(4, 4, 100);
    CHECK(asymptotics::q_ratio({3, 4, 1}, t3, 10) == doctest::Approx(1.02401).epsilon(2e-5));
    CHECK(asymptotics::q_ratio({3, 4, 2}, t3, 10) == doctest::Approx(1.06157).epsilon(2e-5));
    CHECK(asymptotics::q_ratio({4, 4, 1}, t4, 10) == doctest::Approx(0.97589).epsilon(2e-5));
    CHECK(asymptotics::q_ratio({4, 4, 2}, t4, 100) == doctest::Approx(1.00691).epsilon(2e-5));
}

TEST_CASE("corollary_diff: linear in s - r and Wright growth in n") {
    RegularityParams p{3, 4, 1};
    auto d2 = asymptotics::corollary_diff(p, 2, 400);
    auto d3 = asymptotics::corollary_diff(p, 3, 400);
    CHECK((d3 / d2).to_double() == doctest::Approx(2.0));
    double K = p.K();
    double growth = asymptotics::corollary_diff(p, 2, 1600).log_abs() - d2.log_abs();
    double expected = std::numbers::pi * std::sqrt(2.0 * K / 3.0) * (40.0 - 20.0) -
                      0.75 * std::log(4.0);
    CHECK(growth == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d2.sign() == +1);
}

TEST_CASE("argument validation") {
    RegularityParams p{3, 4, 1};
    CHECK_THROWS_AS(asymptotics::hat_d({1, 4, 1}, 10), std::invalid_argument);
    CHECK_THROWS_AS(asymptotics::hat_d({3, 4, 5}, 10), std::invalid_argument);
    CHECK_THROWS_AS(asymptotics::hat_d(p, 0), std::invalid_argument);
    CHECK_THROWS_AS(asymptotics::corollary_diff(p, 1, 10), std::domain_error);
    CHECK_THROWS_AS(asymptotics::corollary_diff(p, 5, 10), std::domain_error);
    auto tab = series::d_table(3, 4, 50);
    CHECK_THROWS_AS(asymptotics::q_ratio(p, tab, 60), std::runtime_error);
    CHECK_THROWS_AS(asymptotics::q_ratio({4, 4, 1}, tab, 10), std::runtime_error);
}
