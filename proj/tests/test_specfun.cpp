#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "confocal/specfun.hpp"

using confocal::specfun::dsqrt;
using confocal::specfun::log_gamma;
using confocal::specfun::pochhammer;

// Reference values computed with mpmath at 40 digits.
TEST_CASE("dsqrt reference values") {
    CHECK(dsqrt(0.0) == 0.0);
    CHECK(dsqrt(0.5) == doctest::Approx(0.56418958354775628695).epsilon(1e-15));
    CHECK(dsqrt(1.0) == doctest::Approx(0.88622692545275801365).epsilon(1e-15));
    CHECK(dsqrt(2.5) == doctest::Approx(1.5045055561273500985).epsilon(1e-15));
    CHECK(dsqrt(7.0) == doctest::Approx(2.5989643136080393701).epsilon(1e-15));
    CHECK(dsqrt(41.5) == doctest::Approx(6.4226752613819378734).epsilon(1e-14));
}

TEST_CASE("log_gamma and pochhammer reference values") {
    CHECK(log_gamma(8.5) == doctest::Approx(9.5492672573009977117).epsilon(1e-15));
    CHECK(pochhammer(3.0, 0.25) == doctest::Approx(1.2746284833592646409).epsilon(1e-15));
    CHECK(pochhammer(0.0, 0.5) == 0.0);
    CHECK_THROWS_AS(pochhammer(-1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
}

TEST_CASE("difference identity dsqrt(u+1) - dsqrt(u) = 1/(2 dsqrt(u+1/2))") {
    for (double u = 0.25; u <= 50.0; u += 0.25) {
        const double lhs = dsqrt(u + 1.0) - dsqrt(u);
        const double rhs = 0.5 / dsqrt(u + 0.5);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("product identity dsqrt(u) dsqrt(u+1/2) = u") {
    for (double u = 0.25; u <= 50.0; u += 0.25) {
        CHECK(std::abs(dsqrt(u) * dsqrt(u + 0.5) - u) <= 1e-12 * std::max(1.0, u));
    }
}

TEST_CASE("scaling limit: dsqrt(u/eps) sqrt(eps) -> sqrt(u)") {
    // Errors computed independently: 8.81e-3, 8.84e-4, 8.84e-5, 8.84e-6.
    const double u = 2.0;
    double prev = 1e9;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double err = std::abs(dsqrt(u / eps) * std::sqrt(eps) - std::sqrt(u));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 1e-5);
}

TEST_CASE("dsqrt grows like sqrt for large arguments") {
    CHECK(dsqrt(1e6) == doctest::Approx(std::sqrt(1e6)).epsilon(1e-6));
}
