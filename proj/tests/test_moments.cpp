#include <cmath>

#include "doctest.h"

#include "begwg/moments.hpp"

using namespace begwg;

namespace {
doctest::Approx rel(double v, double eps = 1e-9) {
    return doctest::Approx(v).epsilon(eps).scale(0.0);
}
const EgwgParams kUnit{1, 1, 1, 1, 1};
const BegwgParams kUnitPair{1, 1, 1, 1, 1, 1, 1};
const BegwgParams kCrit{0.1, 0.2, 0.2, 0.5, 0.5, 0.5, 0.5};
}  // namespace

TEST_CASE("quadrature moments, reference values") {
    CHECK(raw_moment_quadrature(kUnit, 1.0) == rel(0.70416996043747448));
    CHECK(raw_moment_quadrature(kUnit, 2.0) == rel(0.59166007912505114));
    CHECK(raw_moment_quadrature(kCrit, 1, 1.0) == rel(60.871477385282326));
    CHECK(raw_moment_quadrature(kCrit, 1, 2.0) == rel(6014.2287990277055));
    CHECK(raw_moment_quadrature(kUnitPair, 1, 1.0) == rel(0.8803753208179419));
    CHECK(raw_moment_quadrature(kUnitPair, 1, 2.0) == rel(0.84608945395810542));
}

TEST_CASE("zeroth moment is one") {
    CHECK(std::fabs(raw_moment_quadrature(EgwgParams(0.1, 0.2, 0.2, 0.5, 0.5),
                                          0.0) -
                    1.0) <= 1e-12);
    CHECK(std::fabs(raw_moment_quadrature(kUnit, 0.0) - 1.0) <= 1e-12);
}

TEST_CASE("moments grow with the shape parameter") {
    const double base[] = {0.1, 0.2, 0.2, 0.5};
    const double e03 =
        raw_moment_quadrature(EgwgParams(base[0], base[1], base[2], base[3], 0.3), 1.0);
    const double e06 =
        raw_moment_quadrature(EgwgParams(base[0], base[1], base[2], base[3], 0.6), 1.0);
    const double e09 =
        raw_moment_quadrature(EgwgParams(base[0], base[1], base[2], base[3], 0.9), 1.0);
    CHECK(e03 == rel(25.784812781241094));
    CHECK(e06 == rel(43.73714718744889));
    CHECK(e09 == rel(57.115394999001111));
    CHECK(e03 < e06);
    CHECK(e06 < e09);
}

TEST_CASE("moment domain errors") {
    CHECK_THROWS_AS(raw_moment_quadrature(kUnit, -1.0), std::domain_error);
    CHECK_THROWS_AS(raw_moment_quadrature(kUnitPair, 1, -0.5),
                    std::domain_error);
    CHECK_THROWS_AS(raw_moment_quadrature(kUnitPair, 3, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(raw_moment_series(kUnit, 0), std::domain_error);
    CHECK_THROWS_AS(raw_moment_series(kUnit, -2), std::domain_error);
}

TEST_CASE("variance is positive wherever both moments exist") {
    for (const auto& p :
         {kUnit, EgwgParams(0.5, 1.5, 0.3, 0.8, 2.2),
          EgwgParams(0.1, 0.2, 0.2, 0.5, 0.4383)}) {
        const double m1 = raw_moment_quadrature(p, 1.0);
        const double m2 = raw_moment_quadrature(p, 2.0);
        CHECK(m2 - m1 * m1 > 0.0);
    }
}

TEST_CASE("printed series is divergent and says so") {
    const auto r = raw_moment_series(kCrit.marginal(1), 1);
    CHECK(!r.converged);
    CHECK(r.terms_used >= 1);
    CHECK(std::isfinite(r.value));
    const auto r2 = raw_moment_series(kUnit, 2);
    CHECK(!r2.converged);
    // bivariate overload routes through the marginal
    const auto r3 = raw_moment_series(kCrit, 1, 1);
    CHECK(r3.converged == r.converged);
    CHECK(r3.value == r.value);
    CHECK(r3.terms_used == r.terms_used);
}

TEST_CASE("series controls are validated") {
    SeriesControl bad;
    bad.tol = 0.0;
    CHECK_THROWS_AS(raw_moment_series(kUnit, 1, bad), std::invalid_argument);
    bad = {};
    bad.max_terms_per_index = 0;
    CHECK_THROWS_AS(raw_moment_series(kUnit, 1, bad), std::invalid_argument);
    bad = {};
    bad.min_tail_checks = 0;
    CHECK_THROWS_AS(raw_moment_series(kUnit, 1, bad), std::invalid_argument);
    // a one-term budget can never satisfy the tail checks
    SeriesControl tiny;
    tiny.max_terms_per_index = 1;
    const auto r = raw_moment_series(kUnit, 1, tiny);
    CHECK(!r.converged);
}
