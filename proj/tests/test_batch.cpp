#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "begwg/batch.hpp"

using namespace begwg;

namespace {
const BegwgParams kP(0.1, 0.2, 0.2, 0.5, 0.5, 0.3, 0.7);
const EgwgParams kU(1.0, 1.0, 1.0, 1.0, 1.0);
}  // namespace

TEST_CASE("parallel pair sampling matches the serial twin bitwise") {
    // 10000 spans three blocks, so the blocked seeding actually kicks in
    const auto par = sample_pairs(kP, 99, 10000);
    const auto ser = sample_pairs_serial(kP, 99, 10000);
    REQUIRE(par.size() == 10000);
    REQUIRE(ser.size() == 10000);
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par.x1[i] == ser.x1[i]);
        CHECK(par.x2[i] == ser.x2[i]);
        CHECK(par.x1[i] > 0.0);
        CHECK(par.x2[i] > 0.0);
    }
}

TEST_CASE("pair sampling is a prefix-stable stream") {
    const auto small = sample_pairs(kP, 7, 5000);
    const auto big = sample_pairs(kP, 7, 10000);
    for (std::size_t i = 0; i < small.size(); ++i) {
        CHECK(small.x1[i] == big.x1[i]);
        CHECK(small.x2[i] == big.x2[i]);
    }
    const auto again = sample_pairs(kP, 7, 5000);
    for (std::size_t i = 0; i < small.size(); ++i)
        CHECK(small.x1[i] == again.x1[i]);
}

TEST_CASE("univariate batch sampling") {
    const auto par = sample_univariate(kU, 4242, 9000);
    const auto ser = sample_univariate_serial(kU, 4242, 9000);
    REQUIRE(par.size() == 9000);
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
    // different seeds give different streams
    const auto other = sample_univariate(kU, 4243, 9000);
    std::size_t same = 0;
    for (std::size_t i = 0; i < par.size(); ++i) same += par[i] == other[i];
    CHECK(same == 0);
}

TEST_CASE("map_indexed agrees with its serial twin") {
    auto f = [](std::size_t i) { return std::sqrt(double(i)) + 1.0 / (i + 1); };
    const auto par = map_indexed(20000, f);
    const auto ser = map_indexed_serial(20000, f);
    REQUIRE(par.size() == 20000);
    for (std::size_t i = 0; i < par.size(); ++i) CHECK(par[i] == ser[i]);
    CHECK(map_indexed(0, f).empty());
}

TEST_CASE("exceptions escape the parallel region intact") {
    auto bomb = [](std::size_t i) -> double {
        if (i == 6000) throw std::domain_error("boom");
        return double(i);
    };
    CHECK_THROWS_AS(map_indexed(20000, bomb), std::domain_error);
    CHECK_THROWS_AS(map_indexed_serial(20000, bomb), std::domain_error);
}

TEST_CASE("thread count is reported") { CHECK(active_threads() >= 1); }
