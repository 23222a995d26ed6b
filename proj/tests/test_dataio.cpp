#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "begwg/dataio.hpp"
#include "begwg/estimation.hpp"

using namespace begwg;

namespace {
// fingerprint of the bundled table, two decimals per value
std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}
}  // namespace

TEST_CASE("bundled scoring-time data") {
    const auto& d = nfl_dataset();
    REQUIRE(d.size() == 42);
    std::string blob;
    char buf[64];
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f;", d.x1[i], d.x2[i]);
        blob += buf;
    }
    CHECK(blob.size() == 457);
    CHECK(fnv1a(blob) == 0xbcbeb8fdee8c798eULL);
    const auto cls = classify(d);
    CHECK(cls.n1 == 16);
    CHECK(cls.n2 == 2);
    CHECK(cls.n3 == 24);
    const auto meta = nfl_meta();
    CHECK(meta.n == 42);
    CHECK(!meta.name.empty());
    CHECK(!meta.source.empty());
}

TEST_CASE("csv parsing, happy path") {
    std::istringstream in("x1,x2\n1.5,2.5\n0.25,0.125\n");
    const auto s = load_csv(in);
    REQUIRE(s.size() == 2);
    CHECK(s.x1[0] == 1.5);
    CHECK(s.x2[1] == 0.125);
}

TEST_CASE("csv parsing tolerates CR line endings") {
    std::istringstream in("x1,x2\r\n1.5,2.5\r\n");
    const auto s = load_csv(in);
    REQUIRE(s.size() == 1);
    CHECK(s.x2[0] == 2.5);
}

TEST_CASE("csv parsing rejects malformed input") {
    auto load = [](const char* text) {
        std::istringstream in(text);
        return load_csv(in);
    };
    CHECK_THROWS_AS(load("a,b\n1,2\n"), DataError);
    CHECK_THROWS_AS(load(""), DataError);
    CHECK(load("x1,x2\n").size() == 0);
    CHECK_THROWS_AS(load("x1,x2\n1,2,3\n"), DataError);
    CHECK_THROWS_AS(load("x1,x2\n1\n"), DataError);
    CHECK_THROWS_AS(load("x1,x2\n1,zebra\n"), DataError);
    CHECK_THROWS_AS(load("x1,x2\n1,2\n\n3,4\n"), DataError);
    CHECK_THROWS_AS(load("x1,x2\n1,0\n"), DataError);
    CHECK_THROWS_AS(load("x1,x2\n-1,2\n"), DataError);
    try {
        load("x1,x2\n1,2\n3,oops\n");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("csv round trip is bit exact") {
    PairedSample s;
    s.x1 = {0.1, 1.0 / 3.0, 7.25, 1e-12, 123456789.123456789};
    s.x2 = {0.2, 2.0 / 3.0, 9.5, 2e-12, 0.1 + 0.2};
    const auto again = [&] {
        std::istringstream in(to_csv(s));
        return load_csv(in);
    }();
    REQUIRE(again.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(again.x1[i] == s.x1[i]);
        CHECK(again.x2[i] == s.x2[i]);
    }
    std::istringstream in2(to_csv(nfl_dataset()));
    const auto nfl2 = load_csv(in2);
    REQUIRE(nfl2.size() == 42);
    for (std::size_t i = 0; i < nfl2.size(); ++i) {
        CHECK(nfl2.x1[i] == nfl_dataset().x1[i]);
        CHECK(nfl2.x2[i] == nfl_dataset().x2[i]);
    }
}

TEST_CASE("csv file save and load") {
    const std::string path = "begwg_dataio_test.csv";
    PairedSample s;
    s.x1 = {1.5, 2.5};
    s.x2 = {2.0, 3.0};
    save_csv(path, s);
    const auto back = load_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back.x1[1] == 2.5);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_csv("begwg_no_such_file.csv"), DataError);
}

TEST_CASE("fit result serialization") {
    FitResult r{};
    r.alpha_hat = {0.25, 0.5, 0.75};
    r.log_likelihood = -12.5;
    r.aic = 31.0;
    r.caic = 32.0;
    r.bic_paper = 15.0;
    r.bic_standard = 33.0;
    r.covariance = {{{1.0, 0.1, 0.2}, {0.1, 2.0, 0.3}, {0.2, 0.3, 3.0}}};
    r.ci = {{{0.0, 0.5}, {0.1, 0.9}, {0.2, 1.3}}};
    r.ci_unclamped = {{{-0.1, 0.5}, {0.1, 0.9}, {0.2, 1.3}}};
    r.converged = true;
    r.iterations = 9;
    const auto j = nlohmann::ordered_json::parse(fit_result_to_json(r));
    const std::vector<std::string> expected = {
        "alpha_hat", "log_likelihood", "aic",       "caic", "bic_paper",
        "bic_standard", "covariance", "ci", "converged", "iterations"};
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == expected);
    CHECK(!j.contains("ci_unclamped"));
    CHECK(j["alpha_hat"][2].get<double>() == 0.75);
    CHECK(j["log_likelihood"].get<double>() == -12.5);
    CHECK(j["covariance"][1][2].get<double>() == 0.3);
    CHECK(j["ci"][0][0].get<double>() == 0.0);
    CHECK(j["ci"][2][1].get<double>() == 1.3);
    CHECK(j["converged"].get<bool>() == true);
    CHECK(j["iterations"].get<int>() == 9);
}
