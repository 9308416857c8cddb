#include "helpers.hpp"

#include "lsmc/error.hpp"
#include "lsmc/portfolio.hpp"
#include "lsmc/synthetic.hpp"

#include "doctest.h"

#include <cmath>

using namespace lsmc;
using namespace lsmc::test;

TEST_CASE("no decrements: every year collects the full premium") {
    const auto cf = project_best_estimate({point(1, 0, 1, 3)}, flat_assumptions(3, 0.0, 0.0));
    CHECK(cf.ncf == std::vector<double>{1, 1, 1});
}

TEST_CASE("certain death in year one") {
    const auto cf = project_best_estimate({point(1, 5000, 0, 3)}, flat_assumptions(3, 1.0, 0.0));
    CHECK(cf.ncf[0] == -5000.0);
    CHECK(cf.ncf[1] == 0.0);
    CHECK(cf.ncf[2] == 0.0);
}

TEST_CASE("two-year hand recursion") {
    const auto cf = project_best_estimate({point(100, 1000, 10, 2)}, flat_assumptions(2, 0.01, 0.04));
    CHECK(cf.ncf[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cf.lives_in_force[1] == doctest::Approx(95.0).epsilon(1e-12));
    CHECK(cf.ncf[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(cf.lives_died[0] == doctest::Approx(1.0));
    CHECK(cf.lives_lapsed[0] == doctest::Approx(4.0));
}

TEST_CASE("present value") {
    CashflowVector cf(2);
    cf.ncf = {1, 1};
    CHECK(present_value(cf, std::vector<double>{1, 1}) == 2.0);
    cf.ncf = {0, 0};
    CHECK(present_value(cf, std::vector<double>{0.9, 0.8}) == 0.0);
    cf.ncf = {100, -50};
    CHECK(present_value(cf, std::vector<double>{0.99, 0.97}) == doctest::Approx(50.5).epsilon(1e-14));
    CHECK_THROWS_AS(present_value(cf, std::vector<double>{1.0}), Error);
}

TEST_CASE("term shorter than the horizon stops cash flows") {
    const auto cf = project_best_estimate({point(10, 100, 5, 2)}, flat_assumptions(4, 0.0, 0.0));
    CHECK(cf.ncf == std::vector<double>{50, 50, 0, 0});
}

TEST_CASE("mortality table coverage errors name the model point") {
    AssumptionSet a = flat_assumptions(3, 0.01, 0.0);
    a.mortality = MortalityTable::by_age({{40, 0.01}, {41, 0.01}});
    try {
        compile({ModelPoint{"MP7", 40, 1, 1, 1, 3}}, a);
        FAIL("expected a coverage error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::coverage);
        CHECK(std::string(e.what()).find("MP7") != std::string::npos);
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(compile({point(-1, 1, 1, 2)}, flat_assumptions(2, 0.0, 0.0)), Error);
    CHECK_THROWS_AS(compile({point(1, 1, 1, 0)}, flat_assumptions(2, 0.0, 0.0)), Error);
    CHECK_THROWS_AS(compile({point(1, 1, 1, 2)}, flat_assumptions(2, 0.7, 0.5)), Error);
    auto a = flat_assumptions(2, 0.0, 0.0);
    a.lapse.pop_back();
    CHECK_THROWS_AS(compile({point(1, 1, 1, 2)}, a), Error);
}

TEST_CASE("cohort aggregation matches per-point projection") {
    const auto book = synthetic_reference_book();
    const auto total = project_best_estimate(book.portfolio, book.assumptions);
    CashflowVector sum(60);
    for (const auto& mp : book.portfolio) {
        const auto one = project_best_estimate(Portfolio{mp}, book.assumptions);
        for (std::size_t t = 0; t < 60; ++t) sum.ncf[t] += one.ncf[t];
    }
    for (std::size_t t = 0; t < 60; ++t) {
        CHECK(total.ncf[t] == doctest::Approx(sum.ncf[t]).epsilon(1e-10).scale(1e3));
    }
}

TEST_CASE("synthetic reference book layout") {
    const auto book = synthetic_reference_book();
    REQUIRE(book.portfolio.size() == 1000);
    CHECK(book.assumptions.horizon == 60);
    int lo = 200, hi = 0;
    for (const auto& mp : book.portfolio) {
        lo = std::min(lo, mp.age);
        hi = std::max(hi, mp.age);
        CHECK(mp.annual_net_premium > 0.0);
    }
    CHECK(lo == 30);
    CHECK(hi == 60);
    CHECK(compile(book.portfolio, book.assumptions).cohorts.size() == 31);
}
