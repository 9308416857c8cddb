#include "helpers.hpp"

#include "lsmc/error.hpp"
#include "lsmc/standard_formula.hpp"
#include "lsmc/synthetic.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>

using namespace lsmc;
using namespace lsmc::test;
using K = StressScenario::Kind;

TEST_CASE("aggregation") {
    CHECK(aggregate({0, 0, 0}) == 0.0);
    CHECK(std::abs(aggregate({0, 3, 4}) - std::sqrt(31.0)) < 1e-12);
    CHECK(std::abs(aggregate({3, 4, 0}) - 5.0) < 1e-12);
    CHECK_THROWS_AS(aggregate({-1, 0, 0}), Error);
}

TEST_CASE("aggregation bounds") {
    for (double l : {0.0, 1.0, 7.0}) {
        for (double m : {0.0, 2.0, 5.0}) {
            for (double c : {0.0, 0.5, 9.0}) {
                const double a = aggregate({l, m, c});
                CHECK(a <= l + m + c + 1e-12);
                CHECK(a >= std::max({l, m, c}) - 1e-12);
            }
        }
    }
}

TEST_CASE("zero-magnitude stresses reproduce best estimate bit for bit") {
    const auto b = synthetic_reference_book();
    const auto book = compile(b.portfolio, b.assumptions);
    const auto be = project_best_estimate(book);
    for (auto k : {K::lapse_mass, K::lapse_up, K::lapse_down, K::mortality_up, K::catastrophe}) {
        const auto r = apply_stress(book, StressScenario{k, 0.0});
        CHECK(r.cashflows.ncf == be.ncf);
        CHECK(r.cashflows.lives_in_force == be.lives_in_force);
    }
}

TEST_CASE("catastrophe hand case") {
    const auto a = flat_assumptions(2, 0.01, 0.0);
    const Portfolio p{point(1, 1000, 0, 2)};
    const auto be = project_best_estimate(p, a);
    const auto cat = apply_stress(p, a, StressScenario{K::catastrophe, 0.0015});
    CHECK(be.death[0] - cat.death[0] == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(cat.lives_in_force[1] == doctest::Approx(1.0 - 0.0115).epsilon(1e-12));
}

TEST_CASE("mortality up on a zero-mortality book changes nothing") {
    const auto a = flat_assumptions(3, 0.0, 0.05);
    const Portfolio p{point(10, 1000, 5, 3)};
    CHECK(apply_stress(p, a, StressScenario{K::mortality_up, 0.15}).ncf == project_best_estimate(p, a).ncf);
}

TEST_CASE("premium-only book with no decrements") {
    const auto a = flat_assumptions(5, 0.0, 0.0, 0.98);
    const auto book = compile({point(10, 1000, 5, 5)}, a);
    const auto r = standard_formula_scr(book);
    CHECK(r.scenarios[2].sub_scr == 0.0); // lapse down
    CHECK(r.scenarios[1].sub_scr == 0.0); // lapse up: rates are zero
    CHECK(r.sub_scrs.mortality == 0.0);
    // catastrophe: 1.5 per mille die in year one, losing their claims and later premiums
    CHECK(r.sub_scrs.catastrophe > 0.0);
    CHECK(r.sub_scrs.lapse == doctest::Approx(0.4 * r.pvofp_det).epsilon(1e-12));
}

TEST_CASE("sub-SCRs are floored at zero and homogeneous of degree one") {
    const auto b = synthetic_reference_book();
    const auto book = compile(b.portfolio, b.assumptions);
    const auto r = standard_formula_scr(book);
    for (const auto& s : r.scenarios) CHECK(s.sub_scr >= 0.0);
    auto doubled = b.portfolio;
    for (auto& mp : doubled) mp.lives *= 2.0;
    const auto r2 = standard_formula_scr(compile(doubled, b.assumptions));
    CHECK(std::abs(r2.scr / r.scr - 2.0) < 1e-9);
}

TEST_CASE("mortality sub-SCR increases with the stress magnitude") {
    const auto a = flat_assumptions(10, 0.01, 0.03, 0.97);
    const auto book = compile({point(100, 10000, 0, 10)}, a);
    double last = -1.0;
    for (double m : {0.0, 0.05, 0.15, 0.3}) {
        StandardFormulaOptions o;
        o.magnitudes[3] = m;
        const double sub = standard_formula_scr(book, o).sub_scrs.mortality;
        CHECK(sub >= last);
        last = sub;
    }
}
