#include "lsmc/error.hpp"
#include "lsmc/lsmc_engine.hpp"
#include "lsmc/random.hpp"
#include "lsmc/synthetic.hpp"

#include "doctest.h"

#include <cmath>

using namespace lsmc;

namespace {

SimulationBatch manual_batch(std::vector<double> x, std::vector<double> ev, std::vector<double> y) {
    SimulationBatch b;
    b.regressor_names = {"a"};
    b.n_sims = ev.size();
    b.x = std::move(x);
    b.ev = std::move(ev);
    b.y = std::move(y);
    return b;
}

} // namespace

TEST_CASE("own funds hand case") {
    const auto b = manual_batch({0.1, -0.1}, {1.0, -1.0}, {1.0, -1.0});
    RegressionResult reg;
    reg.regressors = reg.terms = {"a"};
    reg.coefficients = {10.0};
    const auto d = own_funds_distribution(b, reg);
    CHECK(d.samples == std::vector<double>{2.0, -2.0});
    reg.coefficients = {0.0};
    CHECK(own_funds_distribution(b, reg).samples == b.ev);
}

TEST_CASE("fit recovers an exact linear response") {
    std::vector<double> x, ev, y;
    for (int i = 0; i < 100; ++i) {
        x.push_back(0.01 * (i - 50));
        ev.push_back(0.0);
        y.push_back(2.0 * x.back());
    }
    const auto r = fit(manual_batch(x, ev, y));
    CHECK(std::abs(r.coefficients[0] - 2.0) < 1e-12);
    CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadratic basis terms") {
    CHECK(basis_size(BasisKind::linear_plus_quadratic, 3) == 9);
    CHECK(basis_terms(BasisKind::linear_plus_quadratic, {"a", "b"}) ==
          std::vector<std::string>{"a", "b", "a^2", "a*b", "b^2"});
    std::vector<double> out(5);
    expand_basis(BasisKind::linear_plus_quadratic, std::vector<double>{2.0, 3.0}, out);
    CHECK(out == std::vector<double>{2, 3, 4, 6, 9});
}

TEST_CASE("risk measures: order statistic convention") {
    std::vector<double> s(11, 0.0);
    s[0] = -10.0;
    const auto r = risk_measures(s, 0.9);
    CHECK(r.scr == 10.0);
    CHECK(r.tvar == 10.0);
    const auto z = risk_measures(std::vector<double>(100, 0.0), 0.995);
    CHECK(z.scr == 0.0);
    CHECK(z.tvar == 0.0);
    CHECK(z.low_sample_warning);
}

TEST_CASE("risk measures: standard normal") {
    const std::size_t n = 1000000;
    Substream rng(9, 0, StreamTag::synthetic);
    std::vector<double> s(n);
    for (auto& v : s) v = rng.normal();
    const auto r = risk_measures(s, 0.995);
    CHECK(std::abs(r.scr - 2.5758293035489004) < 0.02);
    CHECK(r.tvar > r.scr);
    CHECK(r.quantile_standard_error > 0.0);
    CHECK(r.quantile_standard_error < 0.02);
}

TEST_CASE("life expectancy closed forms") {
    CHECK(life_expectancy(std::vector<double>(60, 0.0)) == 60.0);
    CHECK(life_expectancy(std::vector<double>(60, 1.0)) == 0.0);
    const double e = life_expectancy(std::vector<double>(60, 0.1));
    CHECK(std::abs(e - 9.0 * (1.0 - std::pow(0.9, 60))) < 1e-12);
}

TEST_CASE("life expectancy regression reproduces a linear construction") {
    std::vector<double> af, le;
    for (int i = 0; i < 200; ++i) {
        af.push_back(0.9 + 0.001 * i);
        le.push_back(39.1 - 9.2 * af.back());
    }
    const auto r = life_expectancy_regression(af, le, 39.1, LifeExpectancyOptions{});
    CHECK(r.alpha_le == doctest::Approx(39.1).epsilon(1e-10));
    CHECK(r.beta_le == doctest::Approx(-9.2).epsilon(1e-10));
}

TEST_CASE("life expectancy regression needs variation") {
    const std::vector<double> af(50, 1.0), le(50, 30.0);
    CHECK_THROWS_AS(life_expectancy_regression(af, le, 30.0, LifeExpectancyOptions{}), Error);
}

TEST_CASE("mortality stress lowers life expectancy of the synthetic book") {
    const auto b = synthetic_reference_book();
    const auto book = compile(b.portfolio, b.assumptions);
    const auto base = aggregate_mortality(project_best_estimate(book));
    auto stressed = base;
    for (auto& q : stressed) q = std::min(1.0, 1.15 * q);
    CHECK(life_expectancy(stressed) < life_expectancy(base));
}
