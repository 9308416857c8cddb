#include "helpers.hpp"

#include "lsmc/projection.hpp"
#include "lsmc/synthetic.hpp"

#include "doctest.h"

#include <cmath>

using namespace lsmc;
using namespace lsmc::test;

TEST_CASE("unit path reproduces best estimate exactly") {
    const auto book = synthetic_reference_book();
    const auto be = project_best_estimate(book.portfolio, book.assumptions);
    const auto st = project_stochastic(book.portfolio, book.assumptions, AdjustmentFactorPath::unit(60));
    CHECK(st.ncf == be.ncf);
}

TEST_CASE("doubled mortality factor, single year") {
    auto path = AdjustmentFactorPath::unit(1);
    path.trend = {2.0};
    const auto cf = project_stochastic({point(1, 1000, 10, 1)}, flat_assumptions(1, 0.01, 0.0), path);
    CHECK(cf.ncf[0] == doctest::Approx(-10.0).epsilon(1e-12));
}

TEST_CASE("doubled lapse factor scales premiums by the volume ratio") {
    const int T = 5;
    const double w = 0.05;
    auto path = AdjustmentFactorPath::unit(T);
    path.af_lapse.assign(T, 2.0);
    const auto a = flat_assumptions(T, 0.0, w);
    const auto be = project_best_estimate({point(100, 0, 10, T)}, a);
    const auto st = project_stochastic({point(100, 0, 10, T)}, a, path);
    for (int t = 0; t < T; ++t) {
        const double ratio = std::pow((1 - 2 * w) / (1 - w), t);
        CHECK(st.premium[t] / be.premium[t] == doctest::Approx(ratio).epsilon(1e-12));
    }
}

TEST_CASE("degenerate batch has zero responses") {
    const auto toy = toy_book();
    const auto book = compile(toy.portfolio, toy.assumptions);
    const auto batch = build_batch(book, RiskModels{}, 64, 1);
    for (std::size_t i = 0; i < batch.n_sims; ++i) {
        const auto o = batch.outcome(i);
        CHECK(o.ev == 0.0);
        CHECK(o.y == 0.0);
        for (double x : o.x) CHECK(x == 0.0);
    }
}

TEST_CASE("two-year response by hand") {
    const auto lin = linear_lapse_book();
    const auto book = compile(lin.portfolio, lin.assumptions);
    RiskModels models;
    models.lapse.sigma = 0.2;
    std::vector<AdjustmentFactorPath> paths;
    for (std::uint64_t i = 0; i < 20; ++i) paths.push_back(simulate_path(models, 2, 3, i));
    BatchOptions opts;
    opts.regressors = RegressorSet::observed;
    const auto batch = build_batch(book, paths, opts);
    const double d2 = lin.assumptions.discount[1];
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const double l1 = paths[i].af_lapse[0];
        const double ncf2 = 1000.0 * (1.0 - 0.1 * l1) * 100.0;
        const double ncf2_be = 1000.0 * 0.9 * 100.0;
        const auto o = batch.outcome(i);
        CHECK(o.y == doctest::Approx(d2 * (ncf2 - ncf2_be)).epsilon(1e-12));
        CHECK(o.ev == doctest::Approx(0.0).scale(1.0));
        CHECK(o.x[1] == doctest::Approx(l1 - 1.0).epsilon(1e-12));
    }
}

TEST_CASE("regressor batch means are near zero") {
    const auto toy = toy_book();
    const auto book = compile(toy.portfolio, toy.assumptions);
    RiskModels models;
    models.trend.sigma = 0.0386;
    models.basis.sigma = 0.0296;
    models.lapse.sigma = 0.1;
    auto cal = calibrate_calamity();
    cal.mode = CalamityModel::Mode::mean_only;
    models.calamity = cal;
    BatchOptions opts;
    opts.regressors = RegressorSet::observed;
    const std::size_t n = 100000;
    const auto b = build_batch(book, models, n, 11, opts);
    for (std::size_t j = 0; j < 2; ++j) {
        double s = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = b.outcome(i).x[j];
            s += x;
            s2 += x * x;
        }
        const double mean = s / n;
        const double se = std::sqrt((s2 / n - mean * mean) / n);
        CHECK(std::abs(mean) < 3.0 * se);
    }
}

TEST_CASE("batch matches a naive per-point projection") {
    const auto toy = toy_book();
    const auto book = compile(toy.portfolio, toy.assumptions);
    RiskModels models;
    models.trend.sigma = 0.05;
    models.basis.sigma = 0.03;
    models.lapse.sigma = 0.1;
    models.calamity = calibrate_calamity();
    const auto path = simulate_path(models, 10, 5, 0);
    const auto batch = build_batch(book, models, 2, 5);
    const double offset = models.calamity_offset();

    double pv_dev_later = 0.0;
    for (const auto& mp : toy.portfolio) {
        double lives = mp.lives, lives_be = mp.lives;
        for (int t = 0; t < 10; ++t) {
            const double q_be = *toy.assumptions.mortality.rate(mp.age + t, t + 1);
            const double w_be = toy.assumptions.lapse[t];
            const double q = path.trend[t] * path.basis * (q_be - offset) + path.calamity[t];
            const double w = path.af_lapse[t] * w_be;
            const double ncf = lives * (mp.annual_net_premium - q * mp.sum_assured);
            const double ncf_be = lives_be * (mp.annual_net_premium - q_be * mp.sum_assured);
            if (t > 0) pv_dev_later += toy.assumptions.discount[t] * (ncf - ncf_be);
            lives *= 1.0 - q - w;
            lives_be *= 1.0 - q_be - w_be;
        }
    }
    CHECK(batch.outcome(0).y == doctest::Approx(pv_dev_later).epsilon(1e-9));
}

TEST_CASE("regressor column subset") {
    const auto toy = toy_book();
    const auto book = compile(toy.portfolio, toy.assumptions);
    BatchOptions opts;
    opts.columns = {"af_lapse_1"};
    const auto b = build_batch(book, RiskModels{}, 4, 1, opts);
    CHECK(b.regressor_names == std::vector<std::string>{"af_lapse_1"});
    opts.columns = {"nope"};
    CHECK_THROWS(build_batch(book, RiskModels{}, 4, 1, opts));
}
