#include "lsmc/error.hpp"
#include "lsmc/random.hpp"
#include "lsmc/regression.hpp"

#include "doctest.h"

#include <cmath>

using namespace lsmc;

TEST_CASE("noiseless single regressor") {
    const std::size_t n = 50;
    Matrix X(n, 1);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 0.5 + 0.02 * i;
        X(i, 0) = x - 1.0;
        y[i] = 2.0 * (x - 1.0);
    }
    const auto s = least_squares(X, y, {"x"});
    CHECK(std::abs(s.coefficients[0] - 2.0) < 1e-12);
    CHECK(s.r_squared_raw == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("recovery with noise and orthogonal residuals") {
    const std::size_t n = 10000;
    Substream rng(3, 0, StreamTag::synthetic);
    Matrix X(n, 2);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = 0.1 * rng.normal();
        X(i, 1) = 0.2 * rng.normal();
        y[i] = 2.0 * X(i, 0) - 5.0 * X(i, 1) + 0.5 * rng.normal();
    }
    for (auto kind : {StdErrorKind::classical, StdErrorKind::hc0}) {
        const auto s = least_squares(X, y, {"a", "b"}, kind);
        CHECK(std::abs(s.coefficients[0] - 2.0) < 4.0 * s.standard_errors[0]);
        CHECK(std::abs(s.coefficients[1] + 5.0) < 4.0 * s.standard_errors[1]);
        for (std::size_t j = 0; j < 2; ++j) {
            double dot = 0.0, norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += s.residuals[i] * X(i, j);
                norm += X(i, j) * X(i, j);
            }
            CHECK(std::abs(dot) < 1e-10 * std::sqrt(norm) * std::sqrt(s.rss));
        }
    }
}

TEST_CASE("null model") {
    const std::size_t n = 5000;
    Substream rng(4, 0, StreamTag::synthetic);
    Matrix X(n, 2);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = rng.normal();
        X(i, 1) = rng.normal();
        y[i] = rng.normal();
    }
    const auto s = least_squares(X, y, {"a", "b"});
    CHECK(std::abs(s.coefficients[0]) < 4.0 * s.standard_errors[0]);
    CHECK(std::abs(s.coefficients[1]) < 4.0 * s.standard_errors[1]);
    CHECK(s.r_squared_raw < 0.01);
}

TEST_CASE("collinear columns are named in the error") {
    Matrix X(10, 2);
    std::vector<double> y(10, 1.0);
    for (std::size_t i = 0; i < 10; ++i) {
        X(i, 0) = static_cast<double>(i);
        X(i, 1) = 3.0 * static_cast<double>(i);
    }
    try {
        least_squares(X, y, {"first", "second"});
        FAIL("expected a collinearity error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::collinearity);
        CHECK(std::string(e.what()).find("second") != std::string::npos);
    }
}

TEST_CASE("too few rows") {
    Matrix X(2, 2);
    X(0, 0) = 1;
    X(1, 1) = 1;
    CHECK_THROWS_AS(least_squares(X, std::vector<double>{1, 2}, {"a", "b"}), Error);
}
