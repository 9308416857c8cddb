#ifndef LSMC_LSMC_ENGINE_HPP
#define LSMC_LSMC_ENGINE_HPP

#include "lsmc/projection.hpp"
#include "lsmc/regression.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lsmc {

enum class BasisKind { linear, linear_plus_quadratic };

BasisKind parse_basis_kind(const std::string& name);
const char* to_string(BasisKind kind);

std::size_t basis_size(BasisKind kind, std::size_t n_regressors);
std::vector<std::string> basis_terms(BasisKind kind, const std::vector<std::string>& regressors);
// Writes the basis functions of one regressor vector x into out.
void expand_basis(BasisKind kind, std::span<const double> x, std::span<double> out);

struct RegressionResult {
    BasisKind basis = BasisKind::linear;
    std::vector<std::string> regressors;
    std::vector<std::string> terms;
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    double r_squared = 0.0;          // against the raw sum of squares (no intercept)
    double r_squared_centered = 0.0;
    std::size_t n = 0;
    double condition_estimate = 0.0;
    StdErrorKind se_kind = StdErrorKind::classical;

    double predict(std::span<const double> x) const;
};

// No-intercept least squares of y on the basis expansion of the first-year
// regressors.
RegressionResult fit(const SimulationBatch& batch, BasisKind basis = BasisKind::linear,
                     StdErrorKind se_kind = StdErrorKind::classical);

struct OwnFundsDistribution {
    std::vector<double> samples; // positive = gain in own funds
    double mean = 0.0;
    double standard_error = 0.0;
};

OwnFundsDistribution own_funds_distribution(const SimulationBatch& batch,
                                            const RegressionResult& reg);

struct RiskMeasureReport {
    double level = 0.995;
    std::size_t n = 0;
    double quantile = 0.0;       // signed (1 - level) quantile of own-funds changes
    double scr = 0.0;            // max(-quantile, 0)
    double tvar = 0.0;           // -mean of samples at or below the quantile
    double quantile_standard_error = 0.0;
    bool low_sample_warning = false;
    std::vector<std::pair<double, double>> quantile_table; // (probability, quantile)
};

// Lower order statistic x_(k), k = max(1, floor(n p)), on sorted data.
double lower_order_statistic(std::span<const double> sorted, double p);

RiskMeasureReport risk_measures(std::span<const double> samples, double level = 0.995);

// Sum over k of prod_{j<=k} (1 - q_j).
double life_expectancy(std::span<const double> q);

struct LifeExpectancyResult {
    double e_be = 0.0;
    double alpha_le = 0.0;
    double beta_le = 0.0;
    double alpha_se = 0.0;
    double beta_se = 0.0;
    double r_squared = 0.0;
    double quantile_level = 0.005;
    double fitted_quantile = 0.0;
    std::optional<double> stress_le;
    std::optional<double> stress_probability; // share of fitted values at or below stress_le
    std::string regressor = "af_mort_1";
    std::size_t n = 0;
};

struct LifeExpectancyOptions {
    double quantile_level = 0.005;
    std::optional<double> stress_le; // defaults to the +15% mortality stress
    double stress_mortality_factor = 1.15;
    // observed: first-year deaths ratio; split and latent: first-year base-mortality factor
    RegressorSet regressors = RegressorSet::split;
    unsigned threads = 1;
};

// Aggregate portfolio mortality per year (deaths over in-force lives).
std::vector<double> aggregate_mortality(const CashflowVector& cf);

// Re-simulates the batch's paths from its seed, computes each path's
// portfolio life expectancy, and regresses it on the realized first-year
// mortality factor with an intercept.
LifeExpectancyResult life_expectancy_regression(const SimulationBatch& batch, const Book& book,
                                                const RiskModels& models,
                                                const LifeExpectancyOptions& options = {});

// Same regression for explicitly given (first-year factor, life expectancy) pairs.
LifeExpectancyResult life_expectancy_regression(std::span<const double> af_mort_1,
                                                std::span<const double> life_expectancies,
                                                double e_be, const LifeExpectancyOptions& options);

} // namespace lsmc

#endif // LSMC_LSMC_ENGINE_HPP
