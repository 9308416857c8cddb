#ifndef LSMC_CONFIG_HPP
#define LSMC_CONFIG_HPP

#include "lsmc/lsmc_engine.hpp"
#include "lsmc/projection.hpp"
#include "lsmc/risk_drivers.hpp"
#include "lsmc/standard_formula.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lsmc {

// Effective run configuration. Sources, lowest precedence first: built-in
// defaults, the INI config file, LSMC_OUT_DIR (output directory only),
// command-line flags.
struct RunConfig {
    // [data]; relative paths resolve against the config file's directory
    std::filesystem::path portfolio;
    std::filesystem::path mortality;
    std::filesystem::path lapse_rates;
    std::filesystem::path discount;

    // [run]
    std::size_t sims = 100000;
    std::uint64_t seed = 20240229;
    double level = 0.995;
    unsigned threads = 1;
    std::filesystem::path out = "out";
    std::string regression_basis = "linear";
    std::string regressors = "split";
    std::vector<std::string> regressor_columns;
    bool recenter = false;
    bool robust_se = false;

    // [trend]
    double trend_quantile = 0.95;
    double trend_factor = 1.45;
    int trend_year = 40;
    std::optional<double> trend_sigma; // overrides the calibration when set

    // [calamity]
    bool calamity_enabled = true;
    std::string calamity_mode = "pareto";
    double calamity_quantile_a = 0.98;
    double calamity_excess_a = 0.0004;
    double calamity_quantile_b = 0.999;
    double calamity_excess_b = 0.005;

    // [basis]
    double basis_share_be = 0.35;
    double basis_share_adverse = 0.39;
    double basis_multiplier = 2.0;
    std::optional<double> basis_sigma;

    // [lapse]
    double lapse_sigma = 0.10;

    // [standard_formula]
    std::array<double, 5> stress_magnitudes{0.40, 0.50, 0.50, 0.15, 0.0015};
    double stress_correlation = 0.25;

    // [funnel]
    std::string funnel_component = "mort";
    std::vector<double> funnel_quantiles = kDefaultFunnelQuantiles;

    // [life_expectancy]
    double le_level = 0.005;
    std::optional<double> le_stress;

    // [nested]
    std::size_t nested_outer = 5000;
    std::size_t nested_inner = 1000;
    double nested_budget_seconds = 600.0;
};

// Parses an INI file; unknown sections or keys are config errors.
RunConfig load_config(const std::filesystem::path& path);

void check(const RunConfig& config);

struct CalibratedModels {
    RiskModels models;
    nlohmann::ordered_json echo; // anchors and calibrated parameters
};

CalibratedModels calibrate(const RunConfig& config);

StandardFormulaOptions standard_formula_options(const RunConfig& config);
BatchOptions batch_options(const RunConfig& config);

// Every setting that can influence results. Thread count is excluded: it
// cannot change any output.
nlohmann::ordered_json to_json(const RunConfig& config);

} // namespace lsmc

#endif // LSMC_CONFIG_HPP
