#ifndef LSMC_RISK_DRIVERS_HPP
#define LSMC_RISK_DRIVERS_HPP

#include "lsmc/portfolio.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lsmc {

// Mean-one geometric Brownian trend factor exp(sigma W(t) - sigma^2 t / 2).
struct TrendModel {
    double sigma = 0.0;
};

// Pandemic excess mortality, Pareto(alpha, xm) in absolute annual rate units.
struct CalamityModel {
    enum class Mode { pareto, mean_only };

    double alpha = 2.0;
    double xm = 0.0;
    Mode mode = Mode::pareto;

    double mean_load() const { return alpha * xm / (alpha - 1.0); }
    double quantile(double p) const;
};

// Multiplicative lognormal level factor with mean 1 and standard deviation sigma.
struct BasisRiskModel {
    double sigma = 0.0;
};

struct LapseDriverModel {
    double sigma = 0.0;
};

struct RiskModels {
    TrendModel trend;
    BasisRiskModel basis;
    LapseDriverModel lapse;
    std::optional<CalamityModel> calamity; // absent: no pandemic component, no mean load

    double calamity_offset() const { return calamity ? calamity->mean_load() : 0.0; }
};

// One simulated realization of every driver over the horizon.
// Stochastic mortality rate for a best-estimate rate q in year t:
//   q* = trend[t] * basis * (q - calamity_offset) + calamity[t]
struct AdjustmentFactorPath {
    std::vector<double> trend;
    double basis = 1.0;
    std::vector<double> calamity;
    std::vector<double> af_lapse;
    double calamity_offset = 0.0;

    std::size_t horizon() const { return trend.size(); }
    // Mortality factor relative to q_be in year t (0-based).
    double af_mort(std::size_t t, double q_be) const;
    // Base-mortality factor trend[t] * basis, excluding the pandemic component.
    double base_factor(std::size_t t) const { return trend[t] * basis; }

    // Path that reproduces best-estimate decrements exactly.
    static AdjustmentFactorPath unit(std::size_t horizon);
};

CalamityModel calibrate_calamity(double q_a = 0.98, double x_a = 0.0004, double q_b = 0.999,
                                 double x_b = 0.005);

TrendModel calibrate_trend(double target_quantile = 0.95, double target_factor = 1.45,
                           int at_year = 40);

BasisRiskModel calibrate_basis(double smoker_share_be, double smoker_share_adverse,
                               double smoker_multiplier = 2.0);

// Generates path `index` of the stream identified by `seed`. The result
// depends only on (models, horizon, seed, index).
AdjustmentFactorPath simulate_path(const RiskModels& models, int horizon, std::uint64_t seed,
                                   std::uint64_t index);

std::vector<AdjustmentFactorPath> simulate_paths(const RiskModels& models, int horizon,
                                                 std::size_t n_sims, std::uint64_t seed,
                                                 unsigned threads = 1);

enum class FunnelComponent { mort, lapse, trend };

FunnelComponent parse_funnel_component(const std::string& name);
const char* to_string(FunnelComponent component);

struct FunnelTable {
    FunnelComponent component = FunnelComponent::mort;
    std::vector<double> quantiles;
    // rows[t][k] is the quantiles[k]-quantile in year t + 1
    std::vector<std::vector<double>> rows;
    std::vector<double> mean;
};

inline const std::vector<double> kDefaultFunnelQuantiles{0.05, 0.25, 0.75, 0.95};

// Midpoint-of-order-statistics estimator: with sorted x_1..x_n and h = n p,
// returns (x_h + x_{h+1}) / 2 when h is integral, else x_ceil(h).
double funnel_quantile(std::span<const double> sorted, double p);

FunnelTable funnel(std::span<const AdjustmentFactorPath> paths, FunnelComponent component,
                   const std::vector<double>& quantiles = kDefaultFunnelQuantiles);

// Same table without materializing whole paths.
FunnelTable funnel(const RiskModels& models, int horizon, std::size_t n_sims, std::uint64_t seed,
                   FunnelComponent component,
                   const std::vector<double>& quantiles = kDefaultFunnelQuantiles,
                   unsigned threads = 1);

} // namespace lsmc

#endif // LSMC_RISK_DRIVERS_HPP
