#ifndef LSMC_PROJECTION_HPP
#define LSMC_PROJECTION_HPP

#include "lsmc/portfolio.hpp"
#include "lsmc/risk_drivers.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace lsmc {

// Which first-year quantities enter the regression.
//  observed: realized mortality and lapse factors (actual / expected lives)
//  split:    base mortality, pandemic excess and lapse factors
//  latent:   trend, basis, calamity and lapse driver states (diagnostic)
enum class RegressorSet { observed, split, latent };

RegressorSet parse_regressor_set(const std::string& name);
const char* to_string(RegressorSet set);
std::vector<std::string> regressor_names(RegressorSet set);

CashflowVector project_stochastic(const Book& book, const AdjustmentFactorPath& path,
                                  ProjectionStats* stats = nullptr);
CashflowVector project_stochastic(const Portfolio& portfolio, const AssumptionSet& assumptions,
                                  const AdjustmentFactorPath& path);

struct SimulatedOutcome {
    std::span<const double> x; // first-year factors minus one
    double ev = 0.0;           // delta(1) (NCF(1) - E[NCF(1)])
    double y = 0.0;            // sum_{t>=2} delta(t) (NCF(t) - E[NCF(t)])
};

struct SimulationBatch {
    RegressorSet regressor_set = RegressorSet::observed;
    std::vector<std::string> regressor_names;
    std::size_t n_sims = 0;
    std::uint64_t seed = 0;
    std::vector<double> x; // row-major, n_sims x n_regressors
    std::vector<double> ev;
    std::vector<double> y;
    std::size_t clip_count = 0; // path-years with clipped decrements
    std::size_t path_years = 0;
    bool recentered = false;
    // Sample mean of NCF(t) across paths and the best-estimate NCF(t) it centres on.
    std::vector<double> mean_ncf;
    std::vector<double> best_estimate_ncf;

    std::size_t n_regressors() const { return regressor_names.size(); }
    SimulatedOutcome outcome(std::size_t i) const;
    double clip_fraction() const;
};

struct BatchOptions {
    RegressorSet regressors = RegressorSet::split;
    std::vector<std::string> columns; // optional subset of the set's regressors, in this order
    bool recenter = false;            // centre on the batch sample mean instead of best estimate
    unsigned threads = 1;
};

SimulationBatch build_batch(const Book& book, std::span<const AdjustmentFactorPath> paths,
                            const BatchOptions& options = {});

// Streams paths 0..n_sims-1 of `seed` through the projection.
SimulationBatch build_batch(const Book& book, const RiskModels& models, std::size_t n_sims,
                            std::uint64_t seed, const BatchOptions& options = {});

// First-year regressors for one projected path (factors minus one).
void first_year_regressors(RegressorSet set, const AdjustmentFactorPath& path,
                           const CashflowVector& stochastic, const CashflowVector& best_estimate,
                           std::span<double> out);

// Throws when a best-estimate rate lies below the calamity mean load, which
// would make the base-mortality part of the decomposition negative.
void check_calamity_load(const Book& book, double calamity_offset);

} // namespace lsmc

#endif // LSMC_PROJECTION_HPP
