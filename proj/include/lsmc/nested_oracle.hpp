#ifndef LSMC_NESTED_ORACLE_HPP
#define LSMC_NESTED_ORACLE_HPP

#include "lsmc/lsmc_engine.hpp"
#include "lsmc/portfolio.hpp"
#include "lsmc/risk_drivers.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lsmc {

struct NestedConfig {
    std::size_t n_outer = 5000;
    std::size_t n_inner = 1000;
    std::uint64_t seed = 0;
    double time_budget_seconds = 0.0; // 0 = unlimited
    unsigned threads = 1;
};

struct NestedResult {
    RiskMeasureReport risk;
    std::vector<double> samples;       // ev + inner mean of the discounted year 2..T deviation
    std::vector<double> assumption_change;
    double mean_inner_standard_error = 0.0; // average standard error of the inner means
};

// Brute-force estimate of the one-year own-funds distribution. Outer path p
// shares its year-one driver states with LSMC path p of the same seed; each
// inner continuation re-simulates trend and lapse from their year-one states,
// draws fresh calamities, and keeps the basis factor of the outer path.
NestedResult nested_scr(const Book& book, const RiskModels& models, const NestedConfig& cfg,
                        double level = 0.995);

} // namespace lsmc

#endif // LSMC_NESTED_ORACLE_HPP
