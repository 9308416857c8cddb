#ifndef LSMC_STANDARD_FORMULA_HPP
#define LSMC_STANDARD_FORMULA_HPP

#include "lsmc/portfolio.hpp"

#include <array>
#include <string>
#include <vector>

namespace lsmc {

struct StressScenario {
    enum class Kind { lapse_mass, lapse_up, lapse_down, mortality_up, catastrophe };

    Kind kind = Kind::mortality_up;
    double magnitude = 0.0;

    // Solvency II defaults: 40% mass lapse, +/-50% lapse, +15% mortality, +1.5 per mille cat.
    static StressScenario standard(Kind kind);
};

const char* to_string(StressScenario::Kind kind);

struct StressResult {
    CashflowVector cashflows;
    std::size_t clipped_years = 0;
};

StressResult apply_stress(const Book& book, const StressScenario& scenario);
CashflowVector apply_stress(const Portfolio& portfolio, const AssumptionSet& assumptions,
                            const StressScenario& scenario);

struct SubScrs {
    double lapse = 0.0;
    double mortality = 0.0;
    double catastrophe = 0.0;
};

// sqrt(L^2 + M^2 + C^2 + 2 rho M C + 2 rho L C); there is no lapse-mortality term.
double aggregate(const SubScrs& sub, double correlation = 0.25);

struct StandardFormulaOptions {
    std::array<double, 5> magnitudes{0.40, 0.50, 0.50, 0.15, 0.0015}; // in Kind order
    double correlation = 0.25;
};

struct ScenarioOutcome {
    StressScenario scenario;
    double pvofp = 0.0;
    double sub_scr = 0.0; // max(pvofp_det - pvofp, 0)
};

struct StandardFormulaReport {
    double pvofp_det = 0.0;
    std::vector<ScenarioOutcome> scenarios; // Kind order
    SubScrs sub_scrs;
    double correlation = 0.25;
    double scr = 0.0;
    std::vector<std::string> warnings;
};

StandardFormulaReport standard_formula_scr(const Book& book, const StandardFormulaOptions& options = {});

} // namespace lsmc

#endif // LSMC_STANDARD_FORMULA_HPP
