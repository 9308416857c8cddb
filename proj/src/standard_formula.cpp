#include "lsmc/standard_formula.hpp"

#include "lsmc/error.hpp"

#include <algorithm>
#include <cmath>

namespace lsmc {

StressScenario StressScenario::standard(Kind kind) {
    switch (kind) {
    case Kind::lapse_mass: return {kind, 0.40};
    case Kind::lapse_up: return {kind, 0.50};
    case Kind::lapse_down: return {kind, 0.50};
    case Kind::mortality_up: return {kind, 0.15};
    case Kind::catastrophe: return {kind, 0.0015};
    }
    return {kind, 0.0};
}

const char* to_string(StressScenario::Kind kind) {
    using K = StressScenario::Kind;
    switch (kind) {
    case K::lapse_mass: return "lapse_mass";
    case K::lapse_up: return "lapse_up";
    case K::lapse_down: return "lapse_down";
    case K::mortality_up: return "mortality_up";
    case K::catastrophe: return "catastrophe";
    }
    return "?";
}

StressResult apply_stress(const Book& book, const StressScenario& s) {
    using K = StressScenario::Kind;
    if (!(s.magnitude >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "stress magnitudes must be non-negative");
    }
    const auto T = static_cast<std::size_t>(book.horizon);
    std::vector<double> mortality_scale, mortality_excess, lapse_scale;
    DecrementAdjustment adj;
    switch (s.kind) {
    case K::lapse_mass:
        if (s.magnitude > 1.0) {
            throw Error(ErrorCode::invalid_argument, "mass lapse cannot exceed the whole portfolio");
        }
        adj.initial_volume = 1.0 - s.magnitude;
        break;
    case K::lapse_up:
        lapse_scale.assign(T, 1.0 + s.magnitude);
        break;
    case K::lapse_down:
        lapse_scale.assign(T, std::max(1.0 - s.magnitude, 0.0));
        break;
    case K::mortality_up:
        mortality_scale.assign(T, 1.0 + s.magnitude);
        break;
    case K::catastrophe:
        mortality_excess.assign(T, 0.0);
        mortality_excess[0] = s.magnitude;
        break;
    }
    adj.mortality_scale = mortality_scale;
    adj.mortality_excess = mortality_excess;
    adj.lapse_scale = lapse_scale;

    ProjectionStats stats;
    StressResult r{project(book, adj, &stats), stats.clipped_years};
    return r;
}

CashflowVector apply_stress(const Portfolio& portfolio, const AssumptionSet& assumptions,
                            const StressScenario& scenario) {
    return apply_stress(compile(portfolio, assumptions), scenario).cashflows;
}

double aggregate(const SubScrs& s, double rho) {
    if (s.lapse < 0.0 || s.mortality < 0.0 || s.catastrophe < 0.0) {
        throw Error(ErrorCode::invalid_argument, "sub-SCRs must be non-negative");
    }
    return std::sqrt(s.lapse * s.lapse + s.mortality * s.mortality + s.catastrophe * s.catastrophe +
                     2.0 * rho * s.mortality * s.catastrophe + 2.0 * rho * s.lapse * s.catastrophe);
}

StandardFormulaReport standard_formula_scr(const Book& book, const StandardFormulaOptions& options) {
    using K = StressScenario::Kind;
    StandardFormulaReport r;
    r.correlation = options.correlation;
    r.pvofp_det = present_value(project_best_estimate(book), book.discount);

    const K kinds[] = {K::lapse_mass, K::lapse_up, K::lapse_down, K::mortality_up, K::catastrophe};
    for (std::size_t i = 0; i < 5; ++i) {
        const StressScenario s{kinds[i], options.magnitudes[i]};
        const StressResult res = apply_stress(book, s);
        if (res.clipped_years > 0) {
            r.warnings.push_back(std::string("scenario ") + to_string(s.kind) + " clipped decrements in " +
                                 std::to_string(res.clipped_years) + " year(s)");
        }
        ScenarioOutcome o;
        o.scenario = s;
        o.pvofp = present_value(res.cashflows, book.discount);
        o.sub_scr = std::max(r.pvofp_det - o.pvofp, 0.0);
        r.scenarios.push_back(o);
    }
    r.sub_scrs.lapse = std::max({r.scenarios[0].sub_scr, r.scenarios[1].sub_scr, r.scenarios[2].sub_scr});
    r.sub_scrs.mortality = r.scenarios[3].sub_scr;
    r.sub_scrs.catastrophe = r.scenarios[4].sub_scr;
    r.scr = aggregate(r.sub_scrs, r.correlation);
    return r;
}

} // namespace lsmc
