#include "lsmc/lsmc_engine.hpp"

#include "lsmc/error.hpp"
#include "lsmc/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace lsmc {

BasisKind parse_basis_kind(const std::string& name) {
    if (name == "linear") return BasisKind::linear;
    if (name == "linear_plus_quadratic" || name == "quadratic") return BasisKind::linear_plus_quadratic;
    throw Error(ErrorCode::config,
                "unknown regression basis '" + name + "' (linear, linear_plus_quadratic)");
}

const char* to_string(BasisKind kind) {
    return kind == BasisKind::linear ? "linear" : "linear_plus_quadratic";
}

std::size_t basis_size(BasisKind kind, std::size_t k) {
    return kind == BasisKind::linear ? k : k + k * (k + 1) / 2;
}

std::vector<std::string> basis_terms(BasisKind kind, const std::vector<std::string>& regressors) {
    std::vector<std::string> terms = regressors;
    if (kind == BasisKind::linear_plus_quadratic) {
        for (std::size_t i = 0; i < regressors.size(); ++i) {
            for (std::size_t j = i; j < regressors.size(); ++j) {
                terms.push_back(i == j ? regressors[i] + "^2" : regressors[i] + "*" + regressors[j]);
            }
        }
    }
    return terms;
}

void expand_basis(BasisKind kind, std::span<const double> x, std::span<double> out) {
    std::size_t m = 0;
    for (double v : x) out[m++] = v;
    if (kind == BasisKind::linear_plus_quadratic) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = i; j < x.size(); ++j) out[m++] = x[i] * x[j];
        }
    }
}

double RegressionResult::predict(std::span<const double> x) const {
    if (x.size() != regressors.size()) {
        throw Error(ErrorCode::invalid_argument, "regressor layout does not match the fitted model");
    }
    std::vector<double> phi(coefficients.size());
    expand_basis(basis, x, phi);
    double s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += coefficients[i] * phi[i];
    return s;
}

RegressionResult fit(const SimulationBatch& batch, BasisKind basis, StdErrorKind se_kind) {
    const std::size_t n = batch.n_sims;
    const std::size_t k = batch.n_regressors();
    const std::size_t p = basis_size(basis, k);
    if (n <= p) {
        throw Error(ErrorCode::invalid_argument,
                    "batch of " + std::to_string(n) + " paths is too small for " +
                        std::to_string(p) + " regression terms");
    }
    Matrix design(n, p);
    std::vector<double> phi(p);
    for (std::size_t i = 0; i < n; ++i) {
        expand_basis(basis, batch.outcome(i).x, phi);
        for (std::size_t j = 0; j < p; ++j) design(i, j) = phi[j];
    }

    RegressionResult r;
    r.basis = basis;
    r.regressors = batch.regressor_names;
    r.terms = basis_terms(basis, batch.regressor_names);
    r.n = n;
    r.se_kind = se_kind;
    const OlsSolution sol = least_squares(design, batch.y, r.terms, se_kind);
    r.coefficients = sol.coefficients;
    r.standard_errors = sol.standard_errors;
    r.r_squared = sol.r_squared_raw;
    r.r_squared_centered = sol.r_squared_centered;
    r.condition_estimate = sol.condition_estimate;
    return r;
}

OwnFundsDistribution own_funds_distribution(const SimulationBatch& batch,
                                            const RegressionResult& reg) {
    if (reg.regressors != batch.regressor_names) {
        throw Error(ErrorCode::invalid_argument,
                    "regression was fitted on a different regressor layout than the batch");
    }
    OwnFundsDistribution d;
    d.samples.resize(batch.n_sims);
    std::vector<double> phi(reg.coefficients.size());
    for (std::size_t i = 0; i < batch.n_sims; ++i) {
        const auto o = batch.outcome(i);
        expand_basis(reg.basis, o.x, phi);
        double s = o.ev;
        for (std::size_t j = 0; j < phi.size(); ++j) s += reg.coefficients[j] * phi[j];
        d.samples[i] = s;
    }
    const double n = static_cast<double>(d.samples.size());
    double sum = 0.0;
    for (double v : d.samples) sum += v;
    d.mean = sum / n;
    double ss = 0.0;
    for (double v : d.samples) ss += (v - d.mean) * (v - d.mean);
    d.standard_error = n > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return d;
}

double lower_order_statistic(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw Error(ErrorCode::invalid_argument, "empty distribution");
    const double h = static_cast<double>(sorted.size()) * p;
    // guard against n p landing a rounding error below an integer
    auto k = static_cast<std::size_t>(std::floor(h * (1.0 + 1e-12)));
    k = std::clamp<std::size_t>(k, 1, sorted.size());
    return sorted[k - 1];
}

RiskMeasureReport risk_measures(std::span<const double> samples, double level) {
    if (samples.empty()) throw Error(ErrorCode::invalid_argument, "empty distribution");
    if (!(level > 0.0 && level < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "risk measure level must lie in (0, 1)");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double p = 1.0 - level;

    RiskMeasureReport r;
    r.level = level;
    r.n = n;
    r.low_sample_warning = static_cast<double>(n) < 1.0 / p;
    r.quantile = lower_order_statistic(sorted, p);
    r.scr = std::max(-r.quantile, 0.0);

    double tail_sum = 0.0;
    std::size_t tail_n = 0;
    for (double v : sorted) {
        if (v > r.quantile) break;
        tail_sum += v;
        ++tail_n;
    }
    r.tvar = -tail_sum / static_cast<double>(tail_n);
    if (r.tvar == 0.0) r.tvar = 0.0; // no negative zero in reports

    // distribution-free standard error from order statistics one binomial sd either side
    const double np = static_cast<double>(n) * p;
    const double sd = std::sqrt(np * (1.0 - p));
    const auto lo = static_cast<std::size_t>(std::clamp(std::floor(np - sd), 1.0, static_cast<double>(n)));
    const auto hi = static_cast<std::size_t>(std::clamp(std::ceil(np + sd), 1.0, static_cast<double>(n)));
    r.quantile_standard_error = 0.5 * (sorted[hi - 1] - sorted[lo - 1]);

    for (double q : {0.001, 0.005, 0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 0.995, 0.999}) {
        r.quantile_table.emplace_back(q, lower_order_statistic(sorted, q));
    }
    return r;
}

double life_expectancy(std::span<const double> q) {
    double survival = 1.0;
    double e = 0.0;
    for (double qj : q) {
        if (!(qj >= 0.0 && qj <= 1.0)) {
            throw Error(ErrorCode::invalid_argument, "mortality rate outside [0, 1]");
        }
        survival *= 1.0 - qj;
        e += survival;
    }
    return e;
}

std::vector<double> aggregate_mortality(const CashflowVector& cf) {
    std::vector<double> q(cf.horizon());
    for (std::size_t t = 0; t < q.size(); ++t) {
        q[t] = cf.lives_in_force[t] > 0.0 ? cf.lives_died[t] / cf.lives_in_force[t] : 1.0;
    }
    return q;
}

LifeExpectancyResult life_expectancy_regression(std::span<const double> af_mort_1,
                                                std::span<const double> les, double e_be,
                                                const LifeExpectancyOptions& options) {
    const std::size_t n = af_mort_1.size();
    if (les.size() != n) throw Error(ErrorCode::invalid_argument, "length mismatch");
    Matrix design(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = af_mort_1[i];
    }
    const auto sol = least_squares(design, les, {"intercept", "af_mort_1"});

    LifeExpectancyResult r;
    r.n = n;
    r.e_be = e_be;
    r.alpha_le = sol.coefficients[0];
    r.beta_le = sol.coefficients[1];
    r.alpha_se = sol.standard_errors[0];
    r.beta_se = sol.standard_errors[1];
    r.r_squared = sol.r_squared_centered;
    r.quantile_level = options.quantile_level;

    std::vector<double> fitted(n);
    for (std::size_t i = 0; i < n; ++i) fitted[i] = r.alpha_le + r.beta_le * af_mort_1[i];
    std::sort(fitted.begin(), fitted.end());
    r.fitted_quantile = lower_order_statistic(fitted, options.quantile_level);
    if (options.stress_le) {
        r.stress_le = options.stress_le;
        const auto below = std::upper_bound(fitted.begin(), fitted.end(), *options.stress_le) - fitted.begin();
        r.stress_probability = static_cast<double>(below) / static_cast<double>(n);
    }
    return r;
}

LifeExpectancyResult life_expectancy_regression(const SimulationBatch& batch, const Book& book,
                                                const RiskModels& models,
                                                const LifeExpectancyOptions& options) {
    const std::size_t n = batch.n_sims;
    const CashflowVector be = project_best_estimate(book);
    const double e_be = life_expectancy(aggregate_mortality(be));

    LifeExpectancyOptions opts = options;
    if (!opts.stress_le) {
        std::vector<double> scale(static_cast<std::size_t>(book.horizon), opts.stress_mortality_factor);
        DecrementAdjustment stress;
        stress.mortality_scale = scale;
        opts.stress_le = life_expectancy(aggregate_mortality(project(book, stress)));
    }

    check_calamity_load(book, models.calamity_offset());
    std::vector<double> af(n), les(n);
    parallel_for(n, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto path = simulate_path(models, book.horizon, batch.seed, i);
            const auto cf = project_stochastic(book, path);
            if (options.regressors == RegressorSet::observed) {
                af[i] = be.lives_died[0] > 0.0 ? cf.lives_died[0] / be.lives_died[0] : 1.0;
            } else {
                af[i] = path.base_factor(0);
            }
            les[i] = life_expectancy(aggregate_mortality(cf));
        }
    });
    auto r = life_expectancy_regression(af, les, e_be, opts);
    if (options.regressors != RegressorSet::observed) r.regressor = "af_base_mort_1";
    return r;
}

} // namespace lsmc
