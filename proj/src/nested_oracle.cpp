#include "lsmc/nested_oracle.hpp"

#include "lsmc/error.hpp"
#include "lsmc/parallel.hpp"
#include "lsmc/projection.hpp"
#include "lsmc/random.hpp"

#include <atomic>
#include <chrono>
#include <cmath>

namespace lsmc {

namespace {

// Continues a mean-one GBM from its year-one Brownian state.
void continue_gbm(Substream& rng, double sigma, double w1, std::vector<double>& out) {
    double w = w1;
    for (std::size_t t = 1; t < out.size(); ++t) {
        w += rng.normal();
        out[t] = std::exp(sigma * w - 0.5 * sigma * sigma * static_cast<double>(t + 1));
    }
}

} // namespace

NestedResult nested_scr(const Book& book, const RiskModels& models, const NestedConfig& cfg,
                        double level) {
    if (cfg.n_outer < 1 || cfg.n_inner < 1) {
        throw Error(ErrorCode::invalid_argument, "nested simulation needs n_outer, n_inner >= 1");
    }
    check_calamity_load(book, models.calamity_offset());
    const auto T = static_cast<std::size_t>(book.horizon);
    const CashflowVector be = project_best_estimate(book);

    NestedResult result;
    result.samples.resize(cfg.n_outer);
    result.assumption_change.resize(cfg.n_outer);
    std::vector<double> inner_se(cfg.n_outer);

    const auto start = std::chrono::steady_clock::now();
    std::atomic<bool> out_of_time{false};
    std::atomic<std::size_t> completed{0};

    parallel_for(cfg.n_outer, cfg.threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> scale(T);
        CashflowVector year_one(T);
        CashflowVector inner_cf(T);
        std::vector<double> in_force_after_one(book.cohorts.size());
        std::vector<double> in_force(book.cohorts.size());

        for (std::size_t p = begin; p < end; ++p) {
            if (cfg.time_budget_seconds > 0.0) {
                const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
                if (elapsed.count() > cfg.time_budget_seconds) out_of_time = true;
            }
            if (out_of_time) return;

            // Year-one states identical to LSMC path p.
            AdjustmentFactorPath path = simulate_path(models, book.horizon, cfg.seed, p);
            Substream w_rng(cfg.seed, p, StreamTag::trend);
            const double w1 = w_rng.normal();
            Substream l_rng(cfg.seed, p, StreamTag::lapse);
            const double l1 = l_rng.normal();

            for (std::size_t t = 0; t < T; ++t) scale[t] = path.base_factor(t);
            DecrementAdjustment adj;
            adj.mortality_scale = scale;
            adj.mortality_excess = path.calamity;
            adj.lapse_scale = path.af_lapse;
            adj.mortality_offset = path.calamity_offset;

            year_one = CashflowVector(T);
            std::fill(in_force_after_one.begin(), in_force_after_one.end(), 1.0);
            project_years(book, adj, 0, 1, in_force_after_one, year_one);
            const double ev = book.discount[0] * (year_one.ncf[0] - be.ncf[0]);

            double sum = 0.0, sum_sq = 0.0;
            for (std::size_t i = 1; i <= cfg.n_inner; ++i) {
                const auto inner = static_cast<std::uint32_t>(i);
                Substream trend_rng(cfg.seed, p, StreamTag::trend, inner);
                continue_gbm(trend_rng, models.trend.sigma, w1, path.trend);
                Substream lapse_rng(cfg.seed, p, StreamTag::lapse, inner);
                continue_gbm(lapse_rng, models.lapse.sigma, l1, path.af_lapse);
                if (models.calamity && models.calamity->mode == CalamityModel::Mode::pareto) {
                    Substream cal_rng(cfg.seed, p, StreamTag::calamity, inner);
                    const CalamityModel& cal = *models.calamity;
                    for (std::size_t t = 1; t < T; ++t) {
                        path.calamity[t] = cal.xm * std::pow(cal_rng.uniform(), -1.0 / cal.alpha);
                    }
                }
                for (std::size_t t = 1; t < T; ++t) scale[t] = path.base_factor(t);

                std::copy(in_force_after_one.begin(), in_force_after_one.end(), in_force.begin());
                std::fill(inner_cf.premium.begin(), inner_cf.premium.end(), 0.0);
                std::fill(inner_cf.death.begin(), inner_cf.death.end(), 0.0);
                std::fill(inner_cf.lives_in_force.begin(), inner_cf.lives_in_force.end(), 0.0);
                std::fill(inner_cf.lives_died.begin(), inner_cf.lives_died.end(), 0.0);
                std::fill(inner_cf.lives_lapsed.begin(), inner_cf.lives_lapsed.end(), 0.0);
                project_years(book, adj, 1, book.horizon, in_force, inner_cf);

                double ac = 0.0;
                for (std::size_t t = 1; t < T; ++t) ac += book.discount[t] * (inner_cf.ncf[t] - be.ncf[t]);
                sum += ac;
                sum_sq += ac * ac;
            }
            const double m = static_cast<double>(cfg.n_inner);
            const double mean = sum / m;
            const double var = m > 1 ? std::max(sum_sq / m - mean * mean, 0.0) * m / (m - 1.0) : 0.0;
            result.assumption_change[p] = mean;
            result.samples[p] = ev + mean;
            inner_se[p] = std::sqrt(var / m);
            ++completed;
        }
    });

    if (out_of_time) {
        throw Error(ErrorCode::budget_exceeded,
                    "nested simulation exceeded its time budget after completing " +
                        std::to_string(completed.load()) + " of " + std::to_string(cfg.n_outer) +
                        " outer paths");
    }

    double se_sum = 0.0;
    for (double s : inner_se) se_sum += s;
    result.mean_inner_standard_error = se_sum / static_cast<double>(cfg.n_outer);
    result.risk = risk_measures(result.samples, level);
    return result;
}

} // namespace lsmc
