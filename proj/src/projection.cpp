#include "lsmc/projection.hpp"

#include "lsmc/error.hpp"
#include "lsmc/parallel.hpp"

#include <algorithm>

namespace lsmc {

RegressorSet parse_regressor_set(const std::string& name) {
    if (name == "observed") return RegressorSet::observed;
    if (name == "split") return RegressorSet::split;
    if (name == "latent") return RegressorSet::latent;
    throw Error(ErrorCode::config, "unknown regressor set '" + name + "' (observed, split, latent)");
}

const char* to_string(RegressorSet set) {
    switch (set) {
    case RegressorSet::observed: return "observed";
    case RegressorSet::split: return "split";
    case RegressorSet::latent: return "latent";
    }
    return "?";
}

std::vector<std::string> regressor_names(RegressorSet set) {
    switch (set) {
    case RegressorSet::observed: return {"af_mort_1", "af_lapse_1"};
    case RegressorSet::split: return {"af_base_mort_1", "af_pandemic_1", "af_lapse_1"};
    case RegressorSet::latent: return {"trend_1", "basis", "calamity_1", "af_lapse_1"};
    }
    return {};
}

namespace {

// Scratch buffers so a path projection does not allocate.
struct PathScratch {
    std::vector<double> scale;
    CashflowVector cf;
    std::vector<double> in_force;

    PathScratch(const Book& book)
        : scale(static_cast<std::size_t>(book.horizon)),
          cf(static_cast<std::size_t>(book.horizon)), in_force(book.cohorts.size()) {}

    void reset() {
        for (auto* v : {&cf.premium, &cf.death, &cf.ncf, &cf.lives_in_force, &cf.lives_died,
                        &cf.lives_lapsed}) {
            std::fill(v->begin(), v->end(), 0.0);
        }
        std::fill(in_force.begin(), in_force.end(), 1.0);
    }
};

ProjectionStats project_into(const Book& book, const AdjustmentFactorPath& path, PathScratch& s) {
    if (path.horizon() != static_cast<std::size_t>(book.horizon)) {
        throw Error(ErrorCode::invalid_argument,
                    "path horizon " + std::to_string(path.horizon()) +
                        " does not match assumption horizon " + std::to_string(book.horizon));
    }
    s.reset();
    for (std::size_t t = 0; t < s.scale.size(); ++t) s.scale[t] = path.base_factor(t);
    DecrementAdjustment adj;
    adj.mortality_scale = s.scale;
    adj.mortality_excess = path.calamity;
    adj.lapse_scale = path.af_lapse;
    adj.mortality_offset = path.calamity_offset;
    return project_years(book, adj, 0, book.horizon, s.in_force, s.cf);
}

double ratio_or_one(double actual, double expected) {
    return expected > 0.0 ? actual / expected : 1.0;
}

} // namespace

CashflowVector project_stochastic(const Book& book, const AdjustmentFactorPath& path,
                                  ProjectionStats* stats) {
    PathScratch s(book);
    auto st = project_into(book, path, s);
    if (stats) *stats = st;
    return std::move(s.cf);
}

CashflowVector project_stochastic(const Portfolio& portfolio, const AssumptionSet& assumptions,
                                  const AdjustmentFactorPath& path) {
    return project_stochastic(compile(portfolio, assumptions), path);
}

SimulatedOutcome SimulationBatch::outcome(std::size_t i) const {
    const std::size_t k = n_regressors();
    return {std::span<const double>(x.data() + i * k, k), ev[i], y[i]};
}

double SimulationBatch::clip_fraction() const {
    return path_years ? static_cast<double>(clip_count) / static_cast<double>(path_years) : 0.0;
}

void first_year_regressors(RegressorSet set, const AdjustmentFactorPath& path,
                           const CashflowVector& stochastic, const CashflowVector& best_estimate,
                           std::span<double> out) {
    const double af_mort = ratio_or_one(stochastic.lives_died[0], best_estimate.lives_died[0]);
    const double af_lapse = ratio_or_one(stochastic.lives_lapsed[0], best_estimate.lives_lapsed[0]);
    switch (set) {
    case RegressorSet::observed:
        out[0] = af_mort - 1.0;
        out[1] = af_lapse - 1.0;
        break;
    case RegressorSet::split: {
        // pandemic deaths in excess of their mean, per expected death
        const double excess_deaths =
            (path.calamity[0] - path.calamity_offset) * best_estimate.lives_in_force[0];
        out[0] = path.base_factor(0) - 1.0;
        const double expected = best_estimate.lives_died[0];
        out[1] = expected > 0.0 ? excess_deaths / expected : 0.0;
        out[2] = af_lapse - 1.0;
        break;
    }
    case RegressorSet::latent:
        out[0] = path.trend[0] - 1.0;
        out[1] = path.basis - 1.0;
        out[2] = path.calamity_offset > 0.0 ? path.calamity[0] / path.calamity_offset - 1.0 : 0.0;
        out[3] = path.af_lapse[0] - 1.0;
        break;
    }
}

void check_calamity_load(const Book& book, double offset) {
    if (offset <= 0.0) return;
    for (const auto& c : book.cohorts) {
        for (int t = 0; t < c.years; ++t) {
            if (c.base_rate[static_cast<std::size_t>(t)] < offset) {
                throw Error(ErrorCode::invalid_argument,
                            "best-estimate mortality " +
                                std::to_string(c.base_rate[static_cast<std::size_t>(t)]) +
                                " for entry age " + std::to_string(c.entry_age) + " in year " +
                                std::to_string(t + 1) + " is below the calamity mean load " +
                                std::to_string(offset));
            }
        }
    }
}

namespace {

constexpr std::size_t kBlock = 1024;

// Positions of the selected columns within the full regressor set.
std::vector<std::size_t> select_columns(const BatchOptions& options) {
    const auto all = regressor_names(options.regressors);
    std::vector<std::size_t> pick;
    if (options.columns.empty()) {
        for (std::size_t i = 0; i < all.size(); ++i) pick.push_back(i);
        return pick;
    }
    for (const auto& name : options.columns) {
        auto it = std::find(all.begin(), all.end(), name);
        if (it == all.end()) {
            throw Error(ErrorCode::config, "regressor '" + name + "' is not part of the '" +
                                               to_string(options.regressors) + "' set");
        }
        pick.push_back(static_cast<std::size_t>(it - all.begin()));
    }
    return pick;
}

template <class PathAt>
SimulationBatch assemble(const Book& book, std::size_t n, const BatchOptions& options,
                         PathAt&& path_at) {
    if (n < 2) throw Error(ErrorCode::invalid_argument, "a batch needs at least two paths");
    const auto T = static_cast<std::size_t>(book.horizon);
    const CashflowVector be = project_best_estimate(book);

    SimulationBatch batch;
    batch.regressor_set = options.regressors;
    const auto all_names = regressor_names(options.regressors);
    const auto pick = select_columns(options);
    for (auto c : pick) batch.regressor_names.push_back(all_names[c]);
    batch.n_sims = n;
    const std::size_t k = batch.n_regressors();
    batch.x.resize(n * k);
    batch.ev.resize(n);
    batch.y.resize(n);
    batch.path_years = n * T;
    batch.best_estimate_ncf = be.ncf;

    // Per-block partial sums combined in block order: thread-count independent.
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::vector<double>> block_ncf(blocks, std::vector<double>(T, 0.0));
    std::vector<std::size_t> block_clips(blocks, 0);

    parallel_for(blocks, options.threads, [&](std::size_t b0, std::size_t b1) {
        PathScratch s(book);
        std::vector<double> full(all_names.size());
        for (std::size_t b = b0; b < b1; ++b) {
            const std::size_t end = std::min(n, (b + 1) * kBlock);
            for (std::size_t i = b * kBlock; i < end; ++i) {
                const AdjustmentFactorPath& path = path_at(i);
                const auto stats = project_into(book, path, s);
                block_clips[b] += stats.clipped_years;
                double ev = book.discount[0] * (s.cf.ncf[0] - be.ncf[0]);
                double y = 0.0;
                for (std::size_t t = 1; t < T; ++t) y += book.discount[t] * (s.cf.ncf[t] - be.ncf[t]);
                for (std::size_t t = 0; t < T; ++t) block_ncf[b][t] += s.cf.ncf[t];
                batch.ev[i] = ev;
                batch.y[i] = y;
                first_year_regressors(options.regressors, path, s.cf, be, full);
                for (std::size_t j = 0; j < k; ++j) batch.x[i * k + j] = full[pick[j]];
            }
        }
    });

    batch.mean_ncf.assign(T, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) {
        batch.clip_count += block_clips[b];
        for (std::size_t t = 0; t < T; ++t) batch.mean_ncf[t] += block_ncf[b][t];
    }
    for (auto& m : batch.mean_ncf) m /= static_cast<double>(n);

    if (options.recenter) {
        double ev_shift = book.discount[0] * (batch.mean_ncf[0] - be.ncf[0]);
        double y_shift = 0.0;
        for (std::size_t t = 1; t < T; ++t) y_shift += book.discount[t] * (batch.mean_ncf[t] - be.ncf[t]);
        for (std::size_t i = 0; i < n; ++i) {
            batch.ev[i] -= ev_shift;
            batch.y[i] -= y_shift;
        }
        batch.recentered = true;
    }
    return batch;
}

} // namespace

SimulationBatch build_batch(const Book& book, std::span<const AdjustmentFactorPath> paths,
                            const BatchOptions& options) {
    for (const auto& p : paths) check_calamity_load(book, p.calamity_offset);
    return assemble(book, paths.size(), options,
                    [&](std::size_t i) -> const AdjustmentFactorPath& { return paths[i]; });
}

SimulationBatch build_batch(const Book& book, const RiskModels& models, std::size_t n_sims,
                            std::uint64_t seed, const BatchOptions& options) {
    check_calamity_load(book, models.calamity_offset());
    thread_local AdjustmentFactorPath current;
    auto batch = assemble(book, n_sims, options, [&](std::size_t i) -> const AdjustmentFactorPath& {
        current = simulate_path(models, book.horizon, seed, i);
        return current;
    });
    batch.seed = seed;
    return batch;
}

} // namespace lsmc
