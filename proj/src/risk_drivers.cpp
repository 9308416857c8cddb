#include "lsmc/risk_drivers.hpp"

#include "lsmc/error.hpp"
#include "lsmc/parallel.hpp"
#include "lsmc/random.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace lsmc {

double CalamityModel::quantile(double p) const {
    if (!(p >= 0.0 && p < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "Pareto quantile level must lie in [0, 1)");
    }
    return xm * std::pow(1.0 - p, -1.0 / alpha);
}

double AdjustmentFactorPath::af_mort(std::size_t t, double q_be) const {
    return (trend[t] * basis * (q_be - calamity_offset) + calamity[t]) / q_be;
}

AdjustmentFactorPath AdjustmentFactorPath::unit(std::size_t horizon) {
    AdjustmentFactorPath p;
    p.trend.assign(horizon, 1.0);
    p.calamity.assign(horizon, 0.0);
    p.af_lapse.assign(horizon, 1.0);
    return p;
}

CalamityModel calibrate_calamity(double q_a, double x_a, double q_b, double x_b) {
    if (!(0.0 < q_a && q_a < q_b && q_b < 1.0)) {
        throw Error(ErrorCode::calibration, "calamity anchors need 0 < q_a < q_b < 1");
    }
    if (!(0.0 < x_a && x_a < x_b)) {
        throw Error(ErrorCode::calibration, "calamity anchors need 0 < x_a < x_b");
    }
    CalamityModel m;
    m.alpha = std::log((1.0 - q_a) / (1.0 - q_b)) / std::log(x_b / x_a);
    if (!(m.alpha > 1.0 + 1e-12)) {
        throw Error(ErrorCode::calibration,
                    "calamity anchors give Pareto shape " + std::to_string(m.alpha) +
                        " <= 1; the mean excess mortality would not exist");
    }
    m.xm = x_a * std::pow(1.0 - q_a, 1.0 / m.alpha);
    return m;
}

TrendModel calibrate_trend(double target_quantile, double target_factor, int at_year) {
    if (!(target_quantile > 0.5 && target_quantile < 1.0)) {
        throw Error(ErrorCode::calibration, "trend target quantile must lie in (0.5, 1)");
    }
    if (!(target_factor > 1.0)) {
        throw Error(ErrorCode::calibration, "trend target factor must exceed 1");
    }
    if (at_year < 1) {
        throw Error(ErrorCode::calibration, "trend anchor year must be at least 1");
    }
    // exp(sigma z sqrt(t) - sigma^2 t / 2) = F  <=>  (t/2) sigma^2 - z sqrt(t) sigma + ln F = 0
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), target_quantile);
    const double t = at_year;
    const double b = z * std::sqrt(t);
    const double c = std::log(target_factor);
    const double disc = b * b - 2.0 * t * c;
    if (disc < 0.0) {
        throw Error(ErrorCode::calibration,
                    "trend target unreachable: the mean-one trend's quantile at year " +
                        std::to_string(at_year) + " never exceeds " +
                        std::to_string(std::exp(0.5 * z * z)));
    }
    // smaller root, written to avoid cancellation
    return TrendModel{2.0 * c / (b + std::sqrt(disc))};
}

BasisRiskModel calibrate_basis(double share_be, double share_adverse, double multiplier) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(share_be) || !in_unit(share_adverse)) {
        throw Error(ErrorCode::calibration, "smoker shares must lie in [0, 1]");
    }
    if (share_adverse < share_be) {
        throw Error(ErrorCode::calibration, "adverse smoker share must not be below the best estimate");
    }
    if (!(multiplier > 0.0)) {
        throw Error(ErrorCode::calibration, "smoker multiplier must be positive");
    }
    // q_p(a) = a m q_n + (1 - a) q_n; q_n cancels in the ratio
    const double adverse = share_adverse * multiplier + 1.0 - share_adverse;
    const double be = share_be * multiplier + 1.0 - share_be;
    return BasisRiskModel{adverse / be - 1.0};
}

namespace {

void mean_one_gbm(Substream& rng, double sigma, std::vector<double>& out) {
    double w = 0.0;
    for (std::size_t t = 0; t < out.size(); ++t) {
        w += rng.normal();
        out[t] = std::exp(sigma * w - 0.5 * sigma * sigma * static_cast<double>(t + 1));
    }
}

double lognormal_mean_one(Substream& rng, double sd) {
    const double s2 = std::log1p(sd * sd);
    return std::exp(std::sqrt(s2) * rng.normal() - 0.5 * s2);
}

} // namespace

AdjustmentFactorPath simulate_path(const RiskModels& models, int horizon, std::uint64_t seed,
                                   std::uint64_t index) {
    const auto T = static_cast<std::size_t>(horizon);
    AdjustmentFactorPath p;
    p.trend.resize(T);
    p.af_lapse.resize(T);
    p.calamity.assign(T, 0.0);

    Substream trend_rng(seed, index, StreamTag::trend);
    mean_one_gbm(trend_rng, models.trend.sigma, p.trend);

    Substream basis_rng(seed, index, StreamTag::basis);
    p.basis = lognormal_mean_one(basis_rng, models.basis.sigma);

    Substream lapse_rng(seed, index, StreamTag::lapse);
    mean_one_gbm(lapse_rng, models.lapse.sigma, p.af_lapse);

    if (models.calamity) {
        const CalamityModel& cal = *models.calamity;
        p.calamity_offset = cal.mean_load();
        if (cal.mode == CalamityModel::Mode::mean_only) {
            std::fill(p.calamity.begin(), p.calamity.end(), p.calamity_offset);
        } else {
            Substream cal_rng(seed, index, StreamTag::calamity);
            for (auto& c : p.calamity) c = cal.xm * std::pow(cal_rng.uniform(), -1.0 / cal.alpha);
        }
    }
    return p;
}

std::vector<AdjustmentFactorPath> simulate_paths(const RiskModels& models, int horizon,
                                                 std::size_t n_sims, std::uint64_t seed,
                                                 unsigned threads) {
    if (n_sims < 1) throw Error(ErrorCode::invalid_argument, "n_sims must be at least 1");
    std::vector<AdjustmentFactorPath> paths(n_sims);
    parallel_for(n_sims, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) paths[i] = simulate_path(models, horizon, seed, i);
    });
    return paths;
}

FunnelComponent parse_funnel_component(const std::string& name) {
    if (name == "mort") return FunnelComponent::mort;
    if (name == "lapse") return FunnelComponent::lapse;
    if (name == "trend") return FunnelComponent::trend;
    throw Error(ErrorCode::config, "unknown funnel component '" + name + "' (mort, lapse, trend)");
}

const char* to_string(FunnelComponent component) {
    switch (component) {
    case FunnelComponent::mort: return "mort";
    case FunnelComponent::lapse: return "lapse";
    case FunnelComponent::trend: return "trend";
    }
    return "?";
}

double funnel_quantile(std::span<const double> sorted, double p) {
    const std::size_t n = sorted.size();
    const double h = static_cast<double>(n) * p;
    const double fl = std::floor(h);
    if (h == fl) {
        const auto k = static_cast<std::size_t>(fl);
        if (k == 0) return sorted.front();
        if (k >= n) return sorted.back();
        return 0.5 * (sorted[k - 1] + sorted[k]);
    }
    const auto k = static_cast<std::size_t>(std::ceil(h));
    return sorted[std::min(k, n) - 1];
}

namespace {

double component_value(const AdjustmentFactorPath& p, FunnelComponent c, std::size_t t) {
    switch (c) {
    case FunnelComponent::mort: return p.base_factor(t);
    case FunnelComponent::lapse: return p.af_lapse[t];
    case FunnelComponent::trend: return p.trend[t];
    }
    return 0.0;
}

void check_quantiles(const std::vector<double>& quantiles) {
    for (double q : quantiles) {
        if (!(q > 0.0 && q < 1.0)) {
            throw Error(ErrorCode::invalid_argument, "funnel quantiles must lie in (0, 1)");
        }
    }
}

// values is year-major: values[t * n + i]
FunnelTable tabulate(std::vector<double>& values, std::size_t n, std::size_t T,
                     FunnelComponent component, const std::vector<double>& quantiles) {
    FunnelTable table;
    table.component = component;
    table.quantiles = quantiles;
    table.rows.resize(T);
    table.mean.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        std::span<double> column(values.data() + t * n, n);
        double sum = 0.0;
        for (double v : column) sum += v;
        table.mean[t] = sum / static_cast<double>(n);
        std::sort(column.begin(), column.end());
        for (double q : quantiles) table.rows[t].push_back(funnel_quantile(column, q));
    }
    return table;
}

} // namespace

FunnelTable funnel(std::span<const AdjustmentFactorPath> paths, FunnelComponent component,
                   const std::vector<double>& quantiles) {
    if (paths.empty()) throw Error(ErrorCode::invalid_argument, "funnel needs at least one path");
    check_quantiles(quantiles);
    const std::size_t n = paths.size();
    const std::size_t T = paths.front().horizon();
    std::vector<double> values(n * T);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < T; ++t) values[t * n + i] = component_value(paths[i], component, t);
    }
    return tabulate(values, n, T, component, quantiles);
}

FunnelTable funnel(const RiskModels& models, int horizon, std::size_t n_sims, std::uint64_t seed,
                   FunnelComponent component, const std::vector<double>& quantiles,
                   unsigned threads) {
    if (n_sims < 1) throw Error(ErrorCode::invalid_argument, "funnel needs at least one path");
    check_quantiles(quantiles);
    const auto T = static_cast<std::size_t>(horizon);
    std::vector<double> values(n_sims * T);
    parallel_for(n_sims, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto p = simulate_path(models, horizon, seed, i);
            for (std::size_t t = 0; t < T; ++t) values[t * n_sims + i] = component_value(p, component, t);
        }
    });
    return tabulate(values, n_sims, T, component, quantiles);
}

} // namespace lsmc
