#include "lsmc/portfolio.hpp"

#include "lsmc/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lsmc {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::internal: return "internal";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::coverage: return "assumption_coverage";
    case ErrorCode::calibration: return "calibration";
    case ErrorCode::collinearity: return "collinearity";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::invalid_argument: return "invalid_argument";
    }
    return "unknown";
}

MortalityTable MortalityTable::by_age(std::map<int, double> rates) {
    MortalityTable t;
    t.layout_ = Layout::by_age;
    t.by_age_ = std::move(rates);
    return t;
}

MortalityTable MortalityTable::by_age_and_year(std::map<std::pair<int, int>, double> rates) {
    MortalityTable t;
    t.layout_ = Layout::by_age_and_year;
    t.by_age_year_ = std::move(rates);
    return t;
}

MortalityTable MortalityTable::flat(std::vector<double> rates_by_year) {
    MortalityTable t;
    t.layout_ = Layout::flat;
    t.flat_ = std::move(rates_by_year);
    return t;
}

std::optional<double> MortalityTable::rate(int attained_age, int year) const {
    switch (layout_) {
    case Layout::by_age: {
        auto it = by_age_.find(attained_age);
        if (it == by_age_.end()) return std::nullopt;
        return it->second;
    }
    case Layout::by_age_and_year: {
        auto it = by_age_year_.find({attained_age, year});
        if (it == by_age_year_.end()) return std::nullopt;
        return it->second;
    }
    case Layout::flat:
        if (year < 1 || year > static_cast<int>(flat_.size())) return std::nullopt;
        return flat_[static_cast<std::size_t>(year - 1)];
    }
    return std::nullopt;
}

std::vector<double> MortalityTable::all_rates() const {
    std::vector<double> out;
    for (const auto& [age, q] : by_age_) out.push_back(q);
    for (const auto& [key, q] : by_age_year_) out.push_back(q);
    out.insert(out.end(), flat_.begin(), flat_.end());
    return out;
}

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

} // namespace

std::vector<std::string> validate(const AssumptionSet& a) {
    if (a.horizon < 1) {
        throw Error(ErrorCode::invalid_argument, "horizon must be at least one year");
    }
    const auto T = static_cast<std::size_t>(a.horizon);
    if (a.lapse.size() != T) {
        throw Error(ErrorCode::invalid_argument,
                    "lapse curve has " + std::to_string(a.lapse.size()) + " years, horizon is " +
                        std::to_string(T));
    }
    if (a.discount.size() != T) {
        throw Error(ErrorCode::invalid_argument,
                    "discount curve has " + std::to_string(a.discount.size()) +
                        " years, horizon is " + std::to_string(T));
    }
    for (std::size_t t = 0; t < T; ++t) {
        if (!is_probability(a.lapse[t])) {
            throw Error(ErrorCode::invalid_argument,
                        "lapse rate in year " + std::to_string(t + 1) + " is not a probability");
        }
        if (!(a.discount[t] > 0.0)) {
            throw Error(ErrorCode::invalid_argument,
                        "discount factor in year " + std::to_string(t + 1) + " must be positive");
        }
    }
    for (double q : a.mortality.all_rates()) {
        if (!is_probability(q)) {
            throw Error(ErrorCode::invalid_argument, "mortality table contains a rate outside [0, 1]");
        }
    }

    std::vector<std::string> warnings;
    for (std::size_t t = 1; t < T; ++t) {
        if (a.discount[t] > a.discount[t - 1]) {
            warnings.push_back("discount factors increase from year " + std::to_string(t) +
                               " to year " + std::to_string(t + 1) + " (negative forward rate)");
            break;
        }
    }
    return warnings;
}

void validate(const Portfolio& portfolio, int horizon) {
    for (const auto& mp : portfolio) {
        if (!(mp.lives >= 0.0)) {
            throw Error(ErrorCode::invalid_argument, "model point " + mp.id + ": lives must be >= 0");
        }
        if (!(mp.sum_assured >= 0.0)) {
            throw Error(ErrorCode::invalid_argument,
                        "model point " + mp.id + ": sum_assured must be >= 0");
        }
        if (!std::isfinite(mp.annual_net_premium)) {
            throw Error(ErrorCode::invalid_argument,
                        "model point " + mp.id + ": premium is not finite");
        }
        if (mp.remaining_term < 1 || mp.remaining_term > horizon) {
            throw Error(ErrorCode::invalid_argument,
                        "model point " + mp.id + ": remaining_term " +
                            std::to_string(mp.remaining_term) + " outside [1, " +
                            std::to_string(horizon) + "]");
        }
    }
}

CashflowVector::CashflowVector(std::size_t horizon)
    : premium(horizon, 0.0), death(horizon, 0.0), ncf(horizon, 0.0),
      lives_in_force(horizon, 0.0), lives_died(horizon, 0.0), lives_lapsed(horizon, 0.0) {}

Book compile(const Portfolio& portfolio, const AssumptionSet& assumptions) {
    Book book;
    book.warnings = validate(assumptions);
    validate(portfolio, assumptions.horizon);

    book.horizon = assumptions.horizon;
    book.lapse = assumptions.lapse;
    book.discount = assumptions.discount;
    const auto T = static_cast<std::size_t>(assumptions.horizon);

    std::map<int, std::size_t> index_by_age;
    for (const auto& mp : portfolio) {
        auto [it, inserted] = index_by_age.try_emplace(mp.age, book.cohorts.size());
        if (inserted) {
            Cohort c;
            c.entry_age = mp.age;
            c.base_rate.assign(T, 0.0);
            c.lives.assign(T, 0.0);
            c.premium.assign(T, 0.0);
            c.sum_assured.assign(T, 0.0);
            book.cohorts.push_back(std::move(c));
        }
        Cohort& c = book.cohorts[it->second];
        for (int year = 1; year <= mp.remaining_term; ++year) {
            auto q = assumptions.mortality.rate(mp.age + year - 1, year);
            if (!q) {
                throw Error(ErrorCode::coverage,
                            "no mortality rate for model point " + mp.id + " in year " +
                                std::to_string(year) + " (attained age " +
                                std::to_string(mp.age + year - 1) + ")");
            }
            const auto t = static_cast<std::size_t>(year - 1);
            if (year > c.years) c.base_rate[t] = *q;
            c.lives[t] += mp.lives;
            c.premium[t] += mp.lives * mp.annual_net_premium;
            c.sum_assured[t] += mp.lives * mp.sum_assured;
        }
        c.years = std::max(c.years, mp.remaining_term);
    }

    for (const auto& c : book.cohorts) {
        for (int t = 0; t < c.years; ++t) {
            const double total = c.base_rate[static_cast<std::size_t>(t)] +
                                 book.lapse[static_cast<std::size_t>(t)];
            if (total > 1.0) {
                throw Error(ErrorCode::invalid_argument,
                            "best-estimate decrements exceed 1 for entry age " +
                                std::to_string(c.entry_age) + " in year " + std::to_string(t + 1));
            }
        }
    }
    return book;
}

namespace {

inline double at_or(std::span<const double> v, std::size_t t, double fallback) {
    return v.empty() ? fallback : v[t];
}

} // namespace

ProjectionStats project_years(const Book& book, const DecrementAdjustment& adj, int first_year,
                              int last_year, std::span<double> in_force, CashflowVector& out) {
    ProjectionStats stats;
    const bool scaled = !adj.mortality_scale.empty();
    const bool excess = !adj.mortality_excess.empty();
    const bool lapse_scaled = !adj.lapse_scale.empty();

    for (int year = first_year; year < last_year; ++year) {
        const auto t = static_cast<std::size_t>(year);
        const double m_scale = at_or(adj.mortality_scale, t, 1.0);
        const double m_excess = at_or(adj.mortality_excess, t, 0.0);
        const double w_be = book.lapse[t];
        const double w_scaled = lapse_scaled ? adj.lapse_scale[t] * w_be : w_be;
        bool clipped = false;

        double premium = 0.0, death = 0.0, lives = 0.0, died = 0.0, lapsed = 0.0;
        for (std::size_t c = 0; c < book.cohorts.size(); ++c) {
            const Cohort& cohort = book.cohorts[c];
            if (year >= cohort.years) continue;
            double q = cohort.base_rate[t];
            if (scaled) q = m_scale * (q - adj.mortality_offset);
            if (excess) q += m_excess;
            double w = w_scaled;
            const double total = q + w;
            if (total > 1.0) {
                q /= total;
                w /= total;
                clipped = true;
            }
            const double v = in_force[c];
            premium += v * cohort.premium[t];
            death += v * q * cohort.sum_assured[t];
            lives += v * cohort.lives[t];
            died += v * q * cohort.lives[t];
            lapsed += v * w * cohort.lives[t];
            in_force[c] = v * (1.0 - q - w);
        }
        out.premium[t] += premium;
        out.death[t] += death;
        out.ncf[t] = out.premium[t] - out.death[t];
        out.lives_in_force[t] += lives;
        out.lives_died[t] += died;
        out.lives_lapsed[t] += lapsed;
        if (clipped) ++stats.clipped_years;
    }
    return stats;
}

CashflowVector project(const Book& book, const DecrementAdjustment& adjustment,
                       ProjectionStats* stats) {
    CashflowVector out(static_cast<std::size_t>(book.horizon));
    std::vector<double> in_force(book.cohorts.size(), adjustment.initial_volume);
    auto s = project_years(book, adjustment, 0, book.horizon, in_force, out);
    if (stats) *stats = s;
    return out;
}

CashflowVector project_best_estimate(const Book& book) {
    return project(book, DecrementAdjustment{});
}

CashflowVector project_best_estimate(const Portfolio& portfolio, const AssumptionSet& assumptions) {
    return project_best_estimate(compile(portfolio, assumptions));
}

double present_value(const CashflowVector& cf, std::span<const double> discount) {
    if (cf.horizon() != discount.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "cash flow horizon " + std::to_string(cf.horizon()) +
                        " does not match discount horizon " + std::to_string(discount.size()));
    }
    double pv = 0.0;
    for (std::size_t t = 0; t < discount.size(); ++t) pv += discount[t] * cf.ncf[t];
    return pv;
}

double present_value(const CashflowVector& cf, const AssumptionSet& assumptions) {
    return present_value(cf, assumptions.discount);
}

} // namespace lsmc
