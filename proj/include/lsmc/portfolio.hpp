#ifndef LSMC_PORTFOLIO_HPP
#define LSMC_PORTFOLIO_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lsmc {

// Throughout the library, projection year t = 1..T is stored at index t - 1.

struct ModelPoint {
    std::string id;
    int age = 0;                   // age at t = 0
    double lives = 0.0;            // cohort exposure count
    double sum_assured = 0.0;      // per life
    double annual_net_premium = 0.0; // per life per year, expenses already deducted
    int remaining_term = 1;        // years
};

using Portfolio = std::vector<ModelPoint>;

// Best-estimate mortality rates. Three layouts are supported:
//  - by attained age, constant across projection years;
//  - by attained age and projection year;
//  - one aggregate rate per projection year, independent of age.
class MortalityTable {
public:
    enum class Layout { by_age, by_age_and_year, flat };

    static MortalityTable by_age(std::map<int, double> rates);
    static MortalityTable by_age_and_year(std::map<std::pair<int, int>, double> rates);
    static MortalityTable flat(std::vector<double> rates_by_year);

    MortalityTable() = default;

    Layout layout() const { return layout_; }

    // Rate for a life aged `attained_age` during projection year `year` (1-based).
    std::optional<double> rate(int attained_age, int year) const;

    // Every stored rate, for validation.
    std::vector<double> all_rates() const;

private:
    Layout layout_ = Layout::by_age;
    std::map<int, double> by_age_;
    std::map<std::pair<int, int>, double> by_age_year_;
    std::vector<double> flat_;
};

struct AssumptionSet {
    int horizon = 0;
    MortalityTable mortality;
    std::vector<double> lapse;    // w_be, one per year
    std::vector<double> discount; // delta, one per year
};

// Checks shapes and probability ranges; throws on hard violations and returns
// soft warnings (e.g. a discount curve that is not non-increasing).
std::vector<std::string> validate(const AssumptionSet& assumptions);
void validate(const Portfolio& portfolio, int horizon);

struct CashflowVector {
    std::vector<double> premium;
    std::vector<double> death;
    std::vector<double> ncf;            // premium - death
    std::vector<double> lives_in_force; // start-of-year in-force lives
    std::vector<double> lives_died;
    std::vector<double> lives_lapsed;

    explicit CashflowVector(std::size_t horizon = 0);
    std::size_t horizon() const { return ncf.size(); }
};

// Model points grouped by entry age. Points of equal entry age share the same
// decrement path, so their in-force ratio is common and only the exposures
// differ; exposures are pre-summed per year over the points still in term.
struct Cohort {
    int entry_age = 0;
    int years = 0;                   // longest remaining term in the group
    std::vector<double> base_rate;   // q_be by projection year
    std::vector<double> lives;       // sum of lives still in term
    std::vector<double> premium;     // sum of lives * annual_net_premium
    std::vector<double> sum_assured; // sum of lives * sum_assured
};

struct Book {
    int horizon = 0;
    std::vector<Cohort> cohorts;
    std::vector<double> lapse;
    std::vector<double> discount;
    std::vector<std::string> warnings;
};

// Validates inputs and groups the portfolio into cohorts. Throws a coverage
// error naming the model point and year when a mortality rate is missing.
Book compile(const Portfolio& portfolio, const AssumptionSet& assumptions);

// Per-year adjustment of the best-estimate decrements:
//   q* = mortality_scale[t] * (q_be - mortality_offset) + mortality_excess[t]
//   w* = lapse_scale[t] * w_be
// The identity adjustment reproduces best-estimate rates exactly.
struct DecrementAdjustment {
    std::span<const double> mortality_scale;
    std::span<const double> mortality_excess;
    std::span<const double> lapse_scale;
    double mortality_offset = 0.0;
    double initial_volume = 1.0;
};

struct ProjectionStats {
    std::size_t clipped_years = 0; // years in which some cohort had q* + w* > 1
};

// Projects years [first_year, last_year) (0-based) starting from per-cohort
// in-force ratios `in_force`, which are advanced in place. Cash flows and life
// counts are accumulated into `out`.
ProjectionStats project_years(const Book& book, const DecrementAdjustment& adjustment,
                              int first_year, int last_year, std::span<double> in_force,
                              CashflowVector& out);

// Full-horizon projection under an adjustment.
CashflowVector project(const Book& book, const DecrementAdjustment& adjustment,
                       ProjectionStats* stats = nullptr);

CashflowVector project_best_estimate(const Book& book);
CashflowVector project_best_estimate(const Portfolio& portfolio, const AssumptionSet& assumptions);

double present_value(const CashflowVector& cf, std::span<const double> discount);
double present_value(const CashflowVector& cf, const AssumptionSet& assumptions);

} // namespace lsmc

#endif // LSMC_PORTFOLIO_HPP
