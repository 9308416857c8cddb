#include "lsmc/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace lsmc {

double makeham_rate(int age) {
    return 1.0 - std::exp(-(2e-4 + 2e-5 * std::pow(1.1, age)));
}

namespace {

MortalityTable makeham_table(int min_age, int max_age) {
    std::map<int, double> rates;
    for (int age = min_age; age <= max_age; ++age) rates[age] = makeham_rate(age);
    return MortalityTable::by_age(std::move(rates));
}

std::vector<double> discount_curve(int horizon, double rate) {
    std::vector<double> d(static_cast<std::size_t>(horizon));
    for (int t = 1; t <= horizon; ++t) d[static_cast<std::size_t>(t - 1)] = std::pow(1.0 + rate, -t);
    return d;
}

// Level premium per unit of sum assured that equates the discounted premiums
// and expected death payments on the best-estimate basis, times the loading.
double loaded_premium(int age, int term, double sum_assured, const AssumptionSet& a, double loading) {
    double survival = 1.0, annuity = 0.0, benefit = 0.0;
    for (int t = 1; t <= term; ++t) {
        const auto i = static_cast<std::size_t>(t - 1);
        const double q = *a.mortality.rate(age + t - 1, t);
        annuity += a.discount[i] * survival;
        benefit += a.discount[i] * survival * q;
        survival *= 1.0 - q - a.lapse[i];
    }
    const double premium = loading * sum_assured * benefit / annuity;
    return std::round(premium * 100.0) / 100.0;
}

} // namespace

SyntheticBook synthetic_reference_book() {
    SyntheticBook b;
    auto& a = b.assumptions;
    a.horizon = 60;
    a.mortality = makeham_table(30, 110);
    a.discount = discount_curve(60, 0.02);
    a.lapse.resize(60);
    for (int t = 1; t <= 60; ++t) {
        a.lapse[static_cast<std::size_t>(t - 1)] = std::max(0.02, 0.06 - 0.002 * (t - 1));
    }
    for (int i = 0; i < 1000; ++i) {
        ModelPoint mp;
        mp.id = "MP" + std::to_string(10000 + i).substr(1);
        mp.age = 30 + i % 31;
        mp.lives = 20 + (37 * i) % 181;
        mp.sum_assured = 50000.0 + 5000.0 * ((13 * i) % 31);
        mp.remaining_term = std::min(60, 100 - mp.age);
        mp.annual_net_premium = loaded_premium(mp.age, mp.remaining_term, mp.sum_assured, a, 1.2);
        b.portfolio.push_back(mp);
    }
    return b;
}

SyntheticBook toy_book() {
    SyntheticBook b;
    auto& a = b.assumptions;
    a.horizon = 10;
    a.mortality = makeham_table(30, 100);
    a.discount = discount_curve(10, 0.02);
    a.lapse.assign(10, 0.05);
    for (int i = 0; i < 10; ++i) {
        ModelPoint mp;
        mp.id = "TOY" + std::to_string(i);
        mp.age = 35 + 5 * i;
        mp.lives = 1000.0;
        mp.sum_assured = 100000.0;
        mp.remaining_term = 10;
        mp.annual_net_premium = loaded_premium(mp.age, mp.remaining_term, mp.sum_assured, a, 1.2);
        b.portfolio.push_back(mp);
    }
    return b;
}

SyntheticBook linear_lapse_book() {
    SyntheticBook b;
    auto& a = b.assumptions;
    a.horizon = 2;
    a.mortality = MortalityTable::flat({0.0, 0.0});
    a.discount = discount_curve(2, 0.02);
    a.lapse = {0.1, 0.1};
    b.portfolio.push_back(ModelPoint{"LIN", 40, 1000.0, 0.0, 100.0, 2});
    return b;
}

} // namespace lsmc
