#ifndef LSMC_SYNTHETIC_HPP
#define LSMC_SYNTHETIC_HPP

#include "lsmc/portfolio.hpp"

namespace lsmc {

struct SyntheticBook {
    Portfolio portfolio;
    AssumptionSet assumptions;
};

// Gompertz-Makeham best-estimate rate q(x) = 1 - exp(-(2e-4 + 2e-5 * 1.1^x)).
double makeham_rate(int age);

// Reference whole-life book used in tests and the bundled data set:
//  - 1,000 model points i = 0..999, entry age 30 + i mod 31;
//  - lives 20 + (37 i mod 181), sum assured 50,000 + 5,000 (13 i mod 31);
//  - remaining term min(60, 100 - age), horizon 60;
//  - lapse max(2%, 6% - 0.2% (t - 1)), discount 1.02^-t;
//  - level net premium = 1.2 x best-estimate equivalence premium, rounded to cents.
SyntheticBook synthetic_reference_book();

// Ten model points, entry ages 35..80 in steps of 5, ten-year term, horizon 10.
SyntheticBook toy_book();

// Two-year, mortality-free, lapse-only book whose year-two response is exactly
// linear in the first-year lapse factor.
SyntheticBook linear_lapse_book();

} // namespace lsmc

#endif // LSMC_SYNTHETIC_HPP
