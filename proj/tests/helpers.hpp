#ifndef LSMC_TEST_HELPERS_HPP
#define LSMC_TEST_HELPERS_HPP

#include "lsmc/portfolio.hpp"

#include <vector>

namespace lsmc::test {

// Single-model-point book with flat mortality and lapse.
inline AssumptionSet flat_assumptions(int horizon, double q, double w, double discount = 1.0) {
    AssumptionSet a;
    a.horizon = horizon;
    a.mortality = MortalityTable::flat(std::vector<double>(static_cast<std::size_t>(horizon), q));
    a.lapse.assign(static_cast<std::size_t>(horizon), w);
    a.discount.assign(static_cast<std::size_t>(horizon), discount);
    return a;
}

inline ModelPoint point(double lives, double sum_assured, double premium, int term, int age = 40) {
    return ModelPoint{"P", age, lives, sum_assured, premium, term};
}

} // namespace lsmc::test

#endif
