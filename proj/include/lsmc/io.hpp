#ifndef LSMC_IO_HPP
#define LSMC_IO_HPP

#include "lsmc/portfolio.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace lsmc {

// Portfolio CSV: id,age,lives,sum_assured,annual_net_premium,remaining_term
Portfolio read_portfolio_csv(const std::filesystem::path& path);
// Mortality CSV: age,year,q | age,q (constant across years) | year,q (flat aggregate)
MortalityTable read_mortality_csv(const std::filesystem::path& path);
// Lapse CSV: year,w for years 1..T
std::vector<double> read_lapse_csv(const std::filesystem::path& path);
// Discount CSV: t,delta for t = 1..T
std::vector<double> read_discount_csv(const std::filesystem::path& path);

// Horizon is taken from the discount curve.
AssumptionSet read_assumptions(const std::filesystem::path& mortality,
                               const std::filesystem::path& lapse,
                               const std::filesystem::path& discount);

// Shortest round-trip decimal; plain notation for ordinary magnitudes.
std::string format_number(double value);

// RFC-4180 writer: CRLF line endings, fields quoted when they need it.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& field(const std::string& text);
    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    void end_row();

    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
    bool first_ = true;
};

void write_portfolio_csv(const std::filesystem::path& path, const Portfolio& portfolio);
void write_mortality_csv(const std::filesystem::path& path, const MortalityTable& table,
                         int min_age, int max_age);
void write_lapse_csv(const std::filesystem::path& path, const std::vector<double>& lapse);
void write_discount_csv(const std::filesystem::path& path, const std::vector<double>& discount);

} // namespace lsmc

#endif // LSMC_IO_HPP
