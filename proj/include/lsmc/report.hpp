#ifndef LSMC_REPORT_HPP
#define LSMC_REPORT_HPP

#include "lsmc/config.hpp"
#include "lsmc/lsmc_engine.hpp"
#include "lsmc/nested_oracle.hpp"
#include "lsmc/standard_formula.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lsmc {

inline constexpr int kReportSchemaVersion = 1;

enum class Command { scr_lsmc, scr_standard, funnel, life_expectancy, validate_nested, simulate_export };

Command parse_command(const std::string& name);
const char* to_string(Command command);

nlohmann::ordered_json to_json(const RegressionResult& r);
nlohmann::ordered_json to_json(const RiskMeasureReport& r);
nlohmann::ordered_json to_json(const StandardFormulaReport& r);
nlohmann::ordered_json to_json(const LifeExpectancyResult& r);
nlohmann::ordered_json conventions_json(const RunConfig& config);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);
void write_funnel_csv(const std::filesystem::path& path, const FunnelTable& table);
void write_batch_csv(const std::filesystem::path& path, const SimulationBatch& batch);
void write_distribution_csv(const std::filesystem::path& path, const std::vector<double>& samples);
// Fitted assumption change along each regressor with the others held at zero.
void write_regression_slices_csv(const std::filesystem::path& path, const SimulationBatch& batch,
                                 const RegressionResult& reg, std::size_t points = 41);

struct RunOutcome {
    std::vector<std::filesystem::path> files;
    std::vector<std::string> warnings;
    nlohmann::ordered_json report;
};

// Loads the data, runs one command and writes its files into config.out.
RunOutcome run(Command command, const RunConfig& config);

} // namespace lsmc

#endif // LSMC_REPORT_HPP
