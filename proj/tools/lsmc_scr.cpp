#include "lsmc/config.hpp"
#include "lsmc/error.hpp"
#include "lsmc/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  configuration error\n"
    "  3  file I/O error\n"
    "  4  mortality table does not cover a model point\n"
    "  5  calibration anchors have no solution\n"
    "  6  collinear regressors\n"
    "  7  nested-simulation time budget exceeded\n"
    "  8  invalid argument\n"
    "\n"
    "Precedence: built-in defaults < config file < LSMC_OUT_DIR (output directory only) < flags.\n"
    "Errors are printed to stderr as: error <code-name>: <message>\n";

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-year life SCR via least-squares Monte Carlo and the standard formula"};
    app.footer(kExitCodes);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> sims;
    std::optional<double> level;
    std::optional<unsigned> threads;
    std::optional<std::string> out;
    std::optional<std::string> component;
    std::optional<std::string> basis;
    std::optional<std::string> regressors;

    app.add_option("--config,-c", config_path, "INI configuration file")->required();
    app.add_option("--seed", seed, "random seed");
    app.add_option("--sims", sims, "number of simulated paths (outer paths for LSMC)");
    app.add_option("--level", level, "confidence level of the SCR, e.g. 0.995");
    app.add_option("--threads", threads, "worker thread bound; results do not depend on it");
    app.add_option("--out", out, "output directory");

    const char* names[] = {"scr-lsmc", "scr-standard", "funnel", "life-expectancy", "validate-nested",
                           "simulate-export"};
    const char* help[] = {"LSMC SCR with regression diagnostics and the standard formula",
                          "standard-formula SCR from deterministic stresses",
                          "per-year quantile envelope of a risk factor",
                          "life-expectancy regression on first-year mortality experience",
                          "LSMC SCR against brute-force nested simulation",
                          "export the regressor / response scatter"};
    for (int i = 0; i < 6; ++i) {
        auto* sub = app.add_subcommand(names[i], help[i]);
        if (std::string(names[i]) == "funnel") {
            sub->add_option("--component", component, "mort | lapse | trend");
        }
        if (std::string(names[i]) == "scr-lsmc" || std::string(names[i]) == "validate-nested" ||
            std::string(names[i]) == "simulate-export") {
            sub->add_option("--basis", basis, "linear | linear_plus_quadratic");
            sub->add_option("--regressors", regressors, "observed | split | latent");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(lsmc::ErrorCode::config);
    }

    try {
        const auto command = lsmc::parse_command(app.get_subcommands().front()->get_name());
        lsmc::RunConfig config = lsmc::load_config(config_path);
        if (const char* env = std::getenv("LSMC_OUT_DIR"); env && *env) config.out = env;
        if (seed) config.seed = *seed;
        if (sims) config.sims = *sims;
        if (level) config.level = *level;
        if (threads) config.threads = *threads;
        if (out) config.out = *out;
        if (component) config.funnel_component = *component;
        if (basis) config.regression_basis = *basis;
        if (regressors) config.regressors = *regressors;

        const auto outcome = lsmc::run(command, config);
        for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << '\n';
        for (const auto& f : outcome.files) std::cout << f.string() << '\n';
        return 0;
    } catch (const lsmc::Error& e) {
        std::cerr << "error " << lsmc::to_string(e.code()) << ": " << e.what() << '\n';
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error internal: " << e.what() << '\n';
        return static_cast<int>(lsmc::ErrorCode::internal);
    }
}
