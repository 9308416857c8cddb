#include "lsmc/report.hpp"

#include "lsmc/error.hpp"
#include "lsmc/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace lsmc {

using nlohmann::ordered_json;

Command parse_command(const std::string& name) {
    if (name == "scr-lsmc") return Command::scr_lsmc;
    if (name == "scr-standard") return Command::scr_standard;
    if (name == "funnel") return Command::funnel;
    if (name == "life-expectancy") return Command::life_expectancy;
    if (name == "validate-nested") return Command::validate_nested;
    if (name == "simulate-export") return Command::simulate_export;
    throw Error(ErrorCode::config, "unknown command '" + name + "'");
}

const char* to_string(Command command) {
    switch (command) {
    case Command::scr_lsmc: return "scr-lsmc";
    case Command::scr_standard: return "scr-standard";
    case Command::funnel: return "funnel";
    case Command::life_expectancy: return "life-expectancy";
    case Command::validate_nested: return "validate-nested";
    case Command::simulate_export: return "simulate-export";
    }
    return "?";
}

ordered_json to_json(const RegressionResult& r) {
    ordered_json terms = ordered_json::array();
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
        terms.push_back({{"term", r.terms[i]},
                         {"coefficient", r.coefficients[i]},
                         {"standard_error", r.standard_errors[i]}});
    }
    return {{"basis", to_string(r.basis)},
            {"intercept", false},
            {"regressors", r.regressors},
            {"terms", terms},
            {"r_squared", r.r_squared},
            {"r_squared_centered", r.r_squared_centered},
            {"n", r.n},
            {"condition_estimate", r.condition_estimate},
            {"standard_errors", r.se_kind == StdErrorKind::classical ? "classical" : "hc0"}};
}

ordered_json to_json(const RiskMeasureReport& r) {
    ordered_json table = ordered_json::array();
    for (const auto& [p, q] : r.quantile_table) table.push_back({{"p", p}, {"quantile", q}});
    return {{"level", r.level},
            {"n", r.n},
            {"scr", r.scr},
            {"quantile_raw", r.quantile},
            {"tvar", r.tvar},
            {"quantile_standard_error", r.quantile_standard_error},
            {"low_sample_warning", r.low_sample_warning},
            {"quantiles", table}};
}

ordered_json to_json(const StandardFormulaReport& r) {
    ordered_json scenarios = ordered_json::array();
    for (const auto& s : r.scenarios) {
        scenarios.push_back({{"scenario", to_string(s.scenario.kind)},
                             {"magnitude", s.scenario.magnitude},
                             {"pvofp", s.pvofp},
                             {"sub_scr", s.sub_scr}});
    }
    return {{"pvofp_det", r.pvofp_det},
            {"scenarios", scenarios},
            {"sub_scrs",
             {{"lapse", r.sub_scrs.lapse},
              {"mortality", r.sub_scrs.mortality},
              {"catastrophe", r.sub_scrs.catastrophe}}},
            {"correlation", r.correlation},
            {"scr", r.scr}};
}

ordered_json to_json(const LifeExpectancyResult& r) {
    ordered_json j = {{"regressor", r.regressor},
                      {"n", r.n},
                      {"e_be", r.e_be},
                      {"alpha", r.alpha_le},
                      {"alpha_standard_error", r.alpha_se},
                      {"beta", r.beta_le},
                      {"beta_standard_error", r.beta_se},
                      {"r_squared", r.r_squared},
                      {"quantile_level", r.quantile_level},
                      {"fitted_quantile", r.fitted_quantile},
                      {"change_at_quantile", r.fitted_quantile - r.e_be}};
    if (r.stress_le) j["stress_le"] = *r.stress_le;
    if (r.stress_probability) j["stress_probability"] = *r.stress_probability;
    return j;
}

ordered_json conventions_json(const RunConfig& c) {
    return {
        {"sign", "own-funds change = discounted NCF deviation from best estimate; positive = gain"},
        {"scr", "-(lower order statistic x_(k)), k = max(1, floor(n (1 - level))), floored at 0"},
        {"tvar", "-mean of samples at or below the scr quantile"},
        {"funnel_quantile", "midpoint of order statistics when n p is integral, else x_(ceil(n p))"},
        {"r_squared", "1 - RSS / sum(y^2) for the no-intercept fit; centred variant reported alongside"},
        {"standard_errors", c.robust_se ? "hc0" : "classical"},
        {"centering", c.recenter ? "batch sample mean" : "best-estimate projection"},
        {"decrement_timing", "premiums and death claims on start-of-year in-force; no surrender value"},
        {"random_numbers", "Philox4x32-10 substreams keyed by (seed, path, driver, inner index)"},
    };
}

void write_json(const std::filesystem::path& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out << j.dump(2) << '\n';
}

void write_funnel_csv(const std::filesystem::path& path, const FunnelTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    CsvWriter w(out);
    w.field("year").field("mean");
    for (double q : table.quantiles) w.field("q" + format_number(q));
    w.end_row();
    for (std::size_t t = 0; t < table.rows.size(); ++t) {
        w.field(static_cast<long long>(t + 1)).field(table.mean[t]);
        for (double v : table.rows[t]) w.field(v);
        w.end_row();
    }
}

void write_batch_csv(const std::filesystem::path& path, const SimulationBatch& batch) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    CsvWriter w(out);
    w.field("path");
    for (const auto& name : batch.regressor_names) w.field(name);
    w.field("ev").field("y");
    w.end_row();
    for (std::size_t i = 0; i < batch.n_sims; ++i) {
        const auto o = batch.outcome(i);
        w.field(static_cast<long long>(i));
        for (double x : o.x) w.field(x + 1.0); // factor values, not deviations
        w.field(o.ev).field(o.y);
        w.end_row();
    }
}

void write_distribution_csv(const std::filesystem::path& path, const std::vector<double>& samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    CsvWriter w(out);
    w.row({"path", "own_funds_change"});
    for (std::size_t i = 0; i < samples.size(); ++i) {
        w.field(static_cast<long long>(i)).field(samples[i]);
        w.end_row();
    }
}

void write_regression_slices_csv(const std::filesystem::path& path, const SimulationBatch& batch,
                                 const RegressionResult& reg, std::size_t points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    CsvWriter w(out);
    w.row({"regressor", "factor", "fitted_assumption_change"});
    const std::size_t k = batch.n_regressors();
    std::vector<double> x(k);
    for (std::size_t j = 0; j < k; ++j) {
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < batch.n_sims; ++i) {
            lo = std::min(lo, batch.outcome(i).x[j]);
            hi = std::max(hi, batch.outcome(i).x[j]);
        }
        for (std::size_t s = 0; s < points; ++s) {
            std::fill(x.begin(), x.end(), 0.0);
            x[j] = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(points - 1);
            w.field(batch.regressor_names[j]).field(x[j] + 1.0).field(reg.predict(x));
            w.end_row();
        }
    }
}

namespace {

struct Loaded {
    Portfolio portfolio;
    Book book;
};

Loaded load_book(const RunConfig& c) {
    for (const auto* p : {&c.portfolio, &c.mortality, &c.lapse_rates, &c.discount}) {
        if (p->empty()) throw Error(ErrorCode::config, "the [data] section must name all four input files");
        if (!std::filesystem::exists(*p)) throw Error(ErrorCode::io, "input file not found: " + p->string());
    }
    Loaded l;
    l.portfolio = read_portfolio_csv(c.portfolio);
    l.book = compile(l.portfolio, read_assumptions(c.mortality, c.lapse_rates, c.discount));
    return l;
}

ordered_json header(Command command, const RunConfig& c, const Loaded& l) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["command"] = to_string(command);
    j["config"] = to_json(c);
    j["conventions"] = conventions_json(c);
    j["inputs"] = {{"model_points", l.portfolio.size()},
                   {"cohorts", l.book.cohorts.size()},
                   {"horizon", l.book.horizon}};
    return j;
}

struct LsmcRun {
    SimulationBatch batch;
    RegressionResult regression;
    OwnFundsDistribution distribution;
    RiskMeasureReport risk;
};

LsmcRun run_lsmc(const Book& book, const RiskModels& models, const RunConfig& c,
                 std::vector<std::string>& warnings) {
    LsmcRun r;
    r.batch = build_batch(book, models, c.sims, c.seed, batch_options(c));
    r.regression = fit(r.batch, parse_basis_kind(c.regression_basis),
                       c.robust_se ? StdErrorKind::hc0 : StdErrorKind::classical);
    r.distribution = own_funds_distribution(r.batch, r.regression);
    r.risk = risk_measures(r.distribution.samples, c.level);
    if (r.batch.clip_fraction() > 0.001) {
        warnings.push_back("decrements were clipped in " + format_number(100.0 * r.batch.clip_fraction()) +
                           "% of path-years; check the calibration against the mortality table");
    }
    if (r.risk.low_sample_warning) {
        warnings.push_back("fewer samples than 1 / (1 - level); the quantile is unreliable");
    }
    return r;
}

ordered_json batch_json(const SimulationBatch& b) {
    double max_rel = 0.0;
    for (std::size_t t = 0; t < b.mean_ncf.size(); ++t) {
        const double scale = std::abs(b.best_estimate_ncf[t]);
        if (scale > 0.0) max_rel = std::max(max_rel, std::abs(b.mean_ncf[t] - b.best_estimate_ncf[t]) / scale);
    }
    return {{"n_sims", b.n_sims},
            {"seed", b.seed},
            {"regressor_set", to_string(b.regressor_set)},
            {"regressors", b.regressor_names},
            {"recentered", b.recentered},
            {"clipped_path_years", b.clip_count},
            {"clip_fraction", b.clip_fraction()},
            {"max_relative_mean_ncf_deviation", max_rel}};
}

void finish(RunOutcome& outcome, const std::filesystem::path& report_path) {
    outcome.report["warnings"] = outcome.warnings;
    write_json(report_path, outcome.report);
    outcome.files.push_back(report_path);
}

} // namespace

RunOutcome run(Command command, const RunConfig& c) {
    check(c);
    const Loaded loaded = load_book(c);
    std::filesystem::create_directories(c.out);

    RunOutcome outcome;
    outcome.warnings = loaded.book.warnings;
    outcome.report = header(command, c, loaded);
    auto& report = outcome.report;
    const auto out = [&](const std::string& name) { return c.out / name; };

    if (command == Command::scr_standard) {
        const auto sf = standard_formula_scr(loaded.book, standard_formula_options(c));
        for (const auto& w : sf.warnings) outcome.warnings.push_back(w);
        report["standard_formula"] = to_json(sf);
        finish(outcome, out("report.json"));
        return outcome;
    }

    const auto calibrated = calibrate(c);
    report["calibration"] = calibrated.echo;
    const RiskModels& models = calibrated.models;
    if (c.sims < 1000 && command != Command::funnel) {
        outcome.warnings.push_back("fewer than 1,000 simulations; SCR estimates will be noisy");
    }

    switch (command) {
    case Command::scr_lsmc: {
        const auto r = run_lsmc(loaded.book, models, c, outcome.warnings);
        report["batch"] = batch_json(r.batch);
        report["regression"] = to_json(r.regression);
        report["own_funds"] = {{"mean", r.distribution.mean}, {"standard_error", r.distribution.standard_error}};
        report["risk"] = to_json(r.risk);

        // The other basis, as a diagnostic only.
        const BasisKind other = r.regression.basis == BasisKind::linear ? BasisKind::linear_plus_quadratic
                                                                         : BasisKind::linear;
        try {
            const auto alt = fit(r.batch, other);
            const auto alt_risk = risk_measures(own_funds_distribution(r.batch, alt).samples, c.level);
            report["basis_diagnostic"] = {
                {"basis", to_string(other)},
                {"scr", alt_risk.scr},
                {"relative_difference", r.risk.scr > 0.0 ? (alt_risk.scr - r.risk.scr) / r.risk.scr : 0.0}};
        } catch (const Error& e) {
            report["basis_diagnostic"] = {{"basis", to_string(other)}, {"error", e.what()}};
        }

        const auto sf = standard_formula_scr(loaded.book, standard_formula_options(c));
        report["standard_formula"] = to_json(sf);

        write_distribution_csv(out("distribution.csv"), r.distribution.samples);
        write_batch_csv(out("batch.csv"), r.batch);
        write_regression_slices_csv(out("regression_slices.csv"), r.batch, r.regression);
        outcome.files.insert(outcome.files.end(),
                             {out("distribution.csv"), out("batch.csv"), out("regression_slices.csv")});
        finish(outcome, out("report.json"));
        break;
    }
    case Command::funnel: {
        const auto component = parse_funnel_component(c.funnel_component);
        const auto table = funnel(models, loaded.book.horizon, c.sims, c.seed, component,
                                  c.funnel_quantiles, c.threads);
        const auto name = std::string("funnel_") + to_string(component) + ".csv";
        write_funnel_csv(out(name), table);
        outcome.files.push_back(out(name));
        ordered_json last = {{"year", table.rows.size()}, {"mean", table.mean.back()}};
        for (std::size_t k = 0; k < table.quantiles.size(); ++k) {
            last["q" + format_number(table.quantiles[k])] = table.rows.back()[k];
        }
        report["funnel"] = {{"component", to_string(component)},
                            {"n_paths", c.sims},
                            {"file", name},
                            {"final_year", last}};
        finish(outcome, out("report.json"));
        break;
    }
    case Command::life_expectancy: {
        BatchOptions opts = batch_options(c);
        opts.columns.clear();
        const auto batch = build_batch(loaded.book, models, c.sims, c.seed, opts);
        LifeExpectancyOptions le_opts;
        le_opts.regressors = opts.regressors;
        le_opts.quantile_level = c.le_level;
        le_opts.stress_le = c.le_stress;
        le_opts.stress_mortality_factor = 1.0 + c.stress_magnitudes[3];
        le_opts.threads = c.threads;
        const auto le = life_expectancy_regression(batch, loaded.book, models, le_opts);
        report["life_expectancy"] = to_json(le);
        finish(outcome, out("le_report.json"));
        break;
    }
    case Command::validate_nested: {
        const auto lsmc = run_lsmc(loaded.book, models, c, outcome.warnings);
        NestedConfig nc;
        nc.n_outer = c.nested_outer;
        nc.n_inner = c.nested_inner;
        nc.seed = c.seed;
        nc.time_budget_seconds = c.nested_budget_seconds;
        nc.threads = c.threads;
        const auto nested = nested_scr(loaded.book, models, nc, c.level);
        const double gap = nested.risk.scr > 0.0 ? (lsmc.risk.scr - nested.risk.scr) / nested.risk.scr : 0.0;
        report["lsmc"] = {{"batch", batch_json(lsmc.batch)},
                          {"regression", to_json(lsmc.regression)},
                          {"risk", to_json(lsmc.risk)}};
        report["nested"] = {{"n_outer", nc.n_outer},
                            {"n_inner", nc.n_inner},
                            {"mean_inner_standard_error", nested.mean_inner_standard_error},
                            {"risk", to_json(nested.risk)}};
        report["comparison"] = {
            {"lsmc_scr", lsmc.risk.scr},
            {"nested_scr", nested.risk.scr},
            {"relative_gap", gap},
            {"combined_quantile_standard_error",
             std::hypot(lsmc.risk.quantile_standard_error, nested.risk.quantile_standard_error)}};
        write_distribution_csv(out("distribution.csv"), lsmc.distribution.samples);
        write_distribution_csv(out("nested_distribution.csv"), nested.samples);
        outcome.files.insert(outcome.files.end(), {out("distribution.csv"), out("nested_distribution.csv")});
        finish(outcome, out("report.json"));
        break;
    }
    case Command::simulate_export: {
        const auto batch = build_batch(loaded.book, models, c.sims, c.seed, batch_options(c));
        report["batch"] = batch_json(batch);
        write_batch_csv(out("batch.csv"), batch);
        outcome.files.push_back(out("batch.csv"));
        finish(outcome, out("report.json"));
        break;
    }
    case Command::scr_standard:
        break;
    }
    return outcome;
}

} // namespace lsmc
