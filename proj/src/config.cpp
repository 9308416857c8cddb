#include "lsmc/config.hpp"

#include "lsmc/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <functional>
#include <map>

namespace lsmc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const std::string s = trim(v);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(ErrorCode::config, key + ": '" + v + "' is not a number");
    }
    return out;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
    Int out = 0;
    const std::string s = trim(v);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw Error(ErrorCode::config, key + ": '" + v + "' is not a non-negative integer");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    if (s == "true" || s == "yes" || s == "1" || s == "on") return true;
    if (s == "false" || s == "no" || s == "0" || s == "off") return false;
    throw Error(ErrorCode::config, key + ": '" + v + "' is not a boolean");
}

std::vector<std::string> to_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v + ",") {
        if (c == ',') {
            const auto item = trim(cur);
            if (!item.empty()) out.push_back(item);
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value,
                                  const std::filesystem::path& base)>;

std::map<std::string, Setter> setters() {
    auto path_setter = [](std::filesystem::path RunConfig::*member) -> Setter {
        return [member](RunConfig& c, const std::string&, const std::string& v,
                        const std::filesystem::path& base) {
            std::filesystem::path p = trim(v);
            c.*member = p.is_absolute() ? p : base / p;
        };
    };
    auto dbl = [](double RunConfig::*member) -> Setter {
        return [member](RunConfig& c, const std::string& k, const std::string& v,
                        const std::filesystem::path&) { c.*member = to_double(k, v); };
    };
    auto opt_dbl = [](std::optional<double> RunConfig::*member) -> Setter {
        return [member](RunConfig& c, const std::string& k, const std::string& v,
                        const std::filesystem::path&) { c.*member = to_double(k, v); };
    };
    auto str = [](std::string RunConfig::*member) -> Setter {
        return [member](RunConfig& c, const std::string&, const std::string& v,
                        const std::filesystem::path&) { c.*member = trim(v); };
    };
    auto boolean = [](bool RunConfig::*member) -> Setter {
        return [member](RunConfig& c, const std::string& k, const std::string& v,
                        const std::filesystem::path&) { c.*member = to_bool(k, v); };
    };
    auto size = [](std::size_t RunConfig::*member) -> Setter {
        return [member](RunConfig& c, const std::string& k, const std::string& v,
                        const std::filesystem::path&) { c.*member = to_int<std::size_t>(k, v); };
    };
    auto magnitude = [](std::size_t index) -> Setter {
        return [index](RunConfig& c, const std::string& k, const std::string& v,
                       const std::filesystem::path&) { c.stress_magnitudes[index] = to_double(k, v); };
    };

    return {
        {"data.portfolio", path_setter(&RunConfig::portfolio)},
        {"data.mortality", path_setter(&RunConfig::mortality)},
        {"data.lapse", path_setter(&RunConfig::lapse_rates)},
        {"data.discount", path_setter(&RunConfig::discount)},
        {"run.sims", size(&RunConfig::sims)},
        {"run.seed", [](RunConfig& c, const std::string& k, const std::string& v,
                        const std::filesystem::path&) { c.seed = to_int<std::uint64_t>(k, v); }},
        {"run.level", dbl(&RunConfig::level)},
        {"run.threads", [](RunConfig& c, const std::string& k, const std::string& v,
                           const std::filesystem::path&) { c.threads = to_int<unsigned>(k, v); }},
        {"run.out", path_setter(&RunConfig::out)},
        {"run.regression", str(&RunConfig::regression_basis)},
        {"run.regressors", str(&RunConfig::regressors)},
        {"run.regressor_columns", [](RunConfig& c, const std::string&, const std::string& v,
                                     const std::filesystem::path&) { c.regressor_columns = to_list(v); }},
        {"run.recenter", boolean(&RunConfig::recenter)},
        {"run.robust_se", boolean(&RunConfig::robust_se)},
        {"trend.quantile", dbl(&RunConfig::trend_quantile)},
        {"trend.factor", dbl(&RunConfig::trend_factor)},
        {"trend.year", [](RunConfig& c, const std::string& k, const std::string& v,
                          const std::filesystem::path&) { c.trend_year = to_int<int>(k, v); }},
        {"trend.sigma", opt_dbl(&RunConfig::trend_sigma)},
        {"calamity.enabled", boolean(&RunConfig::calamity_enabled)},
        {"calamity.mode", str(&RunConfig::calamity_mode)},
        {"calamity.quantile_a", dbl(&RunConfig::calamity_quantile_a)},
        {"calamity.excess_a", dbl(&RunConfig::calamity_excess_a)},
        {"calamity.quantile_b", dbl(&RunConfig::calamity_quantile_b)},
        {"calamity.excess_b", dbl(&RunConfig::calamity_excess_b)},
        {"basis.share_be", dbl(&RunConfig::basis_share_be)},
        {"basis.share_adverse", dbl(&RunConfig::basis_share_adverse)},
        {"basis.multiplier", dbl(&RunConfig::basis_multiplier)},
        {"basis.sigma", opt_dbl(&RunConfig::basis_sigma)},
        {"lapse.sigma", dbl(&RunConfig::lapse_sigma)},
        {"standard_formula.lapse_mass", magnitude(0)},
        {"standard_formula.lapse_up", magnitude(1)},
        {"standard_formula.lapse_down", magnitude(2)},
        {"standard_formula.mortality_up", magnitude(3)},
        {"standard_formula.catastrophe", magnitude(4)},
        {"standard_formula.correlation", dbl(&RunConfig::stress_correlation)},
        {"funnel.component", str(&RunConfig::funnel_component)},
        {"funnel.quantiles", [](RunConfig& c, const std::string& k, const std::string& v,
                                const std::filesystem::path&) {
             c.funnel_quantiles.clear();
             for (const auto& item : to_list(v)) c.funnel_quantiles.push_back(to_double(k, item));
         }},
        {"life_expectancy.level", dbl(&RunConfig::le_level)},
        {"life_expectancy.stress_le", opt_dbl(&RunConfig::le_stress)},
        {"nested.outer", size(&RunConfig::nested_outer)},
        {"nested.inner", size(&RunConfig::nested_inner)},
        {"nested.budget_seconds", dbl(&RunConfig::nested_budget_seconds)},
    };
}

} // namespace

RunConfig load_config(const std::filesystem::path& path) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(path.string(), tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        if (!std::filesystem::exists(path)) {
            throw Error(ErrorCode::io, "cannot open config " + path.string());
        }
        throw Error(ErrorCode::config, e.what());
    }
    RunConfig config;
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    const auto table = setters();
    for (const auto& [section, keys] : tree) {
        if (keys.empty()) {
            throw Error(ErrorCode::config, "key '" + section + "' must sit inside a [section]");
        }
        for (const auto& [key, value] : keys) {
            const std::string full = section + "." + key;
            auto it = table.find(full);
            if (it == table.end()) throw Error(ErrorCode::config, "unknown config key '" + full + "'");
            it->second(config, full, value.data(), base);
        }
    }
    return config;
}

void check(const RunConfig& c) {
    if (!(c.level > 0.0 && c.level < 1.0)) throw Error(ErrorCode::config, "run.level must lie in (0, 1)");
    if (c.sims < 2) throw Error(ErrorCode::config, "run.sims must be at least 2");
    if (c.threads < 1) throw Error(ErrorCode::config, "run.threads must be at least 1");
    if (!(c.lapse_sigma >= 0.0)) throw Error(ErrorCode::config, "lapse.sigma must be >= 0");
    if (c.trend_sigma && !(*c.trend_sigma >= 0.0)) throw Error(ErrorCode::config, "trend.sigma must be >= 0");
    if (c.basis_sigma && !(*c.basis_sigma >= 0.0)) throw Error(ErrorCode::config, "basis.sigma must be >= 0");
    if (c.calamity_mode != "pareto" && c.calamity_mode != "mean") {
        throw Error(ErrorCode::config, "calamity.mode must be 'pareto' or 'mean'");
    }
    if (!(c.le_level > 0.0 && c.le_level < 1.0)) {
        throw Error(ErrorCode::config, "life_expectancy.level must lie in (0, 1)");
    }
    parse_basis_kind(c.regression_basis);
    parse_regressor_set(c.regressors);
    parse_funnel_component(c.funnel_component);
}

CalibratedModels calibrate(const RunConfig& c) {
    CalibratedModels out;
    auto& m = out.models;
    auto& echo = out.echo;

    if (c.trend_sigma) {
        m.trend.sigma = *c.trend_sigma;
        echo["trend"] = {{"sigma", m.trend.sigma}, {"source", "configured"}};
    } else {
        m.trend = calibrate_trend(c.trend_quantile, c.trend_factor, c.trend_year);
        echo["trend"] = {{"sigma", m.trend.sigma},
                         {"source", "calibrated"},
                         {"target_quantile", c.trend_quantile},
                         {"target_factor", c.trend_factor},
                         {"at_year", c.trend_year}};
    }

    if (c.basis_sigma) {
        m.basis.sigma = *c.basis_sigma;
        echo["basis"] = {{"sigma", m.basis.sigma}, {"source", "configured"}};
    } else {
        m.basis = calibrate_basis(c.basis_share_be, c.basis_share_adverse, c.basis_multiplier);
        echo["basis"] = {{"sigma", m.basis.sigma},
                         {"source", "calibrated"},
                         {"smoker_share_be", c.basis_share_be},
                         {"smoker_share_adverse", c.basis_share_adverse},
                         {"smoker_multiplier", c.basis_multiplier}};
    }

    m.lapse.sigma = c.lapse_sigma;
    echo["lapse"] = {{"sigma", m.lapse.sigma}};

    if (c.calamity_enabled) {
        CalamityModel cal = calibrate_calamity(c.calamity_quantile_a, c.calamity_excess_a,
                                               c.calamity_quantile_b, c.calamity_excess_b);
        cal.mode = c.calamity_mode == "mean" ? CalamityModel::Mode::mean_only : CalamityModel::Mode::pareto;
        m.calamity = cal;
        echo["calamity"] = {{"enabled", true},
                            {"mode", c.calamity_mode},
                            {"alpha", cal.alpha},
                            {"xm", cal.xm},
                            {"mean_load", cal.mean_load()},
                            {"anchors",
                             {{{"quantile", c.calamity_quantile_a}, {"excess", c.calamity_excess_a}},
                              {{"quantile", c.calamity_quantile_b}, {"excess", c.calamity_excess_b}}}}};
    } else {
        echo["calamity"] = {{"enabled", false}};
    }
    return out;
}

StandardFormulaOptions standard_formula_options(const RunConfig& c) {
    StandardFormulaOptions o;
    o.magnitudes = c.stress_magnitudes;
    o.correlation = c.stress_correlation;
    return o;
}

BatchOptions batch_options(const RunConfig& c) {
    BatchOptions o;
    o.regressors = parse_regressor_set(c.regressors);
    o.columns = c.regressor_columns;
    o.recenter = c.recenter;
    o.threads = c.threads;
    return o;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["data"] = {{"portfolio", c.portfolio.generic_string()},
                 {"mortality", c.mortality.generic_string()},
                 {"lapse", c.lapse_rates.generic_string()},
                 {"discount", c.discount.generic_string()}};
    j["run"] = {{"sims", c.sims},
                {"seed", c.seed},
                {"level", c.level},
                {"regression", c.regression_basis},
                {"regressors", c.regressors},
                {"regressor_columns", c.regressor_columns},
                {"recenter", c.recenter},
                {"robust_se", c.robust_se}};
    j["trend"] = {{"quantile", c.trend_quantile}, {"factor", c.trend_factor}, {"year", c.trend_year}};
    if (c.trend_sigma) j["trend"]["sigma"] = *c.trend_sigma;
    j["calamity"] = {{"enabled", c.calamity_enabled},
                     {"mode", c.calamity_mode},
                     {"quantile_a", c.calamity_quantile_a},
                     {"excess_a", c.calamity_excess_a},
                     {"quantile_b", c.calamity_quantile_b},
                     {"excess_b", c.calamity_excess_b}};
    j["basis"] = {{"share_be", c.basis_share_be},
                  {"share_adverse", c.basis_share_adverse},
                  {"multiplier", c.basis_multiplier}};
    if (c.basis_sigma) j["basis"]["sigma"] = *c.basis_sigma;
    j["lapse"] = {{"sigma", c.lapse_sigma}};
    j["standard_formula"] = {{"lapse_mass", c.stress_magnitudes[0]},
                             {"lapse_up", c.stress_magnitudes[1]},
                             {"lapse_down", c.stress_magnitudes[2]},
                             {"mortality_up", c.stress_magnitudes[3]},
                             {"catastrophe", c.stress_magnitudes[4]},
                             {"correlation", c.stress_correlation}};
    j["funnel"] = {{"component", c.funnel_component}, {"quantiles", c.funnel_quantiles}};
    j["life_expectancy"] = {{"level", c.le_level}};
    if (c.le_stress) j["life_expectancy"]["stress_le"] = *c.le_stress;
    j["nested"] = {{"outer", c.nested_outer},
                   {"inner", c.nested_inner},
                   {"budget_seconds", c.nested_budget_seconds}};
    return j;
}

} // namespace lsmc
