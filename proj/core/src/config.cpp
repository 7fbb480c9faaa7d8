#include "dmi/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmi/errors.hpp"
#include "dmi/problems.hpp"
#include "dmi/sampling.hpp"
#include "dmi/selection.hpp"

namespace dmi {

using json = nlohmann::json;

namespace {

const std::set<std::string>& experiment_keys()
{
    static const std::set<std::string> keys{
        "problem",        "n",          "m",          "optimizer",        "selector",        "batch_size",
        "interpolation_count", "step_scale", "initial_size", "max_fes", "seed", "interpolation",
        "search_population", "search_generations", "pf_samples", "hyper_starts", "hyper_iterations",
        "hyper_lower",    "hyper_upper", "jitter",    "instance"};
    return keys;
}

template <typename T>
T get_as(const json& j, const std::string& key)
{
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

std::size_t get_count(const json& j, const std::string& key)
{
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError("config key '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

void apply_json(ExperimentConfig& c, const json& j)
{
    if (!j.is_object()) {
        throw ConfigError("experiment config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (experiment_keys().count(key) == 0) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (j.contains("instance")) {
        apply_instance(c, get_as<std::string>(j, "instance"));
    }
    if (j.contains("problem")) {
        c.problem = get_as<std::string>(j, "problem");
    }
    if (j.contains("n")) {
        c.n = get_count(j, "n");
    }
    if (j.contains("m")) {
        c.m = get_count(j, "m");
    }
    if (j.contains("optimizer")) {
        c.optimizer = parse_optimizer(get_as<std::string>(j, "optimizer"));
    }
    if (j.contains("selector")) {
        c.selector = parse_selector(get_as<std::string>(j, "selector"));
    }
    if (j.contains("batch_size")) {
        c.batch_size = get_count(j, "batch_size");
    }
    if (j.contains("interpolation_count")) {
        c.interpolation_count = get_count(j, "interpolation_count");
    }
    if (j.contains("step_scale")) {
        c.step_scale = get_as<double>(j, "step_scale");
    }
    if (j.contains("initial_size")) {
        c.initial_size = get_count(j, "initial_size");
    }
    if (j.contains("max_fes")) {
        c.max_fes = get_count(j, "max_fes");
    }
    if (j.contains("seed")) {
        c.seed = get_as<std::uint64_t>(j, "seed");
    }
    if (j.contains("interpolation")) {
        c.interpolation = get_as<bool>(j, "interpolation");
    }
    if (j.contains("search_population")) {
        c.search_population = get_count(j, "search_population");
    }
    if (j.contains("search_generations")) {
        c.search_generations = get_count(j, "search_generations");
    }
    if (j.contains("pf_samples")) {
        c.pf_samples = get_count(j, "pf_samples");
    }
    if (j.contains("hyper_starts")) {
        c.hyper.starts = get_count(j, "hyper_starts");
    }
    if (j.contains("hyper_iterations")) {
        c.hyper.max_iterations = get_count(j, "hyper_iterations");
    }
    if (j.contains("hyper_lower")) {
        c.hyper.lower = get_as<double>(j, "hyper_lower");
    }
    if (j.contains("hyper_upper")) {
        c.hyper.upper = get_as<double>(j, "hyper_upper");
    }
    if (j.contains("jitter")) {
        c.hyper.jitter = get_as<double>(j, "jitter");
    }
}

json parse_text(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

std::size_t ExperimentConfig::objectives() const
{
    return m != 0 ? m : problem_from_id(problem, n).m;
}

std::size_t ExperimentConfig::resolved_initial_size() const
{
    return initial_size ? *initial_size : default_initial_size(n);
}

std::size_t ExperimentConfig::resolved_max_fes() const
{
    if (max_fes) {
        return *max_fes;
    }
    return objectives() == 2 ? 150 : 250;
}

std::size_t ExperimentConfig::resolved_search_population() const
{
    return search_population ? *search_population : default_population_size(objectives());
}

std::string ExperimentConfig::instance_id() const
{
    if (lhs_only) {
        return "lhs";
    }
    std::string id = interpolation ? "dmi-" : "";
    id += optimizer_id(optimizer);
    if (selector == Selector::Ihv) {
        id += "-ihv";
    }
    return id;
}

void apply_instance(ExperimentConfig& config, std::string_view instance)
{
    if (instance == "lhs") {
        config.lhs_only = true;
        return;
    }
    std::vector<std::string> parts;
    std::string token;
    for (char ch : instance) {
        if (ch == '-') {
            parts.push_back(token);
            token.clear();
        } else {
            token += ch;
        }
    }
    parts.push_back(token);

    std::size_t pos = 0;
    bool interpolation = false;
    if (pos < parts.size() && parts[pos] == "dmi") {
        interpolation = true;
        ++pos;
    }
    if (pos >= parts.size()) {
        throw ConfigError("invalid instance id '" + std::string(instance) + "'");
    }
    const Optimizer optimizer = parse_optimizer(parts[pos++]);
    Selector selector = Selector::Native;
    if (pos < parts.size() && parts[pos] == "ihv") {
        selector = Selector::Ihv;
        ++pos;
    }
    if (pos != parts.size()) {
        throw ConfigError("invalid instance id '" + std::string(instance) + "'");
    }
    config.lhs_only = false;
    config.interpolation = interpolation;
    config.optimizer = optimizer;
    config.selector = selector;
}

void ExperimentConfig::validate() const
{
    const auto spec = problem_from_id(problem, n, m);
    if (batch_size < 1) {
        throw ConfigError("batch_size must be at least 1");
    }
    if (interpolation_count < 1) {
        throw ConfigError("interpolation_count must be at least 1");
    }
    if (!(step_scale >= 0.0)) {
        throw ConfigError("step_scale must be non-negative");
    }
    if (resolved_initial_size() < 2) {
        throw ConfigError("initial_size must be at least 2");
    }
    const auto fes = resolved_max_fes();
    if (fes != 0 && fes < batch_size) {
        throw ConfigError("max_fes must be 0 or at least batch_size");
    }
    if (pf_samples < 2) {
        throw ConfigError("pf_samples must be at least 2");
    }
    if (!(hyper.lower > 0.0 && hyper.lower < hyper.upper) || hyper.starts < 1 || hyper.jitter < 1e-10) {
        throw ConfigError("invalid hyperparameter search settings");
    }
    if (spec.m > 3) {
        throw ConfigError("only 2 or 3 objectives are supported");
    }
    const auto pop = resolved_search_population();
    if (pop < 2) {
        throw ConfigError("search_population must be at least 2");
    }
    if (optimizer == Optimizer::Moead || (optimizer == Optimizer::Nsga2 && selector == Selector::Native)) {
        try {
            (void)das_dennis_divisions(spec.m, pop);
        } catch (const ContractViolation& e) {
            throw ConfigError(e.what());
        }
    }
}

std::vector<ExperimentConfig> SuiteConfig::expand() const
{
    std::vector<ExperimentConfig> out;
    for (const auto& p : problems) {
        for (const auto& inst : instances) {
            for (auto seed : seeds) {
                ExperimentConfig c = base;
                c.problem = p.problem;
                c.n = p.n;
                c.m = p.m;
                apply_instance(c, inst);
                c.seed = seed;
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

ExperimentConfig parse_experiment_config(std::string_view json_text)
{
    ExperimentConfig c;
    apply_json(c, parse_text(json_text));
    c.validate();
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path)
{
    return parse_experiment_config(read_text(path));
}

SuiteConfig parse_suite_config(std::string_view json_text)
{
    const json j = parse_text(json_text);
    if (!j.is_object()) {
        throw ConfigError("suite config must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (key != "base" && key != "problems" && key != "instances" && key != "seeds") {
            throw ConfigError("unknown suite key '" + key + "'");
        }
    }
    SuiteConfig suite;
    if (j.contains("base")) {
        apply_json(suite.base, j.at("base"));
    }
    if (!j.contains("problems") || !j.at("problems").is_array() || j.at("problems").empty()) {
        throw ConfigError("suite needs a non-empty 'problems' array");
    }
    for (const auto& p : j.at("problems")) {
        SuiteEntry e;
        if (p.is_string()) {
            e.problem = p.get<std::string>();
            e.n = suite.base.n;
        } else if (p.is_object()) {
            e.problem = get_as<std::string>(p, "problem");
            e.n = p.contains("n") ? get_count(p, "n") : suite.base.n;
            e.m = p.contains("m") ? get_count(p, "m") : 0;
        } else {
            throw ConfigError("suite problems must be strings or objects");
        }
        suite.problems.push_back(std::move(e));
    }
    if (j.contains("instances")) {
        for (const auto& inst : j.at("instances")) {
            if (!inst.is_string()) {
                throw ConfigError("suite instances must be strings");
            }
            suite.instances.push_back(inst.get<std::string>());
        }
    } else {
        suite.instances.push_back(suite.base.instance_id());
    }
    if (suite.instances.empty()) {
        throw ConfigError("suite needs at least one instance");
    }
    if (!j.contains("seeds")) {
        suite.seeds.push_back(suite.base.seed);
    } else if (j.at("seeds").is_number_integer()) {
        const auto count = get_count(j, "seeds");
        for (std::uint64_t s = 1; s <= count; ++s) {
            suite.seeds.push_back(s);
        }
    } else if (j.at("seeds").is_array()) {
        for (const auto& s : j.at("seeds")) {
            if (!s.is_number_unsigned()) {
                throw ConfigError("seeds must be non-negative integers");
            }
            suite.seeds.push_back(s.get<std::uint64_t>());
        }
    } else {
        throw ConfigError("'seeds' must be an integer count or an array");
    }
    if (suite.seeds.empty()) {
        throw ConfigError("suite needs at least one seed");
    }
    for (const auto& c : suite.expand()) {
        c.validate();
    }
    return suite;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) { return parse_suite_config(read_text(path)); }

std::string experiment_config_json(const ExperimentConfig& c)
{
    json j;
    j["instance"] = c.instance_id();
    j["problem"] = c.problem;
    j["n"] = c.n;
    j["m"] = c.objectives();
    j["optimizer"] = optimizer_id(c.optimizer);
    j["selector"] = selector_id(c.selector);
    j["interpolation"] = c.interpolation;
    j["batch_size"] = c.batch_size;
    j["interpolation_count"] = c.interpolation_count;
    j["step_scale"] = c.step_scale;
    j["initial_size"] = c.resolved_initial_size();
    j["max_fes"] = c.resolved_max_fes();
    j["seed"] = c.seed;
    j["search_population"] = c.resolved_search_population();
    j["search_generations"] = c.search_generations;
    j["pf_samples"] = c.pf_samples;
    j["hyper_starts"] = c.hyper.starts;
    j["hyper_iterations"] = c.hyper.max_iterations;
    j["hyper_lower"] = c.hyper.lower;
    j["hyper_upper"] = c.hyper.upper;
    j["jitter"] = c.hyper.jitter;
    return j.dump(2);
}

} // namespace dmi
