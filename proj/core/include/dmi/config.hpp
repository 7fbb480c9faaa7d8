#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmi/batch.hpp"
#include "dmi/gpr.hpp"
#include "dmi/search.hpp"

namespace dmi {

/// One experiment. Unset optionals take size-dependent defaults, see the
/// resolved_* accessors.
///
/// JSON keys: problem, n, m, optimizer, selector, batch_size,
/// interpolation_count, step_scale, initial_size, max_fes, seed,
/// interpolation, search_population, search_generations, pf_samples,
/// hyper_starts, hyper_iterations, hyper_lower, hyper_upper, jitter.
struct ExperimentConfig {
    std::string problem = "zdt31";
    std::size_t n = 10;
    std::size_t m = 0;  ///< 0: family default
    Optimizer optimizer = Optimizer::Moead;
    Selector selector = Selector::Ihv;
    bool lhs_only = false;  ///< pure Latin hypercube baseline of the same total size
    std::size_t batch_size = 10;
    std::size_t interpolation_count = 100;
    double step_scale = 0.1;
    std::optional<std::size_t> initial_size;
    std::optional<std::size_t> max_fes;
    std::uint64_t seed = 1;
    bool interpolation = true;
    std::optional<std::size_t> search_population;
    std::size_t search_generations = 100;
    std::size_t pf_samples = 1000;
    HyperparameterSearch hyper;

    [[nodiscard]] std::size_t objectives() const;
    [[nodiscard]] std::size_t resolved_initial_size() const;
    [[nodiscard]] std::size_t resolved_max_fes() const;
    [[nodiscard]] std::size_t resolved_search_population() const;

    /// "dmi-moead-ihv", "dmi-nsga2" (native), "moead-ihv" (no interpolation), "lhs".
    [[nodiscard]] std::string instance_id() const;

    /// Throws ConfigError on unknown ids or inconsistent values.
    void validate() const;
};

/// Applies an instance id (see instance_id) to a config.
void apply_instance(ExperimentConfig& config, std::string_view instance);

struct SuiteEntry {
    std::string problem;
    std::size_t n = 10;
    std::size_t m = 0;
};

/// Cartesian product problems x instances x seeds over a shared base config.
///
/// JSON: {"base": {...}, "problems": [{"problem": "zdt31", "n": 10}, ...],
/// "instances": ["dmi-moead-ihv", ...], "seeds": [1, 2, 3] or a count}.
struct SuiteConfig {
    ExperimentConfig base;
    std::vector<SuiteEntry> problems;
    std::vector<std::string> instances;
    std::vector<std::uint64_t> seeds;

    [[nodiscard]] std::vector<ExperimentConfig> expand() const;
};

ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
SuiteConfig parse_suite_config(std::string_view json_text);
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// JSON text of a config with every default resolved.
std::string experiment_config_json(const ExperimentConfig& config);

} // namespace dmi
