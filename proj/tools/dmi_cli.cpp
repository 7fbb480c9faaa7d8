#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "dmi/driver.hpp"
#include "dmi/errors.hpp"
#include "dmi/hypervolume.hpp"
#include "dmi/record_io.hpp"
#include "dmi/stats.hpp"

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw dmi::IoError("cannot create " + dir.string() + ": " + ec.message());
    }
}

int cmd_run(const std::string& config_path, const std::optional<std::uint64_t>& seed, bool no_interpolation,
            const fs::path& out)
{
    auto config = dmi::load_experiment_config(config_path);
    if (seed) {
        config.seed = *seed;
    }
    if (no_interpolation) {
        config.interpolation = false;
    }
    config.validate();
    ensure_dir(out);
    const auto record = dmi::run_experiment(config);
    dmi::write_record(record, out / "record.json");
    dmi::write_summary_csv({record}, out / "summary.csv");
    dmi::emit_front(record, out / "front.csv");
    std::printf("%s %s seed=%llu fes=%zu final_hv=%.12g initial_hv=%.12g segments=%d/%d\n", config.problem.c_str(),
                config.instance_id().c_str(), static_cast<unsigned long long>(config.seed), record.fes,
                record.final_hv, record.initial_hv, record.coverage.covered, record.coverage.total);
    return 0;
}

int cmd_suite(const std::string& config_path, const fs::path& out)
{
    const auto suite = dmi::load_suite_config(config_path);
    ensure_dir(out);
    const auto records = dmi::run_suite(suite, out, dmi::thread_count_from_env());
    std::size_t failed = 0;
    for (const auto& r : records) {
        failed += r.status == "ok" ? 0 : 1;
    }
    std::printf("%zu runs, %zu failed, summary: %s\n", records.size(), failed, (out / "summary.csv").string().c_str());
    return failed == 0 ? 0 : 1;
}

int cmd_hv(const fs::path& front_path, const std::vector<double>& ref_values)
{
    const auto front = dmi::read_csv_rows(front_path);
    const dmi::Vector ref = Eigen::Map<const dmi::Vector>(ref_values.data(), static_cast<Eigen::Index>(ref_values.size()));
    for (const auto& row : front) {
        if (row.size() != ref.size()) {
            throw dmi::ConfigError("front has " + std::to_string(row.size()) + " columns but " +
                                   std::to_string(ref.size()) + " reference values were given");
        }
    }
    std::printf("%.12g\n", dmi::hypervolume(front, ref));
    return 0;
}

int cmd_stats(const fs::path& a_path, const fs::path& b_path, const std::string& column)
{
    const auto a = column.empty() ? dmi::read_csv_column(a_path) : dmi::read_csv_column(a_path, column);
    const auto b = column.empty() ? dmi::read_csv_column(b_path) : dmi::read_csv_column(b_path, column);
    const auto report = dmi::compare(a, b);
    std::printf("p=%.6g\na12=%.6g\nmagnitude=%s\n", report.p_value, report.a12,
                dmi::magnitude_name(report.magnitude).c_str());
    return 0;
}

int cmd_front(const fs::path& record_path, const fs::path& out)
{
    const auto record = dmi::read_record(record_path);
    if (out.has_parent_path()) {
        ensure_dir(out.parent_path());
    }
    dmi::emit_front(record, out);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Batched surrogate-assisted multi-objective optimization with manifold interpolation"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

    std::string config_path;
    std::string out_dir;

    auto* run = app.add_subcommand("run", "Run one experiment");
    std::optional<std::uint64_t> seed;
    bool no_interpolation = false;
    run->add_option("--config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the seed");
    run->add_flag("--no-interpolation", no_interpolation, "Skip the manifold interpolation step");
    run->add_option("--out", out_dir, "Output directory")->required();

    auto* suite = app.add_subcommand("suite", "Run problems x instances x seeds");
    suite->add_option("--config", config_path, "Suite JSON")->required()->check(CLI::ExistingFile);
    suite->add_option("--out", out_dir, "Output directory")->required();

    auto* hv = app.add_subcommand("hv", "Hypervolume of a front CSV");
    std::string front_path;
    std::vector<double> ref;
    hv->add_option("--front", front_path, "CSV, one objective vector per row")->required()->check(CLI::ExistingFile);
    hv->add_option("--ref", ref, "Reference value, once per objective")->required()->take_all()->allow_extra_args(false);

    auto* stats = app.add_subcommand("stats", "Wilcoxon signed-rank and A12 on paired samples");
    std::string a_path;
    std::string b_path;
    std::string column;
    stats->add_option("--a", a_path, "CSV of sample A")->required()->check(CLI::ExistingFile);
    stats->add_option("--b", b_path, "CSV of sample B")->required()->check(CLI::ExistingFile);
    stats->add_option("--column", column, "Header name of the column to read (default: single-column file)");

    auto* front = app.add_subcommand("front", "Export the final front of a run record");
    std::string record_path;
    std::string out_csv;
    front->add_option("--record", record_path, "Run record JSON")->required()->check(CLI::ExistingFile);
    front->add_option("--out", out_csv, "Output CSV")->required();

    CLI11_PARSE(app, argc, argv);
    spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

    try {
        if (*run) {
            return cmd_run(config_path, seed, no_interpolation, out_dir);
        }
        if (*suite) {
            return cmd_suite(config_path, out_dir);
        }
        if (*hv) {
            return cmd_hv(front_path, ref);
        }
        if (*stats) {
            return cmd_stats(a_path, b_path, column);
        }
        if (*front) {
            return cmd_front(record_path, out_csv);
        }
    } catch (const dmi::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const dmi::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
