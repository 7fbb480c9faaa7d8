#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "dmi/config.hpp"
#include "dmi/gpr.hpp"
#include "dmi/problems.hpp"
#include "dmi/types.hpp"

namespace dmi {

struct IterationLog {
    std::size_t iteration = 0;
    std::size_t fes = 0;  ///< post-initialization true evaluations so far
    double archive_hv = 0.0;
    std::vector<Vector> batch_x;
    std::vector<Vector> batch_f;
    std::vector<KernelParams> kernels;  ///< one per objective
    std::size_t candidates = 0;         ///< |P| + |S|
    std::size_t interpolated = 0;       ///< |S|
    std::size_t filled = 0;             ///< fresh LHS points used to complete the batch
    double wall_seconds = 0.0;
};

struct RunRecord {
    ExperimentConfig config;
    Population archive;
    std::vector<IterationLog> iterations;
    Population front;
    Vector reference;
    double initial_hv = 0.0;
    double final_hv = 0.0;
    std::size_t fes = 0;  ///< post-initialization true evaluations
    SegmentCoverage coverage;
    std::string status = "ok";
    double wall_seconds = 0.0;  ///< set by run_experiment; not part of the summary
};

/// The full loop: LHS initial design, then surrogate fit, surrogate search,
/// manifold interpolation, batch selection and true evaluation until
/// max_fes post-initialization evaluations are spent. Deterministic given
/// the config.
RunRecord run_dmi(const ExperimentConfig& config);

/// One Latin hypercube of initial_size + max_fes points.
RunRecord run_lhs_baseline(const ExperimentConfig& config);

/// Dispatches on config.lhs_only.
RunRecord run_experiment(const ExperimentConfig& config);

/// Sampled true front used for the reference point and coverage.
Population reference_front(const ExperimentConfig& config);

/// Runs every expanded config on up to `threads` workers, writes
/// records/<problem>-n<n>-<instance>-s<seed>.json and summary.csv under
/// out_dir. Failed runs are kept with status "error: ...".
std::vector<RunRecord> run_suite(const SuiteConfig& suite, const std::filesystem::path& out_dir,
                                 std::size_t threads = 1);

/// Writes the record's front (f1..fm) and, next to it, <stem>_pf.csv with
/// the sampled true front.
void emit_front(const RunRecord& record, const std::filesystem::path& path);

void write_summary_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path);

/// Worker count from DMI_THREADS, else 1.
std::size_t thread_count_from_env();

} // namespace dmi
