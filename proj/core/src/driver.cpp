#include "dmi/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "dmi/batch.hpp"
#include "dmi/dominance.hpp"
#include "dmi/errors.hpp"
#include "dmi/hypervolume.hpp"
#include "dmi/manifold.hpp"
#include "dmi/record_io.hpp"
#include "dmi/sampling.hpp"
#include "dmi/search.hpp"

namespace dmi {

namespace {

constexpr double kDuplicateTolerance = 1e-6;
constexpr std::uint64_t kFrontSeed = 0x9e3779b97f4a7c15ULL;

enum Stream : std::uint64_t { kDesign = 1, kIterationBase = 1000 };
enum Task : std::uint64_t { kHyper = 0, kSearch = 1, kInterpolate = 2, kFill = 3 };

bool near_any(const Vector& u, const std::vector<Vector>& pool)
{
    return std::any_of(pool.begin(), pool.end(),
                       [&](const Vector& p) { return (p - u).norm() <= kDuplicateTolerance; });
}

SurrogateBank fit_surrogates(const Matrix& x, const Matrix& y, const RandomSource& stream, HyperparameterSearch hyper,
                             std::size_t iteration)
{
    try {
        auto rng = stream.child(kHyper);
        return SurrogateBank::fit(x, y, rng, hyper);
    } catch (const IllConditioned& e) {
        spdlog::warn("iteration {}: {}; retrying with doubled jitter", iteration, e.what());
    }
    hyper.jitter *= 2.0;
    try {
        auto rng = stream.child(kHyper);
        return SurrogateBank::fit(x, y, rng, hyper);
    } catch (const IllConditioned& e) {
        throw IllConditioned("surrogate fit failed at iteration " + std::to_string(iteration) + ": " + e.what());
    }
}

Matrix rows_to_matrix(const std::vector<Vector>& rows)
{
    Matrix out(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return out;
}

void finalize(RunRecord& record, const Population& true_front)
{
    record.front = nondominated_filter(record.archive);
    record.final_hv = hypervolume(record.front, record.reference);
    const auto front_f = record.front.objective_vectors();
    const auto pf_f = true_front.objective_vectors();
    record.coverage = segment_coverage(front_f, pf_f);
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Population reference_front(const ExperimentConfig& config)
{
    const auto spec = problem_from_id(config.problem, config.n, config.m);
    RandomSource rng(kFrontSeed);
    return sample_true_pf(spec, config.pf_samples, rng);
}

RunRecord run_dmi(const ExperimentConfig& config)
{
    config.validate();
    const auto spec = problem_from_id(config.problem, config.n, config.m);
    const std::size_t n = spec.n;
    const std::size_t m = spec.m;
    const Bounds unit = Bounds::unit(n);

    RunRecord record;
    record.config = config;
    record.config.m = m;
    const Population true_front = reference_front(config);
    record.reference = experiment_reference(true_front.objective_vectors());

    RandomSource root(config.seed);
    std::vector<Vector> archive_unit;
    {
        auto design_rng = root.child(kDesign);
        const auto design = latin_hypercube(config.resolved_initial_size(), unit, design_rng);
        for (const auto& p : design.points) {
            const Vector x = spec.bounds.from_unit(p.coords());
            record.archive.push_back(EvaluatedSolution(DecisionVector(x), evaluate(spec, x), Source::TrueEvaluation));
            archive_unit.push_back(p.coords());
        }
    }
    record.initial_hv = hypervolume(record.archive, record.reference);

    EvaluationBudget budget(config.resolved_max_fes());
    SearchConfig search;
    search.population_size = config.resolved_search_population();
    search.generations = config.search_generations;
    InterpolationConfig interp{config.interpolation_count, config.step_scale};

    WeightSet weights;
    if (config.selector == Selector::Native && config.optimizer != Optimizer::Ibea) {
        weights = das_dennis_weights(m, das_dennis_divisions(m, search.population_size), search.neighborhood_size);
    }

    for (std::size_t iteration = 1; !budget.exhausted(); ++iteration) {
        const auto started = std::chrono::steady_clock::now();
        const RandomSource stream = root.child(kIterationBase + iteration);
        IterationLog log;
        log.iteration = iteration;

        const Matrix x_train = rows_to_matrix(archive_unit);
        const Matrix y_train = rows_to_matrix(record.archive.objective_vectors());
        const SurrogateBank bank = fit_surrogates(x_train, y_train, stream, config.hyper, iteration);
        for (const auto& model : bank.models()) {
            log.kernels.push_back(model.params());
        }

        auto search_rng = stream.child(kSearch);
        const Population optimized = run_optimizer(config.optimizer, bank, unit, search, search_rng);

        Population candidates = optimized;
        if (config.interpolation) {
            auto interp_rng = stream.child(kInterpolate);
            const Population interpolated = interpolate(optimized, bank, interp, unit, archive_unit, interp_rng);
            log.interpolated = interpolated.size();
            candidates.append(interpolated);
        }
        log.candidates = candidates.size();

        const std::size_t quota = std::min(config.batch_size, budget.remaining());
        BatchSelection selection;
        if (config.selector == Selector::Ihv) {
            selection = select_ihv(candidates, quota);
        } else if (config.optimizer == Optimizer::Nsga2) {
            selection = select_nsga2_native(candidates, quota, weights);
        } else if (config.optimizer == Optimizer::Ibea) {
            selection = select_ibea_native(candidates, quota, search.kappa);
        } else {
            const auto archive_f = record.archive.objective_vectors();
            Vector ideal = archive_f.front();
            for (const auto& f : archive_f) {
                ideal = ideal.cwiseMin(f);
            }
            for (const auto& s : candidates) {
                ideal = ideal.cwiseMin(s.f().values());
            }
            const auto previous = subproblem_bests(archive_f, weights, ideal);
            selection = select_moead_native(candidates, quota, weights, previous, ideal);
        }

        std::vector<Vector> batch_unit;
        for (auto idx : selection.ranking) {
            if (batch_unit.size() >= quota) {
                break;
            }
            const Vector& u = candidates[idx].x().coords();
            if (!near_any(u, archive_unit) && !near_any(u, batch_unit)) {
                batch_unit.push_back(u);
            }
        }
        if (batch_unit.size() < quota) {
            auto fill_rng = stream.child(kFill);
            while (batch_unit.size() < quota) {
                const auto fresh = latin_hypercube(quota - batch_unit.size(), unit, fill_rng);
                for (const auto& p : fresh.points) {
                    if (!near_any(p.coords(), archive_unit) && !near_any(p.coords(), batch_unit)) {
                        batch_unit.push_back(p.coords());
                        ++log.filled;
                    }
                }
            }
            spdlog::info("iteration {}: filled {} batch slots with fresh Latin hypercube points", iteration, log.filled);
        }

        for (const auto& u : batch_unit) {
            const Vector x = spec.bounds.from_unit(u);
            const auto f = evaluate_true(spec, DecisionVector(x), budget);
            record.archive.push_back(EvaluatedSolution(DecisionVector(x), f, Source::TrueEvaluation));
            archive_unit.push_back(u);
            log.batch_x.push_back(x);
            log.batch_f.push_back(f.values());
        }

        log.fes = budget.consumed();
        log.archive_hv = hypervolume(record.archive, record.reference);
        log.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        spdlog::debug("{} {} seed {}: iteration {} fes {} hv {}", config.problem, config.instance_id(), config.seed,
                      iteration, log.fes, log.archive_hv);
        record.iterations.push_back(std::move(log));
    }

    record.fes = budget.consumed();
    finalize(record, true_front);
    return record;
}

RunRecord run_lhs_baseline(const ExperimentConfig& config)
{
    config.validate();
    const auto spec = problem_from_id(config.problem, config.n, config.m);
    RunRecord record;
    record.config = config;
    record.config.m = spec.m;
    const Population true_front = reference_front(config);
    record.reference = experiment_reference(true_front.objective_vectors());

    RandomSource root(config.seed);
    auto rng = root.child(kDesign);
    const std::size_t initial = config.resolved_initial_size();
    EvaluationBudget budget(config.resolved_max_fes());
    const auto design = latin_hypercube(initial + budget.maximum(), spec.bounds, rng);
    for (std::size_t i = 0; i < design.size(); ++i) {
        const auto& x = design.points[i];
        const auto f = i < initial ? evaluate(spec, x.coords()) : evaluate_true(spec, x, budget);
        record.archive.push_back(EvaluatedSolution(x, f, Source::TrueEvaluation));
        if (i + 1 == initial) {
            record.initial_hv = hypervolume(record.archive, record.reference);
        }
    }
    record.fes = budget.consumed();
    finalize(record, true_front);
    return record;
}

RunRecord run_experiment(const ExperimentConfig& config)
{
    const auto started = std::chrono::steady_clock::now();
    RunRecord record = config.lhs_only ? run_lhs_baseline(config) : run_dmi(config);
    record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

void write_summary_csv(const std::vector<RunRecord>& records, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "problem,n,m,instance,seed,final_hv,initial_hv,fes,segments_covered,segments_total,status\n";
    for (const auto& r : records) {
        out << r.config.problem << ',' << r.config.n << ',' << r.config.objectives() << ',' << r.config.instance_id()
            << ',' << r.config.seed << ',' << format_double(r.final_hv) << ',' << format_double(r.initial_hv) << ','
            << r.fes << ',' << r.coverage.covered << ',' << r.coverage.total << ',' << r.status << '\n';
    }
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

std::vector<RunRecord> run_suite(const SuiteConfig& suite, const std::filesystem::path& out_dir, std::size_t threads)
{
    const auto configs = suite.expand();
    std::vector<RunRecord> records(configs.size());
    const auto record_dir = out_dir / "records";
    std::error_code ec;
    std::filesystem::create_directories(record_dir, ec);
    if (ec) {
        throw IoError("cannot create " + record_dir.string() + ": " + ec.message());
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (auto i = next.fetch_add(1); i < configs.size(); i = next.fetch_add(1)) {
            const auto& c = configs[i];
            try {
                records[i] = run_experiment(c);
            } catch (const std::exception& e) {
                spdlog::error("{} {} seed {} failed: {}", c.problem, c.instance_id(), c.seed, e.what());
                RunRecord failed;
                failed.config = c;
                failed.status = std::string("error: ") + e.what();
                std::replace(failed.status.begin(), failed.status.end(), ',', ';');
                std::replace(failed.status.begin(), failed.status.end(), '\n', ' ');
                records[i] = std::move(failed);
            }
            const auto name =
                c.problem + "-n" + std::to_string(c.n) + "-" + c.instance_id() + "-s" + std::to_string(c.seed) + ".json";
            write_record(records[i], record_dir / name);
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, configs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }

    write_summary_csv(records, out_dir / "summary.csv");
    return records;
}

void emit_front(const RunRecord& record, const std::filesystem::path& path)
{
    require(!record.front.empty(), "emit_front: record has an empty front");
    const auto m = record.front.num_objectives();
    std::vector<std::string> header;
    for (std::size_t i = 1; i <= m; ++i) {
        header.push_back("f" + std::to_string(i));
    }
    write_csv_rows(path, header, record.front.objective_vectors());

    auto pf_path = path;
    pf_path.replace_filename(path.stem().string() + "_pf.csv");
    write_csv_rows(pf_path, header, reference_front(record.config).objective_vectors());
}

std::size_t thread_count_from_env()
{
    const char* value = std::getenv("DMI_THREADS");
    if (value == nullptr || *value == '\0') {
        return 1;
    }
    char* end = nullptr;
    const long parsed = std::strtol(value, &end, 10);
    if (end == value || *end != '\0' || parsed < 1) {
        throw ConfigError(std::string("DMI_THREADS must be a positive integer, got '") + value + "'");
    }
    return static_cast<std::size_t>(parsed);
}

} // namespace dmi
