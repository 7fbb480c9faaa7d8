#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmi/config.hpp"
#include "dmi/driver.hpp"
#include "dmi/errors.hpp"
#include "dmi/hypervolume.hpp"
#include "dmi/record_io.hpp"

using namespace dmi;

namespace {

ExperimentConfig small_config(std::string_view instance = "dmi-moead-ihv")
{
    ExperimentConfig c;
    c.problem = "zdt31";
    c.n = 4;
    c.initial_size = 20;
    c.max_fes = 15;
    c.batch_size = 5;
    c.interpolation_count = 30;
    c.search_generations = 10;
    c.search_population = 20;
    c.pf_samples = 200;
    c.hyper.starts = 2;
    c.hyper.max_iterations = 40;
    apply_instance(c, instance);
    return c;
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("dmi-driver-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Config, InstanceIds)
{
    for (const auto* id : {"dmi-moead-ihv", "dmi-nsga2-ihv", "dmi-ibea", "moead-ihv", "nsga2", "lhs"}) {
        ExperimentConfig c;
        apply_instance(c, id);
        EXPECT_EQ(c.instance_id(), id);
    }
    ExperimentConfig ablated;
    apply_instance(ablated, "moead-ihv");
    EXPECT_FALSE(ablated.interpolation);
    EXPECT_THROW(apply_instance(ablated, "dmi-cmaes-ihv"), ConfigError);
}

TEST(Config, DefaultsFollowProblemSize)
{
    ExperimentConfig c;
    c.problem = "zdt31";
    c.n = 10;
    EXPECT_EQ(c.resolved_initial_size(), 109u);
    EXPECT_EQ(c.resolved_max_fes(), 150u);
    EXPECT_EQ(c.resolved_search_population(), 100u);
    c.problem = "dtlz71";
    EXPECT_EQ(c.resolved_max_fes(), 250u);
    EXPECT_EQ(c.resolved_search_population(), 105u);
}

TEST(Config, JsonParsingIsStrict)
{
    const auto c = parse_experiment_config(R"({"problem": "dtlz72", "n": 8, "seed": 5, "instance": "dmi-ibea"})");
    EXPECT_EQ(c.problem, "dtlz72");
    EXPECT_EQ(c.n, 8u);
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.optimizer, Optimizer::Ibea);
    EXPECT_THROW(parse_experiment_config(R"({"problme": "zdt3"})"), ConfigError);
    EXPECT_THROW(parse_experiment_config(R"({"n": -3})"), ConfigError);
    EXPECT_THROW(parse_experiment_config("{not json"), ConfigError);
    EXPECT_THROW(parse_experiment_config(R"({"problem": "zdt9"})"), ConfigError);

    const auto round = parse_experiment_config(experiment_config_json(c));
    EXPECT_EQ(experiment_config_json(round), experiment_config_json(c));
}

TEST(Config, SuiteExpansion)
{
    const auto suite = parse_suite_config(R"({"base": {"max_fes": 20},
        "problems": [{"problem": "zdt31", "n": 5}, {"problem": "dtlz71", "n": 6}],
        "instances": ["dmi-moead-ihv", "lhs"], "seeds": 3})");
    const auto configs = suite.expand();
    ASSERT_EQ(configs.size(), 12u);
    EXPECT_EQ(configs.front().max_fes, std::optional<std::size_t>(20));
    EXPECT_EQ(suite.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
}

TEST(Driver, ZeroBudgetKeepsInitialDesign)
{
    auto c = small_config();
    c.max_fes = 0;
    const auto r = run_experiment(c);
    EXPECT_EQ(r.archive.size(), 20u);
    EXPECT_EQ(r.fes, 0u);
    EXPECT_TRUE(r.iterations.empty());
    EXPECT_EQ(r.final_hv, r.initial_hv);
}

TEST(Driver, BudgetIsExactAndArchiveHvMonotone)
{
    for (const auto* instance : {"dmi-moead-ihv", "dmi-nsga2", "dmi-ibea-ihv", "moead-ihv", "lhs"}) {
        const auto r = run_experiment(small_config(instance));
        EXPECT_EQ(r.fes, 15u) << instance;
        EXPECT_EQ(r.archive.size(), 35u) << instance;
        EXPECT_EQ(r.status, "ok");
        for (const auto& s : r.archive) {
            EXPECT_EQ(s.source(), Source::TrueEvaluation);
        }
        double previous = r.initial_hv;
        for (const auto& it : r.iterations) {
            EXPECT_GE(it.archive_hv, previous);
            previous = it.archive_hv;
            EXPECT_EQ(it.batch_x.size(), it.batch_f.size());
        }
        EXPECT_GE(r.final_hv, r.initial_hv);
    }
}

TEST(Driver, AblationSkipsInterpolation)
{
    const auto r = run_experiment(small_config("moead-ihv"));
    ASSERT_FALSE(r.iterations.empty());
    for (const auto& it : r.iterations) {
        EXPECT_EQ(it.interpolated, 0u);
    }
}

TEST(Driver, SameConfigSameRecord)
{
    const auto c = small_config();
    const auto a = run_experiment(c);
    const auto b = run_experiment(c);
    auto strip = [](RunRecord r) {
        r.wall_seconds = 0.0;
        for (auto& it : r.iterations) {
            it.wall_seconds = 0.0;
        }
        return record_to_json(r);
    };
    EXPECT_EQ(strip(a), strip(b));
}

TEST(Driver, RecordJsonRoundTrip)
{
    const auto r = run_experiment(small_config());
    const auto back = record_from_json(record_to_json(r));
    EXPECT_EQ(record_to_json(back), record_to_json(r));
    EXPECT_THROW(record_from_json("{}"), IoError);
}

TEST(Driver, FrontCsvRoundTripsThroughHypervolume)
{
    const auto r = run_experiment(small_config());
    const auto dir = scratch("front");
    emit_front(r, dir / "front.csv");
    const auto rows = read_csv_rows(dir / "front.csv");
    ASSERT_GE(rows.size(), 1u);
    EXPECT_EQ(rows.front().size(), 2);
    EXPECT_EQ(slurp(dir / "front.csv").substr(0, 6), "f1,f2\n");
    EXPECT_TRUE(std::filesystem::exists(dir / "front_pf.csv"));
    EXPECT_NEAR(hypervolume(rows, r.reference), r.final_hv, 1e-9);
    EXPECT_THROW(emit_front(r, dir / "missing" / "deeper" / "front.csv"), IoError);
}

TEST(Driver, SuiteBookkeepingAndDeterminism)
{
    SuiteConfig suite;
    suite.base = small_config();
    suite.base.max_fes = 5;
    suite.problems = {{"zdt31", 4, 0}, {"zdt32", 4, 0}};
    suite.instances = {"moead-ihv", "lhs"};
    suite.seeds = {1, 2, 3};
    const auto dir_a = scratch("suite-a");
    const auto dir_b = scratch("suite-b");
    const auto records = run_suite(suite, dir_a, 2);
    (void)run_suite(suite, dir_b, 1);
    ASSERT_EQ(records.size(), 12u);
    std::size_t files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir_a / "records")) {
        files += entry.path().extension() == ".json" ? 1 : 0;
    }
    EXPECT_EQ(files, 12u);
    EXPECT_TRUE(std::filesystem::exists(dir_a / "records" / "zdt32-n4-lhs-s3.json"));
    const auto summary = slurp(dir_a / "summary.csv");
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 13);
    EXPECT_EQ(summary, slurp(dir_b / "summary.csv"));
    EXPECT_EQ(read_csv_column(dir_a / "summary.csv", "fes"), std::vector<double>(12, 5.0));
}

TEST(Driver, SuiteKeepsFailedRuns)
{
    SuiteConfig suite;
    suite.base = small_config();
    suite.problems = {{"zdt31", 4, 0}, {"wfg21", 3, 2}};
    suite.instances = {"lhs"};
    suite.seeds = {1};
    const auto records = run_suite(suite, scratch("suite-fail"), 1);
    ASSERT_EQ(records.size(), 2u);
    EXPECT_EQ(records[0].status, "ok");
    EXPECT_EQ(records[1].status.rfind("error", 0), 0u);
}

TEST(Driver, ThreadCountFromEnvironment)
{
    ::setenv("DMI_THREADS", "3", 1);
    EXPECT_EQ(thread_count_from_env(), 3u);
    ::unsetenv("DMI_THREADS");
    EXPECT_EQ(thread_count_from_env(), 1u);
}

TEST(Driver, Zdt31FullBudgetImprovesHypervolume)
{
    ExperimentConfig c;
    c.problem = "zdt31";
    c.n = 10;
    c.seed = 3;
    const auto r = run_experiment(c);
    EXPECT_EQ(r.fes, 150u);
    EXPECT_GT(r.final_hv, r.initial_hv);
}
