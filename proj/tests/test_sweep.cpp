#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "signed_hk/sweep.hpp"

using namespace signed_hk;

namespace {

template <class F>
ErrorCode code_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::invalid_parameter;
}

std::filesystem::path scratch(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("signed_hk_sweep_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

SweepConfig small_er()
{
    SweepConfig cfg;
    cfg.n = 20;
    cfg.p1_grid = {0.2, 0.6};
    cfg.p2_grid = {0.0, 0.4};
    cfg.c_grid = {0.2, 0.8};
    cfg.trials = 4;
    cfg.master_seed = 11;
    return cfg;
}

} // namespace

TEST(SweepConfig, DefaultsMatchPaperGrids)
{
    SweepConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.n, 100u);
    EXPECT_EQ(cfg.k, 5u);
    EXPECT_EQ(cfg.trials, 100u);
    EXPECT_EQ(cfg.cell_count(), 125u);
    cfg.topology = Topology::sbm;
    EXPECT_EQ(cfg.cell_count(), 750u);
}

TEST(SweepConfig, JsonWithPreset)
{
    auto j = nlohmann::json::parse(R"({
        "topology": "er", "n": 50, "trials": 3, "master_seed": 9,
        "grids": {"p2": [0.0, 0.2]},
        "params": {"tol": 1e-7},
        "presets": {"wide": {"grids": {"p2": [0.0, 1.0]}, "interval": [-1, 1]}}
    })");
    auto base = sweep_config_from_json(j);
    EXPECT_EQ(base.n, 50u);
    EXPECT_EQ(base.p2_grid, (std::vector<double>{0.0, 0.2}));
    EXPECT_EQ(base.params.tol, 1e-7);
    auto wide = sweep_config_from_json(j, "wide");
    EXPECT_EQ(wide.p2_grid, (std::vector<double>{0.0, 1.0}));
    EXPECT_EQ(wide.lo, -1.0);
    EXPECT_EQ(wide.n, 50u);
    EXPECT_EQ(wide.label, "wide");
    EXPECT_EQ(code_of([&] { sweep_config_from_json(j, "nope"); }), ErrorCode::unknown_parameter);
}

TEST(SweepConfig, RejectsBadInput)
{
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"bogus", 1}}); }), ErrorCode::unknown_parameter);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"grids", {{"q", {1}}}}}); }),
              ErrorCode::unknown_parameter);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"grids", {{"p1", {1.5}}}}}); }),
              ErrorCode::invalid_probability);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"grids", {{"c", {0.0}}}}}); }),
              ErrorCode::invalid_parameter);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"trials", 0}}); }), ErrorCode::invalid_parameter);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"interval", {1, 0}}}); }),
              ErrorCode::invalid_parameter);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"topology", "sbm"}, {"n", 3}, {"k", 4}}); }),
              ErrorCode::invalid_group_count);
    EXPECT_EQ(code_of([] { sweep_config_from_json(nlohmann::json{{"n", "many"}}); }), ErrorCode::parse_error);
}

TEST(SweepConfig, JsonRoundTrip)
{
    SweepConfig cfg = small_er();
    cfg.topology = Topology::sbm;
    cfg.rho_grid = {0.1, 0.9};
    cfg.k = 3;
    auto back = sweep_config_from_json(sweep_config_to_json(cfg));
    EXPECT_EQ(sweep_config_to_json(back), sweep_config_to_json(cfg));
}

TEST(Seeds, NoCollisionsAcrossPaperGrids)
{
    for (auto topology : {Topology::er, Topology::sbm}) {
        SweepConfig cfg;
        cfg.topology = topology;
        cfg.p2_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
        std::set<std::uint64_t> seeds;
        for (std::size_t cell = 0; cell < cfg.cell_count(); ++cell)
            for (std::size_t t = 0; t < cfg.trials; ++t)
                seeds.insert(trial_seed(cfg.master_seed, sweep_cell(cfg, cell), t));
        EXPECT_EQ(seeds.size(), cfg.cell_count() * cfg.trials);
    }
}

TEST(Seeds, CellsEnumerateTheFullGrid)
{
    SweepConfig cfg;
    cfg.topology = Topology::sbm;
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>> seen;
    for (std::size_t cell = 0; cell < cfg.cell_count(); ++cell) {
        auto c = sweep_cell(cfg, cell);
        seen.insert({c.p1_index, c.p2_index, c.c_index, c.rho_index});
        EXPECT_EQ(c.rho, cfg.rho_grid[c.rho_index]);
    }
    EXPECT_EQ(seen.size(), cfg.cell_count());
}

TEST(RunSweep, RecordCountAndOrdering)
{
    auto cfg = small_er();
    auto result = run_sweep(cfg);
    ASSERT_EQ(result.records.size(), cfg.cell_count() * cfg.trials);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        EXPECT_EQ(result.records[i].cell, i / cfg.trials);
        EXPECT_EQ(result.records[i].trial, i % cfg.trials);
        EXPECT_TRUE(result.records[i].ok()) << result.records[i].error;
        EXPECT_FALSE(result.records[i].rho);
    }
}

TEST(RunSweep, PureAttractionNeverExpands)
{
    auto cfg = small_er();
    cfg.p2_grid = {0.0};
    cfg.c_grid = {0.05, 0.4, 1.6};
    auto result = run_sweep(cfg);
    for (const auto& r : result.records) {
        ASSERT_TRUE(r.metrics.opinion_spread);
        EXPECT_LE(*r.metrics.opinion_spread, 1.0);
        EXPECT_EQ(r.m_r, 0u);
    }
}

TEST(RunSweep, ByteIdenticalAcrossWorkerCounts)
{
    auto cfg = small_er();
    cfg.topology = Topology::sbm;
    cfg.k = 4;
    cfg.rho_grid = {0.2, 1.0};
    auto a_dir = scratch("w1"), b_dir = scratch("w4");
    export_sweep(run_sweep(cfg), a_dir);
    cfg.workers = 4;
    export_sweep(run_sweep(cfg), b_dir);
    for (const char* f : {"records.csv", "aggregates.csv", "sweep_meta.json"})
        EXPECT_EQ(io::read_text(a_dir / f), io::read_text(b_dir / f)) << f;
}

TEST(RunSweep, FailedTrialsAreIsolated)
{
    auto cfg = small_er();
    cfg.params.variant = Variant::hk_baseline; // rejects repulsive edges
    auto result = run_sweep(cfg);
    std::size_t failed = 0;
    for (const auto& r : result.records) {
        if (r.p2 == 0.0) {
            EXPECT_TRUE(r.ok());
        } else if (!r.ok()) {
            ++failed;
            EXPECT_NE(r.error.find("NegativeEdgePresent"), std::string::npos);
        }
    }
    EXPECT_GT(failed, 0u);
    auto table = aggregate(result, {"p2"});
    ASSERT_EQ(table.rows.size(), 2u);
    EXPECT_EQ(table.rows[0].errors, 0u);
    EXPECT_EQ(table.rows[1].errors, failed);
}

TEST(RunSweep, SbmWithFullMixingReproducesEr)
{
    auto er = small_er();
    auto sbm = er;
    sbm.topology = Topology::sbm;
    sbm.rho_grid = {1.0};
    auto a = run_sweep(er), b = run_sweep(sbm);
    ASSERT_EQ(a.records.size(), b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        EXPECT_EQ(a.records[i].seed, b.records[i].seed);
        EXPECT_EQ(a.records[i].m, b.records[i].m);
        EXPECT_EQ(a.records[i].metrics.final_width, b.records[i].metrics.final_width);
    }
}

TEST(Aggregate, GlobalRowAndUnknownParameter)
{
    auto result = run_sweep(small_er());
    auto table = aggregate(result, {});
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_EQ(table.rows[0].trials, result.records.size());
    EXPECT_EQ(code_of([&] { aggregate(result, {"rho"}); }), ErrorCode::unknown_parameter);
    EXPECT_EQ(code_of([&] { aggregate(result, {"q"}); }), ErrorCode::unknown_parameter);
}

TEST(Aggregate, MatchesRecomputationFromRecords)
{
    auto result = run_sweep(small_er());
    auto table = aggregate(result, {"p1", "p2", "c"});
    ASSERT_EQ(table.rows.size(), 8u);
    for (const auto& row : table.rows) {
        std::vector<double> v;
        for (const auto& r : result.records)
            if (r.p1 == row.key[0] && r.p2 == row.key[1] && r.c == row.key[2])
                v.push_back(*r.metrics.opinion_spread);
        ASSERT_EQ(v.size(), 4u);
        double mean = 0;
        for (double x : v)
            mean += x / 4.0;
        double var = 0;
        for (double x : v)
            var += (x - mean) * (x - mean) / 3.0;
        EXPECT_NEAR(row.stats[0].mean, mean, 1e-12);
        EXPECT_NEAR(row.stats[0].stddev, std::sqrt(var), 1e-12);
    }
    EXPECT_TRUE(std::is_sorted(table.rows.begin(), table.rows.end(),
                               [](const AggregateRow& a, const AggregateRow& b) { return a.key < b.key; }));
}

TEST(Aggregate, ConstantColumnHasZeroStd)
{
    auto s = summarize({0.1, 0.1, 0.1, 0.1, 0.1});
    EXPECT_EQ(s.mean, 0.1);
    EXPECT_EQ(s.stddev, 0.0);
    auto one = summarize({3.0});
    EXPECT_EQ(one.stddev, 0.0);
    EXPECT_EQ(summarize({}).count, 0u);
}

TEST(Aggregate, RatioKeyMergesEqualRatiosAndSkipsZeroP1)
{
    SweepConfig cfg = small_er();
    cfg.p1_grid = {0.0, 0.4, 0.8};
    cfg.p2_grid = {0.2, 0.4};
    cfg.c_grid = {0.4};
    cfg.trials = 2;
    auto result = run_sweep(cfg);
    auto table = aggregate(result, {"ratio"});
    // ratios 0.5 (0.2/0.4), 0.25, 1.0 (0.4/0.4) and 0.5 (0.4/0.8)
    ASSERT_EQ(table.rows.size(), 3u);
    EXPECT_EQ(table.rows[0].key[0], 0.25);
    EXPECT_EQ(table.rows[1].key[0], 0.5);
    EXPECT_EQ(table.rows[1].trials, 4u);
    EXPECT_EQ(table.rows[2].key[0], 1.0);
}

TEST(Export, RoundTripReproducesAggregates)
{
    auto cfg = small_er();
    cfg.topology = Topology::sbm;
    cfg.k = 4;
    cfg.rho_grid = {0.5};
    auto result = run_sweep(cfg);
    auto dir = scratch("roundtrip");
    export_sweep(result, dir);
    auto back = import_sweep(dir);
    ASSERT_EQ(back.records.size(), result.records.size());
    std::ostringstream a, b;
    aggregate(result, {"p2", "c"}).write_csv(a);
    aggregate(back, {"p2", "c"}).write_csv(b);
    EXPECT_EQ(a.str(), b.str());
    for (std::size_t i = 0; i < result.records.size(); ++i)
        EXPECT_EQ(back.records[i].to_csv_row(), result.records[i].to_csv_row());
}

TEST(Export, EmptyResultIsHeaderOnly)
{
    SweepResult empty;
    std::ostringstream out;
    write_records_csv(out, empty);
    EXPECT_EQ(out.str(), join(TrialRecord::csv_columns(), ',') + "\n");
}

TEST(Export, JsonFormat)
{
    auto result = run_sweep(small_er());
    auto dir = scratch("json");
    export_sweep(result, dir, ExportFormat::json);
    auto records = nlohmann::json::parse(io::read_text(dir / "records.json"));
    EXPECT_EQ(records.size(), result.records.size());
    auto meta = nlohmann::json::parse(io::read_text(dir / "sweep_meta.json"));
    EXPECT_EQ(meta["schema"], "signed_hk.sweep/1");
    EXPECT_EQ(meta["format"], "json");
    auto agg = nlohmann::json::parse(io::read_text(dir / "aggregates.json"));
    EXPECT_EQ(agg["rows"].size(), 8u);
}

TEST(Export, UnwritableDestination)
{
    auto file = scratch("blocker");
    io::write_text(file, "x");
    EXPECT_EQ(code_of([&] { export_sweep(run_sweep(small_er()), file / "sub"); }), ErrorCode::io_failure);
    EXPECT_EQ(code_of([&] { import_sweep(scratch("missing")); }), ErrorCode::io_failure);
}

TEST(Spearman, KnownValues)
{
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
    EXPECT_DOUBLE_EQ(spearman({1, 2, 3}, {5, 5, 5}), 0.0);
    // ranks (1, 2.5, 2.5, 4) vs (1, 2, 3, 4)
    EXPECT_NEAR(spearman({1, 2, 2, 3}, {1, 2, 3, 4}), 4.5 / std::sqrt(4.5 * 5.0), 1e-15);
    EXPECT_EQ(code_of([] { spearman({1}, {1}); }), ErrorCode::dimension_mismatch);
}
