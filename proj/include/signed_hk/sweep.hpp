#ifndef SIGNED_HK_SWEEP_HPP
#define SIGNED_HK_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_hk/dynamics.hpp"
#include "signed_hk/error.hpp"
#include "signed_hk/format.hpp"
#include "signed_hk/io.hpp"
#include "signed_hk/metrics.hpp"
#include "signed_hk/rng.hpp"
#include "signed_hk/signed_graph.hpp"

namespace signed_hk {

enum class Topology { er, sbm };

inline std::string_view to_string(Topology t) { return t == Topology::er ? "er" : "sbm"; }

inline Topology parse_topology(std::string_view s)
{
    if (s == "er")
        return Topology::er;
    if (s == "sbm")
        return Topology::sbm;
    throw Error(ErrorCode::invalid_parameter, "topology must be 'er' or 'sbm', got '" + std::string(s) + "'");
}

struct SweepConfig {
    std::string label;
    Topology topology = Topology::er;
    std::size_t n = 100;
    std::size_t k = 5; ///< sbm only
    std::vector<double> p1_grid{0.2, 0.4, 0.6, 0.8, 1.0};
    std::vector<double> p2_grid{0.0, 0.2, 0.4, 0.6, 0.8};
    std::vector<double> c_grid{0.05, 0.4, 0.8, 1.2, 1.6};
    std::vector<double> rho_grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0}; ///< sbm only
    std::size_t trials = 100;
    std::uint64_t master_seed = 0;
    double lo = 0.0;
    double hi = 1.0;
    ModelParams params;
    std::size_t workers = 1;

    std::size_t rho_count() const { return topology == Topology::sbm ? rho_grid.size() : 1; }
    std::size_t cell_count() const { return p1_grid.size() * p2_grid.size() * c_grid.size() * rho_count(); }

    void validate() const
    {
        auto bad = [](const std::string& m) { throw Error(ErrorCode::invalid_parameter, m); };
        auto check_grid = [&](const std::vector<double>& g, const char* name, bool unit) {
            if (g.empty())
                bad(std::string(name) + " grid is empty");
            for (double v : g)
                if (!std::isfinite(v) || (unit && (v < 0.0 || v > 1.0)) || (!unit && v <= 0.0))
                    throw Error(unit ? ErrorCode::invalid_probability : ErrorCode::invalid_parameter,
                                std::string(name) + " grid value " + format_double(v) + " out of range");
        };
        check_grid(p1_grid, "p1", true);
        check_grid(p2_grid, "p2", true);
        check_grid(c_grid, "c", false);
        if (topology == Topology::sbm) {
            check_grid(rho_grid, "rho", true);
            if (k < 1 || k > n)
                throw Error(ErrorCode::invalid_group_count, "k must be in [1, n]");
        }
        if (n < 1)
            bad("n must be >= 1");
        if (trials < 1)
            bad("trials must be >= 1");
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
            bad("initial interval needs lo < hi");
        if (workers < 1)
            bad("workers must be >= 1");
        params.validate();
    }
};

namespace detail {

inline std::vector<double> json_grid(const nlohmann::json& j, const char* name)
{
    if (!j.is_array())
        throw Error(ErrorCode::parse_error, std::string("grid '") + name + "' must be an array");
    return j.get<std::vector<double>>();
}

inline void apply_config(SweepConfig& cfg, const nlohmann::json& j)
{
    static const std::vector<std::string> known{"label",  "topology", "n",        "k",      "grids", "trials",
                                                "master_seed", "interval", "params", "workers", "presets"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw Error(ErrorCode::unknown_parameter, "unknown config key '" + key + "'");
    }
    cfg.label = j.value("label", cfg.label);
    if (j.contains("topology"))
        cfg.topology = parse_topology(j.at("topology").get<std::string>());
    cfg.n = j.value("n", cfg.n);
    cfg.k = j.value("k", cfg.k);
    if (j.contains("grids")) {
        for (const auto& [key, value] : j.at("grids").items()) {
            if (key == "p1")
                cfg.p1_grid = json_grid(value, "p1");
            else if (key == "p2")
                cfg.p2_grid = json_grid(value, "p2");
            else if (key == "c")
                cfg.c_grid = json_grid(value, "c");
            else if (key == "rho")
                cfg.rho_grid = json_grid(value, "rho");
            else
                throw Error(ErrorCode::unknown_parameter, "unknown grid '" + key + "'");
        }
    }
    cfg.trials = j.value("trials", cfg.trials);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    if (j.contains("interval")) {
        const auto iv = j.at("interval").get<std::vector<double>>();
        if (iv.size() != 2)
            throw Error(ErrorCode::parse_error, "interval must be [lo, hi]");
        cfg.lo = iv[0];
        cfg.hi = iv[1];
    }
    if (j.contains("params"))
        cfg.params = io::params_from_json(j.at("params"), cfg.params);
    cfg.workers = j.value("workers", cfg.workers);
}

} // namespace detail

/// Parses a config object. With a preset name, the preset's fields are
/// applied on top of the top-level ones.
inline SweepConfig sweep_config_from_json(const nlohmann::json& j, const std::string& preset = {})
{
    SweepConfig cfg;
    try {
        detail::apply_config(cfg, j);
        if (!preset.empty()) {
            if (!j.contains("presets") || !j.at("presets").contains(preset))
                throw Error(ErrorCode::unknown_parameter, "no preset named '" + preset + "'");
            const auto& p = j.at("presets").at(preset);
            if (p.contains("presets"))
                throw Error(ErrorCode::parse_error, "presets cannot nest");
            detail::apply_config(cfg, p);
            if (cfg.label.empty() || !p.contains("label"))
                cfg.label = preset;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

inline nlohmann::json sweep_config_to_json(const SweepConfig& cfg)
{
    nlohmann::json grids = {{"p1", cfg.p1_grid}, {"p2", cfg.p2_grid}, {"c", cfg.c_grid}};
    if (cfg.topology == Topology::sbm)
        grids["rho"] = cfg.rho_grid;
    nlohmann::json j = {{"label", cfg.label},
                        {"topology", std::string(to_string(cfg.topology))},
                        {"n", cfg.n},
                        {"grids", grids},
                        {"trials", cfg.trials},
                        {"master_seed", cfg.master_seed},
                        {"interval", {cfg.lo, cfg.hi}},
                        {"params", io::params_to_json(cfg.params)}};
    if (cfg.topology == Topology::sbm)
        j["k"] = cfg.k;
    return j;
}

struct SweepCell {
    std::size_t p1_index = 0, p2_index = 0, c_index = 0, rho_index = 0;
    double p1 = 0.0, p2 = 0.0, c = 0.0;
    std::optional<double> rho;
};

/// Row-major over (p1, p2, c, rho).
inline SweepCell sweep_cell(const SweepConfig& cfg, std::size_t index)
{
    SweepCell cell;
    const std::size_t nr = cfg.rho_count();
    cell.rho_index = index % nr;
    index /= nr;
    cell.c_index = index % cfg.c_grid.size();
    index /= cfg.c_grid.size();
    cell.p2_index = index % cfg.p2_grid.size();
    cell.p1_index = index / cfg.p2_grid.size();
    cell.p1 = cfg.p1_grid.at(cell.p1_index);
    cell.p2 = cfg.p2_grid[cell.p2_index];
    cell.c = cfg.c_grid[cell.c_index];
    if (cfg.topology == Topology::sbm)
        cell.rho = cfg.rho_grid[cell.rho_index];
    return cell;
}

inline std::uint64_t trial_seed(std::uint64_t master, const SweepCell& cell, std::size_t trial)
{
    return derive_seed(master, "sweep/trial",
                       {cell.p1_index, cell.p2_index, cell.c_index, cell.rho_index, trial});
}

struct TrialRecord {
    std::size_t cell = 0;
    std::size_t trial = 0;
    double p1 = 0.0, p2 = 0.0, c = 0.0;
    std::optional<double> rho;
    std::uint64_t seed = 0;
    bool converged = false;
    std::size_t stopping_time = 0;
    std::size_t m = 0, m_r = 0;
    MetricsReport metrics;
    std::string error; ///< empty unless the trial failed

    bool ok() const { return error.empty(); }

    static std::vector<std::string> csv_columns()
    {
        std::vector<std::string> cols{"cell", "trial", "p1", "p2", "c", "rho", "seed",
                                      "converged", "stopping_time", "m", "m_r"};
        for (auto& c : MetricsReport::csv_columns())
            cols.push_back(c);
        cols.push_back("error");
        return cols;
    }

    std::vector<std::string> to_csv_row() const
    {
        std::vector<std::string> row{std::to_string(cell), std::to_string(trial), format_double(p1),
                                     format_double(p2),    format_double(c),
                                     rho ? format_double(*rho) : std::string(),
                                     std::to_string(seed), converged ? "1" : "0",
                                     std::to_string(stopping_time), std::to_string(m), std::to_string(m_r)};
        if (ok()) {
            for (auto& f : metrics.to_csv_row())
                row.push_back(std::move(f));
        } else {
            row.resize(row.size() + MetricsReport::csv_columns().size());
        }
        std::string e = error;
        std::replace_if(e.begin(), e.end(), [](char ch) { return ch == ',' || ch == '\n' || ch == '\r'; }, ';');
        row.push_back(e);
        return row;
    }

    static TrialRecord from_csv_row(const std::vector<std::string_view>& f)
    {
        if (f.size() != csv_columns().size())
            throw Error(ErrorCode::parse_error, "record row has " + std::to_string(f.size()) + " fields");
        TrialRecord r;
        r.cell = parse_integer<std::size_t>(f[0]);
        r.trial = parse_integer<std::size_t>(f[1]);
        r.p1 = parse_double(f[2]);
        r.p2 = parse_double(f[3]);
        r.c = parse_double(f[4]);
        if (!f[5].empty())
            r.rho = parse_double(f[5]);
        r.seed = parse_integer<std::uint64_t>(f[6]);
        r.converged = f[7] == "1";
        r.stopping_time = parse_integer<std::size_t>(f[8]);
        r.m = parse_integer<std::size_t>(f[9]);
        r.m_r = parse_integer<std::size_t>(f[10]);
        r.error = std::string(f.back());
        if (r.ok()) {
            std::vector<std::string_view> mf(f.begin() + 11, f.end() - 1);
            r.metrics = MetricsReport::from_csv_row(mf);
        }
        return r;
    }
};

struct SweepResult {
    SweepConfig config;
    std::vector<TrialRecord> records; ///< ordered by (cell, trial)
};

/// One trial, fully determined by the config, the cell and the trial index.
inline TrialRecord run_trial(const SweepConfig& cfg, std::size_t cell_index, std::size_t trial)
{
    const auto cell = sweep_cell(cfg, cell_index);
    TrialRecord rec;
    rec.cell = cell_index;
    rec.trial = trial;
    rec.p1 = cell.p1;
    rec.p2 = cell.p2;
    rec.c = cell.c;
    rec.rho = cell.rho;
    rec.seed = trial_seed(cfg.master_seed, cell, trial);
    try {
        auto rng = make_rng(rec.seed);
        auto graph = cfg.topology == Topology::er
                         ? generate_er_signed(cfg.n, cell.p1, cell.p2, rng)
                         : generate_sbm_signed(cfg.n, cfg.k, cell.p1, cell.p2, *cell.rho, rng);
        auto x0 = uniform_opinions(cfg.n, cfg.lo, cfg.hi, rng);
        rec.m = graph.edge_count();
        rec.m_r = graph.repulsive_edge_count();
        auto params = cfg.params;
        params.c = cell.c;
        params.recording = Recording::endpoints;
        auto traj = run(x0, graph, params);
        rec.converged = traj.converged;
        rec.stopping_time = traj.stopping_time;
        rec.metrics = compute_metrics(x0, traj.final_state(), graph.groups(), cell.c);
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

/// Runs every (cell, trial) task on `config.workers` threads. Each task writes
/// only its own pre-sized slot, so the result does not depend on scheduling.
inline SweepResult run_sweep(const SweepConfig& config)
{
    config.validate();
    SweepResult result;
    result.config = config;
    const std::size_t total = config.cell_count() * config.trials;
    result.records.resize(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t task; (task = next.fetch_add(1)) < total;)
            result.records[task] = run_trial(config, task / config.trials, task % config.trials);
    };
    const std::size_t threads = std::min(config.workers, std::max<std::size_t>(total, 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return result;
}

// ---------------------------------------------------------------------------
// Aggregation

struct SummaryStat {
    std::size_t count = 0;
    double mean = std::numeric_limits<double>::quiet_NaN();
    double stddev = std::numeric_limits<double>::quiet_NaN(); ///< sample standard deviation; 0 for one value
};

/// Shifted two-pass mean/std: a constant column gives exactly its value and 0.
inline SummaryStat summarize(const std::vector<double>& v)
{
    SummaryStat s;
    s.count = v.size();
    if (v.empty())
        return s;
    const double shift = v.front();
    double sum = 0.0;
    for (double x : v)
        sum += x - shift;
    const double d = sum / static_cast<double>(v.size());
    s.mean = shift + d;
    double ss = 0.0;
    for (double x : v)
        ss += (x - shift - d) * (x - shift - d);
    s.stddev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    return s;
}

inline const std::vector<std::string>& aggregate_metric_names()
{
    static const std::vector<std::string> names{"opinion_spread", "proportional_spread", "final_width",
                                                "stopping_time"};
    return names;
}

struct AggregateRow {
    std::vector<double> key;
    std::size_t trials = 0; ///< records in the group, failed ones included
    std::size_t errors = 0;
    double converged_fraction = 0.0;
    std::vector<SummaryStat> stats; ///< parallel to aggregate_metric_names()
};

struct AggregateTable {
    std::vector<std::string> group_by;
    std::vector<AggregateRow> rows;

    std::vector<std::string> csv_columns() const
    {
        std::vector<std::string> cols(group_by);
        for (const char* c : {"trials", "errors", "converged_fraction"})
            cols.emplace_back(c);
        for (const auto& m : aggregate_metric_names()) {
            cols.push_back("count_" + m);
            cols.push_back("mean_" + m);
            cols.push_back("std_" + m);
        }
        return cols;
    }

    void write_csv(std::ostream& out) const
    {
        out << join(csv_columns(), ',') << '\n';
        for (const auto& r : rows) {
            std::vector<std::string> f;
            for (double k : r.key)
                f.push_back(format_double(k));
            f.push_back(std::to_string(r.trials));
            f.push_back(std::to_string(r.errors));
            f.push_back(format_double(r.converged_fraction));
            for (const auto& s : r.stats) {
                f.push_back(std::to_string(s.count));
                f.push_back(s.count ? format_double(s.mean) : std::string());
                f.push_back(s.count ? format_double(s.stddev) : std::string());
            }
            out << join(f, ',') << '\n';
        }
    }

    nlohmann::json to_json() const
    {
        nlohmann::json rows_json = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json row;
            for (std::size_t i = 0; i < group_by.size(); ++i)
                row[group_by[i]] = r.key[i];
            row["trials"] = r.trials;
            row["errors"] = r.errors;
            row["converged_fraction"] = r.converged_fraction;
            for (std::size_t m = 0; m < r.stats.size(); ++m) {
                const auto& s = r.stats[m];
                row[aggregate_metric_names()[m]] = {
                    {"count", s.count},
                    {"mean", s.count ? nlohmann::json(s.mean) : nlohmann::json(nullptr)},
                    {"std", s.count ? nlohmann::json(s.stddev) : nlohmann::json(nullptr)}};
            }
            rows_json.push_back(row);
        }
        return {{"group_by", group_by}, {"rows", rows_json}};
    }
};

/// Ratio keys are rounded to 1e-9 so that e.g. 0.2/0.4 and 0.4/0.8 share a row.
inline double ratio_key(double p1, double p2) { return std::round(p2 / p1 * 1e9) / 1e9; }

/// Groups records by the named parameters ("p1", "p2", "c", "rho", "ratio" =
/// p2/p1). Records with p1 = 0 are left out when grouping by ratio. Rows are
/// ordered by key values.
inline AggregateTable aggregate(const SweepResult& result, const std::vector<std::string>& group_by)
{
    for (const auto& g : group_by) {
        const bool known = g == "p1" || g == "p2" || g == "c" || g == "ratio" ||
                           (g == "rho" && result.config.topology == Topology::sbm);
        if (!known)
            throw Error(ErrorCode::unknown_parameter, "cannot group by '" + g + "'");
    }
    const bool by_ratio = std::find(group_by.begin(), group_by.end(), "ratio") != group_by.end();
    struct Acc {
        std::size_t trials = 0, errors = 0, converged = 0;
        std::vector<std::vector<double>> values = std::vector<std::vector<double>>(4);
    };
    std::map<std::vector<double>, Acc> groups;
    for (const auto& r : result.records) {
        if (by_ratio && r.p1 == 0.0)
            continue;
        std::vector<double> key;
        for (const auto& g : group_by) {
            if (g == "p1")
                key.push_back(r.p1);
            else if (g == "p2")
                key.push_back(r.p2);
            else if (g == "c")
                key.push_back(r.c);
            else if (g == "rho")
                key.push_back(r.rho.value_or(std::numeric_limits<double>::quiet_NaN()));
            else
                key.push_back(ratio_key(r.p1, r.p2));
        }
        auto& acc = groups[key];
        ++acc.trials;
        if (!r.ok()) {
            ++acc.errors;
            continue;
        }
        acc.converged += r.converged ? 1 : 0;
        if (r.metrics.opinion_spread)
            acc.values[0].push_back(*r.metrics.opinion_spread);
        if (r.metrics.proportional_spread)
            acc.values[1].push_back(*r.metrics.proportional_spread);
        acc.values[2].push_back(r.metrics.final_width);
        acc.values[3].push_back(static_cast<double>(r.stopping_time));
    }
    AggregateTable table;
    table.group_by = group_by;
    for (auto& [key, acc] : groups) {
        AggregateRow row;
        row.key = key;
        row.trials = acc.trials;
        row.errors = acc.errors;
        const std::size_t ok = acc.trials - acc.errors;
        row.converged_fraction = ok ? static_cast<double>(acc.converged) / static_cast<double>(ok) : 0.0;
        for (const auto& v : acc.values)
            row.stats.push_back(summarize(v));
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline std::vector<std::string> default_group_by(const SweepConfig& cfg)
{
    if (cfg.topology == Topology::sbm)
        return {"p1", "p2", "c", "rho"};
    return {"p1", "p2", "c"};
}

// ---------------------------------------------------------------------------
// Persistence: records.csv, aggregates.csv (or .json) and sweep_meta.json.

enum class ExportFormat { csv, json };

constexpr const char* sweep_schema = "signed_hk.sweep/1";

inline void write_records_csv(std::ostream& out, const SweepResult& result)
{
    out << join(TrialRecord::csv_columns(), ',') << '\n';
    for (const auto& r : result.records)
        out << join(r.to_csv_row(), ',') << '\n';
}

inline nlohmann::json records_json(const SweepResult& result)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : result.records) {
        nlohmann::json j = {{"cell", r.cell}, {"trial", r.trial}, {"p1", r.p1}, {"p2", r.p2}, {"c", r.c},
                            {"rho", r.rho ? nlohmann::json(*r.rho) : nlohmann::json(nullptr)},
                            {"seed", r.seed}, {"converged", r.converged}, {"stopping_time", r.stopping_time},
                            {"m", r.m}, {"m_r", r.m_r}};
        j["metrics"] = r.ok() ? r.metrics.to_json() : nlohmann::json(nullptr);
        j["error"] = r.ok() ? nlohmann::json(nullptr) : nlohmann::json(r.error);
        arr.push_back(std::move(j));
    }
    return arr;
}

inline void export_sweep(const SweepResult& result, const std::filesystem::path& dir,
                         ExportFormat format = ExportFormat::csv, std::vector<std::string> group_by = {})
{
    if (group_by.empty())
        group_by = default_group_by(result.config);
    const auto table = aggregate(result, group_by);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCode::io_failure, "cannot create '" + dir.string() + "': " + ec.message());

    std::ostringstream records, aggregates;
    if (format == ExportFormat::csv) {
        write_records_csv(records, result);
        table.write_csv(aggregates);
        io::write_text(dir / "records.csv", records.str());
        io::write_text(dir / "aggregates.csv", aggregates.str());
    } else {
        io::write_text(dir / "records.json", records_json(result).dump(2) + "\n");
        io::write_text(dir / "aggregates.json", table.to_json().dump(2) + "\n");
    }
    nlohmann::json meta = {{"schema", sweep_schema},
                           {"config", sweep_config_to_json(result.config)},
                           {"record_count", result.records.size()},
                           {"error_count", std::count_if(result.records.begin(), result.records.end(),
                                                         [](const TrialRecord& r) { return !r.ok(); })},
                           {"format", format == ExportFormat::csv ? "csv" : "json"},
                           {"record_columns", TrialRecord::csv_columns()},
                           {"aggregate_group_by", group_by},
                           {"aggregate_columns", table.csv_columns()}};
    io::write_text(dir / "sweep_meta.json", meta.dump(2) + "\n");
}

/// Reads a CSV export back.
inline SweepResult import_sweep(const std::filesystem::path& dir)
{
    SweepResult result;
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(io::read_text(dir / "sweep_meta.json"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::parse_error, (dir / "sweep_meta.json").string() + ": " + e.what());
    }
    if (meta.value("schema", "") != sweep_schema)
        throw Error(ErrorCode::parse_error, "unsupported sweep schema '" + meta.value("schema", "") + "'");
    result.config = sweep_config_from_json(meta.at("config"));

    std::istringstream in(io::read_text(dir / "records.csv"));
    std::string line;
    if (!std::getline(in, line) || line != join(TrialRecord::csv_columns(), ','))
        throw Error(ErrorCode::parse_error, (dir / "records.csv").string() + ": unexpected header");
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        result.records.push_back(TrialRecord::from_csv_row(split(line, ',')));
    }
    return result;
}

// ---------------------------------------------------------------------------

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw Error(ErrorCode::dimension_mismatch, "spearman needs two equal-length samples of size >= 2");
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i)
            idx[i] = i;
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
                ++j;
            const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k)
                r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (rx[i] - mean) * (ry[i] - mean);
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0)
        return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

} // namespace signed_hk

#endif // SIGNED_HK_SWEEP_HPP
