// signed_hk command-line entry point.
//
// Exit status: 0 success, 1 usage or validation error, 2 a proven-result
// check failed in `verify`.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "signed_hk/dynamics.hpp"
#include "signed_hk/io.hpp"
#include "signed_hk/metrics.hpp"
#include "signed_hk/signed_graph.hpp"
#include "signed_hk/sweep.hpp"
#include "signed_hk/verify.hpp"

namespace fs = std::filesystem;
using namespace signed_hk;

namespace {

struct GeneratorOptions {
    std::string topology = "er";
    std::size_t n = 100;
    double p1 = 0.25;
    double p2 = 0.0;
    double rho = 1.0;
    std::size_t k = 5;
    std::string storage = "auto";
};

void add_generator_options(CLI::App* cmd, GeneratorOptions& g)
{
    cmd->add_option("--n", g.n, "number of nodes n")->check(CLI::PositiveNumber);
    cmd->add_option("--p1", g.p1, "attractive layer probability p1")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--p2", g.p2, "repulsive layer probability p2")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--rho", g.rho, "cross-group scaling rho (sbm)")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--k", g.k, "number of groups k (sbm)")->check(CLI::PositiveNumber);
    cmd->add_option("--storage", g.storage, "adjacency storage")->check(CLI::IsMember({"auto", "dense", "sparse"}));
}

Storage parse_storage(const std::string& s)
{
    return s == "dense" ? Storage::dense : s == "sparse" ? Storage::sparse : Storage::automatic;
}

SignedGraph generate(const GeneratorOptions& g, Rng& rng)
{
    const auto storage = parse_storage(g.storage);
    if (g.topology == "sbm")
        return generate_sbm_signed(g.n, g.k, g.p1, g.p2, g.rho, rng, storage);
    return generate_er_signed(g.n, g.p1, g.p2, rng, storage);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed)
{
    const auto s = seed ? *seed : entropy_seed();
    std::cout << "seed: " << s << '\n';
    return s;
}

void add_seed_option(CLI::App* cmd, std::optional<std::uint64_t>& seed)
{
    cmd->add_option("--seed", seed, "master seed (drawn from entropy and printed when omitted)");
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw Error(ErrorCode::io_failure, "cannot create '" + dir.string() + "': " + ec.message());
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bounded-confidence opinion dynamics on signed networks"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");
    app.failure_message(CLI::FailureMessage::help);

    // generate
    GeneratorOptions gen;
    std::optional<std::uint64_t> gen_seed;
    std::string gen_out;
    auto* generate_cmd = app.add_subcommand("generate", "write a random signed graph");
    generate_cmd->add_option("--topology", gen.topology, "er or sbm")->check(CLI::IsMember({"er", "sbm"}));
    add_generator_options(generate_cmd, gen);
    add_seed_option(generate_cmd, gen_seed);
    generate_cmd->add_option("--out", gen_out, "output graph file")->required();

    // simulate
    GeneratorOptions sim_gen;
    std::optional<std::uint64_t> sim_seed;
    std::string sim_graph, sim_out = "simulation", sim_variant = "scaled", sim_recording = "all";
    bool sim_er = false, sim_sbm = false, sim_cycles = false;
    double sim_lo = 0.0, sim_hi = 1.0, sim_cycle_res = 1e-12;
    ModelParams sim_params;
    auto* simulate_cmd = app.add_subcommand("simulate", "run one trajectory");
    auto* graph_opt = simulate_cmd->add_option("--graph", sim_graph, "graph file")->check(CLI::ExistingFile);
    auto* er_flag = simulate_cmd->add_flag("--er", sim_er, "generate a signed ER graph");
    auto* sbm_flag = simulate_cmd->add_flag("--sbm", sim_sbm, "generate a signed SBM graph");
    graph_opt->excludes(er_flag)->excludes(sbm_flag);
    er_flag->excludes(sbm_flag);
    add_generator_options(simulate_cmd, sim_gen);
    simulate_cmd->add_option("--c", sim_params.c, "confidence bound c")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--tol", sim_params.tol, "convergence tolerance")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--max-iter", sim_params.max_iter, "iteration cap");
    simulate_cmd->add_option("--variant", sim_variant, "scaled, naive or hk")
        ->check(CLI::IsMember({"scaled", "naive", "hk"}));
    simulate_cmd->add_option("--lo", sim_lo, "lower end of the initial opinion interval");
    simulate_cmd->add_option("--hi", sim_hi, "upper end of the initial opinion interval");
    simulate_cmd->add_option("--recording", sim_recording, "all or endpoints")
        ->check(CLI::IsMember({"all", "endpoints"}));
    simulate_cmd->add_flag("--detect-cycles", sim_cycles, "report recurrent states");
    simulate_cmd->add_option("--cycle-resolution", sim_cycle_res, "max-norm distance treated as a revisit")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_flag("!--no-early-stop", sim_params.stop_on_convergence, "run the full iteration budget");
    add_seed_option(simulate_cmd, sim_seed);
    simulate_cmd->add_option("--out", sim_out, "output directory");

    // sweep
    std::string sweep_config, sweep_preset, sweep_out = "sweep", sweep_format = "csv";
    std::optional<std::size_t> sweep_workers, sweep_trials, sweep_n;
    std::optional<std::uint64_t> sweep_seed;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep");
    sweep_cmd->add_option("--config", sweep_config, "sweep config (JSON)")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--preset", sweep_preset, "named preset inside the config");
    sweep_cmd->add_option("--workers", sweep_workers, "worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--trials", sweep_trials, "trials per cell")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--n", sweep_n, "number of nodes n")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_seed_option(sweep_cmd, sweep_seed);
    sweep_cmd->add_option("--out", sweep_out, "output directory");

    // metrics
    std::string met_traj, met_graph, met_out;
    double met_c = 0.2;
    std::optional<double> met_gap;
    std::optional<std::uint64_t> met_seed;
    auto* metrics_cmd = app.add_subcommand("metrics", "summarize a trajectory file");
    metrics_cmd->add_option("--trajectory", met_traj, "trajectory CSV")->required()->check(CLI::ExistingFile);
    metrics_cmd->add_option("--graph", met_graph, "graph file (supplies groups)")->check(CLI::ExistingFile);
    metrics_cmd->add_option("--c", met_c, "confidence bound c")->check(CLI::PositiveNumber);
    metrics_cmd->add_option("--gap", met_gap, "cluster gap threshold (default c/2)")->check(CLI::PositiveNumber);
    metrics_cmd->add_option("--out", met_out, "write the report as JSON");
    add_seed_option(metrics_cmd, met_seed);

    // verify
    std::vector<std::string> ver_suite{"all"};
    std::string ver_out;
    std::optional<std::uint64_t> ver_seed;
    verify::SuiteOptions ver_opts;
    auto* verify_cmd = app.add_subcommand("verify", "run the analytical-result checks");
    verify_cmd->add_option("--suite", ver_suite, "checks to run: all or any of average, two_node, order, "
                                                 "extreme_gap, gap_width, width, conjecture, naive")
        ->delimiter(',');
    verify_cmd->add_option("--trials", ver_opts.average_trials, "instances for the random checks")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--out", ver_out, "write the JSON report here");
    add_seed_option(verify_cmd, ver_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (generate_cmd->parsed()) {
            auto rng = make_rng(resolve_seed(gen_seed));
            auto graph = generate(gen, rng);
            io::save_graph(gen_out, graph);
            std::cout << "graph: n=" << graph.size() << " m=" << graph.edge_count()
                      << " m_r=" << graph.repulsive_edge_count() << " -> " << gen_out << '\n';
            return 0;
        }

        if (simulate_cmd->parsed()) {
            if (sim_graph.empty() && !sim_er && !sim_sbm)
                throw Error(ErrorCode::invalid_parameter, "give --graph FILE, --er or --sbm");
            if (!(sim_lo < sim_hi))
                throw Error(ErrorCode::invalid_parameter, "--lo must be below --hi");
            sim_params.variant = parse_variant(sim_variant);
            sim_params.recording = sim_recording == "all" ? Recording::all : Recording::endpoints;
            sim_params.cycle.enabled = sim_cycles;
            sim_params.cycle.resolution = sim_cycle_res;
            sim_params.validate();

            const auto seed = resolve_seed(sim_seed);
            auto rng = make_rng(seed);
            std::optional<SignedGraph> graph;
            if (!sim_graph.empty()) {
                graph = io::load_graph(sim_graph, parse_storage(sim_gen.storage));
            } else {
                sim_gen.topology = sim_sbm ? "sbm" : "er";
                graph = generate(sim_gen, rng);
            }
            auto x0 = uniform_opinions(graph->size(), sim_lo, sim_hi, rng);
            auto traj = run(x0, *graph, sim_params);
            auto report = compute_metrics(traj.initial(), traj.final_state(), graph->groups(), sim_params.c);

            const fs::path dir(sim_out);
            ensure_dir(dir);
            std::ostringstream csv;
            io::write_trajectory_csv(csv, traj);
            io::write_text(dir / "trajectory.csv", csv.str());
            auto meta = io::trajectory_metadata(traj, seed, *graph);
            meta["metrics"] = report.to_json();
            io::write_text(dir / "trajectory_meta.json", meta.dump(2) + "\n");
            if (sim_graph.empty())
                io::save_graph(dir / "graph.txt", *graph);

            std::cout << "converged: " << (traj.converged ? "yes" : "no") << " T=" << traj.stopping_time
                      << " final_width=" << format_double(report.final_width)
                      << " clusters=" << report.cluster_count << " regime=" << to_string(report.regime) << '\n';
            if (traj.cycle_detected)
                std::cout << "cycle: t=" << traj.cycle_time << " period=" << traj.cycle_period << '\n';
            std::cout << "output: " << dir.string() << '\n';
            return 0;
        }

        if (sweep_cmd->parsed()) {
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(io::read_text(sweep_config));
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::parse_error, sweep_config + ": " + e.what());
            }
            auto cfg = sweep_config_from_json(j, sweep_preset);
            if (sweep_seed)
                cfg.master_seed = *sweep_seed;
            else if (!j.contains("master_seed"))
                cfg.master_seed = resolve_seed(std::nullopt);
            if (sweep_workers)
                cfg.workers = *sweep_workers;
            if (sweep_trials)
                cfg.trials = *sweep_trials;
            if (sweep_n)
                cfg.n = *sweep_n;
            cfg.validate();
            if (sweep_seed || j.contains("master_seed"))
                std::cout << "seed: " << cfg.master_seed << '\n';

            auto result = run_sweep(cfg);
            export_sweep(result, sweep_out, sweep_format == "csv" ? ExportFormat::csv : ExportFormat::json);
            const auto errors = std::count_if(result.records.begin(), result.records.end(),
                                              [](const TrialRecord& r) { return !r.ok(); });
            std::cout << "sweep: " << cfg.cell_count() << " cells x " << cfg.trials << " trials, " << errors
                      << " failed -> " << sweep_out << '\n';
            return 0;
        }

        if (metrics_cmd->parsed()) {
            resolve_seed(met_seed);
            std::istringstream in(io::read_text(met_traj));
            auto table = io::read_trajectory_csv(in);
            std::optional<GroupAssignment> groups;
            if (!met_graph.empty()) {
                auto graph = io::load_graph(met_graph);
                if (graph.size() != table.states.front().size())
                    throw Error(ErrorCode::dimension_mismatch, "graph and trajectory sizes differ");
                groups = graph.groups();
            }
            MetricsOptions opts;
            opts.gap_threshold = met_gap;
            auto report = compute_metrics(table.states.front(), table.states.back(), groups, met_c, opts);
            if (!met_out.empty())
                io::write_text(met_out, report.to_json().dump(2) + "\n");
            std::cout << "final_width=" << format_double(report.final_width);
            if (report.opinion_spread)
                std::cout << " opinion_spread=" << format_double(*report.opinion_spread);
            if (report.proportional_spread)
                std::cout << " proportional_spread=" << format_double(*report.proportional_spread);
            std::cout << " clusters=" << report.cluster_count << " regime=" << to_string(report.regime) << '\n';
            return 0;
        }

        if (verify_cmd->parsed()) {
            ver_opts.seed = resolve_seed(ver_seed);
            ver_opts.conjecture_trials = ver_opts.average_trials;
            auto reports = verify::run_suite(ver_suite, ver_opts);
            nlohmann::json out = nlohmann::json::array();
            for (const auto& r : reports) {
                out.push_back(r.to_json());
                std::cout << (r.passed() ? "PASS " : (r.proven ? "FAIL " : "FINDING ")) << r.name << " ("
                          << r.instances << " instances, " << r.violations.size() << " violations)\n";
            }
            if (!ver_out.empty())
                io::write_text(ver_out, out.dump(2) + "\n");
            return verify::proven_checks_passed(reports) ? 0 : 2;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
