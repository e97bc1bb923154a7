#ifndef SIGNED_HK_IO_HPP
#define SIGNED_HK_IO_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_hk/dynamics.hpp"
#include "signed_hk/error.hpp"
#include "signed_hk/format.hpp"
#include "signed_hk/signed_graph.hpp"

namespace signed_hk::io {

// Graph edge list:
//
//   n=<int>
//   groups=<size>,<size>,...      (optional, contiguous blocks)
//   <i> <j> <sign>                 one per unordered pair, sign in {-1, 1}
//
// Diagonal entries are implicit. Blank lines and lines starting with '#' are
// ignored on input.

inline void write_graph(std::ostream& out, const SignedGraph& graph)
{
    out << "n=" << graph.size() << '\n';
    if (const auto& groups = graph.groups()) {
        if (!groups->is_contiguous())
            throw Error(ErrorCode::invalid_parameter, "graph file format only stores contiguous groups");
        out << "groups=";
        const auto sizes = groups->sizes();
        for (std::size_t g = 0; g < sizes.size(); ++g)
            out << (g ? "," : "") << sizes[g];
        out << '\n';
    }
    for (const auto& e : graph.edges())
        out << e.i << ' ' << e.j << ' ' << e.sign << '\n';
}

inline SignedGraph read_graph(std::istream& in, Storage storage = Storage::automatic)
{
    std::string line;
    std::optional<std::size_t> n;
    std::optional<GroupAssignment> groups;
    std::vector<SignedEdge> edges;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#')
            continue;
        if (!n) {
            if (text.substr(0, 2) != "n=")
                fail("expected header 'n=<int>'");
            n = parse_integer<std::size_t>(text.substr(2));
            continue;
        }
        if (text.substr(0, 7) == "groups=") {
            if (groups || !edges.empty())
                fail("groups line must directly follow the header");
            std::vector<std::size_t> sizes;
            for (auto field : split(text.substr(7), ','))
                sizes.push_back(parse_integer<std::size_t>(trim(field)));
            groups = GroupAssignment::from_sizes(sizes);
            if (groups->node_count() != *n)
                fail("group sizes sum to " + std::to_string(groups->node_count()) + ", expected " +
                     std::to_string(*n));
            continue;
        }
        std::istringstream fields{std::string(text)};
        std::string si, sj, ss, extra;
        if (!(fields >> si >> sj >> ss) || (fields >> extra))
            fail("expected 'i j sign'");
        if (!ss.empty() && ss.front() == '+')
            ss.erase(0, 1);
        const int sign = parse_integer<int>(ss);
        if (sign != 1 && sign != -1)
            fail("sign must be -1 or 1");
        edges.push_back({parse_integer<std::size_t>(si), parse_integer<std::size_t>(sj), sign});
    }
    if (!n)
        throw Error(ErrorCode::parse_error, "missing 'n=' header");
    return SignedGraph(*n, edges, std::move(groups), storage);
}

inline void save_graph(const std::filesystem::path& path, const SignedGraph& graph)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorCode::io_failure, "cannot open '" + path.string() + "' for writing");
    write_graph(out, graph);
    if (!out)
        throw Error(ErrorCode::io_failure, "write failed for '" + path.string() + "'");
}

inline SignedGraph load_graph(const std::filesystem::path& path, Storage storage = Storage::automatic)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_failure, "cannot open '" + path.string() + "'");
    try {
        return read_graph(in, storage);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.message());
    }
}

// Trajectory CSV: header t,node_0,...,node_{n-1}; one row per recorded state.

inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj)
{
    const std::size_t n = traj.states.empty() ? 0 : traj.states.front().size();
    out << 't';
    for (std::size_t i = 0; i < n; ++i)
        out << ",node_" << i;
    out << '\n';
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        out << traj.times[k];
        for (double v : traj.states[k])
            out << ',' << format_double(v);
        out << '\n';
    }
}

struct TrajectoryTable {
    std::vector<std::size_t> times;
    std::vector<OpinionState> states;
};

inline TrajectoryTable read_trajectory_csv(std::istream& in)
{
    TrajectoryTable table;
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::parse_error, "empty trajectory file");
    const auto header = split(trim(line), ',');
    if (header.empty() || header.front() != "t")
        throw Error(ErrorCode::parse_error, "trajectory header must start with 't'");
    const std::size_t n = header.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        if (header[i + 1] != "node_" + std::to_string(i))
            throw Error(ErrorCode::parse_error, "unexpected column '" + std::string(header[i + 1]) + "'");
    while (std::getline(in, line)) {
        const auto text = trim(line);
        if (text.empty())
            continue;
        const auto fields = split(text, ',');
        if (fields.size() != n + 1)
            throw Error(ErrorCode::parse_error, "row has " + std::to_string(fields.size()) + " fields");
        table.times.push_back(parse_integer<std::size_t>(fields[0]));
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = parse_double(fields[i + 1]);
        table.states.emplace_back(std::move(x));
    }
    if (table.states.empty())
        throw Error(ErrorCode::parse_error, "trajectory has no rows");
    return table;
}

inline nlohmann::json params_to_json(const ModelParams& p)
{
    return {{"c", p.c},
            {"tol", p.tol},
            {"max_iter", p.max_iter},
            {"variant", std::string(to_string(p.variant))},
            {"stop_on_convergence", p.stop_on_convergence},
            {"cycle_detection",
             {{"enabled", p.cycle.enabled}, {"window", p.cycle.window}, {"resolution", p.cycle.resolution}}}};
}

inline ModelParams params_from_json(const nlohmann::json& j, ModelParams base = {})
{
    base.c = j.value("c", base.c);
    base.tol = j.value("tol", base.tol);
    base.max_iter = j.value("max_iter", base.max_iter);
    if (j.contains("variant"))
        base.variant = parse_variant(j.at("variant").get<std::string>());
    base.stop_on_convergence = j.value("stop_on_convergence", base.stop_on_convergence);
    if (j.contains("cycle_detection")) {
        const auto& cd = j.at("cycle_detection");
        base.cycle.enabled = cd.value("enabled", base.cycle.enabled);
        base.cycle.window = cd.value("window", base.cycle.window);
        base.cycle.resolution = cd.value("resolution", base.cycle.resolution);
    }
    return base;
}

/// Sidecar written next to a trajectory CSV.
inline nlohmann::json trajectory_metadata(const Trajectory& traj, std::optional<std::uint64_t> seed,
                                          const SignedGraph& graph)
{
    nlohmann::json meta = {{"schema", "signed_hk.trajectory/1"},
                           {"params", params_to_json(traj.params)},
                           {"variant", std::string(to_string(traj.params.variant))},
                           {"converged", traj.converged},
                           {"stopping_time", traj.stopping_time},
                           {"steps_executed", traj.steps_executed},
                           {"cycle_detected", traj.cycle_detected},
                           {"n", graph.size()},
                           {"m", graph.edge_count()},
                           {"m_r", graph.repulsive_edge_count()}};
    meta["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    if (traj.cycle_detected) {
        meta["cycle_time"] = traj.cycle_time;
        meta["cycle_period"] = traj.cycle_period;
    }
    if (const auto& groups = graph.groups(); groups && groups->is_contiguous())
        meta["groups"] = groups->sizes();
    return meta;
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::io_failure, "cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out)
        throw Error(ErrorCode::io_failure, "write failed for '" + path.string() + "'");
}

inline std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_failure, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace signed_hk::io

#endif // SIGNED_HK_IO_HPP
