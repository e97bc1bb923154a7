#ifndef SIGNED_HK_VERIFY_HPP
#define SIGNED_HK_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_hk/dynamics.hpp"
#include "signed_hk/error.hpp"
#include "signed_hk/opinion_state.hpp"
#include "signed_hk/rng.hpp"
#include "signed_hk/signed_graph.hpp"

// Executable checks of the analytical results on small instances. Every
// instance is rebuilt from a single 64-bit seed, which violation records carry
// so a failing trajectory can be replayed exactly.

namespace signed_hk::verify {

constexpr double identity_tol = 1e-10; ///< algebraic identities
constexpr double limit_tol = 1e-6;     ///< limits of converged trajectories

/// In-confidence neighborhood of one node split by how each neighbor acts on it.
struct NeighborhoodPartition {
    std::size_t node = 0;
    std::vector<std::size_t> attractive; ///< V+: attractive in-confidence neighbors, node itself included
    std::vector<std::size_t> upper;      ///< U: repulsive neighbors pushing the node down
    std::vector<std::size_t> lower;      ///< L: repulsive neighbors pushing the node up

    std::size_t size() const { return attractive.size() + upper.size() + lower.size(); }
};

inline NeighborhoodPartition partition_neighborhood(std::size_t i, const OpinionState& state,
                                                    const SignedGraph& graph, double c)
{
    if (state.size() != graph.size())
        throw Error(ErrorCode::dimension_mismatch, "state does not match graph");
    if (i >= graph.size())
        throw Error(ErrorCode::index_out_of_range, "node outside graph");
    NeighborhoodPartition p;
    p.node = i;
    const double xi = state[i];
    for (std::size_t j = 0; j < graph.size(); ++j) {
        const int a = graph.sign(i, j);
        const double xj = state[j];
        if (a == 1 && std::abs(xj - xi) < c) {
            p.attractive.push_back(j);
        } else if (a == -1) {
            const double above = xj - xi;
            if ((above > 0 && above < c) || (xj == xi && j > i))
                p.upper.push_back(j);
            else if ((-above > 0 && -above < c) || (xj == xi && i > j))
                p.lower.push_back(j);
        }
    }
    return p;
}

/// Next opinion of node i as the plain average of x_j over V+, x_j - c over U
/// and x_j + c over L.
inline double average_form(const NeighborhoodPartition& p, const OpinionState& state, double c)
{
    double sum = 0.0;
    for (std::size_t j : p.attractive)
        sum += state[j];
    for (std::size_t j : p.upper)
        sum += state[j] - c;
    for (std::size_t j : p.lower)
        sum += state[j] + c;
    return sum / static_cast<double>(p.size());
}

struct Violation {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double c = 0.0;
    std::string detail;

    nlohmann::json to_json() const { return {{"seed", seed}, {"n", n}, {"c", c}, {"detail", detail}}; }
};

struct CheckReport {
    std::string name;
    bool proven = true; ///< false for conjectures: violations are findings, not engine failures
    std::size_t instances = 0;
    std::vector<Violation> violations;
    nlohmann::json diagnostics = nlohmann::json::object();

    bool passed() const { return violations.empty(); }

    void fail(std::uint64_t seed, std::size_t n, double c, std::string detail)
    {
        violations.push_back({seed, n, c, std::move(detail)});
    }

    nlohmann::json to_json() const
    {
        nlohmann::json v = nlohmann::json::array();
        for (const auto& x : violations)
            v.push_back(x.to_json());
        return {{"name", name},         {"proven", proven},      {"instances", instances},
                {"passed", passed()},   {"violations", v},       {"diagnostics", diagnostics}};
    }
};

// Instance generators. Each is a pure function of its seed.
namespace instances {

struct Instance {
    SignedGraph graph;
    OpinionState initial;
    double c = 0.0;
};

inline SignedGraph complete_graph(std::size_t n, int sign)
{
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            edges.push_back({i, j, sign});
    return SignedGraph(n, edges);
}

/// Random signed ER graph with n in [1, n_max]; a quarter of the time two
/// opinions are made equal so the index tie-break is exercised.
inline Instance random_signed(std::uint64_t seed, std::size_t n_max)
{
    auto rng = make_rng(seed);
    const std::size_t n = 1 + rng() % n_max;
    const double p1 = uniform01(rng);
    const double p2 = uniform01(rng);
    auto graph = generate_er_signed(n, p1, p2, rng);
    std::vector<double> x(n);
    for (double& v : x)
        v = uniform01(rng);
    if (n >= 2 && rng() % 4 == 0)
        x[rng() % n] = x[rng() % n];
    const double c = 0.05 + uniform01(rng);
    return {std::move(graph), OpinionState(std::move(x)), c};
}

/// Complete all-repulsive graph, n in [2, n_max]. Half of the instances start
/// inside an interval of width 0.9c, the rest spread over up to n*c.
inline Instance complete_repulsive(std::uint64_t seed, std::size_t n_max)
{
    auto rng = make_rng(seed);
    const std::size_t n = 2 + rng() % (n_max - 1);
    const double c = 0.05 + 0.95 * uniform01(rng);
    const double width = (rng() % 2 == 0) ? 0.9 * c : c * static_cast<double>(n) * uniform01(rng);
    return {complete_graph(n, -1), uniform_opinions(n, 0.0, std::max(width, 1e-3), rng), c};
}

/// All-repulsive graph that is usually not complete.
inline Instance sparse_repulsive(std::uint64_t seed, std::size_t n_max)
{
    auto rng = make_rng(seed);
    const std::size_t n = 2 + rng() % (n_max - 1);
    const double c = 0.05 + 0.95 * uniform01(rng);
    auto graph = generate_er_signed(n, 0.0, 0.3 + 0.6 * uniform01(rng), rng);
    return {std::move(graph), uniform_opinions(n, 0.0, c * static_cast<double>(n) * 0.5, rng), c};
}

} // namespace instances

namespace detail {

inline ModelParams params_for(double c, std::size_t max_iter = 10000)
{
    ModelParams p;
    p.c = c;
    p.max_iter = max_iter;
    return p;
}

/// Highest index among nodes holding the maximum opinion.
inline std::size_t top_node(const OpinionState& s)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] >= s[best])
            best = i;
    return best;
}

/// Lowest index among nodes holding the minimum opinion.
inline std::size_t bottom_node(const OpinionState& s)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] < s[best])
            best = i;
    return best;
}

inline bool strict_max(const OpinionState& s, std::size_t i)
{
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i && !(s[i] > s[j]))
            return false;
    return true;
}

inline bool strict_min(const OpinionState& s, std::size_t i)
{
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i && !(s[i] < s[j]))
            return false;
    return true;
}

inline std::size_t count_in(const std::vector<std::size_t>& set, const std::vector<std::size_t>& other, bool member)
{
    return static_cast<std::size_t>(std::count_if(set.begin(), set.end(), [&](std::size_t v) {
        return (std::find(other.begin(), other.end(), v) != other.end()) == member;
    }));
}

/// Argmax/argmin identities after t = 1 along a trajectory; returns the first
/// offending timestep.
inline std::optional<std::size_t> first_order_break(const Trajectory& traj)
{
    if (traj.states.size() < 2)
        return std::nullopt;
    const std::size_t top = top_node(traj.states[1]);
    const std::size_t bottom = bottom_node(traj.states[1]);
    for (std::size_t t = 1; t < traj.states.size(); ++t)
        if (!strict_max(traj.states[t], top) || !strict_min(traj.states[t], bottom))
            return t;
    return std::nullopt;
}

} // namespace detail

/// Step output equals the average form for every node, and replacing a random
/// subset W of the neighborhood by its mean leaves the result unchanged.
inline CheckReport check_average_form(std::size_t trials, std::uint64_t master_seed, std::size_t n_max = 8)
{
    CheckReport report;
    report.name = "average_form";
    std::size_t ties = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto seed = derive_seed(master_seed, report.name, {trial});
        auto inst = instances::random_signed(seed, n_max);
        auto rng = make_rng(derive_seed(seed, "grouping"));
        const auto next = step(inst.initial, inst.graph, detail::params_for(inst.c));
        ++report.instances;
        for (std::size_t i = 0; i < inst.graph.size(); ++i) {
            const auto part = partition_neighborhood(i, inst.initial, inst.graph, inst.c);
            const double avg = average_form(part, inst.initial, inst.c);
            if (std::abs(avg - next[i]) > identity_tol)
                report.fail(seed, inst.graph.size(), inst.c,
                            "node " + std::to_string(i) + ": average form " + std::to_string(avg) +
                                " != step " + std::to_string(next[i]));
            for (std::size_t j : part.upper)
                ties += inst.initial[j] == inst.initial[i] ? 1 : 0;

            std::vector<std::size_t> all(part.attractive);
            all.insert(all.end(), part.upper.begin(), part.upper.end());
            all.insert(all.end(), part.lower.begin(), part.lower.end());
            std::vector<bool> in_w(all.size());
            double w_sum = 0.0;
            std::size_t w_size = 0;
            for (std::size_t k = 0; k < all.size(); ++k) {
                in_w[k] = bernoulli(rng, 0.5);
                if (in_w[k]) {
                    w_sum += inst.initial[all[k]];
                    ++w_size;
                }
            }
            double grouped = 0.0;
            for (std::size_t k = 0; k < all.size(); ++k)
                grouped += in_w[k] ? w_sum / static_cast<double>(w_size) : inst.initial[all[k]];
            grouped += (static_cast<double>(part.lower.size()) - static_cast<double>(part.upper.size())) * inst.c;
            grouped /= static_cast<double>(part.size());
            if (std::abs(grouped - next[i]) > identity_tol)
                report.fail(seed, inst.graph.size(), inst.c,
                            "node " + std::to_string(i) + ": grouping identity " + std::to_string(grouped) +
                                " != step " + std::to_string(next[i]));
        }
    }
    report.diagnostics["tie_break_pairs_seen"] = ties;
    return report;
}

/// Exhaustive two-node case table: edge type x initial separation.
inline CheckReport check_two_node(const std::vector<double>& c_grid, std::uint64_t master_seed)
{
    CheckReport report;
    report.name = "two_node";
    report.diagnostics["cases"] = nlohmann::json::array();
    for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
        const double c = c_grid[ci];
        for (int edge : {0, 1, -1}) {
            for (double factor : {0.0, 0.5, 1.0, 1.5}) {
                const auto seed = derive_seed(master_seed, report.name, {ci, std::uint64_t(edge + 1),
                                                                         std::uint64_t(factor * 2)});
                auto rng = make_rng(seed);
                // Dyadic base keeps the initial separation exactly factor * c.
                const double base = std::ldexp(std::floor(uniform01(rng) * 1024.0), -10);
                const double sep0 = factor * c;
                OpinionState x0{base, base + sep0};
                const double actual_sep0 = x0[1] - x0[0];
                auto graph = edge == 0 ? build_signed_graph(2, {}) : build_signed_graph(2, {{0, 1, edge}});
                auto traj = run(x0, graph, detail::params_for(c));
                ++report.instances;
                const double sep = std::abs(traj.final_state()[1] - traj.final_state()[0]);
                const bool interacts = edge != 0 && actual_sep0 < c;
                std::string label = std::string(edge == 0 ? "none" : (edge > 0 ? "attractive" : "repulsive")) +
                                    " sep=" + std::to_string(factor) + "c c=" + std::to_string(c);
                report.diagnostics["cases"].push_back(
                    {{"case", label}, {"T", traj.stopping_time}, {"final_separation", sep}});
                if (!traj.converged) {
                    report.fail(seed, 2, c, label + ": did not converge");
                    continue;
                }
                if (sep > std::max(c, actual_sep0) + identity_tol)
                    report.fail(seed, 2, c, label + ": separation bound violated");
                if (!interacts) {
                    if (traj.stopping_time != 1 || sep != actual_sep0)
                        report.fail(seed, 2, c, label + ": expected T=1 with unchanged separation");
                } else if (edge > 0) {
                    if (sep > identity_tol)
                        report.fail(seed, 2, c, label + ": attractive pair did not merge");
                } else if (std::abs(sep - c) > identity_tol) {
                    report.fail(seed, 2, c, label + ": repulsive pair separation " + std::to_string(sep) + " != c");
                }
            }
        }
    }
    return report;
}

/// On complete all-repulsive graphs the top and bottom nodes at t = 1 keep
/// their places for the rest of the trajectory; ties at t are resolved at t+1
/// in favor of the highest (top) and lowest (bottom) index. Incomplete
/// all-repulsive graphs are run as a diagnostic only.
inline CheckReport check_order_preservation(std::size_t trials, std::size_t n_max, std::uint64_t master_seed)
{
    CheckReport report;
    report.name = "order_preservation";
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto seed = derive_seed(master_seed, report.name, {trial});
        auto inst = instances::complete_repulsive(seed, n_max);
        auto traj = run(inst.initial, inst.graph, detail::params_for(inst.c));
        ++report.instances;
        if (auto t = detail::first_order_break(traj))
            report.fail(seed, inst.graph.size(), inst.c, "extreme node changed at t=" + std::to_string(*t));
    }

    // Ties at the extremes: nodes {2, 5} share the top, {0, 3} the bottom.
    {
        const auto seed = derive_seed(master_seed, report.name, {trials, 1});
        const double c = 0.5;
        OpinionState x0{0.1, 0.25, 0.4, 0.1, 0.3, 0.4};
        auto next = step(x0, instances::complete_graph(6, -1), detail::params_for(c));
        ++report.instances;
        if (!detail::strict_max(next, 5))
            report.fail(seed, 6, c, "tie at the top not resolved toward node 5");
        if (!detail::strict_min(next, 0))
            report.fail(seed, 6, c, "tie at the bottom not resolved toward node 0");
    }

    std::size_t sparse_breaks = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        auto inst = instances::sparse_repulsive(derive_seed(master_seed, "order_sparse", {trial}), n_max);
        auto traj = run(inst.initial, inst.graph, detail::params_for(inst.c));
        sparse_breaks += detail::first_order_break(traj).has_value() ? 1 : 0;
    }
    report.diagnostics["incomplete_graph_instances"] = trials;
    report.diagnostics["incomplete_graph_order_breaks"] = sparse_breaks;
    return report;
}

/// Next-step gap between the extreme node and its nearest in-confidence
/// neighbor stays within the bounds driven by the shared and exclusive
/// repulsion sets. Checked at the top and, mirrored, at the bottom.
inline CheckReport check_extreme_gap_bounds(std::size_t trials, std::uint64_t master_seed, std::size_t n_max = 8)
{
    CheckReport report;
    report.name = "extreme_gap_bounds";
    std::size_t steps_checked = 0, top_equalities = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto seed = derive_seed(master_seed, report.name, {trial});
        auto inst = instances::complete_repulsive(seed, n_max);
        const double c = inst.c;
        auto traj = run(inst.initial, inst.graph, detail::params_for(c));
        ++report.instances;
        const std::size_t n = inst.graph.size();
        for (std::size_t t = 0; t + 1 < traj.states.size(); ++t) {
            const auto& s = traj.states[t];
            const auto& s1 = traj.states[t + 1];
            auto check = [&](bool top) {
                const std::size_t i = top ? detail::top_node(s) : detail::bottom_node(s);
                if (top ? !detail::strict_max(s, i) : !detail::strict_min(s, i))
                    return;
                std::optional<std::size_t> j;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || !(std::abs(s[i] - s[k]) < c))
                        continue;
                    if (!j || (top ? s[k] > s[*j] : s[k] < s[*j]))
                        j = k;
                }
                if (!j)
                    return;
                const auto pi = partition_neighborhood(i, s, inst.graph, c);
                const auto pj = partition_neighborhood(*j, s, inst.graph, c);
                // Top: shared upward pushers L_i and L_j, plus those pushing only j.
                // Bottom: the mirror with downward pushers.
                const auto& si = top ? pi.lower : pi.upper;
                const auto& sj = top ? pj.lower : pj.upper;
                const double shared = static_cast<double>(detail::count_in(si, sj, true));
                const double exclusive = static_cast<double>(detail::count_in(sj, si, false));
                const double denom = 2.0 + shared + exclusive;
                const double lo = 2.0 * c / denom;
                const double hi = (exclusive + 2.0) * c / denom;
                const double gap = top ? s1[i] - s1[*j] : s1[*j] - s1[i];
                ++steps_checked;
                if (exclusive == 0.0 && top)
                    ++top_equalities;
                if (gap < lo - identity_tol || gap > hi + identity_tol)
                    report.fail(seed, n, c,
                                std::string(top ? "top" : "bottom") + " gap " + std::to_string(gap) + " outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "] at t=" + std::to_string(t));
            };
            check(true);
            check(false);
        }
    }
    report.diagnostics["steps_checked"] = steps_checked;
    report.diagnostics["top_steps_with_equality"] = top_equalities;
    return report;
}

/// Complete all-repulsive graphs: consecutive in-confidence nodes (in opinion
/// order) are at most c apart after the next step; runs started within c end
/// with every consecutive gap equal to c.
inline CheckReport check_gap_width(std::size_t trials, std::uint64_t master_seed, std::size_t n_max = 8)
{
    CheckReport report;
    report.name = "gap_width";
    std::size_t pairs_checked = 0, final_states_checked = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto seed = derive_seed(master_seed, report.name, {trial});
        auto inst = instances::complete_repulsive(seed, n_max);
        const double c = inst.c;
        const std::size_t n = inst.graph.size();
        auto traj = run(inst.initial, inst.graph, detail::params_for(c));
        ++report.instances;
        std::vector<std::size_t> order(n);
        for (std::size_t t = 0; t + 1 < traj.states.size(); ++t) {
            const auto& s = traj.states[t];
            for (std::size_t k = 0; k < n; ++k)
                order[k] = k;
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });
            for (std::size_t k = 0; k + 1 < n; ++k) {
                const std::size_t lo = order[k], hi = order[k + 1];
                if (!(s[hi] - s[lo] < c) || s[hi] == s[lo])
                    continue;
                ++pairs_checked;
                const double next_gap = std::abs(traj.states[t + 1][hi] - traj.states[t + 1][lo]);
                if (next_gap > c + identity_tol)
                    report.fail(seed, n, c, "gap " + std::to_string(next_gap) + " > c at t=" + std::to_string(t));
            }
        }
        if (traj.converged && inst.initial.width() < c) {
            ++final_states_checked;
            std::vector<double> fin(traj.final_state().begin(), traj.final_state().end());
            std::sort(fin.begin(), fin.end());
            for (std::size_t k = 0; k + 1 < n; ++k)
                if (std::abs(fin[k + 1] - fin[k] - c) > limit_tol)
                    report.fail(seed, n, c, "final consecutive gap " + std::to_string(fin[k + 1] - fin[k]) + " != c");
        }
    }
    report.diagnostics["pairs_checked"] = pairs_checked;
    report.diagnostics["final_states_checked"] = final_states_checked;
    return report;
}

/// Complete all-repulsive graphs started inside a 0.9c-wide interval converge
/// to width (n - 1) c.
inline CheckReport check_width_theorem(const std::vector<std::size_t>& n_grid, const std::vector<double>& c_grid,
                                       std::size_t trials, std::uint64_t master_seed)
{
    CheckReport report;
    report.name = "width_theorem";
    std::size_t max_T = 0;
    double worst = 0.0;
    for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
        const std::size_t n = n_grid[ni];
        const auto graph = instances::complete_graph(n, -1);
        for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
            const double c = c_grid[ci];
            for (std::size_t trial = 0; trial < trials; ++trial) {
                const auto seed = derive_seed(master_seed, report.name, {n, ci, trial});
                auto rng = make_rng(seed);
                const double lo = uniform(rng, -1.0, 1.0);
                auto x0 = uniform_opinions(n, lo, lo + 0.9 * c, rng);
                auto params = detail::params_for(c);
                params.recording = Recording::endpoints;
                auto traj = run(x0, graph, params);
                ++report.instances;
                max_T = std::max(max_T, traj.stopping_time);
                if (!traj.converged) {
                    report.fail(seed, n, c, "did not converge within " + std::to_string(params.max_iter));
                    continue;
                }
                const double expected = static_cast<double>(n - 1) * c;
                const double err = std::abs(traj.final_state().width() - expected);
                worst = std::max(worst, err);
                if (err > limit_tol)
                    report.fail(seed, n, c,
                                "final width " + std::to_string(traj.final_state().width()) + " != " +
                                    std::to_string(expected));
            }
        }
    }
    report.diagnostics["max_stopping_time"] = max_T;
    report.diagnostics["max_abs_width_error"] = worst;
    return report;
}

/// Falsification harness for the conjectured bound on mixed-sign graphs:
/// final width <= max(initial width, m c). The tighter m_r c candidate is
/// tracked as a diagnostic.
inline CheckReport check_conjectured_bound(std::size_t trials, std::uint64_t master_seed, std::size_t n_max = 20)
{
    CheckReport report;
    report.name = "conjectured_bound";
    report.proven = false;
    std::size_t nonconverged = 0, m_binds = 0, initial_binds = 0, mr_violations = 0, mr_binds = 0;
    std::size_t within_c = 0, within_c_violations = 0;
    double max_ratio_to_mc = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto seed = derive_seed(master_seed, report.name, {trial});
        auto inst = instances::random_signed(seed, n_max);
        auto params = detail::params_for(inst.c);
        params.recording = Recording::endpoints;
        auto traj = run(inst.initial, inst.graph, params);
        ++report.instances;
        if (!traj.converged)
            ++nonconverged;
        const double w0 = inst.initial.width();
        const double wT = traj.final_state().width();
        const double mc = static_cast<double>(inst.graph.edge_count()) * inst.c;
        const double mrc = static_cast<double>(inst.graph.repulsive_edge_count()) * inst.c;
        (mc >= w0 ? m_binds : initial_binds) += 1;
        if (mc > 0)
            max_ratio_to_mc = std::max(max_ratio_to_mc, wT / mc);
        const bool started_within_c = w0 < inst.c;
        within_c += started_within_c ? 1 : 0;
        if (wT > std::max(w0, mc) + 1e-9) {
            within_c_violations += started_within_c ? 1 : 0;
            report.fail(seed, inst.graph.size(), inst.c,
                        "final width " + std::to_string(wT) + " > max(" + std::to_string(w0) + ", " +
                            std::to_string(mc) + ")");
        }
        if (wT > std::max(w0, mrc) + 1e-9)
            ++mr_violations;
        else if (mrc > w0)
            ++mr_binds;
    }
    report.diagnostics["nonconverged_runs"] = nonconverged;
    report.diagnostics["mc_term_dominant"] = m_binds;
    report.diagnostics["initial_width_dominant"] = initial_binds;
    report.diagnostics["max_final_width_over_mc"] = max_ratio_to_mc;
    report.diagnostics["mr_c_candidate_violations"] = mr_violations;
    report.diagnostics["mr_c_candidate_dominant"] = mr_binds;
    report.diagnostics["instances_started_within_c"] = within_c;
    report.diagnostics["violations_started_within_c"] = within_c_violations;
    return report;
}

/// Resolution at which the naive three-node orbit is reported as recurrent.
constexpr double naive_cycle_resolution = 1e-4;

/// The three-node instance (two outer nodes repelling, middle node attracting
/// both) oscillates forever under naive repulsion and settles under scaling.
inline CheckReport check_naive_nonconvergence(std::uint64_t master_seed = 0)
{
    CheckReport report;
    report.name = "naive_nonconvergence";
    const auto seed = derive_seed(master_seed, report.name);
    const double c = 0.6;
    const OpinionState x0{1.0, 0.5, 0.0};
    const auto graph = build_signed_graph(3, {{0, 2, -1}, {0, 1, 1}, {1, 2, 1}});

    auto params = detail::params_for(c, 10000);
    params.variant = Variant::naive_repulsion;
    params.cycle.enabled = true;
    params.cycle.resolution = naive_cycle_resolution;
    auto naive = run(x0, graph, params);
    ++report.instances;
    if (naive.converged)
        report.fail(seed, 3, c, "naive variant converged at T=" + std::to_string(naive.stopping_time));
    if (!naive.cycle_detected)
        report.fail(seed, 3, c, "naive variant: no recurrence detected");
    report.diagnostics["naive_steps"] = naive.steps_executed;
    report.diagnostics["naive_cycle_time"] = naive.cycle_time;
    report.diagnostics["naive_cycle_period"] = naive.cycle_period;

    auto scaled = run(x0, graph, detail::params_for(c));
    ++report.instances;
    if (!scaled.converged) {
        report.fail(seed, 3, c, "scaled variant did not converge");
    } else {
        const auto& x = scaled.final_state();
        const bool pairwise_in_confidence =
            std::abs(x[0] - x[1]) < c && std::abs(x[1] - x[2]) < c && std::abs(x[0] - x[2]) < c;
        if (!pairwise_in_confidence || x.width() < limit_tol)
            report.fail(seed, 3, c, "scaled variant should settle within confidence but not at consensus");
        report.diagnostics["scaled_T"] = scaled.stopping_time;
        report.diagnostics["scaled_final"] = x.vector();
    }

    // With the repulsive edge turned attractive both variants are plain HK.
    const auto positive = build_signed_graph(3, {{0, 2, 1}, {0, 1, 1}, {1, 2, 1}});
    auto naive_pos = run(x0, positive, params);
    auto hk_params = detail::params_for(c);
    hk_params.variant = Variant::hk_baseline;
    auto hk = run(x0, positive, hk_params);
    ++report.instances;
    if (!naive_pos.converged || max_abs_difference(naive_pos.final_state(), hk.final_state()) > identity_tol)
        report.fail(seed, 3, c, "naive variant without repulsion should converge like HK");
    return report;
}

struct SuiteOptions {
    std::uint64_t seed = 0;
    std::size_t average_trials = 1000;
    std::size_t order_trials = 200;
    std::size_t gap_trials = 200;
    std::size_t width_trials = 20;
    std::size_t conjecture_trials = 1000;
    std::vector<double> two_node_c_grid{0.05, 0.1, 0.4, 1.0};
    std::vector<std::size_t> width_n_grid{2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<double> width_c_grid{0.05, 0.1, 0.4, 1.0};
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"average",  "two_node", "order",      "extreme_gap",
                                                "gap_width", "width",   "conjecture", "naive"};
    return names;
}

inline CheckReport run_check(const std::string& name, const SuiteOptions& o)
{
    if (name == "average")
        return check_average_form(o.average_trials, o.seed);
    if (name == "two_node")
        return check_two_node(o.two_node_c_grid, o.seed);
    if (name == "order")
        return check_order_preservation(o.order_trials, 8, o.seed);
    if (name == "extreme_gap")
        return check_extreme_gap_bounds(o.gap_trials, o.seed);
    if (name == "gap_width")
        return check_gap_width(o.gap_trials, o.seed);
    if (name == "width")
        return check_width_theorem(o.width_n_grid, o.width_c_grid, o.width_trials, o.seed);
    if (name == "conjecture")
        return check_conjectured_bound(o.conjecture_trials, o.seed);
    if (name == "naive")
        return check_naive_nonconvergence(o.seed);
    throw Error(ErrorCode::unknown_parameter, "unknown check '" + name + "'");
}

/// "all" expands to every check.
inline std::vector<CheckReport> run_suite(const std::vector<std::string>& names, const SuiteOptions& options)
{
    std::vector<std::string> selected;
    for (const auto& n : names) {
        if (n == "all")
            selected.insert(selected.end(), suite_names().begin(), suite_names().end());
        else
            selected.push_back(n);
    }
    std::vector<CheckReport> out;
    for (const auto& n : selected)
        out.push_back(run_check(n, options));
    return out;
}

/// True when every check backing a proven result passed.
inline bool proven_checks_passed(const std::vector<CheckReport>& reports)
{
    return std::all_of(reports.begin(), reports.end(),
                       [](const CheckReport& r) { return !r.proven || r.passed(); });
}

} // namespace signed_hk::verify

#endif // SIGNED_HK_VERIFY_HPP
