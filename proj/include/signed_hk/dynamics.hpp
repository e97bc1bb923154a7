#ifndef SIGNED_HK_DYNAMICS_HPP
#define SIGNED_HK_DYNAMICS_HPP

#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signed_hk/error.hpp"
#include "signed_hk/opinion_state.hpp"
#include "signed_hk/signed_graph.hpp"

namespace signed_hk {

enum class Variant {
    scaled_repulsion, ///< repulsion weakens with distance, |M_ij| <= c
    naive_repulsion,  ///< repulsive edges use the raw difference x_j - x_i
    hk_baseline,      ///< plain bounded-confidence averaging; no negative edges allowed
};

inline std::string_view to_string(Variant v)
{
    switch (v) {
    case Variant::scaled_repulsion: return "scaled";
    case Variant::naive_repulsion: return "naive";
    case Variant::hk_baseline: return "hk";
    }
    return "unknown";
}

inline Variant parse_variant(std::string_view name)
{
    if (name == "scaled" || name == "scaled-repulsion")
        return Variant::scaled_repulsion;
    if (name == "naive" || name == "naive-repulsion")
        return Variant::naive_repulsion;
    if (name == "hk" || name == "hk-baseline")
        return Variant::hk_baseline;
    throw Error(ErrorCode::invalid_parameter, "unknown variant '" + std::string(name) + "'");
}

enum class Recording {
    all,       ///< every state from t = 0 to the last executed step
    endpoints, ///< initial and final state only
};

/// Recurrence detector for non-convergent runs. A new state is flagged when it
/// lies within `resolution` (max-norm) of a state at least two steps back in
/// the window while the previous state is farther than `resolution` away, so
/// monotone slow convergence is never flagged.
struct CycleDetection {
    bool enabled = false;
    std::size_t window = 1000;
    double resolution = 1e-12;
    bool stop_on_cycle = false;
};

struct ModelParams {
    double c = 0.2;
    double tol = 1e-8;
    std::size_t max_iter = 10000;
    Variant variant = Variant::scaled_repulsion;
    bool stop_on_convergence = true;
    Recording recording = Recording::all;
    CycleDetection cycle;

    void validate() const
    {
        if (!(c > 0.0) || !std::isfinite(c))
            throw Error(ErrorCode::invalid_parameter, "confidence bound c must be positive");
        if (!(tol > 0.0))
            throw Error(ErrorCode::invalid_parameter, "tolerance must be positive");
        if (max_iter < 1)
            throw Error(ErrorCode::invalid_parameter, "max_iter must be >= 1");
        if (cycle.enabled && (cycle.window < 2 || !(cycle.resolution >= 0.0)))
            throw Error(ErrorCode::invalid_parameter, "cycle window must be >= 2, resolution >= 0");
    }
};

struct Trajectory {
    std::vector<OpinionState> states;
    std::vector<std::size_t> times; ///< timestep of each recorded state
    bool converged = false;
    std::size_t stopping_time = 0; ///< T: first t with max|x(t) - x(t-1)| < tol, else steps executed
    std::size_t steps_executed = 0;
    bool cycle_detected = false;
    std::size_t cycle_time = 0;
    std::size_t cycle_period = 0;
    ModelParams params;

    const OpinionState& initial() const { return states.front(); }
    const OpinionState& final_state() const { return states.back(); }
};

namespace detail {

inline void check_dimensions(const OpinionState& state, const SignedGraph& graph)
{
    if (state.size() != graph.size())
        throw Error(ErrorCode::dimension_mismatch,
                    "state length " + std::to_string(state.size()) + " != n=" + std::to_string(graph.size()));
}

inline double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// M_ij for the scaled model given the edge sign and both opinions.
inline double scaled_offset(int a_ij, std::size_t i, std::size_t j, double xi, double xj, double c)
{
    const double d = xj - xi;
    if (a_ij >= 0)
        return d;
    if (d != 0.0)
        return sign_of(d) * std::abs(c - std::abs(d));
    return j > i ? c : (j < i ? -c : 0.0);
}

/// x_i(t+1) = x_i + sum_j A_ij M_ij 1{|x_j - x_i| < c} / sum_j |A_ij| 1{...}
/// over a frozen snapshot. The self term contributes 0 to the numerator and 1
/// to the denominator. Dense graphs iterate matrix rows, sparse graphs
/// neighbor lists; both visit j in increasing order so sums are identical.
template <class Offset>
OpinionState synchronous_update(const OpinionState& state, const SignedGraph& graph, double c, Offset offset)
{
    const std::size_t n = graph.size();
    const auto x = state.values();
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double num = 0.0;
        std::size_t den = 1;
        auto visit = [&](std::size_t j, int a_ij) {
            if (std::abs(x[j] - xi) < c) {
                num += a_ij * offset(a_ij, i, j, xi, x[j], c);
                ++den;
            }
        };
        if (auto row = graph.dense_row(i); !row.empty()) {
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && row[j] != 0)
                    visit(j, row[j]);
        } else {
            for (const auto& nb : graph.neighbors(i))
                visit(nb.node, nb.sign);
        }
        next[i] = xi + num / static_cast<double>(den);
    }
    return OpinionState(std::move(next));
}

} // namespace detail

/// Signed distance node i would travel because of node j.
inline double signed_offset(std::size_t i, std::size_t j, const OpinionState& state, const SignedGraph& graph,
                            double c)
{
    detail::check_dimensions(state, graph);
    if (i == j)
        return 0.0;
    return detail::scaled_offset(graph.sign(i, j), i, j, state[i], state[j], c);
}

/// One synchronous step of the distance-scaled repulsion model.
inline OpinionState step(const OpinionState& state, const SignedGraph& graph, const ModelParams& params)
{
    detail::check_dimensions(state, graph);
    return detail::synchronous_update(state, graph, params.c, detail::scaled_offset);
}

/// Same as step() with M_ij = x_j - x_i on every edge.
inline OpinionState step_naive(const OpinionState& state, const SignedGraph& graph, const ModelParams& params)
{
    detail::check_dimensions(state, graph);
    return detail::synchronous_update(state, graph, params.c,
                                      [](int, std::size_t, std::size_t, double xi, double xj, double) {
                                          return xj - xi;
                                      });
}

/// Classic HK: each node moves to the mean of its in-confidence attractive
/// neighborhood (itself included). Computed as a plain average rather than an
/// increment so it serves as an independent check on step().
inline OpinionState step_hk(const OpinionState& state, const SignedGraph& graph, const ModelParams& params)
{
    detail::check_dimensions(state, graph);
    if (graph.repulsive_edge_count() > 0)
        throw Error(ErrorCode::negative_edge_present,
                    std::to_string(graph.repulsive_edge_count()) + " repulsive edges in an HK run");
    const std::size_t n = graph.size();
    const double c = params.c;
    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (graph.sign(i, j) == 0 || !(std::abs(state[j] - state[i]) < c))
                continue;
            sum += state[j];
            ++count;
        }
        next[i] = sum / static_cast<double>(count);
    }
    return OpinionState(std::move(next));
}

inline OpinionState advance(const OpinionState& state, const SignedGraph& graph, const ModelParams& params)
{
    switch (params.variant) {
    case Variant::scaled_repulsion: return step(state, graph, params);
    case Variant::naive_repulsion: return step_naive(state, graph, params);
    case Variant::hk_baseline: return step_hk(state, graph, params);
    }
    throw Error(ErrorCode::invalid_parameter, "unknown variant");
}

/// Iterates the selected variant until the max-norm displacement drops below
/// tol or max_iter steps have run.
inline Trajectory run(const OpinionState& initial, const SignedGraph& graph, const ModelParams& params)
{
    params.validate();
    detail::check_dimensions(initial, graph);
    if (params.variant == Variant::hk_baseline && graph.repulsive_edge_count() > 0)
        throw Error(ErrorCode::negative_edge_present, "hk-baseline requires a graph without repulsive edges");

    Trajectory traj;
    traj.params = params;
    traj.states.push_back(initial);
    traj.times.push_back(0);

    std::deque<OpinionState> window;
    if (params.cycle.enabled)
        window.push_back(initial);

    OpinionState current = initial;
    for (std::size_t t = 0; t < params.max_iter; ++t) {
        OpinionState next = advance(current, graph, params);
        const double displacement = max_abs_difference(next, current);
        traj.steps_executed = t + 1;

        if (params.cycle.enabled && !traj.cycle_detected) {
            const double res = params.cycle.resolution;
            if (max_abs_difference(next, window.back()) > res) {
                // Newest first so the reported period is the shortest one.
                for (std::size_t lag = 2; lag <= window.size(); ++lag) {
                    if (max_abs_difference(next, window[window.size() - lag]) <= res) {
                        traj.cycle_detected = true;
                        traj.cycle_time = t + 1;
                        traj.cycle_period = lag;
                        break;
                    }
                }
            }
            window.push_back(next);
            if (window.size() > params.cycle.window)
                window.pop_front();
        }

        if (params.recording == Recording::all) {
            traj.states.push_back(next);
            traj.times.push_back(t + 1);
        }
        current = std::move(next);

        if (!traj.converged && displacement < params.tol) {
            traj.converged = true;
            traj.stopping_time = t + 1;
            if (params.stop_on_convergence)
                break;
        }
        if (traj.cycle_detected && params.cycle.stop_on_cycle)
            break;
    }
    if (!traj.converged)
        traj.stopping_time = traj.steps_executed;
    if (params.recording == Recording::endpoints) {
        traj.states.push_back(current);
        traj.times.push_back(traj.steps_executed);
    }
    return traj;
}

} // namespace signed_hk

#endif // SIGNED_HK_DYNAMICS_HPP
