#ifndef SIGNED_HK_METRICS_HPP
#define SIGNED_HK_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "signed_hk/error.hpp"
#include "signed_hk/format.hpp"
#include "signed_hk/opinion_state.hpp"
#include "signed_hk/signed_graph.hpp"

namespace signed_hk {

/// Ratio of final to initial maximum pairwise opinion distance.
inline double opinion_spread(const OpinionState& initial, const OpinionState& final)
{
    if (initial.size() != final.size())
        throw Error(ErrorCode::dimension_mismatch, "initial and final states differ in length");
    const double w0 = initial.width();
    if (!(w0 > 0.0))
        throw Error(ErrorCode::degenerate_initial_state, "initial opinion width is zero");
    return final.width() / w0;
}

struct GroupDistances {
    double in_group;  ///< I_T
    double out_group; ///< O_T
};

/// I_T averages, per group, the mean |x_j - x_l| over all ordered pairs in the
/// group (self-pairs included, normalized by |k_i|^2). O_T averages, per group,
/// the mean distance from members to every non-member. Empty groups are skipped.
inline GroupDistances group_distances(const OpinionState& final, const GroupAssignment& groups)
{
    if (groups.node_count() != final.size())
        throw Error(ErrorCode::dimension_mismatch, "group assignment does not cover the state");
    const std::size_t n = final.size();
    const std::size_t k = groups.group_count();
    std::vector<std::vector<std::size_t>> members(k);
    for (std::size_t i = 0; i < n; ++i)
        members[groups.group_of(i)].push_back(i);
    std::size_t nonempty = 0;
    for (const auto& m : members)
        nonempty += m.empty() ? 0 : 1;
    if (nonempty < 2)
        throw Error(ErrorCode::single_group, "out-group distance needs at least two non-empty groups");

    double in_sum = 0.0;
    double out_sum = 0.0;
    for (std::size_t g = 0; g < k; ++g) {
        const auto& mem = members[g];
        if (mem.empty())
            continue;
        const double size = static_cast<double>(mem.size());
        const double others = static_cast<double>(n - mem.size());
        double within = 0.0;
        for (std::size_t a : mem)
            for (std::size_t b : mem)
                within += std::abs(final[a] - final[b]);
        double across = 0.0;
        for (std::size_t a : mem) {
            double row = 0.0;
            for (std::size_t l = 0; l < n; ++l)
                if (groups.group_of(l) != g)
                    row += std::abs(final[a] - final[l]);
            across += row / others;
        }
        in_sum += within / (size * size);
        out_sum += across / size;
    }
    return {in_sum / static_cast<double>(nonempty), out_sum / static_cast<double>(nonempty)};
}

/// PS_T = I_T / O_T.
inline double proportional_spread(double in_group, double out_group)
{
    if (!(out_group > 0.0))
        throw Error(ErrorCode::zero_out_group_distance, "out-group distance is zero");
    return in_group / out_group;
}

struct Cluster {
    std::vector<std::size_t> members; ///< node indices, ordered by opinion then index
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
};

/// Sorts opinions and cuts wherever consecutive values differ by at least
/// gap_threshold. Clusters come back in increasing opinion order.
inline std::vector<Cluster> cluster_opinions(const OpinionState& final, double gap_threshold)
{
    if (!(gap_threshold > 0.0))
        throw Error(ErrorCode::invalid_parameter, "gap threshold must be positive");
    std::vector<std::size_t> order(final.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return final[a] < final[b]; });

    std::vector<Cluster> clusters;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::size_t node = order[pos];
        if (clusters.empty() || final[node] - clusters.back().hi >= gap_threshold) {
            clusters.push_back({{}, 0.0, final[node], final[node]});
        }
        auto& cl = clusters.back();
        cl.members.push_back(node);
        cl.hi = final[node];
    }
    for (auto& cl : clusters) {
        double sum = 0.0;
        for (std::size_t m : cl.members)
            sum += final[m];
        cl.mean = sum / static_cast<double>(cl.members.size());
    }
    return clusters;
}

enum class Regime { consensus, polarization, fragmentation };

inline std::string_view to_string(Regime r)
{
    switch (r) {
    case Regime::consensus: return "consensus";
    case Regime::polarization: return "polarization";
    case Regime::fragmentation: return "fragmentation";
    }
    return "unknown";
}

inline Regime parse_regime(std::string_view name)
{
    for (Regime r : {Regime::consensus, Regime::polarization, Regime::fragmentation})
        if (to_string(r) == name)
            return r;
    throw Error(ErrorCode::parse_error, "unknown regime '" + std::string(name) + "'");
}

struct RegimeThresholds {
    double dominant_share = 0.9; ///< one cluster this large means consensus
    double major_share = 0.1;    ///< minimum share for a cluster to count as a pole
    double covered_share = 0.9;  ///< poles must jointly cover this much
    std::size_t min_poles = 2;
    std::size_t max_poles = 3;
};

inline Regime classify_regime(const std::vector<Cluster>& clusters, std::size_t n,
                              const RegimeThresholds& th = {})
{
    if (clusters.empty() || n == 0)
        throw Error(ErrorCode::invalid_parameter, "regime classification needs at least one cluster");
    const double total = static_cast<double>(n);
    std::size_t poles = 0;
    double covered = 0.0;
    for (const auto& cl : clusters) {
        const double share = static_cast<double>(cl.members.size()) / total;
        if (share >= th.dominant_share)
            return Regime::consensus;
        if (share >= th.major_share) {
            ++poles;
            covered += share;
        }
    }
    if (poles >= th.min_poles && poles <= th.max_poles && covered >= th.covered_share)
        return Regime::polarization;
    return Regime::fragmentation;
}

struct MetricsReport {
    double initial_width = 0.0;
    double final_width = 0.0;
    std::optional<double> opinion_spread;
    std::optional<double> in_group_distance;
    std::optional<double> out_group_distance;
    std::optional<double> proportional_spread;
    std::optional<double> initial_proportional_spread;
    std::size_t cluster_count = 0;
    Regime regime = Regime::consensus;

    /// Column order of to_csv_row().
    static std::vector<std::string> csv_columns()
    {
        return {"initial_width",      "final_width",       "opinion_spread",
                "in_group_distance",  "out_group_distance", "proportional_spread",
                "initial_proportional_spread", "cluster_count", "regime"};
    }

    /// Absent optional values are written as empty fields.
    std::vector<std::string> to_csv_row() const
    {
        auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
        return {format_double(initial_width),
                format_double(final_width),
                opt(opinion_spread),
                opt(in_group_distance),
                opt(out_group_distance),
                opt(proportional_spread),
                opt(initial_proportional_spread),
                std::to_string(cluster_count),
                std::string(to_string(regime))};
    }

    /// Inverse of to_csv_row().
    static MetricsReport from_csv_row(const std::vector<std::string_view>& f)
    {
        if (f.size() != csv_columns().size())
            throw Error(ErrorCode::parse_error, "metrics row has " + std::to_string(f.size()) + " fields");
        auto opt = [](std::string_view v) { return v.empty() ? std::nullopt : std::optional<double>(parse_double(v)); };
        MetricsReport r;
        r.initial_width = parse_double(f[0]);
        r.final_width = parse_double(f[1]);
        r.opinion_spread = opt(f[2]);
        r.in_group_distance = opt(f[3]);
        r.out_group_distance = opt(f[4]);
        r.proportional_spread = opt(f[5]);
        r.initial_proportional_spread = opt(f[6]);
        r.cluster_count = parse_integer<std::size_t>(f[7]);
        r.regime = parse_regime(f[8]);
        return r;
    }

    nlohmann::json to_json() const
    {
        auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
        return {{"initial_width", initial_width},
                {"final_width", final_width},
                {"opinion_spread", opt(opinion_spread)},
                {"in_group_distance", opt(in_group_distance)},
                {"out_group_distance", opt(out_group_distance)},
                {"proportional_spread", opt(proportional_spread)},
                {"initial_proportional_spread", opt(initial_proportional_spread)},
                {"cluster_count", cluster_count},
                {"regime", std::string(to_string(regime))}};
    }
};

struct MetricsOptions {
    std::optional<double> gap_threshold; ///< defaults to c / 2
    RegimeThresholds regime;
};

inline MetricsReport compute_metrics(const OpinionState& initial, const OpinionState& final,
                                     const std::optional<GroupAssignment>& groups, double c,
                                     const MetricsOptions& options = {})
{
    if (initial.size() != final.size())
        throw Error(ErrorCode::dimension_mismatch, "initial and final states differ in length");
    MetricsReport r;
    r.initial_width = initial.width();
    r.final_width = final.width();
    if (r.initial_width > 0.0)
        r.opinion_spread = r.final_width / r.initial_width;
    if (groups && groups->group_count() >= 2) {
        const auto d = group_distances(final, *groups);
        r.in_group_distance = d.in_group;
        r.out_group_distance = d.out_group;
        if (d.out_group > 0.0)
            r.proportional_spread = d.in_group / d.out_group;
        const auto d0 = group_distances(initial, *groups);
        if (d0.out_group > 0.0)
            r.initial_proportional_spread = d0.in_group / d0.out_group;
    }
    const auto clusters = cluster_opinions(final, options.gap_threshold.value_or(c / 2.0));
    r.cluster_count = clusters.size();
    r.regime = classify_regime(clusters, final.size(), options.regime);
    return r;
}

} // namespace signed_hk

#endif // SIGNED_HK_METRICS_HPP
