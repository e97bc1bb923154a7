#ifndef SIGNED_HK_SIGNED_GRAPH_HPP
#define SIGNED_HK_SIGNED_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "signed_hk/error.hpp"
#include "signed_hk/rng.hpp"

namespace signed_hk {

struct SignedEdge {
    std::size_t i;
    std::size_t j;
    int sign; // -1 or +1

    friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

struct Neighbor {
    std::size_t node;
    int sign;
};

/// Node -> group index in [0, k).
class GroupAssignment {
public:
    GroupAssignment() = default;

    GroupAssignment(std::size_t k, std::vector<std::size_t> membership)
        : k_(k), membership_(std::move(membership))
    {
        if (k_ == 0)
            throw Error(ErrorCode::invalid_group_count, "group count must be positive");
        for (std::size_t g : membership_)
            if (g >= k_)
                throw Error(ErrorCode::index_out_of_range,
                            "group index " + std::to_string(g) + " >= k=" + std::to_string(k_));
    }

    /// Contiguous partition: node i -> floor(i * k / n).
    static GroupAssignment balanced(std::size_t n, std::size_t k)
    {
        if (k < 1 || k > n)
            throw Error(ErrorCode::invalid_group_count,
                        "k=" + std::to_string(k) + " must satisfy 1 <= k <= n=" + std::to_string(n));
        std::vector<std::size_t> membership(n);
        for (std::size_t i = 0; i < n; ++i)
            membership[i] = i * k / n;
        return GroupAssignment(k, std::move(membership));
    }

    /// Contiguous blocks of the given sizes, in order.
    static GroupAssignment from_sizes(std::span<const std::size_t> sizes)
    {
        std::vector<std::size_t> membership;
        for (std::size_t g = 0; g < sizes.size(); ++g)
            membership.insert(membership.end(), sizes[g], g);
        return GroupAssignment(sizes.size(), std::move(membership));
    }

    std::size_t group_count() const noexcept { return k_; }
    std::size_t node_count() const noexcept { return membership_.size(); }
    std::size_t group_of(std::size_t node) const { return membership_.at(node); }
    std::span<const std::size_t> membership() const noexcept { return membership_; }

    std::vector<std::size_t> sizes() const
    {
        std::vector<std::size_t> out(k_, 0);
        for (std::size_t g : membership_)
            ++out[g];
        return out;
    }

    /// True when every group occupies one run of consecutive node labels.
    bool is_contiguous() const
    {
        for (std::size_t i = 1; i < membership_.size(); ++i)
            if (membership_[i] < membership_[i - 1])
                return false;
        return true;
    }

    friend bool operator==(const GroupAssignment&, const GroupAssignment&) = default;

private:
    std::size_t k_ = 0;
    std::vector<std::size_t> membership_;
};

enum class Storage { automatic, dense, sparse };

/// Undirected signed graph. Diagonal entries are implicitly +1 and never
/// appear in neighbor lists. Immutable after construction.
///
/// Neighbor lists are always kept, sorted by node index. When dense storage
/// is selected (automatic: n <= dense_limit) an n x n sign matrix backs sign()
/// lookups and simulation iterates matrix rows instead of lists.
class SignedGraph {
public:
    static constexpr std::size_t dense_limit = 4096;

    SignedGraph() = default;

    SignedGraph(std::size_t n, std::span<const SignedEdge> edges,
                std::optional<GroupAssignment> groups = std::nullopt,
                Storage storage = Storage::automatic)
        : n_(n), groups_(std::move(groups))
    {
        if (groups_ && groups_->node_count() != n_)
            throw Error(ErrorCode::dimension_mismatch,
                        "group assignment covers " + std::to_string(groups_->node_count()) +
                            " nodes, graph has " + std::to_string(n_));

        std::vector<SignedEdge> canon;
        canon.reserve(edges.size());
        for (const auto& e : edges) {
            if (e.i >= n_ || e.j >= n_)
                throw Error(ErrorCode::index_out_of_range,
                            "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                ") outside n=" + std::to_string(n_));
            if (e.i == e.j)
                throw Error(ErrorCode::self_loop_rejected,
                            "explicit self-loop on node " + std::to_string(e.i));
            if (e.sign != 1 && e.sign != -1)
                throw Error(ErrorCode::invalid_parameter,
                            "edge sign must be -1 or +1, got " + std::to_string(e.sign));
            canon.push_back({std::min(e.i, e.j), std::max(e.i, e.j), e.sign});
        }
        std::sort(canon.begin(), canon.end(), [](const SignedEdge& a, const SignedEdge& b) {
            return std::tie(a.i, a.j, a.sign) < std::tie(b.i, b.j, b.sign);
        });
        std::vector<SignedEdge> unique;
        unique.reserve(canon.size());
        for (const auto& e : canon) {
            if (!unique.empty() && unique.back().i == e.i && unique.back().j == e.j) {
                if (unique.back().sign != e.sign)
                    throw Error(ErrorCode::conflicting_edge_sign,
                                "pair (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                                    ") listed with both signs");
                continue;
            }
            unique.push_back(e);
        }
        build(unique, storage);
    }

    std::size_t size() const noexcept { return n_; }
    bool is_dense() const noexcept { return !dense_.empty(); }

    /// A_ij; the diagonal is +1.
    int sign(std::size_t i, std::size_t j) const
    {
        if (i >= n_ || j >= n_)
            throw Error(ErrorCode::index_out_of_range, "node index outside graph");
        if (i == j)
            return 1;
        if (!dense_.empty())
            return dense_[i * n_ + j];
        auto nb = neighbors(i);
        auto it = std::lower_bound(nb.begin(), nb.end(), j,
                                   [](const Neighbor& a, std::size_t v) { return a.node < v; });
        return (it != nb.end() && it->node == j) ? it->sign : 0;
    }

    /// Off-diagonal neighbors of i in increasing node order.
    std::span<const Neighbor> neighbors(std::size_t i) const
    {
        return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    /// Row i of the dense sign matrix (diagonal included); empty in sparse mode.
    std::span<const std::int8_t> dense_row(std::size_t i) const
    {
        if (dense_.empty())
            return {};
        return {dense_.data() + i * n_, n_};
    }

    std::size_t edge_count() const noexcept { return m_; }
    std::size_t repulsive_edge_count() const noexcept { return m_r_; }

    const std::optional<GroupAssignment>& groups() const noexcept { return groups_; }

    /// Each unordered pair once, i < j, lexicographic order.
    std::vector<SignedEdge> edges() const
    {
        std::vector<SignedEdge> out;
        out.reserve(m_);
        for (std::size_t i = 0; i < n_; ++i)
            for (const auto& nb : neighbors(i))
                if (nb.node > i)
                    out.push_back({i, nb.node, nb.sign});
        return out;
    }

    /// Same topology with a different storage backend.
    SignedGraph with_storage(Storage storage) const
    {
        auto e = edges();
        return SignedGraph(n_, e, groups_, storage);
    }

    friend bool operator==(const SignedGraph& a, const SignedGraph& b)
    {
        return a.n_ == b.n_ && a.groups_ == b.groups_ && a.edges() == b.edges();
    }

private:
    void build(const std::vector<SignedEdge>& unique, Storage storage)
    {
        m_ = unique.size();
        m_r_ = static_cast<std::size_t>(
            std::count_if(unique.begin(), unique.end(), [](const SignedEdge& e) { return e.sign < 0; }));

        std::vector<std::size_t> degree(n_, 0);
        for (const auto& e : unique) {
            ++degree[e.i];
            ++degree[e.j];
        }
        offsets_.assign(n_ + 1, 0);
        std::partial_sum(degree.begin(), degree.end(), offsets_.begin() + 1);
        adjacency_.resize(offsets_[n_]);
        std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : unique) {
            adjacency_[cursor[e.i]++] = {e.j, e.sign};
            adjacency_[cursor[e.j]++] = {e.i, e.sign};
        }
        for (std::size_t i = 0; i < n_; ++i)
            std::sort(adjacency_.begin() + offsets_[i], adjacency_.begin() + offsets_[i + 1],
                      [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });

        const bool dense = storage == Storage::dense ||
                           (storage == Storage::automatic && n_ <= dense_limit);
        if (dense && n_ > 0) {
            dense_.assign(n_ * n_, 0);
            for (std::size_t i = 0; i < n_; ++i)
                dense_[i * n_ + i] = 1;
            for (const auto& e : unique) {
                dense_[e.i * n_ + e.j] = static_cast<std::int8_t>(e.sign);
                dense_[e.j * n_ + e.i] = static_cast<std::int8_t>(e.sign);
            }
        }
    }

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::size_t m_r_ = 0;
    std::optional<GroupAssignment> groups_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Neighbor> adjacency_;
    std::vector<std::int8_t> dense_;
};

inline SignedGraph build_signed_graph(std::size_t n, std::span<const SignedEdge> edges)
{
    return SignedGraph(n, edges);
}

inline SignedGraph build_signed_graph(std::size_t n, std::initializer_list<SignedEdge> edges)
{
    return SignedGraph(n, std::span<const SignedEdge>(edges.begin(), edges.size()));
}

namespace detail {

inline void check_probability(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw Error(ErrorCode::invalid_probability,
                    std::string(name) + "=" + std::to_string(p) + " outside [0, 1]");
}

/// One pair of the A1 - A2 construction. Both draws are always consumed so
/// the stream position depends only on the pair index.
inline int sample_sign(Rng& rng, double p_pos, double p_neg)
{
    const int a1 = bernoulli(rng, p_pos) ? 1 : 0;
    const int a2 = bernoulli(rng, p_neg) ? 1 : 0;
    return a1 - a2;
}

} // namespace detail

/// Signed Erdos-Renyi graph A = A1 - A2, A1 ~ ER(n, p1), A2 ~ ER(n, p2).
inline SignedGraph generate_er_signed(std::size_t n, double p1, double p2, Rng& rng,
                                      Storage storage = Storage::automatic)
{
    detail::check_probability(p1, "p1");
    detail::check_probability(p2, "p2");
    if (n < 1)
        throw Error(ErrorCode::invalid_parameter, "n must be >= 1");
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (int s = detail::sample_sign(rng, p1, p2); s != 0)
                edges.push_back({i, j, s});
    return SignedGraph(n, edges, std::nullopt, storage);
}

/// Signed SBM: same-group pairs use (p1, p2), cross-group pairs (p1*rho, p2*rho).
/// Groups are the balanced contiguous partition.
inline SignedGraph generate_sbm_signed(std::size_t n, std::size_t k, double p1, double p2, double rho,
                                       Rng& rng, Storage storage = Storage::automatic)
{
    detail::check_probability(p1, "p1");
    detail::check_probability(p2, "p2");
    detail::check_probability(rho, "rho");
    auto groups = GroupAssignment::balanced(n, k);
    const auto membership = groups.membership();
    std::vector<SignedEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same = membership[i] == membership[j];
            const double q1 = same ? p1 : p1 * rho;
            const double q2 = same ? p2 : p2 * rho;
            if (int s = detail::sample_sign(rng, q1, q2); s != 0)
                edges.push_back({i, j, s});
        }
    }
    return SignedGraph(n, edges, std::move(groups), storage);
}

/// Drops every edge whose endpoints are not strictly within c of each other.
inline SignedGraph receptivity_subgraph(const SignedGraph& graph, std::span<const double> state, double c)
{
    if (state.size() != graph.size())
        throw Error(ErrorCode::dimension_mismatch,
                    "state length " + std::to_string(state.size()) + " != n=" + std::to_string(graph.size()));
    if (!(c > 0.0))
        throw Error(ErrorCode::invalid_parameter, "confidence bound must be positive");
    std::vector<SignedEdge> kept;
    for (const auto& e : graph.edges())
        if (std::abs(state[e.j] - state[e.i]) < c)
            kept.push_back(e);
    return SignedGraph(graph.size(), kept, graph.groups(),
                       graph.is_dense() ? Storage::dense : Storage::sparse);
}

} // namespace signed_hk

#endif // SIGNED_HK_SIGNED_GRAPH_HPP
