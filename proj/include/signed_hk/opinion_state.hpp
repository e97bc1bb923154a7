#ifndef SIGNED_HK_OPINION_STATE_HPP
#define SIGNED_HK_OPINION_STATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "signed_hk/error.hpp"
#include "signed_hk/rng.hpp"

namespace signed_hk {

/// Opinions of all nodes at one timestep. Entries are always finite.
class OpinionState {
public:
    OpinionState() = default;

    explicit OpinionState(std::vector<double> values) : values_(std::move(values))
    {
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i]))
                throw Error(ErrorCode::invalid_parameter,
                            "opinion of node " + std::to_string(i) + " is not finite");
    }

    OpinionState(std::initializer_list<double> values) : OpinionState(std::vector<double>(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }

    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    /// max_{i,j} |x_i - x_j|
    double width() const
    {
        if (values_.empty())
            return 0.0;
        auto [lo, hi] = std::minmax_element(values_.begin(), values_.end());
        return *hi - *lo;
    }

    OpinionState shifted(double offset) const
    {
        std::vector<double> out(values_);
        for (double& v : out)
            v += offset;
        return OpinionState(std::move(out));
    }

    friend bool operator==(const OpinionState&, const OpinionState&) = default;

private:
    std::vector<double> values_;
};

/// Max-norm distance between two equally sized states.
inline double max_abs_difference(const OpinionState& a, const OpinionState& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::dimension_mismatch, "states differ in length");
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        out = std::max(out, std::abs(a[i] - b[i]));
    return out;
}

inline OpinionState uniform_opinions(std::size_t n, double lo, double hi, Rng& rng)
{
    if (!(lo < hi))
        throw Error(ErrorCode::invalid_parameter, "opinion interval requires lo < hi");
    std::vector<double> x(n);
    for (double& v : x)
        v = uniform(rng, lo, hi);
    return OpinionState(std::move(x));
}

} // namespace signed_hk

#endif // SIGNED_HK_OPINION_STATE_HPP
