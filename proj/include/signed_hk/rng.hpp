#ifndef SIGNED_HK_RNG_HPP
#define SIGNED_HK_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace signed_hk {

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Standard distributions are not portable across library
// implementations, so variates are derived from raw engine output here.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : text) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Stream-splitting rule: child = mix(master, tag, indices...). Each index is
/// folded in with its own splitmix round so (1, 2) and (2, 1) differ.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::initializer_list<std::uint64_t> indices = {})
{
    std::uint64_t h = splitmix64(master ^ splitmix64(fnv1a64(tag)));
    for (std::uint64_t idx : indices)
        h = splitmix64(h ^ splitmix64(idx + 0x632be59bd9b4e019ULL));
    return h;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi)
{
    return lo + (hi - lo) * uniform01(rng);
}

inline bool bernoulli(Rng& rng, double p)
{
    return uniform01(rng) < p;
}

/// Seed from the OS entropy source, for runs where the caller gave none.
inline std::uint64_t entropy_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

} // namespace signed_hk

#endif // SIGNED_HK_RNG_HPP
