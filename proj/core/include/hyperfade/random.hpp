#pragma once

#include <cstdint>
#include <random>

namespace hyperfade {

/// Identifies one deterministic random stream. Parallel consumers own
/// disjoint streams by construction: (seed, stream) pairs never collide.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Deterministic uniform stream on the open interval (0,1). The engine state
/// is a pure function of (seed, stream), and the uniform mapping avoids both
/// endpoints so inverse-CDF sampling never evaluates a quantile at 0 or 1.
/// Output is identical across platforms (mt19937_64 is fully specified).
class StreamRng {
public:
    explicit StreamRng(StreamId id)
        : engine_(detail::splitmix64(detail::splitmix64(id.seed) ^
                                     detail::splitmix64(~id.stream))) {}

    StreamRng(std::uint64_t seed, std::uint64_t stream)
        : StreamRng(StreamId{seed, stream}) {}

    /// u in (0,1), 53-bit resolution.
    double uniform_open() {
        const std::uint64_t bits = engine_() >> 11;  // 53 bits
        return (double(bits) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace hyperfade
