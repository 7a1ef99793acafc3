#pragma once

#include <cstdint>

namespace imago {

/// SplitMix64 generator. The standard <random> distributions are not
/// reproducible across implementations, so samplers in this library draw from
/// this generator only; identical seeds give identical streams everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound), bound > 0. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0} / bound));
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) {
                return v % bound;
            }
        }
    }

    /// Stable derived stream, e.g. one per trial index.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0x632be59bd9b4e019ull + stream * 0x9e3779b97f4a7c15ull));
        return r.next();
    }

private:
    std::uint64_t state_;
};

} // namespace imago
