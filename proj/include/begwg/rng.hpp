#pragma once

#include <cstdint>
#include <random>

namespace begwg {

// SplitMix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
    return splitmix64(seed ^ splitmix64(block + 0x9e3779b97f4a7c15ULL));
}

// Deterministic uniform stream on the open interval (0,1).
//
// The mapping from engine output to double is spelled out here instead of
// going through std::uniform_real_distribution, whose algorithm is
// implementation-defined and would break cross-platform reproducibility.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        // 53 random bits, offset by half a ulp so 0 and 1 are excluded
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace begwg
