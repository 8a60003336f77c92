#pragma once

#include <cstdint>
#include <random>

namespace treeshift {

// splitmix64: used to derive independent per-object streams from a user seed.
// Fully specified, so results are identical across platforms.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

// Deterministic RNG wrapper. mt19937_64 plus rejection sampling gives the
// same sequence on every platform; std::uniform_int_distribution would not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform value in [0, n). n must be positive.
    int uniform_int(int n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return static_cast<int>(v % bound);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace treeshift
