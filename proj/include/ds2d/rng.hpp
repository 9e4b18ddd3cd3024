#pragma once

#include <cstdint>
#include <random>

namespace ds2d {

// splitmix64 finalizer. Whitens user-facing seeds and derives substream seeds.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed of substream `index` under run seed `seed`. A draw always sees the same
// substream no matter how draws are partitioned across workers, so results are
// identical for any worker count.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 1));
}

// Deterministic uniform generator. mt19937_64 output is fully specified by the
// standard and the float conversion below avoids std::uniform_real_distribution,
// whose algorithm is implementation-defined; sequences are therefore
// reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    // Uniform on the open interval (0,1).
    double uniform01() {
        const std::uint64_t bits = gen_() >> 11; // top 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1p-53;
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace ds2d
