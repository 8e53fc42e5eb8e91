#pragma once

#include <cstdint>
#include <random>

namespace greedylab {

// Seeded generator with platform-independent real draws (mt19937_64 bits,
// 53-bit mantissa construction) so reports match across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    double sign() { return (engine_() >> 63) ? -1.0 : 1.0; }
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

// Derives independent sub-seeds from a master seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace greedylab
