#ifndef SAD_RNG_HPP
#define SAD_RNG_HPP

#include <cstdint>

namespace sad {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic PRNG used everywhere randomness must be reproducible across
// platforms and standard libraries; std::uniform_* distributions are not
// guaranteed to produce identical streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        return mix64(state_ += 0x9e3779b97f4a7c15ULL);
    }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n), n >= 1
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n));
    }

    // uniform in [lo, hi)
    double next_range(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

private:
    std::uint64_t state_;
};

// Stateless counter-based draw keyed by (seed, i, j), independent of
// evaluation order.
inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = mix64(a + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (b + 0x9e3779b97f4a7c15ULL));
    h = mix64(h ^ (c + 0x9e3779b97f4a7c15ULL));
    return h;
}

} // namespace sad

#endif
