#pragma once

#include <cstdint>

namespace bnsl {

/**
 * Deterministic 64-bit generator (splitmix64, Steele et al.).
 *
 * Every stochastic operation in the toolkit draws exclusively from this
 * generator, never from std:: distributions, so a given seed reproduces
 * bit-identical results on any platform or compiler.
 *
 * Stream splitting: child(k) derives an independent stream from the
 * creating seed and the key k alone. It does not depend on how many draws
 * were made, so e.g. trial t of an experiment always sees the same stream
 * regardless of evaluation order.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), n > 0. Modulo bias is < n / 2^64 and is
    // irrelevant at the domain sizes used here.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Independent stream for sub-task `key`, derived from the seed this
    // generator was constructed with.
    Rng child(std::uint64_t key) const {
        std::uint64_t z = seed_ ^ (0xbf58476d1ce4e5b9ull * (key + 1));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return Rng(z ^ (z >> 31));
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

}  // namespace bnsl
