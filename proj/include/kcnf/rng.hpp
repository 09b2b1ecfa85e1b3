#pragma once

#include <cstdint>
#include <random>

#include "kcnf/rational.hpp"

namespace kcnf {

// Seedable, reproducible generator. mt19937_64 has a fully specified output
// sequence, and the bounded draws below avoid the implementation-defined
// std::uniform_int_distribution, so runs replay bit-for-bit across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return eng_(); }

    bool bit() { return (next_u64() >> 63) != 0; }

    // Uniform integer in [0, bound). Rejection from the top range keeps it exact.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % bound;
    }

    // Exact Bernoulli(p) for rational p in [0, 1].
    bool bernoulli(const Rational& p) {
        if (p.num <= 0) return false;
        if (p.num >= p.den) return true;
        return below(static_cast<std::uint64_t>(p.den)) < static_cast<std::uint64_t>(p.num);
    }

    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Independent stream derived from this generator's seed; deterministic in
    // (seed, stream) and unaffected by draws already made here.
    Rng split(std::uint64_t stream) const { return Rng(mix(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))); }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace kcnf
