#pragma once

// Deterministic seeded randomness.  SplitMix64 is used as a counter-based
// generator: output i of stream (seed, label) is mix(seed ^ hash(label), i),
// which makes parallel runs reproducible regardless of scheduling.  Artifact
// headers record the generator name ("splitmix64").

#include "nbox/rational.hpp"

#include <cstdint>
#include <string>

namespace nbox {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent substream for a named purpose; stable across versions.
    Rng fork(const std::string& label) const {
        std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
        for (unsigned char c : label) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        return Rng(splitmix64(state_ ^ h));
    }

    std::uint64_t next_u64() { return splitmix64(state_ += 0x9e3779b97f4a7c15ULL); }

    // Uniform in [0, bound), bound > 0, by rejection (exact, deterministic).
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    long long range(long long lo, long long hi) {  // inclusive ends
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Small rational with numerator in [-mag, mag] and denominator in {1, 2, 4}.
    Rational small_rational(long long mag) {
        static const long long dens[3] = {1, 2, 4};
        return Rational(range(-mag, mag), dens[below(3)]);
    }

private:
    std::uint64_t state_;
};

inline const char* rng_name() { return "splitmix64"; }

}  // namespace nbox
