#pragma once

#include <cstdint>
#include <string>

namespace enersim {

// Deterministic stream RNG. Algorithm is splitmix64: the state advances by a
// fixed odd constant and the output is a finalizing mix of the counter, so the
// sequence depends only on the seed. Identical seeds give identical sequences
// on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    static constexpr const char* kAlgorithm = "splitmix64";

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform real in [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + uniform() * (b - a); }

    // Uniform integer in [0, n), n >= 1. Multiply-shift reduction; the bias of
    // at most n/2^64 is irrelevant for the ranges used here.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

inline RngStream make_rng(std::uint64_t seed) { return RngStream(seed); }

}  // namespace enersim
