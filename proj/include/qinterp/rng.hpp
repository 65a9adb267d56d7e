#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace qinterp {

/// Mixing function used to derive independent per-task seeds from one
/// master seed (splitmix64 finalizer).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix64(master ^ mix64(index + 1));
}

/// Deterministic random source. Wraps std::mt19937_64 (whose output
/// sequence is fixed by the standard) and adds bias-free bounded draws,
/// so identical seeds give identical streams on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound), rejection-sampled to avoid modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::uniform_below: bound must be positive");
        if (bound == 1) return 0;
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace qinterp
