#pragma once

#include <cstdint>
#include <random>

namespace qfft {

/// Seedable generator with a platform-independent output sequence.
/// std::mt19937_64's sequence is fixed by the standard; the real-valued
/// distributions of <random> are not, so the mapping to doubles lives here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

/// Independent sub-stream seed for (seed, stream), via SplitMix64 mixing.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace qfft
