#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qfft/core_fft.hpp"
#include "qfft/quantization.hpp"
#include "qfft/signal.hpp"

namespace qfft {

/// SQNR reported when the test output matches the reference exactly.
inline constexpr double kSqnrCapDb = 300.0;

struct Comparison {
    SignalVector errors;  // reference - test
    double percent_error = 0.0;
    double sqnr_db = 0.0;
};

/// Error of `test` against `reference`. percent_error = 100 |e|_2 / |ref|_2;
/// SQNR pools real and imaginary parts into one real sample set and is capped
/// at kSqnrCapDb. Throws std::invalid_argument on length mismatch or a zero
/// reference.
Comparison compare(std::span<const Complex> reference, std::span<const Complex> test);

inline constexpr int kMaxSweepBits = 24;

struct SweepSpec {
    std::size_t size = 1024;
    Direction direction = Direction::Forward;
    QuantizerMode mode = QuantizerMode::Uniform;
    int bits_lo = 6;
    int bits_hi = 14;
    SignalSpec signal;
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    /// Input-referenced full scale for uniform mode; stage s uses 2^s times it.
    double full_scale = 1.0;
    bool twiddle_quantization = false;
    /// Twiddle ROM resolution; the row's bit count when unset.
    std::optional<int> twiddle_bits;
    /// Worker threads for the trials of one row. Results do not depend on it.
    std::size_t workers = 1;

    void validate() const;
};

struct ErrorReport {
    int bits = 0;
    double error_mean = 0.0;
    double error_std = 0.0;
    double error_variance = 0.0;
    double percent_error = 0.0;
    double sqnr_db = 0.0;
    double theory_variance = 0.0;
    double saturation_rate = 0.0;
};

/// One row per bit count: every stage quantized at that resolution, `trials`
/// seeded random signals, errors pooled across trials. Deterministic in the
/// seed regardless of `workers`.
std::vector<ErrorReport> run_sweep(const SweepSpec& spec);

struct CharacterizationRow {
    int bits = 0;
    double empirical_mean = 0.0;
    double empirical_variance = 0.0;
    double theory_variance = 0.0;
};

inline constexpr std::size_t kMinCharacterizationSamples = 10'000;

/// Pure quantizer Monte-Carlo, no transform. Uniform mode: absolute error of
/// x ~ Uniform[-full_scale, full_scale]. Mantissa mode: relative error of
/// x = +-2^e M with M ~ Uniform[1/2, 1) and a random exponent.
std::vector<CharacterizationRow> quantizer_characterization(QuantizerMode mode, int bits_lo,
                                                            int bits_hi,
                                                            std::size_t sample_count,
                                                            std::uint64_t seed,
                                                            double full_scale = 1.0);

/// Least-squares slope of sqnr_db against bits.
double sqnr_slope(std::span<const ErrorReport> rows);

/// First index i such that every later step |curve[j+1] - curve[j]| (j >= i)
/// is below `threshold` times the curve's initial value, i.e. where the curve
/// flattens on a linear plot. nullopt if the curve never settles.
std::optional<std::size_t> plateau_onset(std::span<const double> curve, double threshold = 0.05);

}  // namespace qfft
