#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace qfft {

enum class QuantizerMode { Off, Uniform, Mantissa };

std::string_view to_string(QuantizerMode mode) noexcept;
/// Parses "off", "uniform" or "mantissa"; throws std::invalid_argument.
QuantizerMode parse_quantizer_mode(std::string_view text);

inline constexpr int kMinQuantizerBits = 1;
inline constexpr int kMaxQuantizerBits = 52;

/// Static quantizer configuration.
///
/// Uniform mode is a mid-tread staircase on [-full_scale, full_scale] with
/// step q = 2 * full_scale * 2^-bits, so q^2/12 = (1/3) full_scale^2 2^-2bits.
/// Mantissa mode rounds the normalized mantissa M in [1/2, 1) to a multiple
/// of q = 2^-bits and leaves the exponent alone. full_scale is ignored there.
struct QuantizerSpec {
    QuantizerMode mode = QuantizerMode::Off;
    int bits = 16;
    double full_scale = 1.0;

    static QuantizerSpec off() { return {}; }
    static QuantizerSpec uniform(int bits, double full_scale) {
        return {QuantizerMode::Uniform, bits, full_scale};
    }
    static QuantizerSpec mantissa(int bits) { return {QuantizerMode::Mantissa, bits, 1.0}; }

    /// Throws std::invalid_argument unless 1 <= bits <= 52 and, in uniform
    /// mode, full_scale is finite and positive. Off mode always validates.
    void validate() const;

    /// Quantization step; 0 when mode is off.
    double step() const;

    bool operator==(const QuantizerSpec&) const = default;
};

/// Mid-tread uniform quantizer with round-half-to-even and clamping to
/// +-full_scale. Increments saturation_count when clamping occurs.
double quantize_uniform(double x, const QuantizerSpec& spec, std::size_t& saturation_count);
double quantize_uniform(double x, const QuantizerSpec& spec);

/// Rounds the mantissa of x (x = 2^e M, M in [1/2, 1)) to a multiple of
/// 2^-bits, half-to-even. Zero, infinities and NaN pass through.
double quantize_mantissa(double x, const QuantizerSpec& spec);

/// Dispatches on spec.mode; mode off returns x unchanged.
double quantize(double x, const QuantizerSpec& spec, std::size_t& saturation_count);

/// h = x - Q(x).
constexpr double quantization_error(double x, double qx) noexcept { return x - qx; }

/// epsilon = (Q(x) - x) / x; throws std::domain_error for x == 0.
double relative_error(double x, double qx);

/// q^2 / 12 for a uniform quantizer.
double theory_variance_uniform(const QuantizerSpec& spec);

/// Closed form of (2/q) int_{1/2}^{1} int_{-q/2}^{q/2} alpha^2/M^2 dalpha dM,
/// which is q^2 / 6: twice the uniform value for the same step, not half.
double theory_variance_mantissa(const QuantizerSpec& spec);

/// 10 log10(signal_variance / noise_variance); throws std::domain_error if
/// either variance is not positive.
double snr_db(double signal_variance, double noise_variance);

struct QuantizationStats {
    double error_mean = 0.0;
    double error_std = 0.0;
    double error_variance = 0.0;
    std::size_t sample_count = 0;
    std::size_t saturation_count = 0;
};

/// Population mean, standard deviation and variance; throws
/// std::invalid_argument for fewer than two samples.
QuantizationStats empirical_stats(std::span<const double> errors);

/// Streaming mean/variance accumulator (Welford), mergeable across shards by
/// count-weighted combination.
class RunningStats {
public:
    void add(double value) noexcept;
    void merge(const RunningStats& other) noexcept;

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    /// Population variance; 0 for fewer than one sample.
    double variance() const noexcept;
    double sum_of_squares() const noexcept { return sum_sq_; }

    /// Requires count() >= 2.
    QuantizationStats to_stats(std::size_t saturation_count = 0) const;

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double sum_sq_ = 0.0;
};

}  // namespace qfft
