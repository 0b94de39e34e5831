#include "qfft/quantization.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfft {

std::string_view to_string(QuantizerMode mode) noexcept {
    switch (mode) {
        case QuantizerMode::Off: return "off";
        case QuantizerMode::Uniform: return "uniform";
        case QuantizerMode::Mantissa: return "mantissa";
    }
    return "off";
}

QuantizerMode parse_quantizer_mode(std::string_view text) {
    if (text == "off") return QuantizerMode::Off;
    if (text == "uniform") return QuantizerMode::Uniform;
    if (text == "mantissa") return QuantizerMode::Mantissa;
    throw std::invalid_argument("unknown quantizer mode '" + std::string(text) +
                                "' (expected off, uniform or mantissa)");
}

void QuantizerSpec::validate() const {
    if (mode == QuantizerMode::Off) {
        return;
    }
    if (bits < kMinQuantizerBits || bits > kMaxQuantizerBits) {
        throw std::invalid_argument("quantizer bits " + std::to_string(bits) +
                                    " outside [1, 52]");
    }
    if (mode == QuantizerMode::Uniform && !(std::isfinite(full_scale) && full_scale > 0.0)) {
        throw std::invalid_argument("uniform quantizer full scale must be positive and finite");
    }
}

double QuantizerSpec::step() const {
    switch (mode) {
        case QuantizerMode::Off: return 0.0;
        case QuantizerMode::Uniform: return std::ldexp(2.0 * full_scale, -bits);
        case QuantizerMode::Mantissa: return std::ldexp(1.0, -bits);
    }
    return 0.0;
}

double quantize_uniform(double x, const QuantizerSpec& spec, std::size_t& saturation_count) {
    const double q = spec.step();
    // full_scale is exactly 2^(bits-1) steps.
    const double max_level = std::ldexp(1.0, spec.bits - 1);
    // nearbyint honours the default round-to-nearest-even mode.
    double level = std::nearbyint(x / q);
    if (level > max_level) {
        level = max_level;
        ++saturation_count;
    } else if (level < -max_level) {
        level = -max_level;
        ++saturation_count;
    }
    if (level == 0.0) {
        return 0.0;
    }
    return level * q;
}

double quantize_uniform(double x, const QuantizerSpec& spec) {
    std::size_t ignored = 0;
    return quantize_uniform(x, spec, ignored);
}

double quantize_mantissa(double x, const QuantizerSpec& spec) {
    if (x == 0.0 || !std::isfinite(x)) {
        return x;
    }
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);  // |mantissa| in [1/2, 1)
    const double rounded = std::nearbyint(std::ldexp(mantissa, spec.bits));
    return std::ldexp(rounded, exponent - spec.bits);
}

double quantize(double x, const QuantizerSpec& spec, std::size_t& saturation_count) {
    switch (spec.mode) {
        case QuantizerMode::Off: return x;
        case QuantizerMode::Uniform: return quantize_uniform(x, spec, saturation_count);
        case QuantizerMode::Mantissa: return quantize_mantissa(x, spec);
    }
    return x;
}

double relative_error(double x, double qx) {
    if (x == 0.0) {
        throw std::domain_error("relative error is undefined at x = 0");
    }
    return (qx - x) / x;
}

double theory_variance_uniform(const QuantizerSpec& spec) {
    if (spec.mode != QuantizerMode::Uniform) {
        throw std::invalid_argument("theory_variance_uniform requires a uniform quantizer");
    }
    const double q = spec.step();
    return q * q / 12.0;
}

double theory_variance_mantissa(const QuantizerSpec& spec) {
    if (spec.mode != QuantizerMode::Mantissa) {
        throw std::invalid_argument("theory_variance_mantissa requires a mantissa quantizer");
    }
    // (2/q) * (q^3/12) * [-1/M] from 1/2 to 1 = (2/q) * (q^3/12) * 1
    const double q = spec.step();
    return q * q / 6.0;
}

double snr_db(double signal_variance, double noise_variance) {
    if (!(signal_variance > 0.0) || !(noise_variance > 0.0)) {
        throw std::domain_error("SNR requires positive signal and noise variances");
    }
    return 10.0 * std::log10(signal_variance / noise_variance);
}

QuantizationStats empirical_stats(std::span<const double> errors) {
    if (errors.size() < 2) {
        throw std::invalid_argument("empirical_stats needs at least 2 samples");
    }
    const double n = static_cast<double>(errors.size());
    double sum = 0.0;
    for (double e : errors) sum += e;
    const double mean = sum / n;
    double sq = 0.0;
    for (double e : errors) sq += (e - mean) * (e - mean);
    QuantizationStats stats;
    stats.error_mean = mean;
    stats.error_variance = sq / n;
    stats.error_std = std::sqrt(stats.error_variance);
    stats.sample_count = errors.size();
    return stats;
}

void RunningStats::add(double value) noexcept {
    ++count_;
    const double delta = value - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (value - mean_);
    sum_sq_ += value * value;
}

void RunningStats::merge(const RunningStats& other) noexcept {
    if (other.count_ == 0) return;
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    const double total = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / total;
    m2_ += other.m2_ + delta * delta * na * nb / total;
    sum_sq_ += other.sum_sq_;
    count_ += other.count_;
}

double RunningStats::variance() const noexcept {
    return count_ == 0 ? 0.0 : m2_ / static_cast<double>(count_);
}

QuantizationStats RunningStats::to_stats(std::size_t saturation_count) const {
    if (count_ < 2) {
        throw std::invalid_argument("statistics need at least 2 samples");
    }
    QuantizationStats stats;
    stats.error_mean = mean_;
    stats.error_variance = variance();
    stats.error_std = std::sqrt(stats.error_variance);
    stats.sample_count = count_;
    stats.saturation_count = saturation_count;
    return stats;
}

}  // namespace qfft
