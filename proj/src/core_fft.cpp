#include "qfft/core_fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qfft {

bool is_power_of_two(std::size_t n) noexcept { return std::has_single_bit(n); }

void validate_transform_size(std::size_t n) {
    if (!is_power_of_two(n) || n < kMinTransformSize || n > kMaxTransformSize) {
        throw std::invalid_argument("transform size " + std::to_string(n) +
                                    " must be a power of two in [2, 65536]");
    }
}

std::size_t stage_count(std::size_t n) {
    validate_transform_size(n);
    return static_cast<std::size_t>(std::countr_zero(n));
}

TwiddleTable::TwiddleTable(std::size_t size) : size_(size) {
    validate_transform_size(size);
    factors_.resize(size / 2);
    factors_[0] = Complex(1.0, 0.0);
    for (std::size_t k = 1; k < size / 2; ++k) {
        // Angle from the exact rational k/N; no recurrence.
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                             static_cast<double>(size);
        factors_[k] = Complex(std::cos(angle), std::sin(angle));
    }
}

TwiddleTable TwiddleTable::conjugated() const {
    std::vector<Complex> conj(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        conj[k] = std::conj(factors_[k]);
    }
    return TwiddleTable(size_, std::move(conj));
}

TwiddleTable twiddle_table(std::size_t n) { return TwiddleTable(n); }

SignalVector dft_naive(std::span<const Complex> x) {
    const std::size_t n = x.size();
    validate_transform_size(n);
    SignalVector out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            // Reduce k*i modulo N so the angle stays in [0, 2 pi).
            const std::size_t phase = (k * i) % n;
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) /
                                 static_cast<double>(n);
            acc += x[i] * Complex(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

std::size_t reverse_bits(std::size_t value, std::size_t bit_count) noexcept {
    std::size_t reversed = 0;
    for (std::size_t bit = 0; bit < bit_count; ++bit) {
        reversed = (reversed << 1U) | (value & 1U);
        value >>= 1U;
    }
    return reversed;
}

SignalVector bit_reverse_permute(std::span<const Complex> x) {
    const std::size_t bits = stage_count(x.size());
    SignalVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = x[reverse_bits(i, bits)];
    }
    return out;
}

SignalVector fft_reference(std::span<const Complex> x, Direction direction) {
    const std::size_t n = x.size();
    const std::size_t stages = stage_count(n);
    const TwiddleTable forward(n);
    const TwiddleTable twiddles =
        direction == Direction::Inverse ? forward.conjugated() : forward;

    SignalVector data;
    if (direction == Direction::Inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        SignalVector scaled(x.begin(), x.end());
        for (Complex& v : scaled) {
            v *= scale;
        }
        data = bit_reverse_permute(scaled);
    } else {
        data = bit_reverse_permute(x);
    }

    for (std::size_t s = 1; s <= stages; ++s) {
        const std::size_t span_len = std::size_t{1} << s;
        const std::size_t half = span_len / 2;
        const std::size_t stride = n / span_len;
        for (std::size_t base = 0; base < n; base += span_len) {
            for (std::size_t j = 0; j < half; ++j) {
                auto [top, bottom] =
                    butterfly(data[base + j], data[base + j + half], twiddles[j * stride]);
                data[base + j] = top;
                data[base + j + half] = bottom;
            }
        }
    }
    return data;
}

}  // namespace qfft
