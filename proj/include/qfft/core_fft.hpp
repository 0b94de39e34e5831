#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qfft {

using Complex = std::complex<double>;

/// A sequence of complex samples whose length is a power of two in [2, 2^16].
using SignalVector = std::vector<Complex>;

inline constexpr std::size_t kMinTransformSize = 2;
inline constexpr std::size_t kMaxTransformSize = std::size_t{1} << 16;

enum class Direction { Forward, Inverse };

bool is_power_of_two(std::size_t n) noexcept;

/// Checks 2 <= n <= 2^16 and that n is a power of two; throws
/// std::invalid_argument naming the constraint otherwise.
void validate_transform_size(std::size_t n);

/// log2(n) for a valid transform size.
std::size_t stage_count(std::size_t n);

/// Twiddle factors W_N^k = exp(-j 2 pi k / N) for k in [0, N/2).
class TwiddleTable {
public:
    explicit TwiddleTable(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    std::span<const Complex> factors() const noexcept { return factors_; }
    const Complex& operator[](std::size_t k) const { return factors_[k]; }

    /// Returns a table whose entries are the complex conjugates of this one
    /// (the inverse-transform twiddles).
    TwiddleTable conjugated() const;

private:
    TwiddleTable(std::size_t size, std::vector<Complex> factors)
        : size_(size), factors_(std::move(factors)) {}

    std::size_t size_;
    std::vector<Complex> factors_;
};

TwiddleTable twiddle_table(std::size_t n);

/// Direct O(N^2) evaluation of X[k] = sum_n x[n] W_N^{kn}. Golden oracle.
SignalVector dft_naive(std::span<const Complex> x);

std::size_t reverse_bits(std::size_t value, std::size_t bit_count) noexcept;

/// output[i] = x[reverse_bits(i, log2 N)].
SignalVector bit_reverse_permute(std::span<const Complex> x);

/// Radix-2 butterfly: (a + w*b, a - w*b). One complex multiply, two complex
/// additions.
inline std::pair<Complex, Complex> butterfly(Complex a, Complex b, Complex w) {
    const Complex product = w * b;
    return {a + product, a - product};
}

/// Unquantized radix-2 DIT transform over bit-reversed input with
/// natural-order output. The inverse pre-scales the input by 1/N and uses
/// conjugated twiddles, so fft_reference(fft_reference(x, Forward), Inverse)
/// recovers x.
SignalVector fft_reference(std::span<const Complex> x, Direction direction);

}  // namespace qfft
