#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qfft/core_fft.hpp"

namespace qfft {

enum class SignalKind { Impulse, Sinusoid, Multitone, Random };

std::string_view to_string(SignalKind kind) noexcept;
SignalKind parse_signal_kind(std::string_view text);

/// Test-signal description. Only the fields relevant to `kind` are used:
/// bin for sinusoids, bins/amplitudes for multitones, amplitude for random
/// signals (components drawn from Uniform[-amplitude, amplitude]) and as the
/// sinusoid magnitude.
struct SignalSpec {
    SignalKind kind = SignalKind::Random;
    std::size_t size = 1024;
    std::size_t bin = 1;
    std::vector<std::size_t> bins;
    std::vector<double> amplitudes;
    double amplitude = 1.0;

    void validate() const;
    bool operator==(const SignalSpec&) const = default;
};

/// impulse: delta[n]; sinusoid: A e^{j 2 pi k n / N}; multitone: sum of
/// those; random: i.i.d. Uniform[-A, A] real and imaginary parts.
SignalVector generate_signal(const SignalSpec& spec, std::uint64_t seed);

}  // namespace qfft
