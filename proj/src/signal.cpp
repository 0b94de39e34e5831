#include "qfft/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qfft/random.hpp"

namespace qfft {
namespace {

Complex tone(std::size_t bin, std::size_t n, std::size_t size) {
    const std::size_t phase = (bin * n) % size;
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(size);
    return {std::cos(angle), std::sin(angle)};
}

void check_bin(std::size_t bin, std::size_t size) {
    if (bin >= size) {
        throw std::invalid_argument("signal bin " + std::to_string(bin) + " outside [0, " +
                                    std::to_string(size) + ")");
    }
}

}  // namespace

std::string_view to_string(SignalKind kind) noexcept {
    switch (kind) {
        case SignalKind::Impulse: return "impulse";
        case SignalKind::Sinusoid: return "sinusoid";
        case SignalKind::Multitone: return "multitone";
        case SignalKind::Random: return "random";
    }
    return "random";
}

SignalKind parse_signal_kind(std::string_view text) {
    if (text == "impulse") return SignalKind::Impulse;
    if (text == "sinusoid") return SignalKind::Sinusoid;
    if (text == "multitone") return SignalKind::Multitone;
    if (text == "random") return SignalKind::Random;
    throw std::invalid_argument("unknown signal kind '" + std::string(text) +
                                "' (expected impulse, sinusoid, multitone or random)");
}

void SignalSpec::validate() const {
    validate_transform_size(size);
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("signal amplitude must be positive and finite");
    }
    switch (kind) {
        case SignalKind::Sinusoid:
            check_bin(bin, size);
            break;
        case SignalKind::Multitone:
            if (bins.empty()) {
                throw std::invalid_argument("multitone signal needs at least one bin");
            }
            if (!amplitudes.empty() && amplitudes.size() != bins.size()) {
                throw std::invalid_argument("multitone amplitudes must match bins in length");
            }
            for (std::size_t b : bins) check_bin(b, size);
            for (double a : amplitudes) {
                if (!std::isfinite(a)) {
                    throw std::invalid_argument("multitone amplitudes must be finite");
                }
            }
            break;
        case SignalKind::Impulse:
        case SignalKind::Random:
            break;
    }
}

SignalVector generate_signal(const SignalSpec& spec, std::uint64_t seed) {
    spec.validate();
    SignalVector x(spec.size, Complex(0.0, 0.0));
    switch (spec.kind) {
        case SignalKind::Impulse:
            x[0] = Complex(1.0, 0.0);
            break;
        case SignalKind::Sinusoid:
            for (std::size_t n = 0; n < spec.size; ++n) {
                x[n] = spec.amplitude * tone(spec.bin, n, spec.size);
            }
            break;
        case SignalKind::Multitone:
            for (std::size_t t = 0; t < spec.bins.size(); ++t) {
                const double a = spec.amplitudes.empty() ? spec.amplitude : spec.amplitudes[t];
                for (std::size_t n = 0; n < spec.size; ++n) {
                    x[n] += a * tone(spec.bins[t], n, spec.size);
                }
            }
            break;
        case SignalKind::Random: {
            Rng rng(seed);
            for (Complex& v : x) {
                const double re = rng.uniform(-spec.amplitude, spec.amplitude);
                const double im = rng.uniform(-spec.amplitude, spec.amplitude);
                v = Complex(re, im);
            }
            break;
        }
    }
    return x;
}

}  // namespace qfft
