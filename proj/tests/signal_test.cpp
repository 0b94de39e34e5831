#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "qfft/random.hpp"
#include "qfft/signal.hpp"

namespace {

using namespace qfft;

TEST(GenerateSignal, SinusoidSpectrumIsADelta) {
    SignalSpec spec;
    spec.kind = SignalKind::Sinusoid;
    spec.size = 16;
    spec.bin = 3;
    const SignalVector X = fft_reference(generate_signal(spec, 0), Direction::Forward);
    EXPECT_NEAR(std::abs(X[3]), 16.0, 1e-12);
    for (std::size_t k = 0; k < 16; ++k) {
        if (k != 3) {
            EXPECT_LT(std::abs(X[k]), 1e-9) << "bin " << k;
        }
    }
}

TEST(GenerateSignal, ImpulseHasFlatSpectrum) {
    SignalSpec spec;
    spec.kind = SignalKind::Impulse;
    spec.size = 32;
    for (const Complex& v : fft_reference(generate_signal(spec, 0), Direction::Forward)) {
        EXPECT_EQ(v, Complex(1.0, 0.0));
    }
}

TEST(GenerateSignal, MultitoneBins) {
    SignalSpec spec;
    spec.kind = SignalKind::Multitone;
    spec.size = 64;
    spec.bins = {2, 9, 40};
    spec.amplitudes = {1.0, 0.5, 0.25};
    const SignalVector X = fft_reference(generate_signal(spec, 0), Direction::Forward);
    EXPECT_NEAR(std::abs(X[2]), 64.0, 1e-10);
    EXPECT_NEAR(std::abs(X[9]), 32.0, 1e-10);
    EXPECT_NEAR(std::abs(X[40]), 16.0, 1e-10);
    EXPECT_LT(std::abs(X[3]), 1e-9);
}

TEST(GenerateSignal, RandomIsSeededAndBounded) {
    SignalSpec spec;
    spec.size = 256;
    spec.amplitude = 0.25;
    const SignalVector a = generate_signal(spec, 99);
    EXPECT_EQ(a, generate_signal(spec, 99));
    EXPECT_NE(a, generate_signal(spec, 100));
    for (const Complex& v : a) {
        EXPECT_LE(std::abs(v.real()), 0.25);
        EXPECT_LE(std::abs(v.imag()), 0.25);
    }
}

TEST(GenerateSignal, RejectsInvalidSpecs) {
    SignalSpec spec;
    spec.kind = SignalKind::Sinusoid;
    spec.size = 16;
    spec.bin = 16;
    EXPECT_THROW(generate_signal(spec, 0), std::invalid_argument);

    spec.kind = SignalKind::Multitone;
    spec.bins = {};
    EXPECT_THROW(generate_signal(spec, 0), std::invalid_argument);
    spec.bins = {1, 2};
    spec.amplitudes = {1.0};
    EXPECT_THROW(generate_signal(spec, 0), std::invalid_argument);

    spec = SignalSpec{};
    spec.amplitude = 0.0;
    EXPECT_THROW(generate_signal(spec, 0), std::invalid_argument);
    spec.amplitude = 1.0;
    spec.size = 100;
    EXPECT_THROW(generate_signal(spec, 0), std::invalid_argument);
}

TEST(SignalKind, ParseAndPrint) {
    for (SignalKind k : {SignalKind::Impulse, SignalKind::Sinusoid, SignalKind::Multitone,
                         SignalKind::Random}) {
        EXPECT_EQ(parse_signal_kind(to_string(k)), k);
    }
    EXPECT_THROW(parse_signal_kind("chirp"), std::invalid_argument);
}

TEST(Rng, PlatformIndependentSequence) {
    // std::mt19937_64 10000th output for the default seed is fixed by the standard.
    std::mt19937_64 reference;
    reference.discard(9999);
    EXPECT_EQ(reference(), 9981545732273789042ULL);

    Rng rng(5489);
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.uniform_int(-3, 3);
        ASSERT_GE(v, -3);
        ASSERT_LE(v, 3);
    }
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

}  // namespace
