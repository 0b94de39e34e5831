#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qfft/analysis.hpp"
#include "qfft/pipeline.hpp"
#include "qfft/signal.hpp"

namespace {

using namespace qfft;

PipelineConfig bypass_config(std::size_t n, Direction direction) {
    PipelineConfig config;
    config.size = n;
    config.direction = direction;
    config.stage_quantizers.assign(stage_count(n), QuantizerSpec::off());
    return config;
}

SignalVector random_signal(std::size_t n, std::uint64_t seed) {
    SignalSpec spec;
    spec.size = n;
    return generate_signal(spec, seed);
}

bool bit_identical(const SignalVector& a, const SignalVector& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

TEST(BuildPipeline, StageCounts) {
    EXPECT_EQ(build_pipeline(bypass_config(1024, Direction::Forward)).stages(), 10u);
    const Pipeline two = build_pipeline(bypass_config(2, Direction::Forward));
    EXPECT_EQ(two.stages(), 1u);
    ASSERT_EQ(two.twiddles().size(), 1u);
    EXPECT_EQ(two.twiddles()[0], Complex(1.0, 0.0));
}

TEST(BuildPipeline, RejectsInvalidConfig) {
    PipelineConfig config = bypass_config(8, Direction::Forward);
    config.stage_quantizers.pop_back();
    EXPECT_THROW(build_pipeline(config), std::invalid_argument);

    config = bypass_config(8, Direction::Forward);
    config.size = 12;
    EXPECT_THROW(build_pipeline(config), std::invalid_argument);

    config = bypass_config(8, Direction::Forward);
    config.stage_quantizers[1] = QuantizerSpec::uniform(0, 1.0);
    EXPECT_THROW(build_pipeline(config), std::invalid_argument);

    config = bypass_config(8, Direction::Forward);
    config.twiddle_quantization = true;
    config.twiddle_quantizer = QuantizerSpec::uniform(8, -1.0);
    EXPECT_THROW(build_pipeline(config), std::invalid_argument);
}

TEST(BuildPipeline, InverseUsesConjugatedTwiddles) {
    const Pipeline forward = build_pipeline(bypass_config(16, Direction::Forward));
    const Pipeline inverse = build_pipeline(bypass_config(16, Direction::Inverse));
    for (std::size_t k = 0; k < 8; ++k) {
        EXPECT_EQ(inverse.twiddles()[k], std::conj(forward.twiddles()[k]));
    }
}

TEST(BuildPipeline, TwiddleRomQuantization) {
    PipelineConfig config = bypass_config(8, Direction::Forward);
    config.twiddle_quantization = true;
    config.twiddle_quantizer = QuantizerSpec::uniform(8, 1.0);
    const Pipeline pipeline = build_pipeline(config);
    // sqrt(2)/2 / 2^-7 = 90.51 -> 91 -> 0.7109375 (tests/oracles/derive_values.py).
    EXPECT_EQ(pipeline.twiddles()[1], Complex(0.7109375, -0.7109375));
    EXPECT_EQ(pipeline.twiddles()[0], Complex(1.0, 0.0));
    EXPECT_EQ(pipeline.twiddles()[2].imag(), -1.0);
    for (const Complex& w : pipeline.twiddles()) {
        EXPECT_EQ(std::fmod(w.real(), std::ldexp(1.0, -7)), 0.0);
        EXPECT_EQ(std::fmod(w.imag(), std::ldexp(1.0, -7)), 0.0);
    }
}

TEST(ScaledStageQuantizers, DoublesPerStage) {
    const auto forward = scaled_stage_quantizers(16, Direction::Forward, QuantizerSpec::uniform(8, 1.0));
    ASSERT_EQ(forward.size(), 4u);
    for (std::size_t s = 0; s < 4; ++s) {
        EXPECT_EQ(forward[s].full_scale, std::ldexp(1.0, static_cast<int>(s + 1)));
        EXPECT_EQ(forward[s].bits, 8);
    }
    const auto inverse = scaled_stage_quantizers(16, Direction::Inverse, QuantizerSpec::uniform(8, 1.0));
    EXPECT_EQ(inverse.front().full_scale, 2.0 / 16.0);
    EXPECT_EQ(inverse.back().full_scale, 1.0);
}

TEST(Run, BypassIsBitIdenticalToReference) {
    for (Direction direction : {Direction::Forward, Direction::Inverse}) {
        for (std::size_t n = 2; n <= 4096; n <<= 1) {
            const SignalVector x = random_signal(n, n);
            const RunTrace trace = build_pipeline(bypass_config(n, direction)).run(x);
            EXPECT_TRUE(bit_identical(trace.output, fft_reference(x, direction))) << "N=" << n;
        }
    }
}

TEST(Run, InverseRecoversForwardInput) {
    const SignalVector x = random_signal(1024, 9);
    const SignalVector spectrum = build_pipeline(bypass_config(1024, Direction::Forward)).run(x).output;
    const SignalVector back = build_pipeline(bypass_config(1024, Direction::Inverse)).run(spectrum).output;
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_LT(std::abs(back[i] - x[i]), 1e-12);
}

TEST(Run, TraceShape) {
    PipelineConfig config = bypass_config(64, Direction::Inverse);
    const SignalVector x = random_signal(64, 1);
    const RunTrace trace = build_pipeline(config).run(x);
    ASSERT_EQ(trace.stage_outputs.size(), 6u);
    for (const SignalVector& stage : trace.stage_outputs) EXPECT_EQ(stage.size(), 64u);
    EXPECT_EQ(trace.output, trace.stage_outputs.back());
    // Input is recorded after 1/N scaling and bit reversal.
    EXPECT_EQ(trace.input[1], x[32] / 64.0);
    EXPECT_EQ(trace.saturation_total, 0u);
}

TEST(Run, InputQuantizerAppliesBeforeBitReversal) {
    PipelineConfig config = bypass_config(4, Direction::Forward);
    config.input_quantizer = QuantizerSpec::uniform(2, 1.0);  // q = 0.5
    const SignalVector x = {{0.2, 0.3}, {0.8, -0.1}, {3.0, 0.0}, {-0.3, 0.6}};
    const RunTrace trace = build_pipeline(config).run(x);
    EXPECT_EQ(trace.input[0], Complex(0.0, 0.5));
    EXPECT_EQ(trace.input[1], Complex(1.0, 0.0));  // x[2] saturated
    EXPECT_EQ(trace.input[2], Complex(1.0, 0.0));
    EXPECT_EQ(trace.input[3], Complex(-0.5, 0.5));
    EXPECT_EQ(trace.saturation_total, 1u);
}

TEST(Run, LengthMismatch) {
    const Pipeline pipeline = build_pipeline(bypass_config(8, Direction::Forward));
    EXPECT_THROW(pipeline.run(SignalVector(4)), std::invalid_argument);
}

TEST(ProcessingCost, Formula) {
    EXPECT_EQ(processing_cost(8), (ProcessingCost{12, 24}));
    EXPECT_EQ(processing_cost(2), (ProcessingCost{1, 2}));
    EXPECT_EQ(processing_cost(1024), (ProcessingCost{5120, 10240}));
    EXPECT_THROW(processing_cost(100), std::invalid_argument);
}

TEST(ProcessingCost, InstrumentedCountersAgree) {
    for (std::size_t n = 2; n <= kMaxTransformSize; n <<= 1) {
        const RunTrace trace = build_pipeline(bypass_config(n, Direction::Forward)).run(SignalVector(n));
        EXPECT_EQ((ProcessingCost{trace.complex_multiplies, trace.complex_additions}),
                  processing_cost(n))
            << "N=" << n;
    }
}

TEST(Run, RecordedValuesAreQuantizerFixedPoints) {
    for (QuantizerMode mode : {QuantizerMode::Uniform, QuantizerMode::Mantissa}) {
        PipelineConfig config;
        config.size = 256;
        config.stage_quantizers =
            mode == QuantizerMode::Uniform
                ? scaled_stage_quantizers(256, Direction::Forward, QuantizerSpec::uniform(7, 1.0))
                : std::vector<QuantizerSpec>(8, QuantizerSpec::mantissa(7));
        config.twiddle_quantization = true;
        config.twiddle_quantizer = QuantizerSpec::uniform(9, 1.0);
        const Pipeline pipeline = build_pipeline(config);
        const RunTrace trace = pipeline.run(random_signal(256, 17));
        for (std::size_t s = 0; s < trace.stage_outputs.size(); ++s) {
            const QuantizerSpec& spec = config.stage_quantizers[s];
            for (const Complex& v : trace.stage_outputs[s]) {
                std::size_t ignored = 0;
                ASSERT_EQ(quantize(v.real(), spec, ignored), v.real());
                ASSERT_EQ(quantize(v.imag(), spec, ignored), v.imag());
            }
        }
    }
}

TEST(Run, SqnrImprovesWithBits) {
    // Fixed input, uniform quantization on every stage.
    const SignalVector x = random_signal(1024, 31);
    const SignalVector reference = fft_reference(x, Direction::Forward);
    double previous = -1e9;
    for (int b = 6; b <= 14; ++b) {
        PipelineConfig config;
        config.size = 1024;
        config.stage_quantizers =
            scaled_stage_quantizers(1024, Direction::Forward, QuantizerSpec::uniform(b, 1.0));
        const double sqnr = compare(reference, build_pipeline(config).run(x).output).sqnr_db;
        EXPECT_GE(sqnr, previous - 0.5) << "b=" << b;
        previous = sqnr;
    }
}

TEST(Run, SinusoidAtTenBits) {
    SignalSpec spec;
    spec.kind = SignalKind::Sinusoid;
    spec.size = 1024;
    spec.bin = 37;
    const SignalVector x = generate_signal(spec, 0);
    PipelineConfig config;
    config.size = 1024;
    config.stage_quantizers =
        scaled_stage_quantizers(1024, Direction::Forward, QuantizerSpec::uniform(10, 1.0));
    const SignalVector out = build_pipeline(config).run(x).output;
    const Comparison c = compare(fft_reference(x, Direction::Forward), out);
    // Stage quantization snaps the reference's round-off residue to zero, so
    // the two agree far below one step.
    EXPECT_LT(c.percent_error, 1e-6);
    // The tone bin dominates the quantized spectrum.
    std::size_t peak = 0;
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (std::abs(out[k]) > std::abs(out[peak])) peak = k;
    }
    EXPECT_EQ(peak, 37u);
}

TEST(Run, ConcurrentRunsAgree) {
    PipelineConfig config;
    config.size = 512;
    config.stage_quantizers =
        scaled_stage_quantizers(512, Direction::Forward, QuantizerSpec::uniform(9, 1.0));
    const Pipeline pipeline = build_pipeline(config);
    const SignalVector x = random_signal(512, 5);
    const SignalVector expected = pipeline.run(x).output;
    std::vector<SignalVector> outputs(4);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < outputs.size(); ++t) {
        threads.emplace_back([&, t] { outputs[t] = pipeline.run(x).output; });
    }
    for (auto& th : threads) th.join();
    for (const SignalVector& out : outputs) EXPECT_TRUE(bit_identical(out, expected));
}

}  // namespace
