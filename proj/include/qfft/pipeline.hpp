#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qfft/core_fft.hpp"
#include "qfft/quantization.hpp"

namespace qfft {

struct PipelineConfig {
    std::size_t size = 1024;
    Direction direction = Direction::Forward;
    /// One quantizer per butterfly stage; length must be log2(size).
    std::vector<QuantizerSpec> stage_quantizers;
    bool twiddle_quantization = false;
    QuantizerSpec twiddle_quantizer = QuantizerSpec::uniform(16, 1.0);
    /// Optional quantizer for the input stage, applied after any 1/N scaling.
    std::optional<QuantizerSpec> input_quantizer;

    /// Throws std::invalid_argument when the size, the stage count or any
    /// enabled quantizer is invalid.
    void validate() const;
};

/// Per-stage quantizers for a transform of the given size. Stage s (1-based)
/// gets full scale base.full_scale * 2^s, tracking the worst-case growth of a
/// factor two per butterfly stage. For the inverse transform the base scale
/// refers to the signal before the 1/N input scaling and is divided by N.
std::vector<QuantizerSpec> scaled_stage_quantizers(std::size_t size, Direction direction,
                                                   const QuantizerSpec& base);

struct RunTrace {
    /// After 1/N scaling (inverse), input quantization and bit reversal.
    SignalVector input;
    /// Output of each stage after that stage's quantizer.
    std::vector<SignalVector> stage_outputs;
    SignalVector output;
    std::size_t saturation_total = 0;
    std::size_t complex_multiplies = 0;
    std::size_t complex_additions = 0;
};

struct ProcessingCost {
    std::size_t multiplies = 0;
    std::size_t additions = 0;
    bool operator==(const ProcessingCost&) const = default;
};

/// ((N/2) log2 N, N log2 N) complex multiplies and additions.
ProcessingCost processing_cost(std::size_t n);

/// Statically quantized radix-2 DIT FFT/IFFT processor. Immutable once built;
/// run() may be called concurrently.
class Pipeline {
public:
    explicit Pipeline(PipelineConfig config);

    const PipelineConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return config_.size; }
    std::size_t stages() const noexcept { return config_.stage_quantizers.size(); }
    /// Twiddle ROM as used by the butterflies (conjugated for the inverse,
    /// quantized when enabled).
    std::span<const Complex> twiddles() const noexcept { return twiddles_; }

    RunTrace run(std::span<const Complex> x) const;

private:
    PipelineConfig config_;
    std::vector<Complex> twiddles_;
};

Pipeline build_pipeline(PipelineConfig config);

}  // namespace qfft
