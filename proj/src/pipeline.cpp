#include "qfft/pipeline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qfft {
namespace {

Complex quantize_components(Complex v, const QuantizerSpec& spec, std::size_t& saturations) {
    return {quantize(v.real(), spec, saturations), quantize(v.imag(), spec, saturations)};
}

void quantize_vector(SignalVector& data, const QuantizerSpec& spec, std::size_t& saturations) {
    if (spec.mode == QuantizerMode::Off) {
        return;
    }
    for (Complex& v : data) {
        v = quantize_components(v, spec, saturations);
    }
}

}  // namespace

void PipelineConfig::validate() const {
    const std::size_t stages = stage_count(size);
    if (stage_quantizers.size() != stages) {
        throw std::invalid_argument("pipeline of size " + std::to_string(size) + " needs " +
                                    std::to_string(stages) + " stage quantizers, got " +
                                    std::to_string(stage_quantizers.size()));
    }
    for (const QuantizerSpec& spec : stage_quantizers) {
        spec.validate();
    }
    if (twiddle_quantization) {
        twiddle_quantizer.validate();
    }
    if (input_quantizer) {
        input_quantizer->validate();
    }
}

std::vector<QuantizerSpec> scaled_stage_quantizers(std::size_t size, Direction direction,
                                                   const QuantizerSpec& base) {
    const std::size_t stages = stage_count(size);
    double full_scale = base.full_scale;
    if (direction == Direction::Inverse) {
        full_scale /= static_cast<double>(size);
    }
    std::vector<QuantizerSpec> specs(stages, base);
    for (std::size_t s = 0; s < stages; ++s) {
        specs[s].full_scale = std::ldexp(full_scale, static_cast<int>(s + 1));
    }
    return specs;
}

ProcessingCost processing_cost(std::size_t n) {
    const std::size_t stages = stage_count(n);
    return {n / 2 * stages, n * stages};
}

Pipeline::Pipeline(PipelineConfig config) : config_(std::move(config)) {
    config_.validate();
    const TwiddleTable forward(config_.size);
    const TwiddleTable table =
        config_.direction == Direction::Inverse ? forward.conjugated() : forward;
    twiddles_.assign(table.factors().begin(), table.factors().end());
    if (config_.twiddle_quantization) {
        // Static ROM: quantized once here, never at run time.
        std::size_t ignored = 0;
        for (Complex& w : twiddles_) {
            w = quantize_components(w, config_.twiddle_quantizer, ignored);
        }
    }
}

RunTrace Pipeline::run(std::span<const Complex> x) const {
    const std::size_t n = config_.size;
    if (x.size() != n) {
        throw std::invalid_argument("pipeline expects " + std::to_string(n) +
                                    " samples, got " + std::to_string(x.size()));
    }

    RunTrace trace;
    SignalVector scaled(x.begin(), x.end());
    if (config_.direction == Direction::Inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (Complex& v : scaled) {
            v *= scale;
        }
    }
    if (config_.input_quantizer) {
        quantize_vector(scaled, *config_.input_quantizer, trace.saturation_total);
    }
    trace.input = bit_reverse_permute(scaled);

    SignalVector data = trace.input;
    trace.stage_outputs.reserve(stages());
    for (std::size_t s = 1; s <= stages(); ++s) {
        const std::size_t span_len = std::size_t{1} << s;
        const std::size_t half = span_len / 2;
        const std::size_t stride = n / span_len;
        for (std::size_t base = 0; base < n; base += span_len) {
            for (std::size_t j = 0; j < half; ++j) {
                auto [top, bottom] =
                    butterfly(data[base + j], data[base + j + half], twiddles_[j * stride]);
                data[base + j] = top;
                data[base + j + half] = bottom;
                trace.complex_multiplies += 1;
                trace.complex_additions += 2;
            }
        }
        quantize_vector(data, config_.stage_quantizers[s - 1], trace.saturation_total);
        trace.stage_outputs.push_back(data);
    }
    trace.output = data;
    return trace;
}

Pipeline build_pipeline(PipelineConfig config) { return Pipeline(std::move(config)); }

}  // namespace qfft
