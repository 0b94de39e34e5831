#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfft/analysis.hpp"
#include "qfft/pipeline.hpp"
#include "qfft/quantization.hpp"
#include "qfft/signal.hpp"

namespace qfft {

enum class ReportFormat { Csv, Json };

std::string_view to_string(ReportFormat format) noexcept;
ReportFormat parse_report_format(std::string_view text);

/// Raised for malformed or invalid configuration documents. The message
/// names the offending field (dotted path) or the parse location.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything one CLI invocation needs. Document schema (JSON):
///
///   n, direction (fft|ifft),
///   quantizer { mode, bits, x_max, per_stage: [ {mode, bits, x_max}, ... ] },
///   twiddle_quantization { enabled, bits },
///   signal { kind, bin, amplitude, bins, amplitudes },
///   sweep { bits_lo, bits_hi, trials },
///   seed, out, format
///
/// Top-level `mode`, `bits` and `x_max` are accepted as shorthand for the
/// quantizer fields. Missing fields take the defaults below.
struct ExperimentConfig {
    std::size_t size = 1024;
    Direction direction = Direction::Forward;

    QuantizerMode mode = QuantizerMode::Uniform;
    int bits = 8;
    double full_scale = 1.0;
    /// Explicit per-stage quantizers; empty means "scale full_scale by 2^s".
    std::vector<QuantizerSpec> per_stage;

    bool twiddle_quantization = false;
    /// Twiddle resolution; falls back to `bits` (or the sweep row) when unset.
    std::optional<int> twiddle_bits;

    SignalSpec signal;

    int bits_lo = 6;
    int bits_hi = 14;
    std::size_t trials = 20;

    std::uint64_t seed = 0;
    std::string out;  // empty: standard output
    ReportFormat format = ReportFormat::Csv;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

/// Fully-expanded document (every default written out). parse_config of the
/// result yields an equal config.
std::string serialize_config(const ExperimentConfig& config, bool pretty = true);

PipelineConfig to_pipeline_config(const ExperimentConfig& config);
SweepSpec to_sweep_spec(const ExperimentConfig& config);

}  // namespace qfft
