#include "qfft/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <string>

#include "qfft/pipeline.hpp"
#include "qfft/random.hpp"

namespace qfft {
namespace {

struct TrialResult {
    RunningStats error;
    RunningStats reference;
    std::size_t saturations = 0;
};

double capped_sqnr(double signal_variance, double noise_variance) {
    if (noise_variance <= 0.0) {
        return kSqnrCapDb;
    }
    return std::min(kSqnrCapDb, snr_db(signal_variance, noise_variance));
}

PipelineConfig row_config(const SweepSpec& spec, int bits) {
    PipelineConfig config;
    config.size = spec.size;
    config.direction = spec.direction;
    if (spec.mode == QuantizerMode::Uniform) {
        config.stage_quantizers = scaled_stage_quantizers(
            spec.size, spec.direction, QuantizerSpec::uniform(bits, spec.full_scale));
    } else {
        config.stage_quantizers.assign(stage_count(spec.size), QuantizerSpec::mantissa(bits));
    }
    if (spec.twiddle_quantization) {
        const int twiddle_bits = spec.twiddle_bits.value_or(bits);
        config.twiddle_quantization = true;
        config.twiddle_quantizer = spec.mode == QuantizerMode::Uniform
                                       ? QuantizerSpec::uniform(twiddle_bits, 1.0)
                                       : QuantizerSpec::mantissa(twiddle_bits);
    }
    return config;
}

TrialResult run_trial(const SweepSpec& spec, const Pipeline& pipeline, std::size_t trial) {
    SignalSpec signal = spec.signal;
    signal.size = spec.size;
    const SignalVector x = generate_signal(signal, derive_seed(spec.seed, trial));
    const SignalVector reference = fft_reference(x, spec.direction);
    const RunTrace trace = pipeline.run(x);

    TrialResult result;
    result.saturations = trace.saturation_total;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const Complex e = reference[i] - trace.output[i];
        result.error.add(e.real());
        result.error.add(e.imag());
        result.reference.add(reference[i].real());
        result.reference.add(reference[i].imag());
    }
    return result;
}

std::vector<TrialResult> run_trials(const SweepSpec& spec, const Pipeline& pipeline) {
    std::vector<TrialResult> results(spec.trials);
    const std::size_t workers = std::clamp<std::size_t>(spec.workers, 1, spec.trials);
    if (workers == 1) {
        for (std::size_t t = 0; t < spec.trials; ++t) {
            results[t] = run_trial(spec, pipeline, t);
        }
        return results;
    }
    std::vector<std::future<void>> jobs;
    jobs.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t t = w; t < spec.trials; t += workers) {
                results[t] = run_trial(spec, pipeline, t);
            }
        }));
    }
    for (auto& job : jobs) {
        job.get();
    }
    return results;
}

}  // namespace

Comparison compare(std::span<const Complex> reference, std::span<const Complex> test) {
    if (reference.size() != test.size()) {
        throw std::invalid_argument("compare: length mismatch (" +
                                    std::to_string(reference.size()) + " vs " +
                                    std::to_string(test.size()) + ")");
    }
    Comparison result;
    result.errors.resize(reference.size());
    RunningStats error_stats;
    RunningStats reference_stats;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const Complex e = reference[i] - test[i];
        result.errors[i] = e;
        error_stats.add(e.real());
        error_stats.add(e.imag());
        reference_stats.add(reference[i].real());
        reference_stats.add(reference[i].imag());
    }
    if (reference_stats.sum_of_squares() == 0.0) {
        throw std::invalid_argument("compare: reference has zero norm, percent error undefined");
    }
    result.percent_error =
        100.0 * std::sqrt(error_stats.sum_of_squares() / reference_stats.sum_of_squares());
    result.sqnr_db = capped_sqnr(reference_stats.variance(), error_stats.variance());
    return result;
}

void SweepSpec::validate() const {
    validate_transform_size(size);
    if (mode == QuantizerMode::Off) {
        throw std::invalid_argument("sweep needs a uniform or mantissa quantizer");
    }
    if (bits_lo < 1 || bits_lo > bits_hi || bits_hi > kMaxSweepBits) {
        throw std::invalid_argument("sweep bit range must satisfy 1 <= lo <= hi <= 24, got " +
                                    std::to_string(bits_lo) + ".." + std::to_string(bits_hi));
    }
    if (trials < 1) {
        throw std::invalid_argument("sweep needs at least one trial");
    }
    if (mode == QuantizerMode::Uniform && !(full_scale > 0.0 && std::isfinite(full_scale))) {
        throw std::invalid_argument("sweep full scale must be positive and finite");
    }
    if (twiddle_bits && (*twiddle_bits < kMinQuantizerBits || *twiddle_bits > kMaxQuantizerBits)) {
        throw std::invalid_argument("twiddle bits outside [1, 52]");
    }
    SignalSpec sized = signal;
    sized.size = size;
    sized.validate();
}

std::vector<ErrorReport> run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::vector<ErrorReport> rows;
    rows.reserve(static_cast<std::size_t>(spec.bits_hi - spec.bits_lo + 1));
    for (int bits = spec.bits_lo; bits <= spec.bits_hi; ++bits) {
        const Pipeline pipeline(row_config(spec, bits));

        TrialResult total;
        for (const TrialResult& trial : run_trials(spec, pipeline)) {
            total.error.merge(trial.error);
            total.reference.merge(trial.reference);
            total.saturations += trial.saturations;
        }

        ErrorReport row;
        row.bits = bits;
        const QuantizationStats stats = total.error.to_stats(total.saturations);
        row.error_mean = stats.error_mean;
        row.error_std = stats.error_std;
        row.error_variance = stats.error_variance;
        row.percent_error = 100.0 * std::sqrt(total.error.sum_of_squares() /
                                              total.reference.sum_of_squares());
        row.sqnr_db = capped_sqnr(total.reference.variance(), total.error.variance());
        row.theory_variance = spec.mode == QuantizerMode::Uniform
                                  ? theory_variance_uniform(QuantizerSpec::uniform(bits, spec.full_scale))
                                  : theory_variance_mantissa(QuantizerSpec::mantissa(bits));
        const double applications =
            static_cast<double>(spec.trials) * static_cast<double>(pipeline.stages()) * 2.0 *
            static_cast<double>(spec.size);
        row.saturation_rate = static_cast<double>(total.saturations) / applications;
        rows.push_back(row);
    }
    return rows;
}

std::vector<CharacterizationRow> quantizer_characterization(QuantizerMode mode, int bits_lo,
                                                            int bits_hi,
                                                            std::size_t sample_count,
                                                            std::uint64_t seed,
                                                            double full_scale) {
    if (mode == QuantizerMode::Off) {
        throw std::invalid_argument("characterization needs a uniform or mantissa quantizer");
    }
    if (bits_lo < kMinQuantizerBits || bits_lo > bits_hi || bits_hi > kMaxQuantizerBits) {
        throw std::invalid_argument("characterization bit range must satisfy 1 <= lo <= hi <= 52");
    }
    if (sample_count < kMinCharacterizationSamples) {
        throw std::invalid_argument("characterization needs at least 10000 samples");
    }

    std::vector<CharacterizationRow> rows;
    for (int bits = bits_lo; bits <= bits_hi; ++bits) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(bits)));
        RunningStats stats;
        CharacterizationRow row;
        row.bits = bits;
        if (mode == QuantizerMode::Uniform) {
            const QuantizerSpec spec = QuantizerSpec::uniform(bits, full_scale);
            spec.validate();
            for (std::size_t i = 0; i < sample_count; ++i) {
                const double x = rng.uniform(-full_scale, full_scale);
                stats.add(quantization_error(x, quantize_uniform(x, spec)));
            }
            row.theory_variance = theory_variance_uniform(spec);
        } else {
            const QuantizerSpec spec = QuantizerSpec::mantissa(bits);
            for (std::size_t i = 0; i < sample_count; ++i) {
                const double mantissa = 0.5 + 0.5 * rng.uniform01();
                const int exponent = static_cast<int>(rng.uniform_int(-16, 16));
                const double sign = (rng.next_u64() & 1U) ? -1.0 : 1.0;
                const double x = sign * std::ldexp(mantissa, exponent);
                stats.add(relative_error(x, quantize_mantissa(x, spec)));
            }
            row.theory_variance = theory_variance_mantissa(spec);
        }
        row.empirical_mean = stats.mean();
        row.empirical_variance = stats.variance();
        rows.push_back(row);
    }
    return rows;
}

double sqnr_slope(std::span<const ErrorReport> rows) {
    if (rows.size() < 2) {
        throw std::invalid_argument("slope needs at least two rows");
    }
    const double n = static_cast<double>(rows.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const ErrorReport& r : rows) {
        mean_x += r.bits;
        mean_y += r.sqnr_db;
    }
    mean_x /= n;
    mean_y /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const ErrorReport& r : rows) {
        sxy += (r.bits - mean_x) * (r.sqnr_db - mean_y);
        sxx += (r.bits - mean_x) * (r.bits - mean_x);
    }
    return sxy / sxx;
}

std::optional<std::size_t> plateau_onset(std::span<const double> curve, double threshold) {
    if (curve.size() < 2) {
        return std::nullopt;
    }
    const double limit = threshold * std::abs(curve.front());
    std::optional<std::size_t> onset;
    // Walk backwards while every remaining step is small.
    for (std::size_t i = curve.size() - 1; i-- > 0;) {
        if (std::abs(curve[i + 1] - curve[i]) >= limit) {
            break;
        }
        onset = i;
    }
    return onset;
}

}  // namespace qfft
