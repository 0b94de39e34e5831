// qfft: statically quantized radix-2 FFT/IFFT simulator and quantization-noise
// experiments.
//
//   qfft fft       [--config F] [overrides]   one transform, output vector
//   qfft sweep     [--config F] [overrides]   error/SQNR versus bit resolution
//   qfft quantizer [--config F] [overrides]   pure quantizer Monte-Carlo
//   qfft selftest                             oracle and theory checks

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfft/analysis.hpp"
#include "qfft/config.hpp"
#include "qfft/core_fft.hpp"
#include "qfft/pipeline.hpp"
#include "qfft/report.hpp"
#include "qfft/signal.hpp"

namespace {

using namespace qfft;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::size_t> size;
    std::optional<std::string> direction;
    std::optional<std::string> mode;
    std::optional<int> bits;
    std::optional<double> full_scale;
    std::optional<int> bits_lo;
    std::optional<int> bits_hi;
    std::optional<std::size_t> trials;
    std::optional<std::string> signal;
    std::optional<std::size_t> bin;
    std::optional<int> twiddle_bits;
};

void add_common_options(CLI::App& cmd, Overrides& o) {
    cmd.add_option("--config", o.config_path, "JSON experiment configuration");
    cmd.add_option("--seed", o.seed, "Seed for every random draw (default 0)");
    cmd.add_option("--out", o.out, "Output file (default: standard output)");
    cmd.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("-n,--n", o.size, "Transform size (power of two)");
    cmd.add_option("--direction", o.direction, "fft or ifft")
        ->check(CLI::IsMember({"fft", "ifft"}));
    cmd.add_option("--mode", o.mode, "off, uniform or mantissa")
        ->check(CLI::IsMember({"off", "uniform", "mantissa"}));
    cmd.add_option("--bits", o.bits, "Quantizer bits");
    cmd.add_option("--x-max", o.full_scale, "Input-referenced uniform full scale");
    cmd.add_option("--bits-lo", o.bits_lo, "First bit count of a sweep");
    cmd.add_option("--bits-hi", o.bits_hi, "Last bit count of a sweep");
    cmd.add_option("--trials", o.trials, "Random signals per sweep row");
    cmd.add_option("--signal", o.signal, "impulse, sinusoid, multitone or random");
    cmd.add_option("--bin", o.bin, "Frequency bin of the sinusoid");
    cmd.add_option("--twiddle-bits", o.twiddle_bits, "Enable twiddle quantization at this width");
}

ExperimentConfig resolve_config(const Overrides& o) {
    ExperimentConfig config = o.config_path.empty() ? ExperimentConfig{}
                                                    : load_config_file(o.config_path);
    if (o.seed) config.seed = *o.seed;
    if (o.out) config.out = *o.out;
    if (o.format) config.format = parse_report_format(*o.format);
    if (o.size) config.size = *o.size;
    if (o.direction) config.direction = *o.direction == "ifft" ? Direction::Inverse : Direction::Forward;
    if (o.mode) config.mode = parse_quantizer_mode(*o.mode);
    if (o.bits) config.bits = *o.bits;
    if (o.full_scale) config.full_scale = *o.full_scale;
    if (o.bits_lo) config.bits_lo = *o.bits_lo;
    if (o.bits_hi) config.bits_hi = *o.bits_hi;
    if (o.trials) config.trials = *o.trials;
    if (o.signal) config.signal.kind = parse_signal_kind(*o.signal);
    if (o.bin) config.signal.bin = *o.bin;
    if (o.twiddle_bits) {
        config.twiddle_quantization = true;
        config.twiddle_bits = *o.twiddle_bits;
    }
    config.signal.size = config.size;
    config.validate();
    return config;
}

void require(bool condition, const std::string& what) {
    if (!condition) {
        throw std::runtime_error("consistency check failed: " + what);
    }
}

int run_fft(const ExperimentConfig& config) {
    const Pipeline pipeline(to_pipeline_config(config));
    const SignalVector x = generate_signal(config.signal, config.seed);
    const RunTrace trace = pipeline.run(x);
    const SignalVector reference = fft_reference(x, config.direction);

    require(trace.stage_outputs.size() == pipeline.stages(), "stage count");
    require(ProcessingCost{trace.complex_multiplies, trace.complex_additions} ==
                processing_cost(config.size),
            "operation count");
    for (const Complex& v : trace.output) {
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "finite output");
    }

    const Comparison comparison = compare(reference, trace.output);
    std::ostringstream out;
    emit_vector(trace.output, reference, comparison, config.format, out,
                make_report_header(config));
    write_output(config.out, out.str());
    return 0;
}

int run_sweep_command(const ExperimentConfig& config) {
    const SweepSpec spec = to_sweep_spec(config);
    const std::vector<ErrorReport> rows = run_sweep(spec);
    for (const ErrorReport& r : rows) {
        const std::string at = " (bits " + std::to_string(r.bits) + ")";
        require(std::isfinite(r.error_variance) && std::isfinite(r.sqnr_db), "finite row" + at);
        require(r.percent_error >= 0.0, "percent_error >= 0" + at);
        require(r.saturation_rate >= 0.0 && r.saturation_rate <= 1.0, "saturation rate" + at);
        require(std::abs(r.error_std * r.error_std - r.error_variance) <=
                    1e-12 * r.error_variance,
                "std^2 = variance" + at);
    }
    std::ostringstream out;
    emit_report(rows, config.format, out, make_report_header(config));
    write_output(config.out, out.str());
    return 0;
}

int run_quantizer_command(const ExperimentConfig& config, std::size_t samples) {
    if (config.mode == QuantizerMode::Off) {
        throw ConfigError("field 'quantizer.mode': characterization needs uniform or mantissa");
    }
    const auto rows = quantizer_characterization(config.mode, config.bits_lo, config.bits_hi,
                                                 samples, config.seed, config.full_scale);
    std::ostringstream out;
    emit_characterization(rows, config.mode, config.format, out, make_report_header(config));
    write_output(config.out, out.str());
    return 0;
}

int run_selftest(std::uint64_t seed) {
    int failures = 0;
    auto report = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        if (!ok) ++failures;
    };

    for (std::size_t n : {2u, 4u, 8u, 64u, 1024u}) {
        SignalSpec spec;
        spec.size = n;
        const SignalVector x = generate_signal(spec, seed);
        const SignalVector fast = fft_reference(x, Direction::Forward);
        const SignalVector slow = dft_naive(x);
        const SignalVector back = fft_reference(fast, Direction::Inverse);
        double oracle = 0.0;
        double round_trip = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            oracle = std::max(oracle, std::abs(fast[i] - slow[i]));
            round_trip = std::max(round_trip, std::abs(back[i] - x[i]));
        }
        const double dn = static_cast<double>(n);
        report("oracle N=" + std::to_string(n), oracle < 1e-9 * dn,
               "max|fft-dft|=" + format_number(oracle));
        report("round-trip N=" + std::to_string(n), round_trip < 1e-12 * dn,
               "max|ifft(fft(x))-x|=" + format_number(round_trip));
    }
    for (QuantizerMode mode : {QuantizerMode::Uniform, QuantizerMode::Mantissa}) {
        for (const CharacterizationRow& r :
             quantizer_characterization(mode, 4, 8, 1'000'000, seed)) {
            const double rel = std::abs(r.empirical_variance / r.theory_variance - 1.0);
            report(std::string(to_string(mode)) + " theory b=" + std::to_string(r.bits),
                   rel < 0.05, "relative deviation " + format_number(rel));
        }
    }
    std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statically quantized radix-2 FFT/IFFT simulator"};
    app.require_subcommand(1);

    Overrides fft_opts;
    Overrides sweep_opts;
    Overrides quant_opts;
    std::size_t samples = 1'000'000;
    std::uint64_t selftest_seed = 0;

    auto* fft = app.add_subcommand("fft", "Run one transform through the quantized pipeline");
    add_common_options(*fft, fft_opts);
    auto* sweep = app.add_subcommand("sweep", "Error and SQNR versus bit resolution");
    add_common_options(*sweep, sweep_opts);
    auto* quantizer = app.add_subcommand("quantizer", "Quantizer-only noise characterization");
    add_common_options(*quantizer, quant_opts);
    quantizer->add_option("--samples", samples, "Monte-Carlo samples per bit count")
        ->check(CLI::Range(static_cast<std::size_t>(kMinCharacterizationSamples),
                           static_cast<std::size_t>(1'000'000'000)));
    auto* selftest = app.add_subcommand("selftest", "Oracle and Monte-Carlo self checks");
    selftest->add_option("--seed", selftest_seed, "Seed for the random test vectors");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fft->parsed()) return run_fft(resolve_config(fft_opts));
        if (sweep->parsed()) return run_sweep_command(resolve_config(sweep_opts));
        if (quantizer->parsed()) return run_quantizer_command(resolve_config(quant_opts), samples);
        if (selftest->parsed()) return run_selftest(selftest_seed);
    } catch (const std::exception& e) {
        std::cerr << "qfft: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
