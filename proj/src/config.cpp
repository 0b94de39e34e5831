#include "qfft/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace qfft {
namespace {

using nlohmann::json;

std::string join_path(const std::string& parent, std::string_view key) {
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

template <std::size_t N>
void reject_unknown_keys(const json& object, const std::array<std::string_view, N>& allowed,
                         const std::string& path) {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown field '" + join_path(path, key) + "'");
        }
    }
}

const json& require_object(const json& value, const std::string& path) {
    if (!value.is_object()) {
        throw ConfigError("field '" + path + "': expected an object");
    }
    return value;
}

std::uint64_t as_unsigned(const json& value, const std::string& path) {
    if (value.is_number_unsigned()) return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    }
    throw ConfigError("field '" + path + "': expected a nonnegative integer");
}

int as_int(const json& value, const std::string& path) {
    if (!value.is_number_integer()) {
        throw ConfigError("field '" + path + "': expected an integer");
    }
    const auto v = value.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError("field '" + path + "': integer out of range");
    }
    return static_cast<int>(v);
}

double as_double(const json& value, const std::string& path) {
    if (!value.is_number()) {
        throw ConfigError("field '" + path + "': expected a number");
    }
    return value.get<double>();
}

bool as_bool(const json& value, const std::string& path) {
    if (!value.is_boolean()) {
        throw ConfigError("field '" + path + "': expected true or false");
    }
    return value.get<bool>();
}

std::string as_string(const json& value, const std::string& path) {
    if (!value.is_string()) {
        throw ConfigError("field '" + path + "': expected a string");
    }
    return value.get<std::string>();
}

template <typename Parse>
auto parse_enum(const json& value, const std::string& path, Parse parse) {
    const std::string text = as_string(value, path);
    try {
        return parse(text);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("field '" + path + "': " + e.what());
    }
}

Direction parse_direction(std::string_view text) {
    if (text == "fft") return Direction::Forward;
    if (text == "ifft") return Direction::Inverse;
    throw std::invalid_argument("unknown direction '" + std::string(text) +
                                "' (expected fft or ifft)");
}

std::string_view direction_name(Direction direction) {
    return direction == Direction::Inverse ? "ifft" : "fft";
}

void read_quantizer(const json& node, ExperimentConfig& config) {
    const std::string path = "quantizer";
    require_object(node, path);
    reject_unknown_keys(node, std::array<std::string_view, 4>{"mode", "bits", "x_max", "per_stage"},
                        path);
    if (node.contains("mode")) {
        config.mode = parse_enum(node["mode"], path + ".mode", parse_quantizer_mode);
    }
    if (node.contains("bits")) config.bits = as_int(node["bits"], path + ".bits");
    if (node.contains("x_max")) config.full_scale = as_double(node["x_max"], path + ".x_max");
    if (node.contains("per_stage")) {
        const json& list = node["per_stage"];
        if (!list.is_array()) {
            throw ConfigError("field 'quantizer.per_stage': expected a list");
        }
        config.per_stage.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string item_path = path + ".per_stage[" + std::to_string(i) + "]";
            const json& item = require_object(list[i], item_path);
            reject_unknown_keys(item, std::array<std::string_view, 3>{"mode", "bits", "x_max"},
                                item_path);
            QuantizerSpec spec{config.mode, config.bits, config.full_scale};
            if (item.contains("mode")) {
                spec.mode = parse_enum(item["mode"], item_path + ".mode", parse_quantizer_mode);
            }
            if (item.contains("bits")) spec.bits = as_int(item["bits"], item_path + ".bits");
            if (item.contains("x_max")) {
                spec.full_scale = as_double(item["x_max"], item_path + ".x_max");
            }
            config.per_stage.push_back(spec);
        }
    }
}

void read_signal(const json& node, ExperimentConfig& config) {
    const std::string path = "signal";
    require_object(node, path);
    reject_unknown_keys(
        node, std::array<std::string_view, 5>{"kind", "bin", "amplitude", "bins", "amplitudes"},
        path);
    SignalSpec& signal = config.signal;
    if (node.contains("kind")) signal.kind = parse_enum(node["kind"], path + ".kind", parse_signal_kind);
    if (node.contains("bin")) signal.bin = as_unsigned(node["bin"], path + ".bin");
    if (node.contains("amplitude")) {
        signal.amplitude = as_double(node["amplitude"], path + ".amplitude");
    }
    if (node.contains("bins")) {
        const json& list = node["bins"];
        if (!list.is_array()) throw ConfigError("field 'signal.bins': expected a list");
        signal.bins.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            signal.bins.push_back(as_unsigned(list[i], path + ".bins[" + std::to_string(i) + "]"));
        }
    }
    if (node.contains("amplitudes")) {
        const json& list = node["amplitudes"];
        if (!list.is_array()) throw ConfigError("field 'signal.amplitudes': expected a list");
        signal.amplitudes.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            signal.amplitudes.push_back(
                as_double(list[i], path + ".amplitudes[" + std::to_string(i) + "]"));
        }
    }
}

}  // namespace

std::string_view to_string(ReportFormat format) noexcept {
    return format == ReportFormat::Json ? "json" : "csv";
}

ReportFormat parse_report_format(std::string_view text) {
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown format '" + std::string(text) +
                                "' (expected csv or json)");
}

void ExperimentConfig::validate() const {
    auto check = [](auto&& fn, const std::string& field) {
        try {
            fn();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("field '" + field + "': " + e.what());
        }
    };
    check([&] { validate_transform_size(size); }, "n");
    check([&] { QuantizerSpec{mode, bits, full_scale}.validate(); }, "quantizer");
    if (!per_stage.empty()) {
        const std::size_t stages = stage_count(size);
        if (per_stage.size() != stages) {
            throw ConfigError("field 'quantizer.per_stage': needs exactly " +
                              std::to_string(stages) + " entries for n = " +
                              std::to_string(size) + ", got " + std::to_string(per_stage.size()));
        }
        for (std::size_t i = 0; i < per_stage.size(); ++i) {
            check([&] { per_stage[i].validate(); },
                  "quantizer.per_stage[" + std::to_string(i) + "]");
        }
    }
    if (twiddle_bits && (*twiddle_bits < kMinQuantizerBits || *twiddle_bits > kMaxQuantizerBits)) {
        throw ConfigError("field 'twiddle_quantization.bits': must lie in [1, 52]");
    }
    check(
        [&] {
            SignalSpec sized = signal;
            sized.size = size;
            sized.validate();
        },
        "signal");
    if (bits_lo < 1 || bits_lo > bits_hi || bits_hi > kMaxSweepBits) {
        throw ConfigError("field 'sweep': bit range must satisfy 1 <= bits_lo <= bits_hi <= 24");
    }
    if (trials < 1) {
        throw ConfigError("field 'sweep.trials': must be at least 1");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    require_object(doc, "<root>");
    reject_unknown_keys(doc,
                        std::array<std::string_view, 12>{"n", "direction", "quantizer", "mode",
                                                         "bits", "x_max", "twiddle_quantization",
                                                         "signal", "sweep", "seed", "out",
                                                         "format"},
                        "");

    ExperimentConfig config;
    if (doc.contains("n")) config.size = as_unsigned(doc["n"], "n");
    if (doc.contains("direction")) {
        config.direction = parse_enum(doc["direction"], "direction", parse_direction);
    }
    for (std::string_view shorthand : {"mode", "bits", "x_max"}) {
        if (doc.contains(shorthand) && doc.contains("quantizer") &&
            doc["quantizer"].is_object() && doc["quantizer"].contains(shorthand)) {
            throw ConfigError("field '" + std::string(shorthand) +
                              "' given both at top level and in 'quantizer'");
        }
    }
    if (doc.contains("mode")) config.mode = parse_enum(doc["mode"], "mode", parse_quantizer_mode);
    if (doc.contains("bits")) config.bits = as_int(doc["bits"], "bits");
    if (doc.contains("x_max")) config.full_scale = as_double(doc["x_max"], "x_max");
    if (doc.contains("quantizer")) read_quantizer(doc["quantizer"], config);

    if (doc.contains("twiddle_quantization")) {
        const json& node = require_object(doc["twiddle_quantization"], "twiddle_quantization");
        reject_unknown_keys(node, std::array<std::string_view, 2>{"enabled", "bits"},
                            "twiddle_quantization");
        if (node.contains("enabled")) {
            config.twiddle_quantization = as_bool(node["enabled"], "twiddle_quantization.enabled");
        }
        if (node.contains("bits") && !node["bits"].is_null()) {
            config.twiddle_bits = as_int(node["bits"], "twiddle_quantization.bits");
        }
    }
    if (doc.contains("signal")) read_signal(doc["signal"], config);
    if (doc.contains("sweep")) {
        const json& node = require_object(doc["sweep"], "sweep");
        reject_unknown_keys(node, std::array<std::string_view, 3>{"bits_lo", "bits_hi", "trials"},
                            "sweep");
        if (node.contains("bits_lo")) config.bits_lo = as_int(node["bits_lo"], "sweep.bits_lo");
        if (node.contains("bits_hi")) config.bits_hi = as_int(node["bits_hi"], "sweep.bits_hi");
        if (node.contains("trials")) config.trials = as_unsigned(node["trials"], "sweep.trials");
    }
    if (doc.contains("seed")) config.seed = as_unsigned(doc["seed"], "seed");
    if (doc.contains("out")) config.out = as_string(doc["out"], "out");
    if (doc.contains("format")) {
        config.format = parse_enum(doc["format"], "format", parse_report_format);
    }
    config.signal.size = config.size;
    config.validate();
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const ExperimentConfig& config, bool pretty) {
    json per_stage = json::array();
    for (const QuantizerSpec& spec : config.per_stage) {
        per_stage.push_back({{"mode", to_string(spec.mode)},
                             {"bits", spec.bits},
                             {"x_max", spec.full_scale}});
    }
    json doc = {
        {"n", config.size},
        {"direction", direction_name(config.direction)},
        {"quantizer",
         {{"mode", to_string(config.mode)},
          {"bits", config.bits},
          {"x_max", config.full_scale},
          {"per_stage", per_stage}}},
        {"twiddle_quantization",
         {{"enabled", config.twiddle_quantization},
          {"bits", config.twiddle_bits ? json(*config.twiddle_bits) : json(nullptr)}}},
        {"signal",
         {{"kind", to_string(config.signal.kind)},
          {"bin", config.signal.bin},
          {"amplitude", config.signal.amplitude},
          {"bins", config.signal.bins},
          {"amplitudes", config.signal.amplitudes}}},
        {"sweep",
         {{"bits_lo", config.bits_lo}, {"bits_hi", config.bits_hi}, {"trials", config.trials}}},
        {"seed", config.seed},
        {"out", config.out},
        {"format", to_string(config.format)},
    };
    return pretty ? doc.dump(2) : doc.dump();
}

PipelineConfig to_pipeline_config(const ExperimentConfig& config) {
    config.validate();
    PipelineConfig pipeline;
    pipeline.size = config.size;
    pipeline.direction = config.direction;
    const QuantizerSpec base{config.mode, config.bits, config.full_scale};
    if (!config.per_stage.empty()) {
        pipeline.stage_quantizers = config.per_stage;
    } else if (config.mode == QuantizerMode::Uniform) {
        pipeline.stage_quantizers = scaled_stage_quantizers(config.size, config.direction, base);
    } else {
        pipeline.stage_quantizers.assign(stage_count(config.size), base);
    }
    if (config.twiddle_quantization) {
        const int bits = config.twiddle_bits.value_or(config.bits);
        pipeline.twiddle_quantization = true;
        pipeline.twiddle_quantizer = config.mode == QuantizerMode::Mantissa
                                         ? QuantizerSpec::mantissa(bits)
                                         : QuantizerSpec::uniform(bits, 1.0);
    }
    return pipeline;
}

SweepSpec to_sweep_spec(const ExperimentConfig& config) {
    config.validate();
    if (config.mode == QuantizerMode::Off) {
        throw ConfigError("field 'quantizer.mode': a sweep needs uniform or mantissa");
    }
    SweepSpec spec;
    spec.size = config.size;
    spec.direction = config.direction;
    spec.mode = config.mode;
    spec.bits_lo = config.bits_lo;
    spec.bits_hi = config.bits_hi;
    spec.signal = config.signal;
    spec.signal.size = config.size;
    spec.trials = config.trials;
    spec.seed = config.seed;
    spec.full_scale = config.full_scale;
    spec.twiddle_quantization = config.twiddle_quantization;
    spec.twiddle_bits = config.twiddle_bits;
    return spec;
}

}  // namespace qfft
