#include "qfft/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "json.hpp"

namespace qfft {

const std::string_view kMantissaVarianceNote =
    "mantissa relative-error variance uses the closed form of the double integral "
    "(2/q) int_{1/2}^{1} int_{-q/2}^{q/2} a^2/M^2 da dM = q^2/6, which is twice (not half) "
    "the uniform value q^2/12 for the same step";
const std::string_view kInverseScalingNote =
    "the inverse transform scales its input by 1/N before the first stage (read as 1/N, "
    "not N, so that ifft(fft(x)) = x)";

namespace {

using nlohmann::json;

void write_comment_block(std::ostream& out, const std::optional<ReportHeader>& header) {
    if (!header) return;
    out << "# config: " << header->config_json << '\n';
    out << "# seed: " << header->seed << '\n';
    for (const std::string& note : header->notes) {
        out << "# note: " << note << '\n';
    }
}

json header_json(const std::optional<ReportHeader>& header) {
    if (!header) return json::object();
    return {{"config", header->config_json.empty() ? json(nullptr)
                                                   : json::parse(header->config_json)},
            {"seed", header->seed},
            {"notes", header->notes}};
}

}  // namespace

ReportHeader make_report_header(const ExperimentConfig& config) {
    ReportHeader header;
    header.config_json = serialize_config(config, false);
    header.seed = config.seed;
    header.notes = {std::string(kMantissaVarianceNote), std::string(kInverseScalingNote)};
    return header;
}

std::string format_number(double value) {
    std::array<char, 64> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                         std::chars_format::scientific, 16);
    if (ec != std::errc{}) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buffer.data(), end);
}

void emit_report(std::span<const ErrorReport> rows, ReportFormat format, std::ostream& out,
                 const std::optional<ReportHeader>& header) {
    if (rows.empty()) {
        throw std::invalid_argument("emit_report: no rows");
    }
    if (format == ReportFormat::Csv) {
        write_comment_block(out, header);
        out << kErrorReportHeader << '\n';
        for (const ErrorReport& r : rows) {
            out << r.bits << ',' << format_number(r.error_mean) << ','
                << format_number(r.error_std) << ',' << format_number(r.error_variance) << ','
                << format_number(r.percent_error) << ',' << format_number(r.sqnr_db) << ','
                << format_number(r.theory_variance) << ',' << format_number(r.saturation_rate)
                << '\n';
        }
        return;
    }
    json list = json::array();
    for (const ErrorReport& r : rows) {
        list.push_back({{"bits", r.bits},
                        {"error_mean", r.error_mean},
                        {"error_std", r.error_std},
                        {"error_variance", r.error_variance},
                        {"percent_error", r.percent_error},
                        {"sqnr_db", r.sqnr_db},
                        {"theory_variance", r.theory_variance},
                        {"saturation_rate", r.saturation_rate}});
    }
    out << json{{"header", header_json(header)}, {"rows", list}}.dump(2) << '\n';
}

void emit_characterization(std::span<const CharacterizationRow> rows, QuantizerMode mode,
                           ReportFormat format, std::ostream& out,
                           const std::optional<ReportHeader>& header) {
    if (rows.empty()) {
        throw std::invalid_argument("emit_characterization: no rows");
    }
    // Mantissa rows also carry q^2/12 so the factor of two is visible.
    const bool mantissa = mode == QuantizerMode::Mantissa;
    if (format == ReportFormat::Csv) {
        write_comment_block(out, header);
        out << "bits,empirical_mean,empirical_variance,theory_variance";
        if (mantissa) out << ",uniform_theory_variance";
        out << '\n';
        for (const CharacterizationRow& r : rows) {
            out << r.bits << ',' << format_number(r.empirical_mean) << ','
                << format_number(r.empirical_variance) << ',' << format_number(r.theory_variance);
            if (mantissa) out << ',' << format_number(r.theory_variance / 2.0);
            out << '\n';
        }
        return;
    }
    json list = json::array();
    for (const CharacterizationRow& r : rows) {
        json row = {{"bits", r.bits},
                    {"empirical_mean", r.empirical_mean},
                    {"empirical_variance", r.empirical_variance},
                    {"theory_variance", r.theory_variance}};
        if (mantissa) row["uniform_theory_variance"] = r.theory_variance / 2.0;
        list.push_back(row);
    }
    out << json{{"header", header_json(header)}, {"mode", to_string(mode)}, {"rows", list}}.dump(2)
        << '\n';
}

void emit_vector(std::span<const Complex> output, std::span<const Complex> reference,
                 const Comparison& comparison, ReportFormat format, std::ostream& out,
                 const std::optional<ReportHeader>& header) {
    if (output.size() != reference.size()) {
        throw std::invalid_argument("emit_vector: length mismatch");
    }
    if (format == ReportFormat::Csv) {
        write_comment_block(out, header);
        out << "# percent_error: " << format_number(comparison.percent_error) << '\n';
        out << "# sqnr_db: " << format_number(comparison.sqnr_db) << '\n';
        out << "index,re,im,reference_re,reference_im\n";
        for (std::size_t i = 0; i < output.size(); ++i) {
            out << i << ',' << format_number(output[i].real()) << ','
                << format_number(output[i].imag()) << ',' << format_number(reference[i].real())
                << ',' << format_number(reference[i].imag()) << '\n';
        }
        return;
    }
    json samples = json::array();
    for (std::size_t i = 0; i < output.size(); ++i) {
        samples.push_back({{"index", i},
                           {"re", output[i].real()},
                           {"im", output[i].imag()},
                           {"reference_re", reference[i].real()},
                           {"reference_im", reference[i].imag()}});
    }
    out << json{{"header", header_json(header)},
                {"percent_error", comparison.percent_error},
                {"sqnr_db", comparison.sqnr_db},
                {"samples", samples}}
               .dump(2)
        << '\n';
}

void write_output(const std::string& path, std::string_view content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("failed writing to standard output");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open output file '" + path + "'");
    }
    file << content;
    file.close();
    if (!file) {
        throw std::runtime_error("failed writing output file '" + path + "'");
    }
}

}  // namespace qfft
