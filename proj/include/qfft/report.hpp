#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qfft/analysis.hpp"
#include "qfft/config.hpp"

namespace qfft {

/// Column order of sweep CSV reports.
inline constexpr std::string_view kErrorReportHeader =
    "bits,error_mean,error_std,error_variance,percent_error,sqnr_db,theory_variance,"
    "saturation_rate";

/// Mantissa theory note carried in every report header.
extern const std::string_view kMantissaVarianceNote;
/// Inverse-transform scaling note carried in every report header.
extern const std::string_view kInverseScalingNote;

/// Provenance written ahead of the data: the effective configuration (as a
/// JSON document), the seed, and free-form notes.
struct ReportHeader {
    std::string config_json;
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
};

/// Header with the effective configuration and the standard notes.
ReportHeader make_report_header(const ExperimentConfig& config);

/// Locale-independent scientific notation with 17 significant digits, enough
/// to round-trip any double.
std::string format_number(double value);

/// CSV: optional '#' comment block, the header row, one line per row.
/// JSON: {"header": {...}, "rows": [{...}, ...]}. Throws std::invalid_argument
/// for an empty row set.
void emit_report(std::span<const ErrorReport> rows, ReportFormat format, std::ostream& out,
                 const std::optional<ReportHeader>& header = std::nullopt);

void emit_characterization(std::span<const CharacterizationRow> rows, QuantizerMode mode,
                           ReportFormat format, std::ostream& out,
                           const std::optional<ReportHeader>& header = std::nullopt);

/// Transform output next to the unquantized reference.
void emit_vector(std::span<const Complex> output, std::span<const Complex> reference,
                 const Comparison& comparison, ReportFormat format, std::ostream& out,
                 const std::optional<ReportHeader>& header = std::nullopt);

/// Writes `content` to `path`, or to standard output when `path` is empty.
/// Throws std::runtime_error on I/O failure.
void write_output(const std::string& path, std::string_view content);

}  // namespace qfft
