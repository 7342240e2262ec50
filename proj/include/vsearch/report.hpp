#pragma once

#include "vsearch/analysis.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace vsearch {

struct ReportInput {
    std::vector<AccuracyCurve> accuracy;
    std::vector<ErrorCurve> errors;
    std::vector<CorrelationResult> correlations;
    std::vector<SpatialBiasTable> spatial_bias;
    std::vector<BinnedTable> binned;
};

/// Builds every table the analysis offers for a set of joined scores.
/// `bins` selects the binned tables: "human", "finetune" or "none".
ReportInput analyse(std::span<const JoinedScore> scores, const std::string& bins = "none");

/// Writes CSV tables, one SVG per curve and `index.json` listing every file.
/// Returns the paths written, relative to out_dir. Throws std::runtime_error on I/O failure.
std::vector<std::string> emit_report(const ReportInput& input, const std::filesystem::path& out_dir);

/// Individual renderers, exposed for tests.
std::string accuracy_csv(const std::vector<AccuracyCurve>& curves);
std::string error_csv(const std::vector<ErrorCurve>& curves);
std::string correlation_csv(const std::vector<CorrelationResult>& rows);
std::string spatial_bias_csv(const std::vector<SpatialBiasTable>& tables);
std::string binned_csv(const std::vector<BinnedTable>& tables);
std::string curve_svg(const AccuracyCurve& curve);
std::string curve_svg(const ErrorCurve& curve);

} // namespace vsearch
