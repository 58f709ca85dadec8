#pragma once

#include <span>
#include <string>

#include "qsep/separability.hpp"

namespace qsep {

enum class OutputFormat { Json, Csv };
std::optional<OutputFormat> format_from_string(std::string_view s);

/// JSON: {"reports":[{family, n_qubits, partition, criterion, x_star,
/// converged, samples:[{q, x_star}]}]}. Emission is deterministic and
/// stable under a parse/re-dump round trip.
std::string thresholds_to_json(std::span<const ThresholdReport> reports);

/// CSV: one row per (q, x*(q)) sample plus a summary row per report.
std::string thresholds_to_csv(std::span<const ThresholdReport> reports);

struct CurveMeta {
    Family family;
    int n_qubits;
    Partition partition;
    Criterion criterion;
    double q;
};

std::string curve_to_json(const CurveMeta& meta, std::span<const CurvePoint> points);
std::string curve_to_csv(const CurveMeta& meta, std::span<const CurvePoint> points);

std::string isospectral_to_json(const IsospectralReport& rep);
std::string isospectral_to_csv(const IsospectralReport& rep);

/// 10 significant digits, scientific notation allowed; shared by the CSV
/// writers and the CLI scalar output.
std::string format_number(double v);

}  // namespace qsep
