#pragma once

#include "dcurve/comparison.hpp"
#include "dcurve/curves.hpp"
#include "dcurve/resampling.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dcurve {

struct ReportMetadata {
    std::string tool = "dcurve";
    std::string version = DCURVE_VERSION;
    std::string command;
    std::string input_digest;
    ThresholdGrid grid = ThresholdGrid::default_grid();
    std::map<std::string, std::string> options;

    bool operator==(const ReportMetadata&) const = default;
};

struct ModelCurve {
    std::string name;
    std::size_t n = 0;
    std::size_t n1 = 0;
    double prevalence = 0.0;
    std::vector<CurvePoint> points;

    bool operator==(const ModelCurve&) const = default;
};

struct ModelBand {
    std::string model;
    BandSpec spec;
    CurveBand band;

    bool operator==(const ModelBand&) const = default;
};

struct ModelComparison {
    std::string model1;
    std::string model2;
    std::vector<ComparisonVerdict> points;

    bool operator==(const ModelComparison&) const = default;
};

struct ReportDocument {
    ReportMetadata metadata;
    std::vector<ModelCurve> models;
    std::vector<ModelBand> bands;              // omitted from output when empty
    std::vector<ModelComparison> comparisons;  // omitted from output when empty

    bool operator==(const ReportDocument&) const = default;
};

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(const std::string& text);

ModelCurve make_model_curve(const PredictionSet& data, const ThresholdGrid& grid);

std::string emit_report(const ReportDocument& doc, ReportFormat format);

// Inverse of emit_report(doc, json). Throws DataError on malformed input.
ReportDocument parse_report_json(std::string_view text);

// %.17g; every double survives a text round trip.
std::string format_number(double v);

} // namespace dcurve
