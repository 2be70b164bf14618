#pragma once

#include "dcurve/core_metrics.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dcurve {

// Delimited text input: one 0/1 outcome column and one risk column per model.
// Without a header row, columns are addressed by 1-based position ("1", "2", ...).
struct IngestionSpec {
    std::filesystem::path path;
    std::string outcome_column;
    std::vector<std::string> model_columns;
    char delimiter = ',';
    bool header = true;
};

// One PredictionSet per model column, sharing the outcome vector, row order
// preserved. Throws DataError naming the row and column of the first problem.
std::vector<PredictionSet> ingest(const IngestionSpec& spec);
std::vector<PredictionSet> ingest_text(std::string_view text, const IngestionSpec& spec);

// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Write to a sibling temp file and rename over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

} // namespace dcurve
