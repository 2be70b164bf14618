#include "dcurve/ingest.hpp"

#include "dcurve/errors.hpp"

#include <openssl/evp.h>

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace dcurve {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delimiter, start);
        fields.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

bool is_missing(std::string_view v) {
    return v.empty() || v == "NA" || v == "na" || v == "NaN" || v == "nan" || v == "null" ||
           v == "NULL";
}

std::string row_prefix(std::size_t row, const std::string& column) {
    return "row " + std::to_string(row) + ", column '" + column + "': ";
}

} // namespace

std::vector<PredictionSet> ingest_text(std::string_view text, const IngestionSpec& spec) {
    if (spec.model_columns.empty()) throw DataError("no model columns requested");
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < text.size();) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();

    std::vector<std::string> names;
    std::size_t first_data = 0;
    if (spec.header) {
        if (lines.empty()) throw DataError("input has no header row");
        for (auto f : split(lines[0], spec.delimiter)) names.emplace_back(f);
        first_data = 1;
    } else if (!lines.empty()) {
        const auto width = split(lines[0], spec.delimiter).size();
        for (std::size_t i = 0; i < width; ++i) names.push_back(std::to_string(i + 1));
    }

    auto column_index = [&](const std::string& name) {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw DataError("missing column '" + name + "'", 0, name);
        return static_cast<std::size_t>(it - names.begin());
    };
    const std::size_t outcome_col = column_index(spec.outcome_column);
    std::vector<std::size_t> model_cols;
    for (const auto& m : spec.model_columns) model_cols.push_back(column_index(m));

    std::vector<std::vector<PredictionRecord>> records(model_cols.size());
    for (std::size_t li = first_data; li < lines.size(); ++li) {
        const std::size_t row = li - first_data + 1;
        const auto fields = split(lines[li], spec.delimiter);
        if (fields.size() != names.size()) {
            throw DataError("row " + std::to_string(row) + ": expected " +
                                std::to_string(names.size()) + " fields, found " +
                                std::to_string(fields.size()),
                            row);
        }
        const auto outcome_text = fields[outcome_col];
        if (is_missing(outcome_text)) {
            throw DataError(row_prefix(row, spec.outcome_column) + "missing value", row,
                            spec.outcome_column);
        }
        if (outcome_text != "0" && outcome_text != "1") {
            throw DataError(row_prefix(row, spec.outcome_column) + "outcome '" +
                                std::string(outcome_text) + "' is not 0 or 1",
                            row, spec.outcome_column);
        }
        const int outcome = outcome_text == "1" ? 1 : 0;

        for (std::size_t m = 0; m < model_cols.size(); ++m) {
            const auto& column = spec.model_columns[m];
            const auto risk_text = fields[model_cols[m]];
            if (is_missing(risk_text)) {
                throw DataError(row_prefix(row, column) + "missing value", row, column);
            }
            double risk = 0.0;
            const auto res = std::from_chars(risk_text.data(), risk_text.data() + risk_text.size(), risk);
            if (res.ec != std::errc{} || res.ptr != risk_text.data() + risk_text.size()) {
                throw DataError(row_prefix(row, column) + "cannot parse risk '" +
                                    std::string(risk_text) + "'",
                                row, column);
            }
            if (!(risk >= 0.0 && risk <= 1.0)) {
                throw DataError(row_prefix(row, column) + "risk " + std::string(risk_text) +
                                    " outside [0,1]",
                                row, column);
            }
            records[m].push_back({risk, outcome});
        }
    }
    if (records.front().empty()) throw DataError("input has no data rows");

    std::vector<PredictionSet> out;
    out.reserve(model_cols.size());
    for (std::size_t m = 0; m < model_cols.size(); ++m) {
        out.emplace_back(spec.model_columns[m], std::move(records[m]));
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<PredictionSet> ingest(const IngestionSpec& spec) {
    return ingest_text(read_file(spec.path), spec);
}

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string file_digest(const std::filesystem::path& path) {
    return "sha256:" + sha256_hex(read_file(path));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write '" + tmp.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw DataError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw DataError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

} // namespace dcurve
