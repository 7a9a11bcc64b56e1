#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "aesthetics/dataset.hpp"

namespace aesthetics {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_real(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw FormatError(where + "not a number: '" + text + "'");
    }
}

}  // namespace

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

void write_feature_cache(std::ostream& out, std::span<const FeatureRow> rows) {
    for (std::size_t i = 0; i < kCacheColumns.size(); ++i) out << (i ? "," : "") << kCacheColumns[i];
    out << '\n';
    for (const auto& row : rows) {
        if (row.entry.path.find(',') != std::string::npos) {
            throw InvalidArgument("feature cache paths may not contain commas: " + row.entry.path);
        }
        const FeatureVector& f = row.features;
        out << row.entry.path << ',' << to_string(row.entry.category) << ',' << to_string(row.entry.label);
        for (double v : {f.q_l, f.q_cd, f.q_h, f.q_f, f.b, f.q_dark, row.diagnostics.bbox_area,
                         row.diagnostics.contrast_width}) {
            out << ',' << format_real(v);
        }
        out << '\n';
    }
}

void save_feature_cache(const std::filesystem::path& path, std::span<const FeatureRow> rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    write_feature_cache(out, rows);
    if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<FeatureRow> read_feature_cache(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw SchemaError(source + ": empty feature cache (missing header)");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_fields(line);
    std::map<std::string, std::size_t> column;
    for (std::size_t i = 0; i < header.size(); ++i) {
        bool known = false;
        for (const char* name : kCacheColumns) known = known || header[i] == name;
        if (!known) throw SchemaError(source + ": unexpected column '" + header[i] + "'");
        if (!column.emplace(header[i], i).second) throw SchemaError(source + ": duplicate column '" + header[i] + "'");
    }
    for (const char* name : kCacheColumns) {
        if (!column.count(name)) throw SchemaError(source + ": missing column '" + std::string(name) + "'");
    }

    std::vector<FeatureRow> rows;
    for (int line_no = 2; std::getline(in, line); ++line_no) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = source + ": line " + std::to_string(line_no) + ": ";
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw FormatError(where + "expected " + std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        auto field = [&](const char* name) -> const std::string& { return fields[column.at(name)]; };
        auto real = [&](const char* name) { return parse_real(field(name), where); };

        FeatureRow row;
        row.entry.path = field("path");
        const auto category = parse_category(field("category"));
        if (!category) throw FormatError(where + "unknown category '" + field("category") + "'");
        const auto label = parse_label(field("label"));
        if (!label) throw FormatError(where + "unknown label '" + field("label") + "'");
        row.entry.category = *category;
        row.entry.label = *label;
        row.features = {real("q_l"), real("q_cd"), real("q_h"), real("q_f"), real("b"), real("q_dark")};
        row.diagnostics = {real("bbox_area"), real("contrast_width")};
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<FeatureRow> load_feature_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open feature cache");
    return read_feature_cache(in, path.string());
}

std::vector<ManifestEntry> entries_of(std::span<const FeatureRow> rows) {
    std::vector<ManifestEntry> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.entry);
    return out;
}

}  // namespace aesthetics
