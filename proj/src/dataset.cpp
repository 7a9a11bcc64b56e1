#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "aesthetics/dataset.hpp"
#include "aesthetics/random.hpp"

namespace aesthetics {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(source + ": empty manifest (expected header path,category,label)");
    strip_cr(line);
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line != "path,category,label") {
        throw FormatError(source + ": line 1: expected header 'path,category,label', got '" + line + "'");
    }

    std::vector<ManifestEntry> entries;
    std::set<std::string> seen;
    for (int line_no = 2; std::getline(in, line); ++line_no) {
        strip_cr(line);
        if (line.empty()) continue;
        const std::string where = source + ": line " + std::to_string(line_no) + ": ";
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw FormatError(where + "expected 3 fields (paths may not contain commas), got " +
                              std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw FormatError(where + "empty path");
        const auto category = parse_category(fields[1]);
        if (!category) throw FormatError(where + "unknown category '" + fields[1] + "'");
        const auto label = parse_label(fields[2]);
        if (!label) throw FormatError(where + "unknown label '" + fields[2] + "'");
        if (!seen.insert(fields[0]).second) throw FormatError(where + "duplicate path '" + fields[0] + "'");
        entries.push_back({fields[0], *category, *label});
    }
    return entries;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, bool verify_files) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open manifest");
    auto entries = parse_manifest(in, path.string());
    if (verify_files) {
        const auto base = path.parent_path();
        for (const auto& e : entries) {
            const std::filesystem::path p(e.path);
            const auto resolved = p.is_absolute() ? p : base / p;
            if (!std::filesystem::is_regular_file(resolved)) {
                throw IoError(path.string() + ": listed file does not exist: " + resolved.string());
            }
        }
    }
    return entries;
}

void write_manifest(std::ostream& out, std::span<const ManifestEntry> entries) {
    out << "path,category,label\n";
    for (const auto& e : entries) {
        if (e.path.find(',') != std::string::npos || e.path.find('\n') != std::string::npos) {
            throw InvalidArgument("manifest paths may not contain commas or newlines: " + e.path);
        }
        out << e.path << ',' << to_string(e.category) << ',' << to_string(e.label) << '\n';
    }
}

void save_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries) {
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    write_manifest(out, entries);
    if (!out) throw IoError(path.string() + ": write failed");
}

SplitPlan split(std::span<const ManifestEntry> entries, std::uint64_t seed, double fraction) {
    if (entries.empty()) throw InvalidArgument("split: no entries");
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("split: fraction must be in [0,1]");

    SplitPlan plan;
    plan.seed = seed;
    plan.train_fraction = fraction;
    Rng rng(seed);
    // Fixed cell order: the draws do not depend on how cells interleave in the manifest.
    for (Category category : kAllCategories) {
        for (Label label : {Label::professional, Label::snapshot}) {
            std::vector<std::size_t> cell;
            for (std::size_t i = 0; i < entries.size(); ++i) {
                if (entries[i].category == category && entries[i].label == label) cell.push_back(i);
            }
            if (cell.empty()) continue;
            rng.shuffle(std::span<std::size_t>(cell));
            // Half-up rounding; the slack keeps 0.7 * 5 (3.4999...) at 4.
            const auto n_train = std::min(
                cell.size(), static_cast<std::size_t>(std::floor(fraction * static_cast<double>(cell.size()) + 0.5 + 1e-9)));
            plan.train.insert(plan.train.end(), cell.begin(), cell.begin() + n_train);
            plan.test.insert(plan.test.end(), cell.begin() + n_train, cell.end());
        }
    }
    std::sort(plan.train.begin(), plan.train.end());
    std::sort(plan.test.begin(), plan.test.end());
    return plan;
}

}  // namespace aesthetics
