#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "aesthetics/features.hpp"
#include "aesthetics/labels.hpp"

namespace aesthetics {

struct ManifestEntry {
    std::string path;
    Category category = Category::animal;
    Label label = Label::snapshot;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Parses `path,category,label` CSV. Errors report the 1-based line number.
/// Relative paths are kept as written; resolution is the caller's concern.
std::vector<ManifestEntry> parse_manifest(std::istream& in, const std::string& source = "<stream>");

/// With verify_files, relative paths are checked against the manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path, bool verify_files = false);

void write_manifest(std::ostream& out, std::span<const ManifestEntry> entries);
void save_manifest(const std::filesystem::path& path, std::span<const ManifestEntry> entries);

inline constexpr double kTrainFraction = 0.70;

/// Indices into the entry list that was split.
struct SplitPlan {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::uint64_t seed = 0;
    double train_fraction = kTrainFraction;
};

/// Stratified by (category, label) cell: seeded shuffle of each cell, first
/// round(fraction * n) go to train. Index lists come back sorted.
SplitPlan split(std::span<const ManifestEntry> entries, std::uint64_t seed,
                double fraction = kTrainFraction);

struct FeatureRow {
    ManifestEntry entry;
    FeatureVector features;
    AuxiliaryDiagnostics diagnostics;

    friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

inline constexpr std::array<const char*, 11> kCacheColumns = {
    "path", "category", "label", "q_l", "q_cd", "q_h", "q_f", "b", "q_dark", "bbox_area",
    "contrast_width"};

void write_feature_cache(std::ostream& out, std::span<const FeatureRow> rows);
void save_feature_cache(const std::filesystem::path& path, std::span<const FeatureRow> rows);

/// Header-keyed: any column order is accepted, missing or unknown columns are not.
std::vector<FeatureRow> read_feature_cache(std::istream& in, const std::string& source = "<stream>");
std::vector<FeatureRow> load_feature_cache(const std::filesystem::path& path);

std::vector<ManifestEntry> entries_of(std::span<const FeatureRow> rows);

/// 9 significant digits, as used by every CSV the tool writes.
std::string format_real(double value);

}  // namespace aesthetics
