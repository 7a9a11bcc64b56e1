#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aesthetics/labels.hpp"
#include "aesthetics/mlp.hpp"

namespace aesthetics {

struct ScoredExample {
    std::string path;
    QualityScore score{1.0};
    Label label = Label::snapshot;
    Category category = Category::animal;
};

/// Classification thresholds 2, 2.5, ..., 9.
std::vector<double> default_thresholds();

inline constexpr double kDefaultGamma = 4.0;

/// Throws InvalidArgument on empty input.
double accuracy(std::span<const ScoredExample> examples, double gamma);

struct SweepRow {
    double threshold = 0.0;
    double accuracy = 0.0;

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct ThresholdSweep {
    std::vector<SweepRow> rows;
    double best_threshold = 0.0;
    double best_accuracy = 0.0;
};

/// Ties in accuracy resolve to the smaller threshold.
ThresholdSweep threshold_sweep(std::span<const ScoredExample> examples,
                               std::span<const double> thresholds);
ThresholdSweep threshold_sweep(std::span<const ScoredExample> examples);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    /// Scores >= threshold are called professional; +inf for the origin.
    double threshold = 0.0;
};

/// Professional is the positive class. Throws InvalidArgument unless both
/// labels are present.
std::vector<RocPoint> roc_curve(std::span<const ScoredExample> examples);

/// Trapezoidal area over fpr.
double auc(std::span<const RocPoint> points);

struct CategoryReport {
    double accuracy = 0.0;
    std::optional<double> auc;  // absent when the category lacks one label
    std::size_t n_test = 0;
    std::vector<RocPoint> roc;
    std::vector<ScoredExample> examples;
};

struct EvaluationReport {
    double overall_accuracy = 0.0;
    std::optional<double> overall_auc;  // absent unless both labels are present
    double best_threshold = kDefaultGamma;
    std::vector<SweepRow> sweep;
    std::map<Category, CategoryReport> categories;
};

/// Per-category evaluation of `test` at `gamma`; `sweep` is carried into the report as is.
EvaluationReport evaluate(std::span<const ScoredExample> test, double gamma,
                          std::vector<SweepRow> sweep);

std::string report_json(const EvaluationReport& report);

/// Writes report.json, scores_<category>.csv and roc_<category>.csv.
/// Returns the written paths in a fixed order.
std::vector<std::filesystem::path> emit_report(const EvaluationReport& report,
                                               const std::filesystem::path& dir);

}  // namespace aesthetics
