#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "aesthetics/image.hpp"
#include "aesthetics/labels.hpp"

namespace aesthetics {

// Default extractor parameters.
inline constexpr int kEdgeMapSide = 100;
inline constexpr std::size_t kEdgeMapCells = kEdgeMapSide * kEdgeMapSide;
inline constexpr double kLaplacianAlpha = 0.2;
inline constexpr double kEnergyDelta = 96.04;   // percent of edge energy kept by the box
inline constexpr int kColorBinsPerChannel = 16;
inline constexpr std::size_t kColorBins = 4096;
inline constexpr int kNeighbors = 5;
inline constexpr int kHueBins = 20;
inline constexpr double kHueAlpha = 0.05;
inline constexpr double kHueMinValue = 0.15;
inline constexpr double kHueMaxValue = 0.95;
inline constexpr double kHueMinSaturation = 0.2;
inline constexpr double kPowerThreshold = 5.0;
inline constexpr double kContrastMass = 0.98;
inline constexpr int kDarkPatch = 10;
inline constexpr double kDarkEpsilon = 1e-6;

/// 100x100 unit-mass map of absolute Laplacian energy.
class EdgeMap {
public:
    /// Uniform map (every cell 1e-4).
    EdgeMap();
    /// Validates nonnegativity and unit mass (1e-9).
    explicit EdgeMap(std::vector<double> cells);

    double at(int row, int col) const { return cells_[static_cast<std::size_t>(row) * kEdgeMapSide + col]; }
    std::span<const double> cells() const { return cells_; }

    friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

private:
    std::vector<double> cells_;
};

struct LaplacianTemplates {
    EdgeMap professional;
    EdgeMap snapshot;
    std::size_t n_professional = 0;
    std::size_t n_snapshot = 0;
};

/// Streaming form of fit_laplacian_templates. Accumulates in insertion order.
class TemplateAccumulator {
public:
    TemplateAccumulator();
    void add(const EdgeMap& map, Label label);
    /// Throws InvalidArgument if either class is empty.
    LaplacianTemplates finish() const;

private:
    std::vector<double> sum_professional_;
    std::vector<double> sum_snapshot_;
    std::size_t n_professional_ = 0;
    std::size_t n_snapshot_ = 0;
};

void save_templates(const std::filesystem::path& path, const LaplacianTemplates& templates);
LaplacianTemplates load_templates(const std::filesystem::path& path);

/// 16x16x16 RGB histogram with unit L1 mass.
class ColorHist {
public:
    ColorHist();
    /// Validates length 4096, nonnegativity and unit mass (1e-9).
    explicit ColorHist(std::vector<double> bins);

    std::span<const double> bins() const { return bins_; }
    double operator[](std::size_t i) const { return bins_[i]; }

    friend bool operator==(const ColorHist&, const ColorHist&) = default;

private:
    std::vector<double> bins_;
};

struct ColorExemplar {
    ColorHist hist;
    Label label = Label::snapshot;
};

void save_exemplars(const std::filesystem::path& path, std::span<const ColorExemplar> exemplars);
std::vector<ColorExemplar> load_exemplars(const std::filesystem::path& path);

using SubjectRegion = Rect;

struct FeatureVector {
    double q_l = 0.0;     // edge template distance difference
    double q_cd = 0.0;    // color kNN vote
    double q_h = 0.0;     // hue simplicity
    double q_f = 0.0;     // blur (frequency fraction)
    double b = 0.0;       // subject / background brightness delta
    double q_dark = 0.0;  // dark channel

    std::array<double, 6> to_array() const { return {q_l, q_cd, q_h, q_f, b, q_dark}; }
    static FeatureVector from_array(const std::array<double, 6>& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct AuxiliaryDiagnostics {
    double bbox_area = 1.0;
    double contrast_width = 256.0;

    friend bool operator==(const AuxiliaryDiagnostics&, const AuxiliaryDiagnostics&) = default;
};

// ---------------------------------------------------------------------------
// Edge distribution

/// Mean absolute Laplacian over R,G,B at full resolution.
GrayImage edge_energy(const RgbImage& img, double alpha = kLaplacianAlpha);

EdgeMap edge_laplacian_map(const RgbImage& img, double alpha = kLaplacianAlpha);

/// Resamples a full-resolution energy grid to 100x100 and normalizes it.
EdgeMap edge_map_from_energy(const GrayImage& energy);

LaplacianTemplates fit_laplacian_templates(std::span<const RgbImage> images,
                                           std::span<const Label> labels);

double edge_quality(const EdgeMap& map, const LaplacianTemplates& templates);

/// Greedy trim of outermost rows/columns (smallest marginal energy first,
/// ties top, bottom, left, right) while at least delta percent of the total
/// energy stays inside. A zero-energy grid returns the full frame.
Rect energy_bounding_box(const GrayImage& energy, double delta = kEnergyDelta);

/// Area fraction of energy_bounding_box on the edge map.
double edge_bounding_area(const EdgeMap& map, double delta = kEnergyDelta);

SubjectRegion subject_region(const RgbImage& img);

// ---------------------------------------------------------------------------
// Color

ColorHist color_histogram(const RgbImage& img);

double l1_distance(const ColorHist& a, const ColorHist& b);

/// n_p - n_s among the k nearest exemplars in L1 distance; equal distances
/// favor the lower exemplar index. `skip` excludes one exemplar (leave-one-out
/// when the probe is itself part of the pool).
int color_quality_knn(const ColorHist& probe, std::span<const ColorExemplar> exemplars,
                      int k = kNeighbors, std::optional<std::size_t> skip = std::nullopt);

/// 20 - |{bins > alpha * peak}| over stable-hue pixels; 0 when none qualify.
double hue_count_quality(const RgbImage& img, double alpha = kHueAlpha);

// ---------------------------------------------------------------------------
// Blur, exposure, dark channel

/// Fraction of DFT bins of the grayscale image whose magnitude exceeds theta.
/// Operates on the whole input; extract_features passes the subject crop.
double blur_quality(const RgbImage& img, double theta = kPowerThreshold);

std::array<double, 256> combined_gray_histogram(const RgbImage& img);

double contrast_width(std::span<const double, 256> histogram, double mass = kContrastMass);

double brightness_quality(const RgbImage& img, const SubjectRegion& region);

/// Per-pixel min over a kDarkPatch square (offsets -5..+4, clipped) and channels.
GrayImage dark_channel(const RgbImage& img, int patch = kDarkPatch);

double dark_channel_quality(const RgbImage& img, const SubjectRegion& region);

// ---------------------------------------------------------------------------

struct FeatureContext {
    const LaplacianTemplates& templates;
    std::span<const ColorExemplar> exemplars;
    int k = kNeighbors;
    double delta = kEnergyDelta;
    double hue_alpha = kHueAlpha;
    double power_threshold = kPowerThreshold;
};

struct ExtractedFeatures {
    FeatureVector features;
    AuxiliaryDiagnostics diagnostics;
};

/// `self_index` marks the probe's own slot in the exemplar pool, if any.
ExtractedFeatures extract_features(const RgbImage& img, const FeatureContext& ctx,
                                   std::optional<std::size_t> self_index = std::nullopt);

}  // namespace aesthetics
