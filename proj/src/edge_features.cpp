#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include <json.hpp>

#include "aesthetics/features.hpp"
#include "aesthetics/imaging.hpp"

namespace aesthetics {

namespace {

constexpr double kMassTolerance = 1e-9;

double total(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

void check_unit_mass(std::span<const double> v, const char* what) {
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument(std::string(what) + ": negative or non-finite entry");
    }
    if (std::abs(total(v) - 1.0) > kMassTolerance) throw InvalidArgument(std::string(what) + ": entries must sum to 1");
}

/// Summed-area table with one row and column of zero padding.
class IntegralImage {
public:
    explicit IntegralImage(const GrayImage& g)
        : w_(g.width()), h_(g.height()), sums_(static_cast<std::size_t>(w_ + 1) * (h_ + 1), 0.0) {
        for (int r = 0; r < h_; ++r) {
            double row = 0.0;
            for (int c = 0; c < w_; ++c) {
                row += g.at(r, c);
                sums_[idx(r + 1, c + 1)] = sums_[idx(r, c + 1)] + row;
            }
        }
    }

    double sum(int r0, int r1, int c0, int c1) const {
        return sums_[idx(r1 + 1, c1 + 1)] - sums_[idx(r0, c1 + 1)] - sums_[idx(r1 + 1, c0)] +
               sums_[idx(r0, c0)];
    }

private:
    std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * (w_ + 1) + c; }

    int w_;
    int h_;
    std::vector<double> sums_;
};

}  // namespace

EdgeMap::EdgeMap() : cells_(kEdgeMapCells, 1.0 / kEdgeMapCells) {}

EdgeMap::EdgeMap(std::vector<double> cells) : cells_(std::move(cells)) {
    if (cells_.size() != kEdgeMapCells) throw InvalidArgument("EdgeMap: expected 10000 cells");
    check_unit_mass(cells_, "EdgeMap");
}

GrayImage edge_energy(const RgbImage& img, double alpha) {
    GrayImage mean(img.width(), img.height());
    auto acc = mean.values();
    for (int ch = 0; ch < 3; ++ch) {
        const GrayImage lap = laplacian_filter(channel(img, ch), alpha);
        auto v = lap.values();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::abs(v[i]);
    }
    for (double& x : acc) x /= 3.0;
    return mean;
}

EdgeMap edge_laplacian_map(const RgbImage& img, double alpha) {
    return edge_map_from_energy(edge_energy(img, alpha));
}

EdgeMap edge_map_from_energy(const GrayImage& energy) {
    // Thin edges vanish under point sampling, so shrinking averages areas.
    const bool shrink = energy.width() >= kEdgeMapSide && energy.height() >= kEdgeMapSide;
    const GrayImage small = shrink ? resize_area(energy, kEdgeMapSide, kEdgeMapSide)
                                   : resize_bilinear(energy, kEdgeMapSide, kEdgeMapSide);
    std::vector<double> cells(small.values().begin(), small.values().end());
    const double mass = total(cells);
    if (!(mass > 0.0)) return EdgeMap();
    for (double& c : cells) c /= mass;
    return EdgeMap(std::move(cells));
}

TemplateAccumulator::TemplateAccumulator()
    : sum_professional_(kEdgeMapCells, 0.0), sum_snapshot_(kEdgeMapCells, 0.0) {}

void TemplateAccumulator::add(const EdgeMap& map, Label label) {
    auto& sum = label == Label::professional ? sum_professional_ : sum_snapshot_;
    auto cells = map.cells();
    for (std::size_t i = 0; i < kEdgeMapCells; ++i) sum[i] += cells[i];
    ++(label == Label::professional ? n_professional_ : n_snapshot_);
}

LaplacianTemplates TemplateAccumulator::finish() const {
    if (n_professional_ == 0 || n_snapshot_ == 0) {
        throw InvalidArgument("fit_laplacian_templates: need at least one professional and one snapshot image");
    }
    auto mean = [](const std::vector<double>& sum, std::size_t n) {
        std::vector<double> cells(sum);
        for (double& c : cells) c /= static_cast<double>(n);
        return EdgeMap(std::move(cells));
    };
    return {mean(sum_professional_, n_professional_), mean(sum_snapshot_, n_snapshot_), n_professional_,
            n_snapshot_};
}

LaplacianTemplates fit_laplacian_templates(std::span<const RgbImage> images, std::span<const Label> labels) {
    if (images.size() != labels.size()) throw InvalidArgument("fit_laplacian_templates: images and labels differ in length");
    TemplateAccumulator acc;
    for (std::size_t i = 0; i < images.size(); ++i) acc.add(edge_laplacian_map(images[i]), labels[i]);
    return acc.finish();
}

double edge_quality(const EdgeMap& map, const LaplacianTemplates& templates) {
    auto l = map.cells();
    auto mp = templates.professional.cells();
    auto ms = templates.snapshot.cells();
    double d_s = 0.0;
    double d_p = 0.0;
    for (std::size_t i = 0; i < kEdgeMapCells; ++i) {
        d_s += std::abs(l[i] - ms[i]);
        d_p += std::abs(l[i] - mp[i]);
    }
    return d_s - d_p;
}

Rect energy_bounding_box(const GrayImage& energy, double delta) {
    if (!(delta > 0.0 && delta <= 100.0)) throw InvalidArgument("energy_bounding_box: delta must be in (0,100]");
    Rect box{0, energy.height() - 1, 0, energy.width() - 1};
    const IntegralImage sat(energy);
    const double mass = sat.sum(box.row_min, box.row_max, box.col_min, box.col_max);
    if (!(mass > 0.0)) return box;

    const double keep = delta / 100.0 * mass - 1e-12 * mass;
    double retained = mass;
    for (;;) {
        // Candidates in tie-break order: top, bottom, left, right.
        double best = INFINITY;
        int which = -1;
        if (box.rows() > 1) {
            const double top = sat.sum(box.row_min, box.row_min, box.col_min, box.col_max);
            const double bottom = sat.sum(box.row_max, box.row_max, box.col_min, box.col_max);
            if (top < best) { best = top; which = 0; }
            if (bottom < best) { best = bottom; which = 1; }
        }
        if (box.cols() > 1) {
            const double left = sat.sum(box.row_min, box.row_max, box.col_min, box.col_min);
            const double right = sat.sum(box.row_min, box.row_max, box.col_max, box.col_max);
            if (left < best) { best = left; which = 2; }
            if (right < best) { best = right; which = 3; }
        }
        if (which < 0 || retained - best < keep) break;
        switch (which) {
            case 0: ++box.row_min; break;
            case 1: --box.row_max; break;
            case 2: ++box.col_min; break;
            default: --box.col_max; break;
        }
        // Re-query instead of subtracting so rounding cannot drift across many trims.
        retained = sat.sum(box.row_min, box.row_max, box.col_min, box.col_max);
    }
    return box;
}

double edge_bounding_area(const EdgeMap& map, double delta) {
    const GrayImage grid(kEdgeMapSide, kEdgeMapSide, std::vector<double>(map.cells().begin(), map.cells().end()));
    return static_cast<double>(energy_bounding_box(grid, delta).area()) / kEdgeMapCells;
}

SubjectRegion subject_region(const RgbImage& img) {
    return energy_bounding_box(edge_energy(img), kEnergyDelta);
}

void save_templates(const std::filesystem::path& path, const LaplacianTemplates& t) {
    nlohmann::json j;
    j["n_professional"] = t.n_professional;
    j["n_snapshot"] = t.n_snapshot;
    j["professional"] = std::vector<double>(t.professional.cells().begin(), t.professional.cells().end());
    j["snapshot"] = std::vector<double>(t.snapshot.cells().begin(), t.snapshot.cells().end());
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << j.dump() << '\n';
    if (!out) throw IoError(path.string() + ": write failed");
}

LaplacianTemplates load_templates(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open file");
    try {
        const auto j = nlohmann::json::parse(in);
        LaplacianTemplates t{EdgeMap(j.at("professional").get<std::vector<double>>()),
                             EdgeMap(j.at("snapshot").get<std::vector<double>>()),
                             j.at("n_professional").get<std::size_t>(), j.at("n_snapshot").get<std::size_t>()};
        if (t.n_professional < 1 || t.n_snapshot < 1) throw SchemaError(path.string() + ": template counts must be >= 1");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path.string() + ": invalid templates file: " + e.what());
    } catch (const InvalidArgument& e) {
        throw SchemaError(path.string() + ": invalid templates file: " + e.what());
    }
}

}  // namespace aesthetics
