#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include <json.hpp>

#include "aesthetics/features.hpp"
#include "aesthetics/imaging.hpp"

namespace aesthetics {

ColorHist::ColorHist() : bins_(kColorBins, 0.0) { bins_[0] = 1.0; }

ColorHist::ColorHist(std::vector<double> bins) : bins_(std::move(bins)) {
    if (bins_.size() != kColorBins) throw InvalidArgument("ColorHist: expected 4096 bins");
    double sum = 0.0;
    for (double v : bins_) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("ColorHist: negative or non-finite bin");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("ColorHist: bins must sum to 1");
}

ColorHist color_histogram(const RgbImage& img) {
    std::vector<std::size_t> counts(kColorBins, 0);
    for (const Rgb& p : img.pixels()) {
        ++counts[(p.r / 16) * 256 + (p.g / 16) * 16 + (p.b / 16)];
    }
    const double n = static_cast<double>(img.size());
    std::vector<double> bins(kColorBins);
    for (std::size_t i = 0; i < kColorBins; ++i) bins[i] = static_cast<double>(counts[i]) / n;
    return ColorHist(std::move(bins));
}

double l1_distance(const ColorHist& a, const ColorHist& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < kColorBins; ++i) d += std::abs(a[i] - b[i]);
    return d;
}

int color_quality_knn(const ColorHist& probe, std::span<const ColorExemplar> exemplars, int k,
                      std::optional<std::size_t> skip) {
    if (exemplars.empty()) throw InvalidArgument("color_quality_knn: empty exemplar set");
    const std::size_t available = exemplars.size() - (skip && *skip < exemplars.size() ? 1 : 0);
    if (k < 1 || static_cast<std::size_t>(k) > available) {
        throw InvalidArgument("color_quality_knn: k=" + std::to_string(k) + " but only " +
                              std::to_string(available) + " exemplars available");
    }

    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(exemplars.size());
    for (std::size_t i = 0; i < exemplars.size(); ++i) {
        if (skip && *skip == i) continue;
        ranked.emplace_back(l1_distance(probe, exemplars[i].hist), i);
    }
    // Pair ordering breaks equal distances by ascending index.
    std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());

    int vote = 0;
    for (int i = 0; i < k; ++i) {
        vote += exemplars[ranked[i].second].label == Label::professional ? 1 : -1;
    }
    return vote;
}

double hue_count_quality(const RgbImage& img, double alpha) {
    std::array<std::size_t, kHueBins> hist{};
    std::size_t qualifying = 0;
    for (const Rgb& p : img.pixels()) {
        const HsvPixel hsv = rgb_to_hsv(p);
        if (hsv.v < kHueMinValue || hsv.v > kHueMaxValue || !(hsv.s > kHueMinSaturation)) continue;
        const int bin = std::min(static_cast<int>(hsv.h / (360.0 / kHueBins)), kHueBins - 1);
        ++hist[bin];
        ++qualifying;
    }
    if (qualifying == 0) return 0.0;

    const double peak = static_cast<double>(*std::max_element(hist.begin(), hist.end()));
    const auto occupied = std::count_if(hist.begin(), hist.end(),
                                        [&](std::size_t h) { return static_cast<double>(h) > alpha * peak; });
    return static_cast<double>(kHueBins - occupied);
}

void save_exemplars(const std::filesystem::path& path, std::span<const ColorExemplar> exemplars) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : exemplars) {
        std::vector<std::size_t> index;
        std::vector<double> mass;
        for (std::size_t i = 0; i < kColorBins; ++i) {
            if (e.hist[i] != 0.0) {
                index.push_back(i);
                mass.push_back(e.hist[i]);
            }
        }
        list.push_back({{"label", to_string(e.label)}, {"bins", index}, {"mass", mass}});
    }
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << nlohmann::json{{"exemplars", list}}.dump() << '\n';
    if (!out) throw IoError(path.string() + ": write failed");
}

std::vector<ColorExemplar> load_exemplars(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string() + ": cannot open file");
    try {
        const auto j = nlohmann::json::parse(in);
        std::vector<ColorExemplar> out;
        for (const auto& e : j.at("exemplars")) {
            const auto label = parse_label(e.at("label").get<std::string>());
            if (!label) throw SchemaError(path.string() + ": unknown exemplar label");
            const auto index = e.at("bins").get<std::vector<std::size_t>>();
            const auto mass = e.at("mass").get<std::vector<double>>();
            if (index.size() != mass.size()) throw SchemaError(path.string() + ": bins/mass length mismatch");
            std::vector<double> bins(kColorBins, 0.0);
            for (std::size_t i = 0; i < index.size(); ++i) {
                if (index[i] >= kColorBins) throw SchemaError(path.string() + ": bin index out of range");
                bins[index[i]] = mass[i];
            }
            out.push_back({ColorHist(std::move(bins)), *label});
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path.string() + ": invalid exemplars file: " + e.what());
    } catch (const InvalidArgument& e) {
        throw SchemaError(path.string() + ": invalid exemplars file: " + e.what());
    }
}

}  // namespace aesthetics
