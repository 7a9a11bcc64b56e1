#include <algorithm>
#include <numeric>

#include "aesthetics/features.hpp"
#include "aesthetics/imaging.hpp"

namespace aesthetics {

namespace {

void check_region(const RgbImage& img, const SubjectRegion& region) {
    if (region.rows() < 1 || region.cols() < 1 || region.row_min < 0 || region.col_min < 0 ||
        region.row_max >= img.height() || region.col_max >= img.width()) {
        throw InvalidArgument("subject region outside image bounds");
    }
}

/// Running minimum over [i + lo, i + hi], clipped to the line.
void min_filter_line(std::span<const double> in, std::span<double> out, int lo, int hi) {
    const int n = static_cast<int>(in.size());
    for (int i = 0; i < n; ++i) {
        const int a = std::max(i + lo, 0);
        const int b = std::min(i + hi, n - 1);
        out[i] = *std::min_element(in.begin() + a, in.begin() + b + 1);
    }
}

}  // namespace

double blur_quality(const RgbImage& img, double theta) {
    const GrayImage spectrum = dft2_magnitude(to_grayscale(img));
    const auto above = std::count_if(spectrum.values().begin(), spectrum.values().end(),
                                     [theta](double m) { return m > theta; });
    return static_cast<double>(above) / static_cast<double>(spectrum.size());
}

std::array<double, 256> combined_gray_histogram(const RgbImage& img) {
    std::array<std::size_t, 256> counts{};
    for (const Rgb& p : img.pixels()) {
        ++counts[p.r];
        ++counts[p.g];
        ++counts[p.b];
    }
    std::array<double, 256> e{};
    std::transform(counts.begin(), counts.end(), e.begin(), [](std::size_t c) { return static_cast<double>(c); });
    return e;
}

double contrast_width(std::span<const double, 256> histogram, double mass) {
    const double total = std::accumulate(histogram.begin(), histogram.end(), 0.0);
    if (!(total > 0.0)) throw InvalidArgument("contrast_width: empty histogram");
    const double need = mass * total - 1e-9 * total;

    // Two-pointer scan for the shortest window reaching the required mass.
    int best = 256;
    double window = 0.0;
    int lo = 0;
    for (int hi = 0; hi < 256; ++hi) {
        window += histogram[hi];
        while (lo < hi && window - histogram[lo] >= need) window -= histogram[lo++];
        if (window >= need) best = std::min(best, hi - lo + 1);
    }
    return static_cast<double>(best);
}

double brightness_quality(const RgbImage& img, const SubjectRegion& region) {
    check_region(img, region);
    double inside = 0.0;
    double outside = 0.0;
    std::size_t n_in = 0;
    std::size_t n_out = 0;
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const Rgb& p = img.at(r, c);
            const double y = (0.299 * p.r + 0.587 * p.g + 0.114 * p.b) / 255.0;
            if (region.contains(r, c)) {
                inside += y;
                ++n_in;
            } else {
                outside += y;
                ++n_out;
            }
        }
    }
    // A full-frame subject has no background to contrast against.
    if (n_out == 0) return 0.0;
    return inside / static_cast<double>(n_in) - outside / static_cast<double>(n_out);
}

GrayImage dark_channel(const RgbImage& img, int patch) {
    if (patch < 1) throw InvalidArgument("dark_channel: patch must be >= 1");
    const int lo = -(patch / 2);
    const int hi = patch - 1 - patch / 2;
    const int w = img.width();
    const int h = img.height();

    GrayImage channel_min(w, h);
    auto cm = channel_min.values();
    auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) cm[i] = std::min({px[i].r, px[i].g, px[i].b});

    GrayImage rows_done(w, h);
    for (int r = 0; r < h; ++r) {
        min_filter_line(cm.subspan(static_cast<std::size_t>(r) * w, w),
                        rows_done.values().subspan(static_cast<std::size_t>(r) * w, w), lo, hi);
    }
    GrayImage out(w, h);
    std::vector<double> column(h);
    std::vector<double> filtered(h);
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) column[r] = rows_done.at(r, c);
        min_filter_line(column, filtered, lo, hi);
        for (int r = 0; r < h; ++r) out.at(r, c) = filtered[r];
    }
    return out;
}

double dark_channel_quality(const RgbImage& img, const SubjectRegion& region) {
    check_region(img, region);
    const GrayImage dark = dark_channel(img);
    double sum = 0.0;
    for (int r = region.row_min; r <= region.row_max; ++r) {
        for (int c = region.col_min; c <= region.col_max; ++c) {
            const Rgb& p = img.at(r, c);
            sum += dark.at(r, c) / (static_cast<double>(p.r) + p.g + p.b + kDarkEpsilon);
        }
    }
    return sum / static_cast<double>(region.area());
}

}  // namespace aesthetics
