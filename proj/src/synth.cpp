#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <string>

#include "aesthetics/imaging.hpp"
#include "aesthetics/pipeline.hpp"
#include "aesthetics/random.hpp"

namespace aesthetics {

namespace {

Rgb hsv_to_rgb(double h, double s, double v) {
    const double c = v * s;
    const double hp = std::fmod(h, 360.0) / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r = 0.0, g = 0.0, b = 0.0;
    switch (static_cast<int>(hp)) {
        case 0: r = c; g = x; break;
        case 1: r = x; g = c; break;
        case 2: g = c; b = x; break;
        case 3: g = x; b = c; break;
        case 4: r = x; b = c; break;
        default: r = c; b = x; break;
    }
    const double m = v - c;
    auto byte = [](double u) { return static_cast<std::uint8_t>(std::clamp(std::lround(u * 255.0), 0L, 255L)); };
    return {byte(r + m), byte(g + m), byte(b + m)};
}

}  // namespace

RgbImage synth_professional(int size, std::uint64_t seed) {
    Rng rng(seed);
    const double bg_hue = rng.uniform(0.0, 360.0);
    const double fg_hue = std::fmod(bg_hue + rng.uniform(120.0, 240.0), 360.0);
    const double bg_sat = rng.uniform(0.6, 0.9);
    const double fg_sat = rng.uniform(0.75, 1.0);
    const double cy = size * (0.5 + rng.uniform(-0.05, 0.05));
    const double cx = size * (0.5 + rng.uniform(-0.05, 0.05));
    const double radius = size * rng.uniform(0.16, 0.26);
    const double stripe = rng.uniform(3.0, 6.0);

    // Smooth vertical gradient behind a sharp, striped disc.
    RgbImage img(size, size);
    for (int r = 0; r < size; ++r) {
        const double bg_val = 0.25 + 0.2 * r / size;
        for (int c = 0; c < size; ++c) {
            const double dy = r - cy;
            const double dx = c - cx;
            if (dx * dx + dy * dy <= radius * radius) {
                const bool band = static_cast<int>(std::floor((dx + dy + 4 * size) / stripe)) % 2 == 0;
                img.at(r, c) = hsv_to_rgb(fg_hue, fg_sat, band ? 0.9 : 0.7);
            } else {
                img.at(r, c) = hsv_to_rgb(bg_hue, bg_sat, bg_val);
            }
        }
    }
    return img;
}

RgbImage synth_snapshot(int size, double blur_sigma, std::uint64_t seed) {
    Rng rng(seed);
    const double base = rng.uniform(0.35, 0.65);
    RgbImage img(size, size, hsv_to_rgb(0.0, 0.0, base));

    // Clutter: many low-saturation rectangles scattered over the whole frame.
    const int clutter = 25 + static_cast<int>(rng.below(16));
    for (int n = 0; n < clutter; ++n) {
        const int h = 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size / 4)));
        const int w = 4 + static_cast<int>(rng.below(static_cast<std::uint64_t>(size / 4)));
        const int r0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(size - h)));
        const int c0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(size - w)));
        const Rgb color = hsv_to_rgb(rng.uniform(0.0, 360.0), rng.uniform(0.0, 0.12), rng.uniform(0.2, 0.9));
        for (int r = r0; r < r0 + h; ++r) {
            for (int c = c0; c < c0 + w; ++c) img.at(r, c) = color;
        }
    }
    return gaussian_blur(img, blur_sigma);
}

int run_synth(const SynthOptions& opts, std::ostream& log) {
    if (opts.per_class < 1 || opts.size < 16) {
        log << "synth: need --count >= 1 and --size >= 16\n";
        return 2;
    }
    const auto image_dir = opts.out_dir / "images";
    std::filesystem::create_directories(image_dir);

    Rng seeds(opts.seed);
    std::vector<ManifestEntry> entries;
    for (int cls = 0; cls < 2; ++cls) {
        const bool pro = cls == 0;
        for (int i = 0; i < opts.per_class; ++i) {
            const std::uint64_t image_seed = seeds.next();
            char name[64];
            std::snprintf(name, sizeof name, "%s_%04d.ppm", pro ? "pro" : "snap", i);
            const RgbImage img = pro ? synth_professional(opts.size, image_seed)
                                     : synth_snapshot(opts.size, opts.blur_sigma, image_seed);
            save_ppm(image_dir / name, img);
            entries.push_back({std::string("images/") + name, kAllCategories[static_cast<std::size_t>(i) % kAllCategories.size()],
                               pro ? Label::professional : Label::snapshot});
        }
    }
    save_manifest(opts.out_dir / "manifest.csv", entries);
    log << "synth: wrote " << entries.size() << " images and " << (opts.out_dir / "manifest.csv").string() << "\n";
    return 0;
}

}  // namespace aesthetics
