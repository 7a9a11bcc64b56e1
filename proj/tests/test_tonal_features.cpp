#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "aesthetics/features.hpp"
#include "aesthetics/imaging.hpp"
#include "aesthetics/random.hpp"
#include "oracles.hpp"

using namespace aesthetics;

namespace {

Rect full(const RgbImage& img) { return img.bounds(); }

RgbImage checkerboard(int n) {
    RgbImage img(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) img.at(r, c) = (r + c) % 2 ? Rgb{255, 255, 255} : Rgb{0, 0, 0};
    }
    return img;
}

std::array<double, 256> levels(std::initializer_list<std::pair<int, double>> spikes) {
    std::array<double, 256> h{};
    for (auto [level, mass] : spikes) h[level] = mass;
    return h;
}

/// Sliding-window oracle: try every interval, keep the narrowest.
double window_oracle(const std::array<double, 256>& h, double mass) {
    const double total = std::accumulate(h.begin(), h.end(), 0.0);
    for (int width = 1; width <= 256; ++width) {
        for (int lo = 0; lo + width <= 256; ++lo) {
            const double s = std::accumulate(h.begin() + lo, h.begin() + lo + width, 0.0);
            if (s >= mass * total - 1e-9 * total) return width;
        }
    }
    return 256;
}

}  // namespace

TEST(Blur, ConstantCropHasOnlyDc) {
    EXPECT_DOUBLE_EQ(blur_quality(RgbImage(100, 100, {128, 128, 128})), 1e-4);
}

TEST(Blur, CheckerboardMatchesNaiveDft) {
    for (int n : {8, 16}) {
        const RgbImage img = checkerboard(n);
        const double want = static_cast<double>(oracle::count_above(img, kPowerThreshold)) / (n * n);
        EXPECT_DOUBLE_EQ(blur_quality(img), want);
        EXPECT_DOUBLE_EQ(want, 2.0 / (n * n));  // DC and Nyquist only
    }
}

TEST(Blur, RandomImagesMatchNaiveDft) {
    Rng rng(3);
    for (int n : {8, 16}) {
        for (int t = 0; t < 5; ++t) {
            const RgbImage img = oracle::random_image(n, n, rng, 120, 136);
            EXPECT_DOUBLE_EQ(blur_quality(img), static_cast<double>(oracle::count_above(img, kPowerThreshold)) / (n * n));
        }
    }
}

TEST(Blur, SharperNoiseScoresHigher) {
    Rng rng(42);
    const RgbImage noise = oracle::random_image(32, 32, rng);
    const RgbImage blurred = gaussian_blur(noise, 2.0);
    const double sharp_q = blur_quality(noise);
    const double blur_q = blur_quality(blurred);
    EXPECT_GT(sharp_q, blur_q);
    EXPECT_DOUBLE_EQ(blur_q, static_cast<double>(oracle::count_above(blurred, kPowerThreshold)) / (32 * 32));
}

TEST(Blur, NonIncreasingOverSigma) {
    Rng rng(7);
    const RgbImage noise = oracle::random_image(32, 32, rng);
    double prev = 2.0;
    for (double sigma : {0.0, 1.0, 2.0, 4.0}) {
        const double q = blur_quality(gaussian_blur(noise, sigma));
        EXPECT_LE(q, prev) << "sigma " << sigma;
        EXPECT_GT(q, 0.0);
        prev = q;
    }
}

TEST(GrayHistogram, SolidAndRandom) {
    const auto black = combined_gray_histogram(RgbImage(4, 3, {0, 0, 0}));
    EXPECT_EQ(black[0], 36.0);
    EXPECT_EQ(std::accumulate(black.begin(), black.end(), 0.0), 36.0);
    const auto red = combined_gray_histogram(RgbImage(4, 3, {255, 0, 0}));
    EXPECT_EQ(red[255], 12.0);
    EXPECT_EQ(red[0], 24.0);

    Rng rng(1);
    const RgbImage img = oracle::random_image(13, 9, rng);
    std::array<double, 256> want{};
    for (int ch = 0; ch < 3; ++ch) {
        const GrayImage plane = oracle::channel_of(img, ch);
        for (double v : plane.values()) want[static_cast<int>(v)] += 1.0;
    }
    EXPECT_EQ(combined_gray_histogram(img), want);
}

TEST(ContrastWidth, ReferenceHistograms) {
    EXPECT_EQ(contrast_width(levels({{77, 5.0}})), 1.0);
    std::array<double, 256> flat{};
    flat.fill(1.0);
    EXPECT_EQ(contrast_width(flat), 251.0);
    EXPECT_EQ(contrast_width(levels({{0, 1.0}, {255, 1.0}})), 256.0);
    EXPECT_THROW(contrast_width(std::array<double, 256>{}), InvalidArgument);
}

TEST(ContrastWidth, MatchesWindowOracle) {
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        std::array<double, 256> h{};
        for (int i = 0; i < 30; ++i) h[rng.below(256)] += static_cast<double>(1 + rng.below(50));
        const double mass = t % 2 ? 0.98 : rng.uniform(0.5, 1.0);
        EXPECT_EQ(contrast_width(h, mass), window_oracle(h, mass));
    }
}

TEST(Brightness, UniformImageIsZero) {
    const RgbImage img(20, 20, {90, 140, 30});
    EXPECT_NEAR(brightness_quality(img, {5, 10, 5, 10}), 0.0, 1e-12);
    EXPECT_EQ(brightness_quality(img, full(img)), 0.0);
}

TEST(Brightness, WhiteSubjectOnBlack) {
    RgbImage img(10, 10, {0, 0, 0});
    for (int r = 2; r <= 5; ++r) {
        for (int c = 3; c <= 7; ++c) img.at(r, c) = {255, 255, 255};
    }
    EXPECT_NEAR(brightness_quality(img, {2, 5, 3, 7}), 1.0, 1e-12);
    EXPECT_NEAR(brightness_quality(img, {0, 0, 0, 0}), -5.0 * 4 / 99.0 * 1.0, 1e-12);
}

TEST(Brightness, TwoToneImage) {
    // Subject alternates 255 and 204 (mean 0.9), background is 51 (0.2).
    RgbImage img(12, 12, {51, 51, 51});
    for (int r = 4; r < 8; ++r) {
        for (int c = 4; c < 8; ++c) {
            const std::uint8_t v = (r + c) % 2 ? 255 : 204;
            img.at(r, c) = {v, v, v};
        }
    }
    EXPECT_NEAR(brightness_quality(img, {4, 7, 4, 7}), 0.7, 1e-12);
}

TEST(Brightness, RejectsRegionOutsideImage) {
    const RgbImage img(5, 5);
    EXPECT_THROW(brightness_quality(img, {0, 5, 0, 4}), InvalidArgument);
    EXPECT_THROW(dark_channel_quality(img, {-1, 2, 0, 4}), InvalidArgument);
}

TEST(DarkChannel, ReferenceImages) {
    const RgbImage white(15, 15, {255, 255, 255});
    EXPECT_NEAR(dark_channel_quality(white, full(white)), 1.0 / 3.0, 1e-8);
    const RgbImage red(15, 15, {255, 0, 0});
    EXPECT_EQ(dark_channel_quality(red, full(red)), 0.0);
    const RgbImage gray(15, 15, {128, 128, 128});
    EXPECT_NEAR(dark_channel_quality(gray, full(gray)), 1.0 / 3.0, 1e-8);
    const RgbImage black(15, 15, {0, 0, 0});
    EXPECT_EQ(dark_channel_quality(black, full(black)), 0.0);
}

TEST(DarkChannel, MatchesDirectPatchMinimum) {
    Rng rng(4);
    const RgbImage img = oracle::random_image(23, 17, rng);
    const GrayImage dark = dark_channel(img);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            int m = 255;
            for (int dr = -5; dr <= 4; ++dr) {
                for (int dc = -5; dc <= 4; ++dc) {
                    const int rr = r + dr, cc = c + dc;
                    if (rr < 0 || cc < 0 || rr >= img.height() || cc >= img.width()) continue;
                    const Rgb p = img.at(rr, cc);
                    m = std::min({m, int{p.r}, int{p.g}, int{p.b}});
                }
            }
            ASSERT_EQ(dark.at(r, c), m) << r << "," << c;
        }
    }
}

TEST(DarkChannel, ScaleInvariantUpToQuantization) {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const RgbImage img = oracle::random_image(30, 30, rng, 64, 255);
        const double base = dark_channel_quality(img, full(img));
        for (double s : {0.9, 0.75, 0.5}) {
            RgbImage scaled = img;
            for (auto& p : scaled.pixels()) {
                auto sc = [s](std::uint8_t v) { return static_cast<std::uint8_t>(std::lround(v * s)); };
                p = {sc(p.r), sc(p.g), sc(p.b)};
            }
            EXPECT_NEAR(dark_channel_quality(scaled, full(scaled)), base, 2.0 / 255.0);
        }
    }
}
