#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <gtest/gtest.h>

#include "aesthetics/features.hpp"
#include "aesthetics/random.hpp"
#include "oracles.hpp"

using namespace aesthetics;

namespace {

std::vector<ColorExemplar> random_pool(Rng& rng, std::size_t n) {
    std::vector<ColorExemplar> pool;
    for (std::size_t i = 0; i < n; ++i) {
        pool.push_back({oracle::random_hist(rng), rng.uniform() < 0.5 ? Label::professional : Label::snapshot});
    }
    return pool;
}

}  // namespace

TEST(ColorHistogram, SolidImages) {
    const ColorHist black = color_histogram(RgbImage(5, 5, {0, 0, 0}));
    EXPECT_DOUBLE_EQ(black[0], 1.0);
    const ColorHist white = color_histogram(RgbImage(5, 5, {255, 255, 255}));
    EXPECT_DOUBLE_EQ(white[4095], 1.0);
}

TEST(ColorHistogram, HalfRedHalfGreen) {
    RgbImage img(4, 2, {255, 0, 0});
    for (int c = 0; c < 4; ++c) img.at(1, c) = {0, 255, 0};
    const ColorHist h = color_histogram(img);
    EXPECT_DOUBLE_EQ(h[3840], 0.5);
    EXPECT_DOUBLE_EQ(h[240], 0.5);
    EXPECT_NEAR(std::accumulate(h.bins().begin(), h.bins().end(), 0.0), 1.0, 1e-15);
}

TEST(ColorHistogram, BinBoundaries) {
    RgbImage img(2, 1, {15, 16, 31});
    img.at(0, 1) = {16, 15, 32};
    const ColorHist h = color_histogram(img);
    EXPECT_DOUBLE_EQ(h[0 * 256 + 1 * 16 + 1], 0.5);
    EXPECT_DOUBLE_EQ(h[1 * 256 + 0 * 16 + 2], 0.5);
}

TEST(ColorHistogram, ConstructorValidates) {
    EXPECT_THROW(ColorHist(std::vector<double>(10, 0.1)), InvalidArgument);
    EXPECT_THROW(ColorHist(std::vector<double>(kColorBins, 1.0)), InvalidArgument);
}

TEST(Knn, SingleClassPools) {
    Rng rng(1);
    std::vector<ColorExemplar> pool = random_pool(rng, 12);
    for (auto& e : pool) e.label = Label::professional;
    const ColorHist probe = oracle::random_hist(rng);
    EXPECT_EQ(color_quality_knn(probe, pool), 5);
    for (auto& e : pool) e.label = Label::snapshot;
    EXPECT_EQ(color_quality_knn(probe, pool), -5);
}

TEST(Knn, MatchesSortAllOracle) {
    Rng rng(2);
    const auto pool = random_pool(rng, 50);
    for (int p = 0; p < 20; ++p) {
        const ColorHist probe = oracle::random_hist(rng);
        EXPECT_EQ(color_quality_knn(probe, pool), oracle::knn_vote(probe, pool, 5));
    }
}

TEST(Knn, MatchesOracleUpTo200Exemplars) {
    Rng rng(3);
    for (std::size_t n : {5u, 9u, 33u, 120u, 200u}) {
        const auto pool = random_pool(rng, n);
        for (int p = 0; p < 5; ++p) {
            const ColorHist probe = oracle::random_hist(rng);
            for (int k : {1, 3, 5}) {
                const int got = color_quality_knn(probe, pool, k);
                EXPECT_EQ(got, oracle::knn_vote(probe, pool, k));
                EXPECT_EQ((got + k) % 2, 0);
                EXPECT_LE(std::abs(got), k);
            }
        }
    }
}

TEST(Knn, EqualDistancesFavorLowerIndex) {
    // Every exemplar is equidistant (distance 2) from the probe.
    std::vector<ColorExemplar> pool;
    for (std::size_t i = 1; i <= 10; ++i) {
        std::vector<double> bins(kColorBins, 0.0);
        bins[i] = 1.0;
        pool.push_back({ColorHist(std::move(bins)), i <= 3 ? Label::snapshot : Label::professional});
    }
    EXPECT_EQ(color_quality_knn(ColorHist(), pool, 5), -1);
    EXPECT_EQ(color_quality_knn(ColorHist(), pool, 3), -3);
}

TEST(Knn, SkipExcludesSelf) {
    Rng rng(4);
    auto pool = random_pool(rng, 8);
    for (auto& e : pool) e.label = Label::snapshot;
    pool[3].label = Label::professional;
    const ColorHist probe = pool[3].hist;
    EXPECT_EQ(color_quality_knn(probe, pool, 1), 1);
    EXPECT_EQ(color_quality_knn(probe, pool, 1, 3), -1);
    EXPECT_EQ(color_quality_knn(probe, pool, 7, 3), -7);
    EXPECT_THROW(color_quality_knn(probe, pool, 8, 3), InvalidArgument);
}

TEST(Knn, ErrorsOnEmptyOrOversizedK) {
    Rng rng(5);
    const ColorHist probe = oracle::random_hist(rng);
    EXPECT_THROW(color_quality_knn(probe, std::vector<ColorExemplar>{}), InvalidArgument);
    const auto pool = random_pool(rng, 3);
    EXPECT_THROW(color_quality_knn(probe, pool, 5), InvalidArgument);
    EXPECT_THROW(color_quality_knn(probe, pool, 0), InvalidArgument);
}

TEST(Exemplars, SaveLoadRoundTrip) {
    Rng rng(6);
    const auto pool = random_pool(rng, 7);
    const auto path = std::filesystem::temp_directory_path() / "aesthetics_exemplars_roundtrip.json";
    save_exemplars(path, pool);
    const auto back = load_exemplars(path);
    ASSERT_EQ(back.size(), pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        EXPECT_EQ(back[i].label, pool[i].label);
        EXPECT_EQ(back[i].hist, pool[i].hist);
    }
    std::ofstream(path) << R"({"exemplars":[{"label":"pro","bins":[0],"mass":[1]}]})";
    EXPECT_THROW(load_exemplars(path), SchemaError);
    std::ofstream(path) << R"({"exemplars":[{"label":"professional","bins":[0,1],"mass":[1]}]})";
    EXPECT_THROW(load_exemplars(path), SchemaError);
    std::filesystem::remove(path);
}

TEST(HueCount, UniformDarkRed) {
    EXPECT_EQ(hue_count_quality(RgbImage(10, 10, {204, 0, 0})), 19.0);
}

TEST(HueCount, BlackAndGrayHaveNoStableHue) {
    EXPECT_EQ(hue_count_quality(RgbImage(10, 10, {0, 0, 0})), 0.0);
    EXPECT_EQ(hue_count_quality(RgbImage(10, 10, {128, 128, 128})), 0.0);
    EXPECT_EQ(hue_count_quality(RgbImage(10, 10, {255, 0, 0})), 0.0);  // v = 1 > 0.95
}

TEST(HueCount, TwoHues) {
    RgbImage img(8, 8, {204, 0, 0});
    const Rgb hue90 = oracle::hsv_to_rgb({90.0, 1.0, 0.8});
    for (int r = 4; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) img.at(r, c) = hue90;
    }
    EXPECT_NEAR(rgb_to_hsv(hue90).h, 90.0, 0.5);
    EXPECT_EQ(hue_count_quality(img), 18.0);
}

TEST(HueCount, NoiseBelowAlphaIsIgnored) {
    // 100 pixels at hue 0, 5 at hue 120: 5 = 0.05 * 100 is not strictly above.
    RgbImage img(105, 1, {204, 0, 0});
    for (int c = 100; c < 105; ++c) img.at(0, c) = {0, 204, 0};
    EXPECT_EQ(hue_count_quality(img), 19.0);
    img.at(0, 99) = {0, 204, 0};  // 99 vs 6 > 4.95
    EXPECT_EQ(hue_count_quality(img), 18.0);
}

TEST(HueCount, InvariantUnderPixelPermutation) {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        const RgbImage img = oracle::random_image(16, 12, rng);
        std::vector<Rgb> px(img.pixels().begin(), img.pixels().end());
        rng.shuffle(std::span<Rgb>(px));
        const RgbImage shuffled(16, 12, std::move(px));
        EXPECT_EQ(hue_count_quality(img), hue_count_quality(shuffled));
        const double q = hue_count_quality(img);
        EXPECT_GE(q, 0.0);
        EXPECT_LE(q, 19.0);
    }
}
