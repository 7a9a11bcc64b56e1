#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "aesthetics/mlp.hpp"
#include "aesthetics/random.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace aesthetics;

namespace {

double accuracy_on(const MlpModel& m, const std::vector<TrainingSample>& data, double gamma) {
    std::size_t hits = 0;
    for (const auto& s : data) hits += classify(score_normalized(m, s.x), gamma) == s.label ? 1 : 0;
    return static_cast<double>(hits) / data.size();
}

std::vector<double> flat(MlpModel m) {
    std::vector<double> v;
    oracle::for_each_param(m, [&](double& p) { v.push_back(p); });
    return v;
}

}  // namespace

TEST(Normalizer, MapsRangeAndClamps) {
    const FeatureNormalizer n({0, 1, 2, 3, 4, 5}, {1, 3, 2, 7, 5, 6});
    const FeatureVector lo{0, 1, 2, 3, 4, 5};
    const FeatureVector hi{1, 3, 2, 7, 5, 6};
    const FeatureVector out{-1, 10, 9, 5, 4.5, 5.25};
    const MlpInput a = n.apply(lo), b = n.apply(hi), c = n.apply(out);
    for (int i : {0, 1, 3, 4, 5}) {
        EXPECT_EQ(a[i], 0.0);
        EXPECT_EQ(b[i], 1.0);
    }
    EXPECT_EQ(a[2], 0.5);  // constant feature
    EXPECT_EQ(c[0], 0.0);
    EXPECT_EQ(c[1], 1.0);
    EXPECT_EQ(c[3], 0.5);
    EXPECT_EQ(c[4], 0.5);
    EXPECT_EQ(c[5], 0.25);
}

TEST(Normalizer, FitTakesColumnExtremes) {
    const std::vector<FeatureVector> f{{1, 2, 3, 4, 5, 6}, {-1, 5, 3, 0, 5, 7}, {0, 0, 3, 9, 5, 6.5}};
    const FeatureNormalizer n = FeatureNormalizer::fit(f);
    EXPECT_EQ(n.min(), (std::array<double, 6>{-1, 0, 3, 0, 5, 6}));
    EXPECT_EQ(n.max(), (std::array<double, 6>{1, 5, 3, 9, 5, 7}));
    EXPECT_THROW(FeatureNormalizer::fit(std::vector<FeatureVector>{}), InvalidArgument);
    EXPECT_THROW(FeatureNormalizer({0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 0}), InvalidArgument);
}

TEST(Sigmoid, Identities) {
    EXPECT_EQ(sigmoid(0.0), 0.5);
    EXPECT_NEAR(sigmoid(1e3), 1.0, 1e-15);
    for (double t : {1.0, 5.0}) {
        EXPECT_NEAR(sigmoid(-t), 1.0 - sigmoid(t), 1e-15);
    }
}

TEST(Forward, ZeroModelGivesHalfEverywhere) {
    const Activations a = forward(MlpModel{}, {0.3, 0.1, 0.9, 0.0, 1.0, 0.5});
    for (double h : a.hidden) EXPECT_EQ(h, 0.5);
    for (double o : a.out) EXPECT_EQ(o, 0.5);
}

TEST(Forward, MatchesMatrixOracle) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        const MlpModel m = oracle::random_model(rng, 3.0);
        MlpInput x;
        for (double& v : x) v = rng.uniform();
        const Activations a = forward(m, x);
        const MlpOutput want = oracle::matmul_forward(m, x);
        for (int k = 0; k < kOutputNodes; ++k) {
            EXPECT_NEAR(a.out[k], want[k], 1e-12);
            EXPECT_GT(a.out[k], 0.0);
            EXPECT_LT(a.out[k], 1.0);
        }
    }
}

TEST(Loss, ReferenceValues) {
    EXPECT_EQ(loss({1, 0}, {1, 0}), 0.0);
    EXPECT_DOUBLE_EQ(loss({0.5, 0.5}, {1, 0}), 0.25);
    EXPECT_EQ(target_for(Label::professional), (MlpOutput{1, 0}));
    EXPECT_EQ(target_for(Label::snapshot), (MlpOutput{0, 1}));
}

TEST(Loss, BatchIsMeanOfPerSample) {
    Rng rng(2);
    const MlpModel m = oracle::random_model(rng);
    const auto data = oracle::separable_set(17, 3, 0.3);
    double sum = 0.0;
    for (const auto& s : data) {
        const MlpOutput o = oracle::matmul_forward(m, s.x);
        const MlpOutput t = s.label == Label::professional ? MlpOutput{1, 0} : MlpOutput{0, 1};
        sum += 0.5 * ((o[0] - t[0]) * (o[0] - t[0]) + (o[1] - t[1]) * (o[1] - t[1]));
    }
    EXPECT_NEAR(batch_loss(m, data), sum / data.size(), 1e-14);
    EXPECT_THROW(batch_loss(m, std::vector<TrainingSample>{}), InvalidArgument);
}

TEST(Gradients, ZeroWhenOutputsHitTargets) {
    MlpModel m{};
    m.b_out = {800.0, -800.0};  // saturates to exactly (1, 0)
    const std::vector<TrainingSample> batch{{{0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, Label::professional},
                                            {{0.9, 0.1, 0.0, 0.4, 0.2, 0.6}, Label::professional}};
    ASSERT_EQ(forward(m, batch[0].x).out, (MlpOutput{1.0, 0.0}));
    for (double g : flat(gradients(m, batch))) EXPECT_EQ(g, 0.0);
}

TEST(Gradients, MatchFiniteDifferences) {
    Rng rng(3);
    const MlpModel m = oracle::random_model(rng);
    const auto batch = oracle::separable_set(10, 4, 0.3);
    const std::vector<double> analytic = flat(gradients(m, batch));
    std::size_t idx = 0;
    MlpModel probe = m;
    oracle::for_each_param(probe, [&](double& p) {
        const double keep = p;
        p = keep + 1e-5;
        const double up = batch_loss(probe, batch);
        p = keep - 1e-5;
        const double down = batch_loss(probe, batch);
        p = keep;
        const double numeric = (up - down) / 2e-5;
        const double a = analytic[idx++];
        EXPECT_LE(std::abs(a - numeric), 1e-5 * std::max({std::abs(a), std::abs(numeric), 1e-6})) << idx;
    });
    EXPECT_EQ(idx, analytic.size());
}

TEST(Gradients, DuplicatingBatchKeepsMean) {
    Rng rng(4);
    const MlpModel m = oracle::random_model(rng);
    auto batch = oracle::separable_set(9, 5, 0.2);
    const std::vector<double> once = flat(gradients(m, batch));
    const auto copy = batch;
    batch.insert(batch.end(), copy.begin(), copy.end());
    const std::vector<double> twice = flat(gradients(m, batch));
    for (std::size_t i = 0; i < once.size(); ++i) EXPECT_NEAR(once[i], twice[i], 1e-15);
}

TEST(Initialization, EqualWeightsWithSmallJitter) {
    TrainingConfig cfg;
    cfg.seed = 9;
    const MlpModel m = initial_model(cfg);
    for (auto& row : m.w_hidden) {
        for (double w : row) EXPECT_LE(std::abs(w - 0.5), 0.005);
    }
    for (double b : m.b_hidden) EXPECT_EQ(b, 0.0);
    for (double b : m.b_out) EXPECT_EQ(b, 0.0);
    EXPECT_NE(m.w_hidden[0][0], m.w_hidden[1][0]);
    EXPECT_EQ(initial_model(cfg), m);
    cfg.seed = 10;
    EXPECT_NE(initial_model(cfg), m);
}

TEST(Train, ZeroLearningRateIsIdentity) {
    const auto data = oracle::separable_set(40, 1);
    for (UpdateMode mode : {UpdateMode::online, UpdateMode::full_batch}) {
        TrainingConfig cfg;
        cfg.learning_rate = 0.0;
        cfg.epochs = 5;
        cfg.mode = mode;
        const TrainingResult r = train(cfg, data);
        EXPECT_EQ(r.model, initial_model(cfg));
        EXPECT_EQ(r.loss_trace.size(), 5u);
    }
}

TEST(Train, SeparableSetReachesHighAccuracy) {
    const auto data = oracle::separable_set(400, 2024);
    TrainingConfig cfg;
    cfg.seed = 1;
    const TrainingResult r = train(cfg, data);
    ASSERT_EQ(r.loss_trace.size(), 250u);
    EXPECT_GE(accuracy_on(r.model, data, 4.0), 0.95);
    EXPECT_LT(r.loss_trace.back(), r.loss_trace.front());
    std::size_t down = 0;
    for (std::size_t i = 1; i < r.loss_trace.size(); ++i) down += r.loss_trace[i] <= r.loss_trace[i - 1] ? 1 : 0;
    EXPECT_GE(static_cast<double>(down) / (r.loss_trace.size() - 1), 0.9);
}

TEST(Train, FullBatchModeDescends) {
    const auto data = oracle::separable_set(60, 3);
    TrainingConfig cfg;
    cfg.mode = UpdateMode::full_batch;
    cfg.epochs = 50;
    const TrainingResult r = train(cfg, data);
    for (std::size_t i = 1; i < r.loss_trace.size(); ++i) EXPECT_LE(r.loss_trace[i], r.loss_trace[i - 1] + 1e-15);
}

TEST(Train, DeterministicBitForBit) {
    const auto data = oracle::separable_set(80, 5);
    TrainingConfig cfg;
    cfg.seed = 77;
    cfg.epochs = 40;
    const TrainingResult a = train(cfg, data);
    const TrainingResult b = train(cfg, data);
    EXPECT_EQ(a.model, b.model);
    EXPECT_EQ(a.loss_trace, b.loss_trace);
}

TEST(Train, RejectsBadInput) {
    TrainingConfig cfg;
    EXPECT_THROW(train(cfg, std::vector<TrainingSample>{}), InvalidArgument);
    std::vector<TrainingSample> one_class(4);
    EXPECT_THROW(train(cfg, one_class), InvalidArgument);
    auto data = oracle::separable_set(4, 1);
    cfg.epochs = 0;
    EXPECT_THROW(train(cfg, data), InvalidArgument);
    cfg.epochs = 1;
    cfg.learning_rate = -0.1;
    EXPECT_THROW(train(cfg, data), InvalidArgument);
}

TEST(Train, LabelSymmetry) {
    // Negated output layer trained on flipped labels mirrors the original: s' = 11 - s.
    const auto data = oracle::separable_set(60, 8, 0.15);
    TrainingConfig cfg;
    cfg.epochs = 30;
    const MlpModel start = initial_model(cfg);
    MlpModel mirrored = start;
    for (auto& row : mirrored.w_out) {
        for (double& w : row) w = -w;
    }
    for (double& b : mirrored.b_out) b = -b;
    auto flipped = data;
    for (auto& s : flipped) s.label = s.label == Label::professional ? Label::snapshot : Label::professional;

    const MlpModel a = train(start, cfg, data).model;
    const MlpModel b = train(mirrored, cfg, flipped).model;
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        MlpInput x;
        for (double& v : x) v = rng.uniform();
        EXPECT_NEAR(score_normalized(b, x).value(), 11.0 - score_normalized(a, x).value(), 1e-9);
    }
}

TEST(Score, AffineMapOfProfessionalNode) {
    EXPECT_DOUBLE_EQ(score_normalized(MlpModel{}, {}).value(), 5.5);
    MlpModel hi{};
    hi.b_out = {50.0, 0.0};
    EXPECT_NEAR(score_normalized(hi, {}).value(), 10.0, 1e-12);
    MlpModel lo{};
    lo.b_out = {-50.0, 0.0};
    EXPECT_NEAR(score_normalized(lo, {}).value(), 1.0, 1e-12);
    EXPECT_THROW(QualityScore(0.99), InvalidArgument);
    EXPECT_THROW(QualityScore(10.01), InvalidArgument);
    EXPECT_THROW(QualityScore(std::nan("")), InvalidArgument);
}

TEST(Classify, StrictThreshold) {
    EXPECT_EQ(classify(QualityScore(7.4), 4.0), Label::professional);
    EXPECT_EQ(classify(QualityScore(4.0), 4.0), Label::snapshot);
    EXPECT_EQ(classify(QualityScore(1.44), 4.0), Label::snapshot);
}

TEST(Classify, TrainedModelOrdersClasses) {
    const auto data = oracle::separable_set(200, 6);
    const MlpModel m = train(TrainingConfig{}, data).model;
    EXPECT_GT(score_normalized(m, {0.8, 0.8, 0.8, 0.8, 0.8, 0.8}).value(),
              score_normalized(m, {0.2, 0.2, 0.2, 0.2, 0.2, 0.2}).value());
}

TEST(ModelIo, RoundTripIsBitwise) {
    const auto dir = testing_util::scratch_dir();
    Rng rng(5);
    ModelFile file{oracle::random_model(rng), FeatureNormalizer({-1, 0, 0, 0, 0, 0}, {1, 1.0 / 3, 2, 3, 4, 5}), {}};
    file.config.seed = 123456789012345ULL;
    file.config.learning_rate = 0.1;
    file.config.mode = UpdateMode::full_batch;
    save_model(dir / "m.json", file);
    EXPECT_EQ(load_model(dir / "m.json"), file);
    save_model(dir / "m2.json", load_model(dir / "m.json"));
    EXPECT_EQ(testing_util::read_bytes(dir / "m.json"), testing_util::read_bytes(dir / "m2.json"));
}

TEST(ModelIo, Errors) {
    const auto dir = testing_util::scratch_dir();
    EXPECT_THROW(load_model(dir / "none.json"), IoError);

    Rng rng(6);
    save_model(dir / "m.json", {oracle::random_model(rng), FeatureNormalizer(), {}});
    const std::string good = testing_util::read_bytes(dir / "m.json");
    testing_util::write_bytes(dir / "trunc.json", good.substr(0, good.size() / 2));
    EXPECT_THROW(load_model(dir / "trunc.json"), SchemaError);

    std::string wrong_version = good;
    wrong_version.replace(wrong_version.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
    testing_util::write_bytes(dir / "v.json", wrong_version);
    EXPECT_THROW(load_model(dir / "v.json"), SchemaError);

    auto j = nlohmann::json::parse(good);
    j["b_hidden"].push_back(0.0);
    testing_util::write_bytes(dir / "shape.json", j.dump());
    try {
        load_model(dir / "shape.json");
        FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("6/5/2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("b_hidden"), std::string::npos);
    }
}
