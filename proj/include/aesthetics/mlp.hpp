#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "aesthetics/features.hpp"
#include "aesthetics/labels.hpp"

namespace aesthetics {

inline constexpr int kInputNodes = 6;
inline constexpr int kHiddenNodes = 5;
inline constexpr int kOutputNodes = 2;
inline constexpr int kProfessionalNode = 0;
inline constexpr int kSnapshotNode = 1;

using MlpInput = std::array<double, kInputNodes>;
using MlpOutput = std::array<double, kOutputNodes>;

/// 6-5-2 sigmoid network. Also used as the gradient container.
struct MlpModel {
    std::array<std::array<double, kInputNodes>, kHiddenNodes> w_hidden{};
    std::array<double, kHiddenNodes> b_hidden{};
    std::array<std::array<double, kHiddenNodes>, kOutputNodes> w_out{};
    std::array<double, kOutputNodes> b_out{};

    friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

using MlpGradients = MlpModel;

struct Activations {
    std::array<double, kHiddenNodes> hidden{};
    MlpOutput out{};
};

struct TrainingSample {
    MlpInput x{};
    Label label = Label::snapshot;
};

/// Per-feature min-max scaling fitted on training data.
class FeatureNormalizer {
public:
    FeatureNormalizer() = default;
    FeatureNormalizer(std::array<double, kInputNodes> min, std::array<double, kInputNodes> max);

    static FeatureNormalizer fit(std::span<const FeatureVector> features);

    /// Maps into [0,1] with clamping; constant features map to 0.5.
    MlpInput apply(const FeatureVector& f) const;

    const std::array<double, kInputNodes>& min() const { return min_; }
    const std::array<double, kInputNodes>& max() const { return max_; }

    friend bool operator==(const FeatureNormalizer&, const FeatureNormalizer&) = default;

private:
    std::array<double, kInputNodes> min_{};
    std::array<double, kInputNodes> max_{};
};

enum class UpdateMode {
    online,      // one step per sample, seeded order per epoch
    full_batch,  // one step per epoch on the batch-mean gradient
};

struct TrainingConfig {
    double learning_rate = 0.1;
    int epochs = 250;
    std::uint64_t seed = 0;
    double init_scale = 0.5;
    UpdateMode mode = UpdateMode::online;

    friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

struct TrainingResult {
    MlpModel model;
    std::vector<double> loss_trace;  // batch-mean loss after each epoch
};

class QualityScore {
public:
    explicit QualityScore(double value);
    double value() const { return value_; }

    friend auto operator<=>(const QualityScore&, const QualityScore&) = default;

private:
    double value_;
};

inline double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

Activations forward(const MlpModel& model, const MlpInput& x);

MlpOutput target_for(Label label);

/// Half sum of squared errors over the output nodes.
double loss(const MlpOutput& out, const MlpOutput& target);
double batch_loss(const MlpModel& model, std::span<const TrainingSample> batch);

/// Backpropagated gradient of batch_loss.
MlpGradients gradients(const MlpModel& model, std::span<const TrainingSample> batch);

/// Every weight equals init_scale plus seeded noise in +-init_scale/100; biases 0.
MlpModel initial_model(const TrainingConfig& cfg);

/// Throws InvalidArgument on empty or single-class data.
TrainingResult train(const TrainingConfig& cfg, std::span<const TrainingSample> data);
TrainingResult train(const MlpModel& initial, const TrainingConfig& cfg,
                     std::span<const TrainingSample> data);

/// 1 + 9 * professional-node activation.
QualityScore score_normalized(const MlpModel& model, const MlpInput& x);
QualityScore score(const MlpModel& model, const FeatureNormalizer& normalizer,
                   const FeatureVector& features);

/// Professional iff score > gamma.
Label classify(QualityScore s, double gamma);

inline constexpr int kModelSchemaVersion = 1;

struct ModelFile {
    MlpModel model;
    FeatureNormalizer normalizer;
    TrainingConfig config;

    friend bool operator==(const ModelFile&, const ModelFile&) = default;
};

void save_model(const std::filesystem::path& path, const ModelFile& file);
ModelFile load_model(const std::filesystem::path& path);

}  // namespace aesthetics
