#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aesthetics/mlp.hpp"
#include "aesthetics/random.hpp"

namespace aesthetics {

namespace {

// Offsets the sample-order stream from the initialization stream.
constexpr std::uint64_t kOrderStream = 0x9E3779B97F4A7C15ULL;

void axpy(MlpModel& model, double scale, const MlpGradients& g) {
    for (int j = 0; j < kHiddenNodes; ++j) {
        for (int i = 0; i < kInputNodes; ++i) model.w_hidden[j][i] += scale * g.w_hidden[j][i];
        model.b_hidden[j] += scale * g.b_hidden[j];
    }
    for (int k = 0; k < kOutputNodes; ++k) {
        for (int j = 0; j < kHiddenNodes; ++j) model.w_out[k][j] += scale * g.w_out[k][j];
        model.b_out[k] += scale * g.b_out[k];
    }
}

}  // namespace

FeatureNormalizer::FeatureNormalizer(std::array<double, kInputNodes> min, std::array<double, kInputNodes> max)
    : min_(min), max_(max) {
    for (int i = 0; i < kInputNodes; ++i) {
        if (!std::isfinite(min_[i]) || !std::isfinite(max_[i]) || max_[i] < min_[i]) {
            throw InvalidArgument("FeatureNormalizer: need finite bounds with max >= min");
        }
    }
}

FeatureNormalizer FeatureNormalizer::fit(std::span<const FeatureVector> features) {
    if (features.empty()) throw InvalidArgument("FeatureNormalizer::fit: no training features");
    std::array<double, kInputNodes> lo = features.front().to_array();
    std::array<double, kInputNodes> hi = lo;
    for (const auto& f : features) {
        const auto v = f.to_array();
        for (int i = 0; i < kInputNodes; ++i) {
            lo[i] = std::min(lo[i], v[i]);
            hi[i] = std::max(hi[i], v[i]);
        }
    }
    return FeatureNormalizer(lo, hi);
}

MlpInput FeatureNormalizer::apply(const FeatureVector& f) const {
    const auto v = f.to_array();
    MlpInput x{};
    for (int i = 0; i < kInputNodes; ++i) {
        const double span = max_[i] - min_[i];
        x[i] = span > 0.0 ? std::clamp((v[i] - min_[i]) / span, 0.0, 1.0) : 0.5;
    }
    return x;
}

QualityScore::QualityScore(double value) : value_(value) {
    if (!(value >= 1.0 && value <= 10.0)) {
        throw InvalidArgument("QualityScore: " + std::to_string(value) + " outside [1,10]");
    }
}

Activations forward(const MlpModel& m, const MlpInput& x) {
    Activations a;
    for (int j = 0; j < kHiddenNodes; ++j) {
        double t = m.b_hidden[j];
        for (int i = 0; i < kInputNodes; ++i) t += m.w_hidden[j][i] * x[i];
        a.hidden[j] = sigmoid(t);
    }
    for (int k = 0; k < kOutputNodes; ++k) {
        double t = m.b_out[k];
        for (int j = 0; j < kHiddenNodes; ++j) t += m.w_out[k][j] * a.hidden[j];
        a.out[k] = sigmoid(t);
    }
    return a;
}

MlpOutput target_for(Label label) {
    return label == Label::professional ? MlpOutput{1.0, 0.0} : MlpOutput{0.0, 1.0};
}

double loss(const MlpOutput& out, const MlpOutput& target) {
    double j = 0.0;
    for (int k = 0; k < kOutputNodes; ++k) j += (out[k] - target[k]) * (out[k] - target[k]);
    return 0.5 * j;
}

double batch_loss(const MlpModel& model, std::span<const TrainingSample> batch) {
    if (batch.empty()) throw InvalidArgument("batch_loss: empty batch");
    double total = 0.0;
    for (const auto& s : batch) total += loss(forward(model, s.x).out, target_for(s.label));
    return total / static_cast<double>(batch.size());
}

MlpGradients gradients(const MlpModel& m, std::span<const TrainingSample> batch) {
    if (batch.empty()) throw InvalidArgument("gradients: empty batch");
    MlpGradients g{};
    for (const auto& s : batch) {
        const Activations a = forward(m, s.x);
        const MlpOutput t = target_for(s.label);

        std::array<double, kOutputNodes> delta_out{};
        for (int k = 0; k < kOutputNodes; ++k) {
            delta_out[k] = (a.out[k] - t[k]) * a.out[k] * (1.0 - a.out[k]);
            for (int j = 0; j < kHiddenNodes; ++j) g.w_out[k][j] += delta_out[k] * a.hidden[j];
            g.b_out[k] += delta_out[k];
        }
        for (int j = 0; j < kHiddenNodes; ++j) {
            double back = 0.0;
            for (int k = 0; k < kOutputNodes; ++k) back += delta_out[k] * m.w_out[k][j];
            const double delta_hidden = back * a.hidden[j] * (1.0 - a.hidden[j]);
            for (int i = 0; i < kInputNodes; ++i) g.w_hidden[j][i] += delta_hidden * s.x[i];
            g.b_hidden[j] += delta_hidden;
        }
    }
    MlpGradients mean{};
    axpy(mean, 1.0 / static_cast<double>(batch.size()), g);
    return mean;
}

MlpModel initial_model(const TrainingConfig& cfg) {
    Rng rng(cfg.seed);
    const double jitter = cfg.init_scale * 0.01;
    MlpModel m{};
    for (auto& row : m.w_hidden) {
        for (double& w : row) w = cfg.init_scale + rng.uniform(-jitter, jitter);
    }
    for (auto& row : m.w_out) {
        for (double& w : row) w = cfg.init_scale + rng.uniform(-jitter, jitter);
    }
    return m;
}

TrainingResult train(const TrainingConfig& cfg, std::span<const TrainingSample> data) {
    return train(initial_model(cfg), cfg, data);
}

TrainingResult train(const MlpModel& initial, const TrainingConfig& cfg, std::span<const TrainingSample> data) {
    if (data.empty()) throw InvalidArgument("train: no training samples");
    const bool has_pro = std::any_of(data.begin(), data.end(), [](const auto& s) { return s.label == Label::professional; });
    const bool has_snap = std::any_of(data.begin(), data.end(), [](const auto& s) { return s.label == Label::snapshot; });
    if (!has_pro || !has_snap) throw InvalidArgument("train: training data must contain both labels");
    if (!(cfg.learning_rate >= 0.0) || !std::isfinite(cfg.learning_rate)) {
        throw InvalidArgument("train: learning rate must be finite and >= 0");
    }
    if (cfg.epochs < 1) throw InvalidArgument("train: epochs must be >= 1");

    TrainingResult result{initial, {}};
    result.loss_trace.reserve(static_cast<std::size_t>(cfg.epochs));
    Rng order_rng(cfg.seed ^ kOrderStream);
    std::vector<std::size_t> order(data.size());

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        if (cfg.mode == UpdateMode::full_batch) {
            axpy(result.model, -cfg.learning_rate, gradients(result.model, data));
        } else {
            std::iota(order.begin(), order.end(), std::size_t{0});
            order_rng.shuffle(std::span<std::size_t>(order));
            for (std::size_t idx : order) {
                axpy(result.model, -cfg.learning_rate, gradients(result.model, data.subspan(idx, 1)));
            }
        }
        result.loss_trace.push_back(batch_loss(result.model, data));
    }
    return result;
}

QualityScore score_normalized(const MlpModel& model, const MlpInput& x) {
    return QualityScore(1.0 + 9.0 * forward(model, x).out[kProfessionalNode]);
}

QualityScore score(const MlpModel& model, const FeatureNormalizer& normalizer, const FeatureVector& features) {
    return score_normalized(model, normalizer.apply(features));
}

Label classify(QualityScore s, double gamma) {
    return s.value() > gamma ? Label::professional : Label::snapshot;
}

}  // namespace aesthetics
