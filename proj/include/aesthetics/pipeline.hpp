#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aesthetics/dataset.hpp"
#include "aesthetics/eval.hpp"
#include "aesthetics/mlp.hpp"

namespace aesthetics {

// Batch front-end commands. Each returns a process exit code and writes
// diagnostics to `log`.

struct ExtractOptions {
    std::filesystem::path manifest;
    std::filesystem::path cache;
    std::optional<std::filesystem::path> templates;  // default: templates.json beside the cache
    std::optional<std::filesystem::path> exemplars;  // default: exemplars.json beside the cache
    std::uint64_t seed = 0;
    double train_fraction = kTrainFraction;
    int jobs = 0;  // 0 = hardware concurrency
    bool strict = false;
    int verbosity = 1;
};

struct TrainOptions {
    std::filesystem::path cache;
    std::filesystem::path model;
    std::optional<std::filesystem::path> loss_trace;  // default: loss_trace.csv beside the model
    TrainingConfig config;
    double train_fraction = kTrainFraction;
    int verbosity = 1;
};

struct ScoreOptions {
    std::filesystem::path model;
    std::filesystem::path input;  // an image, or a manifest if it ends in .csv
    std::optional<std::filesystem::path> templates;  // default: templates.json beside the model
    std::optional<std::filesystem::path> exemplars;  // default: exemplars.json beside the model
    double gamma = kDefaultGamma;
    int verbosity = 1;
};

enum class SweepSource { train, test, none };

struct EvaluateOptions {
    std::filesystem::path model;
    std::filesystem::path cache;
    std::filesystem::path out_dir;
    std::uint64_t seed = 0;
    double train_fraction = kTrainFraction;
    double gamma = kDefaultGamma;  // used when sweep == none
    SweepSource sweep = SweepSource::train;
    double sweep_min = 2.0;
    double sweep_max = 9.0;
    double sweep_step = 0.5;
    int verbosity = 1;
};

struct SynthOptions {
    std::filesystem::path out_dir;
    int per_class = 200;
    int size = 128;
    double blur_sigma = 3.0;
    std::uint64_t seed = 0;
};

int run_extract(const ExtractOptions& opts, std::ostream& log);
int run_train(const TrainOptions& opts, std::ostream& log);
int run_score(const ScoreOptions& opts, std::ostream& out, std::ostream& log);
int run_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& log);
int run_synth(const SynthOptions& opts, std::ostream& log);

// Synthetic corpus generators, exposed for tests.
RgbImage synth_professional(int size, std::uint64_t seed);
RgbImage synth_snapshot(int size, double blur_sigma, std::uint64_t seed);

std::vector<double> thresholds_between(double lo, double hi, double step);

/// k for a pool of training exemplars: min(5, pool - 1), at least 1.
int effective_neighbors(std::size_t pool);

}  // namespace aesthetics
