#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <thread>

#include "aesthetics/imaging.hpp"
#include "aesthetics/pipeline.hpp"

namespace aesthetics {

namespace {

int resolve_jobs(int jobs) {
    if (jobs > 0) return jobs;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs fn(i) for i in [0,n) on up to `jobs` threads. fn must not throw.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(jobs), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        });
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& path) {
    const std::filesystem::path p(path);
    return p.is_absolute() ? p : base / p;
}

std::filesystem::path beside(const std::filesystem::path& file, const char* name) {
    return file.parent_path() / name;
}

std::vector<ScoredExample> score_rows(const ModelFile& model, std::span<const FeatureRow> rows,
                                      std::span<const std::size_t> indices) {
    std::vector<ScoredExample> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) {
        const auto& row = rows[i];
        out.push_back({row.entry.path, score(model.model, model.normalizer, row.features), row.entry.label,
                       row.entry.category});
    }
    return out;
}

}  // namespace

int effective_neighbors(std::size_t pool) {
    // Leave-one-out probes see pool - 1 exemplars; every image uses the same k.
    const auto available = pool > 0 ? pool - 1 : 0;
    return static_cast<int>(std::min<std::size_t>(kNeighbors, std::max<std::size_t>(available, 1)));
}

std::vector<double> thresholds_between(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("threshold sweep needs step > 0 and max >= min");
    std::vector<double> out;
    const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(lo + step * static_cast<double>(i));
    return out;
}

int run_extract(const ExtractOptions& opts, std::ostream& log) {
    const auto manifest = load_manifest(opts.manifest);
    const auto base = opts.manifest.parent_path();
    const int jobs = resolve_jobs(opts.jobs);

    // Pass 1: decode everything once to find failures and build color histograms.
    std::vector<std::optional<ColorHist>> hists(manifest.size());
    std::vector<std::string> failures(manifest.size());
    parallel_for(manifest.size(), jobs, [&](std::size_t i) {
        try {
            const RgbImage img = load_image(resolve(base, manifest[i].path));
            if (img.width() < 3 || img.height() < 3) throw FormatError(manifest[i].path + ": image smaller than 3x3");
            hists[i] = color_histogram(img);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    std::vector<ManifestEntry> entries;
    std::vector<ColorHist> entry_hists;
    std::size_t n_failed = 0;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (hists[i]) {
            entries.push_back(manifest[i]);
            entry_hists.push_back(std::move(*hists[i]));
        } else {
            ++n_failed;
            log << "warning: skipping image: " << failures[i] << "\n";
        }
    }
    if (n_failed > 0 && opts.strict) {
        log << "error: " << n_failed << " image(s) failed under --strict\n";
        return 1;
    }
    if (entries.empty()) {
        log << "error: no readable images in " << opts.manifest.string() << "\n";
        return 1;
    }

    const SplitPlan plan = split(entries, opts.seed, opts.train_fraction);

    std::vector<ColorExemplar> exemplars;
    std::vector<std::optional<std::size_t>> exemplar_slot(entries.size());
    for (std::size_t i : plan.train) {
        exemplar_slot[i] = exemplars.size();
        exemplars.push_back({entry_hists[i], entries[i].label});
    }
    entry_hists.clear();

    // Pass 2: edge templates over the training split, summed in index order.
    TemplateAccumulator accumulator;
    const std::size_t chunk = static_cast<std::size_t>(jobs) * 8;
    for (std::size_t start = 0; start < plan.train.size(); start += chunk) {
        const std::size_t count = std::min(chunk, plan.train.size() - start);
        std::vector<std::optional<EdgeMap>> maps(count);
        parallel_for(count, jobs, [&](std::size_t j) {
            try {
                maps[j] = edge_laplacian_map(load_image(resolve(base, entries[plan.train[start + j]].path)));
            } catch (const std::exception& e) {
                failures[j] = e.what();
            }
        });
        for (std::size_t j = 0; j < count; ++j) {
            if (!maps[j]) {
                log << "error: image changed during extraction: " << entries[plan.train[start + j]].path << "\n";
                return 1;
            }
            accumulator.add(*maps[j], entries[plan.train[start + j]].label);
        }
    }

    LaplacianTemplates templates;
    try {
        templates = accumulator.finish();
    } catch (const InvalidArgument& e) {
        log << "error: " << e.what() << "\n";
        return 2;
    }
    const int k = effective_neighbors(exemplars.size());
    if (k < kNeighbors && opts.verbosity > 0) {
        log << "warning: only " << exemplars.size() << " training exemplars; color kNN uses k=" << k << "\n";
    }

    // Pass 3: full feature vectors; training images are scored leave-one-out against the exemplars.
    const FeatureContext ctx{templates, exemplars, k};
    std::vector<std::optional<FeatureRow>> rows(entries.size());
    std::vector<std::string> errors(entries.size());
    parallel_for(entries.size(), jobs, [&](std::size_t i) {
        try {
            const RgbImage img = load_image(resolve(base, entries[i].path));
            const auto extracted = extract_features(img, ctx, exemplar_slot[i]);
            rows[i] = FeatureRow{entries[i], extracted.features, extracted.diagnostics};
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    std::vector<FeatureRow> table;
    table.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!rows[i]) {
            log << "error: feature extraction failed: " << errors[i] << "\n";
            return 1;
        }
        table.push_back(std::move(*rows[i]));
    }

    save_feature_cache(opts.cache, table);
    const auto templates_path = opts.templates.value_or(beside(opts.cache, "templates.json"));
    const auto exemplars_path = opts.exemplars.value_or(beside(opts.cache, "exemplars.json"));
    save_templates(templates_path, templates);
    save_exemplars(exemplars_path, exemplars);
    if (opts.verbosity > 0) {
        log << "extract: " << table.size() << " rows (" << plan.train.size() << " train, " << plan.test.size()
            << " test), " << n_failed << " skipped -> " << opts.cache.string() << "\n";
    }
    return 0;
}

int run_train(const TrainOptions& opts, std::ostream& log) {
    const auto rows = load_feature_cache(opts.cache);
    if (rows.empty()) {
        log << "error: feature cache " << opts.cache.string() << " is empty\n";
        return 2;
    }
    const auto entries = entries_of(rows);
    const SplitPlan plan = split(entries, opts.config.seed, opts.train_fraction);

    std::vector<FeatureVector> train_features;
    for (std::size_t i : plan.train) train_features.push_back(rows[i].features);
    if (train_features.empty()) {
        log << "error: training split is empty\n";
        return 2;
    }
    ModelFile file;
    file.config = opts.config;
    file.normalizer = FeatureNormalizer::fit(train_features);

    std::vector<TrainingSample> samples;
    for (std::size_t i : plan.train) samples.push_back({file.normalizer.apply(rows[i].features), rows[i].entry.label});

    TrainingResult result;
    try {
        result = train(opts.config, samples);
    } catch (const InvalidArgument& e) {
        log << "error: " << e.what() << "\n";
        return 2;
    }
    file.model = result.model;
    save_model(opts.model, file);

    const auto trace_path = opts.loss_trace.value_or(beside(opts.model, "loss_trace.csv"));
    std::ofstream trace(trace_path, std::ios::binary);
    if (!trace) throw IoError(trace_path.string() + ": cannot open for writing");
    trace << "epoch,loss\n";
    for (std::size_t e = 0; e < result.loss_trace.size(); ++e) {
        trace << (e + 1) << ',' << format_real(result.loss_trace[e]) << '\n';
    }

    if (opts.verbosity > 0) {
        std::size_t correct = 0;
        for (const auto& s : samples) {
            correct += classify(score_normalized(file.model, s.x), kDefaultGamma) == s.label ? 1 : 0;
        }
        log << "train: " << samples.size() << " samples, final loss " << format_real(result.loss_trace.back())
            << ", train accuracy at gamma=4 " << format_real(static_cast<double>(correct) / samples.size()) << "\n";
    }
    return 0;
}

int run_score(const ScoreOptions& opts, std::ostream& out, std::ostream& log) {
    const ModelFile model = load_model(opts.model);
    const auto templates = load_templates(opts.templates.value_or(beside(opts.model, "templates.json")));
    const auto exemplars = load_exemplars(opts.exemplars.value_or(beside(opts.model, "exemplars.json")));
    const FeatureContext ctx{templates, exemplars, effective_neighbors(exemplars.size())};

    std::vector<std::pair<std::string, std::filesystem::path>> inputs;
    if (opts.input.extension() == ".csv") {
        const auto base = opts.input.parent_path();
        for (const auto& e : load_manifest(opts.input)) inputs.emplace_back(e.path, resolve(base, e.path));
    } else {
        inputs.emplace_back(opts.input.string(), opts.input);
    }

    int failed = 0;
    for (const auto& [name, path] : inputs) {
        try {
            const auto extracted = extract_features(load_image(path), ctx);
            const QualityScore s = score(model.model, model.normalizer, extracted.features);
            out << name << ',' << format_real(s.value()) << ',' << to_string(classify(s, opts.gamma)) << '\n';
        } catch (const Error& e) {
            log << "error: " << e.what() << "\n";
            ++failed;
        }
    }
    return failed == 0 ? 0 : 1;
}

int run_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& log) {
    const ModelFile model = load_model(opts.model);
    const auto rows = load_feature_cache(opts.cache);
    if (rows.empty()) {
        log << "error: feature cache " << opts.cache.string() << " is empty\n";
        return 2;
    }
    const SplitPlan plan = split(entries_of(rows), opts.seed, opts.train_fraction);
    if (plan.test.empty()) {
        log << "error: test split is empty\n";
        return 2;
    }
    const auto test = score_rows(model, rows, plan.test);
    const auto thresholds = thresholds_between(opts.sweep_min, opts.sweep_max, opts.sweep_step);

    double gamma = opts.gamma;
    std::vector<SweepRow> sweep_rows;
    if (opts.sweep == SweepSource::train && !plan.train.empty()) {
        const auto train_scored = score_rows(model, rows, plan.train);
        const auto sweep = threshold_sweep(train_scored, thresholds);
        gamma = sweep.best_threshold;
        sweep_rows = sweep.rows;
    } else {
        const auto sweep = threshold_sweep(test, thresholds);
        if (opts.sweep == SweepSource::test) gamma = sweep.best_threshold;
        sweep_rows = sweep.rows;
    }

    const EvaluationReport report = evaluate(test, gamma, std::move(sweep_rows));
    emit_report(report, opts.out_dir);

    out << "overall_accuracy=" << format_real(report.overall_accuracy) << "\n";
    out << "best_threshold=" << format_real(report.best_threshold) << "\n";
    if (report.overall_auc) out << "overall_auc=" << format_real(*report.overall_auc) << "\n";
    if (opts.verbosity > 0) {
        for (const auto& [category, cat] : report.categories) {
            log << "  " << to_string(category) << ": accuracy " << format_real(cat.accuracy) << ", auc "
                << (cat.auc ? format_real(*cat.auc) : std::string("n/a")) << ", n_test " << cat.n_test << "\n";
        }
    }
    return 0;
}

}  // namespace aesthetics
