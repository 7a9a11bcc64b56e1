// Batch front end: synth -> extract -> train -> evaluate, plus score.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "aesthetics/pipeline.hpp"

using namespace aesthetics;

int main(int argc, char** argv) {
    CLI::App app{"Photo aesthetic quality scoring (1-10) from six hand-designed features and a 6-5-2 MLP"};
    app.require_subcommand(1);
    app.footer(
        "Defaults: eta=0.1, epochs=250, gamma=4, delta=96.04, theta_power=5, alpha_lap=0.2,\n"
        "alpha_hue=0.05, k=5. All randomness derives from --seed; use the same seed for\n"
        "extract, train and evaluate so they agree on the 70/30 split.");

    int verbosity = 1;
    app.add_flag("-q,--quiet", [&](std::int64_t) { verbosity = 0; }, "Suppress progress output");

    ExtractOptions ex;
    auto* extract = app.add_subcommand("extract", "Fit templates/exemplars on the training split and write the feature cache");
    extract->add_option("manifest", ex.manifest, "Manifest CSV (path,category,label)")->required()->check(CLI::ExistingFile);
    extract->add_option("cache", ex.cache, "Output feature cache CSV")->required();
    extract->add_option("--templates", ex.templates, "Edge template JSON (default: templates.json beside the cache)");
    extract->add_option("--exemplars", ex.exemplars, "Color exemplar JSON (default: exemplars.json beside the cache)");
    extract->add_option("--seed", ex.seed, "Split seed")->capture_default_str();
    extract->add_option("--train-fraction", ex.train_fraction, "Per-cell training fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
    extract->add_option("-j,--jobs", ex.jobs, "Worker threads (0 = all cores)")->capture_default_str();
    extract->add_flag("--strict", ex.strict, "Exit nonzero if any image fails to decode");

    TrainOptions tr;
    auto* trainc = app.add_subcommand("train", "Train the MLP on the training split of a feature cache");
    trainc->add_option("cache", tr.cache, "Feature cache CSV")->required()->check(CLI::ExistingFile);
    trainc->add_option("model", tr.model, "Output model JSON")->required();
    trainc->add_option("--loss-trace", tr.loss_trace, "Loss trace CSV (default: loss_trace.csv beside the model)");
    trainc->add_option("--seed", tr.config.seed, "Split and initialization seed")->capture_default_str();
    trainc->add_option("--eta", tr.config.learning_rate, "Learning rate")->capture_default_str()->check(CLI::NonNegativeNumber);
    trainc->add_option("--epochs", tr.config.epochs, "Training epochs")->capture_default_str()->check(CLI::PositiveNumber);
    trainc->add_option("--init-scale", tr.config.init_scale, "Initial edge weight")->capture_default_str();
    trainc->add_option("--update", tr.config.mode, "Weight update schedule")
        ->transform(CLI::CheckedTransformer(std::map<std::string, UpdateMode>{{"online", UpdateMode::online},
                                                                              {"full-batch", UpdateMode::full_batch}}))
        ->default_str("online");
    trainc->add_option("--train-fraction", tr.train_fraction, "Per-cell training fraction")->capture_default_str();

    ScoreOptions sc;
    auto* scorec = app.add_subcommand("score", "Score an image (or every image of a manifest .csv)");
    scorec->add_option("model", sc.model, "Model JSON")->required()->check(CLI::ExistingFile);
    scorec->add_option("input", sc.input, "Image file, or manifest ending in .csv")->required()->check(CLI::ExistingFile);
    scorec->add_option("--templates", sc.templates, "Edge template JSON (default: templates.json beside the model)");
    scorec->add_option("--exemplars", sc.exemplars, "Color exemplar JSON (default: exemplars.json beside the model)");
    scorec->add_option("--gamma", sc.gamma, "Classification threshold")->capture_default_str()->check(CLI::Range(1.0, 10.0));

    EvaluateOptions ev;
    std::string sweep_source = "train";
    auto* evalc = app.add_subcommand("evaluate", "Evaluate on the test split and write report files");
    evalc->add_option("model", ev.model, "Model JSON")->required()->check(CLI::ExistingFile);
    evalc->add_option("cache", ev.cache, "Feature cache CSV")->required()->check(CLI::ExistingFile);
    evalc->add_option("out_dir", ev.out_dir, "Report output directory")->required();
    evalc->add_option("--seed", ev.seed, "Split seed")->capture_default_str();
    evalc->add_option("--train-fraction", ev.train_fraction, "Per-cell training fraction")->capture_default_str();
    evalc->add_option("--gamma", ev.gamma, "Threshold when --sweep none")->capture_default_str()->check(CLI::Range(1.0, 10.0));
    evalc->add_option("--sweep", sweep_source, "Split used to pick the threshold: train, test or none")
        ->capture_default_str()->check(CLI::IsMember({"train", "test", "none"}));
    evalc->add_option("--sweep-min", ev.sweep_min, "First sweep threshold")->capture_default_str();
    evalc->add_option("--sweep-max", ev.sweep_max, "Last sweep threshold")->capture_default_str();
    evalc->add_option("--sweep-step", ev.sweep_step, "Sweep step")->capture_default_str();

    SynthOptions sy;
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic professional/snapshot corpus");
    synth->group("");  // hidden
    synth->add_option("out_dir", sy.out_dir, "Output directory")->required();
    synth->add_option("--count", sy.per_class, "Images per class")->capture_default_str();
    synth->add_option("--size", sy.size, "Image side in pixels")->capture_default_str();
    synth->add_option("--blur", sy.blur_sigma, "Snapshot blur sigma")->capture_default_str();
    synth->add_option("--seed", sy.seed, "Corpus seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*extract) {
            ex.verbosity = verbosity;
            return run_extract(ex, std::cerr);
        }
        if (*trainc) {
            tr.verbosity = verbosity;
            return run_train(tr, std::cerr);
        }
        if (*scorec) {
            sc.verbosity = verbosity;
            return run_score(sc, std::cout, std::cerr);
        }
        if (*evalc) {
            ev.verbosity = verbosity;
            ev.sweep = sweep_source == "train" ? SweepSource::train
                       : sweep_source == "test" ? SweepSource::test
                                                : SweepSource::none;
            return run_evaluate(ev, std::cout, std::cerr);
        }
        if (*synth) return run_synth(sy, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
