#include <algorithm>
#include <cmath>
#include <limits>

#include "aesthetics/eval.hpp"

namespace aesthetics {

std::vector<double> default_thresholds() {
    std::vector<double> t;
    for (int i = 0; i <= 14; ++i) t.push_back(2.0 + 0.5 * i);
    return t;
}

double accuracy(std::span<const ScoredExample> examples, double gamma) {
    if (examples.empty()) throw InvalidArgument("accuracy: no examples");
    const auto correct = std::count_if(examples.begin(), examples.end(),
                                       [gamma](const ScoredExample& e) { return classify(e.score, gamma) == e.label; });
    return static_cast<double>(correct) / static_cast<double>(examples.size());
}

ThresholdSweep threshold_sweep(std::span<const ScoredExample> examples, std::span<const double> thresholds) {
    if (examples.empty()) throw InvalidArgument("threshold_sweep: no examples");
    if (thresholds.empty()) throw InvalidArgument("threshold_sweep: no thresholds");
    ThresholdSweep sweep;
    sweep.best_accuracy = -1.0;
    for (double t : thresholds) {
        const double acc = accuracy(examples, t);
        sweep.rows.push_back({t, acc});
        const bool better = acc > sweep.best_accuracy || (acc == sweep.best_accuracy && t < sweep.best_threshold);
        if (better) {
            sweep.best_accuracy = acc;
            sweep.best_threshold = t;
        }
    }
    return sweep;
}

ThresholdSweep threshold_sweep(std::span<const ScoredExample> examples) {
    const auto t = default_thresholds();
    return threshold_sweep(examples, t);
}

std::vector<RocPoint> roc_curve(std::span<const ScoredExample> examples) {
    std::vector<const ScoredExample*> sorted;
    sorted.reserve(examples.size());
    std::size_t positives = 0;
    for (const auto& e : examples) {
        sorted.push_back(&e);
        positives += e.label == Label::professional ? 1 : 0;
    }
    const std::size_t negatives = examples.size() - positives;
    if (positives == 0 || negatives == 0) throw InvalidArgument("roc_curve: both labels must be present");

    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ScoredExample* a, const ScoredExample* b) { return a->score > b->score; });

    std::vector<RocPoint> points{{0.0, 0.0, std::numeric_limits<double>::infinity()}};
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        const double s = sorted[i]->score.value();
        for (; i < sorted.size() && sorted[i]->score.value() == s; ++i) {
            ++(sorted[i]->label == Label::professional ? tp : fp);
        }
        points.push_back({static_cast<double>(fp) / static_cast<double>(negatives),
                          static_cast<double>(tp) / static_cast<double>(positives), s});
    }
    return points;
}

double auc(std::span<const RocPoint> points) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
    }
    return area;
}

EvaluationReport evaluate(std::span<const ScoredExample> test, double gamma, std::vector<SweepRow> sweep) {
    if (test.empty()) throw InvalidArgument("evaluate: empty test set");
    EvaluationReport report;
    report.overall_accuracy = accuracy(test, gamma);
    report.best_threshold = gamma;
    report.sweep = std::move(sweep);
    const bool any_pro = std::any_of(test.begin(), test.end(), [](const auto& e) { return e.label == Label::professional; });
    const bool any_snap = std::any_of(test.begin(), test.end(), [](const auto& e) { return e.label == Label::snapshot; });
    if (any_pro && any_snap) report.overall_auc = auc(roc_curve(test));

    std::map<Category, std::vector<ScoredExample>> by_category;
    for (const auto& e : test) by_category[e.category].push_back(e);
    for (auto& [category, examples] : by_category) {
        CategoryReport cat;
        cat.accuracy = accuracy(examples, gamma);
        cat.n_test = examples.size();
        const bool both = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.label == Label::professional; }) &&
                          std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.label == Label::snapshot; });
        if (both) {
            cat.roc = roc_curve(examples);
            cat.auc = auc(cat.roc);
        }
        cat.examples = std::move(examples);
        report.categories.emplace(category, std::move(cat));
    }
    return report;
}

}  // namespace aesthetics
