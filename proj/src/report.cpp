#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "aesthetics/dataset.hpp"
#include "aesthetics/eval.hpp"

namespace aesthetics {

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << contents;
    if (!out) throw IoError(path.string() + ": write failed");
}

}  // namespace

std::string report_json(const EvaluationReport& report) {
    nlohmann::ordered_json j;
    j["overall_accuracy"] = report.overall_accuracy;
    j["overall_auc"] = report.overall_auc ? nlohmann::ordered_json(*report.overall_auc) : nlohmann::ordered_json(nullptr);
    j["best_threshold"] = report.best_threshold;
    j["sweep"] = nlohmann::ordered_json::array();
    for (const auto& row : report.sweep) j["sweep"].push_back({{"threshold", row.threshold}, {"accuracy", row.accuracy}});
    j["categories"] = nlohmann::ordered_json::object();
    for (const auto& [category, cat] : report.categories) {
        nlohmann::ordered_json c;
        c["accuracy"] = cat.accuracy;
        c["auc"] = cat.auc ? nlohmann::ordered_json(*cat.auc) : nlohmann::ordered_json(nullptr);
        c["n_test"] = cat.n_test;
        j["categories"][std::string(to_string(category))] = c;
    }
    return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_report(const EvaluationReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError(dir.string() + ": cannot create directory: " + ec.message());

    std::vector<std::filesystem::path> written;
    written.push_back(dir / "report.json");
    write_file(written.back(), report_json(report));

    for (const auto& [category, cat] : report.categories) {
        const std::string name(to_string(category));
        std::string scores = "path,label,score\n";
        for (const auto& e : cat.examples) {
            scores += e.path + "," + std::string(to_string(e.label)) + "," + format_real(e.score.value()) + "\n";
        }
        written.push_back(dir / ("scores_" + name + ".csv"));
        write_file(written.back(), scores);

        std::string roc = "fpr,tpr,threshold\n";
        for (const auto& p : cat.roc) {
            roc += format_real(p.fpr) + "," + format_real(p.tpr) + "," +
                   (std::isinf(p.threshold) ? std::string("inf") : format_real(p.threshold)) + "\n";
        }
        written.push_back(dir / ("roc_" + name + ".csv"));
        write_file(written.back(), roc);
    }
    return written;
}

}  // namespace aesthetics
