#include <fstream>
#include <string>

#include <json.hpp>

#include "aesthetics/mlp.hpp"

namespace aesthetics {

namespace {

using nlohmann::json;

std::string_view mode_name(UpdateMode m) { return m == UpdateMode::online ? "online" : "full_batch"; }

[[noreturn]] void shape_error(const std::string& path, const std::string& field) {
    throw SchemaError(path + ": " + field +
                      " has the wrong shape; expected layer sizes 6/5/2 "
                      "(w_hidden 5x6, b_hidden 5, w_out 2x5, b_out 2, normalizer 6)");
}

template <std::size_t N>
std::array<double, N> read_vector(const json& j, const std::string& path, const std::string& field) {
    if (!j.is_array() || j.size() != N) shape_error(path, field);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<double>();
    return out;
}

template <std::size_t R, std::size_t C>
std::array<std::array<double, C>, R> read_matrix(const json& j, const std::string& path, const std::string& field) {
    if (!j.is_array() || j.size() != R) shape_error(path, field);
    std::array<std::array<double, C>, R> out{};
    for (std::size_t r = 0; r < R; ++r) out[r] = read_vector<C>(j[r], path, field);
    return out;
}

}  // namespace

void save_model(const std::filesystem::path& path, const ModelFile& file) {
    const MlpModel& m = file.model;
    json j;
    j["schema_version"] = kModelSchemaVersion;
    j["w_hidden"] = m.w_hidden;
    j["b_hidden"] = m.b_hidden;
    j["w_out"] = m.w_out;
    j["b_out"] = m.b_out;
    j["normalizer"] = {{"min", file.normalizer.min()}, {"max", file.normalizer.max()}};
    j["config"] = {{"eta", file.config.learning_rate},
                   {"epochs", file.config.epochs},
                   {"seed", file.config.seed},
                   {"init_scale", file.config.init_scale},
                   {"update", mode_name(file.config.mode)}};
    std::ofstream out(path);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError(path.string() + ": write failed");
}

ModelFile load_model(const std::filesystem::path& path) {
    const std::string name = path.string();
    std::ifstream in(path);
    if (!in) throw IoError(name + ": cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw SchemaError(name + ": not a valid model file: " + e.what());
    }
    try {
        const int version = j.at("schema_version").get<int>();
        if (version != kModelSchemaVersion) {
            throw SchemaError(name + ": schema version " + std::to_string(version) + " does not match expected " +
                              std::to_string(kModelSchemaVersion));
        }
        ModelFile file;
        file.model.w_hidden = read_matrix<kHiddenNodes, kInputNodes>(j.at("w_hidden"), name, "w_hidden");
        file.model.b_hidden = read_vector<kHiddenNodes>(j.at("b_hidden"), name, "b_hidden");
        file.model.w_out = read_matrix<kOutputNodes, kHiddenNodes>(j.at("w_out"), name, "w_out");
        file.model.b_out = read_vector<kOutputNodes>(j.at("b_out"), name, "b_out");
        const auto& norm = j.at("normalizer");
        file.normalizer = FeatureNormalizer(read_vector<kInputNodes>(norm.at("min"), name, "normalizer.min"),
                                            read_vector<kInputNodes>(norm.at("max"), name, "normalizer.max"));
        const auto& cfg = j.at("config");
        file.config.learning_rate = cfg.at("eta").get<double>();
        file.config.epochs = cfg.at("epochs").get<int>();
        file.config.seed = cfg.at("seed").get<std::uint64_t>();
        file.config.init_scale = cfg.value("init_scale", TrainingConfig{}.init_scale);
        const std::string mode = cfg.value("update", std::string("online"));
        if (mode != "online" && mode != "full_batch") throw SchemaError(name + ": unknown update mode " + mode);
        file.config.mode = mode == "online" ? UpdateMode::online : UpdateMode::full_batch;
        return file;
    } catch (const json::exception& e) {
        throw SchemaError(name + ": malformed model file: " + e.what());
    } catch (const InvalidArgument& e) {
        throw SchemaError(name + ": " + e.what());
    }
}

}  // namespace aesthetics
