#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace freqspec {

enum class ModelKind { Linear, Mlp1 };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Standardized features into either a logistic unit or one tanh hidden layer.
///
/// Parameter layout (flat `params`):
///   Linear: w[dim], b
///   Mlp1:   W1[hidden * dim] (row per hidden unit), b1[hidden], w2[hidden], b2
struct ClassifierModel {
    ModelKind kind = ModelKind::Linear;
    int dim = 0;
    int hidden = 0;
    std::vector<double> feature_mean;
    std::vector<double> feature_std;  // floored at 1e-6
    std::vector<double> params;

    static std::size_t param_count(ModelKind kind, int dim, int hidden);
};

struct TrainConfig {
    double learning_rate = 0.05;
    int epochs = 500;
    double l2 = 1e-4;
    std::uint64_t seed = 0;
    ModelKind kind = ModelKind::Linear;
    int hidden = 16;
};

struct LabeledFeatures {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;  // 0 real, 1 fake
};

struct TrainResult {
    ClassifierModel model;
    std::vector<double> loss_history;  // objective before each update
};

/// Full-batch gradient descent on mean binary cross-entropy + l2 * ||weights||^2
/// (biases are not penalized). The minority class is duplicated round-robin to
/// balance the classes first. Single-threaded and bitwise reproducible.
TrainResult train_detailed(const LabeledFeatures& data, const TrainConfig& cfg);
ClassifierModel train(const LabeledFeatures& data, const TrainConfig& cfg);

/// Objective and its gradient w.r.t. `params` on already-standardized rows.
double loss_and_gradient(ModelKind kind, int dim, int hidden, std::span<const double> params,
                         const std::vector<std::vector<double>>& standardized, std::span<const int> labels,
                         double l2, std::vector<double>* gradient);

double logit(const ClassifierModel& model, std::span<const double> features);
double score(const ClassifierModel& model, std::span<const double> features);
std::vector<double> score_batch(const ClassifierModel& model, const std::vector<std::vector<double>>& features);

/// Line-oriented text: `freqspec-model v1 <kind> <dim> [hidden]` then named blocks
/// `<name> <count>` followed by hex-float values. Reload is bit-exact.
std::string serialize_model(const ClassifierModel& model);
ClassifierModel parse_model(const std::string& text);
void save_model(const ClassifierModel& model, const std::filesystem::path& path);
ClassifierModel load_model(const std::filesystem::path& path);

}  // namespace freqspec
