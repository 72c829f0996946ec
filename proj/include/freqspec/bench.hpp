#pragma once

#include <freqspec/model.hpp>
#include <freqspec/perturb.hpp>
#include <freqspec/raster.hpp>
#include <freqspec/spectrum.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace freqspec {

enum class Split { Train, Val, Test };

std::string to_string(Split split);
Split parse_split(const std::string& name);

struct ManifestEntry {
    std::string path;  // relative to Manifest::root, '/' separated
    int label = 0;     // 0 real, 1 fake
    std::string source;
    Split split = Split::Train;
    bool downscale = false;  // larger than the working resolution; bilinear downscale at load
};

struct Manifest {
    std::filesystem::path root;
    std::vector<ManifestEntry> entries;

    std::vector<std::string> sources() const;
};

struct SplitRatios {
    double train = 0.95;
    double val = 0.025;
    double test = 0.025;
};

/// Largest-remainder apportionment of n items; ties go to train, then val, then test.
std::array<std::size_t, 3> split_counts(std::size_t n, const SplitRatios& ratios);

/// Scans one subdirectory per source (`real/` required) for PNG/JPEG files and
/// splits each source by a stable hash of the relative path.
Manifest build_manifest(const std::filesystem::path& root, const SplitRatios& ratios = {}, int resolution = 256);

/// JSON; `root` is stored relative to the manifest file's directory.
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);
/// Validates split names, path uniqueness and that every file exists.
Manifest load_manifest(const std::filesystem::path& path);

enum class FeatureSet { Frequency, PixelStats };

std::string to_string(FeatureSet set);
FeatureSet parse_feature_set(const std::string& name);

struct EvalConfig {
    int resolution = 256;
    int median_k = 3;
    double epsilon = 1e-8;
    int bands = 32;
    std::uint64_t seed = 0;
    int sample_cap = 0;  // per source and split; 0 = no cap
    unsigned threads = 1;
    FeatureSet features = FeatureSet::Frequency;

    SpectrumConfig spectrum() const { return {median_k, epsilon, bands}; }
};

/// Per-image mean, variance and mean squared forward-difference gradient of the grayscale image.
std::vector<double> pixel_stats_features(const Raster& img);

std::vector<double> compute_features(const Raster& img, const EvalConfig& cfg);

/// Decodes an entry, downscaling (bilinear) to resolution x resolution when it is larger.
Raster load_entry(const Manifest& manifest, const ManifestEntry& entry, const EvalConfig& cfg);

/// Entries of `split` from the given sources, capped per source by cfg.sample_cap.
std::vector<const ManifestEntry*> select_entries(const Manifest& manifest, Split split,
                                                 const std::set<std::string>& sources, const EvalConfig& cfg);

/// Features for each entry, optionally after a perturbation. Noise streams are keyed per image path.
std::vector<std::vector<double>> extract_entry_features(const Manifest& manifest,
                                                        const std::vector<const ManifestEntry*>& entries,
                                                        const EvalConfig& cfg,
                                                        const std::optional<PerturbationSpec>& perturbation = {});

struct ReportRow {
    std::string train_sources;
    std::string test_source;
    std::string perturbation = "none";
    double param = 0.0;
    double auc = 0.0;
    double ap = 0.0;
    std::size_t n_real = 0;
    std::size_t n_fake = 0;

    bool operator==(const ReportRow&) const = default;
};

struct EvalReport {
    std::vector<ReportRow> rows;
};

std::string join_sources(const std::set<std::string>& sources);

/// Scores the test split of every source in `test_sources` against the shared real test set.
/// Rows are ordered by test source name and followed by an "average" row.
EvalReport evaluate_model(const Manifest& manifest, const ClassifierModel& model, const std::string& train_label,
                          const std::set<std::string>& test_sources, const EvalConfig& cfg);

/// Trains on the train split of `real` plus the given fake sources.
ClassifierModel train_detector(const Manifest& manifest, const std::set<std::string>& train_sources,
                               const EvalConfig& cfg, const TrainConfig& train_cfg);

struct GeneralizationResult {
    ClassifierModel model;
    EvalReport report;
};

/// Trains one model on the train split of `real` plus `train_sources`, then evaluates
/// on the test split of every fake source (or `test_sources` when given).
GeneralizationResult run_generalization(const Manifest& manifest, const std::set<std::string>& train_sources,
                                        const EvalConfig& cfg, const TrainConfig& train_cfg,
                                        const std::set<std::string>& test_sources = {});

/// For each test source: an unperturbed baseline row, then one row per sweep point.
/// Perturbations are applied to real and fake test images alike.
EvalReport run_robustness(const Manifest& manifest, const ClassifierModel& model, const std::string& train_label,
                          const std::set<std::string>& test_sources, const std::vector<PerturbationSpec>& sweep,
                          const EvalConfig& cfg);

enum class ReportFormat { Csv, Json };

std::string report_to_csv(const EvalReport& report);
std::string report_to_json(const EvalReport& report);
EvalReport report_from_csv(const std::string& text);
EvalReport report_from_json(const std::string& text);
void write_report(const EvalReport& report, const std::filesystem::path& path, ReportFormat format);
/// Format chosen by extension (.json, anything else CSV).
EvalReport read_report(const std::filesystem::path& path);

}  // namespace freqspec
