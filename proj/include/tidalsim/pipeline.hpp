#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tidalsim/batch.hpp"
#include "tidalsim/cohort.hpp"
#include "tidalsim/eval.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/validity.hpp"

namespace tidalsim {

/// The five classifiers in canonical order.
inline constexpr std::array<ClassifierKind, 5> kAllClassifiers = {
    ClassifierKind::GaussianNb, ClassifierKind::Logistic, ClassifierKind::Perceptron,
    ClassifierKind::SvmRbf, ClassifierKind::RandomForest};

/// Everything one run needs, with defaults matching the study protocol.
/// Loadable from a strict, versioned JSON document (unknown keys rejected).
struct RunConfig {
    Preset preset = Preset::Reproduction;
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    ExecMode exec = ExecMode::Parallel;

    std::size_t n_per_class = 1000;
    PositivityFloors floors;
    PressureProfile pressure;
    TimeGrid grid;
    double test_fraction = 0.2;
    LearnConfig learn;
    std::size_t region_resolution = 300;
    ParamRectangle rectangle;
    std::size_t samples_per_edge = 200;
    std::size_t ellipse_points = 256;
    std::vector<double> grid_gammas = {0.01, 0.1, 1.0, 10.0, 100.0};
    std::vector<double> grid_cs = {0.01, 0.1, 1.0, 10.0, 100.0};
    int cv_folds = 5;
    int timing_repetitions = 5;

    void validate() const;

    static RunConfig from_json_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text);
    /// Canonical serialization of the fully resolved config (defaults
    /// applied); input to the config hash.
    std::string to_json_text() const;
};

/// FNV-1a hash of the canonical config serialization, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

struct ClassifierMetrics {
    double accuracy = 0.0;
    std::array<double, kNumClasses> auc{};
    double macro_auc = 0.0;
};

/// In-memory result of the learning protocol: cohort, simulated features,
/// split, the five fitted models and their test metrics.
struct ExperimentResult {
    std::vector<Subject> cohort;
    std::vector<FeatureVector> features;
    DataMatrix x_all;
    std::vector<int> y_all;
    SplitIndices split;
    ScalerParams scaler;
    std::map<ClassifierKind, TrainedModel> models;
    std::map<ClassifierKind, ClassifierMetrics> metrics;
    std::map<ClassifierKind, RocCurve> rocs;
};

/// Runs cohort generation, simulation, feature extraction, the stratified
/// split, scaling and all five fits; computes test accuracy and ROC.
ExperimentResult run_experiment(const RunConfig& cfg);

struct PipelineArtifacts {
    std::string out_dir;
    std::vector<std::string> files;  // names relative to out_dir
};

/// run_experiment plus artifact export: dataset CSVs, model documents,
/// metrics JSON, decision regions, ROC curves, timing report and a manifest.
/// Time measurements go to the timing artifact only, keeping metrics JSON
/// byte-identical across reruns of the same config.
PipelineArtifacts run_pipeline(const RunConfig& cfg);

/// Writes a manifest JSON (seed, preset, config hash, artifact list) into
/// out_dir and appends it to the artifact list.
void write_manifest(const RunConfig& cfg, const std::string& command,
                    PipelineArtifacts& artifacts);

}  // namespace tidalsim
