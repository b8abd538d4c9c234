#include "tidalsim/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "tidalsim/error.hpp"
#include "tidalsim/io.hpp"
#include "tidalsim/rng.hpp"

namespace tidalsim {

namespace {

using nlohmann::json;

constexpr int kConfigVersion = 1;

// Stage ids for deriving per-stage seeds from the run seed.
enum : std::uint64_t { kStageCohort = 0, kStageSplit = 1, kStagePerceptron = 2, kStageForest = 3, kStageGridSearch = 4 };

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) {
        throw std::invalid_argument("config section '" + where + "' must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (allowed.find(key) == allowed.end()) {
            throw std::invalid_argument("unknown config key '" + where + key + "'");
        }
    }
}

template <class T>
void read_if(const json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

Waveform parse_waveform(const std::string& name) {
    if (name == "raised-cosine") return Waveform::RaisedCosine;
    if (name == "sinusoid") return Waveform::Sinusoid;
    throw std::invalid_argument("unknown waveform '" + name +
                                "' (expected raised-cosine or sinusoid)");
}

const char* waveform_name(Waveform w) {
    return w == Waveform::RaisedCosine ? "raised-cosine" : "sinusoid";
}

ExecMode parse_exec(const std::string& name) {
    if (name == "serial") return ExecMode::Serial;
    if (name == "parallel") return ExecMode::Parallel;
    throw std::invalid_argument("unknown exec mode '" + name +
                                "' (expected serial or parallel)");
}

}  // namespace

void RunConfig::validate() const {
    pressure.validate();
    grid.validate();
    rectangle.validate();
    if (n_per_class == 0) throw std::invalid_argument("n_per_class must be positive");
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must lie strictly between 0 and 1");
    }
    if (region_resolution == 0) throw std::invalid_argument("region resolution must be positive");
    if (samples_per_edge == 0) throw std::invalid_argument("samples_per_edge must be positive");
    if (ellipse_points < 3) throw std::invalid_argument("ellipse_points must be at least 3");
    if (grid_gammas.empty() || grid_cs.empty()) {
        throw std::invalid_argument("grid-search grids must be nonempty");
    }
    if (cv_folds < 2) throw std::invalid_argument("cv_folds must be at least 2");
    if (timing_repetitions < 1) throw std::invalid_argument("timing repetitions must be positive");
    if (!(floors.r_min > 0.0) || !(floors.e_min > 0.0)) {
        throw std::invalid_argument("positivity floors must be positive");
    }
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(doc, "", {"version", "preset", "seed", "out_dir", "exec", "cohort",
                         "pressure", "grid", "split", "logistic", "perceptron", "svm",
                         "forest", "region", "rectangle", "validity", "grid_search",
                         "timing"});
    RunConfig cfg;
    if (doc.contains("version") && doc.at("version").get<int>() != kConfigVersion) {
        throw std::invalid_argument("unsupported config version");
    }
    if (doc.contains("preset")) cfg.preset = parse_preset(doc.at("preset").get<std::string>());
    read_if(doc, "seed", cfg.seed);
    read_if(doc, "out_dir", cfg.out_dir);
    if (doc.contains("exec")) cfg.exec = parse_exec(doc.at("exec").get<std::string>());

    if (doc.contains("cohort")) {
        const json& j = doc.at("cohort");
        check_keys(j, "cohort.", {"n_per_class", "r_min", "e_min"});
        read_if(j, "n_per_class", cfg.n_per_class);
        read_if(j, "r_min", cfg.floors.r_min);
        read_if(j, "e_min", cfg.floors.e_min);
    }
    if (doc.contains("pressure")) {
        const json& j = doc.at("pressure");
        check_keys(j, "pressure.", {"waveform", "amplitude", "frequency", "phase"});
        if (j.contains("waveform")) {
            cfg.pressure.waveform = parse_waveform(j.at("waveform").get<std::string>());
        }
        read_if(j, "amplitude", cfg.pressure.amplitude);
        read_if(j, "frequency", cfg.pressure.frequency);
        read_if(j, "phase", cfg.pressure.phase);
    }
    if (doc.contains("grid")) {
        const json& j = doc.at("grid");
        check_keys(j, "grid.", {"dt", "duration", "transient_cutoff"});
        read_if(j, "dt", cfg.grid.dt);
        read_if(j, "duration", cfg.grid.duration);
        read_if(j, "transient_cutoff", cfg.grid.transient_cutoff);
    }
    if (doc.contains("split")) {
        const json& j = doc.at("split");
        check_keys(j, "split.", {"test_fraction"});
        read_if(j, "test_fraction", cfg.test_fraction);
    }
    if (doc.contains("logistic")) {
        const json& j = doc.at("logistic");
        check_keys(j, "logistic.", {"l2", "tol", "max_iter"});
        read_if(j, "l2", cfg.learn.logistic.l2);
        read_if(j, "tol", cfg.learn.logistic.tol);
        read_if(j, "max_iter", cfg.learn.logistic.max_iter);
    }
    if (doc.contains("perceptron")) {
        const json& j = doc.at("perceptron");
        check_keys(j, "perceptron.", {"eta", "max_epochs"});
        read_if(j, "eta", cfg.learn.perceptron.eta);
        read_if(j, "max_epochs", cfg.learn.perceptron.max_epochs);
    }
    if (doc.contains("svm")) {
        const json& j = doc.at("svm");
        check_keys(j, "svm.", {"gamma", "c", "tol", "max_iter"});
        read_if(j, "gamma", cfg.learn.svm.gamma);
        read_if(j, "c", cfg.learn.svm.c);
        read_if(j, "tol", cfg.learn.svm.tol);
        read_if(j, "max_iter", cfg.learn.svm.max_iter);
    }
    if (doc.contains("forest")) {
        const json& j = doc.at("forest");
        check_keys(j, "forest.", {"n_trees", "all_features", "bootstrap"});
        read_if(j, "n_trees", cfg.learn.forest.n_trees);
        read_if(j, "all_features", cfg.learn.forest.all_features);
        read_if(j, "bootstrap", cfg.learn.forest.bootstrap);
    }
    if (doc.contains("region")) {
        const json& j = doc.at("region");
        check_keys(j, "region.", {"resolution"});
        read_if(j, "resolution", cfg.region_resolution);
    }
    if (doc.contains("rectangle")) {
        const json& j = doc.at("rectangle");
        check_keys(j, "rectangle.", {"r_min", "r_max", "e_min", "e_max"});
        read_if(j, "r_min", cfg.rectangle.r_min);
        read_if(j, "r_max", cfg.rectangle.r_max);
        read_if(j, "e_min", cfg.rectangle.e_min);
        read_if(j, "e_max", cfg.rectangle.e_max);
    }
    if (doc.contains("validity")) {
        const json& j = doc.at("validity");
        check_keys(j, "validity.", {"samples_per_edge", "ellipse_points"});
        read_if(j, "samples_per_edge", cfg.samples_per_edge);
        read_if(j, "ellipse_points", cfg.ellipse_points);
    }
    if (doc.contains("grid_search")) {
        const json& j = doc.at("grid_search");
        check_keys(j, "grid_search.", {"gammas", "cs", "folds"});
        read_if(j, "gammas", cfg.grid_gammas);
        read_if(j, "cs", cfg.grid_cs);
        read_if(j, "folds", cfg.cv_folds);
    }
    if (doc.contains("timing")) {
        const json& j = doc.at("timing");
        check_keys(j, "timing.", {"repetitions"});
        read_if(j, "repetitions", cfg.timing_repetitions);
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    return from_json_text(read_file(path));
}

std::string RunConfig::to_json_text() const {
    json doc;
    doc["version"] = kConfigVersion;
    doc["preset"] = preset_name(preset);
    doc["seed"] = seed;
    doc["out_dir"] = out_dir;
    doc["exec"] = exec == ExecMode::Serial ? "serial" : "parallel";
    doc["cohort"] = {{"n_per_class", n_per_class},
                     {"r_min", floors.r_min},
                     {"e_min", floors.e_min}};
    doc["pressure"] = {{"waveform", waveform_name(pressure.waveform)},
                       {"amplitude", pressure.amplitude},
                       {"frequency", pressure.frequency},
                       {"phase", pressure.phase}};
    doc["grid"] = {{"dt", grid.dt},
                   {"duration", grid.duration},
                   {"transient_cutoff", grid.transient_cutoff}};
    doc["split"] = {{"test_fraction", test_fraction}};
    doc["logistic"] = {{"l2", learn.logistic.l2},
                       {"tol", learn.logistic.tol},
                       {"max_iter", learn.logistic.max_iter}};
    doc["perceptron"] = {{"eta", learn.perceptron.eta},
                         {"max_epochs", learn.perceptron.max_epochs}};
    doc["svm"] = {{"gamma", learn.svm.gamma},
                  {"c", learn.svm.c},
                  {"tol", learn.svm.tol},
                  {"max_iter", learn.svm.max_iter}};
    doc["forest"] = {{"n_trees", learn.forest.n_trees},
                     {"all_features", learn.forest.all_features},
                     {"bootstrap", learn.forest.bootstrap}};
    doc["region"] = {{"resolution", region_resolution}};
    doc["rectangle"] = {{"r_min", rectangle.r_min},
                        {"r_max", rectangle.r_max},
                        {"e_min", rectangle.e_min},
                        {"e_max", rectangle.e_max}};
    doc["validity"] = {{"samples_per_edge", samples_per_edge},
                       {"ellipse_points", ellipse_points}};
    doc["grid_search"] = {{"gammas", grid_gammas}, {"cs", grid_cs}, {"folds", cv_folds}};
    doc["timing"] = {{"repetitions", timing_repetitions}};
    return doc.dump(2);
}

std::string config_hash(const RunConfig& cfg) {
    const std::string text = cfg.to_json_text();
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentResult run_experiment(const RunConfig& cfg) {
    cfg.validate();

    ExperimentResult res;
    CohortConfig cohort_cfg;
    cohort_cfg.specs = default_class_specs(cfg.preset);
    cohort_cfg.n_per_class = cfg.n_per_class;
    cohort_cfg.seed = derive_seed(cfg.seed, kStageCohort);
    cohort_cfg.floors = cfg.floors;
    res.cohort = generate_cohort(cohort_cfg, cfg.exec);

    const SimConfig sim{cfg.pressure, cfg.grid};
    res.features = cohort_features(res.cohort, sim, cfg.exec);

    res.x_all = DataMatrix::from_features(res.features);
    res.y_all.resize(res.cohort.size());
    for (std::size_t i = 0; i < res.cohort.size(); ++i) {
        res.y_all[i] = static_cast<int>(res.cohort[i].label);
    }

    res.split = split_dataset(res.y_all, cfg.test_fraction, derive_seed(cfg.seed, kStageSplit));

    DataMatrix x_train(res.split.train.size(), res.x_all.cols);
    std::vector<int> y_train(res.split.train.size());
    for (std::size_t k = 0; k < res.split.train.size(); ++k) {
        const double* src = res.x_all.row(res.split.train[k]);
        std::copy(src, src + res.x_all.cols, x_train.row(k));
        y_train[k] = res.y_all[res.split.train[k]];
    }
    res.scaler = fit_scaler(x_train);
    const DataMatrix x_train_scaled = apply_scaler(res.scaler, x_train);

    LearnConfig learn_cfg = cfg.learn;
    learn_cfg.perceptron.seed = derive_seed(cfg.seed, kStagePerceptron);
    learn_cfg.forest.seed = derive_seed(cfg.seed, kStageForest);

    std::vector<int> y_test(res.split.test.size());
    for (std::size_t k = 0; k < res.split.test.size(); ++k) {
        y_test[k] = res.y_all[res.split.test[k]];
    }

    for (const ClassifierKind kind : kAllClassifiers) {
        TrainedModel model =
            train_classifier(kind, x_train_scaled, y_train, res.scaler, learn_cfg, cfg.exec);

        std::vector<int> y_pred(res.split.test.size());
        std::vector<std::array<double, kNumClasses>> scores(res.split.test.size());
        for (std::size_t k = 0; k < res.split.test.size(); ++k) {
            const double* row = res.x_all.row(res.split.test[k]);
            scores[k] = score(model, row, res.x_all.cols);
            std::size_t best = 0;
            for (std::size_t c = 1; c < kNumClasses; ++c) {
                if (scores[k][c] > scores[k][best]) best = c;
            }
            y_pred[k] = static_cast<int>(best);
        }

        ClassifierMetrics cm;
        cm.accuracy = accuracy(y_test, y_pred);
        RocCurve roc = roc_macro(scores, y_test);
        cm.auc = roc.auc;
        cm.macro_auc = roc.macro_auc;

        res.metrics.emplace(kind, cm);
        res.rocs.emplace(kind, std::move(roc));
        res.models.emplace(kind, std::move(model));
    }
    return res;
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    PipelineArtifacts& artifacts) {
    json doc;
    doc["format_version"] = 1;
    doc["command"] = command;
    doc["seed"] = cfg.seed;
    doc["preset"] = preset_name(cfg.preset);
    doc["config_hash"] = config_hash(cfg);
    std::vector<std::string> sorted = artifacts.files;
    std::sort(sorted.begin(), sorted.end());
    doc["artifacts"] = sorted;
    const std::string name = "manifest.json";
    write_file((std::filesystem::path(artifacts.out_dir) / name).string(),
               doc.dump(2) + "\n");
    artifacts.files.push_back(name);
}

PipelineArtifacts run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "'");

    PipelineArtifacts artifacts;
    artifacts.out_dir = cfg.out_dir;
    const auto out_path = [&](const std::string& name) {
        artifacts.files.push_back(name);
        return (std::filesystem::path(cfg.out_dir) / name).string();
    };

    ExperimentResult res = run_experiment(cfg);

    write_cohort_csv(res.cohort, out_path("cohort.csv"));
    write_features_csv(res.cohort, res.features, out_path("features.csv"));

    json metrics;
    metrics["format_version"] = 1;
    metrics["n_train"] = res.split.train.size();
    metrics["n_test"] = res.split.test.size();
    const Bounds2 bounds = padded_bounds(res.x_all, 0.1);
    for (const ClassifierKind kind : kAllClassifiers) {
        const std::string name = classifier_name(kind);
        const ClassifierMetrics& cm = res.metrics.at(kind);
        json entry;
        entry["accuracy"] = cm.accuracy;
        entry["auc"] = {{"healthy", cm.auc[0]},
                        {"asthma", cm.auc[1]},
                        {"fibrosis", cm.auc[2]},
                        {"macro", cm.macro_auc}};
        metrics["classifiers"][name] = entry;

        save_model(res.models.at(kind), out_path("model_" + name + ".json"));
        write_roc_csv(res.rocs.at(kind), out_path("roc_" + name + ".csv"));
        const RegionGrid region = decision_region_grid(res.models.at(kind), bounds,
                                                       cfg.region_resolution, cfg.exec);
        write_region_csv(region, out_path("region_" + name + ".csv"));
    }
    write_file(out_path("metrics.json"), metrics.dump(2) + "\n");

    // Fit times go to their own artifact: wall-clock readings would break the
    // byte-identical rerun contract of metrics.json.
    DataMatrix x_train(res.split.train.size(), res.x_all.cols);
    std::vector<int> y_train(res.split.train.size());
    for (std::size_t k = 0; k < res.split.train.size(); ++k) {
        const double* src = res.x_all.row(res.split.train[k]);
        std::copy(src, src + res.x_all.cols, x_train.row(k));
        y_train[k] = res.y_all[res.split.train[k]];
    }
    const DataMatrix x_train_scaled = apply_scaler(res.scaler, x_train);
    LearnConfig learn_cfg = cfg.learn;
    learn_cfg.perceptron.seed = derive_seed(cfg.seed, kStagePerceptron);
    learn_cfg.forest.seed = derive_seed(cfg.seed, kStageForest);
    const TimingReport timing = time_training(
        x_train_scaled, y_train, res.scaler,
        std::vector<ClassifierKind>(kAllClassifiers.begin(), kAllClassifiers.end()),
        learn_cfg, cfg.timing_repetitions);
    json timing_doc;
    timing_doc["format_version"] = 1;
    timing_doc["repetitions"] = cfg.timing_repetitions;
    for (const TimingEntry& entry : timing.entries) {
        timing_doc["median_fit_seconds"][classifier_name(entry.kind)] = entry.median_seconds;
    }
    write_file(out_path("timing.json"), timing_doc.dump(2) + "\n");

    write_manifest(cfg, "pipeline", artifacts);
    return artifacts;
}

}  // namespace tidalsim
