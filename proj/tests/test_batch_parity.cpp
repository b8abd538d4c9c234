#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <vector>

#include "tidalsim/batch.hpp"
#include "tidalsim/cohort.hpp"
#include "tidalsim/eval.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/lung_model.hpp"
#include "tidalsim/parallel.hpp"
#include "tidalsim/validity.hpp"

using namespace tidalsim;

namespace {

std::vector<Subject> parity_cohort(ExecMode mode) {
    CohortConfig cfg;
    cfg.specs = default_class_specs(Preset::Reproduction);
    cfg.n_per_class = 40;
    cfg.seed = 5;
    return generate_cohort(cfg, mode);
}

struct FitData {
    DataMatrix x;
    std::vector<int> y;
};

FitData parity_features(ExecMode mode) {
    const std::vector<Subject> subjects = parity_cohort(ExecMode::Serial);
    const SimConfig sim;
    FitData out;
    out.x = DataMatrix::from_features(cohort_features(subjects, sim, mode));
    out.y.reserve(subjects.size());
    for (const Subject& s : subjects) out.y.push_back(static_cast<int>(s.label));
    return out;
}

}  // namespace

TEST_CASE("parallel mode reports at least one worker thread") {
    REQUIRE(thread_count() >= 1);
}

TEST_CASE("cohort generation is schedule-independent") {
    const std::vector<Subject> serial = parity_cohort(ExecMode::Serial);
    const std::vector<Subject> parallel = parity_cohort(ExecMode::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].id == parallel[i].id);
        REQUIRE(serial[i].label == parallel[i].label);
        REQUIRE(serial[i].eq.r_eq == parallel[i].eq.r_eq);
        REQUIRE(serial[i].eq.e_eq == parallel[i].eq.e_eq);
    }
}

TEST_CASE("cohort feature extraction matches bit for bit across modes") {
    const std::vector<Subject> subjects = parity_cohort(ExecMode::Serial);
    const SimConfig sim;
    const std::vector<FeatureVector> serial =
        cohort_features(subjects, sim, ExecMode::Serial);
    const std::vector<FeatureVector> parallel =
        cohort_features(subjects, sim, ExecMode::Parallel);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].mu == parallel[i].mu);
        REQUIRE(serial[i].sigma == parallel[i].sigma);
    }
}

TEST_CASE("random forest training matches bit for bit across modes") {
    const FitData data = parity_features(ExecMode::Serial);
    const ScalerParams sp = fit_scaler(data.x);
    const DataMatrix xs = apply_scaler(sp, data.x);
    ForestConfig cfg;
    cfg.n_trees = 50;
    cfg.seed = 17;
    const ForestModel serial = fit_random_forest(xs, data.y, cfg, ExecMode::Serial);
    const ForestModel parallel = fit_random_forest(xs, data.y, cfg, ExecMode::Parallel);
    REQUIRE(model_to_json(TrainedModel{sp, serial}) ==
            model_to_json(TrainedModel{sp, parallel}));
}

TEST_CASE("SVM grid search matches bit for bit across modes") {
    const FitData data = parity_features(ExecMode::Serial);
    const ScalerParams sp = fit_scaler(data.x);
    const DataMatrix xs = apply_scaler(sp, data.x);
    const std::vector<double> gammas = {0.5, 2.0};
    const std::vector<double> cs = {1.0, 10.0};
    const GridSearchResult serial =
        grid_search_svm(xs, data.y, gammas, cs, 3, 11, 1e-6, ExecMode::Serial);
    const GridSearchResult parallel =
        grid_search_svm(xs, data.y, gammas, cs, 3, 11, 1e-6, ExecMode::Parallel);
    REQUIRE(serial.accuracy == parallel.accuracy);
    REQUIRE(serial.best_gamma_index == parallel.best_gamma_index);
    REQUIRE(serial.best_c_index == parallel.best_c_index);
    REQUIRE(serial.best_accuracy == parallel.best_accuracy);
}

TEST_CASE("decision region rasterization matches bit for bit across modes") {
    const FitData data = parity_features(ExecMode::Serial);
    const ScalerParams sp = fit_scaler(data.x);
    const TrainedModel tm = train_classifier(ClassifierKind::GaussianNb,
                                             apply_scaler(sp, data.x), data.y, sp, {});
    const Bounds2 b = padded_bounds(data.x);
    const RegionGrid serial = decision_region_grid(tm, b, 64, ExecMode::Serial);
    const RegionGrid parallel = decision_region_grid(tm, b, 64, ExecMode::Parallel);
    REQUIRE(serial.labels == parallel.labels);
}

TEST_CASE("validity boundary mapping matches bit for bit across modes") {
    const SimConfig sim;
    const FeaturePolygon serial =
        map_rectangle_boundary(ParamRectangle{}, sim, 16, ExecMode::Serial);
    const FeaturePolygon parallel =
        map_rectangle_boundary(ParamRectangle{}, sim, 16, ExecMode::Parallel);
    REQUIRE(serial.vertices.size() == parallel.vertices.size());
    for (std::size_t i = 0; i < serial.vertices.size(); ++i) {
        REQUIRE(serial.vertices[i].mu == parallel.vertices[i].mu);
        REQUIRE(serial.vertices[i].sigma == parallel.vertices[i].sigma);
    }

    const ClassEllipse ellipse = class_ellipse(default_class_specs(Preset::Reproduction)[1]);
    const std::vector<FeatureVector> ring_s =
        map_ellipse(ellipse, sim, 32, PositivityFloors{}, ExecMode::Serial);
    const std::vector<FeatureVector> ring_p =
        map_ellipse(ellipse, sim, 32, PositivityFloors{}, ExecMode::Parallel);
    REQUIRE(ring_s.size() == ring_p.size());
    for (std::size_t i = 0; i < ring_s.size(); ++i) {
        REQUIRE(ring_s[i].mu == ring_p[i].mu);
        REQUIRE(ring_s[i].sigma == ring_p[i].sigma);
    }
}
