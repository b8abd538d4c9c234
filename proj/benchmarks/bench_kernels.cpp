// Serial vs OpenMP-parallel comparison of the batch kernels.

#include <benchmark/benchmark.h>

#include "tidalsim/batch.hpp"
#include "tidalsim/eval.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/pipeline.hpp"
#include "tidalsim/validity.hpp"

namespace {

using namespace tidalsim;

std::vector<Subject> bench_cohort(std::size_t n_per_class) {
    CohortConfig cfg;
    cfg.specs = default_class_specs(Preset::Reproduction);
    cfg.n_per_class = n_per_class;
    cfg.seed = 7;
    return generate_cohort(cfg);
}

const SimConfig kSim{};

void BM_CohortFeatures(benchmark::State& state, ExecMode mode) {
    const auto subjects = bench_cohort(64);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cohort_features(subjects, kSim, mode));
    }
}

struct FitData {
    DataMatrix x;
    std::vector<int> y;
};

FitData bench_features() {
    const auto subjects = bench_cohort(150);
    const auto features = cohort_features(subjects, kSim, ExecMode::Parallel);
    FitData data;
    data.x = DataMatrix::from_features(features);
    data.y.resize(subjects.size());
    for (std::size_t i = 0; i < subjects.size(); ++i) {
        data.y[i] = static_cast<int>(subjects[i].label);
    }
    const ScalerParams scaler = fit_scaler(data.x);
    data.x = apply_scaler(scaler, data.x);
    return data;
}

void BM_ForestFit(benchmark::State& state, ExecMode mode) {
    static const FitData data = bench_features();
    ForestConfig cfg;
    cfg.n_trees = 50;
    cfg.seed = 11;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_random_forest(data.x, data.y, cfg, mode));
    }
}

void BM_RegionGrid(benchmark::State& state, ExecMode mode) {
    static const FitData data = bench_features();
    static const ScalerParams scaler = fit_scaler(data.x);
    static const TrainedModel model =
        train_classifier(ClassifierKind::GaussianNb, data.x, data.y, scaler, {});
    const Bounds2 bounds = padded_bounds(data.x, 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decision_region_grid(model, bounds, 150, mode));
    }
}

void BM_BoundaryMap(benchmark::State& state, ExecMode mode) {
    const ParamRectangle rect;
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_rectangle_boundary(rect, kSim, 16, mode));
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CohortFeatures, serial, ExecMode::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CohortFeatures, parallel, ExecMode::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ForestFit, serial, ExecMode::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ForestFit, parallel, ExecMode::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RegionGrid, serial, ExecMode::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RegionGrid, parallel, ExecMode::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BoundaryMap, serial, ExecMode::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BoundaryMap, parallel, ExecMode::Parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
