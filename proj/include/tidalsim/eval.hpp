#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "tidalsim/learn.hpp"

namespace tidalsim {

/// Deterministic stratified train/test split; per-class test counts are the
/// rounded test share of the class size.
struct SplitIndices {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Throws std::invalid_argument if test_fraction is outside (0, 1) or any
/// class holds fewer than five samples.
SplitIndices split_dataset(const std::vector<int>& labels, double test_fraction,
                           std::uint64_t seed);

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred);

/// One-vs-rest ROC analysis of per-class scores.
struct RocCurve {
    /// Staircase points (fpr, tpr) per class, from (0,0) to (1,1).
    std::array<std::vector<std::pair<double, double>>, kNumClasses> points;
    std::array<double, kNumClasses> auc{};
    /// Macro-average curve on a fixed 101-point FPR grid.
    std::vector<double> macro_fpr;
    std::vector<double> macro_tpr;
    /// Mean of the per-class AUCs.
    double macro_auc = 0.0;
};

RocCurve roc_macro(const std::vector<std::array<double, kNumClasses>>& scores,
                   const std::vector<int>& y_true);

struct Bounds2 {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

/// Bounding box of the first two columns, padded by pad times the range on
/// each side.
Bounds2 padded_bounds(const DataMatrix& x, double pad = 0.1);

/// Dense class map over a rectangle: labels[row * resolution + col] is the
/// prediction at the center of cell (row, col), row indexing the y axis.
struct RegionGrid {
    Bounds2 bounds;
    std::size_t resolution = 0;
    std::vector<int> labels;

    double x_center(std::size_t col) const;
    double y_center(std::size_t row) const;
};

RegionGrid decision_region_grid(const TrainedModel& m, const Bounds2& bounds,
                                std::size_t resolution = 300,
                                ExecMode mode = ExecMode::Serial);

struct TimingEntry {
    ClassifierKind kind = ClassifierKind::GaussianNb;
    double median_seconds = 0.0;
    int repetitions = 0;
};

struct TimingReport {
    std::vector<TimingEntry> entries;  // in the order requested
};

/// Median wall-clock fit time per classifier over `repetitions` runs after
/// one discarded warm-up fit. Runs strictly sequentially on a single thread
/// of execution so numbers stay comparable.
TimingReport time_training(const DataMatrix& x_scaled, const std::vector<int>& y,
                           const ScalerParams& scaler,
                           const std::vector<ClassifierKind>& kinds,
                           const LearnConfig& cfg, int repetitions = 5);

}  // namespace tidalsim
