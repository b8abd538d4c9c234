#include "tidalsim/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tidalsim/rng.hpp"

namespace tidalsim {

SplitIndices split_dataset(const std::vector<int>& labels, double test_fraction,
                           std::uint64_t seed) {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw std::invalid_argument("test_fraction must lie strictly between 0 and 1");
    }
    std::array<std::vector<std::size_t>, kNumClasses> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int c = labels[i];
        if (c < 0 || c >= kNumClasses) {
            throw std::invalid_argument("label out of range in split_dataset");
        }
        members[static_cast<std::size_t>(c)].push_back(i);
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        if (members[c].size() < 5) {
            throw std::invalid_argument("every class needs at least five samples to split");
        }
    }

    SplitIndices split;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        auto& m = members[c];
        Rng rng = Rng::stream(seed, c);
        rng.shuffle(m);
        const auto n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(m.size())));
        for (std::size_t k = 0; k < m.size(); ++k) {
            (k < n_test ? split.test : split.train).push_back(m[k]);
        }
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size() || y_true.empty()) {
        throw std::invalid_argument("accuracy needs two equal-length nonempty label vectors");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        hits += (y_true[i] == y_pred[i]) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

namespace {

/// TPR of a staircase curve at a given FPR by linear interpolation; vertical
/// jumps report the upper value.
double tpr_at(const std::vector<std::pair<double, double>>& curve, double fpr) {
    if (fpr <= curve.front().first) return curve.front().second;
    if (fpr >= curve.back().first) return curve.back().second;
    // Last index with curve[i].fpr <= fpr.
    std::size_t i = 0;
    for (std::size_t k = 0; k < curve.size(); ++k) {
        if (curve[k].first <= fpr) i = k;
    }
    if (curve[i].first == fpr) return curve[i].second;
    const auto& [x0, y0] = curve[i];
    const auto& [x1, y1] = curve[i + 1];
    return y0 + (y1 - y0) * (fpr - x0) / (x1 - x0);
}

}  // namespace

RocCurve roc_macro(const std::vector<std::array<double, kNumClasses>>& scores,
                   const std::vector<int>& y_true) {
    if (scores.size() != y_true.size() || scores.empty()) {
        throw std::invalid_argument("roc_macro needs equal-length nonempty inputs");
    }
    std::array<std::size_t, kNumClasses> positives{};
    for (const int c : y_true) {
        if (c < 0 || c >= kNumClasses) {
            throw std::invalid_argument("label out of range in roc_macro");
        }
        ++positives[static_cast<std::size_t>(c)];
    }
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        if (positives[c] == 0 || positives[c] == y_true.size()) {
            throw std::invalid_argument("each class needs positives and negatives for ROC");
        }
    }

    RocCurve roc;
    for (std::size_t c = 0; c < kNumClasses; ++c) {
        const std::size_t n_pos = positives[c];
        const std::size_t n_neg = y_true.size() - n_pos;

        std::vector<std::size_t> order(y_true.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double sa = scores[a][c];
            const double sb = scores[b][c];
            return sa > sb || (sa == sb && a < b);
        });

        auto& curve = roc.points[c];
        curve.emplace_back(0.0, 0.0);
        std::size_t tp = 0;
        std::size_t fp = 0;
        std::size_t k = 0;
        while (k < order.size()) {
            // Consume a whole group of tied scores before emitting a point.
            const double value = scores[order[k]][c];
            while (k < order.size() && scores[order[k]][c] == value) {
                if (y_true[order[k]] == static_cast<int>(c)) {
                    ++tp;
                } else {
                    ++fp;
                }
                ++k;
            }
            curve.emplace_back(static_cast<double>(fp) / static_cast<double>(n_neg),
                               static_cast<double>(tp) / static_cast<double>(n_pos));
        }

        double auc = 0.0;
        for (std::size_t i = 1; i < curve.size(); ++i) {
            auc += (curve[i].first - curve[i - 1].first) *
                   (curve[i].second + curve[i - 1].second) / 2.0;
        }
        roc.auc[c] = auc;
    }

    roc.macro_fpr.resize(101);
    roc.macro_tpr.resize(101);
    for (std::size_t g = 0; g <= 100; ++g) {
        const double fpr = static_cast<double>(g) / 100.0;
        roc.macro_fpr[g] = fpr;
        double sum = 0.0;
        for (std::size_t c = 0; c < kNumClasses; ++c) sum += tpr_at(roc.points[c], fpr);
        roc.macro_tpr[g] = sum / static_cast<double>(kNumClasses);
    }
    roc.macro_auc = (roc.auc[0] + roc.auc[1] + roc.auc[2]) / 3.0;
    return roc;
}

Bounds2 padded_bounds(const DataMatrix& x, double pad) {
    if (x.rows == 0 || x.cols < 2) {
        throw std::invalid_argument("padded_bounds needs a nonempty two-column matrix");
    }
    Bounds2 b{x.at(0, 0), x.at(0, 0), x.at(0, 1), x.at(0, 1)};
    for (std::size_t i = 1; i < x.rows; ++i) {
        b.x_min = std::min(b.x_min, x.at(i, 0));
        b.x_max = std::max(b.x_max, x.at(i, 0));
        b.y_min = std::min(b.y_min, x.at(i, 1));
        b.y_max = std::max(b.y_max, x.at(i, 1));
    }
    const double dx = (b.x_max - b.x_min) * pad;
    const double dy = (b.y_max - b.y_min) * pad;
    return {b.x_min - dx, b.x_max + dx, b.y_min - dy, b.y_max + dy};
}

double RegionGrid::x_center(std::size_t col) const {
    const double w = (bounds.x_max - bounds.x_min) / static_cast<double>(resolution);
    return bounds.x_min + (static_cast<double>(col) + 0.5) * w;
}

double RegionGrid::y_center(std::size_t row) const {
    const double h = (bounds.y_max - bounds.y_min) / static_cast<double>(resolution);
    return bounds.y_min + (static_cast<double>(row) + 0.5) * h;
}

RegionGrid decision_region_grid(const TrainedModel& m, const Bounds2& bounds,
                                std::size_t resolution, ExecMode mode) {
    if (resolution == 0) {
        throw std::invalid_argument("grid resolution must be positive");
    }
    if (!(bounds.x_min < bounds.x_max) || !(bounds.y_min < bounds.y_max)) {
        throw std::invalid_argument("degenerate region bounds");
    }
    RegionGrid grid;
    grid.bounds = bounds;
    grid.resolution = resolution;
    grid.labels.assign(resolution * resolution, 0);
    parallel_for(resolution, mode, [&](std::size_t row) {
        const double y = grid.y_center(row);
        for (std::size_t col = 0; col < resolution; ++col) {
            const double x[2] = {grid.x_center(col), y};
            grid.labels[row * resolution + col] = static_cast<int>(predict(m, x, 2));
        }
    });
    return grid;
}

TimingReport time_training(const DataMatrix& x_scaled, const std::vector<int>& y,
                           const ScalerParams& scaler,
                           const std::vector<ClassifierKind>& kinds,
                           const LearnConfig& cfg, int repetitions) {
    if (repetitions < 1) {
        throw std::invalid_argument("timing needs at least one repetition");
    }
    using clock = std::chrono::steady_clock;
    TimingReport report;
    for (const ClassifierKind kind : kinds) {
        // Warm-up fit, not recorded.
        train_classifier(kind, x_scaled, y, scaler, cfg, ExecMode::Serial);
        std::vector<double> secs(static_cast<std::size_t>(repetitions));
        for (int r = 0; r < repetitions; ++r) {
            const auto t0 = clock::now();
            train_classifier(kind, x_scaled, y, scaler, cfg, ExecMode::Serial);
            const auto t1 = clock::now();
            secs[static_cast<std::size_t>(r)] =
                std::chrono::duration<double>(t1 - t0).count();
        }
        std::sort(secs.begin(), secs.end());
        const std::size_t n = secs.size();
        const double median =
            (n % 2 == 1) ? secs[n / 2] : (secs[n / 2 - 1] + secs[n / 2]) / 2.0;
        report.entries.push_back({kind, median, repetitions});
    }
    return report;
}

}  // namespace tidalsim
