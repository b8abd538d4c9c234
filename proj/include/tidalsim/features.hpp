#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tidalsim/lung_model.hpp"

namespace tidalsim {

/// Summary statistics of a volume signal over the post-transient window:
/// mu is the arithmetic mean, sigma the population standard deviation.
struct FeatureVector {
    double mu = 0.0;
    double sigma = 0.0;
};

/// Computes (mu, sigma) over all samples with t >= grid.transient_cutoff.
/// Throws std::invalid_argument if fewer than two samples remain.
FeatureVector extract_features(const VolumeSignal& sig);

/// Air flow dV/dt by central differences; one-sided at both ends. Exact on
/// linear signals, O(dt^2) elsewhere.
std::vector<double> flow(const VolumeSignal& sig);

/// Ordered (x, y) curve restricted to the post-transient window.
struct LoopCurve {
    std::string kind;  // "pressure-volume" or "flow-volume"
    std::vector<std::pair<double, double>> points;
};

/// Pressure-volume loop: x = P(t), y = V(t) for t >= transient_cutoff.
LoopCurve pv_loop(const VolumeSignal& sig, const PressureProfile& pp);

/// Flow-volume loop: x = V(t), y = dV/dt for t >= transient_cutoff.
LoopCurve fv_loop(const VolumeSignal& sig);

}  // namespace tidalsim
