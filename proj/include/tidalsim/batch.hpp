#pragma once

#include <vector>

#include "tidalsim/cohort.hpp"
#include "tidalsim/features.hpp"
#include "tidalsim/lung_model.hpp"
#include "tidalsim/parallel.hpp"

namespace tidalsim {

/// Simulates one subject (canonical split of its equivalent parameters) and
/// extracts the (mu, sigma) features.
FeatureVector simulate_subject_features(const Subject& subject, const SimConfig& sim);

/// Batch kernel over a whole cohort; subjects are independent, so Parallel
/// mode distributes them over OpenMP threads and must match Serial bit for
/// bit.
std::vector<FeatureVector> cohort_features(const std::vector<Subject>& subjects,
                                           const SimConfig& sim,
                                           ExecMode mode = ExecMode::Serial);

}  // namespace tidalsim
