#include "tidalsim/batch.hpp"

#include <exception>

namespace tidalsim {

FeatureVector simulate_subject_features(const Subject& subject, const SimConfig& sim) {
    const LungParams p = split_equivalent(subject.eq);
    return extract_features(simulate_bi(p, sim.pressure, sim.grid));
}

std::vector<FeatureVector> cohort_features(const std::vector<Subject>& subjects,
                                           const SimConfig& sim, ExecMode mode) {
    sim.validate();
    std::vector<FeatureVector> features(subjects.size());
    std::exception_ptr error;
    parallel_for(subjects.size(), mode, [&](std::size_t i) {
        try {
            features[i] = simulate_subject_features(subjects[i], sim);
        } catch (...) {
#pragma omp critical
            error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return features;
}

}  // namespace tidalsim
