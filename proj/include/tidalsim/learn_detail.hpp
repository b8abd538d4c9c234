#pragma once

#include <array>

#include "tidalsim/learn.hpp"

namespace tidalsim::detail {

/// Checks sizes, label range and that every class occurs; returns per-class
/// counts.
std::array<std::size_t, kNumClasses> validate_labels(const DataMatrix& x,
                                                     const std::vector<int>& y);

// Scorers over an already-scaled sample row (dims checked by the caller).
std::array<double, kNumClasses> score_gaussian_nb(const GaussianNbModel& m, const double* x);
std::array<double, kNumClasses> score_logistic(const LogisticModel& m, const double* x);
std::array<double, kNumClasses> score_perceptron(const PerceptronModel& m, const double* x);
std::array<double, kNumClasses> score_svm(const SvmModel& m, const double* x);
std::array<double, kNumClasses> score_forest(const ForestModel& m, const double* x);

/// RBF kernel between two rows.
double rbf_kernel(const double* a, const double* b, std::size_t dims, double gamma);

/// Sequential-minimal-optimization solver for one binary soft-margin problem:
///   min_alpha 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij - sum_i alpha_i
///   s.t. 0 <= alpha_i <= C, sum_i y_i alpha_i = 0.
/// Pair selection follows the maximal-violating-pair rule; the stopping
/// criterion is the KKT violation gap m(alpha) - M(alpha) <= tol. Exposed so
/// the dual-oracle tests can drive a single binary problem directly.
struct SmoResult {
    std::vector<double> alpha;
    double bias = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

SmoResult solve_binary_smo(const std::vector<double>& kernel, std::size_t n,
                           const std::vector<double>& y, double c, double tol,
                           std::size_t max_iter);

/// Negative log-likelihood plus L2 penalty of a logistic parameter vector,
/// exposed for the finite-difference gradient test.
double logistic_loss(const DataMatrix& x, const std::vector<int>& y,
                     const std::vector<double>& weights,
                     const std::array<double, kNumClasses>& bias, double l2);

void logistic_gradient(const DataMatrix& x, const std::vector<int>& y,
                       const std::vector<double>& weights,
                       const std::array<double, kNumClasses>& bias, double l2,
                       std::vector<double>& grad_w,
                       std::array<double, kNumClasses>& grad_b);

}  // namespace tidalsim::detail
