#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "tidalsim/cohort.hpp"
#include "tidalsim/features.hpp"
#include "tidalsim/parallel.hpp"

namespace tidalsim {

/// Dense row-major matrix of doubles; the sample matrix everywhere below.
struct DataMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    DataMatrix() = default;
    DataMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double* row(std::size_t i) { return values.data() + i * cols; }
    const double* row(std::size_t i) const { return values.data() + i * cols; }
    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    static DataMatrix from_features(const std::vector<FeatureVector>& fv);
};

/// Per-feature standardization parameters fit on training data only.
struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> std;
};

/// Mean/population-std per column; std components are floored at 1e-12 so a
/// constant column scales to exact zeros instead of blowing up.
ScalerParams fit_scaler(const DataMatrix& x);
DataMatrix apply_scaler(const ScalerParams& sp, const DataMatrix& x);
void apply_scaler_row(const ScalerParams& sp, const double* x, double* out);

// ---------------------------------------------------------------------------
// Model parameter payloads. All are plain aggregates so tests can assemble
// them directly and serialization stays trivial.
// ---------------------------------------------------------------------------

/// Gaussian naive Bayes: per-class priors and per-class/per-feature Gaussian
/// moments. Variances are smoothed by 1e-9 times the largest per-feature
/// variance of the training data.
struct GaussianNbModel {
    std::size_t dims = 0;
    std::array<double, kNumClasses> prior{};
    std::vector<double> mean;  // [class * dims + feature]
    std::vector<double> var;   // same layout, smoothing included
};

/// Multinomial logistic regression, weights row-major [class][feature] with a
/// separate bias per class. L2 penalty (l2/2)*||w||^2 on weights only.
struct LogisticModel {
    std::size_t dims = 0;
    std::vector<double> weights;  // [class * dims + feature]
    std::array<double, kNumClasses> bias{};
    bool converged = false;
    int iterations = 0;
};

/// One-vs-rest pool of perceptrons sharing the update
/// w <- w + eta*(y - y_hat)*x with y, y_hat in {0, 1}.
struct PerceptronModel {
    std::size_t dims = 0;
    std::vector<double> weights;  // [class * dims + feature]
    std::array<double, kNumClasses> bias{};
    bool converged = false;  // true if every binary problem hit a clean epoch
    int epochs_run = 0;      // max over the binary problems
};

/// One binary soft-margin SVM of the one-vs-rest pool.
struct BinarySvm {
    std::vector<std::size_t> support_indices;  // rows of the training matrix
    std::vector<double> coeff;                 // alpha_i * y_i per support vector
    double bias = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
};

/// RBF-kernel SVM, one-vs-rest. Stores its own copy of the support rows so a
/// saved model is self-contained.
struct SvmModel {
    std::size_t dims = 0;
    double gamma = 1.0;
    double c = 1.0;
    DataMatrix support;  // union of support vectors, rows referenced below
    std::array<BinarySvm, kNumClasses> ovr;
};

/// Decision tree node; feature < 0 marks a leaf carrying class proportions.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::array<double, kNumClasses> proportions{};
};

struct Tree {
    std::vector<TreeNode> nodes;  // node 0 is the root
};

/// Random forest of CART-style trees scored by averaging leaf proportions.
struct ForestModel {
    std::size_t dims = 0;
    std::vector<Tree> trees;
};

using ModelVariant =
    std::variant<GaussianNbModel, LogisticModel, PerceptronModel, SvmModel, ForestModel>;

enum class ClassifierKind { GaussianNb, Logistic, Perceptron, SvmRbf, RandomForest };

const char* classifier_name(ClassifierKind kind);
ClassifierKind parse_classifier(std::string_view name);

/// A fitted classifier bundled with the standardization that produced its
/// training matrix. predict/score take raw feature vectors and apply the
/// scaler internally.
struct TrainedModel {
    ScalerParams scaler;
    ModelVariant model;

    ClassifierKind kind() const;
};

// ---------------------------------------------------------------------------
// Fits. All fit functions expect the scaled training matrix.
// ---------------------------------------------------------------------------

GaussianNbModel fit_gaussian_nb(const DataMatrix& x, const std::vector<int>& y);

struct LogisticConfig {
    double l2 = 1.0;      // penalty strength on weights (biases unpenalized)
    double tol = 1e-8;    // max-norm of the gradient at convergence
    int max_iter = 100;
};

LogisticModel fit_logistic(const DataMatrix& x, const std::vector<int>& y,
                           const LogisticConfig& cfg = {});

struct PerceptronConfig {
    double eta = 1.0;
    int max_epochs = 1000;
    std::uint64_t seed = 0;  // epoch shuffles are deterministic in this seed
};

PerceptronModel fit_perceptron(const DataMatrix& x, const std::vector<int>& y,
                               const PerceptronConfig& cfg = {});

struct SvmConfig {
    double gamma = 1.0;
    double c = 1.0;
    double tol = 1e-6;  // KKT violation tolerance of the dual solver
    std::size_t max_iter = 500'000;
};

SvmModel fit_svm_rbf(const DataMatrix& x, const std::vector<int>& y,
                     const SvmConfig& cfg = {});

struct ForestConfig {
    int n_trees = 100;
    std::uint64_t seed = 0;
    bool all_features = false;  // false: ceil(sqrt(d)) random features per split
    bool bootstrap = true;
};

ForestModel fit_random_forest(const DataMatrix& x, const std::vector<int>& y,
                              const ForestConfig& cfg = {},
                              ExecMode mode = ExecMode::Serial);

/// Weighted Gini impurity of a label multiset given per-class counts.
double gini_impurity(const std::array<double, kNumClasses>& counts);

struct LearnConfig {
    LogisticConfig logistic;
    PerceptronConfig perceptron;
    SvmConfig svm;
    ForestConfig forest;
};

/// Fits one classifier on the scaled matrix and bundles it with the scaler.
TrainedModel train_classifier(ClassifierKind kind, const DataMatrix& x_scaled,
                              const std::vector<int>& y, const ScalerParams& scaler,
                              const LearnConfig& cfg, ExecMode mode = ExecMode::Serial);

// ---------------------------------------------------------------------------
// Inference.
// ---------------------------------------------------------------------------

/// Per-class scores for a raw (unscaled) sample. Probabilistic models return
/// probabilities summing to one; perceptron and SVM return margins.
std::array<double, kNumClasses> score(const TrainedModel& m, const double* x,
                                      std::size_t dims);
std::array<double, kNumClasses> score(const TrainedModel& m, const FeatureVector& fv);

/// Argmax of score, ties broken toward the smaller class index
/// (healthy < asthma < fibrosis).
Label predict(const TrainedModel& m, const double* x, std::size_t dims);
Label predict(const TrainedModel& m, const FeatureVector& fv);

// ---------------------------------------------------------------------------
// Hyper-parameter search.
// ---------------------------------------------------------------------------

struct GridSearchResult {
    std::vector<double> gammas;
    std::vector<double> cs;
    std::vector<double> accuracy;  // [gamma index * cs.size() + c index]
    std::size_t best_gamma_index = 0;
    std::size_t best_c_index = 0;
    double best_accuracy = 0.0;

    double at(std::size_t gi, std::size_t ci) const { return accuracy[gi * cs.size() + ci]; }
};

/// Stratified k-fold cross-validated accuracy of the RBF SVM over a
/// (gamma, C) grid. One shared folding (keyed by seed) is used for every
/// cell; ties on the best cell break toward smaller C, then smaller gamma.
GridSearchResult grid_search_svm(const DataMatrix& x, const std::vector<int>& y,
                                 const std::vector<double>& gammas,
                                 const std::vector<double>& cs, int folds,
                                 std::uint64_t seed, double svm_tol = 1e-6,
                                 ExecMode mode = ExecMode::Serial);

// ---------------------------------------------------------------------------
// Serialization: single self-describing JSON document per model.
// ---------------------------------------------------------------------------

std::string model_to_json(const TrainedModel& m);
TrainedModel model_from_json(const std::string& text);
void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace tidalsim
