#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tidalsim/error.hpp"
#include "tidalsim/learn.hpp"
#include "tidalsim/learn_detail.hpp"

namespace tidalsim {

DataMatrix DataMatrix::from_features(const std::vector<FeatureVector>& fv) {
    DataMatrix m(fv.size(), 2);
    for (std::size_t i = 0; i < fv.size(); ++i) {
        m.at(i, 0) = fv[i].mu;
        m.at(i, 1) = fv[i].sigma;
    }
    return m;
}

namespace detail {

std::array<std::size_t, kNumClasses> validate_labels(const DataMatrix& x,
                                                     const std::vector<int>& y) {
    if (x.rows != y.size()) {
        throw std::invalid_argument("sample matrix and label vector disagree on length");
    }
    if (x.rows == 0 || x.cols == 0) {
        throw FitError("cannot fit on an empty sample matrix");
    }
    std::array<std::size_t, kNumClasses> counts{};
    for (const int label : y) {
        if (label < 0 || label >= kNumClasses) {
            throw std::invalid_argument("label out of range: " + std::to_string(label));
        }
        ++counts[static_cast<std::size_t>(label)];
    }
    for (int c = 0; c < kNumClasses; ++c) {
        if (counts[static_cast<std::size_t>(c)] == 0) {
            throw FitError(std::string("training data misses class '") +
                           label_name(static_cast<Label>(c)) + "'");
        }
    }
    return counts;
}

}  // namespace detail

ScalerParams fit_scaler(const DataMatrix& x) {
    if (x.rows == 0 || x.cols == 0) {
        throw std::invalid_argument("cannot fit a scaler on an empty matrix");
    }
    constexpr double kStdFloor = 1e-12;
    ScalerParams sp;
    sp.mean.assign(x.cols, 0.0);
    sp.std.assign(x.cols, 0.0);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) sp.mean[j] += row[j];
    }
    for (std::size_t j = 0; j < x.cols; ++j) sp.mean[j] /= static_cast<double>(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* row = x.row(i);
        for (std::size_t j = 0; j < x.cols; ++j) {
            const double d = row[j] - sp.mean[j];
            sp.std[j] += d * d;
        }
    }
    for (std::size_t j = 0; j < x.cols; ++j) {
        sp.std[j] = std::max(std::sqrt(sp.std[j] / static_cast<double>(x.rows)), kStdFloor);
    }
    return sp;
}

void apply_scaler_row(const ScalerParams& sp, const double* x, double* out) {
    for (std::size_t j = 0; j < sp.mean.size(); ++j) {
        out[j] = (x[j] - sp.mean[j]) / sp.std[j];
    }
}

DataMatrix apply_scaler(const ScalerParams& sp, const DataMatrix& x) {
    if (sp.mean.size() != x.cols || sp.std.size() != x.cols) {
        throw std::invalid_argument("scaler dimensionality does not match the matrix");
    }
    DataMatrix out(x.rows, x.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        apply_scaler_row(sp, x.row(i), out.row(i));
    }
    return out;
}

const char* classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::GaussianNb: return "gaussian_nb";
        case ClassifierKind::Logistic: return "logistic";
        case ClassifierKind::Perceptron: return "perceptron";
        case ClassifierKind::SvmRbf: return "svm_rbf";
        case ClassifierKind::RandomForest: return "random_forest";
    }
    throw std::invalid_argument("unknown classifier kind");
}

ClassifierKind parse_classifier(std::string_view name) {
    if (name == "gaussian_nb") return ClassifierKind::GaussianNb;
    if (name == "logistic") return ClassifierKind::Logistic;
    if (name == "perceptron") return ClassifierKind::Perceptron;
    if (name == "svm_rbf") return ClassifierKind::SvmRbf;
    if (name == "random_forest") return ClassifierKind::RandomForest;
    throw std::invalid_argument("unknown classifier '" + std::string(name) + "'");
}

ClassifierKind TrainedModel::kind() const {
    switch (model.index()) {
        case 0: return ClassifierKind::GaussianNb;
        case 1: return ClassifierKind::Logistic;
        case 2: return ClassifierKind::Perceptron;
        case 3: return ClassifierKind::SvmRbf;
        case 4: return ClassifierKind::RandomForest;
    }
    throw std::logic_error("valueless model variant");
}

TrainedModel train_classifier(ClassifierKind kind, const DataMatrix& x_scaled,
                              const std::vector<int>& y, const ScalerParams& scaler,
                              const LearnConfig& cfg, ExecMode mode) {
    TrainedModel m;
    m.scaler = scaler;
    switch (kind) {
        case ClassifierKind::GaussianNb:
            m.model = fit_gaussian_nb(x_scaled, y);
            break;
        case ClassifierKind::Logistic:
            m.model = fit_logistic(x_scaled, y, cfg.logistic);
            break;
        case ClassifierKind::Perceptron:
            m.model = fit_perceptron(x_scaled, y, cfg.perceptron);
            break;
        case ClassifierKind::SvmRbf:
            m.model = fit_svm_rbf(x_scaled, y, cfg.svm);
            break;
        case ClassifierKind::RandomForest:
            m.model = fit_random_forest(x_scaled, y, cfg.forest, mode);
            break;
    }
    return m;
}

namespace {

struct ScoreVisitor {
    const double* x;  // already scaled
    std::size_t dims;

    std::array<double, kNumClasses> operator()(const GaussianNbModel& m) const {
        return detail::score_gaussian_nb(m, x);
    }
    std::array<double, kNumClasses> operator()(const LogisticModel& m) const {
        return detail::score_logistic(m, x);
    }
    std::array<double, kNumClasses> operator()(const PerceptronModel& m) const {
        return detail::score_perceptron(m, x);
    }
    std::array<double, kNumClasses> operator()(const SvmModel& m) const {
        return detail::score_svm(m, x);
    }
    std::array<double, kNumClasses> operator()(const ForestModel& m) const {
        return detail::score_forest(m, x);
    }
};

std::size_t model_dims(const ModelVariant& model) {
    return std::visit([](const auto& m) { return m.dims; }, model);
}

}  // namespace

std::array<double, kNumClasses> score(const TrainedModel& m, const double* x,
                                      std::size_t dims) {
    if (dims != model_dims(m.model) || dims != m.scaler.mean.size()) {
        throw std::invalid_argument("sample dimensionality does not match the model");
    }
    std::vector<double> scaled(dims);
    apply_scaler_row(m.scaler, x, scaled.data());
    return std::visit(ScoreVisitor{scaled.data(), dims}, m.model);
}

std::array<double, kNumClasses> score(const TrainedModel& m, const FeatureVector& fv) {
    const double x[2] = {fv.mu, fv.sigma};
    return score(m, x, 2);
}

Label predict(const TrainedModel& m, const double* x, std::size_t dims) {
    const std::array<double, kNumClasses> s = score(m, x, dims);
    std::size_t best = 0;
    for (std::size_t c = 1; c < kNumClasses; ++c) {
        if (s[c] > s[best]) best = c;
    }
    return static_cast<Label>(best);
}

Label predict(const TrainedModel& m, const FeatureVector& fv) {
    const double x[2] = {fv.mu, fv.sigma};
    return predict(m, x, 2);
}

}  // namespace tidalsim
